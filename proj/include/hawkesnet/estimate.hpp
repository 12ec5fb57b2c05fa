#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hawkesnet/core.hpp"
#include "hawkesnet/crosscov.hpp"
#include "hawkesnet/types.hpp"

namespace hawkesnet {

class NonconvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Per-experiment sufficient statistics Q^{(m)}, γ^{(m)} plus optional quadrature grids
/// (needed by the exponential-link path).
struct PrecomputedDesign {
    std::vector<ExperimentDesign> experiments;
    std::vector<QuadratureGrid> grids;  // empty unless built with quadrature
    KernelSpec kernel;
    double total_horizon = 0.0;

    std::size_t num_units() const {
        return experiments.empty() ? 0 : static_cast<std::size_t>(experiments.front().gamma.rows());
    }
    std::size_t num_experiments() const { return experiments.size(); }
    std::size_t dim() const { return (num_units() + 1) * num_experiments(); }
};

PrecomputedDesign precompute_design(const MultiExperimentData& data, const KernelSpec& kernel,
                                    bool with_quadrature = false,
                                    const IntegrationConfig& cfg = {});

/// Weighted pairwise-difference operator on the stacked parameter θ ∈ R^{(p+1)M}.
/// Each pair (m, m') contributes p rows w_{m,m'}(β^{(m)} − β^{(m')}); μ is never penalized.
struct FusionOperator {
    int p = 0;
    int M = 1;
    double rho1 = 0.0;
    double rho2 = 0.0;
    struct Pair {
        int m1, m2;
        double w;
    };
    std::vector<Pair> pairs;

    Eigen::Index rows() const { return static_cast<Eigen::Index>(pairs.size()) * p; }
    Eigen::VectorXd apply_D(const Eigen::VectorXd& theta) const;
    Eigen::VectorXd apply_Dt(const Eigen::VectorXd& alpha) const;
    double fusion_l1(const Eigen::VectorXd& theta) const;  // ‖Dθ‖₁
    double lambda_max_DtD() const;
    /// Soft-threshold levels for the ℓ₁ proximal step: rho1 on β coordinates, 0 on μ.
    Eigen::VectorXd l1_thresholds() const;
};

FusionOperator build_fusion_operator(const SimilarityWeights& weights, double rho1, double rho2,
                                     int p, int M);

struct SolverConfig {
    double epsilon = 1e-3;  // smoothing accuracy (scaled by ‖Cθ⁰‖₁ at warm start)
    int max_iter = 10000;
    double tol = 1e-6;      // relative parameter change
    double gamma_ebic = 1.0;
    int threads = 1;
    int divergence_patience = 20;
};

/// Huber-smoothed fusion value and gradient at θ for C = rho2·D.
std::pair<double, Eigen::VectorXd> smoothed_fusion(const Eigen::VectorXd& theta,
                                                   const FusionOperator& op, double u);

double lipschitz_constant(const PrecomputedDesign& design, const FusionOperator& op, double u,
                          Link link);

struct UnitFit {
    Eigen::VectorXd theta;  // stacked (p+1)M
    std::vector<double> objective_trace;
    int iterations = 0;
    bool converged = false;
};

struct FitResult {
    std::vector<UnitFit> units;
    double rho1 = 0.0;
    double rho2 = 0.0;
    Eigen::MatrixXd weights;
    Link link = Link::Linear;

    bool all_converged() const;
    /// β̂ matrix of experiment m (row i = unit i's incoming coefficients).
    Eigen::MatrixXd beta_matrix(std::size_t m) const;
    Eigen::VectorXd mu_vector(std::size_t m) const;
    MultiModel to_model(const KernelSpec& kernel) const;
};

UnitFit spgd_fit_unit(const PrecomputedDesign& design, std::size_t unit, const FusionOperator& op,
                      Link link, const SolverConfig& cfg = {},
                      const Eigen::VectorXd* warm_start = nullptr);

FitResult joint_fit(const PrecomputedDesign& design, const SimilarityWeights& weights, double rho1,
                    double rho2, Link link = Link::Linear, const SolverConfig& cfg = {},
                    const FitResult* warm = nullptr);

double ebic(const FitResult& fit, const PrecomputedDesign& design, double gamma_ebic = 1.0);

struct TuneEntry {
    double rho1, rho2, ebic;
    bool converged;
};

std::vector<std::pair<double, double>> default_tuning_grid(const PrecomputedDesign& design,
                                                           int n_rho1 = 10);

std::pair<FitResult, std::vector<TuneEntry>> tune(const PrecomputedDesign& design,
                                                  const SimilarityWeights& weights,
                                                  const std::vector<std::pair<double, double>>& grid,
                                                  Link link = Link::Linear,
                                                  const SolverConfig& cfg = {});

/// β̃_ij = β̂_ij · 1(|β̂_ij| > τ) per experiment.
std::vector<Eigen::MatrixXd> threshold_edges(const FitResult& fit, double tau);

}  // namespace hawkesnet
