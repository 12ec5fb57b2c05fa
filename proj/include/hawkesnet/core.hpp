#pragma once

#include <vector>

#include <Eigen/Core>

#include "hawkesnet/types.hpp"

namespace hawkesnet {

/// x_j(t) = Σ_{t_k < t} κ(t − t_k). Events at exactly t do not contribute.
double integrated_process(const EventStream& events, const KernelSpec& kernel, double t);

/// Column k of the result holds x(t_k) for all units. grid must be sorted within [0, T].
Eigen::MatrixXd integrated_path(const ExperimentData& exp, const KernelSpec& kernel,
                                const std::vector<double>& grid);

/// g(mu + x·beta). The linear link is clamped at 0 (rectified) so the result is a valid rate.
double intensity(const UnitParams& params, const Eigen::VectorXd& x, Link link);

/// Sufficient statistics of the least-squares loss for one experiment:
///   Q = ∫ (1, x(t)) (1, x(t))^T dt,  gamma.row(i) = ( N_i(T), Σ_{unit-i events} x(t−)^T ).
/// For exponential kernels both are computed exactly by piecewise-analytic integration.
struct ExperimentDesign {
    Eigen::MatrixXd Q;        // (p+1) x (p+1)
    Eigen::MatrixXd gamma;    // p x (p+1)
    Eigen::VectorXd sq_jumps; // Σ (dN_i)^2 = event count per unit
    double horizon = 0.0;
};

struct IntegrationConfig {
    double grid_fraction = 0.01;      // tabulated-kernel grid width = fraction · mean gap
    std::size_t max_grid_points = 1000000;
    double quad_max_step = 0.05;      // exp-link quadrature refinement (times 1/rate)
};

ExperimentDesign compute_design(const ExperimentData& exp, const KernelSpec& kernel,
                                const IntegrationConfig& cfg = {});

/// Quadrature grid with cached regressors, used for exponential-link integrals.
/// X.row(k) = (1, x(times[k])); weights are trapezoidal.
struct QuadratureGrid {
    std::vector<double> times;
    Eigen::VectorXd weights;
    Eigen::MatrixXd X;  // n x (p+1)
};

QuadratureGrid build_quadrature_grid(const ExperimentData& exp, const KernelSpec& kernel,
                                     const IntegrationConfig& cfg = {});

/// θ^T Q θ − 2 θ^T γ_i + Σ(dN_i)^2, the discretized ∫ (dN − λ dt)^2.
double least_squares_loss(const ExperimentData& exp, std::size_t unit, const UnitParams& params,
                          const KernelSpec& kernel);
double least_squares_loss(const ExperimentDesign& design, std::size_t unit, const UnitParams& params);

/// −∫ log λ dN + ∫ λ dt with λ = exp(mu + x·beta). Exponential link only.
double negloglik_loss(const ExperimentData& exp, std::size_t unit, const UnitParams& params,
                      const KernelSpec& kernel, const IntegrationConfig& cfg = {});
double negloglik_loss(const ExperimentDesign& design, const QuadratureGrid& grid, std::size_t unit,
                      const UnitParams& params);

}  // namespace hawkesnet
