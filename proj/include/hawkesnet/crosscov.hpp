#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hawkesnet/types.hpp"

namespace hawkesnet {

/// Lagged binned-count correlations, max-|·| over positive lags, signed. Diagonal is 0.
struct CrossCovMatrix {
    Eigen::MatrixXd values;
    int n_bins = 0;
    double bin_width = 1.0;
    int max_lag = 5;
    std::vector<bool> degenerate;  // units with zero-variance bin counts
};

struct ThresholdRule {
    enum class Kind { Absolute, PValue };
    Kind kind = Kind::PValue;
    double cutoff = 0.1;  // κ for Absolute, p-value cutoff for PValue

    static ThresholdRule absolute(double kappa);
    static ThresholdRule pvalue(double cutoff = 0.1);
    static ThresholdRule parse(const std::string& text);  // "abs:<κ>" or "pvalue:<cutoff>"
};

struct ThresholdedCov {
    Eigen::MatrixXd values;
    ThresholdRule rule;
};

struct SimilarityWeights {
    Eigen::MatrixXd W;            // M×M symmetric, zero diagonal, ordered-pair sum 1
    Eigen::MatrixXd raw_counts;   // empirical similarities d^e
};

CrossCovMatrix cross_covariance(const ExperimentData& exp, double bin_width = 1.0, int max_lag = 5);

ThresholdedCov threshold_covariance(const CrossCovMatrix& cov, const ThresholdRule& rule);

/// Count of positions where a_ij · a'_ij > 0.
long matrix_similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

long empirical_similarity(const ThresholdedCov& a, const ThresholdedCov& b);

/// w_{m,m'} = d^e_{m,m'} / Σ_{k≠k'} d^e_{k,k'}; uniform 1/(M(M−1)) if all counts are zero.
SimilarityWeights similarity_weights(const std::vector<ThresholdedCov>& thresholded);

SimilarityWeights uniform_weights(std::size_t M);

/// Oracle weights from true connectivity supports.
SimilarityWeights oracle_weights(const MultiModel& model);

/// Negative variation of information between the connected-component partitions of two
/// undirected support graphs (p×p matrices; an entry is an edge iff nonzero).
double connected_component_similarity(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2);

}  // namespace hawkesnet
