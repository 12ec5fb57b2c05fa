#include "hawkesnet/crosscov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

namespace hawkesnet {

ThresholdRule ThresholdRule::absolute(double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("ThresholdRule: κ must be nonnegative");
    return {Kind::Absolute, kappa};
}

ThresholdRule ThresholdRule::pvalue(double cutoff) {
    if (!(cutoff > 0.0 && cutoff < 1.0))
        throw std::invalid_argument("ThresholdRule: p-value cutoff must be in (0,1)");
    return {Kind::PValue, cutoff};
}

ThresholdRule ThresholdRule::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const double v = colon == std::string::npos ? 0.1 : std::stod(text.substr(colon + 1));
    if (head == "abs") return absolute(v);
    if (head == "pvalue") return pvalue(v);
    throw std::invalid_argument("ThresholdRule: expected abs:<κ> or pvalue:<cutoff>, got " + text);
}

CrossCovMatrix cross_covariance(const ExperimentData& exp, double bin_width, int max_lag) {
    exp.validate();
    if (max_lag < 1) throw std::invalid_argument("cross_covariance: max_lag >= 1 required");
    const double T = exp.horizon();
    const int n_bins = static_cast<int>(std::floor(T / bin_width));
    if (n_bins < 8) throw std::invalid_argument("cross_covariance: T / bin_width >= 8 required");
    const auto p = static_cast<Eigen::Index>(exp.num_units());

    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(p, n_bins);
    for (Eigen::Index i = 0; i < p; ++i)
        for (double t : exp.streams[static_cast<std::size_t>(i)].times) {
            const int b = std::min(n_bins - 1, static_cast<int>(t / bin_width));
            counts(i, b) += 1.0;
        }

    CrossCovMatrix out;
    out.n_bins = n_bins;
    out.bin_width = bin_width;
    out.max_lag = max_lag;
    out.values = Eigen::MatrixXd::Zero(p, p);
    out.degenerate.assign(static_cast<std::size_t>(p), false);

    Eigen::VectorXd mean(p), sd(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        mean(i) = counts.row(i).mean();
        const double var = (counts.row(i).array() - mean(i)).square().sum() / n_bins;
        sd(i) = std::sqrt(var);
        if (sd(i) == 0.0) out.degenerate[static_cast<std::size_t>(i)] = true;
    }

    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            if (i == j) continue;
            if (out.degenerate[static_cast<std::size_t>(i)] ||
                out.degenerate[static_cast<std::size_t>(j)])
                continue;  // entry stays 0
            double best = 0.0;
            for (int h = 1; h <= std::min(max_lag, n_bins - 1); ++h) {
                // corr of unit-i counts against unit-j counts h bins earlier
                double acc = 0.0;
                for (int b = h; b < n_bins; ++b)
                    acc += (counts(i, b) - mean(i)) * (counts(j, b - h) - mean(j));
                const double r = acc / (static_cast<double>(n_bins) * sd(i) * sd(j));
                if (std::abs(r) > std::abs(best)) best = r;
            }
            out.values(i, j) = best;
        }
    }
    return out;
}

ThresholdedCov threshold_covariance(const CrossCovMatrix& cov, const ThresholdRule& rule) {
    if (cov.n_bins < 4)
        throw std::invalid_argument("threshold_covariance: n_bins >= 4 required for Fisher transform");
    ThresholdedCov out;
    out.rule = rule;
    out.values = cov.values;
    const boost::math::normal_distribution<double> norm;
    for (Eigen::Index i = 0; i < out.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.values.cols(); ++j) {
            const double r = out.values(i, j);
            bool keep = false;
            if (rule.kind == ThresholdRule::Kind::Absolute) {
                keep = std::abs(r) > rule.cutoff;
            } else if (std::abs(r) < 1.0) {
                const double z = std::atanh(r) * std::sqrt(static_cast<double>(cov.n_bins - 3));
                const double p = 2.0 * boost::math::cdf(norm, -std::abs(z));
                keep = p < rule.cutoff;
            } else {
                keep = r != 0.0;
            }
            if (!keep) out.values(i, j) = 0.0;
        }
    }
    return out;
}

long matrix_similarity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix_similarity: shape mismatch");
    long count = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) * b(i, j) > 0.0) ++count;
    return count;
}

long empirical_similarity(const ThresholdedCov& a, const ThresholdedCov& b) {
    return matrix_similarity(a.values, b.values);
}

namespace {

SimilarityWeights weights_from_counts(Eigen::MatrixXd counts) {
    const Eigen::Index M = counts.rows();
    SimilarityWeights out;
    out.raw_counts = counts;
    out.W = Eigen::MatrixXd::Zero(M, M);
    const double total = counts.sum();  // ordered-pair denominator (diagonal is zero)
    if (total > 0.0) {
        out.W = counts / total;
    } else if (M > 1) {
        out.W.setConstant(1.0 / static_cast<double>(M * (M - 1)));
        out.W.diagonal().setZero();
    }
    return out;
}

}  // namespace

SimilarityWeights similarity_weights(const std::vector<ThresholdedCov>& thresholded) {
    const auto M = static_cast<Eigen::Index>(thresholded.size());
    if (M < 2) throw std::invalid_argument("similarity_weights: M >= 2 required");
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(M, M);
    for (Eigen::Index m = 0; m < M; ++m)
        for (Eigen::Index m2 = m + 1; m2 < M; ++m2) {
            const auto d = static_cast<double>(
                empirical_similarity(thresholded[static_cast<std::size_t>(m)],
                                     thresholded[static_cast<std::size_t>(m2)]));
            counts(m, m2) = counts(m2, m) = d;
        }
    return weights_from_counts(std::move(counts));
}

SimilarityWeights uniform_weights(std::size_t M) {
    if (M < 1) throw std::invalid_argument("uniform_weights: M >= 1 required");
    return weights_from_counts(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(M),
                                                     static_cast<Eigen::Index>(M)));
}

SimilarityWeights oracle_weights(const MultiModel& model) {
    const auto M = static_cast<Eigen::Index>(model.num_experiments());
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(M, M);
    std::vector<Eigen::MatrixXd> supports;
    for (const auto& exp : model.experiments) {
        Eigen::MatrixXd s = exp.beta_matrix();
        for (Eigen::Index i = 0; i < s.rows(); ++i)
            for (Eigen::Index j = 0; j < s.cols(); ++j) s(i, j) = s(i, j) != 0.0 ? 1.0 : 0.0;
        supports.push_back(std::move(s));
    }
    for (Eigen::Index m = 0; m < M; ++m)
        for (Eigen::Index m2 = m + 1; m2 < M; ++m2) {
            const auto d = static_cast<double>(matrix_similarity(
                supports[static_cast<std::size_t>(m)], supports[static_cast<std::size_t>(m2)]));
            counts(m, m2) = counts(m2, m) = d;
        }
    return weights_from_counts(std::move(counts));
}

namespace {

std::vector<int> component_labels(const Eigen::MatrixXd& g) {
    const Eigen::Index p = g.rows();
    std::vector<int> label(static_cast<std::size_t>(p), -1);
    int next = 0;
    std::vector<Eigen::Index> stack;
    for (Eigen::Index start = 0; start < p; ++start) {
        if (label[static_cast<std::size_t>(start)] >= 0) continue;
        stack.push_back(start);
        label[static_cast<std::size_t>(start)] = next;
        while (!stack.empty()) {
            const Eigen::Index v = stack.back();
            stack.pop_back();
            for (Eigen::Index w = 0; w < p; ++w) {
                if (w == v || label[static_cast<std::size_t>(w)] >= 0) continue;
                if (g(v, w) != 0.0 || g(w, v) != 0.0) {
                    label[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

}  // namespace

double connected_component_similarity(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2) {
    if (g1.rows() != g2.rows() || g1.rows() != g1.cols() || g2.rows() != g2.cols())
        throw std::invalid_argument("connected_component_similarity: square matrices over a shared node set required");
    const auto p = static_cast<double>(g1.rows());
    const auto lab1 = component_labels(g1);
    const auto lab2 = component_labels(g2);
    const int n1 = 1 + *std::max_element(lab1.begin(), lab1.end());
    const int n2 = 1 + *std::max_element(lab2.begin(), lab2.end());
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(n1, n2);
    for (std::size_t v = 0; v < lab1.size(); ++v) joint(lab1[v], lab2[v]) += 1.0 / p;
    const Eigen::VectorXd pl = joint.rowwise().sum();
    const Eigen::VectorXd ql = joint.colwise().sum();
    double d = 0.0;
    for (int l = 0; l < n1; ++l)
        for (int l2 = 0; l2 < n2; ++l2) {
            const double r = joint(l, l2);
            if (r > 0.0) d += r * (std::log(r / pl(l)) + std::log(r / ql(l2)));
        }
    return d;
}

}  // namespace hawkesnet
