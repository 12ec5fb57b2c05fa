#include "hawkesnet/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hawkesnet {

void EventStream::validate() const {
    if (horizon <= 0.0) throw std::invalid_argument("EventStream: horizon must be positive");
    double prev = -1.0;
    for (double t : times) {
        if (!(t >= 0.0 && t <= horizon))
            throw std::invalid_argument("EventStream: event time outside [0, horizon]");
        if (t < prev) throw std::invalid_argument("EventStream: times must be nondecreasing");
        prev = t;
    }
}

std::size_t ExperimentData::total_events() const {
    std::size_t n = 0;
    for (const auto& s : streams) n += s.count();
    return n;
}

void ExperimentData::validate() const {
    if (streams.empty()) throw std::invalid_argument("ExperimentData: needs at least one unit");
    const double T = streams.front().horizon;
    for (const auto& s : streams) {
        s.validate();
        if (s.horizon != T)
            throw std::invalid_argument("ExperimentData: all streams must share one horizon");
    }
}

double MultiExperimentData::total_horizon() const {
    double T = 0.0;
    for (const auto& e : experiments) T += e.horizon();
    return T;
}

void MultiExperimentData::validate() const {
    if (experiments.empty()) throw std::invalid_argument("MultiExperimentData: M >= 1 required");
    const std::size_t p = experiments.front().num_units();
    for (const auto& e : experiments) {
        e.validate();
        if (e.num_units() != p)
            throw std::invalid_argument("MultiExperimentData: unit count differs across experiments");
    }
}

KernelSpec KernelSpec::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("KernelSpec: exponential rate must be positive");
    KernelSpec k;
    k.kind = Kind::Exponential;
    k.rate = rate;
    return k;
}

KernelSpec KernelSpec::tabulated(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw std::invalid_argument("KernelSpec: tabulated grid/values mismatch");
    if (grid.front() != 0.0) throw std::invalid_argument("KernelSpec: tabulated grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw std::invalid_argument("KernelSpec: grid must be increasing");
    KernelSpec k;
    k.kind = Kind::Tabulated;
    k.grid = std::move(grid);
    k.values = std::move(values);
    return k;
}

double KernelSpec::eval(double lag) const {
    if (lag < 0.0) return 0.0;
    if (kind == Kind::Exponential) return std::exp(-rate * lag);
    if (lag >= grid.back()) return 0.0;
    auto it = std::upper_bound(grid.begin(), grid.end(), lag);
    const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (lag - grid[lo]) / (grid[hi] - grid[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
}

double KernelSpec::integral() const {
    if (kind == Kind::Exponential) return 1.0 / rate;
    double s = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return s;
}

double KernelSpec::support_end() const {
    if (kind == Kind::Exponential) return std::numeric_limits<double>::infinity();
    return grid.back();
}

Link link_from_string(const std::string& s) {
    if (s == "linear") return Link::Linear;
    if (s == "relu" || s == "rectified-linear") return Link::RectifiedLinear;
    if (s == "exp" || s == "exponential") return Link::Exponential;
    throw std::invalid_argument("unknown link: " + s);
}

std::string to_string(Link link) {
    switch (link) {
        case Link::Linear: return "linear";
        case Link::RectifiedLinear: return "rectified-linear";
        case Link::Exponential: return "exponential";
    }
    return "linear";
}

Eigen::MatrixXd ExperimentModel::beta_matrix() const {
    const std::size_t p = units.size();
    Eigen::MatrixXd B(p, p);
    for (std::size_t i = 0; i < p; ++i) B.row(i) = units[i].beta.transpose();
    return B;
}

void ExperimentModel::set_beta_matrix(const Eigen::MatrixXd& B) {
    if (static_cast<std::size_t>(B.rows()) != units.size() || B.rows() != B.cols())
        throw std::invalid_argument("ExperimentModel: beta matrix shape mismatch");
    for (std::size_t i = 0; i < units.size(); ++i) units[i].beta = B.row(i).transpose();
}

double ExperimentModel::stability_row_sum() const {
    const double kint = kernel.integral();
    double worst = 0.0;
    for (const auto& u : units) worst = std::max(worst, u.beta.cwiseAbs().sum() * kint);
    return worst;
}

void ExperimentModel::validate() const {
    if (units.empty()) throw std::invalid_argument("ExperimentModel: p >= 1 required");
    const auto p = static_cast<Eigen::Index>(units.size());
    for (const auto& u : units)
        if (u.beta.size() != p)
            throw std::invalid_argument("ExperimentModel: beta length must equal unit count");
}

void MultiModel::validate() const {
    if (experiments.empty()) throw std::invalid_argument("MultiModel: M >= 1 required");
    const std::size_t p = experiments.front().num_units();
    for (const auto& e : experiments) {
        e.validate();
        if (e.num_units() != p)
            throw std::invalid_argument("MultiModel: unit count differs across experiments");
    }
}

}  // namespace hawkesnet
