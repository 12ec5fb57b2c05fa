#include "hawkesnet/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hawkesnet {

namespace {

struct TimedEvent {
    double time;
    std::size_t unit;
};

std::vector<TimedEvent> merged_events(const ExperimentData& exp) {
    std::vector<TimedEvent> ev;
    ev.reserve(exp.total_events());
    for (std::size_t j = 0; j < exp.num_units(); ++j)
        for (double t : exp.streams[j].times) ev.push_back({t, j});
    std::sort(ev.begin(), ev.end(), [](const TimedEvent& a, const TimedEvent& b) {
        return a.time < b.time || (a.time == b.time && a.unit < b.unit);
    });
    return ev;
}

double mean_gap(const ExperimentData& exp) {
    return exp.horizon() / static_cast<double>(exp.total_events() + 1);
}

}  // namespace

double integrated_process(const EventStream& events, const KernelSpec& kernel, double t) {
    if (t < 0.0 || t > events.horizon)
        throw std::invalid_argument("integrated_process: t outside [0, horizon]");
    const double lo = t - kernel.support_end();
    auto begin = events.times.begin();
    if (std::isfinite(lo)) begin = std::lower_bound(events.times.begin(), events.times.end(), lo);
    auto end = std::lower_bound(begin, events.times.end(), t);
    double x = 0.0;
    for (auto it = begin; it != end; ++it) x += kernel.eval(t - *it);
    return x;
}

Eigen::MatrixXd integrated_path(const ExperimentData& exp, const KernelSpec& kernel,
                                const std::vector<double>& grid) {
    const std::size_t p = exp.num_units();
    const double T = exp.horizon();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < 0.0 || grid[k] > T)
            throw std::invalid_argument("integrated_path: grid point outside horizon");
        if (k > 0 && grid[k] < grid[k - 1])
            throw std::invalid_argument("integrated_path: grid must be sorted");
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                static_cast<Eigen::Index>(grid.size()));
    if (!kernel.is_exponential()) {
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < grid.size(); ++k)
                out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                    integrated_process(exp.streams[j], kernel, grid[k]);
        return out;
    }
    // exact decay recursion per unit
    const double r = kernel.rate;
    for (std::size_t j = 0; j < p; ++j) {
        const auto& times = exp.streams[j].times;
        double x = 0.0;
        double last = 0.0;
        std::size_t next_ev = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double t = grid[k];
            // events in [last, t) enter with their own decay; state decays from `last`
            x *= std::exp(-r * (t - last));
            while (next_ev < times.size() && times[next_ev] < t)
                x += std::exp(-r * (t - times[next_ev++]));
            last = t;
            out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = x;
        }
    }
    return out;
}

double intensity(const UnitParams& params, const Eigen::VectorXd& x, Link link) {
    if (params.beta.size() != x.size())
        throw std::invalid_argument("intensity: beta/x dimension mismatch");
    const double z = params.mu + x.dot(params.beta);
    switch (link) {
        case Link::Linear:
        case Link::RectifiedLinear:
            return std::max(0.0, z);
        case Link::Exponential: {
            const double v = std::exp(z);
            if (!std::isfinite(v)) throw std::overflow_error("intensity: exponential link overflow");
            return v;
        }
    }
    return 0.0;
}

namespace {

ExperimentDesign compute_design_exponential(const ExperimentData& exp, const KernelSpec& kernel) {
    const auto p = static_cast<Eigen::Index>(exp.num_units());
    const double T = exp.horizon();
    const double r = kernel.rate;
    ExperimentDesign d;
    d.horizon = T;
    d.Q = Eigen::MatrixXd::Zero(p + 1, p + 1);
    d.gamma = Eigen::MatrixXd::Zero(p, p + 1);
    d.sq_jumps = Eigen::VectorXd::Zero(p);

    const auto ev = merged_events(exp);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
    double cursor = 0.0;
    std::size_t k = 0;
    Eigen::MatrixXd& Q = d.Q;

    auto integrate_segment = [&](double upto) {
        const double dt = upto - cursor;
        if (dt <= 0.0) return;
        const double d1 = std::exp(-r * dt);
        const double d2 = d1 * d1;
        Q(0, 0) += dt;
        const double c1 = (1.0 - d1) / r;
        const double c2 = (1.0 - d2) / (2.0 * r);
        Q.block(0, 1, 1, p) += c1 * x.transpose();
        Q.block(1, 0, p, 1) += c1 * x;
        Q.block(1, 1, p, p) += c2 * (x * x.transpose());
        x *= d1;
        cursor = upto;
    };

    while (k < ev.size()) {
        const double t = ev[k].time;
        integrate_segment(t);
        // left limits: record gamma for every unit with an event at t, then apply all jumps
        std::size_t k2 = k;
        while (k2 < ev.size() && ev[k2].time == t) ++k2;
        for (std::size_t q = k; q < k2; ++q) {
            const auto i = static_cast<Eigen::Index>(ev[q].unit);
            d.gamma(i, 0) += 1.0;
            d.gamma.row(i).segment(1, p) += x.transpose();
            d.sq_jumps(i) += 1.0;
        }
        for (std::size_t q = k; q < k2; ++q) x(static_cast<Eigen::Index>(ev[q].unit)) += 1.0;
        k = k2;
    }
    integrate_segment(T);
    return d;
}

ExperimentDesign compute_design_tabulated(const ExperimentData& exp, const KernelSpec& kernel,
                                          const IntegrationConfig& cfg) {
    const auto p = static_cast<Eigen::Index>(exp.num_units());
    const double T = exp.horizon();
    double step = cfg.grid_fraction * mean_gap(exp);
    std::size_t n = static_cast<std::size_t>(std::ceil(T / step)) + 1;
    if (n > cfg.max_grid_points) {
        n = cfg.max_grid_points;
        step = T / static_cast<double>(n - 1);
    }
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) grid[k] = std::min(T, static_cast<double>(k) * step);
    const Eigen::MatrixXd X = integrated_path(exp, kernel, grid);

    ExperimentDesign d;
    d.horizon = T;
    d.Q = Eigen::MatrixXd::Zero(p + 1, p + 1);
    d.gamma = Eigen::MatrixXd::Zero(p, p + 1);
    d.sq_jumps = Eigen::VectorXd::Zero(p);
    for (std::size_t k = 0; k < n; ++k) {
        double w = 0.0;
        if (k > 0) w += 0.5 * (grid[k] - grid[k - 1]);
        if (k + 1 < n) w += 0.5 * (grid[k + 1] - grid[k]);
        Eigen::VectorXd row(p + 1);
        row(0) = 1.0;
        row.segment(1, p) = X.col(static_cast<Eigen::Index>(k));
        d.Q += w * (row * row.transpose());
    }
    for (Eigen::Index i = 0; i < p; ++i) {
        for (double t : exp.streams[static_cast<std::size_t>(i)].times) {
            d.gamma(i, 0) += 1.0;
            d.sq_jumps(i) += 1.0;
            for (Eigen::Index j = 0; j < p; ++j)
                d.gamma(i, j + 1) +=
                    integrated_process(exp.streams[static_cast<std::size_t>(j)], kernel, t);
        }
    }
    return d;
}

}  // namespace

ExperimentDesign compute_design(const ExperimentData& exp, const KernelSpec& kernel,
                                const IntegrationConfig& cfg) {
    exp.validate();
    if (kernel.is_exponential()) return compute_design_exponential(exp, kernel);
    return compute_design_tabulated(exp, kernel, cfg);
}

QuadratureGrid build_quadrature_grid(const ExperimentData& exp, const KernelSpec& kernel,
                                     const IntegrationConfig& cfg) {
    const double T = exp.horizon();
    const double step = kernel.is_exponential() ? cfg.quad_max_step / kernel.rate
                                                : cfg.grid_fraction * mean_gap(exp);
    std::vector<double> nodes;
    nodes.push_back(0.0);
    for (const auto& s : exp.streams)
        for (double t : s.times) nodes.push_back(t);
    nodes.push_back(T);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::vector<double> times;
    times.reserve(nodes.size() * 2);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const double a = nodes[k], b = nodes[k + 1];
        times.push_back(a);
        const auto sub = static_cast<std::size_t>(std::ceil((b - a) / step));
        for (std::size_t s = 1; s < sub; ++s)
            times.push_back(a + (b - a) * static_cast<double>(s) / static_cast<double>(sub));
        if (times.size() > cfg.max_grid_points) break;
    }
    times.push_back(T);

    QuadratureGrid g;
    const Eigen::MatrixXd X = integrated_path(exp, kernel, times);
    const auto n = static_cast<Eigen::Index>(times.size());
    g.X.resize(n, X.rows() + 1);
    g.X.col(0).setOnes();
    g.X.rightCols(X.rows()) = X.transpose();
    g.weights = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (k > 0) g.weights(k) += 0.5 * (times[static_cast<std::size_t>(k)] - times[static_cast<std::size_t>(k) - 1]);
        if (k + 1 < n) g.weights(k) += 0.5 * (times[static_cast<std::size_t>(k) + 1] - times[static_cast<std::size_t>(k)]);
    }
    g.times = std::move(times);
    return g;
}

double least_squares_loss(const ExperimentDesign& design, std::size_t unit, const UnitParams& params) {
    const Eigen::Index p = design.gamma.rows();
    if (params.beta.size() != p)
        throw std::invalid_argument("least_squares_loss: parameter dimension mismatch");
    Eigen::VectorXd theta(p + 1);
    theta(0) = params.mu;
    theta.segment(1, p) = params.beta;
    const auto i = static_cast<Eigen::Index>(unit);
    return theta.dot(design.Q * theta) - 2.0 * theta.dot(design.gamma.row(i)) + design.sq_jumps(i);
}

double least_squares_loss(const ExperimentData& exp, std::size_t unit, const UnitParams& params,
                          const KernelSpec& kernel) {
    if (unit >= exp.num_units()) throw std::invalid_argument("least_squares_loss: unit out of range");
    return least_squares_loss(compute_design(exp, kernel), unit, params);
}

double negloglik_loss(const ExperimentDesign& design, const QuadratureGrid& grid, std::size_t unit,
                      const UnitParams& params) {
    const Eigen::Index p = design.gamma.rows();
    if (params.beta.size() != p)
        throw std::invalid_argument("negloglik_loss: parameter dimension mismatch");
    Eigen::VectorXd theta(p + 1);
    theta(0) = params.mu;
    theta.segment(1, p) = params.beta;
    const auto i = static_cast<Eigen::Index>(unit);
    const double event_term = design.gamma.row(i).dot(theta);  // Σ log λ at unit-i events
    const Eigen::VectorXd lin = grid.X * theta;
    double integral = 0.0;
    for (Eigen::Index k = 0; k < lin.size(); ++k) {
        const double v = std::exp(lin(k));
        if (!std::isfinite(v)) throw std::overflow_error("negloglik_loss: intensity overflow");
        integral += grid.weights(k) * v;
    }
    return -event_term + integral;
}

double negloglik_loss(const ExperimentData& exp, std::size_t unit, const UnitParams& params,
                      const KernelSpec& kernel, const IntegrationConfig& cfg) {
    if (unit >= exp.num_units()) throw std::invalid_argument("negloglik_loss: unit out of range");
    const auto design = compute_design(exp, kernel, cfg);
    const auto grid = build_quadrature_grid(exp, kernel, cfg);
    return negloglik_loss(design, grid, unit, params);
}

}  // namespace hawkesnet
