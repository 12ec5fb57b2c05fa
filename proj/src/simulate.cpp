#include "hawkesnet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hawkesnet {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over (seed, stream)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double link_value(Link link, double z) {
    if (link == Link::Exponential) return std::exp(z);
    return std::max(0.0, z);
}

}  // namespace

ExperimentData simulate_hawkes(const ExperimentModel& model, double horizon, std::uint64_t seed,
                               const SimulateConfig& cfg) {
    model.validate();
    if (horizon <= 0.0) throw std::invalid_argument("simulate_hawkes: horizon must be positive");
    if (!model.kernel.is_exponential())
        throw std::invalid_argument("simulate_hawkes: only exponential kernels are supported");
    if (cfg.check_stability && model.stability_row_sum() >= 1.0)
        throw StabilityError("simulate_hawkes: max row sum of |beta|*∫κ must be < 1");

    const auto p = static_cast<Eigen::Index>(model.num_units());
    const double r = model.kernel.rate;
    const double burn = cfg.burn_in >= 0.0 ? cfg.burn_in : 10.0 / r;
    const double t_end = burn + horizon;

    Eigen::MatrixXd B(p, p);
    Eigen::VectorXd mu(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        B.row(i) = model.units[static_cast<std::size_t>(i)].beta.transpose();
        mu(i) = model.units[static_cast<std::size_t>(i)].mu;
    }
    const Eigen::MatrixXd Bpos = B.cwiseMax(0.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd lambda(p);
    std::vector<std::vector<double>> events(static_cast<std::size_t>(p));
    double t = 0.0;
    std::size_t total = 0;

    while (t < t_end) {
        // envelope at current state; valid forward in time since excitation decays
        double bound = 0.0;
        const Eigen::VectorXd zpos = mu + Bpos * x;
        for (Eigen::Index i = 0; i < p; ++i) bound += link_value(model.link, zpos(i));
        if (bound <= 0.0) break;

        const double wait = -std::log(1.0 - unif(rng)) / bound;
        const double tc = t + wait;
        if (tc >= t_end) break;
        x *= std::exp(-r * wait);
        t = tc;

        const Eigen::VectorXd z = mu + B * x;
        double lambda_tot = 0.0;
        for (Eigen::Index i = 0; i < p; ++i) {
            lambda(i) = link_value(model.link, z(i));
            lambda_tot += lambda(i);
        }
        if (unif(rng) * bound > lambda_tot) continue;  // rejected; envelope retightens next loop

        double pick = unif(rng) * lambda_tot;
        Eigen::Index unit = p - 1;
        for (Eigen::Index i = 0; i < p; ++i) {
            pick -= lambda(i);
            if (pick <= 0.0) {
                unit = i;
                break;
            }
        }
        events[static_cast<std::size_t>(unit)].push_back(t);
        x(unit) += 1.0;  // κ(0) = 1 for exponential kernels
        if (++total > cfg.max_events)
            throw RunawayError("simulate_hawkes: event count exceeded limit");
    }

    ExperimentData out;
    out.streams.resize(static_cast<std::size_t>(p));
    for (std::size_t j = 0; j < static_cast<std::size_t>(p); ++j) {
        auto& st = out.streams[j];
        st.horizon = horizon;
        for (double tv : events[j])
            if (tv >= burn) st.times.push_back(std::min(tv - burn, horizon));
        st.validate();
    }
    return out;
}

MultiExperimentData simulate_multi(const MultiModel& model, const std::vector<double>& horizons,
                                   std::uint64_t seed, const SimulateConfig& cfg) {
    model.validate();
    if (horizons.size() != model.num_experiments())
        throw std::invalid_argument("simulate_multi: horizons size must equal experiment count");
    MultiExperimentData out;
    for (std::size_t m = 0; m < model.num_experiments(); ++m) {
        auto exp = simulate_hawkes(model.experiments[m], horizons[m], derive_seed(seed, m), cfg);
        exp.experiment_id = static_cast<int>(m) + 1;
        out.experiments.push_back(std::move(exp));
    }
    return out;
}

MultiModel make_benchmark_networks(int p, const std::vector<std::vector<MotifSpec>>& layouts,
                                   double mu, const KernelSpec& kernel, Link link) {
    if (p < 1) throw std::invalid_argument("make_benchmark_networks: p must be positive");
    MultiModel model;
    for (const auto& layout : layouts) {
        int total = 0;
        for (const auto& motif : layout) {
            if (motif.size < 3) throw std::invalid_argument("make_benchmark_networks: motif_size >= 3");
            total += motif.size;
        }
        if (total != p)
            throw std::invalid_argument("make_benchmark_networks: motif sizes must tile p exactly");
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(p, p);
        int base = 0;
        for (const auto& motif : layout) {
            const int k = motif.size;
            if (motif.kind == MotifSpec::Kind::Circle) {
                for (int j = 0; j < k; ++j) B(base + (j + 1) % k, base + j) = motif.coefficient;
            } else {
                for (int j = 1; j < k; ++j) B(base + j, base) = motif.coefficient;
            }
            base += k;
        }
        ExperimentModel exp;
        exp.kernel = kernel;
        exp.link = link;
        exp.units.resize(static_cast<std::size_t>(p));
        for (auto& u : exp.units) u.mu = mu;
        exp.set_beta_matrix(B);
        model.experiments.push_back(std::move(exp));
    }
    model.validate();
    return model;
}

MultiModel default_benchmark(int p, double mu) {
    const int k = 5;
    if (p % k != 0) throw std::invalid_argument("default_benchmark: p must be divisible by 5");
    const int nmot = p / k;
    const int ncircle2 = (9 * nmot) / 10;  // 90% circles in the middle network
    std::vector<MotifSpec> net1, net2, net3;
    for (int b = 0; b < nmot; ++b) {
        net1.push_back({MotifSpec::Kind::Circle, k, 0.3});
        net3.push_back({MotifSpec::Kind::Star, k, 0.6});
        if (b < ncircle2)
            net2.push_back({MotifSpec::Kind::Circle, k, 0.3});
        else
            net2.push_back({MotifSpec::Kind::Star, k, 0.6});
    }
    return make_benchmark_networks(p, {net1, net2, net3}, mu, KernelSpec::exponential(1.0));
}

std::uint64_t simulate_stream_seed(std::uint64_t seed, std::size_t experiment_index) {
    return derive_seed(seed, experiment_index);
}

}  // namespace hawkesnet
