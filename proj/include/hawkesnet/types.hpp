#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hawkesnet {

/// Sorted event times of a single unit on [0, horizon].
struct EventStream {
    std::vector<double> times;
    double horizon = 0.0;

    EventStream() = default;
    EventStream(std::vector<double> t, double T) : times(std::move(t)), horizon(T) { validate(); }

    void validate() const;
    std::size_t count() const { return times.size(); }
};

/// All unit streams recorded under one experimental condition.
struct ExperimentData {
    std::vector<EventStream> streams;
    int experiment_id = 1;

    double horizon() const { return streams.empty() ? 0.0 : streams.front().horizon; }
    std::size_t num_units() const { return streams.size(); }
    std::size_t total_events() const;
    void validate() const;
};

struct MultiExperimentData {
    std::vector<ExperimentData> experiments;

    std::size_t num_experiments() const { return experiments.size(); }
    std::size_t num_units() const { return experiments.empty() ? 0 : experiments.front().num_units(); }
    double total_horizon() const;
    void validate() const;
};

struct KernelSpec {
    enum class Kind { Exponential, Tabulated };

    Kind kind = Kind::Exponential;
    double rate = 1.0;                 // exponential decay rate
    std::vector<double> grid;          // tabulated support grid (sorted, starts at 0)
    std::vector<double> values;        // tabulated kernel values on the grid

    static KernelSpec exponential(double rate);
    static KernelSpec tabulated(std::vector<double> grid, std::vector<double> values);

    double eval(double lag) const;
    double integral() const;           // ∫_0^∞ κ
    double support_end() const;        // beyond this the kernel is treated as 0 (tabulated only)
    bool is_exponential() const { return kind == Kind::Exponential; }
};

enum class Link { Linear, RectifiedLinear, Exponential };

Link link_from_string(const std::string& s);
std::string to_string(Link link);

/// Background rate and incoming connectivity row of one unit.
struct UnitParams {
    double mu = 0.0;
    Eigen::VectorXd beta;
};

struct ExperimentModel {
    std::vector<UnitParams> units;
    KernelSpec kernel;
    Link link = Link::Linear;

    std::size_t num_units() const { return units.size(); }
    Eigen::MatrixXd beta_matrix() const;              // row i = incoming coefficients of unit i
    void set_beta_matrix(const Eigen::MatrixXd& B);
    /// max_i Σ_j |β_ij| ∫κ; must be < 1 for a stable simulation input.
    double stability_row_sum() const;
    void validate() const;
};

struct MultiModel {
    std::vector<ExperimentModel> experiments;

    std::size_t num_experiments() const { return experiments.size(); }
    std::size_t num_units() const { return experiments.empty() ? 0 : experiments.front().num_units(); }
    void validate() const;
};

}  // namespace hawkesnet
