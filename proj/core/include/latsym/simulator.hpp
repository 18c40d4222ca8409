#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace latsym {

/// u = exp(-k0 (x + k1)) for x > 0 and u = 1 for x <= 0.
struct InitialCondition {
    double k0 = 1.0;
    double k1 = 0.0;

    [[nodiscard]] double operator()(double x) const;
};

/// Explicit-scheme stability guard dt <= 0.4 dx^2.
[[nodiscard]] constexpr double stable_dt(double dx) noexcept { return 0.4 * dx * dx; }

struct SimConfig {
    double dx = 0.05;
    double dt = 0.001;
    double x_min = -20.0;
    double x_max = 120.0;
    double t_end = 40.0;
    InitialCondition ic;
    double left_value = 1.0;   ///< Dirichlet
    double right_value = 0.0;  ///< Dirichlet
    double track_level = 0.5;
    std::int64_t record_stride = 10;
    double fit_window = 0.5;  ///< trailing fraction of records used by the speed fit
    bool allow_unstable_dt = false;
    std::int64_t shift_cells = 0;  ///< samples the initial data at x_{m - shift}
    double instability_guard = 10.0;

    /// Throws DomainError on invalid values or a violated stability guard.
    void validate() const;
    [[nodiscard]] std::int64_t num_points() const;
    [[nodiscard]] double x_at(std::int64_t i) const noexcept {
        return x_min + static_cast<double>(i) * dx;
    }
    [[nodiscard]] std::int64_t num_steps() const;
};

struct SimResult {
    std::vector<std::int64_t> steps;
    std::vector<double> times;
    std::vector<double> front_positions;
    double fitted_speed = 0.0;  ///< NaN with fewer than two records
    std::size_t fit_count = 0;
    double fit_window = 0.5;
    double max_u = 0.0;
    double min_u = 0.0;
    bool near_right_boundary = false;  ///< final front within 10% of x_max
    std::vector<double> final_row;
};

/// Samples the initial condition on the grid x_m = x_min + m dx.
/// Throws DomainError if the domain does not contain 0.
[[nodiscard]] std::vector<double> init_field(const SimConfig& cfg);

/// Explicit FKPP time stepping with front tracking every record_stride steps.
/// Throws InstabilityError when |u| exceeds the guard and NoCrossingError if
/// the tracked level is not crossed.
[[nodiscard]] SimResult run(const SimConfig& cfg);

/// Rightmost m with row[m] >= level > row[m+1], linearly interpolated.
/// Throws NoCrossingError otherwise.
[[nodiscard]] double front_position(std::span<const double> row, double x0, double dx, double level);

/// Least-squares slope over the trailing window_fraction of the samples
/// (at least two). Throws DomainError with fewer than two samples.
[[nodiscard]] double fit_speed(std::span<const double> times, std::span<const double> positions,
                               double window_fraction);

/// Number of trailing samples fit_speed uses for `count` samples.
[[nodiscard]] std::size_t fit_sample_count(std::size_t count, double window_fraction);

}  // namespace latsym
