#include "latsym/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latsym/equations.hpp"
#include "latsym/error.hpp"

namespace latsym {

double InitialCondition::operator()(double x) const {
    return x > 0.0 ? std::exp(-k0 * (x + k1)) : 1.0;
}

void SimConfig::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(std::isfinite(value) && value > 0.0)) {
            throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
        }
    };
    positive(dx, "dx");
    positive(dt, "dt");
    positive(ic.k0, "k0");
    if (ic.k1 < 0.0) throw DomainError("k1 must be non-negative");
    if (!(std::isfinite(t_end) && t_end >= 0.0)) throw DomainError("t_end must be non-negative");
    if (!(x_min < x_max)) throw DomainError("x_min must be below x_max");
    if (!(x_min <= 0.0 && x_max >= 0.0)) throw DomainError("domain [x_min, x_max] must contain 0");
    if (!(track_level > 0.0 && track_level < 1.0)) throw DomainError("track_level must lie in (0, 1)");
    if (record_stride < 1) throw DomainError("record_stride must be >= 1");
    if (!(fit_window > 0.0 && fit_window <= 1.0)) throw DomainError("fit_window must lie in (0, 1]");
    if (num_points() < 3) throw DomainError("domain holds fewer than 3 grid points");
    if (!allow_unstable_dt && dt > stable_dt(dx) * (1.0 + 1e-12)) {
        throw DomainError("dt = " + std::to_string(dt) + " exceeds the stability guard 0.4 dx^2 = " +
                          std::to_string(stable_dt(dx)));
    }
}

std::int64_t SimConfig::num_points() const {
    return static_cast<std::int64_t>(std::floor((x_max - x_min) / dx + 0.5)) + 1;
}

std::int64_t SimConfig::num_steps() const {
    return static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-9));
}

std::vector<double> init_field(const SimConfig& cfg) {
    if (!(cfg.x_min <= 0.0 && cfg.x_max >= 0.0)) throw DomainError("domain [x_min, x_max] must contain 0");
    const std::int64_t n = cfg.num_points();
    std::vector<double> row(static_cast<std::size_t>(n));
    for (std::int64_t m = 0; m < n; ++m) row[static_cast<std::size_t>(m)] = cfg.ic(cfg.x_at(m - cfg.shift_cells));
    return row;
}

double front_position(std::span<const double> row, double x0, double dx, double level) {
    for (std::size_t i = row.size(); i-- > 1;) {
        const std::size_t m = i - 1;
        if (row[m] >= level && row[m + 1] < level) {
            return x0 + static_cast<double>(m) * dx + dx * (row[m] - level) / (row[m] - row[m + 1]);
        }
    }
    throw NoCrossingError("row never crosses level " + std::to_string(level));
}

std::size_t fit_sample_count(std::size_t count, double window_fraction) {
    const auto wanted = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(count)));
    return std::min(count, std::max<std::size_t>(2, wanted));
}

double fit_speed(std::span<const double> times, std::span<const double> positions, double window_fraction) {
    if (times.size() != positions.size()) throw DomainError("times and positions differ in length");
    if (times.size() < 2) throw DomainError("speed fit needs at least 2 samples");
    const std::size_t used = fit_sample_count(times.size(), window_fraction);
    const auto t = times.last(used);
    const auto x = positions.last(used);

    double t_mean = 0.0;
    double x_mean = 0.0;
    for (std::size_t i = 0; i < used; ++i) {
        t_mean += t[i];
        x_mean += x[i];
    }
    t_mean /= static_cast<double>(used);
    x_mean /= static_cast<double>(used);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < used; ++i) {
        sxy += (t[i] - t_mean) * (x[i] - x_mean);
        sxx += (t[i] - t_mean) * (t[i] - t_mean);
    }
    if (sxx == 0.0) throw DomainError("speed fit needs distinct sample times");
    return sxy / sxx;
}

SimResult run(const SimConfig& cfg) {
    cfg.validate();
    const StencilEquation eq = make_fkpp(cfg.dx, cfg.dt);
    std::vector<double> row = init_field(cfg);
    row.front() = cfg.left_value;
    row.back() = cfg.right_value;
    std::vector<double> next = row;

    SimResult result;
    result.fit_window = cfg.fit_window;
    result.max_u = *std::max_element(row.begin(), row.end());
    result.min_u = *std::min_element(row.begin(), row.end());

    auto record = [&](std::int64_t step) {
        result.steps.push_back(step);
        result.times.push_back(static_cast<double>(step) * cfg.dt);
        result.front_positions.push_back(front_position(row, cfg.x_min, cfg.dx, cfg.track_level));
    };

    const std::int64_t steps = cfg.num_steps();
    record(0);
    for (std::int64_t s = 1; s <= steps; ++s) {
        explicit_step_into(eq, row, next);
        next.front() = cfg.left_value;
        next.back() = cfg.right_value;
        for (double u : next) {
            if (!(std::abs(u) <= cfg.instability_guard)) {
                throw InstabilityError("instability: |u| exceeded " + std::to_string(cfg.instability_guard) +
                                           " at step " + std::to_string(s),
                                       s);
            }
            result.max_u = std::max(result.max_u, u);
            result.min_u = std::min(result.min_u, u);
        }
        row.swap(next);
        if (s % cfg.record_stride == 0) record(s);
    }

    if (result.times.size() >= 2) {
        result.fit_count = fit_sample_count(result.times.size(), cfg.fit_window);
        result.fitted_speed = fit_speed(result.times, result.front_positions, cfg.fit_window);
    } else {
        result.fit_count = result.times.size();
        result.fitted_speed = std::numeric_limits<double>::quiet_NaN();
    }
    result.near_right_boundary =
        result.front_positions.back() > cfg.x_max - 0.1 * (cfg.x_max - cfg.x_min);
    result.final_row = std::move(row);
    return result;
}

}  // namespace latsym
