#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latsym/lattice.hpp"

namespace latsym {

/// Inclusive integer index range [lo, hi].
struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    [[nodiscard]] constexpr std::int64_t size() const noexcept { return hi - lo + 1; }
    [[nodiscard]] constexpr bool contains(std::int64_t i) const noexcept { return i >= lo && i <= hi; }

    friend constexpr bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Real samples u_{m,n} over a rectangular index window, stored row-major in n.
///
/// Immutable after construction; every cell holds a finite value.
class Field2D {
public:
    Field2D(IndexRange m_range, IndexRange n_range, std::vector<double> values);

    /// Fill the window with fn(IndexPoint).
    template <typename Fn>
    static Field2D generate(IndexRange m_range, IndexRange n_range, Fn&& fn) {
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(m_range.size() * n_range.size()));
        for (std::int64_t n = n_range.lo; n <= n_range.hi; ++n) {
            for (std::int64_t m = m_range.lo; m <= m_range.hi; ++m) {
                values.push_back(fn(IndexPoint{m, n}));
            }
        }
        return Field2D(m_range, n_range, std::move(values));
    }

    static Field2D constant(IndexRange m_range, IndexRange n_range, double value);

    [[nodiscard]] const IndexRange& m_range() const noexcept { return m_range_; }
    [[nodiscard]] const IndexRange& n_range() const noexcept { return n_range_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] bool contains(IndexPoint pt) const noexcept {
        return m_range_.contains(pt.m) && n_range_.contains(pt.n);
    }

    /// Throws WindowError outside the window.
    [[nodiscard]] double at(IndexPoint pt) const;

    /// Copy with a single site replaced.
    [[nodiscard]] Field2D with_value(IndexPoint pt, double value) const;

private:
    IndexRange m_range_;
    IndexRange n_range_;
    std::vector<double> values_;
};

/// Decay rate, speed and shift count attached to reduced profiles.
struct FrontMeta {
    double alpha = 0.0;
    double v = 0.0;
    std::int64_t k = 1;
};

/// One-index profile, e.g. a single time row or a reduced front A_mu.
class Profile1D {
public:
    Profile1D(IndexRange range, std::vector<double> values, std::optional<FrontMeta> meta = {});

    template <typename Fn>
    static Profile1D generate(IndexRange range, Fn&& fn) {
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(range.size()));
        for (std::int64_t i = range.lo; i <= range.hi; ++i) values.push_back(fn(i));
        return Profile1D(range, std::move(values));
    }

    [[nodiscard]] const IndexRange& range() const noexcept { return range_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::optional<FrontMeta>& meta() const noexcept { return meta_; }
    [[nodiscard]] bool contains(std::int64_t i) const noexcept { return range_.contains(i); }

    /// Throws WindowError outside the window.
    [[nodiscard]] double at(std::int64_t i) const;

    [[nodiscard]] Profile1D with_meta(FrontMeta meta) const;

private:
    IndexRange range_;
    std::vector<double> values_;
    std::optional<FrontMeta> meta_;
};

/// Row n of a field as a profile over m.
[[nodiscard]] Profile1D row_of(const Field2D& field, std::int64_t n);

inline constexpr double kDiffOpSumTolerance = 1e-14;

/// Difference operator (1/delta) * sum_{l=lower}^{upper} a_l f_{k+l}.
///
/// Consistency requires sum a_l = 0 and sum l*a_l = 1, so the operator
/// annihilates constants and is exact on linear data.
class DiffOp {
public:
    /// Throws DomainError if upper <= lower, delta <= 0, the coefficient
    /// count is not upper-lower+1, or either sum rule is broken.
    DiffOp(std::int64_t lower, std::int64_t upper, std::vector<double> coeffs, double delta);

    [[nodiscard]] std::int64_t lower() const noexcept { return lower_; }
    [[nodiscard]] std::int64_t upper() const noexcept { return upper_; }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }

    static DiffOp forward(double delta) { return DiffOp(0, 1, {-1.0, 1.0}, delta); }
    static DiffOp backward(double delta) { return DiffOp(-1, 0, {-1.0, 1.0}, delta); }
    static DiffOp centered(double delta) { return DiffOp(-1, 1, {-0.5, 0.0, 0.5}, delta); }

private:
    std::int64_t lower_;
    std::int64_t upper_;
    std::vector<double> coeffs_;
    double delta_;
};

[[nodiscard]] DiffOp make_diffop(std::int64_t lower, std::int64_t upper, std::vector<double> coeffs,
                                 double delta);

/// Throws WindowError if [at+lower, at+upper] leaves the profile window.
[[nodiscard]] double apply_diffop(const DiffOp& op, const Profile1D& f, std::int64_t at);

struct UpDown {
    double down = 0.0;  ///< (f_at - f_{at-1}) / step
    double up = 0.0;    ///< (f_{at+1} - f_at) / step
};

[[nodiscard]] UpDown updown_derivatives(const Profile1D& f, std::int64_t at, double step);

enum class Axis { m, n };

/// Down/up differences of a field along one index direction.
[[nodiscard]] UpDown updown_derivatives(const Field2D& f, IndexPoint at, Axis axis, double step);

}  // namespace latsym
