#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace latsym {

/// Lattice site index (m counts along x, n along t).
struct IndexPoint {
    std::int64_t m = 0;
    std::int64_t n = 0;

    friend constexpr bool operator==(const IndexPoint&, const IndexPoint&) = default;
};

/// Physical coordinates of a lattice site.
struct Coords {
    double x = 0.0;
    double t = 0.0;
};

/// Uniform regular lattice with constant spacings and an origin.
///
/// Site (m, n) sits at (x0 + m*dx, t0 + n*dt). The aspect ratio p = dx/dt is
/// derived on demand so it always agrees with the stored spacings.
class LatticeSpec {
public:
    /// Throws DomainError unless dx > 0 and dt > 0 (both finite).
    LatticeSpec(double dx, double dt, double x0 = 0.0, double t0 = 0.0);

    [[nodiscard]] double dx() const noexcept { return dx_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double p() const noexcept { return dx_ / dt_; }

private:
    double dx_;
    double dt_;
    double x0_;
    double t0_;
};

[[nodiscard]] Coords index_to_coords(const LatticeSpec& spec, IndexPoint pt) noexcept;

/// Spacing function of (x, t, u) used by the general lattice equations.
using SpacingFn = std::function<double(double x, double t, double u)>;

/// Lattice described only through its neighbour increments:
///   x_{m+1,n} - x_{m,n} = xi,   x_{m,n+1} - x_{m,n} = eta,
///   t_{m+1,n} - t_{m,n} = tau,  t_{m,n+1} - t_{m,n} = theta.
/// The u argument allows solution-dependent lattices; nothing shipped uses it.
struct GeneralLatticeSpec {
    SpacingFn xi;
    SpacingFn eta;
    SpacingFn tau;
    SpacingFn theta;

    /// xi = dx, eta = 0, tau = 0, theta = dt.
    static GeneralLatticeSpec regular(const LatticeSpec& spec);
};

/// Site coordinates on a rectangular index window (row-major in n).
class CoordGrid {
public:
    CoordGrid(std::int64_t m_lo, std::int64_t m_hi, std::int64_t n_lo, std::int64_t n_hi);

    /// Grid of index_to_coords over the window.
    static CoordGrid from_lattice(const LatticeSpec& spec, std::int64_t m_lo, std::int64_t m_hi,
                                  std::int64_t n_lo, std::int64_t n_hi);

    [[nodiscard]] std::int64_t m_lo() const noexcept { return m_lo_; }
    [[nodiscard]] std::int64_t m_hi() const noexcept { return m_hi_; }
    [[nodiscard]] std::int64_t n_lo() const noexcept { return n_lo_; }
    [[nodiscard]] std::int64_t n_hi() const noexcept { return n_hi_; }
    [[nodiscard]] std::int64_t width() const noexcept { return m_hi_ - m_lo_ + 1; }
    [[nodiscard]] std::int64_t height() const noexcept { return n_hi_ - n_lo_ + 1; }

    [[nodiscard]] const Coords& at(IndexPoint pt) const;
    Coords& at(IndexPoint pt);

private:
    [[nodiscard]] std::size_t offset(IndexPoint pt) const;

    std::int64_t m_lo_, m_hi_, n_lo_, n_hi_;
    std::vector<Coords> coords_;
};

inline constexpr double kLatticeTolerance = 1e-12;

/// True iff all four lattice equations hold within tol wherever both
/// neighbours lie in the window. Spacing functions are evaluated at u = 0.
/// Throws DomainError for windows smaller than 2x2.
[[nodiscard]] bool verify_lattice_equations(const GeneralLatticeSpec& spec, const CoordGrid& coords,
                                            double tol = kLatticeTolerance);

/// Moving frame with commensurate speed v = k * dx / dt.
///
/// Index maps: mu = m - k n, nu = n and back m = mu + k nu, n = nu.
class MovingFrameMap {
public:
    /// Throws DomainError unless k >= 1.
    MovingFrameMap(std::int64_t k, LatticeSpec lattice);

    [[nodiscard]] std::int64_t k() const noexcept { return k_; }
    [[nodiscard]] const LatticeSpec& lattice() const noexcept { return lattice_; }
    [[nodiscard]] double v() const noexcept { return static_cast<double>(k_) * lattice_.p(); }

private:
    std::int64_t k_;
    LatticeSpec lattice_;
};

/// (m, n) -> (mu, nu).
[[nodiscard]] IndexPoint to_moving_frame(const MovingFrameMap& map, IndexPoint pt) noexcept;
/// (mu, nu) -> (m, n).
[[nodiscard]] IndexPoint from_moving_frame(const MovingFrameMap& map, IndexPoint frame) noexcept;

/// Moving-frame coordinates (zeta = x - v t, tau = t) of lattice site (m, n).
[[nodiscard]] Coords frame_coords(const MovingFrameMap& map, IndexPoint pt) noexcept;

}  // namespace latsym
