#include "latsym/lattice.hpp"

#include <cmath>
#include <string>

#include "latsym/error.hpp"

namespace latsym {

LatticeSpec::LatticeSpec(double dx, double dt, double x0, double t0)
    : dx_(dx), dt_(dt), x0_(x0), t0_(t0) {
    if (!(std::isfinite(dx) && dx > 0.0)) {
        throw DomainError("lattice spacing dx must be positive, got " + std::to_string(dx));
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw DomainError("lattice spacing dt must be positive, got " + std::to_string(dt));
    }
    if (!std::isfinite(x0) || !std::isfinite(t0)) {
        throw DomainError("lattice origin must be finite");
    }
}

Coords index_to_coords(const LatticeSpec& spec, IndexPoint pt) noexcept {
    return {spec.x0() + static_cast<double>(pt.m) * spec.dx(),
            spec.t0() + static_cast<double>(pt.n) * spec.dt()};
}

GeneralLatticeSpec GeneralLatticeSpec::regular(const LatticeSpec& spec) {
    const double dx = spec.dx();
    const double dt = spec.dt();
    return {
        [dx](double, double, double) { return dx; },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; },
        [dt](double, double, double) { return dt; },
    };
}

CoordGrid::CoordGrid(std::int64_t m_lo, std::int64_t m_hi, std::int64_t n_lo, std::int64_t n_hi)
    : m_lo_(m_lo), m_hi_(m_hi), n_lo_(n_lo), n_hi_(n_hi) {
    if (m_hi < m_lo || n_hi < n_lo) {
        throw DomainError("coordinate window is empty");
    }
    coords_.resize(static_cast<std::size_t>(width() * height()));
}

CoordGrid CoordGrid::from_lattice(const LatticeSpec& spec, std::int64_t m_lo, std::int64_t m_hi,
                                  std::int64_t n_lo, std::int64_t n_hi) {
    CoordGrid grid(m_lo, m_hi, n_lo, n_hi);
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
            grid.at({m, n}) = index_to_coords(spec, {m, n});
        }
    }
    return grid;
}

std::size_t CoordGrid::offset(IndexPoint pt) const {
    if (pt.m < m_lo_ || pt.m > m_hi_ || pt.n < n_lo_ || pt.n > n_hi_) {
        throw WindowError("coordinate lookup (" + std::to_string(pt.m) + ", " +
                          std::to_string(pt.n) + ") outside window");
    }
    return static_cast<std::size_t>((pt.n - n_lo_) * width() + (pt.m - m_lo_));
}

const Coords& CoordGrid::at(IndexPoint pt) const { return coords_[offset(pt)]; }
Coords& CoordGrid::at(IndexPoint pt) { return coords_[offset(pt)]; }

bool verify_lattice_equations(const GeneralLatticeSpec& spec, const CoordGrid& coords, double tol) {
    if (coords.width() < 2 || coords.height() < 2) {
        throw DomainError("lattice verification needs at least a 2x2 window");
    }
    auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };

    for (std::int64_t n = coords.n_lo(); n <= coords.n_hi(); ++n) {
        for (std::int64_t m = coords.m_lo(); m <= coords.m_hi(); ++m) {
            const Coords& here = coords.at({m, n});
            if (m < coords.m_hi()) {
                const Coords& right = coords.at({m + 1, n});
                if (!close(right.x - here.x, spec.xi(here.x, here.t, 0.0)) ||
                    !close(right.t - here.t, spec.tau(here.x, here.t, 0.0))) {
                    return false;
                }
            }
            if (n < coords.n_hi()) {
                const Coords& up = coords.at({m, n + 1});
                if (!close(up.x - here.x, spec.eta(here.x, here.t, 0.0)) ||
                    !close(up.t - here.t, spec.theta(here.x, here.t, 0.0))) {
                    return false;
                }
            }
        }
    }
    return true;
}

MovingFrameMap::MovingFrameMap(std::int64_t k, LatticeSpec lattice) : k_(k), lattice_(lattice) {
    if (k < 1) {
        throw DomainError("moving frame shift count k must be >= 1, got " + std::to_string(k));
    }
}

IndexPoint to_moving_frame(const MovingFrameMap& map, IndexPoint pt) noexcept {
    return {pt.m - map.k() * pt.n, pt.n};
}

IndexPoint from_moving_frame(const MovingFrameMap& map, IndexPoint frame) noexcept {
    return {frame.m + map.k() * frame.n, frame.n};
}

Coords frame_coords(const MovingFrameMap& map, IndexPoint pt) noexcept {
    const Coords c = index_to_coords(map.lattice(), pt);
    return {c.x - map.v() * c.t, c.t};
}

}  // namespace latsym
