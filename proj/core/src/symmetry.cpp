#include "latsym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latsym/error.hpp"
#include "latsym/random.hpp"

namespace latsym {

TransformSpec::TransformSpec(std::string name, IndexMatrix matrix, IndexPoint shift, CoordAction action,
                             ValueMap value_map)
    : name_(std::move(name)),
      matrix_(matrix),
      shift_(shift),
      action_(std::move(action)),
      value_map_(std::move(value_map)) {
    if (!action_) throw DomainError("transform " + name_ + " has no coordinate action");
}

IndexPoint TransformSpec::apply(IndexPoint pt) const noexcept {
    return {matrix_.a * pt.m + matrix_.b * pt.n + shift_.m, matrix_.c * pt.m + matrix_.d * pt.n + shift_.n};
}

bool TransformSpec::invertible() const noexcept {
    const auto det = matrix_.determinant();
    return det == 1 || det == -1;
}

IndexPoint TransformSpec::inverse(IndexPoint pt) const {
    if (!invertible()) throw DomainError("transform " + name_ + " is not a bijection of the lattice");
    const std::int64_t det = matrix_.determinant();
    const std::int64_t m = pt.m - shift_.m;
    const std::int64_t n = pt.n - shift_.n;
    // inverse of an integer matrix with det +-1 is det * adj
    return {det * (matrix_.d * m - matrix_.b * n), det * (-matrix_.c * m + matrix_.a * n)};
}

namespace transforms {

TransformSpec shift_x() {
    return TransformSpec("Tx", {1, 0, 0, 1}, {1, 0},
                         [](Coords c, const LatticeSpec& l) { return Coords{c.x + l.dx(), c.t}; });
}

TransformSpec shift_t() {
    return TransformSpec("Tt", {1, 0, 0, 1}, {0, 1},
                         [](Coords c, const LatticeSpec& l) { return Coords{c.x, c.t + l.dt()}; });
}

TransformSpec invert_x() {
    return TransformSpec("Bx", {-1, 0, 0, 1}, {0, 0},
                         [](Coords c, const LatticeSpec&) { return Coords{-c.x, c.t}; });
}

TransformSpec invert_t() {
    return TransformSpec("Bt", {1, 0, 0, -1}, {0, 0},
                         [](Coords c, const LatticeSpec&) { return Coords{c.x, -c.t}; });
}

TransformSpec rotate() {
    return TransformSpec("R", {0, -1, 1, 0}, {0, 0}, [](Coords c, const LatticeSpec& l) {
        return Coords{-l.p() * c.t, c.x / l.p()};
    });
}

TransformSpec scale(std::int64_t q1, std::int64_t q2) {
    const auto fq1 = static_cast<double>(q1);
    const auto fq2 = static_cast<double>(q2);
    return TransformSpec("Sq", {q1, 0, 0, q2}, {0, 0},
                         [fq1, fq2](Coords c, const LatticeSpec&) { return Coords{fq1 * c.x, fq2 * c.t}; });
}

std::vector<TransformSpec> catalog() { return {shift_x(), shift_t(), invert_x(), invert_t(), rotate()}; }

TransformSpec by_name(const std::string& name, std::int64_t q1, std::int64_t q2) {
    if (name == "Tx") return shift_x();
    if (name == "Tt") return shift_t();
    if (name == "Bx") return invert_x();
    if (name == "Bt") return invert_t();
    if (name == "R") return rotate();
    if (name == "Sq") return scale(q1, q2);
    throw DomainError("unknown transform '" + name + "' (expected Tx, Tt, Bx, Bt, R or Sq)");
}

}  // namespace transforms

bool lattice_invariance(const TransformSpec& tr, const LatticeSpec& spec, InvarianceMode mode) {
    constexpr std::int64_t kRadius = 4;
    constexpr double kIndexTolerance = 1e-9;
    for (std::int64_t n = -kRadius; n <= kRadius; ++n) {
        for (std::int64_t m = -kRadius; m <= kRadius; ++m) {
            const Coords image = tr.act(index_to_coords(spec, {m, n}), spec);
            const double fm = (image.x - spec.x0()) / spec.dx();
            const double fn = (image.t - spec.t0()) / spec.dt();
            const double rm = std::round(fm);
            const double rn = std::round(fn);
            const double scale = 1.0 + std::max(std::abs(fm), std::abs(fn));
            if (std::abs(fm - rm) > kIndexTolerance * scale || std::abs(fn - rn) > kIndexTolerance * scale) {
                return false;
            }
            const IndexPoint expected = tr.apply({m, n});
            if (static_cast<std::int64_t>(rm) != expected.m || static_cast<std::int64_t>(rn) != expected.n) {
                return false;
            }
        }
    }
    return mode == InvarianceMode::into || tr.invertible();
}

InvarianceVerdict equation_invariance(const TransformSpec& tr, const StencilEquation& eq, std::size_t trials,
                                      std::uint64_t seed, double threshold) {
    if (!tr.invertible()) {
        throw DomainError("equation invariance needs a bijective lattice map; " + tr.name() + " is only into");
    }
    constexpr std::int64_t kEvalRadius = 2;
    const auto& params = eq.params();
    const double dx = params.count("dx") ? params.at("dx") : 1.0;
    const double dt = params.count("dt") ? params.at("dt") : 1.0;
    const LatticeSpec lattice(dx, dt);

    std::vector<IndexPoint> points;
    for (std::int64_t n = -kEvalRadius; n <= kEvalRadius; ++n) {
        for (std::int64_t m = -kEvalRadius; m <= kEvalRadius; ++m) points.push_back({m, n});
    }

    // Window covering both the original stencils and the preimages of the
    // transformed stencils.
    IndexRange mr{0, 0};
    IndexRange nr{0, 0};
    auto include = [&mr, &nr](IndexPoint p) {
        mr.lo = std::min(mr.lo, p.m);
        mr.hi = std::max(mr.hi, p.m);
        nr.lo = std::min(nr.lo, p.n);
        nr.hi = std::max(nr.hi, p.n);
    };
    for (const IndexPoint& p : points) {
        const IndexPoint q = tr.apply(p);
        for (const Offset& o : eq.offsets()) {
            include({p.m + o.dm, p.n + o.dn});
            include(tr.inverse({q.m + o.dm, q.n + o.dn}));
        }
    }

    InvarianceVerdict verdict;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Field2D u = random_field(mr, nr, mix_seed(seed, trial));
        const FieldLookup original = [&u](IndexPoint p) { return u.at(p); };
        const FieldLookup pulled = [&u, &tr](IndexPoint q) { return tr.map_value(u.at(tr.inverse(q))); };

        for (const IndexPoint& p : points) {
            const IndexPoint q = tr.apply(p);
            const double r0 = residual_with(eq, original, p, index_to_coords(lattice, p));
            const double r1 = residual_with(eq, pulled, q, index_to_coords(lattice, q));
            const double diff = r1 - r0;
            if (std::abs(diff) > verdict.max_difference) {
                verdict.max_difference = std::abs(diff);
                if (verdict.max_difference > threshold) {
                    verdict.witness = SymmetryWitness{u, p, diff, trial};
                }
            }
        }
    }
    verdict.symmetric = verdict.max_difference <= threshold;
    return verdict;
}

GeneratorSpec::GeneratorSpec(std::string name, GeneratorFn q, std::int64_t reach_lo, std::int64_t reach_hi,
                             std::optional<double> scale)
    : name_(std::move(name)), q_(std::move(q)), reach_lo_(reach_lo), reach_hi_(reach_hi), scale_(scale) {
    if (!q_) throw DomainError("generator " + name_ + " has no Q");
    if (reach_lo_ > 0 || reach_hi_ < 0) throw DomainError("generator reach must bracket 0");
    const Profile1D zero(IndexRange{reach_lo_, reach_hi_},
                         std::vector<double>(static_cast<std::size_t>(reach_hi_ - reach_lo_ + 1), 0.0));
    if (!std::isfinite(q_(0.0, 0.0, zero, 0))) {
        throw DomainError("generator " + name_ + " is not finite on the zero field");
    }
}

GeneratorSpec GeneratorSpec::scaling(double psi) {
    return GeneratorSpec(
        "scaling", [psi](double, double, const Profile1D& u, std::int64_t at) { return psi * u.at(at); }, 0, 0,
        psi);
}

GeneratorSpec GeneratorSpec::zero() {
    return GeneratorSpec("zero", [](double, double, const Profile1D&, std::int64_t) { return 0.0; });
}

GeneratorSpec GeneratorSpec::ansatz(double alpha, const DiffOp& delta) {
    return GeneratorSpec(
        "ansatz",
        [alpha, delta](double, double, const Profile1D& u, std::int64_t at) {
            return alpha * u.at(at) + apply_diffop(delta, u, at);
        },
        std::min<std::int64_t>(0, delta.lower()), std::max<std::int64_t>(0, delta.upper()));
}

Profile1D GeneratorSpec::apply(const Profile1D& u, double dx, double t) const {
    const IndexRange out{u.range().lo - reach_lo_, u.range().hi - reach_hi_};
    if (out.size() < 1) throw WindowError("profile too short for generator " + name_);
    return Profile1D::generate(out, [&](std::int64_t i) {
        return q_(static_cast<double>(i) * dx, t, u, i);
    });
}

namespace {

double param_or(const std::map<std::string, double>& params, const char* key, double fallback) {
    const auto it = params.find(key);
    return it != params.end() ? it->second : fallback;
}

Profile1D evolve(const StencilEquation& eq, Profile1D row, std::int64_t steps) {
    const Offset target = *eq.explicit_target();
    std::int64_t lo_off = 0;
    std::int64_t hi_off = 0;
    for (const Offset& o : eq.offsets()) {
        if (o == target) continue;
        lo_off = std::min(lo_off, o.dm);
        hi_off = std::max(hi_off, o.dm);
    }
    for (std::int64_t s = 0; s < steps; ++s) {
        const IndexRange src{row.range().lo - lo_off, row.range().hi - hi_off};
        if (src.size() < 1) throw WindowError("row exhausted after " + std::to_string(s) + " explicit steps");
        std::vector<double> next;
        next.reserve(static_cast<std::size_t>(src.size()));
        for (std::int64_t m = src.lo; m <= src.hi; ++m) {
            const double value = explicit_step(eq, row, m);
            if (!(std::abs(value) <= kOverflowGuard)) {
                throw SolverError("divergent evolution at step " + std::to_string(s + 1));
            }
            next.push_back(value);
        }
        row = Profile1D(IndexRange{src.lo + target.dm, src.hi + target.dm}, std::move(next));
    }
    return row;
}

Profile1D flow(const GeneratorSpec& gen, const Profile1D& u, double lambda, double dx, double t) {
    const Profile1D q = gen.apply(u, dx, t);
    return Profile1D::generate(q.range(), [&](std::int64_t i) { return u.at(i) + lambda * q.at(i); });
}

}  // namespace

double commutator_defect(const GeneratorSpec& gen, const StencilEquation& eq, double lambda, const Profile1D& u0,
                         std::int64_t steps) {
    if (!eq.explicit_target()) throw DomainError("commutator check needs an explicit equation");
    if (steps < 0) throw DomainError("steps must be non-negative");
    const double dx = param_or(eq.params(), "dx", 1.0);
    const double dt = param_or(eq.params(), "dt", 1.0);
    const double t_end = static_cast<double>(steps) * dt;

    const Profile1D a = flow(gen, evolve(eq, u0, steps), lambda, dx, t_end);
    const Profile1D b = evolve(eq, flow(gen, u0, lambda, dx, 0.0), steps);

    const std::int64_t lo = std::max(a.range().lo, b.range().lo);
    const std::int64_t hi = std::min(a.range().hi, b.range().hi);
    if (hi < lo) throw WindowError("flow and evolution windows do not overlap");
    double defect = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i) defect = std::max(defect, std::abs(a.at(i) - b.at(i)));
    return defect;
}

CommutatorCheck generator_commutator_check(const GeneratorSpec& gen, const StencilEquation& eq, double lambda,
                                           const Profile1D& u0, std::int64_t steps) {
    CommutatorCheck check;
    check.lambda = lambda;
    check.defect = commutator_defect(gen, eq, lambda, u0, steps);
    check.defect_half = commutator_defect(gen, eq, 0.5 * lambda, u0, steps);
    check.ratio = check.defect_half > 0.0 ? check.defect / check.defect_half
                                          : std::numeric_limits<double>::quiet_NaN();
    check.symmetric = check.defect <= kSymmetryThreshold || (check.ratio >= 3.5 && check.ratio <= 4.5);
    return check;
}

double travelling_wave_Q(const Field2D& u, std::int64_t k, IndexPoint pt) {
    return u.at({pt.m - k, pt.n}) - u.at({pt.m, pt.n + 1});
}

double asymmetry_residual(const GeneratorSpec& gen, const ReducedEquation& eq, const Profile1D& a,
                          std::int64_t mu) {
    const double dx = param_or(eq.params(), "dx", 1.0);
    const Profile1D q = gen.apply(a, dx);
    if (!eq.fits(q, mu)) {
        throw WindowError("generator image does not cover the reduced stencil at mu = " + std::to_string(mu));
    }
    return eq.directional_derivative(a, q, mu) - eq.residual(q, mu);
}

}  // namespace latsym
