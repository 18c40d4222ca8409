#include "latsym/equations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latsym/error.hpp"

namespace latsym {
namespace {

void require_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
    }
}

std::string offset_str(Offset o) {
    return "(" + std::to_string(o.dm) + ", " + std::to_string(o.dn) + ")";
}

}  // namespace

StencilEquation::StencilEquation(std::string name, std::vector<Offset> offsets, ResidualFn residual,
                                 std::map<std::string, double> params,
                                 std::optional<Offset> explicit_target, ExplicitSolveFn explicit_solve)
    : name_(std::move(name)),
      offsets_(std::move(offsets)),
      residual_(std::move(residual)),
      params_(std::move(params)),
      target_(explicit_target),
      solve_(std::move(explicit_solve)) {
    if (offsets_.empty()) throw DomainError("equation " + name_ + " has an empty stencil");
    if (!residual_) throw DomainError("equation " + name_ + " has no residual");
    if (target_) {
        if (std::find(offsets_.begin(), offsets_.end(), *target_) == offsets_.end()) {
            throw DomainError("explicit target " + offset_str(*target_) + " is not in the stencil");
        }
        if (!solve_) throw DomainError("explicit target declared without a solver");
    }
    min_dm_ = max_dm_ = offsets_.front().dm;
    min_dn_ = max_dn_ = offsets_.front().dn;
    for (const Offset& o : offsets_) {
        min_dm_ = std::min(min_dm_, o.dm);
        max_dm_ = std::max(max_dm_, o.dm);
        min_dn_ = std::min(min_dn_, o.dn);
        max_dn_ = std::max(max_dn_, o.dn);
    }
}

double StencilEquation::param(const std::string& key) const {
    const auto it = params_.find(key);
    if (it == params_.end()) throw DomainError("equation " + name_ + " has no parameter " + key);
    return it->second;
}

double StencilEquation::solve_target(std::span<const double> values) const {
    if (!target_) throw DomainError("equation " + name_ + " has no explicit target");
    return solve_(values);
}

bool StencilEquation::fits(const Field2D& u, IndexPoint pt) const noexcept {
    return u.contains({pt.m + min_dm_, pt.n + min_dn_}) && u.contains({pt.m + max_dm_, pt.n + max_dn_});
}

ReducedEquation::ReducedEquation(std::string name, std::vector<LinearTerm> linear,
                                 std::vector<QuadraticTerm> quadratic,
                                 std::map<std::string, double> params, ProfileResidualFn printed)
    : name_(std::move(name)),
      linear_(std::move(linear)),
      quadratic_(std::move(quadratic)),
      params_(std::move(params)),
      printed_(std::move(printed)) {
    for (const auto& t : linear_) offsets_.push_back(t.offset);
    for (const auto& q : quadratic_) {
        offsets_.push_back(q.first);
        offsets_.push_back(q.second);
    }
    if (offsets_.empty()) throw DomainError("reduced equation " + name_ + " has no terms");
    std::sort(offsets_.begin(), offsets_.end());
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

bool ReducedEquation::fits(const Profile1D& a, std::int64_t mu) const noexcept {
    return a.contains(mu + min_offset()) && a.contains(mu + max_offset());
}

double ReducedEquation::residual(const Profile1D& a, std::int64_t mu) const {
    if (!fits(a, mu)) {
        throw WindowError("reduced stencil at mu = " + std::to_string(mu) + " leaves the profile window");
    }
    return printed_ ? printed_(a, mu) : polynomial_residual(a, mu);
}

double ReducedEquation::polynomial_residual(const Profile1D& a, std::int64_t mu) const {
    double acc = 0.0;
    for (const auto& t : linear_) acc += t.coeff * a.at(mu + t.offset);
    for (const auto& q : quadratic_) acc += q.coeff * a.at(mu + q.first) * a.at(mu + q.second);
    return acc;
}

double ReducedEquation::directional_derivative(const Profile1D& a, const Profile1D& direction,
                                               std::int64_t mu) const {
    double acc = 0.0;
    for (const auto& t : linear_) acc += t.coeff * direction.at(mu + t.offset);
    for (const auto& q : quadratic_) {
        acc += q.coeff * (direction.at(mu + q.first) * a.at(mu + q.second) +
                          a.at(mu + q.first) * direction.at(mu + q.second));
    }
    return acc;
}

StencilEquation make_heat(double dx, double dt) {
    require_positive(dx, "dx");
    require_positive(dt, "dt");
    // values: u_{m,n+1}, u_{m-1,n}, u_{m,n}, u_{m+1,n}
    std::vector<Offset> offsets{{0, 1}, {-1, 0}, {0, 0}, {1, 0}};
    auto residual = [dx, dt](double, double, std::span<const double> u) {
        return (u[0] - u[2]) / dt - (u[3] - 2.0 * u[2] + u[1]) / (dx * dx);
    };
    auto solve = [dx, dt](std::span<const double> u) {
        return u[2] + dt * ((u[3] - 2.0 * u[2] + u[1]) / (dx * dx));
    };
    return StencilEquation("heat", std::move(offsets), residual, {{"dx", dx}, {"dt", dt}}, Offset{0, 1},
                           solve);
}

StencilEquation make_fkpp(double dx, double dt) {
    require_positive(dx, "dx");
    require_positive(dt, "dt");
    std::vector<Offset> offsets{{0, 1}, {-1, 0}, {0, 0}, {1, 0}};
    auto residual = [dx, dt](double, double, std::span<const double> u) {
        return (u[0] - u[2]) / dt - ((u[3] - 2.0 * u[2] + u[1]) / (dx * dx) + u[2] * (1.0 - u[2]));
    };
    auto solve = [dx, dt](std::span<const double> u) {
        return u[2] + dt * ((u[3] - 2.0 * u[2] + u[1]) / (dx * dx) + u[2] * (1.0 - u[2]));
    };
    return StencilEquation("fkpp", std::move(offsets), residual, {{"dx", dx}, {"dt", dt}}, Offset{0, 1},
                           solve);
}

StencilEquation make_fkpp_moving_frame(const EquationParams& params) {
    const double dx = params.dx;
    const std::int64_t k = params.k;
    require_positive(dx, "dx");
    if (k < 1) throw DomainError("k must be >= 1, got " + std::to_string(k));
    if (!params.dt && !params.v) throw DomainError("moving frame needs dt or v");

    double dt = 0.0;
    double v = 0.0;
    const double kd = static_cast<double>(k);
    if (params.dt && params.v) {
        dt = *params.dt;
        v = *params.v;
        require_positive(dt, "dt");
        require_positive(v, "v");
        const double expected_dt = kd / v * dx;
        if (std::abs(dt - expected_dt) > kFrameConstraintTolerance * expected_dt) {
            throw DomainError("moving frame constraint dt = (k/v) dx violated: dt = " + std::to_string(dt) +
                              ", (k/v) dx = " + std::to_string(expected_dt));
        }
    } else if (params.dt) {
        dt = *params.dt;
        require_positive(dt, "dt");
        v = kd * dx / dt;
    } else {
        v = *params.v;
        require_positive(v, "v");
        dt = kd / v * dx;
    }

    // values: w_{mu-k,nu+1}, w_{mu-1,nu}, w_{mu,nu}, w_{mu+1,nu}
    std::vector<Offset> offsets{{-k, 1}, {-1, 0}, {0, 0}, {1, 0}};
    ResidualFn residual;
    std::string name;
    if (params.form == MovingFrameForm::quotient) {
        name = "fkpp_moving_frame";
        residual = [dx, dt](double, double, std::span<const double> w) {
            return (w[0] - w[2]) / dt - ((w[3] - 2.0 * w[2] + w[1]) / (dx * dx) + w[2] * (1.0 - w[2]));
        };
    } else {
        name = "fkpp_moving_frame_scaled";
        residual = [dx, v, kd](double, double, std::span<const double> w) {
            return (w[3] - 2.0 * w[2] + w[1]) - v / kd * dx * (w[0] - w[2]) + dx * dx * w[2] * (1.0 - w[2]);
        };
    }
    auto solve = [dx, dt](std::span<const double> w) {
        return w[2] + dt * ((w[3] - 2.0 * w[2] + w[1]) / (dx * dx) + w[2] * (1.0 - w[2]));
    };
    return StencilEquation(std::move(name), std::move(offsets), residual,
                           {{"dx", dx}, {"dt", dt}, {"k", kd}, {"v", v}}, Offset{-k, 1}, solve);
}

ReducedEquation make_fkpp_reduced(double dx, double v, std::int64_t k) {
    require_positive(dx, "dx");
    if (!std::isfinite(v)) throw DomainError("v must be finite");
    if (k < 1) throw DomainError("k must be >= 1, got " + std::to_string(k));
    const double kd = static_cast<double>(k);
    const double drift = v / kd * dx;

    std::vector<LinearTerm> linear{
        {1, 1.0}, {0, -2.0}, {-1, 1.0}, {0, drift}, {-k, -drift}, {0, dx * dx}};
    std::vector<QuadraticTerm> quadratic{{0, 0, -dx * dx}};
    auto printed = [dx, k, drift](const Profile1D& a, std::int64_t mu) {
        const double am = a.at(mu);
        return (a.at(mu + 1) - 2.0 * am + a.at(mu - 1)) + drift * (am - a.at(mu - k)) +
               dx * dx * am * (1.0 - am);
    };
    return ReducedEquation("fkpp_reduced", std::move(linear), std::move(quadratic),
                           {{"dx", dx}, {"v", v}, {"k", kd}}, printed);
}

std::variant<StencilEquation, ReducedEquation> make_equation(EquationKind kind,
                                                             const EquationParams& params) {
    switch (kind) {
        case EquationKind::heat:
        case EquationKind::fkpp: {
            if (!params.dt) throw DomainError("dt is required for " + to_string(kind));
            return kind == EquationKind::heat ? make_heat(params.dx, *params.dt)
                                              : make_fkpp(params.dx, *params.dt);
        }
        case EquationKind::fkpp_moving_frame:
            return make_fkpp_moving_frame(params);
        case EquationKind::fkpp_reduced: {
            double v = 0.0;
            if (params.v) {
                v = *params.v;
            } else if (params.dt) {
                require_positive(*params.dt, "dt");
                v = static_cast<double>(params.k) * params.dx / *params.dt;
            } else {
                throw DomainError("fkpp_reduced needs v (or dt to derive it)");
            }
            return make_fkpp_reduced(params.dx, v, params.k);
        }
    }
    throw DomainError("unknown equation kind");
}

EquationKind parse_equation_kind(const std::string& name) {
    if (name == "heat") return EquationKind::heat;
    if (name == "fkpp") return EquationKind::fkpp;
    if (name == "fkpp_moving_frame" || name == "fkpp-moving-frame") return EquationKind::fkpp_moving_frame;
    if (name == "fkpp_reduced" || name == "fkpp-reduced") return EquationKind::fkpp_reduced;
    throw DomainError("unknown equation '" + name + "'");
}

std::string to_string(EquationKind kind) {
    switch (kind) {
        case EquationKind::heat: return "heat";
        case EquationKind::fkpp: return "fkpp";
        case EquationKind::fkpp_moving_frame: return "fkpp_moving_frame";
        case EquationKind::fkpp_reduced: return "fkpp_reduced";
    }
    return "unknown";
}

double residual_with(const StencilEquation& eq, const FieldLookup& lookup, IndexPoint pt, Coords coords) {
    const auto offsets = eq.offsets();
    std::vector<double> values(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        values[i] = lookup({pt.m + offsets[i].dm, pt.n + offsets[i].dn});
    }
    return eq.residual(coords.x, coords.t, values);
}

double residual_at(const StencilEquation& eq, const Field2D& u, IndexPoint pt, const LatticeSpec& lattice) {
    if (!eq.fits(u, pt)) {
        throw WindowError("stencil of " + eq.name() + " at (" + std::to_string(pt.m) + ", " +
                          std::to_string(pt.n) + ") leaves the field window");
    }
    return residual_with(eq, [&u](IndexPoint p) { return u.at(p); }, pt, index_to_coords(lattice, pt));
}

double residual_at(const StencilEquation& eq, const Field2D& u, IndexPoint pt) {
    const auto& p = eq.params();
    const auto dx = p.find("dx");
    const auto dt = p.find("dt");
    const LatticeSpec lattice(dx != p.end() ? dx->second : 1.0, dt != p.end() ? dt->second : 1.0);
    return residual_at(eq, u, pt, lattice);
}

namespace {

void require_next_row_target(const StencilEquation& eq) {
    const auto& target = eq.explicit_target();
    if (!target) throw DomainError("equation " + eq.name() + " has no explicit target");
    if (target->dn != 1) throw DomainError("explicit target of " + eq.name() + " is not in the next row");
    for (const Offset& o : eq.offsets()) {
        if (o != *target && o.dn != 0) {
            throw DomainError("equation " + eq.name() + " couples more than one time row");
        }
    }
}

}  // namespace

double explicit_step(const StencilEquation& eq, const Profile1D& row, std::int64_t m) {
    require_next_row_target(eq);
    const Offset target = *eq.explicit_target();
    const auto offsets = eq.offsets();
    std::vector<double> values(offsets.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] == target) continue;
        values[i] = row.at(m + offsets[i].dm);
    }
    return eq.solve_target(values);
}

void explicit_step_into(const StencilEquation& eq, std::span<const double> row, std::span<double> next) {
    require_next_row_target(eq);
    if (next.size() != row.size()) throw DomainError("explicit_step_into needs equal-length rows");
    const Offset target = *eq.explicit_target();
    const auto offsets = eq.offsets();
    const auto n = static_cast<std::int64_t>(row.size());

    std::int64_t lo = -std::min<std::int64_t>(0, target.dm);
    std::int64_t hi = n - 1 - std::max<std::int64_t>(0, target.dm);
    for (const Offset& o : offsets) {
        if (o == target) continue;
        lo = std::max(lo, -o.dm);
        hi = std::min(hi, n - 1 - o.dm);
    }
    std::vector<double> values(offsets.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::int64_t i = lo; i <= hi; ++i) {
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            if (offsets[j] == target) continue;
            values[j] = row[static_cast<std::size_t>(i + offsets[j].dm)];
        }
        next[static_cast<std::size_t>(i + target.dm)] = eq.solve_target(values);
    }
}

double moving_frame_equivalence(const Field2D& u, std::int64_t k, double dx, double dt) {
    const StencilEquation fixed = make_fkpp(dx, dt);
    EquationParams fp;
    fp.dx = dx;
    fp.dt = dt;
    fp.k = k;
    const StencilEquation frame = make_fkpp_moving_frame(fp);
    const MovingFrameMap map(k, LatticeSpec(dx, dt));

    const FieldLookup u_lookup = [&u](IndexPoint p) { return u.at(p); };
    // w_{mu,nu} = u_{mu + k nu, nu}
    const FieldLookup w_lookup = [&u, &map](IndexPoint q) { return u.at(from_moving_frame(map, q)); };

    double worst = 0.0;
    std::size_t evaluated = 0;
    for (std::int64_t n = u.n_range().lo; n <= u.n_range().hi; ++n) {
        for (std::int64_t m = u.m_range().lo; m <= u.m_range().hi; ++m) {
            const IndexPoint pt{m, n};
            if (!fixed.fits(u, pt)) continue;
            const double r_fixed = residual_with(fixed, u_lookup, pt, index_to_coords(map.lattice(), pt));
            const IndexPoint q = to_moving_frame(map, pt);
            const double r_frame = residual_with(frame, w_lookup, q, frame_coords(map, pt));
            worst = std::max(worst, std::abs(r_fixed - r_frame));
            ++evaluated;
        }
    }
    if (evaluated == 0) throw DomainError("field window too small for the FKPP stencil");
    return worst;
}

}  // namespace latsym
