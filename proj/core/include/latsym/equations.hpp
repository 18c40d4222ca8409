#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "latsym/field.hpp"
#include "latsym/lattice.hpp"

namespace latsym {

/// Stencil offset (dm, dn) relative to the evaluation site.
struct Offset {
    std::int64_t dm = 0;
    std::int64_t dn = 0;

    friend constexpr bool operator==(const Offset&, const Offset&) = default;
};

/// Residual of a difference equation given site coordinates and the field
/// values at the declared offsets (in declaration order).
using ResidualFn = std::function<double(double x, double t, std::span<const double> values)>;

/// Closed-form solve for the explicit target; the target's own slot in
/// `values` is unspecified and must be ignored.
using ExplicitSolveFn = std::function<double(std::span<const double> values)>;

/// A difference equation F_{m,n}[u] = 0 on a finite stencil.
///
/// Residuals are stored as left side minus right side of the printed form,
/// so a satisfied equation has residual zero.
class StencilEquation {
public:
    StencilEquation(std::string name, std::vector<Offset> offsets, ResidualFn residual,
                    std::map<std::string, double> params,
                    std::optional<Offset> explicit_target = std::nullopt,
                    ExplicitSolveFn explicit_solve = {});

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const Offset> offsets() const noexcept { return offsets_; }
    [[nodiscard]] const std::map<std::string, double>& params() const noexcept { return params_; }
    /// Throws DomainError for unknown names.
    [[nodiscard]] double param(const std::string& key) const;
    [[nodiscard]] const std::optional<Offset>& explicit_target() const noexcept { return target_; }

    [[nodiscard]] double residual(double x, double t, std::span<const double> values) const {
        return residual_(x, t, values);
    }
    /// Throws DomainError when the equation has no explicit target.
    [[nodiscard]] double solve_target(std::span<const double> values) const;

    /// Bounding box of the offsets.
    [[nodiscard]] std::int64_t min_dm() const noexcept { return min_dm_; }
    [[nodiscard]] std::int64_t max_dm() const noexcept { return max_dm_; }
    [[nodiscard]] std::int64_t min_dn() const noexcept { return min_dn_; }
    [[nodiscard]] std::int64_t max_dn() const noexcept { return max_dn_; }

    /// True iff every offset around pt lies in the field window.
    [[nodiscard]] bool fits(const Field2D& u, IndexPoint pt) const noexcept;

private:
    std::string name_;
    std::vector<Offset> offsets_;
    ResidualFn residual_;
    std::map<std::string, double> params_;
    std::optional<Offset> target_;
    ExplicitSolveFn solve_;
    std::int64_t min_dm_ = 0, max_dm_ = 0, min_dn_ = 0, max_dn_ = 0;
};

/// Linear term coeff * A_{mu+offset} of a reduced equation.
struct LinearTerm {
    std::int64_t offset = 0;
    double coeff = 0.0;
};

/// Quadratic term coeff * A_{mu+first} * A_{mu+second}.
struct QuadraticTerm {
    std::int64_t first = 0;
    std::int64_t second = 0;
    double coeff = 0.0;
};

using ProfileResidualFn = std::function<double(const Profile1D& a, std::int64_t mu)>;

/// Single-index difference equation for a travelling profile A_mu.
///
/// The residual is a polynomial of degree <= 2 in the profile values, which
/// gives closed-form directional derivatives. An optional printed-form
/// evaluator is used for residual() so that rounding follows the displayed
/// grouping; it must agree with the polynomial.
class ReducedEquation {
public:
    ReducedEquation(std::string name, std::vector<LinearTerm> linear,
                    std::vector<QuadraticTerm> quadratic, std::map<std::string, double> params,
                    ProfileResidualFn printed = {});

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const LinearTerm> linear_terms() const noexcept { return linear_; }
    [[nodiscard]] std::span<const QuadraticTerm> quadratic_terms() const noexcept { return quadratic_; }
    [[nodiscard]] const std::map<std::string, double>& params() const noexcept { return params_; }
    [[nodiscard]] bool is_linear() const noexcept { return quadratic_.empty(); }

    /// Sorted distinct offsets touched by the residual.
    [[nodiscard]] std::span<const std::int64_t> offsets() const noexcept { return offsets_; }
    [[nodiscard]] std::int64_t min_offset() const noexcept { return offsets_.front(); }
    [[nodiscard]] std::int64_t max_offset() const noexcept { return offsets_.back(); }
    [[nodiscard]] bool fits(const Profile1D& a, std::int64_t mu) const noexcept;

    /// Throws WindowError when the stencil leaves the profile window.
    [[nodiscard]] double residual(const Profile1D& a, std::int64_t mu) const;
    /// Residual evaluated term by term from the polynomial coefficients.
    [[nodiscard]] double polynomial_residual(const Profile1D& a, std::int64_t mu) const;
    /// Gateaux derivative of the residual at `a` along `direction`.
    [[nodiscard]] double directional_derivative(const Profile1D& a, const Profile1D& direction,
                                                std::int64_t mu) const;

private:
    std::string name_;
    std::vector<LinearTerm> linear_;
    std::vector<QuadraticTerm> quadratic_;
    std::map<std::string, double> params_;
    ProfileResidualFn printed_;
    std::vector<std::int64_t> offsets_;
};

enum class EquationKind { heat, fkpp, fkpp_moving_frame, fkpp_reduced };

/// Moving-frame equation display: divided by dt, or multiplied through by
/// dx^2 with dt = (k/v) dx substituted.
enum class MovingFrameForm { quotient, scaled };

struct EquationParams {
    double dx = 0.1;
    std::optional<double> dt;
    std::int64_t k = 1;
    std::optional<double> v;
    MovingFrameForm form = MovingFrameForm::quotient;
};

/// Relative tolerance for the dt = (k/v) dx constraint.
inline constexpr double kFrameConstraintTolerance = 1e-12;

/// (u_{m,n+1} - u_{m,n})/dt - (u_{m+1,n} - 2u_{m,n} + u_{m-1,n})/dx^2.
[[nodiscard]] StencilEquation make_heat(double dx, double dt);
/// Heat residual minus u_{m,n}(1 - u_{m,n}).
[[nodiscard]] StencilEquation make_fkpp(double dx, double dt);
/// FKPP rewritten for w_{mu,nu} = u_{mu+k nu, nu}. Either v or dt may be
/// omitted and is then derived; when both are given dt = (k/v) dx must hold.
[[nodiscard]] StencilEquation make_fkpp_moving_frame(const EquationParams& params);
/// [A_{mu+1} - 2A_mu + A_{mu-1}] + (v/k) dx [A_mu - A_{mu-k}] + dx^2 A_mu (1 - A_mu).
[[nodiscard]] ReducedEquation make_fkpp_reduced(double dx, double v, std::int64_t k);

[[nodiscard]] std::variant<StencilEquation, ReducedEquation> make_equation(EquationKind kind,
                                                                           const EquationParams& params);

[[nodiscard]] EquationKind parse_equation_kind(const std::string& name);
[[nodiscard]] std::string to_string(EquationKind kind);

/// Lookup of field values by lattice index.
using FieldLookup = std::function<double(IndexPoint)>;

/// Residual at pt with values taken from `lookup` and explicit coordinates.
[[nodiscard]] double residual_with(const StencilEquation& eq, const FieldLookup& lookup, IndexPoint pt,
                                   Coords coords);

/// Residual at pt on the lattice (dx, dt from the equation, origin 0).
/// Throws WindowError if the stencil does not fit.
[[nodiscard]] double residual_at(const StencilEquation& eq, const Field2D& u, IndexPoint pt);
[[nodiscard]] double residual_at(const StencilEquation& eq, const Field2D& u, IndexPoint pt,
                                 const LatticeSpec& lattice);

/// Value at pt + explicit_target given the row holding the dn = 0 offsets.
/// Throws DomainError without an explicit target in the next time row.
[[nodiscard]] double explicit_step(const StencilEquation& eq, const Profile1D& row, std::int64_t m);

/// Applies explicit_step at every m where the stencil fits in `row`, writing
/// next[m - lo + target.dm]. Entries not reached are left untouched.
void explicit_step_into(const StencilEquation& eq, std::span<const double> row,
                        std::span<double> next);

/// Maximum |FKPP residual at (m,n) - moving-frame residual at (m - k n, n)|
/// over every site where the FKPP stencil fits, with w_{mu,nu} = u_{mu+k nu,nu}.
/// Throws DomainError when no site qualifies.
[[nodiscard]] double moving_frame_equivalence(const Field2D& u, std::int64_t k, double dx, double dt);

}  // namespace latsym
