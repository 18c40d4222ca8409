#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latsym/equations.hpp"
#include "latsym/field.hpp"
#include "latsym/lattice.hpp"

namespace latsym {

/// Integer linear part of an index map: (m, n) -> (a m + b n, c m + d n).
struct IndexMatrix {
    std::int64_t a = 1, b = 0;
    std::int64_t c = 0, d = 1;

    [[nodiscard]] constexpr std::int64_t determinant() const noexcept { return a * d - b * c; }
};

/// Action of a transformation on physical coordinates, given the lattice.
using CoordAction = std::function<Coords(Coords, const LatticeSpec&)>;
using ValueMap = std::function<double(double)>;

/// Discrete lattice transformation acting on indices and coordinates.
///
/// The index map is what field pullbacks use; the coordinate action is the
/// geometric statement that lattice_invariance checks against it.
class TransformSpec {
public:
    TransformSpec(std::string name, IndexMatrix matrix, IndexPoint shift, CoordAction action,
                  ValueMap value_map = {});

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const IndexMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const IndexPoint& shift() const noexcept { return shift_; }

    [[nodiscard]] IndexPoint apply(IndexPoint pt) const noexcept;
    /// True iff the index map is a bijection of Z^2 (determinant +-1).
    [[nodiscard]] bool invertible() const noexcept;
    /// Throws DomainError when the map is not invertible.
    [[nodiscard]] IndexPoint inverse(IndexPoint pt) const;
    [[nodiscard]] Coords act(Coords c, const LatticeSpec& lattice) const { return action_(c, lattice); }
    [[nodiscard]] double map_value(double u) const { return value_map_ ? value_map_(u) : u; }

private:
    std::string name_;
    IndexMatrix matrix_;
    IndexPoint shift_;
    CoordAction action_;
    ValueMap value_map_;
};

namespace transforms {

/// (x, t) -> (x + dx, t)
[[nodiscard]] TransformSpec shift_x();
/// (x, t) -> (x, t + dt)
[[nodiscard]] TransformSpec shift_t();
/// (x, t) -> (-x, t)
[[nodiscard]] TransformSpec invert_x();
/// (x, t) -> (x, -t)
[[nodiscard]] TransformSpec invert_t();
/// (x, t) -> (-p t, x / p), i.e. (m, n) -> (-n, m)
[[nodiscard]] TransformSpec rotate();
/// (x, t) -> (q1 x, q2 t)
[[nodiscard]] TransformSpec scale(std::int64_t q1, std::int64_t q2);

/// Tx, Tt, Bx, Bt, R.
[[nodiscard]] std::vector<TransformSpec> catalog();
/// Accepts Tx, Tt, Bx, Bt, R and Sq (with q1, q2).
[[nodiscard]] TransformSpec by_name(const std::string& name, std::int64_t q1 = 2, std::int64_t q2 = 2);

}  // namespace transforms

enum class InvarianceMode { onto, into };

/// Whether the transformation maps lattice sites to lattice sites (into) and
/// additionally is a bijection of the lattice (onto). Checked on a sample
/// window of sites against the coordinate action.
[[nodiscard]] bool lattice_invariance(const TransformSpec& tr, const LatticeSpec& spec, InvarianceMode mode);

inline constexpr double kSymmetryThreshold = 1e-10;

struct SymmetryWitness {
    Field2D field;          ///< random field of the offending trial
    IndexPoint point;       ///< original site; the transformed site is tr.apply(point)
    double difference = 0;  ///< residual(transformed) - residual(original)
    std::size_t trial = 0;
};

struct InvarianceVerdict {
    bool symmetric = true;
    double max_difference = 0.0;
    std::optional<SymmetryWitness> witness;  ///< set iff broken
};

/// Compares the residual of the pulled-back field u'(T p) = u(p) at T p with
/// the residual of u at p, over random uniform [0,1) fields. Deterministic in
/// seed; the witness is the largest difference (earliest on ties).
/// Throws DomainError for maps that are not bijections of the lattice.
[[nodiscard]] InvarianceVerdict equation_invariance(const TransformSpec& tr, const StencilEquation& eq,
                                                    std::size_t trials, std::uint64_t seed,
                                                    double threshold = kSymmetryThreshold);

/// Evolutionary generator Q as a function of coordinates and a 1-D profile.
using GeneratorFn = std::function<double(double x, double t, const Profile1D& u, std::int64_t at)>;

/// Evolutionary generator X = Q d/du. `reach` bounds the index offsets Q reads.
class GeneratorSpec {
public:
    GeneratorSpec(std::string name, GeneratorFn q, std::int64_t reach_lo = 0, std::int64_t reach_hi = 0,
                  std::optional<double> scale = std::nullopt);

    /// Q = psi * u.
    static GeneratorSpec scaling(double psi);
    static GeneratorSpec zero();
    /// Q = alpha A + Delta A for a difference operator Delta.
    static GeneratorSpec ansatz(double alpha, const DiffOp& delta);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::int64_t reach_lo() const noexcept { return reach_lo_; }
    [[nodiscard]] std::int64_t reach_hi() const noexcept { return reach_hi_; }
    [[nodiscard]] const std::optional<double>& scale() const noexcept { return scale_; }

    [[nodiscard]] double operator()(double x, double t, const Profile1D& u, std::int64_t at) const {
        return q_(x, t, u, at);
    }

    /// Q over every index whose reach fits, with x = i * dx at time t.
    [[nodiscard]] Profile1D apply(const Profile1D& u, double dx, double t = 0.0) const;

private:
    std::string name_;
    GeneratorFn q_;
    std::int64_t reach_lo_;
    std::int64_t reach_hi_;
    std::optional<double> scale_;
};

inline constexpr double kOverflowGuard = 1e6;

struct CommutatorCheck {
    double lambda = 0.0;
    double defect = 0.0;       ///< at lambda
    double defect_half = 0.0;  ///< at lambda / 2
    double ratio = 0.0;        ///< defect / defect_half (NaN when both vanish)
    bool symmetric = false;
};

/// max |flow(evolve(u0)) - evolve(flow(u0))| on the common window, where
/// flow(u) = u + lambda Q(u) and evolve applies `steps` explicit steps.
/// Throws SolverError if the evolution exceeds kOverflowGuard.
[[nodiscard]] double commutator_defect(const GeneratorSpec& gen, const StencilEquation& eq, double lambda,
                                       const Profile1D& u0, std::int64_t steps);

/// Defects at lambda and lambda/2. Symmetric iff the defect is below
/// kSymmetryThreshold, or it scales like lambda^2 (ratio in [3.5, 4.5]).
[[nodiscard]] CommutatorCheck generator_commutator_check(const GeneratorSpec& gen, const StencilEquation& eq,
                                                         double lambda, const Profile1D& u0,
                                                         std::int64_t steps);

/// u_{m-k,n} - u_{m,n+1}; vanishes everywhere on travelling solutions.
[[nodiscard]] double travelling_wave_Q(const Field2D& u, std::int64_t k, IndexPoint pt);

/// W = D_Q Phi[A] - Phi[Q(A)] at mu, with D_Q the closed-form directional
/// derivative along Q(A). Q is evaluated at zeta = mu * dx.
/// Throws WindowError when Q(A) does not cover the stencil at mu.
[[nodiscard]] double asymmetry_residual(const GeneratorSpec& gen, const ReducedEquation& eq, const Profile1D& a,
                                        std::int64_t mu);

}  // namespace latsym
