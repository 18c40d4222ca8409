#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "latsym/field.hpp"

namespace latsym {

/// Geometric tail A_{mu+1} = (1 - alpha dx) A_mu.
struct Ansatz {
    double alpha = 1.0;
    double A0 = 1.0;
    double dx = 0.1;

    [[nodiscard]] double ratio() const noexcept { return 1.0 - alpha * dx; }
    /// 0 < alpha dx < 1.
    [[nodiscard]] bool admissible() const noexcept;
};

/// A_mu = (1 - alpha dx)^mu A0 over the window. Values after the first are
/// built by repeated multiplication, so the recursion holds exactly.
/// Throws DomainError for inadmissible ansatz parameters.
[[nodiscard]] Profile1D ansatz_profile(const Ansatz& a, IndexRange window);

/// alpha^2 - (v + dx) alpha + 1 - (1 - alpha dx)^(mu+1) A0.
[[nodiscard]] double ansatz_residual_bracket(const Ansatz& a, double v, std::int64_t mu);

struct BracketComparison {
    double direct = 0.0;     ///< reduced residual (k = 1) on the ansatz profile at mu
    double bracket = 0.0;    ///< ansatz_residual_bracket
    double prefactor = 0.0;  ///< direct / (dx^2 bracket); equals A_{mu-1}
    double ratio = 0.0;      ///< direct / (dx^2 bracket A_mu); equals 1 / (1 - alpha dx)
};

/// Throws DomainError when |bracket| < 1e-14.
[[nodiscard]] BracketComparison reduced_residual_vs_bracket(const Ansatz& a, double v, std::int64_t mu);

struct DispersionRoots {
    double v = 0.0;
    double dx = 0.0;
    std::array<std::complex<double>, 2> roots{};  ///< ascending real part, then imaginary
    bool real = false;
};

/// Roots of alpha^2 - (v + dx) alpha + 1 = 0, real iff v + dx >= 2.
[[nodiscard]] DispersionRoots dispersion_roots(double v, double dx);

struct VelocitySelection {
    double v = 0.0;
    double alpha = 0.0;
};

/// Marginal (double-root) speed v = 2 - dx with alpha = 1.
/// Throws DomainError unless 0 < dx < 2.
[[nodiscard]] VelocitySelection selected_velocity(double dx);

/// -alpha dx^3 (1 - alpha dx) A_{mu+1}^2 with A_{mu+1} from the ansatz.
[[nodiscard]] double printed_W(const Ansatz& a, std::int64_t mu);

struct BvpOptions {
    int max_iter = 200;
    int max_halvings = 20;
    double tolerance = 1e-12;  ///< Newton stops below this max-norm
    double guess_slope = 1.0;  ///< initial guess 1 / (1 + exp(s mu dx))
    std::optional<Profile1D> initial_guess;
    std::optional<double> closure_alpha;
    /// Dirichlet value for A_M in place of the geometric closure.
    std::optional<double> right_value;
};

enum class FrontStatus { front, not_converged, singular_jacobian, non_monotone, out_of_bounds };

[[nodiscard]] std::string to_string(FrontStatus status);

struct FrontSolution {
    explicit FrontSolution(Profile1D p) : profile(std::move(p)) {}

    Profile1D profile;
    double v = 0.0;
    std::int64_t k = 1;
    double dx = 0.0;
    bool converged = false;
    double residual_norm = 0.0;  ///< max |reduced residual| over interior sites
    int iterations = 0;
    FrontStatus status = FrontStatus::not_converged;
    double closure_alpha = 0.0;
    int tail_sign_changes = 0;  ///< sign changes of A_{mu+1} - A_mu for mu >= 0
    std::string diagnostic;

    [[nodiscard]] bool is_front() const noexcept { return status == FrontStatus::front; }
};

inline constexpr double kFrontResidualTolerance = 1e-10;
inline constexpr double kFrontBoundSlack = 1e-8;

/// Damped Newton solve of the reduced FKPP equation on mu in [-M, M].
///
/// A_{-M..-M+k-1} are pinned to 1; the right edge closes with
/// A_M = (1 - alpha dx) A_{M-1}. The closure alpha is the smaller real
/// dispersion root when v + dx >= 2, else the selected alpha = 1.
/// Non-convergence and singular Jacobians are reported through `status`.
[[nodiscard]] FrontSolution solve_front_bvp(double dx, std::int64_t k, double v, std::int64_t M,
                                            const BvpOptions& opts = {});

}  // namespace latsym
