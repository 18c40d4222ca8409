#include "latsym/front.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "latsym/equations.hpp"
#include "latsym/error.hpp"

namespace latsym {

bool Ansatz::admissible() const noexcept {
    const double ad = alpha * dx;
    return std::isfinite(ad) && std::isfinite(A0) && ad > 0.0 && ad < 1.0;
}

Profile1D ansatz_profile(const Ansatz& a, IndexRange window) {
    if (!a.admissible()) throw DomainError("ansatz needs 0 < alpha dx < 1");
    if (window.size() < 1) throw DomainError("ansatz window is empty");
    const double r = a.ratio();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(window.size()));
    double value = a.A0 * std::pow(r, static_cast<double>(window.lo));
    for (std::int64_t mu = window.lo; mu <= window.hi; ++mu) {
        values.push_back(value);
        value *= r;
    }
    return Profile1D(window, std::move(values), FrontMeta{a.alpha, 0.0, 1});
}

double ansatz_residual_bracket(const Ansatz& a, double v, std::int64_t mu) {
    return a.alpha * a.alpha - (v + a.dx) * a.alpha + 1.0 -
           std::pow(a.ratio(), static_cast<double>(mu + 1)) * a.A0;
}

BracketComparison reduced_residual_vs_bracket(const Ansatz& a, double v, std::int64_t mu) {
    const Profile1D profile = ansatz_profile(a, IndexRange{mu - 1, mu + 1});
    const ReducedEquation eq = make_fkpp_reduced(a.dx, v, 1);

    BracketComparison out;
    out.direct = eq.residual(profile, mu);
    out.bracket = ansatz_residual_bracket(a, v, mu);
    if (std::abs(out.bracket) < 1e-14) {
        throw DomainError("ansatz bracket vanishes; the residual ratio is undefined");
    }
    const double scaled = a.dx * a.dx * out.bracket;
    out.prefactor = out.direct / scaled;
    out.ratio = out.direct / (scaled * profile.at(mu));
    return out;
}

DispersionRoots dispersion_roots(double v, double dx) {
    if (!(std::isfinite(dx) && dx > 0.0)) throw DomainError("dispersion relation needs dx > 0");
    if (!std::isfinite(v)) throw DomainError("dispersion relation needs a finite v");

    DispersionRoots out;
    out.v = v;
    out.dx = dx;
    const double s = v + dx;
    constexpr double kMarginalSlack = 16.0 * std::numeric_limits<double>::epsilon();
    if (std::abs(s - 2.0) <= kMarginalSlack || std::abs(s + 2.0) <= kMarginalSlack) {
        const double root = s > 0.0 ? 1.0 : -1.0;
        out.roots = {std::complex<double>(root, 0.0), std::complex<double>(root, 0.0)};
        out.real = true;
        return out;
    }
    // (s - 2)(s + 2) avoids cancellation in s^2 - 4 near the threshold.
    const double disc = (s - 2.0) * (s + 2.0);
    if (disc >= 0.0) {
        const double q = 0.5 * (s + std::copysign(std::sqrt(disc), s));
        const double other = 1.0 / q;  // product of roots is 1
        out.roots = {std::complex<double>(std::min(q, other), 0.0),
                     std::complex<double>(std::max(q, other), 0.0)};
        out.real = true;
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        out.roots = {std::complex<double>(0.5 * s, -im), std::complex<double>(0.5 * s, im)};
        out.real = false;
    }
    return out;
}

VelocitySelection selected_velocity(double dx) {
    if (!(std::isfinite(dx) && dx > 0.0 && dx < 2.0)) {
        throw DomainError("velocity selection needs 0 < dx < 2, got " + std::to_string(dx));
    }
    return {2.0 - dx, 1.0};
}

double printed_W(const Ansatz& a, std::int64_t mu) {
    const double next = std::pow(a.ratio(), static_cast<double>(mu + 1)) * a.A0;
    return -a.alpha * a.dx * a.dx * a.dx * a.ratio() * next * next;
}

std::string to_string(FrontStatus status) {
    switch (status) {
        case FrontStatus::front: return "front";
        case FrontStatus::not_converged: return "not_converged";
        case FrontStatus::singular_jacobian: return "singular_jacobian";
        case FrontStatus::non_monotone: return "non_monotone";
        case FrontStatus::out_of_bounds: return "out_of_bounds";
    }
    return "unknown";
}

namespace {

struct BvpSystem {
    double dx;
    std::int64_t k;
    double v;
    double closure_ratio;
    std::int64_t M;
    ReducedEquation eq;
    std::optional<double> right_value;

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(2 * M + 1); }
    [[nodiscard]] std::size_t pinned() const { return static_cast<std::size_t>(k); }

    [[nodiscard]] Profile1D as_profile(const Eigen::VectorXd& a) const {
        return Profile1D(IndexRange{-M, M}, std::vector<double>(a.data(), a.data() + a.size()));
    }

    void residual(const Eigen::VectorXd& a, Eigen::VectorXd& out) const {
        const std::size_t n = size();
        const Profile1D profile = as_profile(a);
        out.resize(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < pinned(); ++i) out[static_cast<Eigen::Index>(i)] = a[static_cast<Eigen::Index>(i)] - 1.0;
        for (std::size_t i = pinned(); i + 1 < n; ++i) {
            out[static_cast<Eigen::Index>(i)] = eq.residual(profile, static_cast<std::int64_t>(i) - M);
        }
        const auto last = static_cast<Eigen::Index>(n - 1);
        out[last] = right_value ? a[last] - *right_value : a[last] - closure_ratio * a[last - 1];
    }

    [[nodiscard]] double interior_norm(const Eigen::VectorXd& a) const {
        const Profile1D profile = as_profile(a);
        double worst = 0.0;
        for (std::size_t i = pinned(); i + 1 < size(); ++i) {
            worst = std::max(worst, std::abs(eq.residual(profile, static_cast<std::int64_t>(i) - M)));
        }
        return worst;
    }

    void jacobian(const Eigen::VectorXd& a, Eigen::SparseMatrix<double>& jac) const {
        const std::size_t n = size();
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(4 * n);
        for (std::size_t i = 0; i < pinned(); ++i) {
            triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
        }
        // d residual_i / d A_j from the polynomial coefficients.
        for (std::size_t i = pinned(); i + 1 < n; ++i) {
            const auto row = static_cast<int>(i);
            for (const LinearTerm& t : eq.linear_terms()) {
                triplets.emplace_back(row, row + static_cast<int>(t.offset), t.coeff);
            }
            for (const QuadraticTerm& q : eq.quadratic_terms()) {
                const int c1 = row + static_cast<int>(q.first);
                const int c2 = row + static_cast<int>(q.second);
                triplets.emplace_back(row, c1, q.coeff * a[c2]);
                triplets.emplace_back(row, c2, q.coeff * a[c1]);
            }
        }
        const int last = static_cast<int>(n - 1);
        triplets.emplace_back(last, last, 1.0);
        if (!right_value) triplets.emplace_back(last, last - 1, -closure_ratio);
        jac.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        jac.setFromTriplets(triplets.begin(), triplets.end());  // duplicates are summed
    }
};

double max_norm(const Eigen::VectorXd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

void classify(FrontSolution& sol) {
    const auto values = sol.profile.values();
    const std::int64_t lo = sol.profile.range().lo;
    int changes = 0;
    int last_sign = 0;
    bool monotone = true;
    bool bounded = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < -kFrontBoundSlack || values[i] > 1.0 + kFrontBoundSlack) bounded = false;
        if (i + 1 == values.size()) break;
        const double diff = values[i + 1] - values[i];
        if (diff > 0.0) monotone = false;
        if (lo + static_cast<std::int64_t>(i) >= 0 && diff != 0.0) {
            const int sign = diff > 0.0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++changes;
            last_sign = sign;
        }
    }
    sol.tail_sign_changes = changes;
    if (!sol.converged) return;
    if (!bounded) {
        sol.status = FrontStatus::out_of_bounds;
        sol.diagnostic = "profile leaves [0, 1]";
        if (changes > 0) sol.diagnostic += "; oscillatory tail with " + std::to_string(changes) + " sign changes";
    } else if (!monotone) {
        sol.status = FrontStatus::non_monotone;
        sol.diagnostic = "profile is not monotone; " + std::to_string(changes) + " sign changes in the tail";
    } else {
        sol.status = FrontStatus::front;
    }
}

}  // namespace

FrontSolution solve_front_bvp(double dx, std::int64_t k, double v, std::int64_t M, const BvpOptions& opts) {
    if (!(std::isfinite(dx) && dx > 0.0 && dx < 2.0)) throw DomainError("front BVP needs 0 < dx < 2");
    if (k < 1) throw DomainError("front BVP needs k >= 1");
    if (M < 50) throw DomainError("front BVP needs M >= 50");
    if (!std::isfinite(v)) throw DomainError("front BVP needs a finite v");

    double alpha = selected_velocity(dx).alpha;
    if (opts.closure_alpha) {
        alpha = *opts.closure_alpha;
    } else if (const DispersionRoots roots = dispersion_roots(v, dx); roots.real) {
        alpha = roots.roots[0].real();
    }
    if (!(alpha * dx > 0.0 && alpha * dx < 1.0)) throw DomainError("closure decay rate needs 0 < alpha dx < 1");

    const BvpSystem sys{dx, k, v, 1.0 - alpha * dx, M, make_fkpp_reduced(dx, v, k), opts.right_value};
    const auto n = static_cast<Eigen::Index>(sys.size());

    Eigen::VectorXd a(n);
    if (opts.initial_guess) {
        if (opts.initial_guess->range() != IndexRange{-M, M}) throw DomainError("initial guess must cover [-M, M]");
        for (Eigen::Index i = 0; i < n; ++i) a[i] = opts.initial_guess->values()[static_cast<std::size_t>(i)];
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double zeta = static_cast<double>(i - M) * dx;
            a[i] = 1.0 / (1.0 + std::exp(opts.guess_slope * zeta));
        }
    }
    for (std::size_t i = 0; i < sys.pinned(); ++i) a[static_cast<Eigen::Index>(i)] = 1.0;

    Eigen::VectorXd r;
    Eigen::VectorXd trial_r;
    Eigen::SparseMatrix<double> jac;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;

    FrontSolution sol(sys.as_profile(a));
    sol.v = v;
    sol.k = k;
    sol.dx = dx;
    sol.closure_alpha = alpha;

    sys.residual(a, r);
    double norm = max_norm(r);
    int iter = 0;
    for (; iter < opts.max_iter && norm > opts.tolerance; ++iter) {
        sys.jacobian(a, jac);
        lu.compute(jac);
        if (lu.info() != Eigen::Success) {
            sol.status = FrontStatus::singular_jacobian;
            sol.diagnostic = "Jacobian factorization failed at iteration " + std::to_string(iter);
            break;
        }
        const Eigen::VectorXd step = lu.solve(-r);
        if (lu.info() != Eigen::Success || !step.allFinite()) {
            sol.status = FrontStatus::singular_jacobian;
            sol.diagnostic = "Newton step is not finite at iteration " + std::to_string(iter);
            break;
        }
        double damping = 1.0;
        bool improved = false;
        Eigen::VectorXd candidate;
        for (int h = 0; h <= opts.max_halvings; ++h) {
            candidate = a + damping * step;
            sys.residual(candidate, trial_r);
            if (max_norm(trial_r) < norm) {
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if (!improved) {
            sol.diagnostic = "line search stalled at residual " + std::to_string(norm);
            break;
        }
        a = candidate;
        r = trial_r;
        norm = max_norm(r);
    }

    sol.profile = sys.as_profile(a).with_meta(FrontMeta{alpha, v, k});
    sol.iterations = iter;
    sol.residual_norm = sys.interior_norm(a);
    if (sol.status != FrontStatus::singular_jacobian) {
        sol.converged = norm <= kFrontResidualTolerance;
        if (!sol.converged) {
            sol.status = FrontStatus::not_converged;
            if (sol.diagnostic.empty()) sol.diagnostic = "no convergence after " + std::to_string(iter) + " iterations";
        }
    }
    classify(sol);
    return sol;
}

}  // namespace latsym
