#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "latsym/equations.hpp"
#include "latsym/error.hpp"
#include "latsym/random.hpp"
#include "oracles.hpp"
#include "property.hpp"

namespace latsym {
namespace {

constexpr IndexRange kM{-6, 6};
constexpr IndexRange kN{0, 4};

StencilEquation moving_frame(double dx, double dt, std::int64_t k,
                             MovingFrameForm form = MovingFrameForm::quotient) {
    EquationParams p;
    p.dx = dx;
    p.dt = dt;
    p.k = k;
    p.form = form;
    return make_fkpp_moving_frame(p);
}

template <typename Fn>
void for_interior(const StencilEquation& eq, const Field2D& u, Fn&& fn) {
    for (std::int64_t n = u.n_range().lo; n <= u.n_range().hi; ++n) {
        for (std::int64_t m = u.m_range().lo; m <= u.m_range().hi; ++m) {
            if (eq.fits(u, {m, n})) fn(IndexPoint{m, n});
        }
    }
}

TEST(EquationsTest, StationaryStatesOfFkpp) {
    const StencilEquation eq = make_fkpp(0.1, 0.004);
    for (double c : {0.0, 1.0}) {
        const Field2D u = Field2D::constant(kM, kN, c);
        for_interior(eq, u, [&](IndexPoint p) { EXPECT_EQ(residual_at(eq, u, p), 0.0); });
    }
}

TEST(EquationsTest, HeatAnnihilatesLinearProfiles) {
    const double dx = 0.1;
    const StencilEquation eq = make_heat(dx, 0.004);
    const Field2D u = Field2D::generate(kM, kN, [dx](IndexPoint p) { return p.m * dx; });
    for_interior(eq, u, [&](IndexPoint p) { EXPECT_NEAR(residual_at(eq, u, p), 0.0, 1e-12); });
}

TEST(EquationsTest, FkppResidualOnHalfField) {
    const StencilEquation eq = make_fkpp(1.0, 1.0);
    const Field2D u = Field2D::constant(kM, kN, 0.5);
    for_interior(eq, u, [&](IndexPoint p) { EXPECT_EQ(residual_at(eq, u, p), -0.25); });
}

TEST(EquationsTest, HeatMatchesHandExpansion) {
    for (const auto& [dx, dt] : {std::pair{1.0, 1.0}, std::pair{0.1, 0.004}, std::pair{0.37, 0.02}}) {
        const StencilEquation eq = make_heat(dx, dt);
        const Field2D u = random_field(kM, kN, 99);
        for_interior(eq, u, [&](IndexPoint p) {
            const double expected = oracle::heat_residual(u.at({p.m, p.n + 1}), u.at({p.m - 1, p.n}), u.at(p),
                                                          u.at({p.m + 1, p.n}), dx, dt);
            EXPECT_NEAR(residual_at(eq, u, p), expected, 1e-15 * (1.0 + std::abs(expected)));
        });
    }
}

TEST(EquationsTest, ExplicitUpdateSatisfiesTheEquation) {
    const StencilEquation eq = make_fkpp(0.1, 0.004);
    const Field2D u = random_field(kM, kN, 5);
    const IndexPoint pt{0, 1};
    const double next = explicit_step(eq, row_of(u, 1), 0);
    const Field2D solved = u.with_value({0, 2}, next);
    EXPECT_NEAR(residual_at(eq, solved, pt) * 0.004, 0.0, 1e-14);
}

TEST(EquationsTest, ExplicitStepExamples) {
    const StencilEquation fkpp = make_fkpp(0.1, 0.004);
    EXPECT_EQ(explicit_step(fkpp, Profile1D({0, 2}, {0.0, 0.0, 0.0}), 1), 0.0);
    EXPECT_EQ(explicit_step(fkpp, Profile1D({0, 2}, {1.0, 1.0, 1.0}), 1), 1.0);
    const StencilEquation heat = make_heat(1.0, 0.1);
    EXPECT_NEAR(explicit_step(heat, Profile1D({-1, 1}, {0.0, 1.0, 0.0}), 0), 0.8, 1e-15);
}

TEST(EquationsTest, ExplicitStepNeedsATarget) {
    const StencilEquation eq("no-target", {{0, 0}}, [](double, double, std::span<const double> v) { return v[0]; },
                             {});
    EXPECT_THROW((void)explicit_step(eq, Profile1D({0, 0}, {1.0}), 0), DomainError);
}

TEST(EquationsTest, ExplicitStepIntoMatchesPointwise) {
    const StencilEquation eq = make_fkpp(0.2, 0.01);
    const Profile1D row = random_profile({0, 19}, 3);
    std::vector<double> next(20, -7.0);
    explicit_step_into(eq, row.values(), next);
    EXPECT_EQ(next.front(), -7.0);
    EXPECT_EQ(next.back(), -7.0);
    for (std::int64_t m = 1; m < 19; ++m) EXPECT_EQ(next[static_cast<std::size_t>(m)], explicit_step(eq, row, m));
}

TEST(EquationsTest, ResidualOutsideWindowThrows) {
    const StencilEquation eq = make_fkpp(0.1, 0.004);
    const Field2D u = Field2D::constant(kM, kN, 0.3);
    EXPECT_THROW((void)residual_at(eq, u, {kM.hi, 0}), WindowError);
    EXPECT_THROW((void)residual_at(eq, u, {0, kN.hi}), WindowError);
}

TEST(EquationsTest, ParameterValidation) {
    EXPECT_THROW((void)make_fkpp(-1.0, 0.1), DomainError);
    EXPECT_THROW((void)make_heat(0.1, 0.0), DomainError);
    EquationParams p;
    p.dx = 0.1;
    p.k = 1;
    p.dt = 0.05;
    p.v = 1.9;  // (k/v) dx = 0.0526...
    EXPECT_THROW((void)make_fkpp_moving_frame(p), DomainError);
    p.v = 2.0;
    EXPECT_NO_THROW((void)make_fkpp_moving_frame(p));
    p.k = 0;
    EXPECT_THROW((void)make_fkpp_moving_frame(p), DomainError);
    EquationParams missing;
    EXPECT_THROW((void)make_equation(EquationKind::fkpp, missing), DomainError);
    EXPECT_THROW((void)parse_equation_kind("burgers"), DomainError);
}

TEST(EquationsTest, MakeEquationDispatch) {
    EquationParams p;
    p.dx = 0.1;
    p.dt = 0.05;
    p.k = 1;
    EXPECT_TRUE(std::holds_alternative<StencilEquation>(make_equation(EquationKind::heat, p)));
    EXPECT_TRUE(std::holds_alternative<StencilEquation>(make_equation(EquationKind::fkpp_moving_frame, p)));
    const auto reduced = make_equation(EquationKind::fkpp_reduced, p);
    ASSERT_TRUE(std::holds_alternative<ReducedEquation>(reduced));
    EXPECT_DOUBLE_EQ(std::get<ReducedEquation>(reduced).params().at("v"), 2.0);
    for (auto kind : {EquationKind::heat, EquationKind::fkpp, EquationKind::fkpp_moving_frame,
                      EquationKind::fkpp_reduced}) {
        EXPECT_EQ(parse_equation_kind(to_string(kind)), kind);
    }
}

TEST(MovingFrameEquivalenceTest, RandomAndConstantFields) {
    const double dx = 0.1;
    for (std::int64_t k : {1, 2}) {
        const double dt = 0.05;
        EXPECT_LE(moving_frame_equivalence(random_field({-10, 10}, {0, 6}, 17 + k), k, dx, dt), 1e-12);
        EXPECT_EQ(moving_frame_equivalence(Field2D::constant({-10, 10}, {0, 6}, 0.4), k, dx, dt), 0.0);
    }
    EXPECT_THROW((void)moving_frame_equivalence(Field2D::constant({0, 1}, {0, 0}, 0.4), 1, dx, 0.05),
                 DomainError);
}

TEST(MovingFrameFormsTest, ScaledFormIsMinusDxSquaredTimesQuotient) {
    const double dx = 0.1;
    const double v = 1.9;
    for (std::int64_t k : {1, 3}) {
        const double dt = static_cast<double>(k) / v * dx;
        const StencilEquation q = moving_frame(dx, dt, k);
        const StencilEquation s = moving_frame(dx, dt, k, MovingFrameForm::scaled);
        const Field2D w = random_field({-8, 8}, {0, 3}, 31);
        for_interior(q, w, [&](IndexPoint p) {
            EXPECT_NEAR(residual_at(s, w, p), -dx * dx * residual_at(q, w, p), 1e-13);
        });
    }
}

TEST(EquationProperties, ReducedConsistencyOnNuIndependentFields) {
    test::for_all(40, 101, [](UniformSource& u, std::size_t) {
        const double dx = u(0.02, 0.5);
        const double v = u(0.5, 3.0);
        const std::int64_t k = test::uniform_int(u, 1, 4);
        const double dt = static_cast<double>(k) / v * dx;
        const Profile1D a = random_profile({-12, 12}, static_cast<std::uint64_t>(u() * 1e9));
        const Field2D w = Field2D::generate({-12, 12}, {0, 2}, [&a](IndexPoint p) { return a.at(p.m); });
        const StencilEquation quotient = moving_frame(dx, dt, k);
        const StencilEquation scaled = moving_frame(dx, dt, k, MovingFrameForm::scaled);
        const ReducedEquation reduced = make_fkpp_reduced(dx, v, k);
        for (std::int64_t mu = -12 + k; mu < 12; ++mu) {
            const double r = reduced.residual(a, mu);
            ASSERT_NEAR(-dx * dx * residual_at(quotient, w, {mu, 0}), r, 1e-12);
            ASSERT_NEAR(residual_at(scaled, w, {mu, 0}), r, 1e-12);
            ASSERT_NEAR(reduced.polynomial_residual(a, mu), r, 1e-14);
        }
    });
}

TEST(EquationProperties, StationaryStatesInEveryForm) {
    test::for_all(20, 103, [](UniformSource& u, std::size_t) {
        const double dx = u(0.02, 0.5);
        const double v = u(0.5, 3.0);
        const std::int64_t k = test::uniform_int(u, 1, 4);
        const double dt = static_cast<double>(k) / v * dx;
        for (double c : {0.0, 1.0}) {
            const Field2D f = Field2D::constant({-10, 10}, {0, 3}, c);
            for (const StencilEquation& eq : {make_fkpp(dx, dt), moving_frame(dx, dt, k),
                                              moving_frame(dx, dt, k, MovingFrameForm::scaled)}) {
                for_interior(eq, f, [&](IndexPoint p) { ASSERT_EQ(residual_at(eq, f, p), 0.0); });
            }
            const Profile1D a = Profile1D::generate({-10, 10}, [c](std::int64_t) { return c; });
            const ReducedEquation reduced = make_fkpp_reduced(dx, v, k);
            for (std::int64_t mu = -10 + k; mu < 10; ++mu) ASSERT_EQ(reduced.residual(a, mu), 0.0);
        }
    });
}

TEST(EquationProperties, StencilHonesty) {
    test::for_all(30, 107, [](UniformSource& u, std::size_t) {
        const std::int64_t k = test::uniform_int(u, 1, 3);
        const double dx = u(0.05, 0.5);
        const double dt = u(0.001, 0.1);
        const std::vector<StencilEquation> eqs{make_heat(dx, dt), make_fkpp(dx, dt), moving_frame(dx, dt, k)};
        const Field2D base = random_field({-6, 6}, {-3, 3}, static_cast<std::uint64_t>(u() * 1e9));
        const IndexPoint pt{0, 0};
        for (const StencilEquation& eq : eqs) {
            const double r0 = residual_at(eq, base, pt);
            for (std::int64_t n = -3; n <= 3; ++n) {
                for (std::int64_t m = -6; m <= 6; ++m) {
                    const Offset o{m - pt.m, n - pt.n};
                    const auto offs = eq.offsets();
                    if (std::find(offs.begin(), offs.end(), o) != offs.end()) continue;
                    const Field2D poked = base.with_value({m, n}, base.at({m, n}) + u(-10.0, 10.0));
                    ASSERT_EQ(residual_at(eq, poked, pt), r0) << eq.name() << " at (" << m << ", " << n << ")";
                }
            }
        }
    });
}

TEST(EquationProperties, ExplicitTargetSolvesResidual) {
    test::for_all(50, 109, [](UniformSource& u, std::size_t) {
        const double dx = u(0.05, 0.5);
        const double dt = 0.4 * dx * dx;
        const std::int64_t k = test::uniform_int(u, 1, 3);
        for (const StencilEquation& eq : {make_heat(dx, dt), make_fkpp(dx, dt), moving_frame(dx, dt, k)}) {
            const Field2D f = random_field({-5, 5}, {0, 1}, static_cast<std::uint64_t>(u() * 1e9));
            const Offset t = *eq.explicit_target();
            const IndexPoint pt{0, 0};
            const double solved = explicit_step(eq, row_of(f, 0), 0);
            const Field2D g = f.with_value({pt.m + t.dm, pt.n + t.dn}, solved);
            ASSERT_LE(std::abs(residual_at(eq, g, pt)) * dt, 1e-12) << eq.name();
        }
    });
}

}  // namespace
}  // namespace latsym
