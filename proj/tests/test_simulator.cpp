#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "latsym/error.hpp"
#include "latsym/simulator.hpp"
#include "property.hpp"

namespace latsym {
namespace {

SimConfig small_config(double dx = 0.2) {
    SimConfig cfg;
    cfg.dx = dx;
    cfg.dt = stable_dt(dx);
    cfg.x_min = -10.0;
    cfg.x_max = 50.0;
    cfg.t_end = 10.0;
    cfg.record_stride = 5;
    return cfg;
}

TEST(InitialConditionTest, Examples) {
    const InitialCondition ic{1.0, 0.0};
    EXPECT_EQ(ic(-3.0), 1.0);
    EXPECT_EQ(ic(0.0), 1.0);
    EXPECT_EQ(ic(1.0), std::exp(-1.0));
    const InitialCondition shifted{2.0, 0.5};
    EXPECT_EQ(shifted(1.0), std::exp(-3.0));
}

TEST(InitFieldTest, SamplesTheGrid) {
    SimConfig cfg;
    cfg.dx = 0.5;
    cfg.x_min = -1.0;
    cfg.x_max = 2.0;
    const std::vector<double> row = init_field(cfg);
    ASSERT_EQ(row.size(), 7u);
    EXPECT_EQ(row[0], 1.0);
    EXPECT_EQ(row[2], 1.0);
    EXPECT_EQ(row[3], std::exp(-0.5));
    EXPECT_EQ(row[6], std::exp(-2.0));
    cfg.shift_cells = 1;
    EXPECT_EQ(init_field(cfg)[3], 1.0);
    EXPECT_EQ(init_field(cfg)[4], std::exp(-0.5));
}

TEST(SimConfigTest, Validation) {
    SimConfig cfg = small_config();
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.num_points(), 301);
    EXPECT_EQ(cfg.num_steps(), 625);

    SimConfig bad = cfg;
    bad.dx = -0.1;
    EXPECT_THROW(bad.validate(), DomainError);
    bad = cfg;
    bad.dt = 1.01 * stable_dt(cfg.dx);
    EXPECT_THROW(bad.validate(), DomainError);
    bad.allow_unstable_dt = true;
    EXPECT_NO_THROW(bad.validate());
    bad = cfg;
    bad.x_min = 1.0;
    EXPECT_THROW(bad.validate(), DomainError);
    bad = cfg;
    bad.track_level = 1.0;
    EXPECT_THROW(bad.validate(), DomainError);
    bad = cfg;
    bad.record_stride = 0;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(FrontPositionTest, Examples) {
    const std::vector<double> row{1.0, 1.0, 0.75, 0.25, 0.0};
    EXPECT_DOUBLE_EQ(front_position(row, 0.0, 1.0, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(front_position(row, -1.0, 0.5, 0.5), 0.25);
    const std::vector<double> exact{1.0, 0.5, 0.0};
    EXPECT_EQ(front_position(exact, 0.0, 1.0, 0.5), 1.0);
    const std::vector<double> flat{0.2, 0.2, 0.2};
    EXPECT_THROW((void)front_position(flat, 0.0, 1.0, 0.5), NoCrossingError);
    // The rightmost crossing wins.
    const std::vector<double> bumpy{1.0, 0.0, 1.0, 0.0};
    EXPECT_DOUBLE_EQ(front_position(bumpy, 0.0, 1.0, 0.5), 2.5);
}

TEST(FitSpeedTest, Examples) {
    std::vector<double> t;
    std::vector<double> x;
    for (int i = 0; i <= 20; ++i) {
        t.push_back(0.5 * i);
        x.push_back(3.0 + 1.9 * 0.5 * i);
    }
    EXPECT_NEAR(fit_speed(t, x, 0.5), 1.9, 1e-13);
    const std::vector<double> constant(t.size(), 4.0);
    EXPECT_EQ(fit_speed(t, constant, 1.0), 0.0);
    EXPECT_EQ(fit_sample_count(21, 0.5), 11u);
    EXPECT_EQ(fit_sample_count(3, 0.1), 2u);
    EXPECT_EQ(fit_sample_count(1, 0.5), 1u);
    EXPECT_THROW((void)fit_speed(std::vector<double>{1.0}, std::vector<double>{1.0}, 0.5), DomainError);
}

TEST(FitSpeedTest, RobustToSmallNoise) {
    UniformSource u(7);
    std::vector<double> t;
    std::vector<double> x;
    for (int i = 0; i <= 200; ++i) {
        t.push_back(0.1 * i);
        x.push_back(1.9 * 0.1 * i + u(-1e-6, 1e-6));
    }
    EXPECT_NEAR(fit_speed(t, x, 0.5), 1.9, 1e-4);
}

TEST(SimulatorTest, ZeroDurationHasNoSpeed) {
    SimConfig cfg = small_config();
    cfg.t_end = 0.0;
    const SimResult r = run(cfg);
    EXPECT_EQ(r.times.size(), 1u);
    EXPECT_EQ(r.fit_count, 1u);
    EXPECT_TRUE(std::isnan(r.fitted_speed));
    EXPECT_NEAR(r.front_positions.front(), std::log(2.0), 0.02);
}

TEST(SimulatorTest, RecordsOnStride) {
    const SimConfig cfg = small_config();
    const SimResult r = run(cfg);
    ASSERT_EQ(r.steps.size(), 1u + 625u / 5u);
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        EXPECT_EQ(r.steps[i], static_cast<std::int64_t>(5 * i));
        EXPECT_EQ(r.times[i], static_cast<double>(r.steps[i]) * cfg.dt);
    }
    EXPECT_EQ(r.final_row.size(), 301u);
}

TEST(SimulatorTest, FrontAdvancesBelowTheContinuumSpeed) {
    const SimResult r = run(small_config());
    EXPECT_GT(r.fitted_speed, 1.5);
    EXPECT_LT(r.fitted_speed, 2.0);
    EXPECT_FALSE(r.near_right_boundary);
}

TEST(SimulatorTest, HalvingDtBarelyMovesTheSpeed) {
    SimConfig cfg = small_config(0.1);
    cfg.t_end = 20.0;
    cfg.x_max = 60.0;
    cfg.record_stride = 10;
    const double coarse = run(cfg).fitted_speed;
    cfg.dt *= 0.5;
    cfg.record_stride *= 2;
    const double fine = run(cfg).fitted_speed;
    EXPECT_LT(std::abs(coarse - fine) / fine, 0.01);
}

TEST(SimulatorTest, UnstableStepAborts) {
    SimConfig cfg = small_config();
    cfg.dt = 2.0 * cfg.dx * cfg.dx;
    EXPECT_THROW((void)run(cfg), DomainError);
    cfg.allow_unstable_dt = true;
    try {
        (void)run(cfg);
        FAIL() << "expected the run to blow up";
    } catch (const InstabilityError& e) {
        EXPECT_GT(e.step(), 0);
    }
}

TEST(SimulatorProperties, SolutionStaysInTheUnitInterval) {
    test::for_all(6, 401, [](UniformSource& u, std::size_t) {
        SimConfig cfg = small_config(u(0.1, 0.4));
        cfg.dt = stable_dt(cfg.dx) * u(0.3, 1.0);
        cfg.ic.k0 = u(0.3, 3.0);
        cfg.ic.k1 = u(0.0, 2.0);
        cfg.t_end = 5.0;
        const SimResult r = run(cfg);
        ASSERT_GE(r.min_u, -1e-8);
        ASSERT_LE(r.max_u, 1.0 + 1e-8);
    });
}

TEST(SimulatorProperties, TranslationEquivariance) {
    test::for_all(6, 403, [](UniformSource& u, std::size_t) {
        SimConfig cfg = small_config(u(0.1, 0.4));
        cfg.t_end = 5.0;
        const std::int64_t shift = test::uniform_int(u, 1, 20);
        const SimResult base = run(cfg);
        cfg.shift_cells = shift;
        const SimResult moved = run(cfg);
        ASSERT_EQ(base.front_positions.size(), moved.front_positions.size());
        for (std::size_t i = 0; i < base.front_positions.size(); ++i) {
            ASSERT_NEAR(moved.front_positions[i] - base.front_positions[i], static_cast<double>(shift) * cfg.dx,
                        1e-10);
        }
        ASSERT_NEAR(moved.fitted_speed, base.fitted_speed, 1e-10);
    });
}

}  // namespace
}  // namespace latsym
