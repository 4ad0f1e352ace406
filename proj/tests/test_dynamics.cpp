#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "reachavoid/dynamics.hpp"

using namespace ra;

TEST(Propagate, RestStaysAtRest) {
    auto s = propagate({{0, 0}, {0, 0}}, {1, 1}, Control(0, 1.3), 5);
    EXPECT_EQ(s.pos, Vec2(0, 0));
    EXPECT_EQ(s.vel, Vec2(0, 0));
}

TEST(Propagate, UnitThrustOneSecond) {
    auto s = propagate({{0, 0}, {0, 0}}, {1, 1}, Control(1, 0), 1);
    EXPECT_NEAR(s.vel.x, 1 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(s.pos.x, std::exp(-1.0), 1e-15);
    EXPECT_NEAR(s.vel.y, 0, 1e-15);
}

TEST(Propagate, CoastLimit) {
    auto s = propagate({{0, 0}, {1, 0}}, {1, 1}, Control(0, 0), 60);
    EXPECT_NEAR(s.pos.x, 1.0, 1e-12);
}

TEST(Propagate, NegativeTimeRejected) {
    EXPECT_THROW(propagate({}, {1, 1}, Control(0, 0), -1), DomainError);
    EXPECT_THROW(propagate({}, {1, 1}, Control(2, 0), 1), DomainError);
}

TEST(Control, ThetaWrapped) {
    EXPECT_NEAR(Control(1, -std::numbers::pi / 2).theta(), 1.5 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(Control(1, 7 * std::numbers::pi).theta(), std::numbers::pi, 1e-12);
    EXPECT_NEAR(angle_distance(0.1, two_pi - 0.1), 0.2, 1e-12);
}

TEST(Isochron, Values) {
    auto a = isochron({{2, 3}, {0, 0}}, {1, 1}, 0);
    EXPECT_EQ(a.center, Vec2(2, 3));
    EXPECT_EQ(a.radius, 0.0);
    auto b = isochron({{0, 0}, {1, 0}}, {1, 1}, 1);
    EXPECT_NEAR(b.center.x, 0.6321205588, 1e-9);
    EXPECT_NEAR(b.radius, 0.3678794412, 1e-9);
    for (double t : {0.1, 1.0, 4.0})
        EXPECT_NEAR(isochron({}, {0.5, 1.3}, t).radius / isochron({}, {2.0, 1.3}, t).radius, 0.25, 1e-14);
}

TEST(Isochron, SmallTimeSeriesMatchesDirect) {
    for (double t : {1e-3, 0.01, 0.049, 0.051}) {
        double direct = t - (1 - std::exp(-t));
        EXPECT_NEAR(spread(1.0, t), direct, 1e-15);
    }
}

TEST(SteerTo, Cases) {
    PlayerState s{{0, 0}, {1, 0}};
    PlayerParams p{1, 1};
    auto iso = isochron(s, p, 1.5);
    EXPECT_EQ(steer_to(s, p, iso.center, 1.5).u(), 0.0);

    auto c = steer_to({{0, 0}, {0, 0}}, p, {std::exp(-1.0), 0}, 1);
    EXPECT_NEAR(c.u(), 1.0, 1e-12);
    EXPECT_NEAR(angle_distance(c.theta(), 0.0), 0.0, 1e-12);

    Vec2 edge = iso.center + unit(2.0) * iso.radius;
    auto ce = steer_to(s, p, edge, 1.5);
    EXPECT_DOUBLE_EQ(ce.u(), 1.0);
    EXPECT_LT(dist(propagate(s, p, ce, 1.5).pos, edge), 1e-9);

    EXPECT_THROW(steer_to(s, p, iso.center + Vec2(iso.radius * 1.01, 0), 1.5), InfeasibleError);
    EXPECT_THROW(steer_to(s, p, {5, 5}, 1e-9), InfeasibleError);
}

TEST(Properties, SemigroupBoundarySpeed) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 200; ++i) {
        PlayerParams p{0.5 + 2 * U(rng), 0.2 + 2.8 * U(rng)};
        PlayerState s{oracle::random_vec(rng, 5), oracle::random_in_disc(rng, p.max_speed())};
        Control c(p.u_max * U(rng), 10 * U(rng));
        double t1 = 5 * U(rng), t2 = 5 * U(rng);
        auto a = propagate(propagate(s, p, c, t1), p, c, t2);
        auto b = propagate(s, p, c, t1 + t2);
        EXPECT_NEAR(a.pos.x, b.pos.x, 1e-12);
        EXPECT_NEAR(a.pos.y, b.pos.y, 1e-12);
        EXPECT_NEAR(a.vel.x, b.vel.x, 1e-12);
        EXPECT_NEAR(a.vel.y, b.vel.y, 1e-12);

        Control full(p.u_max, 10 * U(rng));
        auto f = propagate(s, p, full, t1);
        auto iso = isochron(s, p, t1);
        EXPECT_NEAR(dist(f.pos, iso.center), iso.radius, 1e-12);

        double bound = s.vel.norm() * std::exp(-p.mu * t1) + p.max_speed() * (1 - std::exp(-p.mu * t1));
        EXPECT_LE(f.vel.norm(), bound + 1e-12);
    }
}

// piecewise-constant bang-bang profiles never leave the disc
TEST(Properties, Containment) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0, 1);
    for (int k = 0; k < 20; ++k) {
        PlayerParams p{0.5 + 2 * U(rng), 0.3 + 2 * U(rng)};
        PlayerState s0{oracle::random_vec(rng, 3), oracle::random_in_disc(rng, p.max_speed())};
        for (int j = 0; j < 100; ++j) {
            PlayerState s = s0;
            double t = 0, T = 4 * U(rng) + 0.1;
            while (t < T) {
                double h = std::min(T - t, 0.05 + 0.3 * U(rng));
                s = propagate(s, p, Control(U(rng) < 0.5 ? 0.0 : p.u_max, 10 * U(rng)), h);
                t += h;
            }
            auto iso = isochron(s0, p, T);
            EXPECT_LE(dist(s.pos, iso.center), iso.radius + 1e-9);
        }
    }
}
