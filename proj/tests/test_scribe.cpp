#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "reachavoid/mrr.hpp"
#include "reachavoid/scribe.hpp"

using namespace ra;

namespace {

ScribeProblem colinear(ScribeMode m) { return {{1, 0}, {0, 0}, 1, 1, 2, m}; }

// t - 1 + e^{-t} = c by plain bisection
double closed_form(double c) {
    double lo = 0, hi = 20;
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        (m - 1 + std::exp(-m) < c ? lo : hi) = m;
    }
    return lo;
}

ScribeProblem random_problem(std::mt19937_64& rng, ScribeMode mode) {
    std::uniform_real_distribution<double> U(0, 1);
    ScribeProblem p;
    p.mu = 0.2 + 2.8 * U(rng);
    p.u_a = 0.1 + 1.9 * U(rng);
    p.u_d = 0.1 + 1.9 * U(rng);
    p.mode = mode;
    p.delta_x = oracle::random_vec(rng, 2.0);
    Vec2 va = oracle::random_in_disc(rng, p.u_a / p.mu), vd = oracle::random_in_disc(rng, p.u_d / p.mu);
    p.delta_v = va - vd;
    return p;
}

} // namespace

TEST(FindZero, Basics) {
    EXPECT_NEAR(*find_zero([](double t) { return t - 1; }, 0, 2), 1.0, 1e-10);
    auto r = find_zero_open([](double t) { return t - 1 + std::exp(-t) - 1.0 / 3; }, 0.0, 1.0, 50.0);
    ASSERT_TRUE(r);
    EXPECT_NEAR(*r, 0.9445, 1e-4);
    EXPECT_FALSE(find_zero([](double t) { return t * t + 1; }, -3, 3));
    EXPECT_FALSE(find_zero_open([](double) { return 1.0; }, 0.0, 1.0, 50.0));
}

TEST(Gamma, Values) {
    auto p = colinear(ScribeMode::Circumscribe);
    EXPECT_DOUBLE_EQ(gamma(p, 0), 1.0);
    EXPECT_DOUBLE_EQ(gamma(colinear(ScribeMode::Inscribe), 0), 1.0);
    EXPECT_NEAR(gamma(p, 1), 1 - 9 * std::exp(-2.0), 1e-12);
    EXPECT_NEAR(gamma(p, 1), -0.218, 1e-3);
    for (double t : {0.3, 1.0, 2.5})
        EXPECT_GE(gamma(colinear(ScribeMode::Inscribe), t) - gamma(p, t), 0.0);
}

TEST(Gamma, DerivativesMatchDifferences) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto p = random_problem(rng, i % 2 ? ScribeMode::Inscribe : ScribeMode::Circumscribe);
        for (double t : {0.2, 0.7, 1.9}) {
            double h = 1e-5;
            double d1 = (gamma(p, t + h) - gamma(p, t - h)) / (2 * h);
            double d2 = (gamma_d1(p, t + h) - gamma_d1(p, t - h)) / (2 * h);
            EXPECT_NEAR(gamma_d1(p, t), d1, 1e-6 * (1 + std::fabs(d1)));
            EXPECT_NEAR(gamma_d2(p, t), d2, 1e-6 * (1 + std::fabs(d2)));
        }
    }
}

TEST(ScribeTimes, Colinear) {
    auto c = scribe_times(colinear(ScribeMode::Circumscribe));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c.times[0], closed_form(1.0 / 3), 1e-9);
    EXPECT_NEAR(c.times[0], 0.9445, 1e-4);
    auto i = scribe_times(colinear(ScribeMode::Inscribe));
    ASSERT_EQ(i.size(), 1u);
    EXPECT_NEAR(i.times[0], closed_form(1.0), 1e-9);
    EXPECT_NEAR(i.times[0], 1.8414, 1e-4);
}

TEST(ScribeTimes, RejectsCoincidentStart) {
    EXPECT_THROW(scribe_times({{0, 0}, {1, 0}, 1, 1, 2, ScribeMode::Inscribe}), DomainError);
}

TEST(ScribeTimes, SpecialCaseOneMatchesScan) {
    Vec2 xa{-0.3457, 0.0517}, xd{-0.6728, -0.0455}, va{0.0862, 0.0338}, vd{1.6534, 0.0907};
    for (auto mode : {ScribeMode::Circumscribe, ScribeMode::Inscribe}) {
        ScribeProblem p{xa - xd, va - vd, 1, 1, 2, mode};
        double s = mode == ScribeMode::Circumscribe ? 3.0 : -1.0;
        auto scan = oracle::scan_roots([&](double t) { return oracle::gamma(p.delta_x, p.delta_v, 1, s, t); }, 10.0);
        auto r = scribe_times(p);
        ASSERT_EQ(r.size(), scan.size());
        for (std::size_t k = 0; k < scan.size(); ++k) EXPECT_NEAR(r.times[k], scan[k], 1e-8);
    }
}

TEST(ScribeTimes, RandomAgainstScan) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 150; ++i) {
        auto p = random_problem(rng, i % 2 ? ScribeMode::Inscribe : ScribeMode::Circumscribe);
        double s = std::sqrt(p.k()) * p.mu;
        double end = 1.0 / p.mu + p.mu * (p.delta_x.norm() + p.delta_v.norm() / p.mu) / s + 1.0;
        auto scan = oracle::scan_roots([&](double t) { return oracle::gamma(p.delta_x, p.delta_v, p.mu, s, t); }, end);
        auto r = scribe_times(p);
        ASSERT_EQ(r.size(), scan.size()) << "problem " << i;
        for (std::size_t k = 0; k < scan.size(); ++k) EXPECT_NEAR(r.times[k], scan[k], 1e-6);
        EXPECT_GE(r.count(), 1);
        EXPECT_LE(r.count(), 3);
    }
}

TEST(ScribeTimes, CircumscribeBeforeInscribe) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        auto p = random_problem(rng, ScribeMode::Circumscribe);
        if (std::fabs(p.u_a - p.u_d) < 1e-3) continue;
        auto q = p;
        q.mode = ScribeMode::Inscribe;
        EXPECT_LT(scribe_times(p).times.front(), scribe_times(q).times.front());
    }
}

TEST(ReachTimes, Examples) {
    PlayerParams p{1, 1};
    auto own = reach_times({2, 2}, {{2, 2}, {0, 0}}, p);
    ASSERT_EQ(own.size(), 1u);
    EXPECT_EQ(own.times[0], 0.0);

    auto one = reach_times({std::exp(-1.0), 0}, {{0, 0}, {0, 0}}, p);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one.times[0], 1.0, 1e-9);

    PlayerState mv{{0, 0}, {1, 0}};
    Vec2 xs{1 - std::log(2.0), 0};  // x_c(ln2) - r(ln2)
    EXPECT_NEAR(xs.x, 0.3069, 1e-4);
    auto c = classify(xs, mv, p);
    ASSERT_EQ(c.times.size(), 3u);
    EXPECT_NEAR(c.times[1], std::log(2.0), 1e-5);
    EXPECT_NEAR(c.times[2], std::log(2.0), 1e-5);
    EXPECT_EQ(c.kind, ReachKind::BoundaryII);

    auto self = reach_times(mv.pos, mv, p).expanded();
    ASSERT_EQ(self.size(), 3u);
    EXPECT_EQ(self[0], 0.0);
    EXPECT_EQ(self[1], 0.0);
    EXPECT_GT(self[2], 0.0);
}

TEST(ReachTimes, RoundTrip) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 200; ++i) {
        PlayerParams p{0.5 + 2 * U(rng), 0.3 + 2 * U(rng)};
        PlayerState s{oracle::random_vec(rng, 3), oracle::random_in_disc(rng, p.max_speed())};
        double T = 0.05 + 3 * U(rng);
        Vec2 x = propagate(s, p, Control(p.u_max, 10 * U(rng)), T).pos;
        auto ts = reach_times(x, s, p).expanded();
        double best = 1e9;
        for (double t : ts) best = std::min(best, std::fabs(t - T));
        EXPECT_LT(best, 1e-8) << i;
    }
}
