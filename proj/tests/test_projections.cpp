#include "doctest.h"
#include "dualavg/projections.hpp"
#include "oracle_helpers.hpp"

using namespace dualavg;

TEST_CASE("ball projection scales radially") {
    FeasibleSet set = FeasibleSet::l2_ball(1.0);
    Vec p = project(set, Vec{3.0, 4.0});
    CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("box projection clamps per coordinate") {
    FeasibleSet set = FeasibleSet::box(Vec{0.0, 0.0}, Vec{1.0, 1.0});
    Vec p = project(set, Vec{-0.5, 2.0});
    CHECK(p == Vec{0.0, 1.0});
}

TEST_CASE("whole space projection is the identity") {
    FeasibleSet set = FeasibleSet::whole_space();
    Vec v{1.5, -7.0, 0.25};
    CHECK(project(set, v) == v);
}

TEST_CASE("ball boundary point is returned unchanged") {
    FeasibleSet set = FeasibleSet::l2_ball(1.0);
    Vec v{1.0, 0.0};
    CHECK(project(set, v) == v);
    CHECK(contains(set, v, 0.0));
    CHECK_FALSE(contains(set, Vec{1.1, 0.0}, 0.0));
    CHECK(contains(FeasibleSet::whole_space(), Vec{1e9, -1e9}, 0.0));
}

TEST_CASE("projection rejects non-finite input") {
    FeasibleSet set = FeasibleSet::l2_ball(1.0);
    CHECK_THROWS_AS(project(set, Vec{std::nan(""), 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(project(set, Vec{std::numeric_limits<double>::infinity(), 0.0}),
                    std::invalid_argument);
}

TEST_CASE("set constructors validate their inputs") {
    CHECK_THROWS_AS(FeasibleSet::l2_ball(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::l2_ball(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::box(Vec{1.0}, Vec{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::box(Vec{0.0, 0.0}, Vec{1.0}), std::invalid_argument);
}

TEST_CASE("variational property of the projection") {
    // <v - P(v), u - P(v)> <= 0 for all feasible u.
    Rng rng(101);
    for (int rep = 0; rep < 1000; ++rep) {
        FeasibleSet set = (rep % 2 == 0)
                              ? FeasibleSet::l2_ball(0.25 + rng.uniform() * 3.0)
                              : FeasibleSet::box(Vec{-1.0, -2.0, 0.5}, Vec{0.5, 2.0, 1.5});
        Vec v = oracles::random_vec(rng, 3, 4.0);
        Vec p = project(set, v);
        Vec u = project(set, oracles::random_vec(rng, 3, 4.0));
        double inner = 0.0;
        for (int i = 0; i < 3; ++i) inner += (v[i] - p[i]) * (u[i] - p[i]);
        CHECK(inner <= 1e-9);
    }
}

TEST_CASE("projection is exactly idempotent and a member of the set") {
    Rng rng(102);
    for (int rep = 0; rep < 500; ++rep) {
        FeasibleSet set = (rep % 2 == 0)
                              ? FeasibleSet::l2_ball(0.25 + rng.uniform() * 2.0)
                              : FeasibleSet::box(Vec{-0.5, -0.5}, Vec{0.5, 0.75});
        std::size_t d = (rep % 2 == 0) ? 5 : 2;
        Vec v = oracles::random_vec(rng, d, 5.0);
        Vec p = project(set, v);
        CHECK(project(set, p) == p);
        CHECK(contains(set, p, 1e-12));
    }
}

TEST_CASE("projection is nonexpansive") {
    Rng rng(103);
    FeasibleSet ball = FeasibleSet::l2_ball(1.0);
    FeasibleSet box = FeasibleSet::box(Vec{-1.0, 0.0, -2.0, 0.25}, Vec{1.0, 0.5, 2.0, 0.75});
    for (int rep = 0; rep < 500; ++rep) {
        const FeasibleSet& set = (rep % 2 == 0) ? ball : box;
        Vec v = oracles::random_vec(rng, 4, 3.0);
        Vec u = oracles::random_vec(rng, 4, 3.0);
        double lhs = std::sqrt(dist_sq(project(set, v), project(set, u)));
        double rhs = std::sqrt(dist_sq(v, u));
        CHECK(lhs <= rhs + 1e-12);
    }
}
