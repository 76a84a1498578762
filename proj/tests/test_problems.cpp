#include <cmath>

#include "doctest.h"
#include "dualavg/problems.hpp"
#include "oracle_helpers.hpp"

using namespace dualavg;

namespace {

ProblemInstance one_example_problem(double mu, Vec x, int label) {
    SvmExample ex;
    ex.label = label;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0.0) ex.entries.emplace_back(static_cast<int>(i), x[i]);
    return ProblemInstance::svm_hinge(mu, static_cast<long>(x.size()), {ex});
}

}  // namespace

TEST_CASE("hinge objective at zero is one per example") {
    ProblemInstance p = make_synthetic_svm(37, 6, 1.0, 3);
    Vec w(6, 0.0);
    CHECK(objective_value(p, w) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quadratic objective vanishes exactly at its center") {
    ProblemInstance p = ProblemInstance::quadratic(2.0, Vec{1.0, 0.0});
    CHECK(objective_value(p, Vec{1.0, 0.0}) == 0.0);
}

TEST_CASE("margin two zeroes the hinge, leaving only the regularizer") {
    ProblemInstance p = one_example_problem(1.0, Vec{2.0, 0.0}, +1);
    CHECK(objective_value(p, Vec{1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("objective rejects dimension mismatch") {
    ProblemInstance p = ProblemInstance::quadratic(1.0, Vec{0.0, 0.0});
    CHECK_THROWS_AS(objective_value(p, Vec{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(full_subgradient(p, Vec{1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("full subgradient with an active hinge") {
    ProblemInstance p = one_example_problem(1.0, Vec{1.0, 0.0}, +1);
    GradientSample g = full_subgradient(p, Vec{0.0, 0.0});
    CHECK(g.vector == Vec{-1.0, 0.0});
}

TEST_CASE("quadratic gradient is mu (w - center)") {
    ProblemInstance p = ProblemInstance::quadratic(3.0, Vec{0.0, 0.0});
    GradientSample g = full_subgradient(p, Vec{2.0, 0.0});
    CHECK(g.vector == Vec{6.0, 0.0});
}

TEST_CASE("at margin exactly one the kink subgradient is zero") {
    ProblemInstance p = one_example_problem(1.0, Vec{1.0, 0.0}, +1);
    GradientSample g = full_subgradient(p, Vec{1.0, 0.0});
    CHECK(g.vector == Vec{1.0, 0.0});  // only mu w remains
}

TEST_CASE("quadratic gradient vanishes exactly at the center") {
    ProblemInstance p = ProblemInstance::quadratic(1.7, Vec{0.3, -2.0, 5.0});
    GradientSample g = full_subgradient(p, p.center);
    CHECK(g.vector == Vec{0.0, 0.0, 0.0});
    CHECK(g.norm_sq == 0.0);
}

TEST_CASE("gradient sample caches the squared norm") {
    Rng rng(8);
    ProblemInstance p = make_synthetic_svm(25, 4, 1.0, 4);
    for (int rep = 0; rep < 50; ++rep) {
        Vec w = oracles::random_vec(rng, 4, 2.0);
        GradientSample g = full_subgradient(p, w);
        double direct = norm_sq(g.vector);
        CHECK(std::abs(g.norm_sq - direct) <= 1e-12 * std::max(1.0, direct));
    }
}

TEST_CASE("single-example dataset makes the stochastic oracle deterministic") {
    ProblemInstance p = one_example_problem(0.5, Vec{1.0, -2.0}, -1);
    Rng rng(5);
    Vec w{0.3, 0.7};
    GradientSample full = full_subgradient(p, w);
    for (int rep = 0; rep < 10; ++rep) {
        GradientSample s = stochastic_subgradient(p, w, rng);
        CHECK(s.vector == full.vector);
        CHECK(s.sampled_index == 0);
    }
}

TEST_CASE("stochastic sample at w = 0 is minus the sampled example") {
    ProblemInstance p = make_synthetic_svm(20, 3, 1.0, 6);
    Rng rng(6);
    Vec w(3, 0.0);
    for (int rep = 0; rep < 20; ++rep) {
        GradientSample s = stochastic_subgradient(p, w, rng);
        REQUIRE(s.sampled_index.has_value());
        const SvmExample& ex = p.examples[static_cast<std::size_t>(*s.sampled_index)];
        Vec expect(3, 0.0);
        for (const auto& [idx, val] : ex.entries) expect[static_cast<std::size_t>(idx)] -= ex.label * val;
        CHECK(s.vector == expect);
    }
}

TEST_CASE("stochastic oracle contract violations") {
    ProblemInstance q = ProblemInstance::quadratic(1.0, Vec{0.0});
    Rng rng(1);
    CHECK_THROWS_AS(stochastic_subgradient(q, Vec{0.0}, rng), std::invalid_argument);
}

TEST_CASE("Monte Carlo unbiasedness of the stochastic oracle") {
    ProblemInstance p = make_synthetic_svm(50, 5, 1.0, 7);
    Rng rng(77);
    Vec w = oracles::random_vec(rng, 5, 0.5);
    GradientSample full = full_subgradient(p, w);

    const long N = 100000;
    Vec mean(5, 0.0), m2(5, 0.0);
    for (long k = 0; k < N; ++k) {
        GradientSample s = stochastic_subgradient(p, w, rng);
        for (int i = 0; i < 5; ++i) {
            mean[i] += s.vector[i];
            m2[i] += s.vector[i] * s.vector[i];
        }
    }
    for (int i = 0; i < 5; ++i) {
        double m = mean[i] / N;
        double var = m2[i] / N - m * m;
        double sigma = std::sqrt(std::max(var, 0.0));
        double band = 3.0 * sigma / std::sqrt(static_cast<double>(N)) + 1e-12;
        CHECK(std::abs(m - full.vector[i]) <= band);
    }
}

TEST_CASE("synthetic generation is seed-deterministic") {
    ProblemInstance a = make_synthetic_svm(100, 10, 1.0, 7);
    ProblemInstance b = make_synthetic_svm(100, 10, 1.0, 7);
    REQUIRE(a.examples.size() == b.examples.size());
    for (std::size_t i = 0; i < a.examples.size(); ++i) {
        CHECK(a.examples[i].label == b.examples[i].label);
        CHECK(a.examples[i].entries == b.examples[i].entries);
    }
    ProblemInstance c = make_synthetic_svm(100, 10, 1.0, 8);
    bool differs = false;
    for (std::size_t i = 0; i < a.examples.size() && !differs; ++i)
        differs = a.examples[i].entries != c.examples[i].entries;
    CHECK(differs);
}

TEST_CASE("synthetic labels are plus or minus one") {
    ProblemInstance p = make_synthetic_svm(200, 8, 1.0, 9);
    for (const auto& ex : p.examples) CHECK((ex.label == 1 || ex.label == -1));
}

TEST_CASE("planted separator beats the zero vector") {
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        ProblemInstance p = make_synthetic_svm(100, 10, 1.0, seed);
        REQUIRE_FALSE(p.planted.empty());
        CHECK(objective_value(p, p.planted) < objective_value(p, Vec(10, 0.0)));
    }
}

TEST_CASE("generator validates its arguments") {
    CHECK_THROWS_AS(make_synthetic_svm(0, 5, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_synthetic_svm(5, 0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("strong convexity lower bound holds at random pairs") {
    Rng rng(55);
    ProblemInstance svm = make_synthetic_svm(60, 6, 1.0, 10);
    ProblemInstance quad = ProblemInstance::quadratic(0.7, oracles::random_vec(rng, 6, 1.0));
    for (const ProblemInstance* p : {&svm, &quad}) {
        for (int rep = 0; rep < 200; ++rep) {
            Vec u = oracles::random_vec(rng, 6, 1.5);
            Vec w = oracles::random_vec(rng, 6, 1.5);
            GradientSample gu = full_subgradient(*p, u);
            double lhs = objective_value(*p, w);
            double rhs = objective_value(*p, u) + dot(gu.vector, sub(w, u)) +
                         0.5 * p->mu * dist_sq(w, u);
            CHECK(lhs >= rhs - 1e-9);
        }
    }
}

TEST_CASE("subgradient inequality holds at random pairs") {
    Rng rng(56);
    ProblemInstance p = make_synthetic_svm(40, 5, 1.0, 11);
    for (int rep = 0; rep < 200; ++rep) {
        Vec u = oracles::random_vec(rng, 5, 2.0);
        Vec w = oracles::random_vec(rng, 5, 2.0);
        GradientSample gu = full_subgradient(p, u);
        CHECK(objective_value(p, w) >=
              objective_value(p, u) + dot(gu.vector, sub(w, u)) - 1e-9);
    }
}

TEST_CASE("problem constructors enforce their invariants") {
    CHECK_THROWS_AS(ProblemInstance::quadratic(0.0, Vec{1.0}), std::invalid_argument);
    SvmExample bad_label;
    bad_label.label = 2;
    CHECK_THROWS_AS(ProblemInstance::svm_hinge(1.0, 2, {bad_label}), std::invalid_argument);
    SvmExample bad_idx;
    bad_idx.label = 1;
    bad_idx.entries = {{3, 1.0}};
    CHECK_THROWS_AS(ProblemInstance::svm_hinge(1.0, 2, {bad_idx}), std::invalid_argument);
    SvmExample decreasing;
    decreasing.label = 1;
    decreasing.entries = {{1, 1.0}, {0, 2.0}};
    CHECK_THROWS_AS(ProblemInstance::svm_hinge(1.0, 3, {decreasing}), std::invalid_argument);
}

TEST_CASE("diagnostics record is a running maximum") {
    DiagnosticsRecord d;
    double prev_g = 0.0, prev_d = 0.0;
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        d.observe_grad_norm(rng.uniform() * 10.0);
        d.observe_dist_to_opt(rng.uniform() * 5.0);
        CHECK(d.max_grad_norm >= prev_g);
        CHECK(d.max_dist_to_opt >= prev_d);
        prev_g = d.max_grad_norm;
        prev_d = d.max_dist_to_opt;
    }
}
