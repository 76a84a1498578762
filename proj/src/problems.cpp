#include "dualavg/problems.hpp"

#include <algorithm>
#include <string>

namespace dualavg {

namespace {

double sparse_dot(const Vec& w, const SvmExample& ex) {
    double s = 0.0;
    for (const auto& [idx, val] : ex.entries) s += w[static_cast<std::size_t>(idx)] * val;
    return s;
}

void check_dim(const ProblemInstance& p, const Vec& w, const char* op) {
    require(static_cast<long>(w.size()) == p.dim,
            std::string(op) + ": w has length " + std::to_string(w.size()) +
                ", problem dim is " + std::to_string(p.dim));
}

}  // namespace

ProblemInstance ProblemInstance::quadratic(double mu, Vec center) {
    require(mu > 0.0, "quadratic: mu must be positive");
    require(!center.empty() && all_finite(center), "quadratic: center must be a finite vector");
    ProblemInstance p;
    p.kind = Kind::quadratic;
    p.mu = mu;
    p.dim = static_cast<long>(center.size());
    p.center = std::move(center);
    return p;
}

ProblemInstance ProblemInstance::svm_hinge(double mu, long dim, std::vector<SvmExample> examples) {
    require(mu > 0.0, "svm_hinge: mu must be positive");
    require(dim >= 1, "svm_hinge: dim must be positive");
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& ex = examples[i];
        require(ex.label == 1 || ex.label == -1,
                "svm_hinge: label must be -1 or +1 at example " + std::to_string(i));
        int prev = -1;
        for (const auto& [idx, val] : ex.entries) {
            require(idx >= 0 && idx < dim,
                    "svm_hinge: feature index out of range at example " + std::to_string(i));
            require(idx > prev, "svm_hinge: indices not strictly increasing at example " +
                                    std::to_string(i));
            require(std::isfinite(val), "svm_hinge: non-finite feature value");
            prev = idx;
        }
    }
    ProblemInstance p;
    p.kind = Kind::svm_hinge;
    p.mu = mu;
    p.dim = dim;
    p.examples = std::move(examples);
    return p;
}

double objective_value(const ProblemInstance& problem, const Vec& w) {
    check_dim(problem, w, "objective_value");
    if (problem.kind == ProblemInstance::Kind::quadratic)
        return 0.5 * problem.mu * dist_sq(w, problem.center);

    double hinge_sum = 0.0;
    for (const auto& ex : problem.examples) {
        double margin = ex.label * sparse_dot(w, ex);
        if (margin < 1.0) hinge_sum += 1.0 - margin;
    }
    double n = static_cast<double>(problem.examples.size());
    double loss = problem.examples.empty() ? 0.0 : hinge_sum / n;
    return 0.5 * problem.mu * norm_sq(w) + loss;
}

double objective_and_subgradient(const ProblemInstance& problem, const Vec& w, Vec& grad_out) {
    check_dim(problem, w, "objective_and_subgradient");
    grad_out.assign(w.size(), 0.0);
    if (problem.kind == ProblemInstance::Kind::quadratic) {
        for (std::size_t i = 0; i < w.size(); ++i)
            grad_out[i] = problem.mu * (w[i] - problem.center[i]);
        return 0.5 * problem.mu * dist_sq(w, problem.center);
    }

    double hinge_sum = 0.0;
    for (const auto& ex : problem.examples) {
        double margin = ex.label * sparse_dot(w, ex);
        if (margin < 1.0) {
            hinge_sum += 1.0 - margin;
            for (const auto& [idx, val] : ex.entries)
                grad_out[static_cast<std::size_t>(idx)] -= ex.label * val;
        }
    }
    double n = static_cast<double>(problem.examples.size());
    double inv_n = problem.examples.empty() ? 0.0 : 1.0 / n;
    for (std::size_t i = 0; i < w.size(); ++i)
        grad_out[i] = problem.mu * w[i] + grad_out[i] * inv_n;
    return 0.5 * problem.mu * norm_sq(w) + hinge_sum * inv_n;
}

GradientSample full_subgradient(const ProblemInstance& problem, const Vec& w) {
    GradientSample g;
    objective_and_subgradient(problem, w, g.vector);
    g.norm_sq = norm_sq(g.vector);
    return g;
}

GradientSample stochastic_subgradient(const ProblemInstance& problem, const Vec& w, Rng& rng) {
    require(problem.kind == ProblemInstance::Kind::svm_hinge,
            "stochastic_subgradient: only svm_hinge problems have a stochastic oracle");
    require(!problem.examples.empty(), "stochastic_subgradient: empty dataset");
    check_dim(problem, w, "stochastic_subgradient");

    long i = static_cast<long>(rng.uniform_index(problem.examples.size()));
    const auto& ex = problem.examples[static_cast<std::size_t>(i)];

    GradientSample g;
    g.vector = scaled(w, problem.mu);
    double margin = ex.label * sparse_dot(w, ex);
    if (margin < 1.0)
        for (const auto& [idx, val] : ex.entries)
            g.vector[static_cast<std::size_t>(idx)] -= ex.label * val;
    g.norm_sq = norm_sq(g.vector);
    g.sampled_index = i;
    return g;
}

ProblemInstance make_synthetic_svm(long n, long d, double margin, std::uint64_t seed) {
    require(n >= 1, "make_synthetic_svm: n must be positive");
    require(d >= 1, "make_synthetic_svm: d must be positive");
    require(margin > 0.0 && std::isfinite(margin), "make_synthetic_svm: margin must be positive");

    Rng rng(seed);

    // Unit planted separator.
    Vec u(static_cast<std::size_t>(d));
    double un = 0.0;
    while (un == 0.0) {
        for (auto& x : u) x = rng.gaussian();
        un = norm(u);
    }
    for (auto& x : u) x /= un;

    // Feature scale: with unit-sphere directions the planted score is roughly
    // margin/0.674 * |N(0,1)|, putting half the examples at margin >= `margin`.
    double scale = margin * std::sqrt(static_cast<double>(d)) / 0.674;

    std::vector<SvmExample> examples;
    examples.reserve(static_cast<std::size_t>(n));
    Vec z(static_cast<std::size_t>(d));
    for (long i = 0; i < n; ++i) {
        double zn = 0.0;
        while (zn == 0.0) {
            for (auto& x : z) x = rng.gaussian();
            zn = norm(z);
        }
        SvmExample ex;
        ex.entries.reserve(static_cast<std::size_t>(d));
        double score = 0.0;
        for (long j = 0; j < d; ++j) {
            double v = scale * z[static_cast<std::size_t>(j)] / zn;
            ex.entries.emplace_back(static_cast<int>(j), v);
            score += u[static_cast<std::size_t>(j)] * v;
        }
        ex.label = score >= 0.0 ? 1 : -1;
        examples.push_back(std::move(ex));
    }

    ProblemInstance p = ProblemInstance::svm_hinge(1.0, d, std::move(examples));
    p.planted = u;
    return p;
}

double suggested_ball_radius(const ProblemInstance& problem) {
    require(problem.kind == ProblemInstance::Kind::svm_hinge,
            "suggested_ball_radius: svm_hinge only");
    double max_norm = 0.0;
    for (const auto& ex : problem.examples) {
        double s = 0.0;
        for (const auto& [idx, val] : ex.entries) s += val * val;
        max_norm = std::max(max_norm, std::sqrt(s));
    }
    return max_norm / problem.mu;
}

}  // namespace dualavg
