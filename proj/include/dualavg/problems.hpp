#ifndef DUALAVG_PROBLEMS_HPP
#define DUALAVG_PROBLEMS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dualavg/rng.hpp"
#include "dualavg/vec.hpp"

namespace dualavg {

/// One training example with sparse features (0-based indices, strictly increasing).
struct SvmExample {
    int label = 1;  // -1 or +1
    std::vector<std::pair<int, double>> entries;
};

/// A strongly convex objective with full and stochastic subgradient oracles.
///
/// svm_hinge:  f(w) = (mu/2)||w||^2 + (1/n) sum_i max(0, 1 - y_i <w, x_i>)
/// quadratic:  f(w) = (mu/2)||w - center||^2
///
/// The hinge loss is mean-normalized so that a single uniformly sampled
/// example yields an unbiased subgradient of the loss part. At a margin of
/// exactly 1 the loss subgradient is taken to be 0.
struct ProblemInstance {
    enum class Kind { svm_hinge, quadratic };

    Kind kind = Kind::quadratic;
    double mu = 1.0;
    long dim = 0;
    std::vector<SvmExample> examples;  // svm_hinge only
    Vec center;                        // quadratic only
    Vec planted;                       // synthetic svm: the planted separator (diagnostic)

    static ProblemInstance quadratic(double mu, Vec center);
    static ProblemInstance svm_hinge(double mu, long dim, std::vector<SvmExample> examples);

    long n_examples() const { return static_cast<long>(examples.size()); }
};

struct GradientSample {
    Vec vector;
    double norm_sq = 0.0;
    std::optional<long> sampled_index;
};

/// Running empirical bounds observed along a run: M for the gradient oracle
/// and M0 for the distance to the optimum. Both are running maxima, hence
/// nondecreasing.
struct DiagnosticsRecord {
    double max_grad_norm = 0.0;
    double max_dist_to_opt = 0.0;

    void observe_grad_norm(double g) {
        if (g > max_grad_norm) max_grad_norm = g;
    }
    void observe_dist_to_opt(double d) {
        if (d > max_dist_to_opt) max_dist_to_opt = d;
    }
};

double objective_value(const ProblemInstance& problem, const Vec& w);

GradientSample full_subgradient(const ProblemInstance& problem, const Vec& w);

/// Objective and full subgradient in a single pass over the data.
double objective_and_subgradient(const ProblemInstance& problem, const Vec& w, Vec& grad_out);

/// mu*w minus the hinge subgradient of one uniformly sampled example.
/// Unbiased for full_subgradient under the mean-loss normalization.
GradientSample stochastic_subgradient(const ProblemInstance& problem, const Vec& w, Rng& rng);

/// Seed-reproducible synthetic dataset: gaussian directions scaled so a unit
/// planted separator attains the given margin on roughly half the examples,
/// labels from the sign of the planted score.
ProblemInstance make_synthetic_svm(long n, long d, double margin, std::uint64_t seed);

/// max_i ||x_i|| / mu, a ball radius that contains the optimum.
double suggested_ball_radius(const ProblemInstance& problem);

}  // namespace dualavg

#endif
