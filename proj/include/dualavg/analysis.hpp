#ifndef DUALAVG_ANALYSIS_HPP
#define DUALAVG_ANALYSIS_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dualavg/optimizers.hpp"
#include "dualavg/problems.hpp"
#include "dualavg/projections.hpp"
#include "dualavg/schedules.hpp"

namespace dualavg {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Certified (or best-effort) optimum of a problem instance.
/// residual is the certified optimality gap: f_star - f(w_*) <= residual.
struct ReferenceSolution {
    Vec w_star;
    double f_star = kNaN;
    double residual = 0.0;
    bool certified = false;
    long iters_used = 0;
};

struct TracePoint {
    long t = 0;
    double f = kNaN;
    double gap = kNaN;
    double bound_rhs = kNaN;
    double grad_norm_sq = kNaN;
    double dist_to_opt_sq = kNaN;
    std::int64_t time_ns = 0;
};

/// Per-iteration record of a run at log-spaced checkpoints, with optional
/// full per-step history for trajectory-level checks.
struct RunTrace {
    Algo algo = Algo::scpda;
    ScheduleKind schedule = ScheduleKind::linear;
    std::uint64_t seed = 0;
    std::string problem_id;
    bool stochastic = false;
    double mu = 0.0;
    double f_star = kNaN;       // reference used for gaps (NaN when absent)
    double ref_residual = 0.0;  // certified gap of that reference

    std::vector<TracePoint> points;

    // GDA extras, aligned with points: gap of the a_k-weighted averaged
    // output, gap of the uniform average, and the weighted mean objective gap
    // (1/A_t) sum a_k f(w_k) - f_star when mean-f tracking is enabled.
    std::vector<double> averaged_gap;
    std::vector<double> uniform_avg_gap;
    std::vector<double> mean_f_gap;

    // Full history (record_history): entry k holds step t = k+1.
    bool has_history = false;
    std::vector<Vec> w_hist, w_plus_hist, g_hist;
    std::vector<double> f_hist, grad_norm_sq_hist;

    DiagnosticsRecord diagnostics;
    double max_stoch_deviation = 0.0;  // max ||g_hat - grad f(w)|| seen at checkpoints
};

/// Closed form for quadratic problems; for SVM problems runs deterministic
/// full-gradient SC-PDA with the linear schedule until the computable
/// per-iterate bound certifies the requested tolerance or the budget runs
/// out (the result is then marked uncertified and carries the best bound
/// achieved as its residual).
ReferenceSolution reference_optimum(const ProblemInstance& problem, const FeasibleSet& set,
                                    double tol, long max_iters = 2000000);

/// B_t = (1/(2 A_t)) sum_{k<=t} (a_k^2/(mu Gamma_k)) ||g_k||^2 for every t,
/// recomputed from the per-step gradient norms of a full-history trace.
/// Valid because both built-in schedules have gamma_k = a_k, which removes
/// the distance term from the theorem's right-hand side.
std::vector<double> theorem2_bound_rhs(const RunTrace& trace, double mu, ScheduleKind kind);

/// Identical formula; bounds the weighted mean objective gap instead of the
/// individual gap.
std::vector<double> theorem1_bound_rhs(const RunTrace& trace, double mu, ScheduleKind kind);

struct SlopeFit {
    double slope = kNaN;
    double r_squared = kNaN;
    long n_points = 0;
};

/// OLS of log(gap_t) on log(t) over t in [t_lo, t_hi]; gaps[i] is the value
/// at t = i+1. Requires t_hi >= 2*t_lo and positive gaps in the window.
SlopeFit loglog_slope(const std::vector<double>& gaps, long t_lo, long t_hi);

/// Same fit over sparse (t, gap) pairs, e.g. trace checkpoints.
SlopeFit loglog_slope_at(const std::vector<long>& ts, const std::vector<double>& gaps, long t_lo,
                         long t_hi);

/// Slope of a gap stream taken from trace checkpoints, flooring gaps at the
/// reference residual before the log fit.
SlopeFit fit_gap_slope(const std::vector<long>& ts, std::vector<double> gaps, double floor_at,
                       long t_lo, long t_hi);

/// Max over t >= 2 of LHS - RHS for the primal-averaging inequality
///   a_t <g_t, w_t - w_t^+>  <=  A_{t-1}[f(w_{t-1}) - f(w_t)]
///                               + a_t <g_t, w_{t-1}^+ - w_t^+>
/// along a stored SC-PDA trajectory.
double verify_lemma3(const RunTrace& trace);

}  // namespace dualavg

#endif
