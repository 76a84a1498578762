#include "dualavg/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace dualavg {

ReferenceSolution reference_optimum(const ProblemInstance& problem, const FeasibleSet& set,
                                    double tol, long max_iters) {
    require(problem.mu > 0.0, "reference_optimum: problem must be strongly convex");
    require(tol > 0.0, "reference_optimum: tol must be positive");

    ReferenceSolution ref;
    if (problem.kind == ProblemInstance::Kind::quadratic) {
        // argmin over Q of (mu/2)||w - c||^2 is exactly the projection of c.
        ref.w_star = project(set, problem.center);
        ref.f_star = objective_value(problem, ref.w_star);
        ref.residual = 0.0;
        ref.certified = true;
        return ref;
    }

    double mu = problem.mu;
    Vec init(static_cast<std::size_t>(problem.dim), 0.0);
    ScPdaState state = make_scpda(init, set, ScheduleKind::linear);

    double bound_num = 0.0;
    double best_bound = std::numeric_limits<double>::infinity();
    double best_f = std::numeric_limits<double>::infinity();
    GradientSample g;
    for (long t = 1; t <= max_iters; ++t) {
        double f = objective_and_subgradient(problem, state.w, g.vector);
        g.norm_sq = norm_sq(g.vector);

        bound_num += (state.sched.a * state.sched.a / (mu * state.sched.Gamma)) * g.norm_sq;
        double bound = bound_num / (2.0 * state.sched.A);
        if (f < best_f) {
            best_f = f;
            ref.w_star = state.w;
        }
        best_bound = std::min(best_bound, bound);
        ref.iters_used = t;
        if (best_bound <= tol) break;

        scpda_step(state, set, mu, g);
    }
    ref.f_star = best_f;
    ref.residual = best_bound;
    ref.certified = best_bound <= tol;
    return ref;
}

namespace {

std::vector<double> bound_rhs_impl(const RunTrace& trace, double mu, ScheduleKind kind,
                                   const char* op) {
    require(trace.has_history && !trace.grad_norm_sq_hist.empty(),
            std::string(op) + ": trace lacks per-step gradient norms (record_history)");
    require(mu > 0.0, std::string(op) + ": mu must be positive");

    ScheduleAccumulator sched(kind);
    std::vector<double> bounds;
    bounds.reserve(trace.grad_norm_sq_hist.size());
    double num = 0.0;
    for (double gsq : trace.grad_norm_sq_hist) {
        sched.advance();
        num += (sched.a * sched.a / (mu * sched.Gamma)) * gsq;
        bounds.push_back(num / (2.0 * sched.A));
    }
    return bounds;
}

}  // namespace

std::vector<double> theorem2_bound_rhs(const RunTrace& trace, double mu, ScheduleKind kind) {
    return bound_rhs_impl(trace, mu, kind, "theorem2_bound_rhs");
}

std::vector<double> theorem1_bound_rhs(const RunTrace& trace, double mu, ScheduleKind kind) {
    return bound_rhs_impl(trace, mu, kind, "theorem1_bound_rhs");
}

namespace {

SlopeFit ols_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    SlopeFit fit;
    fit.n_points = static_cast<long>(xs.size());
    if (xs.size() < 2) return fit;
    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    require(sxx > 0.0, "loglog_slope: degenerate window (single abscissa)");
    fit.slope = sxy / sxx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace

SlopeFit loglog_slope(const std::vector<double>& gaps, long t_lo, long t_hi) {
    require(t_lo >= 1, "loglog_slope: t_lo must be >= 1");
    require(t_hi >= 2 * t_lo, "loglog_slope: window too narrow (t_hi < 2 t_lo)");
    require(t_hi <= static_cast<long>(gaps.size()), "loglog_slope: t_hi beyond sequence length");
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(t_hi - t_lo + 1));
    for (long t = t_lo; t <= t_hi; ++t) {
        double g = gaps[static_cast<std::size_t>(t - 1)];
        require(g > 0.0, "loglog_slope: nonpositive gap at t = " + std::to_string(t));
        xs.push_back(std::log(static_cast<double>(t)));
        ys.push_back(std::log(g));
    }
    return ols_loglog(xs, ys);
}

SlopeFit loglog_slope_at(const std::vector<long>& ts, const std::vector<double>& gaps, long t_lo,
                         long t_hi) {
    require(ts.size() == gaps.size(), "loglog_slope_at: length mismatch");
    require(t_lo >= 1 && t_hi >= 2 * t_lo, "loglog_slope_at: invalid window");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < t_lo || ts[i] > t_hi) continue;
        require(gaps[i] > 0.0,
                "loglog_slope_at: nonpositive gap at t = " + std::to_string(ts[i]));
        xs.push_back(std::log(static_cast<double>(ts[i])));
        ys.push_back(std::log(gaps[i]));
    }
    require(xs.size() >= 2, "loglog_slope_at: fewer than two points in window");
    return ols_loglog(xs, ys);
}

SlopeFit fit_gap_slope(const std::vector<long>& ts, std::vector<double> gaps, double floor_at,
                       long t_lo, long t_hi) {
    if (floor_at > 0.0)
        for (double& g : gaps) g = std::max(g, floor_at);
    return loglog_slope_at(ts, gaps, t_lo, t_hi);
}

double verify_lemma3(const RunTrace& trace) {
    require(trace.has_history, "verify_lemma3: trace lacks inner iterates");
    require(trace.algo == Algo::scpda, "verify_lemma3: trace is not an SC-PDA run");
    require(!trace.w_plus_hist.empty() && trace.w_plus_hist.size() == trace.w_hist.size() &&
                trace.g_hist.size() == trace.w_hist.size() &&
                trace.f_hist.size() == trace.w_hist.size(),
            "verify_lemma3: incomplete history");

    ScheduleAccumulator sched(trace.schedule);
    sched.advance();  // t = 1
    double max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < trace.w_hist.size(); ++k) {
        double A_prev = sched.A;  // A_{t-1}
        sched.advance();          // weights at t = k+1
        double a_t = sched.a;

        const Vec& g_t = trace.g_hist[k];
        const Vec& w_t = trace.w_hist[k];
        const Vec& w_plus_t = trace.w_plus_hist[k];
        const Vec& w_plus_prev = trace.w_plus_hist[k - 1];

        double lhs = a_t * (dot(g_t, w_t) - dot(g_t, w_plus_t));
        double rhs = A_prev * (trace.f_hist[k - 1] - trace.f_hist[k]) +
                     a_t * (dot(g_t, w_plus_prev) - dot(g_t, w_plus_t));
        max_violation = std::max(max_violation, lhs - rhs);
    }
    return max_violation;
}

}  // namespace dualavg
