#ifndef DUALAVG_OPTIMIZERS_HPP
#define DUALAVG_OPTIMIZERS_HPP

#include <string>

#include "dualavg/problems.hpp"
#include "dualavg/projections.hpp"
#include "dualavg/schedules.hpp"
#include "dualavg/vec.hpp"

namespace dualavg {

enum class Algo { gda, scpda, pegasos, papsg, scrda, da };

std::string to_string(Algo a);
Algo algo_from_string(const std::string& name);

namespace testing {
// Fault-injection hook for mutation sanity checks: flips the sign of the
// gradient term inside gda_step. Never set outside verification tooling.
extern bool gda_sign_fault;
}  // namespace testing

/// Gradient descent averaging. The iterate is the projected gamma-weighted
/// average of per-iterate gradient steps:
///   w_{t+1} = P[ (1/Gamma_t) sum_k (gamma_k w_k - (a_k/mu) g_k) ]
/// maintained incrementally through weighted_sum. The a_k-weighted average
/// of past iterates is accumulated for the averaged output.
struct GdaState {
    Vec w;             // current iterate w_t, feasible
    Vec weighted_sum;  // S_t = sum_k (gamma_k w_k - (a_k/mu) g_k)
    ScheduleAccumulator sched;
    Vec averaged_num;           // sum_k a_k w_k
    double averaged_den = 0.0;  // A_t of the consumed iterates
};

GdaState make_gda(const Vec& init, const FeasibleSet& set, ScheduleKind kind);

/// One step; g must be the (sub)gradient at state.w.
void gda_step(GdaState& state, const FeasibleSet& set, double mu, const GradientSample& g);

/// a_k-weighted average of all consumed iterates, sum_k a_k w_k / A_t.
Vec gda_averaged_output(const GdaState& state);

/// Strongly convex primal-dual averaging: the GDA inner update produces
/// w_t^+, and the returned iterate is the primal average
///   w_{t+1} = (A_t/A_{t+1}) w_t + (a_{t+1}/A_{t+1}) w_t^+.
/// Gradients are evaluated at the primal average w_t.
struct ScPdaState {
    Vec w;             // primal average w_t: query and output point
    Vec w_plus;        // most recent inner iterate w_t^+
    Vec weighted_sum;  // same accumulation as GdaState, driven by gradients at w_t
    ScheduleAccumulator sched;
};

ScPdaState make_scpda(const Vec& init, const FeasibleSet& set, ScheduleKind kind);

void scpda_step(ScPdaState& state, const FeasibleSet& set, double mu, const GradientSample& g);

/// Projected subgradient with step size 1/(mu t), individual output.
struct PegasosState {
    Vec w;
    long t = 1;
};

PegasosState make_pegasos(const Vec& init, const FeasibleSet& set);

void pegasos_step(PegasosState& state, const FeasibleSet& set, double mu, const GradientSample& g);

/// Projected subgradient coupled with primal averaging; the strongly convex
/// inner update shrinks by delta_t = 1/(1 + a_t mu):
///   w_t^+ = P[ delta_t w_{t-1}^+ - a_t delta_t (g - mu w_t) ]
struct PaPsgState {
    Vec w;            // primal average w_t
    Vec w_plus_prev;  // w_{t-1}^+
    ScheduleAccumulator sched;
};

PaPsgState make_papsg(const Vec& init, const FeasibleSet& set, ScheduleKind kind);

void papsg_step(PaPsgState& state, const FeasibleSet& set, double mu, const GradientSample& g);

/// Regularized dual averaging with r(w) = (mu/2)||w||^2; the argmin has the
/// closed form w_{t+1} = P[-grad_sum/(mu t)]. Feed it loss-part gradients
/// only (the regularizer is handled by the closed form).
struct ScRdaState {
    Vec grad_sum;  // sum of loss-part gradients
    long t = 1;
};

ScRdaState make_scrda(long dim);

Vec scrda_step(ScRdaState& state, const FeasibleSet& set, double mu, const GradientSample& loss_g);

/// Plain weighted dual averaging in projection form,
///   w_{t+1} = P[-sum_k a_k g_k / gamma_t],  gamma_t = gamma_step * sqrt(t).
struct DaState {
    Vec grad_sum;  // sum_k a_k g_k
    ScheduleAccumulator sched;
    double gamma_step = 1.0;
};

DaState make_da(long dim, ScheduleKind kind, double gamma_step);

Vec da_step(DaState& state, const FeasibleSet& set, const GradientSample& g);

}  // namespace dualavg

#endif
