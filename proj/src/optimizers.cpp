#include "dualavg/optimizers.hpp"

#include <cmath>

namespace dualavg {

namespace testing {
bool gda_sign_fault = false;
}

std::string to_string(Algo a) {
    switch (a) {
        case Algo::gda: return "gda";
        case Algo::scpda: return "scpda";
        case Algo::pegasos: return "pegasos";
        case Algo::papsg: return "papsg";
        case Algo::scrda: return "scrda";
        case Algo::da: return "da";
    }
    return "?";
}

Algo algo_from_string(const std::string& name) {
    if (name == "gda") return Algo::gda;
    if (name == "scpda") return Algo::scpda;
    if (name == "pegasos") return Algo::pegasos;
    if (name == "papsg") return Algo::papsg;
    if (name == "scrda") return Algo::scrda;
    if (name == "da") return Algo::da;
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

void check_grad(const Vec& w, const GradientSample& g, const char* op) {
    require(g.vector.size() == w.size(), std::string(op) + ": gradient dimension mismatch");
}

}  // namespace

GdaState make_gda(const Vec& init, const FeasibleSet& set, ScheduleKind kind) {
    GdaState s;
    s.w = project(set, init);
    s.weighted_sum.assign(init.size(), 0.0);
    s.averaged_num.assign(init.size(), 0.0);
    s.sched = ScheduleAccumulator(kind);
    s.sched.advance();  // weights for the first consumed iterate w_1
    return s;
}

void gda_step(GdaState& state, const FeasibleSet& set, double mu, const GradientSample& g) {
    check_grad(state.w, g, "gda_step");
    require(state.sched.Gamma > 0.0, "gda_step: schedule not advanced (Gamma_t = 0)");
    require(mu > 0.0, "gda_step: mu must be positive");

    double gamma_t = state.sched.gamma;
    double grad_coef = state.sched.a / mu;
    if (testing::gda_sign_fault) grad_coef = -grad_coef;

    for (std::size_t i = 0; i < state.w.size(); ++i)
        state.weighted_sum[i] += gamma_t * state.w[i] - grad_coef * g.vector[i];

    double a_t = state.sched.a;
    for (std::size_t i = 0; i < state.w.size(); ++i) state.averaged_num[i] += a_t * state.w[i];
    state.averaged_den += a_t;

    Vec target(state.w.size());
    for (std::size_t i = 0; i < state.w.size(); ++i)
        target[i] = state.weighted_sum[i] / state.sched.Gamma;
    state.w = project(set, target);

    state.sched.advance();
}

Vec gda_averaged_output(const GdaState& state) {
    require(state.averaged_den > 0.0, "gda_averaged_output: no steps taken");
    Vec out(state.averaged_num.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = state.averaged_num[i] / state.averaged_den;
    return out;
}

ScPdaState make_scpda(const Vec& init, const FeasibleSet& set, ScheduleKind kind) {
    ScPdaState s;
    s.w = project(set, init);
    s.w_plus = s.w;
    s.weighted_sum.assign(init.size(), 0.0);
    s.sched = ScheduleAccumulator(kind);
    s.sched.advance();
    return s;
}

void scpda_step(ScPdaState& state, const FeasibleSet& set, double mu, const GradientSample& g) {
    check_grad(state.w, g, "scpda_step");
    require(state.sched.Gamma > 0.0, "scpda_step: schedule not advanced (Gamma_t = 0)");
    require(mu > 0.0, "scpda_step: mu must be positive");

    double gamma_t = state.sched.gamma;
    double grad_coef = state.sched.a / mu;
    for (std::size_t i = 0; i < state.w.size(); ++i)
        state.weighted_sum[i] += gamma_t * state.w[i] - grad_coef * g.vector[i];

    Vec target(state.w.size());
    for (std::size_t i = 0; i < state.w.size(); ++i)
        target[i] = state.weighted_sum[i] / state.sched.Gamma;
    state.w_plus = project(set, target);

    // A_{t+1} = A_t + a_{t+1} precedes the primal averaging combination.
    double A_prev = state.sched.A;
    state.sched.advance();
    double c_old = A_prev / state.sched.A;
    double c_new = state.sched.a / state.sched.A;
    for (std::size_t i = 0; i < state.w.size(); ++i)
        state.w[i] = c_old * state.w[i] + c_new * state.w_plus[i];
}

PegasosState make_pegasos(const Vec& init, const FeasibleSet& set) {
    PegasosState s;
    s.w = project(set, init);
    s.t = 1;
    return s;
}

void pegasos_step(PegasosState& state, const FeasibleSet& set, double mu, const GradientSample& g) {
    check_grad(state.w, g, "pegasos_step");
    require(mu > 0.0, "pegasos_step: mu must be positive");
    double step = 1.0 / (mu * static_cast<double>(state.t));
    Vec target(state.w.size());
    for (std::size_t i = 0; i < state.w.size(); ++i)
        target[i] = state.w[i] - step * g.vector[i];
    state.w = project(set, target);
    ++state.t;
}

PaPsgState make_papsg(const Vec& init, const FeasibleSet& set, ScheduleKind kind) {
    PaPsgState s;
    s.w = project(set, init);
    s.w_plus_prev = s.w;
    s.sched = ScheduleAccumulator(kind);
    s.sched.advance();
    return s;
}

void papsg_step(PaPsgState& state, const FeasibleSet& set, double mu, const GradientSample& g) {
    check_grad(state.w, g, "papsg_step");
    require(state.sched.t >= 1, "papsg_step: schedule not advanced");
    require(mu > 0.0, "papsg_step: mu must be positive");

    double a_t = state.sched.a;
    double delta_t = 1.0 / (1.0 + a_t * mu);

    Vec target(state.w.size());
    for (std::size_t i = 0; i < state.w.size(); ++i)
        target[i] = delta_t * state.w_plus_prev[i] -
                    a_t * delta_t * (g.vector[i] - mu * state.w[i]);
    Vec w_plus = project(set, target);

    double A_prev = state.sched.A;
    state.sched.advance();
    double c_old = A_prev / state.sched.A;
    double c_new = state.sched.a / state.sched.A;
    for (std::size_t i = 0; i < state.w.size(); ++i)
        state.w[i] = c_old * state.w[i] + c_new * w_plus[i];
    state.w_plus_prev = std::move(w_plus);
}

ScRdaState make_scrda(long dim) {
    require(dim >= 1, "make_scrda: dim must be positive");
    ScRdaState s;
    s.grad_sum.assign(static_cast<std::size_t>(dim), 0.0);
    s.t = 1;
    return s;
}

Vec scrda_step(ScRdaState& state, const FeasibleSet& set, double mu, const GradientSample& loss_g) {
    check_grad(state.grad_sum, loss_g, "scrda_step");
    require(mu > 0.0, "scrda_step: mu must be positive");
    for (std::size_t i = 0; i < state.grad_sum.size(); ++i)
        state.grad_sum[i] += loss_g.vector[i];
    double denom = mu * static_cast<double>(state.t);
    Vec target(state.grad_sum.size());
    for (std::size_t i = 0; i < state.grad_sum.size(); ++i)
        target[i] = -state.grad_sum[i] / denom;
    ++state.t;
    return project(set, target);
}

DaState make_da(long dim, ScheduleKind kind, double gamma_step) {
    require(dim >= 1, "make_da: dim must be positive");
    require(gamma_step > 0.0, "make_da: gamma_step must be positive");
    DaState s;
    s.grad_sum.assign(static_cast<std::size_t>(dim), 0.0);
    s.sched = ScheduleAccumulator(kind);
    s.sched.advance();
    s.gamma_step = gamma_step;
    return s;
}

Vec da_step(DaState& state, const FeasibleSet& set, const GradientSample& g) {
    check_grad(state.grad_sum, g, "da_step");
    require(state.sched.t >= 1, "da_step: schedule not advanced");
    double a_t = state.sched.a;
    for (std::size_t i = 0; i < state.grad_sum.size(); ++i)
        state.grad_sum[i] += a_t * g.vector[i];
    double gamma_t = state.gamma_step * std::sqrt(static_cast<double>(state.sched.t));
    require(gamma_t > 0.0, "da_step: gamma_t must be positive");
    Vec target(state.grad_sum.size());
    for (std::size_t i = 0; i < state.grad_sum.size(); ++i)
        target[i] = -state.grad_sum[i] / gamma_t;
    state.sched.advance();
    return project(set, target);
}

}  // namespace dualavg
