#include "dualavg/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace dualavg {

std::vector<long> checkpoint_schedule(long iters) {
    require(iters >= 1, "checkpoint_schedule: iters must be >= 1");
    std::vector<long> cps;
    for (long t = 1; t <= std::min<long>(iters, 100); ++t) cps.push_back(t);
    if (iters > 100) {
        double exponent = 2.0;
        while (true) {
            long t = static_cast<long>(std::llround(std::pow(10.0, exponent)));
            if (t > iters) break;
            if (t > cps.back()) cps.push_back(t);
            exponent += 0.01;
        }
        if (cps.back() != iters) cps.push_back(iters);
    }
    return cps;
}

namespace {

// Uniform stepping facade over the per-algorithm states.
struct Driver {
    Algo algo;
    double mu;
    GdaState gda;
    ScPdaState scpda;
    PegasosState pegasos;
    PaPsgState papsg;
    ScRdaState scrda;
    DaState da;
    Vec current;  // scrda/da iterate

    Driver(Algo a, const ProblemInstance& problem, const FeasibleSet& set, const RunConfig& cfg,
           const Vec& init)
        : algo(a), mu(problem.mu) {
        switch (algo) {
            case Algo::gda: gda = make_gda(init, set, cfg.schedule); break;
            case Algo::scpda: scpda = make_scpda(init, set, cfg.schedule); break;
            case Algo::pegasos: pegasos = make_pegasos(init, set); break;
            case Algo::papsg: papsg = make_papsg(init, set, cfg.schedule); break;
            case Algo::scrda:
                scrda = make_scrda(problem.dim);
                current = project(set, init);
                break;
            case Algo::da:
                da = make_da(problem.dim, cfg.schedule, cfg.gamma_step);
                current = project(set, init);
                break;
        }
    }

    const Vec& query() const {
        switch (algo) {
            case Algo::gda: return gda.w;
            case Algo::scpda: return scpda.w;
            case Algo::pegasos: return pegasos.w;
            case Algo::papsg: return papsg.w;
            default: return current;
        }
    }

    const ScheduleAccumulator* sched() const {
        switch (algo) {
            case Algo::gda: return &gda.sched;
            case Algo::scpda: return &scpda.sched;
            case Algo::papsg: return &papsg.sched;
            case Algo::da: return &da.sched;
            default: return nullptr;
        }
    }

    bool tracks_bound() const { return algo == Algo::gda || algo == Algo::scpda; }

    void step(const FeasibleSet& set, const GradientSample& g) {
        switch (algo) {
            case Algo::gda: gda_step(gda, set, mu, g); break;
            case Algo::scpda: scpda_step(scpda, set, mu, g); break;
            case Algo::pegasos: pegasos_step(pegasos, set, mu, g); break;
            case Algo::papsg: papsg_step(papsg, set, mu, g); break;
            case Algo::scrda: {
                // Eq. for RDA accumulates loss-part gradients; strip the
                // exact regularizer term from the sampled full gradient.
                GradientSample loss_g;
                loss_g.vector.resize(g.vector.size());
                for (std::size_t i = 0; i < g.vector.size(); ++i)
                    loss_g.vector[i] = g.vector[i] - mu * current[i];
                loss_g.norm_sq = norm_sq(loss_g.vector);
                loss_g.sampled_index = g.sampled_index;
                current = scrda_step(scrda, set, mu, loss_g);
                break;
            }
            case Algo::da: current = da_step(da, set, g); break;
        }
    }
};

}  // namespace

RunTrace run_optimizer(const ProblemInstance& problem, const FeasibleSet& set,
                       const RunConfig& cfg, const ReferenceSolution* ref) {
    require(cfg.iters >= 1, "run_optimizer: iteration budget must be >= 1");
    require(!cfg.stochastic || problem.kind == ProblemInstance::Kind::svm_hinge,
            "run_optimizer: stochastic oracle requires an svm_hinge problem");

    Vec init = cfg.init;
    if (init.empty()) init.assign(static_cast<std::size_t>(problem.dim), 0.0);
    require(static_cast<long>(init.size()) == problem.dim,
            "run_optimizer: init dimension mismatch");

    RunTrace trace;
    trace.algo = cfg.algo;
    trace.schedule = cfg.schedule;
    trace.seed = cfg.seed;
    trace.problem_id = cfg.problem_id;
    trace.stochastic = cfg.stochastic;
    trace.mu = problem.mu;
    if (ref) {
        trace.f_star = ref->f_star;
        trace.ref_residual = ref->residual;
    }

    Driver driver(cfg.algo, problem, set, cfg, init);
    Rng rng(cfg.seed);

    std::vector<long> cps = checkpoint_schedule(cfg.iters);
    std::size_t cp_idx = 0;

    double bound_num = 0.0;
    double mean_f_num = 0.0;
    bool want_mean_f = cfg.record_mean_f && cfg.algo == Algo::gda;
    bool have_w_star = ref && !ref->w_star.empty();
    Vec uniform_num;  // gda: unweighted sum of consumed iterates
    if (cfg.algo == Algo::gda) uniform_num.assign(init.size(), 0.0);

    auto start = std::chrono::steady_clock::now();
    for (long t = 1; t <= cfg.iters; ++t) {
        const Vec& w = driver.query();
        GradientSample g = cfg.stochastic ? stochastic_subgradient(problem, w, rng)
                                          : full_subgradient(problem, w);
        trace.diagnostics.observe_grad_norm(std::sqrt(g.norm_sq));

        double bound = kNaN;
        double A_t = kNaN;
        if (const ScheduleAccumulator* sched = driver.sched(); sched && driver.tracks_bound()) {
            bound_num += (sched->a * sched->a / (problem.mu * sched->Gamma)) * g.norm_sq;
            bound = bound_num / (2.0 * sched->A);
            A_t = sched->A;
        } else if (const ScheduleAccumulator* s2 = driver.sched()) {
            A_t = s2->A;
        }

        bool at_cp = cp_idx < cps.size() && cps[cp_idx] == t;
        double f_w = kNaN;
        if (at_cp || cfg.record_history || want_mean_f) f_w = objective_value(problem, w);
        if (want_mean_f) {
            const ScheduleAccumulator* sched = driver.sched();
            mean_f_num += sched->a * f_w;
        }

        if (cfg.record_history) {
            trace.w_hist.push_back(w);
            trace.g_hist.push_back(g.vector);
            trace.f_hist.push_back(f_w);
            trace.grad_norm_sq_hist.push_back(g.norm_sq);
        }
        if (cfg.algo == Algo::gda) axpy(1.0, w, uniform_num);

        double dist_sq_val = kNaN;
        if (at_cp && have_w_star) {
            dist_sq_val = dist_sq(w, ref->w_star);
            trace.diagnostics.observe_dist_to_opt(std::sqrt(dist_sq_val));
        }
        if (at_cp && cfg.monitor_stoch_deviation && cfg.stochastic) {
            GradientSample full = full_subgradient(problem, w);
            double dev = std::sqrt(dist_sq(g.vector, full.vector));
            trace.max_stoch_deviation = std::max(trace.max_stoch_deviation, dev);
        }

        driver.step(set, g);

        if (cfg.record_history && cfg.algo == Algo::scpda)
            trace.w_plus_hist.push_back(driver.scpda.w_plus);

        if (at_cp) {
            TracePoint p;
            p.t = t;
            p.f = f_w;
            p.gap = ref ? f_w - ref->f_star : kNaN;
            p.bound_rhs = bound;
            p.grad_norm_sq = g.norm_sq;
            p.dist_to_opt_sq = dist_sq_val;
            p.time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
            trace.points.push_back(p);
            ++cp_idx;

            if (cfg.algo == Algo::gda) {
                Vec avg = gda_averaged_output(driver.gda);
                trace.averaged_gap.push_back(
                    ref ? objective_value(problem, avg) - ref->f_star : kNaN);
                Vec uni = scaled(uniform_num, 1.0 / static_cast<double>(t));
                trace.uniform_avg_gap.push_back(
                    ref ? objective_value(problem, uni) - ref->f_star : kNaN);
                if (want_mean_f) trace.mean_f_gap.push_back(mean_f_num / A_t - trace.f_star);
            }
        }
    }
    trace.has_history = cfg.record_history;
    return trace;
}

std::string trace_to_csv(const RunTrace& trace) {
    std::string out = "iter,algo,schedule,seed,f,gap,bound_rhs,grad_norm,time_ns\n";
    char buf[256];
    const char* algo = nullptr;
    std::string algo_s = to_string(trace.algo);
    std::string sched_s =
        (trace.algo == Algo::pegasos || trace.algo == Algo::scrda) ? "-" : to_string(trace.schedule);
    algo = algo_s.c_str();
    for (const TracePoint& p : trace.points) {
        std::snprintf(buf, sizeof buf, "%ld,%s,%s,%llu,%.17g,%.17g,%.17g,%.17g,%lld\n", p.t, algo,
                      sched_s.c_str(), static_cast<unsigned long long>(trace.seed), p.f, p.gap,
                      p.bound_rhs, std::sqrt(p.grad_norm_sq),
                      static_cast<long long>(p.time_ns));
        out += buf;
    }
    return out;
}

std::string strip_time_column(const std::string& csv) {
    std::string out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t eol = csv.find('\n', pos);
        if (eol == std::string::npos) eol = csv.size();
        std::string_view line(csv.data() + pos, eol - pos);
        std::size_t last_comma = line.rfind(',');
        out.append(line.substr(0, last_comma == std::string_view::npos ? line.size() : last_comma));
        out += '\n';
        pos = eol + 1;
    }
    return out;
}

}  // namespace dualavg
