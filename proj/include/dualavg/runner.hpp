#ifndef DUALAVG_RUNNER_HPP
#define DUALAVG_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dualavg/analysis.hpp"
#include "dualavg/optimizers.hpp"
#include "dualavg/problems.hpp"
#include "dualavg/projections.hpp"

namespace dualavg {

struct RunConfig {
    Algo algo = Algo::scpda;
    ScheduleKind schedule = ScheduleKind::linear;
    long iters = 1000;
    std::uint64_t seed = 1;
    bool stochastic = false;
    Vec init;                 // empty -> zero vector (projected onto the set)
    double gamma_step = 1.0;  // da only
    std::string problem_id;

    bool record_history = false;           // per-step w, w^+, g, f
    bool record_mean_f = false;            // gda: running a_k-weighted mean of f
    bool monitor_stoch_deviation = false;  // compare g_hat to the full gradient at checkpoints
};

/// Log-spaced checkpoint iterations: every t up to 100, then about 100 per
/// decade, always including the final iteration.
std::vector<long> checkpoint_schedule(long iters);

/// Drives one optimizer for cfg.iters steps. Gaps and distances are filled
/// when a reference is supplied. The trace's f/gap columns always refer to
/// the point the gradient was evaluated at; averaged outputs of GDA are
/// recorded in the trace's extra gap streams.
RunTrace run_optimizer(const ProblemInstance& problem, const FeasibleSet& set,
                       const RunConfig& cfg, const ReferenceSolution* ref = nullptr);

/// CSV with header iter,algo,schedule,seed,f,gap,bound_rhs,grad_norm,time_ns.
std::string trace_to_csv(const RunTrace& trace);

/// CSV body with the time_ns column removed, for determinism comparisons.
std::string strip_time_column(const std::string& csv);

}  // namespace dualavg

#endif
