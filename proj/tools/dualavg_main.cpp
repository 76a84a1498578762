#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dualavg/analysis.hpp"
#include "dualavg/dataio.hpp"
#include "dualavg/runner.hpp"
#include "dualavg/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dualavg;

namespace {

struct ProblemSpec {
    std::string raw;
    ProblemInstance problem;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) next = s.size();
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

ProblemInstance parse_problem(const std::string& spec, double mu, long dim_override,
                              long subsample_n, std::uint64_t subsample_seed) {
    if (spec.rfind("libsvm:", 0) == 0) {
        std::string path = spec.substr(7);
        Dataset data = load_libsvm_file(path);
        if (subsample_n > 0) data = subsample(data, subsample_n, subsample_seed);
        return to_problem(data, mu, dim_override);
    }
    if (spec.rfind("synth-svm:", 0) == 0) {
        auto parts = split(spec.substr(10), ',');
        require(parts.size() == 3 || parts.size() == 4,
                "synth-svm spec must be synth-svm:n,d,seed[,margin]");
        long n = std::stol(parts[0]);
        long d = std::stol(parts[1]);
        std::uint64_t seed = std::stoull(parts[2]);
        double margin = parts.size() == 4 ? std::stod(parts[3]) : 1.0;
        ProblemInstance p = make_synthetic_svm(n, d, margin, seed);
        p.mu = mu;
        require(mu > 0.0, "mu must be positive");
        return p;
    }
    if (spec.rfind("quad:", 0) == 0) {
        auto parts = split(spec.substr(5), ',');
        require(parts.size() == 1 || parts.size() == 2, "quad spec must be quad:d[,seed]");
        long d = std::stol(parts[0]);
        require(d >= 1, "quad dimension must be positive");
        std::uint64_t seed = parts.size() == 2 ? std::stoull(parts[1]) : 1;
        Rng rng(seed);
        Vec center(static_cast<std::size_t>(d));
        for (auto& x : center) x = rng.gaussian();
        return ProblemInstance::quadratic(mu, center);
    }
    throw std::invalid_argument("unknown problem spec: " + spec +
                                " (expected libsvm:PATH, synth-svm:n,d,seed or quad:d[,seed])");
}

FeasibleSet parse_set(const std::string& spec, const ProblemInstance& problem) {
    if (spec == "free") return FeasibleSet::whole_space();
    if (spec == "ball:auto")
        return FeasibleSet::l2_ball(suggested_ball_radius(problem));
    if (spec.rfind("ball:", 0) == 0) return FeasibleSet::l2_ball(std::stod(spec.substr(5)));
    if (spec.rfind("box:", 0) == 0) {
        auto parts = split(spec.substr(4), ':');
        require(parts.size() == 2, "box spec must be box:lo:hi");
        double lo = std::stod(parts[0]);
        double hi = std::stod(parts[1]);
        std::size_t d = static_cast<std::size_t>(problem.dim);
        return FeasibleSet::box(Vec(d, lo), Vec(d, hi));
    }
    throw std::invalid_argument("unknown set spec: " + spec);
}

Vec parse_init(const std::string& spec, long dim) {
    std::size_t d = static_cast<std::size_t>(dim);
    if (spec.empty() || spec == "zero") return Vec(d, 0.0);
    if (spec.rfind("const:", 0) == 0) return Vec(d, std::stod(spec.substr(6)));
    if (spec.rfind("gauss:", 0) == 0) {
        Rng rng(std::stoull(spec.substr(6)));
        Vec v(d);
        for (auto& x : v) x = rng.gaussian();
        return v;
    }
    throw std::invalid_argument("unknown init spec: " + spec +
                                " (expected zero, const:VALUE or gauss:SEED)");
}

ReferenceSolution compute_reference(const ProblemInstance& problem, const FeasibleSet& set,
                                    double tol, long budget) {
    return reference_optimum(problem, set, tol, budget);
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
}

double final_canonical_gap(const RunTrace& trace) {
    if (trace.points.empty()) return kNaN;
    if (trace.algo == Algo::gda && !trace.averaged_gap.empty()) return trace.averaged_gap.back();
    return trace.points.back().gap;
}

json trace_summary(const RunTrace& trace) {
    json j;
    j["algo"] = to_string(trace.algo);
    j["seed"] = trace.seed;
    j["final_gap"] = final_canonical_gap(trace);
    j["final_individual_gap"] = trace.points.empty() ? kNaN : trace.points.back().gap;
    j["max_grad_norm"] = trace.diagnostics.max_grad_norm;
    j["max_dist_to_opt"] = trace.diagnostics.max_dist_to_opt;
    if (trace.stochastic) j["max_stoch_deviation"] = trace.max_stoch_deviation;
    return j;
}

int cmd_verify_impl(const std::string& selector, bool inject_fault) {
    if (inject_fault) testing::gda_sign_fault = true;
    auto results = run_verification(selector);
    if (results.empty()) {
        std::cerr << "no checks match selector '" << selector << "'\n";
        return 2;
    }
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("%-28s %s  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.detail.c_str());
        all_ok = all_ok && r.passed;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dualavg: dual/primal averaging optimizers with rate verification"};
    app.require_subcommand(1);

    std::string problem_spec = "synth-svm:200,20,1";
    std::string set_spec = "free";
    std::string algo_name = "scpda";
    std::string algos_name = "gda,scpda,pegasos,papsg,scrda";
    std::string schedule_name = "linear";
    std::string init_spec;
    std::string out_dir = ".";
    std::string seeds_spec = "1,2,3,4,5";
    std::string selector;
    double mu = 1.0;
    double gamma_step = 1.0;
    double ref_tol = 1e-10;
    long ref_iters = 0;  // 0 -> auto
    long iters = 10000;
    long dim_override = 0;
    long subsample_n = 0;
    std::uint64_t seed = 1;
    std::uint64_t subsample_seed = 1;
    bool stochastic = false;
    bool no_ref = false;
    bool inject_fault = false;

    auto add_problem_flags = [&](CLI::App* cmd) {
        cmd->add_option("--problem", problem_spec,
                        "libsvm:PATH | synth-svm:n,d,seed[,margin] | quad:d[,seed]");
        cmd->add_option("--mu", mu, "strong convexity modulus");
        cmd->add_option("--set", set_spec, "free | ball:R | ball:auto | box:lo:hi");
        cmd->add_option("--dim", dim_override, "override inferred feature dimension");
        cmd->add_option("--subsample", subsample_n, "subsample the dataset to n examples");
        cmd->add_option("--subsample-seed", subsample_seed, "seed for subsampling");
        cmd->add_option("--ref-tol", ref_tol, "reference certification tolerance");
        cmd->add_option("--ref-iters", ref_iters, "reference iteration budget (0 = auto)");
    };

    CLI::App* run = app.add_subcommand("run", "run one algorithm, write a CSV trace");
    add_problem_flags(run);
    run->add_option("--algo", algo_name, "gda|scpda|pegasos|papsg|scrda|da");
    run->add_option("--schedule", schedule_name, "linear|constant");
    run->add_option("--iters", iters, "iteration budget");
    run->add_option("--seed", seed, "seed for the stochastic oracle");
    run->add_option("--init", init_spec, "zero | const:VALUE | gauss:SEED");
    run->add_option("--gamma-step", gamma_step, "da stepsize scale (gamma_t = c sqrt(t))");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--stochastic", stochastic, "use the sampled-example subgradient oracle");
    run->add_flag("--no-ref", no_ref, "skip reference computation (gaps become nan)");

    CLI::App* bench = app.add_subcommand("bench", "run algorithms x seeds, write summary");
    add_problem_flags(bench);
    bench->add_option("--algos", algos_name, "comma-separated algorithm list");
    bench->add_option("--schedule", schedule_name, "linear|constant");
    bench->add_option("--iters", iters, "iteration budget per cell");
    bench->add_option("--seeds", seeds_spec, "comma-separated seed list");
    bench->add_option("--init", init_spec, "zero | const:VALUE | gauss:SEED");
    bench->add_option("--gamma-step", gamma_step, "da stepsize scale");
    bench->add_option("--out", out_dir, "output directory");
    bench->add_flag("--stochastic", stochastic, "use the sampled-example subgradient oracle");

    CLI::App* refc = app.add_subcommand("ref", "compute a certified reference optimum");
    add_problem_flags(refc);
    refc->add_option("--out", out_dir, "output directory");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant verification suite");
    verify->add_option("--suite", selector, "substring filter for check names");
    verify->add_flag("--inject-fault", inject_fault,
                     "flip a sign inside gda_step (mutation sanity hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify_impl(selector, inject_fault);

        ProblemInstance problem =
            parse_problem(problem_spec, mu, dim_override, subsample_n, subsample_seed);
        FeasibleSet set = parse_set(set_spec, problem);
        fs::create_directories(out_dir);

        if (refc->parsed()) {
            long budget = ref_iters > 0 ? ref_iters : 2000000;
            ReferenceSolution ref = compute_reference(problem, set, ref_tol, budget);
            json j;
            j["f_star"] = ref.f_star;
            j["residual"] = ref.residual;
            j["certified"] = ref.certified;
            j["iters_used"] = ref.iters_used;
            write_file(fs::path(out_dir) / "reference.json", j.dump(2) + "\n");
            std::printf("f_star = %.12g  residual = %.3g  certified = %s  iters = %ld\n",
                        ref.f_star, ref.residual, ref.certified ? "yes" : "no", ref.iters_used);
            return 0;
        }

        if (run->parsed()) {
            RunConfig cfg;
            cfg.algo = algo_from_string(algo_name);
            cfg.schedule = schedule_from_string(schedule_name);
            cfg.iters = iters;
            cfg.seed = seed;
            cfg.stochastic = stochastic;
            cfg.init = parse_init(init_spec, problem.dim);
            cfg.gamma_step = gamma_step;
            cfg.problem_id = problem_spec;

            ReferenceSolution ref;
            bool have_ref = false;
            if (!no_ref) {
                long budget = ref_iters > 0 ? ref_iters : std::min<long>(10 * iters, 2000000);
                ref = compute_reference(problem, set, ref_tol, budget);
                have_ref = true;
            }
            RunTrace trace = run_optimizer(problem, set, cfg, have_ref ? &ref : nullptr);
            fs::path out = fs::path(out_dir) / ("trace_" + to_string(cfg.algo) + "_" +
                                                to_string(cfg.schedule) + "_s" +
                                                std::to_string(seed) + ".csv");
            write_file(out, trace_to_csv(trace));
            std::printf("wrote %s (%zu checkpoints)\n", out.string().c_str(),
                        trace.points.size());
            if (have_ref && !trace.points.empty())
                std::printf("final gap = %.6g\n", trace.points.back().gap);
            return 0;
        }

        if (bench->parsed()) {
            std::vector<Algo> algos;
            for (const auto& a : split(algos_name, ',')) algos.push_back(algo_from_string(a));
            std::vector<std::uint64_t> seeds;
            for (const auto& s : split(seeds_spec, ',')) seeds.push_back(std::stoull(s));
            require(!algos.empty() && !seeds.empty(), "bench: empty algo or seed list");

            long budget = ref_iters > 0 ? ref_iters : std::min<long>(10 * iters, 2000000);
            ReferenceSolution ref = compute_reference(problem, set, ref_tol, budget);

            struct Cell {
                Algo algo;
                std::uint64_t seed;
                RunTrace trace;
                bool failed = false;
                std::string error;
            };
            std::vector<Cell> cells;
            for (Algo a : algos)
                for (std::uint64_t s : seeds) cells.push_back(Cell{a, s, {}, false, ""});

            std::vector<std::future<void>> futs;
            futs.reserve(cells.size());
            for (Cell& cell : cells) {
                futs.push_back(std::async(std::launch::async, [&cell, &problem, &set, &ref,
                                                               &schedule_name, iters, stochastic,
                                                               gamma_step, &init_spec,
                                                               &problem_spec]() {
                    try {
                        RunConfig cfg;
                        cfg.algo = cell.algo;
                        cfg.schedule = schedule_from_string(schedule_name);
                        cfg.iters = iters;
                        cfg.seed = cell.seed;
                        cfg.stochastic = stochastic;
                        cfg.init = parse_init(init_spec, problem.dim);
                        cfg.gamma_step = gamma_step;
                        cfg.problem_id = problem_spec;
                        cell.trace = run_optimizer(problem, set, cfg, &ref);
                    } catch (const std::exception& e) {
                        cell.failed = true;
                        cell.error = e.what();
                    }
                }));
            }
            for (auto& f : futs) f.get();

            // Single collector writes all files.
            std::string combined = "iter,algo,schedule,seed,f,gap,bound_rhs,grad_norm,time_ns\n";
            bool any_failed = false;
            json summary;
            summary["problem"] = problem_spec;
            summary["mu"] = mu;
            summary["iters"] = iters;
            summary["stochastic"] = stochastic;
            summary["schedule"] = schedule_name;
            summary["reference"] = {{"f_star", ref.f_star},
                                    {"residual", ref.residual},
                                    {"certified", ref.certified},
                                    {"iters_used", ref.iters_used}};

            std::map<std::string, json> per_algo;
            std::map<std::string, std::vector<double>> algo_final_gaps;
            for (Cell& cell : cells) {
                std::string aname = to_string(cell.algo);
                if (cell.failed) {
                    any_failed = true;
                    per_algo[aname]["failed_seeds"].push_back(cell.seed);
                    per_algo[aname]["errors"].push_back(cell.error);
                    continue;
                }
                std::string csv = trace_to_csv(cell.trace);
                fs::path cell_path =
                    fs::path(out_dir) / ("trace_" + aname + "_" + schedule_name + "_s" +
                                         std::to_string(cell.seed) + ".csv");
                write_file(cell_path, csv);
                combined += csv.substr(csv.find('\n') + 1);
                per_algo[aname]["cells"].push_back(trace_summary(cell.trace));
                algo_final_gaps[aname].push_back(final_canonical_gap(cell.trace));
            }

            for (auto& [aname, gaps] : algo_final_gaps) {
                double mean = 0.0, mn = gaps[0], mx = gaps[0];
                for (double g : gaps) {
                    mean += g;
                    mn = std::min(mn, g);
                    mx = std::max(mx, g);
                }
                mean /= static_cast<double>(gaps.size());
                per_algo[aname]["final_gap"] = {{"mean", mean}, {"min", mn}, {"max", mx}};

                // slope of the per-seed mean gap over the default fit window
                std::vector<Cell*> ok;
                for (Cell& c : cells)
                    if (!c.failed && to_string(c.algo) == aname) ok.push_back(&c);
                if (!ok.empty() && !ok[0]->trace.points.empty()) {
                    std::vector<long> ts;
                    std::vector<double> mean_gap;
                    const auto& pts0 = ok[0]->trace.points;
                    for (std::size_t i = 0; i < pts0.size(); ++i) {
                        double m = 0.0;
                        for (Cell* c : ok) {
                            double g = (c->trace.algo == Algo::gda && !c->trace.averaged_gap.empty())
                                           ? c->trace.averaged_gap[i]
                                           : c->trace.points[i].gap;
                            m += g;
                        }
                        ts.push_back(pts0[i].t);
                        mean_gap.push_back(m / static_cast<double>(ok.size()));
                    }
                    long t_hi = iters;
                    long t_lo = std::max<long>(1, t_hi / 100);
                    if (t_hi >= 2 * t_lo && t_lo >= 1) {
                        try {
                            SlopeFit fit =
                                fit_gap_slope(ts, mean_gap, ref.residual, t_lo, t_hi);
                            per_algo[aname]["slope_seed_mean"] = fit.slope;
                            per_algo[aname]["r_squared"] = fit.r_squared;
                        } catch (const std::exception& e) {
                            per_algo[aname]["slope_error"] = e.what();
                        }
                    }
                }
            }
            for (auto& [aname, j] : per_algo) summary["algorithms"][aname] = j;

            write_file(fs::path(out_dir) / "bench.csv", combined);
            write_file(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
            std::printf("wrote %s and %s (%zu cells)\n",
                        (fs::path(out_dir) / "bench.csv").string().c_str(),
                        (fs::path(out_dir) / "summary.json").string().c_str(), cells.size());
            return any_failed ? 1 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
