// gieskit: simulate interventional data, learn essential graphs and compare them.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gies/baselines.hpp"
#include "gies/io.hpp"
#include "gies/metrics.hpp"
#include "gies/search.hpp"
#include "gies/simulate.hpp"

namespace fs = std::filesystem;
using gies::io::json;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string format = "json";
};

struct FitFlags {
    std::string algo = "gies";
    std::string variant;
    std::string max_degree = "none";
    std::string phase_order;
    int max_p = 15;
    std::string max_parents = "auto";
    bool per_node_penalty = false;
};

struct FitOutcome {
    gies::EssentialGraph estimate;
    std::optional<gies::Dag> dag;
    gies::SearchTrace trace;
    double score = 0.0;
    double runtime_s = 0.0;
    std::optional<int> max_parents;
};

std::optional<int> optional_int(const std::string& text, const char* flag) {
    if (text == "none" || text == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const int x = std::stoi(text, &used);
        if (used == text.size() && x >= 0) return x;
    } catch (const std::exception&) {
    }
    throw gies::Error(gies::ErrorKind::InvalidArgument, std::string(flag) + " expects a non-negative integer or 'none'");
}

gies::SearchOptions search_options(const FitFlags& f) {
    gies::SearchOptions o;
    if (!f.variant.empty()) {
        o = gies::variant_options(f.variant);
    } else if (f.algo == "gies-nt") {
        o = gies::variant_options("gies-nt");
    }
    if (!f.phase_order.empty()) o.phase_order = gies::parse_phase_order(f.phase_order);
    o.max_degree = optional_int(f.max_degree, "--max-degree");
    return o;
}

int thread_cap() {
    if (const char* env = std::getenv("GIESKIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

FitOutcome run_fit(const FitFlags& flags, const gies::InterventionalDataset& data, const gies::TargetFamily& family,
                   int threads = 1) {
    const gies::ScoreOptions score_options{flags.per_node_penalty};
    const auto start = std::chrono::steady_clock::now();
    FitOutcome out;
    if (flags.algo == "gies" || flags.algo == "gies-nt") {
        auto r = gies::gies(data, family, search_options(flags), score_options);
        out.estimate = std::move(r.graph);
        out.trace = std::move(r.trace);
        out.score = r.score;
    } else if (flags.algo == "gds") {
        auto r = gies::gds(data, family, search_options(flags), score_options);
        out.estimate = gies::essential_graph(r.dag, family);
        out.dag = std::move(r.dag);
        out.trace = std::move(r.trace);
        out.score = r.score;
    } else if (flags.algo == "ges") {
        auto r = gies::ges(data, search_options(flags), score_options);
        out.estimate = std::move(r.graph);
        out.trace = std::move(r.trace);
        out.score = r.score;
    } else if (flags.algo == "dp") {
        gies::DpOptions o;
        o.max_p = flags.max_p;
        o.max_parents = optional_int(flags.max_parents, "--max-parents");
        o.threads = threads;
        auto r = gies::dp_exact(data, family, o, score_options);
        out.estimate = gies::essential_graph(r.dag, family);
        out.dag = std::move(r.dag);
        out.score = r.score;
        out.max_parents = r.max_parents;
    } else {
        throw gies::Error(gies::ErrorKind::InvalidArgument, "unknown algorithm '" + flags.algo + "'");
    }
    out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

gies::TargetFamily targets_arg(const std::string& text, const gies::InterventionalDataset* data) {
    if (text.empty()) {
        if (data) return gies::family_of(*data);
        return gies::TargetFamily::observational();
    }
    if (fs::is_regular_file(text)) return gies::io::family_from_json(gies::io::read_json_file(text));
    return gies::io::parse_targets(text);
}

gies::Dag read_dag(const std::string& path) { return gies::Dag(gies::io::graph_from_json(gies::io::read_json_file(path))); }

fs::path prepare_out_dir(const Globals& g) {
    fs::path dir(g.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw gies::Error(gies::ErrorKind::IoError, "cannot create " + dir.string());
    return dir;
}

void emit(const Globals& g, const json& j) {
    if (g.format == "csv" && j.is_object()) {
        std::string header, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            header += (header.empty() ? "" : ",") + it.key();
            row += (row.empty() ? "" : ",") + (it->is_string() ? it->get<std::string>() : it->dump());
        }
        std::cout << header << '\n' << row << '\n';
    } else {
        std::cout << j.dump() << '\n';
    }
}

// ---------------------------------------------------------------------------

struct SimFlags {
    gies::SimConfig config;
};

void cmd_simulate(const Globals& g, SimFlags flags) {
    flags.config.seed = g.seed;
    const gies::Simulation sim = gies::simulate(flags.config);
    const fs::path dir = prepare_out_dir(g);
    gies::io::write_dataset_file(dir / "data.csv", sim.data);
    gies::io::write_json_file(dir / "dag.json", gies::io::graph_to_json(sim.model.dag.graph()));
    gies::io::write_json_file(dir / "essential.json",
                              gies::io::graph_to_json(gies::essential_graph(sim.model.dag, sim.family).graph));
    gies::io::write_json_file(dir / "model.json", gies::io::model_to_json(sim.model));
    gies::io::write_json_file(dir / "targets.json", gies::io::family_to_json(sim.family));
    const auto& c = flags.config;
    const json meta{{"p", c.p},
                    {"s", c.s},
                    {"k", c.k},
                    {"m", c.m},
                    {"n", c.n},
                    {"level_mean", c.level_mean},
                    {"level_sd", c.level_sd},
                    {"seed", c.seed},
                    {"rng", std::string(gies::Rng::name)},
                    {"targets", gies::io::family_to_json(sim.family)}};
    gies::io::write_json_file(dir / "metadata.json", meta);
    emit(g, json{{"out_dir", dir.string()}, {"p", c.p}, {"n", c.n}, {"arrows", sim.model.dag.num_arrows()}});
}

struct FitArgs {
    std::string data;
    std::string targets;
    std::string output;
    std::string dag_output;
    std::string trace;
    FitFlags flags;
};

void cmd_fit(const Globals& g, const FitArgs& a) {
    const gies::InterventionalDataset data = gies::io::read_dataset_file(a.data);
    const gies::TargetFamily family = targets_arg(a.targets, &data);
    const FitOutcome r = run_fit(a.flags, data, family, thread_cap());
    const fs::path out = a.output.empty() ? prepare_out_dir(g) / "estimate.json" : fs::path(a.output);
    gies::io::write_json_file(out, gies::io::graph_to_json(r.estimate.graph));
    if (!a.dag_output.empty() && r.dag) gies::io::write_json_file(a.dag_output, gies::io::graph_to_json(r.dag->graph()));
    if (!a.trace.empty()) {
        std::ofstream t(a.trace);
        if (!t) throw gies::Error(gies::ErrorKind::IoError, "cannot write " + a.trace);
        gies::io::write_trace(t, r.trace);
    }
    json summary{{"algo", a.flags.algo},
                 {"score", r.score},
                 {"steps", r.trace.steps.size()},
                 {"runtime_s", r.runtime_s},
                 {"output", out.string()}};
    if (a.flags.algo == "dp") summary["max_parents"] = r.max_parents ? json(*r.max_parents) : json(nullptr);
    emit(g, summary);
}

void cmd_essential(const Globals& g, const std::string& dag, const std::string& targets, const std::string& output) {
    const json e = gies::io::graph_to_json(gies::essential_graph(read_dag(dag), targets_arg(targets, nullptr)).graph);
    if (output.empty()) {
        std::cout << e.dump() << '\n';
    } else {
        gies::io::write_json_file(output, e);
        emit(g, json{{"output", output}});
    }
}

void cmd_equiv(const Globals& g, const std::string& d1, const std::string& d2, const std::string& targets) {
    emit(g, json{{"equivalent", gies::markov_equivalent(read_dag(d1), read_dag(d2), targets_arg(targets, nullptr))}});
}

void cmd_representatives(const Globals& g, const std::string& graph, const std::string& targets, std::size_t limit) {
    const gies::Graph e = gies::io::graph_from_json(gies::io::read_json_file(graph));
    const auto reps = gies::enumerate_representatives(gies::EssentialGraph{e, targets_arg(targets, nullptr)}, limit);
    const fs::path dir = prepare_out_dir(g);
    json files = json::array();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const fs::path f = dir / ("representative_" + std::to_string(i + 1) + ".json");
        gies::io::write_json_file(f, gies::io::graph_to_json(reps[i].graph()));
        files.push_back(f.string());
    }
    emit(g, json{{"count", reps.size()}, {"files", files}});
}

void cmd_compare(const Globals& g, const std::string& estimate, const std::string& truth, const std::string& targets) {
    const gies::Graph est = gies::io::graph_from_json(gies::io::read_json_file(estimate));
    emit(g, gies::io::report_to_json(gies::evaluate(est, read_dag(truth), targets_arg(targets, nullptr))));
}

int cmd_validate(const Globals& g, const std::string& graph, const std::string& targets) {
    const gies::Graph e = gies::io::graph_from_json(gies::io::read_json_file(graph));
    const auto check = gies::check_essential_graph(e, targets_arg(targets, nullptr));
    emit(g, json{{"ok", check.ok}, {"failed_condition", check.failed_condition}, {"detail", check.detail}});
    return check.ok ? 0 : 3;
}

struct SweepArgs {
    std::vector<int> p{10};
    std::vector<double> s{0.2};
    std::vector<int> k{0, 2, 4, 8};
    std::vector<int> m{1};
    std::vector<int> n{1000};
    std::vector<std::string> algo{"gies", "ges", "gds"};
    int reps = 20;
    std::string output;
    FitFlags flags;
};

struct SweepRow {
    int p, k, m, n, rep;
    double s;
    std::uint64_t seed;
    std::string algo;
    double score, runtime_s;
    gies::EvaluationReport report;
};

void cmd_sweep(const Globals& g, const SweepArgs& a) {
    struct Setting {
        int p;
        double s;
        int k, m, n;
    };
    std::vector<Setting> settings;
    for (int p : a.p)
        for (double s : a.s)
            for (int k : a.k)
                for (int m : a.m)
                    for (int n : a.n) settings.push_back({p, s, k, m, n});
    if (a.reps < 1) throw gies::Error(gies::ErrorKind::InvalidArgument, "--reps must be positive");

    const std::size_t tasks = settings.size() * static_cast<std::size_t>(a.reps);
    std::vector<std::vector<SweepRow>> rows(tasks);
    std::vector<std::exception_ptr> failures(tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next++) < tasks;) {
            try {
                const std::size_t si = t / static_cast<std::size_t>(a.reps);
                const int rep = static_cast<int>(t % static_cast<std::size_t>(a.reps));
                const Setting& st = settings[si];
                gies::SimConfig c;
                c.p = st.p;
                c.s = st.s;
                c.k = st.k;
                c.m = st.m;
                c.n = st.n;
                c.seed = gies::Rng(g.seed, si).substream(static_cast<std::uint64_t>(rep)).next();
                const gies::Simulation sim = gies::simulate(c);
                for (const std::string& algo : a.algo) {
                    FitFlags f = a.flags;
                    f.algo = algo;
                    const FitOutcome r = run_fit(f, sim.data, sim.family);
                    rows[t].push_back({st.p, st.k, st.m, st.n, rep, st.s, c.seed, algo, r.score, r.runtime_s,
                                       gies::evaluate(r.estimate.graph, sim.model.dag, sim.family)});
                }
            } catch (...) {
                failures[t] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(thread_cap(), static_cast<int>(tasks));
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    const fs::path dir = prepare_out_dir(g);
    const bool csv = g.format == "csv";
    const fs::path out = a.output.empty() ? dir / (csv ? "sweep.csv" : "sweep.json") : fs::path(a.output);
    std::ofstream file(out);
    if (!file) throw gies::Error(gies::ErrorKind::IoError, "cannot write " + out.string());
    std::size_t count = 0;
    json all = json::array();
    if (csv) file << "p,s,k,m,n,rep,seed,algo,score,runtime_s,shd,fp,fn,wo,shd_vs_essential,non_essential_true\n";
    for (const auto& group : rows) {
        for (const SweepRow& r : group) {
            ++count;
            if (csv) {
                file << r.p << ',' << gies::io::format_double(r.s) << ',' << r.k << ',' << r.m << ',' << r.n << ','
                     << r.rep << ',' << r.seed << ',' << r.algo << ',' << gies::io::format_double(r.score) << ','
                     << r.runtime_s << ',' << r.report.vs_dag.shd << ',' << r.report.vs_dag.skeleton_fp << ','
                     << r.report.vs_dag.skeleton_fn << ',' << r.report.vs_dag.wrongly_oriented << ','
                     << r.report.shd_vs_essential << ',' << r.report.non_essential_true << '\n';
            } else {
                json j = gies::io::report_to_json(r.report);
                j.update(json{{"p", r.p}, {"s", r.s}, {"k", r.k}, {"m", r.m}, {"n", r.n}, {"rep", r.rep},
                              {"seed", r.seed}, {"algo", r.algo}, {"score", r.score}, {"runtime_s", r.runtime_s}});
                all.push_back(j);
            }
        }
    }
    if (!csv) file << all.dump() << '\n';
    std::cout << json{{"rows", count}, {"output", out.string()}}.dump() << '\n';
}

void add_fit_flags(CLI::App* cmd, FitFlags& f, bool with_algo = true) {
    if (with_algo) {
        cmd->add_option("--algo", f.algo, "gies, gies-nt, gds, ges or dp")
            ->check(CLI::IsMember({"gies", "gies-nt", "gds", "ges", "dp"}));
    }
    cmd->add_option("--variant", f.variant, "gies or gies-nt")->check(CLI::IsMember({"gies", "gies-nt"}));
    cmd->add_option("--max-degree", f.max_degree, "degree cap for insertions, or none");
    cmd->add_option("--phase-order", f.phase_order, "e.g. fbt or forward,backward");
    cmd->add_option("--max-p", f.max_p, "largest p accepted by dp");
    cmd->add_option("--max-parents", f.max_parents, "parent-set cap for dp, or none");
    cmd->add_flag("--per-node-penalty", f.per_node_penalty, "penalise with log(n_v) instead of log(n)");
}

void print_error(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal structure learning from observational and interventional data"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out-dir", g.out_dir, "directory for output files");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    SimFlags sim;
    auto* simulate = app.add_subcommand("simulate", "draw a random model, targets and data");
    simulate->add_option("--p", sim.config.p, "number of variables");
    simulate->add_option("--s", sim.config.s, "edge probability");
    simulate->add_option("--k", sim.config.k, "number of non-empty targets");
    simulate->add_option("--m", sim.config.m, "target size");
    simulate->add_option("--n", sim.config.n, "number of samples");
    simulate->add_option("--level-mean", sim.config.level_mean, "mean of intervention levels");
    simulate->add_option("--level-sd", sim.config.level_sd, "standard deviation of intervention levels");

    FitArgs fit;
    auto* fitc = app.add_subcommand("fit", "learn a graph from a dataset");
    fitc->add_option("--data", fit.data, "dataset CSV")->required();
    fitc->add_option("--targets", fit.targets, "family inline or as a JSON file; default from the data");
    fitc->add_option("--output", fit.output, "estimate graph file");
    fitc->add_option("--dag-output", fit.dag_output, "DAG returned by gds or dp");
    fitc->add_option("--trace", fit.trace, "JSON-lines trace of accepted moves");
    add_fit_flags(fitc, fit.flags);

    std::string dag, dag2, graph, targets, output, estimate, truth;
    std::size_t limit = 1000;
    auto* essential = app.add_subcommand("essential", "essential graph of a DAG");
    essential->add_option("--dag", dag)->required();
    essential->add_option("--targets", targets);
    essential->add_option("--output", output);

    auto* equiv = app.add_subcommand("equiv", "test two DAGs for equivalence");
    equiv->add_option("--dag1", dag)->required();
    equiv->add_option("--dag2", dag2)->required();
    equiv->add_option("--targets", targets);

    auto* reps = app.add_subcommand("representatives", "list the DAGs of an essential graph");
    reps->add_option("--graph", graph)->required();
    reps->add_option("--targets", targets);
    reps->add_option("--limit", limit);

    auto* compare = app.add_subcommand("compare", "structural Hamming distances to the truth");
    compare->add_option("--estimate", estimate)->required();
    compare->add_option("--truth", truth, "true DAG")->required();
    compare->add_option("--targets", targets);

    auto* validate = app.add_subcommand("validate", "check that a graph is an essential graph");
    validate->add_option("--graph", graph)->required();
    validate->add_option("--targets", targets);

    SweepArgs sweep;
    auto* sweepc = app.add_subcommand("sweep", "simulate and fit over a parameter grid");
    sweepc->add_option("--p", sweep.p)->delimiter(',');
    sweepc->add_option("--s", sweep.s)->delimiter(',');
    sweepc->add_option("--k", sweep.k)->delimiter(',');
    sweepc->add_option("--m", sweep.m)->delimiter(',');
    sweepc->add_option("--n", sweep.n)->delimiter(',');
    sweepc->add_option("--algo", sweep.algo)->delimiter(',')->check(CLI::IsMember({"gies", "gies-nt", "gds", "ges", "dp"}));
    sweepc->add_option("--reps", sweep.reps);
    sweepc->add_option("--output", sweep.output);
    add_fit_flags(sweepc, sweep.flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("UsageError", e.what());
        return 2;
    }

    try {
        if (*simulate) cmd_simulate(g, sim);
        if (*fitc) cmd_fit(g, fit);
        if (*essential) cmd_essential(g, dag, targets, output);
        if (*equiv) cmd_equiv(g, dag, dag2, targets);
        if (*reps) cmd_representatives(g, graph, targets, limit);
        if (*compare) cmd_compare(g, estimate, truth, targets);
        if (*validate) return cmd_validate(g, graph, targets);
        if (*sweepc) cmd_sweep(g, sweep);
    } catch (const gies::Error& e) {
        print_error(std::string(gies::to_string(e.kind())), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return 1;
    }
    return 0;
}
