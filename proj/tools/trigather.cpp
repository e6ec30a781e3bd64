#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigather/engine.hpp"
#include "trigather/gen.hpp"
#include "trigather/io.hpp"
#include "trigather/render.hpp"
#include "trigather/sweep.hpp"
#include "trigather/verify.hpp"

namespace {

using namespace trigather;
using nlohmann::json;

struct RunFlags {
    std::string state_path;
    std::string algorithm = "gsgs";
    std::string scheduler = "sync";
    std::uint64_t seed = 0;
    std::string staleness = "inf";
    std::string refresh = "eval";
    double select_prob = 0.5;
    std::uint64_t max_steps = 0;
    std::string trace_path;
    bool verify_live = false;
};

Algorithm parse_algorithm(const std::string& name) {
    if (name == "gsgs") return Algorithm::Gsgs;
    if (name == "revised") return Algorithm::Revised;
    throw CLI::ValidationError("--algorithm", "expected gsgs or revised");
}

Scheduler parse_scheduler(const std::string& name) {
    if (name == "sync") return Scheduler::Synchronous;
    if (name == "central") return Scheduler::Central;
    if (name == "dist") return Scheduler::Distributed;
    if (name == "async") return Scheduler::AsyncStale;
    throw CLI::ValidationError("--scheduler", "expected sync, central, dist or async");
}

std::uint64_t parse_staleness(const std::string& text) {
    if (text == "inf") return kUnboundedStaleness;
    return std::stoull(text);
}

json report_to_json(const MonitorReport& r) {
    json j{{"passed", r.passed}};
    if (r.first_violation)
        j["firstViolation"] = {{"eventIndex", r.first_violation->event_index},
                               {"description", r.first_violation->description}};
    else
        j["firstViolation"] = nullptr;
    json stats = json::object();
    for (const auto& [name, value] : r.statistics) stats[name] = value;
    j["statistics"] = std::move(stats);
    const auto asserted = r.statistics.find("asserted");
    if (asserted != r.statistics.end() && asserted->second == 0.0)
        j["informational"] = true;
    return j;
}

int print_verification(const std::vector<MonitorReport>& reports) {
    json doc = json::object();
    bool all_passed = true;
    for (const MonitorReport& r : reports) {
        doc[r.monitor] = report_to_json(r);
        all_passed = all_passed && r.passed;
    }
    doc["passed"] = all_passed;
    std::cout << doc.dump(2) << "\n";
    return all_passed ? 0 : 1;
}

int cmd_predict(const std::string& state_path) {
    const GlobalState state = read_state_file(state_path);
    if (!is_connected(state))
        std::cerr << "warning: visibility graph is disconnected; a run would refuse "
                     "this input\n";
    const BoundingPolygon poly = bounding_polygon(state.positions());
    const PolygonMetrics m = polygon_metrics(poly);
    const std::size_t budget = 2 * state.size();
    std::cout << "Q = " << to_string(poly.gather) << ", budget = " << budget
              << " rounds\n";
    std::cout << "A = " << to_string(poly.top_left) << "  B = " << to_string(poly.bottom_left)
              << "  B' = " << to_string(poly.left_slant_corner)
              << "  P = " << to_string(poly.apex) << "  Q = " << to_string(poly.gather)
              << "  C' = " << to_string(poly.right_slant_corner)
              << "  C = " << to_string(poly.bottom_right)
              << "  D = " << to_string(poly.top_right) << "\n";
    std::cout << "hLeft = " << m.h_left << "  hRight = " << m.h_right << "  w = " << m.width
              << "  totalDepth = " << m.total_depth << "\n";
    return 0;
}

int cmd_run(const RunFlags& flags) {
    const GlobalState state = read_state_file(flags.state_path);
    RunConfig cfg;
    cfg.algorithm = parse_algorithm(flags.algorithm);
    cfg.scheduler = parse_scheduler(flags.scheduler);
    cfg.seed = flags.seed;
    cfg.max_staleness = parse_staleness(flags.staleness);
    cfg.refresh_policy =
        flags.refresh == "move" ? RefreshPolicy::OnMove : RefreshPolicy::OnEvaluate;
    cfg.distributed_select_prob = flags.select_prob;
    cfg.max_steps = flags.max_steps;

    const Trace trace = run(state, cfg);
    if (!flags.trace_path.empty()) write_trace_file(flags.trace_path, trace);

    std::uint64_t moves = 0;
    for (const TraceEvent& ev : trace.events) moves += ev.to ? 1 : 0;
    std::cout << "outcome = " << to_string(trace.outcome) << ", rounds = " << trace.rounds
              << ", moves = " << moves << ", events = " << trace.events.size();
    if (is_gathered(trace.final_state) && !trace.final_state.empty())
        std::cout << ", gatheredAt = " << to_string(trace.final_state.position(0));
    std::cout << "\n";

    int status = trace.outcome == Outcome::Gathered ? 0 : 2;
    if (flags.verify_live) {
        const int verify_status = print_verification(run_all_monitors(trace));
        if (verify_status != 0) status = verify_status;
    }
    return status;
}

int cmd_verify(const std::string& trace_path) {
    const Trace trace = read_trace_file(trace_path);
    return print_verification(run_all_monitors(trace));
}

int cmd_sweep(const SweepOptions& options) {
    const SweepReport report = run_sweep(options);
    std::cout << sweep_report_to_json(report);
    return report.total_failures == 0 ? 0 : 1;
}

struct OracleFlags {
    std::size_t max_n = 4;
    std::int64_t radius = 3;
    std::size_t random_count = 0; // 0 = exhaustive enumeration
    std::uint64_t seed = 0;
    std::size_t node_cap = 1'000'000;
};

int cmd_oracle(const OracleFlags& flags) {
    std::vector<std::vector<Coord>> configs;
    if (flags.random_count == 0) {
        configs = enumerate_connected_configs(flags.max_n, flags.radius);
    } else {
        for (std::size_t i = 0; i < flags.random_count; ++i) {
            GenSpec spec;
            spec.seed = derive_seed(flags.seed, StreamTag::SweepInstance, i);
            auto rng = SplitMix64(spec.seed);
            spec.n = 1 + static_cast<std::size_t>(rng.next_below(flags.max_n));
            spec.allow_multiplicity = true;
            spec.spread = rng.next_double();
            const GlobalState state = random_connected(spec);
            configs.push_back(
                std::vector<Coord>(state.positions().begin(), state.positions().end()));
        }
    }

    std::size_t total_nodes = 0, total_edges = 0, violations = 0, cap_errors = 0;
    for (const Algorithm algorithm : {Algorithm::Gsgs, Algorithm::Revised}) {
        for (std::size_t i = 0; i < configs.size(); ++i) {
            try {
                const StateGraph graph =
                    build_state_graph(GlobalState(configs[i]), algorithm, flags.node_cap);
                total_nodes += graph.nodes.size();
                total_edges += graph.edge_count();
                const MonitorReport report = check_lattice_linearity(graph);
                if (!report.passed) {
                    ++violations;
                    std::cerr << "violation in config " << i << " (" << to_string(algorithm)
                              << "): " << report.first_violation->description << "\n";
                }
            } catch (const std::runtime_error& e) {
                ++cap_errors;
                std::cerr << "config " << i << " (" << to_string(algorithm)
                          << "): " << e.what() << "\n";
            }
        }
    }
    json doc{{"configs", configs.size()},
             {"statesChecked", total_nodes},
             {"edgesChecked", total_edges},
             {"violations", violations},
             {"nodeCapErrors", cap_errors}};
    std::cout << doc.dump(2) << "\n";
    return violations == 0 && cap_errors == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic gathering simulator and verification workbench for "
                 "myopic robots on the infinite triangular grid"};
    app.require_subcommand(1);

    std::string predict_state;
    auto* predict = app.add_subcommand("predict", "Print the predicted gathering vertex, "
                                                  "bounding polygon and round budget");
    predict->add_option("--state", predict_state, "State file")->required();

    RunFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "Execute one algorithm under one scheduler");
    run_cmd->add_option("--state", run_flags.state_path, "State file")->required();
    run_cmd->add_option("--algorithm", run_flags.algorithm, "gsgs|revised");
    run_cmd->add_option("--scheduler", run_flags.scheduler, "sync|central|dist|async");
    run_cmd->add_option("--seed", run_flags.seed, "64-bit seed");
    run_cmd->add_option("--staleness", run_flags.staleness, "Max view age in events, or inf");
    run_cmd->add_option("--refresh", run_flags.refresh, "move|eval snapshot policy");
    run_cmd->add_option("--select-prob", run_flags.select_prob,
                        "Distributed per-robot selection probability");
    run_cmd->add_option("--max-steps", run_flags.max_steps, "Event cap (0 = default)");
    run_cmd->add_option("--trace", run_flags.trace_path, "Trace output file");
    run_cmd->add_flag("--verify-live", run_flags.verify_live,
                      "Run all monitors on the trace before exiting");

    std::string verify_trace;
    auto* verify_cmd = app.add_subcommand("verify", "Run every monitor over a trace file");
    verify_cmd->add_option("--trace", verify_trace, "Trace file")->required();

    SweepOptions sweep_options;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Random instances x both algorithms x all four schedulers");
    sweep_cmd->add_option("--count", sweep_options.count, "Instance count");
    sweep_cmd->add_option("--n-min", sweep_options.n_min, "Smallest robot count");
    sweep_cmd->add_option("--n-max", sweep_options.n_max, "Largest robot count");
    sweep_cmd->add_option("--seed", sweep_options.seed, "Sweep seed");
    sweep_cmd->add_option("--threads", sweep_options.threads,
                          "Worker threads (default: TRIGATHER_THREADS or hardware)");

    OracleFlags oracle_flags;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Exhaustive small-instance reachability and enabledness checks");
    oracle_cmd->add_option("--max-n", oracle_flags.max_n, "Largest robot count");
    oracle_cmd->add_option("--radius", oracle_flags.radius, "Support ball radius");
    oracle_cmd->add_option("--count", oracle_flags.random_count,
                           "Check this many random instances instead of enumerating");
    oracle_cmd->add_option("--seed", oracle_flags.seed, "Seed for --count mode");
    oracle_cmd->add_option("--node-cap", oracle_flags.node_cap, "State graph node cap");

    std::string render_trace_path, render_out;
    std::uint64_t render_every = 1;
    auto* render_cmd = app.add_subcommand("render", "Write SVG frames of a trace");
    render_cmd->add_option("--trace", render_trace_path, "Trace file")->required();
    render_cmd->add_option("--out", render_out, "Output directory")->required();
    render_cmd->add_option("--every", render_every, "Sample every k-th event");

    CLI11_PARSE(app, argc, argv);

    try {
        if (predict->parsed()) return cmd_predict(predict_state);
        if (run_cmd->parsed()) return cmd_run(run_flags);
        if (verify_cmd->parsed()) return cmd_verify(verify_trace);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_options);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_flags);
        if (render_cmd->parsed()) {
            const Trace trace = read_trace_file(render_trace_path);
            const auto written = render_trace(trace, {render_out, render_every});
            std::cout << "wrote " << written.size() << " frames to " << render_out << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
