#include "trigather/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "trigather/gen.hpp"
#include "trigather/rng.hpp"
#include "trigather/verify.hpp"

namespace trigather {

namespace {

constexpr std::array<Algorithm, 2> kAlgorithms = {Algorithm::Gsgs, Algorithm::Revised};
constexpr std::array<Scheduler, 4> kSchedulers = {
    Scheduler::Synchronous, Scheduler::Central, Scheduler::Distributed,
    Scheduler::AsyncStale};

struct CellSample {
    bool failed = false;
    std::string message;
    double rounds_over_n = 0.0;
    double rounds_over_2n = 0.0;
    double moves_per_robot = 0.0;
};

struct InstanceResult {
    std::array<CellSample, 8> cells;
};

std::size_t worker_count(const SweepOptions& options) {
    if (options.threads > 0) return options.threads;
    if (const char* env = std::getenv("TRIGATHER_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<std::size_t>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

InstanceResult run_instance(const SweepOptions& options, std::size_t index) {
    InstanceResult result;
    const std::uint64_t base = derive_seed(options.seed, StreamTag::SweepInstance, index);
    auto rng = SplitMix64(base);

    GenSpec spec;
    spec.n = options.n_min + static_cast<std::size_t>(
                                 rng.next_below(options.n_max - options.n_min + 1));
    spec.seed = rng.next();
    spec.spread = rng.next_double();
    spec.allow_multiplicity = rng.next_double() < 0.25;
    const GlobalState state = random_connected(spec);
    const auto n = static_cast<double>(state.size());

    std::size_t cell = 0;
    for (const Algorithm algorithm : kAlgorithms) {
        for (const Scheduler scheduler : kSchedulers) {
            CellSample& sample = result.cells[cell];
            RunConfig cfg;
            cfg.algorithm = algorithm;
            cfg.scheduler = scheduler;
            cfg.seed = rng.next();
            cfg.max_staleness = options.async_staleness;
            cfg.refresh_policy = options.async_refresh;
            try {
                const Trace trace = run(state, cfg);
                std::uint64_t moves = 0;
                for (const TraceEvent& ev : trace.events) moves += ev.to ? 1 : 0;
                sample.rounds_over_n = static_cast<double>(trace.rounds) / n;
                sample.rounds_over_2n = static_cast<double>(trace.rounds) / (2.0 * n);
                sample.moves_per_robot = static_cast<double>(moves) / n;
                for (const MonitorReport& report : run_all_monitors(trace)) {
                    if (report.passed) continue;
                    sample.failed = true;
                    sample.message = "instance " + std::to_string(index) + " " +
                                     to_string(algorithm) + "/" + to_string(scheduler) +
                                     ": monitor " + report.monitor + ": " +
                                     report.first_violation->description;
                    break;
                }
            } catch (const std::exception& e) {
                sample.failed = true;
                sample.message = "instance " + std::to_string(index) + " " +
                                 to_string(algorithm) + "/" + to_string(scheduler) +
                                 ": " + e.what();
            }
            ++cell;
        }
    }
    return result;
}

} // namespace

SweepReport run_sweep(const SweepOptions& options) {
    std::vector<InstanceResult> results(options.count);
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::min(worker_count(options), std::max<std::size_t>(options.count, 1));

    auto work = [&] {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= options.count) return;
            results[index] = run_instance(options, index);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i + 1 < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    SweepReport report;
    report.cells.resize(8);
    std::array<double, 8> move_sums{};
    std::size_t cell = 0;
    for (const Algorithm algorithm : kAlgorithms)
        for (const Scheduler scheduler : kSchedulers) {
            report.cells[cell].algorithm = algorithm;
            report.cells[cell].scheduler = scheduler;
            ++cell;
        }
    for (const InstanceResult& result : results) {
        for (std::size_t c = 0; c < 8; ++c) {
            const CellSample& sample = result.cells[c];
            SweepCell& agg = report.cells[c];
            ++agg.instances;
            if (sample.failed) {
                ++agg.failures;
                ++report.total_failures;
                if (report.failure_samples.size() < 10)
                    report.failure_samples.push_back(sample.message);
                continue;
            }
            agg.max_rounds_over_n = std::max(agg.max_rounds_over_n, sample.rounds_over_n);
            agg.max_rounds_over_2n = std::max(agg.max_rounds_over_2n, sample.rounds_over_2n);
            move_sums[c] += sample.moves_per_robot;
        }
    }
    for (std::size_t c = 0; c < 8; ++c) {
        const std::uint64_t ok = report.cells[c].instances - report.cells[c].failures;
        report.cells[c].mean_moves_per_robot =
            ok == 0 ? 0.0 : move_sums[c] / static_cast<double>(ok);
    }
    return report;
}

std::string sweep_report_to_json(const SweepReport& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (const SweepCell& cell : report.cells) {
        cells.push_back({{"algorithm", to_string(cell.algorithm)},
                         {"scheduler", to_string(cell.scheduler)},
                         {"instances", cell.instances},
                         {"failures", cell.failures},
                         {"maxRoundsOverN", cell.max_rounds_over_n},
                         {"maxRoundsOver2N", cell.max_rounds_over_2n},
                         {"meanMovesPerRobot", cell.mean_moves_per_robot}});
    }
    nlohmann::json j{{"cells", std::move(cells)},
                     {"totalFailures", report.total_failures},
                     {"failureSamples", report.failure_samples}};
    return j.dump(2) + "\n";
}

} // namespace trigather
