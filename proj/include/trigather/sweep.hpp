#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trigather/engine.hpp"

namespace trigather {

struct SweepOptions {
    std::size_t count = 100;
    std::size_t n_min = 1;
    std::size_t n_max = 30;
    std::uint64_t seed = 0;
    std::size_t threads = 0; // 0 = TRIGATHER_THREADS env var, then hardware
    std::uint64_t async_staleness = kUnboundedStaleness;
    RefreshPolicy async_refresh = RefreshPolicy::OnEvaluate;
};

/// Aggregate for one (algorithm, scheduler) pair.
struct SweepCell {
    Algorithm algorithm = Algorithm::Gsgs;
    Scheduler scheduler = Scheduler::Synchronous;
    std::uint64_t instances = 0;
    std::uint64_t failures = 0;
    double max_rounds_over_n = 0.0;
    double max_rounds_over_2n = 0.0;
    double mean_moves_per_robot = 0.0;
};

struct SweepReport {
    std::vector<SweepCell> cells; // all eight pairs, fixed order
    std::uint64_t total_failures = 0;
    std::vector<std::string> failure_samples; // first few messages
};

/// Runs count random connected instances through both algorithms and all
/// four schedulers, verifying every trace in-process. Instances fan out over
/// a worker pool; aggregation is keyed by instance index, so the report does
/// not depend on scheduling.
SweepReport run_sweep(const SweepOptions& options);

std::string sweep_report_to_json(const SweepReport& report);

} // namespace trigather
