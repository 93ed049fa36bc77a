#pragma once

// Phase orchestration and reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcycle/core.hpp"
#include "pcycle/phase1.hpp"
#include "pcycle/phase3.hpp"
#include "pcycle/trace.hpp"

namespace pcycle {

struct SolveOptions {
    int phases = 3;  // run phases 1..phases
    std::uint64_t seed = 0;
    int restarts = 1;  // restart 0 starts from the cyclic tour, others from random n-cycles
    bool keep_equal_paths = false;
    std::optional<Cost> budget_cap;
    std::optional<Phase1Config> phase1;  // default: Phase1Config::defaults_for(n)
    bool timings = false;
};

struct AppliedRecord {
    int phase;
    Vertex start;  // phase 1 start vertex, -1 otherwise
    std::vector<Cycle> cycles;
    Cost total;
    Cost value_after;
};

struct RestartSummary {
    Cost initial_value;
    Cost final_value;
    int steps;
};

struct SolveReport {
    int n = 0;
    std::uint64_t checksum = 0;
    Cost initial_value = 0;
    std::vector<RestartSummary> restarts;
    int chosen_restart = 0;
    std::vector<AppliedRecord> applied;  // chosen restart's phase 1, then phase 2
    Cost phase1_value = 0;
    std::optional<Cost> ap_value;
    int phase2_passes = 0;
    std::size_t equal_alternates = 0;
    std::optional<Derangement> ap_solution;
    std::optional<Cost> tour_value;
    std::optional<Derangement> tour;
    std::optional<Cost> patch_added;
    PermSet patch_cycles;
    Exactness exactness = Exactness::Heuristic;
    std::vector<std::pair<std::string, double>> timings;  // seconds, only with SolveOptions::timings
};

/// Throws InvalidArgument on bad options.
SolveReport solve(const CostMatrix& m, const SolveOptions& opts, Trace* trace = nullptr);

/// Random n-cycle from a seeded generator.
Derangement random_tour(int n, std::uint64_t seed);

std::string report_to_json(const SolveReport& r);  // pretty, trailing newline
std::string report_to_text(const SolveReport& r);

std::string event_to_json(const TraceEvent& e);  // single line
std::string event_to_text(const TraceEvent& e);

}  // namespace pcycle
