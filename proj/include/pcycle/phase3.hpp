#pragma once

// From an assignment optimum to a tour.
//
// If sigma is AP-optimal, every tour T can be written T = sigma * s where s
// is a set of disjoint cycles, each of non-negative reduced value, whose
// values add up to |T| - |sigma|. So searching for a tour cheaper than the
// best one seen means: enumerate all cycles of reduced value <= budget, then
// pick a disjoint subset that merges sigma into one n-cycle.

#include <cstddef>
#include <optional>
#include <vector>

#include "pcycle/core.hpp"
#include "pcycle/phase2.hpp"
#include "pcycle/trace.hpp"

namespace pcycle {

enum class Exactness { CertifiedOptimal, Heuristic };

std::string_view to_string(Exactness e) noexcept;

struct BoundSchedule {
    Cost m = 1;                 // ceil of the mean finite off-diagonal R entry, at least 1
    std::vector<Cost> budgets;  // strictly increasing, all >= 0

    /// budgets m, 2m, ... up to cap (default 3m). With a known gap
    /// (best tour - |sigma| - 1) every budget is clipped to it and the
    /// sequence stops there.
    static BoundSchedule make(const ReducedMatrix& r, std::optional<Cost> gap, std::optional<Cost> cap = std::nullopt);
};

/// Mean row value used for the schedule.
Cost schedule_unit(const ReducedMatrix& r);

struct BoundedCycle {
    Cycle cycle;  // canonical: starts at its smallest vertex
    Cost value;

    friend bool operator==(const BoundedCycle&, const BoundedCycle&) = default;
};

struct CycleCollection {
    std::vector<BoundedCycle> cycles;  // sorted by (value, cycle)
    bool complete = true;              // false when the limit cut the enumeration short
    std::size_t from_paths = 0;        // how many were also closed by the path search
};

struct CollectLimits {
    std::size_t max_cycles = static_cast<std::size_t>(-1);
    std::size_t max_nodes = static_cast<std::size_t>(-1);  // DFS extensions
};

/// Every simple cycle of R with 0 <= value <= budget. R must have no
/// negative cycle (throws InvalidArgument otherwise).
CycleCollection collect_bounded_cycles(const ReducedMatrix& r, Cost budget, CollectLimits limits = {});

struct PatchResult {
    Derangement tour;
    Cost added_value = 0;
    PermSet cycles_used;
    Exactness exactness = Exactness::Heuristic;
};

struct PatchSearch {
    std::optional<PatchResult> best;
    bool complete = true;  // false when the node limit was hit
    std::size_t nodes = 0;
};

/// Cheapest disjoint subset of `cycles` with total <= budget turning sigma
/// into a tour. Values are taken from the cycles as given.
PatchSearch patch_to_tour(const Derangement& sigma, const std::vector<BoundedCycle>& cycles, Cost budget,
                          std::size_t max_nodes = 1'000'000);

struct Phase3Options {
    std::optional<Cost> budget_cap;
    std::size_t max_cycles = 200'000;
    std::size_t max_search_nodes = 5'000'000;  // cycle enumeration
    std::size_t max_nodes = 1'000'000;         // subset search
};

/// s with tour = sigma * s, as disjoint cycles.
PermSet connecting_cycles(const Derangement& sigma, const Derangement& tour);

/// Throws NoTourFound when no tour was seen and every budget failed.
PatchResult run_phase3(const CostMatrix& m, const Derangement& sigma, const std::optional<Derangement>& best_tour_seen,
                       const Phase3Options& opts = {}, Trace* trace = nullptr);

}  // namespace pcycle
