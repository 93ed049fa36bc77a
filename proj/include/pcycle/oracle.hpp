#pragma once

// Exact reference solvers, used to cross-check the phases. Independent of
// the phase code paths: nothing here calls into phase1/2/3.

#include <utility>
#include <vector>

#include "pcycle/core.hpp"
#include "pcycle/phase2.hpp"
#include "pcycle/phase3.hpp"

namespace pcycle {

/// Shortest augmenting path with potentials, O(n^3). Throws Infeasible if a
/// row or column has no finite entry, or no finite assignment exists.
std::pair<Cost, Derangement> hungarian_ap(const CostMatrix& m);

inline constexpr int kHeldKarpCap = 22;

/// Bitmask DP over subsets, start vertex fixed. Throws TooLarge above cap.
std::pair<Cost, Derangement> held_karp_tsp(const CostMatrix& m, int cap = kHeldKarpCap);

/// Standard relaxation from a virtual source, n rounds.
bool bellman_negative_cycle(const ReducedMatrix& r);

/// Every simple cycle with at most max_len vertices and value <= budget,
/// canonical and sorted like collect_bounded_cycles. No value pruning.
/// Throws TooLarge unless n <= 10 or max_len <= 6.
std::vector<BoundedCycle> brute_cycles(const ReducedMatrix& r, Cost budget, int max_len);

struct OracleReport {
    Cost ap_value = 0;
    Derangement ap_solution;
    Cost tsp_value = 0;
    Derangement tsp_solution;
};

OracleReport run_oracles(const CostMatrix& m, int held_karp_cap = kHeldKarpCap);

}  // namespace pcycle
