#pragma once

// Greedy derangement improvement from MIN(M) trials.
//
// A trial grows a path from a start vertex: at vertex x the M-arc
// (x, MIN(M)(x, j)) becomes the permutation arc x -> D^-1(MIN(M)(x, j)).
// Column 1 is used except when it is the arc of D out of x (which would give
// the loop x -> x); then column 2. Growth stops at the first repeated vertex,
// or when the running sum of arc deltas turns positive.

#include <optional>
#include <vector>

#include "pcycle/core.hpp"
#include "pcycle/minm.hpp"
#include "pcycle/trace.hpp"

namespace pcycle {

struct Phase1Config {
    int trials_per_vertex = 1;
    int vertices_before_giving_up = 1;

    /// floor(ln n) + 1 for both knobs.
    static Phase1Config defaults_for(int n);
};

struct TrialPath {
    std::vector<Vertex> vertices;  // distinct; starts at the trial's start vertex
    std::vector<int> columns;      // 1-based MIN(M) column used for each arc out of vertices[k]
    std::vector<Cost> deltas;      // d(x, MIN(M)(x, col)) - d(x, D(x)) per recorded arc
    std::optional<Vertex> closing; // the repeated vertex; absent when growth was aborted
    bool aborted = false;          // running delta sum went positive

    /// Index of the closing vertex in `vertices`, or -1.
    int closing_index() const;
};

struct Candidate {
    PermSet perm;
    Cost total = 0;
};

/// nullopt when the trial is dead: start column collides with D, or the
/// start arc does not improve (delta >= 0), or no admissible column exists.
std::optional<TrialPath> grow_trial_path(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d,
                                         Vertex start, int first_column);

/// Full cycle, proper prefixes starting at the start vertex, and the two-cycle
/// split at an interior closing vertex. Candidates whose terminal arc is a
/// loop of D are dropped.
std::vector<Candidate> candidates_from_path(const CostMatrix& m, const Derangement& d, const TrialPath& path);

struct Phase1Step {
    Derangement next;
    Vertex start;
    Candidate applied;
};

/// nullopt = exhausted.
std::optional<Phase1Step> phase1_step(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d,
                                      const Phase1Config& cfg, Trace* trace = nullptr);

struct Phase1Result {
    Derangement final;
    std::vector<Phase1Step> steps;
    std::vector<Cost> values;  // value of D0, D1, ... (strictly decreasing)
};

Phase1Result run_phase1(const CostMatrix& m, const Derangement& d0, const Phase1Config& cfg, Trace* trace = nullptr);

}  // namespace pcycle
