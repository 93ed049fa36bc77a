#pragma once

// Assignment-problem optimality by negative-cycle elimination.
//
// The reduced matrix R(a,b) = d(a, D(b)) - d(a, D(a)) turns "apply the
// permutation cycle (v1 ... vk) to D" into "walk the cycle in R": the value
// change is exactly the R-sum of the cycle. D is AP-optimal iff R has no
// negative directed cycle. The search keeps, for every pair (a,c), the best
// negative path found so far and extends recorded paths one arc at a time.

#include <optional>
#include <string>
#include <vector>

#include "pcycle/core.hpp"
#include "pcycle/trace.hpp"

namespace pcycle {

class ReducedMatrix {
public:
    ReducedMatrix(const CostMatrix& m, const Derangement& d);

    /// Direct construction, mainly for tests and oracles. Diagonal must be 0.
    ReducedMatrix(int n, std::vector<Cost> entries);

    int size() const noexcept { return n_; }
    Cost operator()(Vertex a, Vertex b) const noexcept { return r_[static_cast<std::size_t>(a) * n_ + b]; }

    /// Column header labels D(1..n); empty for directly constructed matrices.
    const std::vector<Vertex>& column_labels() const noexcept { return labels_; }

    /// R-sum over the arcs of a cycle (kInf if any arc is infinite).
    Cost cycle_sum(const Cycle& c) const noexcept;

private:
    int n_ = 0;
    std::vector<Cost> r_;
    std::vector<Vertex> labels_;
};

inline ReducedMatrix build_reduced(const CostMatrix& m, const Derangement& d) { return ReducedMatrix(m, d); }

enum class EntryStatus : unsigned char { Absent, Initial, Active, Inactive };

/// Best-known path values W and predecessors P for every ordered pair.
class PathTable {
public:
    static constexpr Vertex kDirect = -1;

    /// Seeds W with every direct arc whose value is <= threshold. threshold = -1
    /// gives the strictly-negative discipline of the optimality search.
    PathTable(const ReducedMatrix& r, Cost threshold = -1, bool keep_equal_paths = false);

    int size() const noexcept { return n_; }
    Cost threshold() const noexcept { return threshold_; }
    bool keeps_equal_paths() const noexcept { return keep_equal_; }

    bool has(Vertex a, Vertex b) const noexcept { return !is_inf(w_[idx(a, b)]); }
    Cost value(Vertex a, Vertex b) const noexcept { return w_[idx(a, b)]; }
    /// Vertex preceding b on the recorded path a -> b, or kDirect.
    Vertex pred(Vertex a, Vertex b) const noexcept { return p_[idx(a, b)]; }
    EntryStatus status(Vertex a, Vertex b) const noexcept { return status_[idx(a, b)]; }
    /// Equal-valued alternative predecessors (only with keep_equal_paths).
    const std::vector<Vertex>& alternates(Vertex a, Vertex b) const { return alt_[idx(a, b)]; }

    std::size_t recorded_count() const noexcept;
    std::size_t alternate_count() const noexcept;

private:
    friend struct PathTableAccess;

    std::size_t idx(Vertex a, Vertex b) const noexcept { return static_cast<std::size_t>(a) * n_ + b; }

    int n_;
    Cost threshold_;
    bool keep_equal_;
    std::vector<Cost> w_;
    std::vector<Vertex> p_;
    std::vector<EntryStatus> status_;
    std::vector<std::vector<Vertex>> alt_;
};

/// a -> ... -> b by expanding predecessors right to left. Throws CorruptTable
/// if the chain does not end within n steps.
std::vector<Vertex> recover_path(const PathTable& t, Vertex a, Vertex b);

struct Extension {
    Vertex from;
    Vertex via;
    Vertex to;
    Cost value;
};

struct FoundCycle {
    Cycle cycle;
    Cost value;
    Vertex from;  // the path endpoints whose closure produced it
    Vertex to;
    Vertex via;   // pivot of the extension that triggered it (-1 at seeding)
};

struct PassResult {
    bool changed = false;
    std::optional<FoundCycle> found;
    std::vector<Extension> extensions;  // in pivot order
};

/// One sweep over pivots j = 0..n-1 extending every recorded (a,j) by every
/// arc (j,c). After each new or improved entry the closing arc (c,a) is
/// tried; the first negative closure is returned.
PassResult fw_pass(const ReducedMatrix& r, PathTable& t);

/// Closure test on the seeded table (negative 2-cycles of direct arcs).
std::optional<FoundCycle> seed_closure(const ReducedMatrix& r, const PathTable& t);

struct Phase2Options {
    bool keep_equal_paths = false;
};

struct Phase2Result {
    Derangement optimum;
    std::vector<ValuedCycle> applied;
    int passes = 0;        // total passes over all reduced matrices
    std::size_t equal_alternates = 0;
};

/// Fixed-width tables, rows and columns labelled 1..n; the header row of
/// the reduced matrix shows D(b) under each column b. Absent entries print
/// as ".", infinite ones as "inf", direct predecessors as "-".
std::string format_reduced(const ReducedMatrix& r);
std::string format_path_values(const PathTable& t);
std::string format_predecessors(const PathTable& t);

Phase2Result run_phase2(const CostMatrix& m, const Derangement& d, const Phase2Options& opts = {},
                        Trace* trace = nullptr);

}  // namespace pcycle
