#pragma once

// Internals shared by the phase 2 search and the phase 3 bounded-cycle
// collection. Not installed.

#include <algorithm>
#include <optional>
#include <vector>

#include "pcycle/phase2.hpp"

namespace pcycle {

struct PathTableAccess {
    static Cost& w(PathTable& t, Vertex a, Vertex b) { return t.w_[t.idx(a, b)]; }
    static Vertex& p(PathTable& t, Vertex a, Vertex b) { return t.p_[t.idx(a, b)]; }
    static EntryStatus& status(PathTable& t, Vertex a, Vertex b) { return t.status_[t.idx(a, b)]; }
    static std::vector<Vertex>& alt(PathTable& t, Vertex a, Vertex b) { return t.alt_[t.idx(a, b)]; }
};

namespace detail {

struct Backtrack {
    std::vector<Vertex> path;   // a ... b, when the chain terminates
    std::optional<Cycle> loop;  // set when the predecessor chain loops
};

Backtrack trace_back(const PathTable& t, Vertex a, Vertex b);

/// Splits a closed walk into simple cycles.
std::vector<std::vector<Vertex>> split_closed_walk(const std::vector<Vertex>& walk, int n);

/// Most negative simple cycle contained in path(a,c) + arc (c,a).
std::optional<FoundCycle> resolve_closure(const ReducedMatrix& r, const PathTable& t, Vertex a, Vertex c, Vertex via);

/// One sweep over pivots. on_extension(ext, improved) is called for each
/// recorded extension; on_closure(a, c, via, value) for each closing-arc
/// test. Either returning false stops the sweep.
template <class OnExtension, class OnClosure>
void sweep(const ReducedMatrix& r, PathTable& t, OnExtension&& on_extension, OnClosure&& on_closure) {
    using A = PathTableAccess;
    const int n = r.size();
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = 0; b < n; ++b) {
            if (t.status(a, b) == EntryStatus::Active) A::status(t, a, b) = EntryStatus::Inactive;
        }
    }
    for (Vertex j = 0; j < n; ++j) {
        for (Vertex a = 0; a < n; ++a) {
            if (a == j || !t.has(a, j)) continue;
            for (Vertex c = 0; c < n; ++c) {
                if (c == j) continue;
                const Cost arc = r(j, c);
                if (is_inf(arc)) continue;
                const Cost w = t.value(a, j);
                const Cost cand = w + arc;
                if (c == a) {
                    if (!on_closure(a, j, j, cand)) return;
                    continue;
                }
                if (cand > t.threshold()) continue;
                const Cost current = t.value(a, c);
                if (cand < current) {
                    A::w(t, a, c) = cand;
                    A::p(t, a, c) = j;
                    A::status(t, a, c) = EntryStatus::Active;
                    A::status(t, a, j) = EntryStatus::Active;
                    if (t.keeps_equal_paths()) A::alt(t, a, c).clear();
                    if (!on_extension(Extension{a, j, c, cand}, true)) return;
                    const Cost back = r(c, a);
                    if (!is_inf(back) && !on_closure(a, c, j, cand + back)) return;
                } else if (cand == current && t.keeps_equal_paths() && t.pred(a, c) != j) {
                    auto& alts = A::alt(t, a, c);
                    if (std::find(alts.begin(), alts.end(), j) == alts.end()) alts.push_back(j);
                    if (!on_extension(Extension{a, j, c, cand}, false)) return;
                }
            }
        }
    }
}

}  // namespace detail
}  // namespace pcycle
