#include "pcycle/phase1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

namespace pcycle {

namespace {

struct Hop {
    Vertex next = -1;  // permutation image of the arc, D^-1(target)
    int column = 0;    // 1-based
    Cost delta = 0;
};

/// Successor of a non-start vertex: column 1 unless that is the arc of D.
/// Deterministic per (D, x), so trials of one start vertex share it.
class HopCache {
public:
    HopCache(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d)
        : m_(m), index_(index), d_(d), cache_(static_cast<std::size_t>(m.size())) {}

    const std::optional<Hop>& at(Vertex x) {
        auto& slot = cache_[x];
        if (!slot.computed) {
            slot.computed = true;
            for (int rank = 0; rank < index_.row_length(); ++rank) {
                Vertex t = index_.column(x, rank);
                Vertex y = d_.inverse(t);
                if (y == x) continue;
                slot.hop = Hop{y, rank + 1, m_(x, t) - m_(x, d_(x))};
                break;
            }
        }
        return slot.hop;
    }

private:
    struct Slot {
        bool computed = false;
        std::optional<Hop> hop;
    };
    const CostMatrix& m_;
    const SortedRowIndex& index_;
    const Derangement& d_;
    std::vector<Slot> cache_;
};

std::optional<TrialPath> grow(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d, Vertex start,
                              int first_column, HopCache& hops) {
    if (first_column < 1 || first_column > index.row_length()) return std::nullopt;
    Vertex t = index.column(start, first_column - 1);
    Vertex y = d.inverse(t);
    if (y == start) return std::nullopt;
    Cost delta = m(start, t) - m(start, d(start));
    if (delta >= 0) return std::nullopt;

    TrialPath path;
    std::vector<bool> on_path(static_cast<std::size_t>(m.size()), false);
    path.vertices.push_back(start);
    on_path[start] = true;
    path.columns.push_back(first_column);
    path.deltas.push_back(delta);
    Cost running = delta;

    while (true) {
        if (on_path[y]) {
            path.closing = y;
            return path;
        }
        path.vertices.push_back(y);
        on_path[y] = true;
        const auto& hop = hops.at(y);
        if (!hop) return std::nullopt;
        running += hop->delta;
        if (running > 0) {
            path.aborted = true;
            return path;
        }
        path.columns.push_back(hop->column);
        path.deltas.push_back(hop->delta);
        y = hop->next;
    }
}

/// Total of cycle s against d, or nullopt when an arc hits a loop.
std::optional<Cost> cycle_total(const CostMatrix& m, const Derangement& d, std::span<const Vertex> s) {
    Cost total = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        Vertex a = s[k];
        Vertex target = d(s[(k + 1) % s.size()]);
        if (target == a) return std::nullopt;
        total += m(a, target) - m(a, d(a));
    }
    return total;
}

Cost current_value(const CostMatrix& m, const Derangement& d) { return derangement_value(m, d); }

}  // namespace

Phase1Config Phase1Config::defaults_for(int n) {
    int k = static_cast<int>(std::floor(std::log(static_cast<double>(n)))) + 1;
    k = std::max(k, 1);
    return Phase1Config{k, k};
}

int TrialPath::closing_index() const {
    if (!closing) return -1;
    auto it = std::find(vertices.begin(), vertices.end(), *closing);
    return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

std::optional<TrialPath> grow_trial_path(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d,
                                         Vertex start, int first_column) {
    HopCache hops(m, index, d);
    return grow(m, index, d, start, first_column, hops);
}

std::vector<Candidate> candidates_from_path(const CostMatrix& m, const Derangement& d, const TrialPath& path) {
    std::vector<Candidate> out;
    const auto& vs = path.vertices;
    const std::size_t k = vs.size();
    std::span<const Vertex> all(vs);

    for (std::size_t len = 2; len <= k; ++len) {
        auto prefix = all.first(len);
        if (auto total = cycle_total(m, d, prefix)) {
            out.push_back({PermSet({Cycle(std::vector<Vertex>(prefix.begin(), prefix.end()))}), *total});
        }
    }

    int c = path.closing_index();
    if (c > 0) {
        auto head = all.first(static_cast<std::size_t>(c));
        auto tail = all.subspan(static_cast<std::size_t>(c));
        if (tail.size() >= 2) {
            std::vector<Cycle> parts;
            Cost total = 0;
            bool ok = true;
            if (head.size() >= 2) {
                if (auto t = cycle_total(m, d, head)) {
                    total += *t;
                    parts.emplace_back(std::vector<Vertex>(head.begin(), head.end()));
                } else {
                    ok = false;
                }
            }
            if (ok) {
                if (auto t = cycle_total(m, d, tail)) {
                    total += *t;
                    parts.emplace_back(std::vector<Vertex>(tail.begin(), tail.end()));
                } else {
                    ok = false;
                }
            }
            if (ok) out.push_back({PermSet(std::move(parts)), total});
        }
    }
    return out;
}

std::optional<Phase1Step> phase1_step(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d,
                                      const Phase1Config& cfg, Trace* trace) {
    if (cfg.trials_per_vertex < 1 || cfg.vertices_before_giving_up < 1) {
        throw InvalidArgument("phase 1 knobs must be >= 1");
    }
    const int n = m.size();
    const RowForm rf = build_row_form(m, index, d);
    const Cost value = current_value(m, d);

    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return rf.diff[a] < rf.diff[b]; });

    HopCache hops(m, index, d);
    int failures = 0;
    for (Vertex start : order) {
        std::optional<Candidate> best;
        for (int trial = 1; trial <= cfg.trials_per_vertex; ++trial) {
            auto path = grow(m, index, d, start, trial, hops);
            if (trace) {
                TraceEvent ev{.kind = EventKind::TrialPath, .phase = 1, .start = start, .trial = trial};
                if (path) {
                    ev.path = path->vertices;
                    if (path->closing) ev.path.push_back(*path->closing);
                    ev.note = path->aborted ? "aborted" : "closed";
                } else {
                    ev.note = "dead";
                }
                ev.value_before = ev.value_after = value;
                trace->record(std::move(ev));
            }
            if (!path) continue;
            for (auto& cand : candidates_from_path(m, d, *path)) {
                if (trace) {
                    trace->record(TraceEvent{.kind = EventKind::CandidateValued,
                                             .phase = 1,
                                             .start = start,
                                             .trial = trial,
                                             .cycles = cand.perm.cycles(),
                                             .total = cand.total,
                                             .value_before = value,
                                             .value_after = value});
                }
                if (!best || cand.total < best->total) best = std::move(cand);
            }
        }
        if (best && best->total < 0) {
            Derangement next = apply_cycle_set(d, best->perm);
            if (trace) {
                trace->record(TraceEvent{.kind = EventKind::CycleApplied,
                                         .phase = 1,
                                         .start = start,
                                         .cycles = best->perm.cycles(),
                                         .total = best->total,
                                         .value_before = value,
                                         .value_after = value + best->total});
            }
            return Phase1Step{std::move(next), start, std::move(*best)};
        }
        if (++failures >= cfg.vertices_before_giving_up) break;
    }
    if (trace) {
        trace->record(TraceEvent{.kind = EventKind::Exhausted,
                                 .phase = 1,
                                 .value_before = value,
                                 .value_after = value,
                                 .count = failures});
    }
    return std::nullopt;
}

Phase1Result run_phase1(const CostMatrix& m, const Derangement& d0, const Phase1Config& cfg, Trace* trace) {
    if (d0.size() != m.size()) throw InvalidArgument("dimension mismatch");
    const SortedRowIndex index(m);
    Phase1Result result{d0, {}, {derangement_value(m, d0)}};
    while (auto step = phase1_step(m, index, result.final, cfg, trace)) {
        result.final = step->next;
        result.values.push_back(result.values.back() + step->applied.total);
        result.steps.push_back(std::move(*step));
    }
    return result;
}

}  // namespace pcycle
