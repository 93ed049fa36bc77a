#include "pcycle/phase3.hpp"

#include <algorithm>
#include <set>

#include "phase2_detail.hpp"

namespace pcycle {

std::string_view to_string(Exactness e) noexcept {
    return e == Exactness::CertifiedOptimal ? "certified_optimal" : "heuristic";
}

Cost schedule_unit(const ReducedMatrix& r) {
    const int n = r.size();
    Cost sum = 0;
    Cost count = 0;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = 0; b < n; ++b) {
            if (a == b || is_inf(r(a, b))) continue;
            sum += r(a, b);
            ++count;
        }
    }
    if (count == 0 || sum <= 0) return 1;
    return std::max<Cost>(1, (sum + count - 1) / count);
}

BoundSchedule BoundSchedule::make(const ReducedMatrix& r, std::optional<Cost> gap, std::optional<Cost> cap) {
    BoundSchedule s;
    s.m = schedule_unit(r);
    const Cost top = cap ? std::max<Cost>(*cap, 0) : 3 * s.m;
    if (gap && *gap < 0) return s;
    for (Cost b = s.m;; b += s.m) {
        Cost clipped = std::min(b, top);
        if (gap) clipped = std::min(clipped, *gap);
        if (s.budgets.empty() || clipped > s.budgets.back()) s.budgets.push_back(clipped);
        if (b >= top || (gap && clipped == *gap)) break;
    }
    return s;
}

namespace {

/// Shortest distances from a virtual source joined to every vertex by a
/// 0-arc. Reduced arcs R(a,b) + pot[a] - pot[b] are then >= 0.
std::vector<Cost> potentials(const ReducedMatrix& r) {
    const int n = r.size();
    std::vector<Cost> pot(static_cast<std::size_t>(n), 0);
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = 0; b < n; ++b) {
                if (a == b || is_inf(r(a, b))) continue;
                if (pot[a] + r(a, b) < pot[b]) {
                    pot[b] = pot[a] + r(a, b);
                    changed = true;
                }
            }
        }
        if (!changed) return pot;
    }
    throw InvalidArgument("reduced matrix has a negative cycle");
}

class CycleDfs {
public:
    CycleDfs(const ReducedMatrix& r, Cost budget, CollectLimits limits, std::set<std::vector<Vertex>>& out)
        : r_(r), pot_(potentials(r)), budget_(budget), limits_(limits), out_(out),
          on_path_(static_cast<std::size_t>(r.size()), false) {}

    bool run() {
        for (Vertex s = 0; s < r_.size(); ++s) {
            start_ = s;
            path_.assign(1, s);
            on_path_[s] = true;
            if (!extend(s, 0, 0)) return false;
            on_path_[s] = false;
        }
        return true;
    }

private:
    bool extend(Vertex v, Cost actual, Cost reduced) {
        if (path_.size() >= 2) {
            const Cost back = r_(v, start_);
            if (!is_inf(back)) {
                const Cost total = actual + back;
                if (total >= 0 && total <= budget_) {
                    out_.insert(path_);
                    if (out_.size() > limits_.max_cycles) return false;
                }
            }
        }
        for (Vertex w = start_ + 1; w < r_.size(); ++w) {
            if (on_path_[w]) continue;
            const Cost arc = r_(v, w);
            if (is_inf(arc)) continue;
            const Cost rc = reduced + arc + pot_[v] - pot_[w];
            if (rc > budget_) continue;
            if (++nodes_ > limits_.max_nodes) return false;
            on_path_[w] = true;
            path_.push_back(w);
            const bool go_on = extend(w, actual + arc, rc);
            path_.pop_back();
            on_path_[w] = false;
            if (!go_on) return false;
        }
        return true;
    }

    const ReducedMatrix& r_;
    std::vector<Cost> pot_;
    Cost budget_;
    CollectLimits limits_;
    std::size_t nodes_ = 0;
    std::set<std::vector<Vertex>>& out_;
    std::vector<bool> on_path_;
    std::vector<Vertex> path_;
    Vertex start_ = 0;
};

/// Closed cycles met by the path search run with threshold = budget.
std::set<std::vector<Vertex>> path_search_cycles(const ReducedMatrix& r, Cost budget) {
    std::set<std::vector<Vertex>> found;
    PathTable table(r, budget);
    auto keep = [&](Vertex a, Vertex c, Vertex, Cost closed) {
        if (closed < 0 || closed > budget) return true;
        auto bt = detail::trace_back(table, a, c);
        std::vector<std::vector<Vertex>> pieces;
        if (bt.loop) {
            pieces.push_back(bt.loop->vertices());
        } else {
            pieces = detail::split_closed_walk(bt.path, r.size());
        }
        for (auto& piece : pieces) {
            if (piece.size() < 2) continue;
            Cycle cyc(std::move(piece));
            const Cost v = r.cycle_sum(cyc);
            if (v >= 0 && v <= budget) found.insert(cyc.canonical().vertices());
        }
        return true;
    };
    const int max_passes = 2 * r.size() + 2;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        detail::sweep(r, table, [&](const Extension&, bool improved) {
            changed = changed || improved;
            return true;
        }, keep);
        if (!changed) break;
    }
    return found;
}

}  // namespace

CycleCollection collect_bounded_cycles(const ReducedMatrix& r, Cost budget, CollectLimits limits) {
    CycleCollection out;
    if (budget < 0) return out;
    std::set<std::vector<Vertex>> all;
    out.complete = CycleDfs(r, budget, limits, all).run();
    if (out.complete) {
        for (const auto& c : path_search_cycles(r, budget)) {
            if (all.count(c)) ++out.from_paths;
        }
    }
    out.cycles.reserve(all.size());
    for (const auto& vs : all) {
        Cycle c(vs);
        const Cost v = r.cycle_sum(c);
        out.cycles.push_back({std::move(c), v});
    }
    std::sort(out.cycles.begin(), out.cycles.end(), [](const BoundedCycle& x, const BoundedCycle& y) {
        return x.value != y.value ? x.value < y.value : x.cycle < y.cycle;
    });
    return out;
}

namespace {

class PatchSearcher {
public:
    PatchSearcher(const Derangement& sigma, const std::vector<BoundedCycle>& cycles, Cost budget, std::size_t max_nodes)
        : sigma_(sigma), cycles_(cycles), bound_(budget), max_nodes_(max_nodes),
          used_(static_cast<std::size_t>(sigma.size()), false) {
        order_.resize(cycles.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return cycles_[a].value < cycles_[b].value; });
    }

    PatchSearch run() {
        search(0, 0);
        return std::move(result_);
    }

private:
    void search(std::size_t from, Cost total) {
        for (std::size_t k = from; k < order_.size(); ++k) {
            const auto& bc = cycles_[order_[k]];
            if (total + bc.value > bound_) return;
            if (std::any_of(bc.cycle.vertices().begin(), bc.cycle.vertices().end(),
                            [&](Vertex v) { return used_[v]; })) {
                continue;
            }
            if (++result_.nodes > max_nodes_) {
                result_.complete = false;
                return;
            }
            chosen_.push_back(bc.cycle);
            for (Vertex v : bc.cycle.vertices()) used_[v] = true;
            const Cost next = total + bc.value;
            PermSet s(chosen_);
            Derangement d = apply_cycle_set(sigma_, s);
            if (is_tour(d)) {
                // values are non-negative, so adding cycles cannot beat this
                result_.best = PatchResult{std::move(d), next, std::move(s), Exactness::Heuristic};
                bound_ = next - 1;
            } else {
                search(k + 1, next);
            }
            for (Vertex v : bc.cycle.vertices()) used_[v] = false;
            chosen_.pop_back();
            if (!result_.complete) return;
        }
    }

    const Derangement& sigma_;
    const std::vector<BoundedCycle>& cycles_;
    Cost bound_;
    std::size_t max_nodes_;
    std::vector<bool> used_;
    std::vector<std::size_t> order_;
    std::vector<Cycle> chosen_;
    PatchSearch result_;
};

}  // namespace

PatchSearch patch_to_tour(const Derangement& sigma, const std::vector<BoundedCycle>& cycles, Cost budget,
                          std::size_t max_nodes) {
    if (is_tour(sigma)) {
        PatchSearch out;
        if (budget >= 0) out.best = PatchResult{sigma, 0, PermSet{}, Exactness::Heuristic};
        return out;
    }
    for (const auto& bc : cycles) {
        if (bc.value < 0) throw InvalidArgument("patch cycles must have non-negative value");
    }
    return PatchSearcher(sigma, cycles, budget, max_nodes).run();
}

PermSet connecting_cycles(const Derangement& sigma, const Derangement& tour) {
    const int n = sigma.size();
    if (tour.size() != n) throw InvalidArgument("dimension mismatch");
    std::vector<Vertex> s(static_cast<std::size_t>(n));
    for (Vertex a = 0; a < n; ++a) s[a] = sigma.inverse(tour(a));
    std::vector<Cycle> out;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Vertex a = 0; a < n; ++a) {
        if (seen[a] || s[a] == a) continue;
        std::vector<Vertex> vs;
        for (Vertex x = a; !seen[x]; x = s[x]) {
            seen[x] = true;
            vs.push_back(x);
        }
        out.emplace_back(std::move(vs));
    }
    return PermSet(std::move(out));
}

PatchResult run_phase3(const CostMatrix& m, const Derangement& sigma, const std::optional<Derangement>& best_tour_seen,
                       const Phase3Options& opts, Trace* trace) {
    if (sigma.size() != m.size()) throw InvalidArgument("dimension mismatch");
    if (best_tour_seen && !is_tour(*best_tour_seen)) throw InvalidArgument("best_tour_seen is not a tour");
    const Cost ap = derangement_value(m, sigma);
    if (is_tour(sigma)) return PatchResult{sigma, 0, PermSet{}, Exactness::CertifiedOptimal};

    auto fallback = [&](Exactness e) {
        const Cost v = derangement_value(m, *best_tour_seen);
        return PatchResult{*best_tour_seen, v - ap, connecting_cycles(sigma, *best_tour_seen), e};
    };

    const ReducedMatrix r(m, sigma);
    std::optional<Cost> gap;
    if (best_tour_seen) {
        gap = derangement_value(m, *best_tour_seen) - ap - 1;
        // nothing below the AP bound exists
        if (*gap < 0) return fallback(Exactness::CertifiedOptimal);
    }
    const BoundSchedule schedule = BoundSchedule::make(r, gap, opts.budget_cap);

    for (Cost budget : schedule.budgets) {
        CycleCollection cc = collect_bounded_cycles(r, budget, {opts.max_cycles, opts.max_search_nodes});
        if (trace) {
            trace->record(TraceEvent{.kind = EventKind::BoundedCycles,
                                     .phase = 3,
                                     .value_before = ap,
                                     .value_after = ap,
                                     .budget = budget,
                                     .count = static_cast<int>(cc.cycles.size()),
                                     .note = cc.complete ? "complete" : "truncated"});
        }
        PatchSearch ps = patch_to_tour(sigma, cc.cycles, budget, opts.max_nodes);
        const bool complete = cc.complete && ps.complete;
        if (trace) {
            TraceEvent ev{.kind = EventKind::PatchAttempt, .phase = 3, .value_before = ap, .value_after = ap,
                          .budget = budget, .count = static_cast<int>(ps.nodes)};
            if (ps.best) {
                ev.cycles = ps.best->cycles_used.cycles();
                ev.total = ps.best->added_value;
                ev.value_after = ap + ps.best->added_value;
                ev.note = "tour";
            } else {
                ev.note = complete ? "none" : "none_truncated";
            }
            trace->record(std::move(ev));
        }
        if (ps.best) {
            ps.best->exactness = complete ? Exactness::CertifiedOptimal : Exactness::Heuristic;
            return std::move(*ps.best);
        }
        if (gap && budget == *gap && complete) return fallback(Exactness::CertifiedOptimal);
    }
    if (best_tour_seen) return fallback(Exactness::Heuristic);
    const Cost cap = schedule.budgets.empty() ? 0 : schedule.budgets.back();
    throw NoTourFound("no tour within budget cap " + std::to_string(cap));
}

}  // namespace pcycle
