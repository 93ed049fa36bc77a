#include "pcycle/phase2.hpp"

#include <algorithm>
#include <unordered_map>

#include "phase2_detail.hpp"

namespace pcycle {

ReducedMatrix::ReducedMatrix(const CostMatrix& m, const Derangement& d)
    : n_(m.size()), r_(static_cast<std::size_t>(n_) * n_), labels_(d.image()) {
    if (d.size() != n_) throw InvalidArgument("dimension mismatch");
    for (Vertex a = 0; a < n_; ++a) {
        const Cost base = m(a, d(a));
        for (Vertex b = 0; b < n_; ++b) {
            const Vertex target = d(b);
            r_[static_cast<std::size_t>(a) * n_ + b] = target == a ? kInf : m(a, target) - base;
        }
    }
}

ReducedMatrix::ReducedMatrix(int n, std::vector<Cost> entries) : n_(n), r_(std::move(entries)) {
    if (n < 2 || r_.size() != static_cast<std::size_t>(n) * n) throw NonSquare("reduced matrix must be n x n");
    for (Vertex a = 0; a < n; ++a) {
        if ((*this)(a, a) != 0) throw InvalidArgument("reduced matrix diagonal must be 0");
    }
}

Cost ReducedMatrix::cycle_sum(const Cycle& c) const noexcept {
    Cost total = 0;
    for (std::size_t k = 0; k < c.size(); ++k) total = sat_add(total, (*this)(c[k], c.successor_at(k)));
    return total;
}

PathTable::PathTable(const ReducedMatrix& r, Cost threshold, bool keep_equal_paths)
    : n_(r.size()),
      threshold_(threshold),
      keep_equal_(keep_equal_paths),
      w_(static_cast<std::size_t>(n_) * n_, kInf),
      p_(static_cast<std::size_t>(n_) * n_, kDirect),
      status_(static_cast<std::size_t>(n_) * n_, EntryStatus::Absent),
      alt_(keep_equal_paths ? static_cast<std::size_t>(n_) * n_ : 0) {
    for (Vertex a = 0; a < n_; ++a) {
        for (Vertex b = 0; b < n_; ++b) {
            if (a == b) continue;
            Cost v = r(a, b);
            if (!is_inf(v) && v <= threshold_) {
                w_[idx(a, b)] = v;
                status_[idx(a, b)] = EntryStatus::Initial;
            }
        }
    }
}

std::size_t PathTable::recorded_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(w_.begin(), w_.end(), [](Cost v) { return !is_inf(v); }));
}

std::size_t PathTable::alternate_count() const noexcept {
    std::size_t total = 0;
    for (const auto& a : alt_) total += a.size();
    return total;
}

namespace detail {

Backtrack trace_back(const PathTable& t, Vertex a, Vertex b) {
    const int n = t.size();
    std::vector<int> seen_at(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> rev{b};
    seen_at[b] = 0;
    Vertex x = b;
    while (t.pred(a, x) != PathTable::kDirect) {
        x = t.pred(a, x);
        if (x == a) break;  // cannot happen for a well-formed table; treat a as the root
        if (seen_at[x] >= 0) {
            // predecessor chain loops: rev[seen_at[x]] ... rev.back() walked backwards
            std::vector<Vertex> loop(rev.begin() + seen_at[x], rev.end());
            std::reverse(loop.begin(), loop.end());
            return Backtrack{{}, Cycle(std::move(loop))};
        }
        seen_at[x] = static_cast<int>(rev.size());
        rev.push_back(x);
        if (static_cast<int>(rev.size()) > n) break;
    }
    rev.push_back(a);
    std::reverse(rev.begin(), rev.end());
    return Backtrack{std::move(rev), std::nullopt};
}

std::vector<std::vector<Vertex>> split_closed_walk(const std::vector<Vertex>& walk, int n) {
    // walk = [w0, ..., wm], closed by the arc wm -> w0.
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Vertex> stack;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (Vertex v : walk) {
        if (pos[v] >= 0) {
            const auto at = static_cast<std::size_t>(pos[v]);
            std::vector<Vertex> cyc(stack.begin() + static_cast<std::ptrdiff_t>(at), stack.end());
            for (Vertex u : cyc) pos[u] = -1;
            stack.resize(at);
            cycles.push_back(std::move(cyc));
        }
        pos[v] = static_cast<int>(stack.size());
        stack.push_back(v);
    }
    if (stack.size() >= 2) cycles.push_back(std::move(stack));
    return cycles;
}

std::optional<FoundCycle> resolve_closure(const ReducedMatrix& r, const PathTable& t, Vertex a, Vertex c, Vertex via) {
    Backtrack bt = trace_back(t, a, c);
    std::vector<std::vector<Vertex>> pieces;
    if (bt.loop) {
        pieces.push_back(bt.loop->vertices());
    } else {
        pieces = split_closed_walk(bt.path, r.size());
    }
    std::optional<FoundCycle> best;
    for (auto& piece : pieces) {
        if (piece.size() < 2) continue;
        Cycle cyc(std::move(piece));
        Cost v = r.cycle_sum(cyc);
        if (v < 0 && (!best || v < best->value)) best = FoundCycle{std::move(cyc), v, a, c, via};
    }
    return best;
}

}  // namespace detail

std::vector<Vertex> recover_path(const PathTable& t, Vertex a, Vertex b) {
    if (!t.has(a, b)) throw InvalidArgument("no recorded path for this pair");
    auto bt = detail::trace_back(t, a, b);
    if (bt.loop || static_cast<int>(bt.path.size()) > t.size() + 1) {
        throw CorruptTable("predecessor chain does not terminate");
    }
    return std::move(bt.path);
}

std::optional<FoundCycle> seed_closure(const ReducedMatrix& r, const PathTable& t) {
    const int n = r.size();
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = 0; b < n; ++b) {
            if (a == b || !t.has(a, b)) continue;
            Cost back = r(b, a);
            if (!is_inf(back) && t.value(a, b) + back < 0) {
                Cycle c({a, b});
                return FoundCycle{c, r.cycle_sum(c), a, b, -1};
            }
        }
    }
    return std::nullopt;
}

namespace {

template <class Cell>
std::string format_table(int n, const std::vector<Vertex>* header, Cell cell) {
    auto pad = [](std::string v) { return std::string(v.size() < 5 ? 5 - v.size() : 1, ' ') + v; };
    std::string out = "     ";
    for (Vertex b = 0; b < n; ++b) out += pad(std::to_string(b + 1));
    out += '\n';
    if (header && !header->empty()) {
        out += "   D ";
        for (Vertex b = 0; b < n; ++b) out += pad(std::to_string((*header)[b] + 1));
        out += '\n';
    }
    for (Vertex a = 0; a < n; ++a) {
        out += pad(std::to_string(a + 1));
        for (Vertex b = 0; b < n; ++b) out += pad(cell(a, b));
        out += '\n';
    }
    return out;
}

}  // namespace

std::string format_reduced(const ReducedMatrix& r) {
    return format_table(r.size(), &r.column_labels(), [&](Vertex a, Vertex b) {
        return is_inf(r(a, b)) ? std::string("inf") : std::to_string(r(a, b));
    });
}

std::string format_path_values(const PathTable& t) {
    return format_table(t.size(), nullptr, [&](Vertex a, Vertex b) {
        return t.has(a, b) ? std::to_string(t.value(a, b)) : std::string(".");
    });
}

std::string format_predecessors(const PathTable& t) {
    return format_table(t.size(), nullptr, [&](Vertex a, Vertex b) {
        if (!t.has(a, b)) return std::string(".");
        return t.pred(a, b) == PathTable::kDirect ? std::string("-") : std::to_string(t.pred(a, b) + 1);
    });
}

PassResult fw_pass(const ReducedMatrix& r, PathTable& t) {
    PassResult result;
    detail::sweep(r, t, [&](const Extension& ext, bool improved) {
        if (improved) {
            result.changed = true;
            result.extensions.push_back(ext);
        }
        return true;
    }, [&](Vertex a, Vertex c, Vertex via, Cost closed_value) {
        if (closed_value >= 0) return true;
        if (auto found = detail::resolve_closure(r, t, a, c, via)) {
            result.found = std::move(found);
            return false;
        }
        return true;
    });
    return result;
}

Phase2Result run_phase2(const CostMatrix& m, const Derangement& d, const Phase2Options& opts, Trace* trace) {
    Phase2Result result{d, {}, 0, 0};
    const int n = m.size();
    Cost value = derangement_value(m, d);
    while (true) {
        const ReducedMatrix r(m, result.optimum);
        PathTable table(r, -1, opts.keep_equal_paths);
        std::optional<FoundCycle> found = seed_closure(r, table);
        int passes = 0;
        while (!found) {
            if (++passes > n + 1) throw InternalError("negative-path search exceeded its pass limit");
            PassResult pass = fw_pass(r, table);
            ++result.passes;
            if (trace) {
                trace->record(TraceEvent{.kind = EventKind::PassCompleted,
                                         .phase = 2,
                                         .pass = passes,
                                         .value_before = value,
                                         .value_after = value,
                                         .count = static_cast<int>(pass.extensions.size()),
                                         .note = pass.found ? "cycle" : (pass.changed ? "changed" : "stable")});
            }
            if (pass.found) {
                found = std::move(pass.found);
            } else if (!pass.changed) {
                break;
            }
        }
        result.equal_alternates += table.alternate_count();
        if (!found) return result;

        ValuedCycle vc = cycle_value(m, result.optimum, found->cycle);
        if (vc.total != found->value || vc.total >= 0) throw InternalError("reduced cycle value disagrees with M");
        if (trace) {
            std::vector<Vertex> path = detail::trace_back(table, found->from, found->to).path;
            trace->record(TraceEvent{.kind = EventKind::CycleFound,
                                     .phase = 2,
                                     .start = found->from,
                                     .pass = passes,
                                     .path = std::move(path),
                                     .cycles = {found->cycle},
                                     .total = vc.total,
                                     .value_before = value,
                                     .value_after = value});
        }
        result.optimum = apply_cycle(result.optimum, found->cycle);
        if (trace) {
            trace->record(TraceEvent{.kind = EventKind::CycleApplied,
                                     .phase = 2,
                                     .cycles = {found->cycle},
                                     .total = vc.total,
                                     .value_before = value,
                                     .value_after = value + vc.total});
        }
        value += vc.total;
        result.applied.push_back(std::move(vc));
    }
}

}  // namespace pcycle
