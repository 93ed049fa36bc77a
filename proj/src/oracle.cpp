#include "pcycle/oracle.hpp"

#include <algorithm>
#include <limits>

namespace pcycle {

std::pair<Cost, Derangement> hungarian_ap(const CostMatrix& m) {
    const int n = m.size();
    for (Vertex i = 0; i < n; ++i) {
        bool row_ok = false;
        bool col_ok = false;
        for (Vertex j = 0; j < n; ++j) {
            row_ok = row_ok || !is_inf(m(i, j));
            col_ok = col_ok || !is_inf(m(j, i));
        }
        if (!row_ok || !col_ok) throw Infeasible("a row or column has no finite entry");
    }
    // 1-based arrays, column 0 is the virtual root of each augmentation.
    const Cost big = kInf;
    std::vector<Cost> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), big);
        std::fill(used.begin(), used.end(), false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            Cost delta = big;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const Cost c = m(i0 - 1, j - 1);
                if (!is_inf(c)) {
                    const Cost cur = c - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 < 0) throw Infeasible("no finite assignment exists");
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else if (minv[j] < big) {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) image[p[j] - 1] = j - 1;
    Derangement d(std::move(image));
    return {derangement_value(m, d), std::move(d)};
}

namespace {

template <class V>
std::pair<Cost, Derangement> held_karp_impl(const CostMatrix& m) {
    const int n = m.size();
    const int k = n - 1;  // vertices 1..n-1 live in the mask; vertex 0 is the start
    const std::size_t masks = std::size_t{1} << k;
    const V inf = std::numeric_limits<V>::max() / 2;
    std::vector<V> dp(masks * k, inf);
    auto at = [&](std::size_t mask, int last) -> V& { return dp[mask * k + last]; };
    auto w = [&](Vertex a, Vertex b) -> V { return is_inf(m(a, b)) ? inf : static_cast<V>(m(a, b)); };

    for (int j = 0; j < k; ++j) at(std::size_t{1} << j, j) = w(0, j + 1);
    for (std::size_t mask = 1; mask < masks; ++mask) {
        for (int last = 0; last < k; ++last) {
            if (!(mask >> last & 1)) continue;
            const V base = at(mask, last);
            if (base >= inf) continue;
            for (int nxt = 0; nxt < k; ++nxt) {
                if (mask >> nxt & 1) continue;
                const V arc = w(last + 1, nxt + 1);
                if (arc >= inf) continue;
                V& slot = at(mask | std::size_t{1} << nxt, nxt);
                slot = std::min<V>(slot, base + arc);
            }
        }
    }
    const std::size_t full = masks - 1;
    V best = inf;
    int best_last = -1;
    for (int last = 0; last < k; ++last) {
        const V a = at(full, last);
        const V back = w(last + 1, 0);
        if (a >= inf || back >= inf) continue;
        if (a + back < best) {
            best = a + back;
            best_last = last;
        }
    }
    if (best_last < 0) throw Infeasible("no finite tour exists");

    std::vector<Vertex> order;  // reversed tour, excluding vertex 0
    std::size_t mask = full;
    int last = best_last;
    while (last >= 0) {
        order.push_back(last + 1);
        const std::size_t prev = mask & ~(std::size_t{1} << last);
        int from = -1;
        if (prev != 0) {
            for (int j = 0; j < k; ++j) {
                if ((prev >> j & 1) && at(prev, j) < inf && at(prev, j) + w(j + 1, last + 1) == at(mask, last)) {
                    from = j;
                    break;
                }
            }
        }
        mask = prev;
        last = from;
    }
    std::vector<Vertex> image(static_cast<std::size_t>(n));
    Vertex cur = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        image[cur] = *it;
        cur = *it;
    }
    image[cur] = 0;
    Derangement d(std::move(image));
    return {derangement_value(m, d), std::move(d)};
}

}  // namespace

std::pair<Cost, Derangement> held_karp_tsp(const CostMatrix& m, int cap) {
    const int n = m.size();
    if (n > cap) throw TooLarge("held_karp_tsp: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    if (n == 2) {
        Derangement d = Derangement::cyclic(2);
        return {derangement_value(m, d), d};
    }
    Cost max_entry = 0;
    for (Cost c : m.entries()) {
        if (!is_inf(c)) max_entry = std::max(max_entry, c < 0 ? -c : c);
    }
    if (max_entry * n < (Cost{1} << 29)) return held_karp_impl<std::int32_t>(m);
    return held_karp_impl<std::int64_t>(m);
}

bool bellman_negative_cycle(const ReducedMatrix& r) {
    const int n = r.size();
    std::vector<Cost> dist(static_cast<std::size_t>(n), 0);
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = 0; b < n; ++b) {
                const Cost w = r(a, b);
                if (a == b || is_inf(w)) continue;
                if (dist[a] + w < dist[b]) {
                    dist[b] = dist[a] + w;
                    changed = true;
                }
            }
        }
        if (!changed) return false;
    }
    return true;
}

namespace {

void brute_from(const ReducedMatrix& r, Cost budget, int max_len, Vertex start, std::vector<Vertex>& path,
                std::vector<bool>& on, Cost sum, std::vector<BoundedCycle>& out) {
    const Vertex v = path.back();
    if (path.size() >= 2 && !is_inf(r(v, start)) && sum + r(v, start) <= budget) {
        out.push_back({Cycle(path), sum + r(v, start)});
    }
    if (static_cast<int>(path.size()) >= max_len) return;
    for (Vertex w = start + 1; w < r.size(); ++w) {
        if (on[w] || is_inf(r(v, w))) continue;
        on[w] = true;
        path.push_back(w);
        brute_from(r, budget, max_len, start, path, on, sum + r(v, w), out);
        path.pop_back();
        on[w] = false;
    }
}

}  // namespace

std::vector<BoundedCycle> brute_cycles(const ReducedMatrix& r, Cost budget, int max_len) {
    const int n = r.size();
    if (n > 10 && max_len > 6) throw TooLarge("brute_cycles: needs n <= 10 or max_len <= 6");
    std::vector<BoundedCycle> out;
    std::vector<bool> on(static_cast<std::size_t>(n), false);
    for (Vertex s = 0; s < n; ++s) {
        std::vector<Vertex> path{s};
        on[s] = true;
        brute_from(r, budget, max_len, s, path, on, 0, out);
        on[s] = false;
    }
    std::sort(out.begin(), out.end(), [](const BoundedCycle& x, const BoundedCycle& y) {
        return x.value != y.value ? x.value < y.value : x.cycle < y.cycle;
    });
    return out;
}

OracleReport run_oracles(const CostMatrix& m, int held_karp_cap) {
    auto [ap, ap_d] = hungarian_ap(m);
    auto [tsp, tsp_d] = held_karp_tsp(m, held_karp_cap);
    return OracleReport{ap, std::move(ap_d), tsp, std::move(tsp_d)};
}

}  // namespace pcycle
