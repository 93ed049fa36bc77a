#pragma once

// Shared fixtures and hand-rolled generators for the test suites. Nothing in
// here calls the solver phases; reference values are built independently.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "pcycle/core.hpp"
#include "pcycle/io.hpp"

namespace pcycle::test {

using Rng = std::mt19937_64;

inline Cycle cyc(std::initializer_list<int> one_based) {
    std::vector<Vertex> v;
    for (int x : one_based) v.push_back(x - 1);
    return Cycle(std::move(v));
}

inline std::vector<Vertex> zero_based(std::initializer_list<int> one_based) {
    std::vector<Vertex> v;
    for (int x : one_based) v.push_back(x - 1);
    return v;
}

inline std::vector<int> one_based(const std::vector<Vertex>& v) {
    std::vector<int> out;
    for (Vertex x : v) out.push_back(x + 1);
    return out;
}

inline CostMatrix random_matrix(Rng& rng, int n, Cost lo = 1, Cost hi = 99) {
    std::uniform_int_distribution<Cost> dist(lo, hi);
    std::vector<Cost> e(static_cast<std::size_t>(n) * n, kInf);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) e[static_cast<std::size_t>(i) * n + j] = dist(rng);
        }
    }
    return CostMatrix(n, std::move(e));
}

inline Derangement random_derangement(Rng& rng, int n) {
    std::vector<Vertex> p(static_cast<std::size_t>(n));
    while (true) {
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && p[i] != i;
        if (ok) return Derangement(p);
    }
}

inline Cycle random_cycle(Rng& rng, int n) {
    std::uniform_int_distribution<int> len(2, n);
    std::vector<Vertex> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    p.resize(static_cast<std::size_t>(len(rng)));
    return Cycle(p);
}

/// D'(a) = D(s(a)), written out by hand for fixture construction.
inline Derangement compose_by_hand(const Derangement& d, const std::vector<Cycle>& cycles) {
    std::vector<Vertex> s(static_cast<std::size_t>(d.size()));
    std::iota(s.begin(), s.end(), 0);
    for (const auto& c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) s[c[k]] = c.successor_at(k);
    }
    std::vector<Vertex> img(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) img[a] = d(s[a]);
    return Derangement(img);
}

inline Cost value_by_hand(const CostMatrix& m, const std::vector<Vertex>& image) {
    Cost v = 0;
    for (std::size_t a = 0; a < image.size(); ++a) v += m(static_cast<Vertex>(a), image[a]);
    return v;
}

/// Minimum over all derangements by enumerating permutations.
inline Cost brute_ap(const CostMatrix& m, int* count = nullptr) {
    const int n = m.size();
    std::vector<Vertex> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    Cost best = kInf;
    int seen = 0;
    do {
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && p[i] != i;
        if (!ok) continue;
        ++seen;
        best = std::min(best, value_by_hand(m, p));
    } while (std::next_permutation(p.begin(), p.end()));
    if (count) *count = seen;
    return best;
}

/// Minimum over all tours through vertex 0 by enumerating orders of the rest.
inline Cost brute_tsp(const CostMatrix& m, int* count = nullptr) {
    const int n = m.size();
    std::vector<Vertex> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    Cost best = kInf;
    int seen = 0;
    do {
        ++seen;
        Cost v = m(0, rest.front()) + m(rest.back(), 0);
        for (std::size_t k = 0; k + 1 < rest.size(); ++k) v += m(rest[k], rest[k + 1]);
        best = std::min(best, v);
    } while (std::next_permutation(rest.begin(), rest.end()));
    if (count) *count = seen;
    return best;
}

// Worked 20-vertex example.
inline const CostMatrix& ex2() { return example2_matrix(); }

inline Derangement ex2_d0() { return Derangement::cyclic(20); }

/// After the first applied cycle (1 6 13 19 2 14 16).
inline Derangement ex2_d1() { return compose_by_hand(ex2_d0(), {cyc({1, 6, 13, 19, 2, 14, 16})}); }

/// The printed seventh derangement, a tour of value 213.
inline Derangement ex2_d7() {
    return Derangement(zero_based({7, 8, 11, 17, 18, 14, 5, 1, 4, 12, 9, 20, 19, 13, 16, 6, 10, 15, 3, 2}));
}

inline Derangement ex2_d8() { return compose_by_hand(ex2_d7(), {cyc({11, 12, 20, 18, 6, 13})}); }

}  // namespace pcycle::test
