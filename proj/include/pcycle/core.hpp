#pragma once

// Value types shared by every phase: cost matrices, derangements, cycles.
//
// Vertices are 0-based everywhere inside the library. Text I/O and traces
// convert to 1-based labels at the boundary.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pcycle/errors.hpp"

namespace pcycle {

using Cost = std::int64_t;
using Vertex = int;

/// Distinguished +infinity. Far above any finite tour sum, far below overflow.
inline constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

/// Largest magnitude allowed for a finite entry.
inline constexpr Cost kMaxEntry = Cost{1} << 40;

inline constexpr bool is_inf(Cost c) noexcept { return c >= kInf; }

/// Saturating addition: anything touching kInf stays kInf.
inline constexpr Cost sat_add(Cost a, Cost b) noexcept {
    if (is_inf(a) || is_inf(b)) return kInf;
    return a + b;
}

class CostMatrix {
public:
    CostMatrix() = default;

    /// Row-major entries. Throws DiagonalNotInf / NonSquare / InvalidArgument.
    CostMatrix(int n, std::vector<Cost> entries);

    int size() const noexcept { return n_; }
    Cost operator()(Vertex i, Vertex j) const noexcept { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const Cost> row(Vertex i) const noexcept {
        return {entries_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
    }
    const std::vector<Cost>& entries() const noexcept { return entries_; }

    /// Same matrix with `delta` added to every finite entry of row i.
    CostMatrix with_row_shift(Vertex i, Cost delta) const;

    friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

private:
    int n_ = 0;
    std::vector<Cost> entries_;
};

class Cycle {
public:
    /// Vertices in cyclic order: v[k] -> v[k+1], last -> first.
    explicit Cycle(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    Vertex operator[](std::size_t k) const noexcept { return vertices_[k]; }
    Vertex successor_at(std::size_t k) const noexcept { return vertices_[(k + 1) % vertices_.size()]; }

    /// Rotation starting at the smallest vertex; equal cycles compare equal.
    Cycle canonical() const;

    std::string to_string() const;  // "(1 2 3)", 1-based

    friend bool operator==(const Cycle&, const Cycle&) = default;
    friend auto operator<=>(const Cycle&, const Cycle&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Vertex-disjoint collection of cycles.
class PermSet {
public:
    PermSet() = default;
    explicit PermSet(std::vector<Cycle> cycles);

    const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
    bool empty() const noexcept { return cycles_.empty(); }
    std::string to_string() const;

private:
    std::vector<Cycle> cycles_;
};

class Derangement {
public:
    /// Throws InvalidArgument if not a bijection, NotDerangement on a fixed point.
    explicit Derangement(std::vector<Vertex> image);

    /// The n-cycle 0 -> 1 -> ... -> n-1 -> 0.
    static Derangement cyclic(int n);

    /// Builds from disjoint cycles covering every vertex.
    static Derangement from_cycles(int n, const std::vector<Cycle>& cycles);

    int size() const noexcept { return static_cast<int>(image_.size()); }
    Vertex operator()(Vertex a) const noexcept { return image_[a]; }
    Vertex inverse(Vertex b) const noexcept { return inverse_[b]; }
    const std::vector<Vertex>& image() const noexcept { return image_; }

    /// Disjoint cycle decomposition, each starting at its smallest vertex.
    std::vector<Cycle> cycles() const;

    std::string to_string() const;

    friend bool operator==(const Derangement& a, const Derangement& b) { return a.image_ == b.image_; }

private:
    std::vector<Vertex> image_;
    std::vector<Vertex> inverse_;
};

struct ValuedCycle {
    Cycle cycle;
    std::vector<Cost> deltas;  // parallel to cycle.vertices()
    Cost total = 0;
};

Cost derangement_value(const CostMatrix& m, const Derangement& d);

/// D'(a) = D(s(a)); throws NotDerangement when a fixed point appears.
Derangement apply_cycle_set(const Derangement& d, const PermSet& s);
Derangement apply_cycle(const Derangement& d, const Cycle& s);

bool is_tour(const Derangement& d);

/// delta(a) = d(a, D(s(a))) - d(a, D(a)). Throws LoopArc if D(s(a)) = a.
ValuedCycle cycle_value(const CostMatrix& m, const Derangement& d, const Cycle& s);

/// Sum of cycle_value totals over a PermSet.
Cost permset_value(const CostMatrix& m, const Derangement& d, const PermSet& s);

}  // namespace pcycle
