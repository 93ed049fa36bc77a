#include "pcycle/core.hpp"

#include <algorithm>
#include <sstream>

namespace pcycle {

CostMatrix::CostMatrix(int n, std::vector<Cost> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 2) throw InvalidArgument("cost matrix needs n >= 2, got " + std::to_string(n));
    if (entries_.size() != static_cast<std::size_t>(n) * n) {
        throw NonSquare("expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries_.size()));
    }
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = 0; j < n; ++j) {
            Cost c = (*this)(i, j);
            if (i == j) {
                if (!is_inf(c)) {
                    throw DiagonalNotInf("diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                                         ") must be inf");
                }
                entries_[static_cast<std::size_t>(i) * n + j] = kInf;
            } else if (is_inf(c) || c > kMaxEntry || c < -kMaxEntry) {
                throw InvalidArgument("off-diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      ") must be a finite integer of magnitude <= 2^40");
            }
        }
    }
}

CostMatrix CostMatrix::with_row_shift(Vertex i, Cost delta) const {
    std::vector<Cost> e = entries_;
    for (Vertex j = 0; j < n_; ++j) {
        if (j != i) e[static_cast<std::size_t>(i) * n_ + j] += delta;
    }
    return CostMatrix(n_, std::move(e));
}

Cycle::Cycle(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw InvalidArgument("a cycle needs at least two vertices");
    std::vector<Vertex> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("cycle vertices must be distinct");
    }
    if (sorted.front() < 0) throw InvalidArgument("negative vertex index");
}

Cycle Cycle::canonical() const {
    auto smallest = std::min_element(vertices_.begin(), vertices_.end());
    std::vector<Vertex> rotated(smallest, vertices_.end());
    rotated.insert(rotated.end(), vertices_.begin(), smallest);
    return Cycle(std::move(rotated));
}

std::string Cycle::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        if (k) out << ' ';
        out << vertices_[k] + 1;
    }
    out << ')';
    return out.str();
}

PermSet::PermSet(std::vector<Cycle> cycles) : cycles_(std::move(cycles)) {
    std::vector<Vertex> all;
    for (const auto& c : cycles_) all.insert(all.end(), c.vertices().begin(), c.vertices().end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw InvalidArgument("cycles of a PermSet must be vertex-disjoint");
    }
}

std::string PermSet::to_string() const {
    if (cycles_.empty()) return "()";
    std::string out;
    for (const auto& c : cycles_) out += c.to_string();
    return out;
}

Derangement::Derangement(std::vector<Vertex> image) : image_(std::move(image)), inverse_(image_.size(), -1) {
    const int n = static_cast<int>(image_.size());
    if (n < 2) throw InvalidArgument("a derangement needs n >= 2");
    for (Vertex a = 0; a < n; ++a) {
        Vertex b = image_[a];
        if (b < 0 || b >= n || inverse_[b] != -1) throw InvalidArgument("image is not a bijection");
        inverse_[b] = a;
    }
    for (Vertex a = 0; a < n; ++a) {
        if (image_[a] == a) throw NotDerangement("vertex " + std::to_string(a + 1) + " is a fixed point");
    }
}

Derangement Derangement::cyclic(int n) {
    std::vector<Vertex> img(static_cast<std::size_t>(n));
    for (Vertex a = 0; a < n; ++a) img[a] = (a + 1) % n;
    return Derangement(std::move(img));
}

Derangement Derangement::from_cycles(int n, const std::vector<Cycle>& cycles) {
    std::vector<Vertex> img(static_cast<std::size_t>(n), -1);
    for (const auto& c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] >= n) throw InvalidArgument("cycle vertex out of range");
            img[c[k]] = c.successor_at(k);
        }
    }
    return Derangement(std::move(img));
}

std::vector<Cycle> Derangement::cycles() const {
    const int n = size();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Cycle> out;
    for (Vertex a = 0; a < n; ++a) {
        if (seen[a]) continue;
        std::vector<Vertex> vs;
        for (Vertex x = a; !seen[x]; x = image_[x]) {
            seen[x] = true;
            vs.push_back(x);
        }
        out.emplace_back(std::move(vs));
    }
    return out;
}

std::string Derangement::to_string() const {
    std::string out;
    for (const auto& c : cycles()) out += c.to_string();
    return out;
}

Cost derangement_value(const CostMatrix& m, const Derangement& d) {
    Cost total = 0;
    for (Vertex a = 0; a < d.size(); ++a) total = sat_add(total, m(a, d(a)));
    return total;
}

Derangement apply_cycle_set(const Derangement& d, const PermSet& s) {
    std::vector<Vertex> img = d.image();
    const int n = d.size();
    for (const auto& c : s.cycles()) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] >= n) throw InvalidArgument("cycle vertex out of range");
            img[c[k]] = d(c.successor_at(k));
        }
    }
    return Derangement(std::move(img));
}

Derangement apply_cycle(const Derangement& d, const Cycle& s) { return apply_cycle_set(d, PermSet({s})); }

bool is_tour(const Derangement& d) {
    int steps = 1;
    for (Vertex x = d(0); x != 0; x = d(x)) ++steps;
    return steps == d.size();
}

ValuedCycle cycle_value(const CostMatrix& m, const Derangement& d, const Cycle& s) {
    ValuedCycle out{s, {}, 0};
    out.deltas.reserve(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        Vertex a = s[k];
        Vertex target = d(s.successor_at(k));
        if (target == a) {
            throw LoopArc("arc " + std::to_string(a + 1) + " -> " + std::to_string(s.successor_at(k) + 1) +
                          " maps onto the loop (" + std::to_string(a + 1) + "," + std::to_string(a + 1) + ")");
        }
        Cost delta = m(a, target) - m(a, d(a));
        out.deltas.push_back(delta);
        out.total += delta;
    }
    return out;
}

Cost permset_value(const CostMatrix& m, const Derangement& d, const PermSet& s) {
    Cost total = 0;
    for (const auto& c : s.cycles()) total += cycle_value(m, d, c).total;
    return total;
}

}  // namespace pcycle
