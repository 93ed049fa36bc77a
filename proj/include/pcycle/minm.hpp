#pragma once

// MIN(M): per-row column orderings by ascending cost, plus the row form
// (D, D^-1 and DIFF) used to read arc values in O(1).

#include <vector>

#include "pcycle/core.hpp"

namespace pcycle {

/// Row i lists the n-1 off-diagonal columns by ascending d(i, .), ties by
/// smaller column index. The diagonal is omitted.
class SortedRowIndex {
public:
    SortedRowIndex() = default;
    explicit SortedRowIndex(const CostMatrix& m);

    int size() const noexcept { return n_; }
    int row_length() const noexcept { return n_ - 1; }

    /// Column of the (rank+1)-th cheapest arc out of `row`; rank is 0-based.
    Vertex column(Vertex row, int rank) const noexcept {
        return order_[static_cast<std::size_t>(row) * (n_ - 1) + rank];
    }

private:
    int n_ = 0;
    std::vector<Vertex> order_;
};

inline SortedRowIndex build_min_index(const CostMatrix& m) { return SortedRowIndex(m); }

struct RowForm {
    Derangement d;
    std::vector<Cost> diff;  // d(a, MIN(a,1)) - d(a, D(a)), always <= 0
};

RowForm build_row_form(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d);

/// Permutation arc corresponding to the M-arc (a, b): a -> D^-1(b).
inline Vertex arc_to_perm(const Derangement& d, Vertex /*a*/, Vertex b) noexcept { return d.inverse(b); }

}  // namespace pcycle
