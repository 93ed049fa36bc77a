#include "pcycle/minm.hpp"

#include <algorithm>
#include <numeric>

namespace pcycle {

SortedRowIndex::SortedRowIndex(const CostMatrix& m) : n_(m.size()) {
    order_.reserve(static_cast<std::size_t>(n_) * (n_ - 1));
    std::vector<Vertex> cols;
    for (Vertex i = 0; i < n_; ++i) {
        cols.clear();
        for (Vertex j = 0; j < n_; ++j) {
            if (j != i) cols.push_back(j);
        }
        std::stable_sort(cols.begin(), cols.end(), [&](Vertex a, Vertex b) { return m(i, a) < m(i, b); });
        order_.insert(order_.end(), cols.begin(), cols.end());
    }
}

RowForm build_row_form(const CostMatrix& m, const SortedRowIndex& index, const Derangement& d) {
    if (index.size() != m.size() || d.size() != m.size()) throw InvalidArgument("dimension mismatch");
    RowForm rf{d, std::vector<Cost>(static_cast<std::size_t>(m.size()))};
    for (Vertex a = 0; a < m.size(); ++a) rf.diff[a] = m(a, index.column(a, 0)) - m(a, d(a));
    return rf;
}

}  // namespace pcycle
