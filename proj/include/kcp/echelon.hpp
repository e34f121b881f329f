#pragma once

// Exact sparse linear algebra over the rationals: an incremental reduced
// echelon basis with provenance tracking. Vectors are indexed by row ids
// (monomial indices in the fitter, gradient components in the rank check).

#include <cstdint>
#include <optional>
#include <vector>

#include "kcp/scalar.hpp"

namespace kcp {

using RowId = int32_t;

struct SparseVec {
    std::vector<std::pair<RowId, Scalar>> nz; // sorted by row id, no zeros

    bool empty() const { return nz.empty(); }
    void sort_and_combine();
};

// v += a * w
void axpy(SparseVec& v, const Scalar& a, const SparseVec& w);

using Combo = std::vector<std::pair<size_t, Scalar>>; // column index -> coefficient

class EchelonSolver {
public:
    // Inserts the next column vector. Returns true when independent of the
    // previously inserted ones. When dependent, *dependency (if given)
    // receives a combination summing to zero, with coefficient 1 on the new
    // column. Either way the column consumes the next index.
    bool insert(SparseVec v, Combo* dependency = nullptr);

    // Expresses t as a combination of inserted columns plus a remainder.
    Combo reduce(SparseVec t, SparseVec* leftover) const;

    size_t rank() const { return rows_.size(); }
    size_t columns_seen() const { return count_; }

private:
    struct Row {
        SparseVec v;  // leading coefficient 1
        Combo combo;  // v = sum combo[i] * original column i
        RowId pivot;
    };
    // index into rows_ for a given pivot row id, or -1
    const Row* row_for(RowId id) const;

    std::vector<Row> rows_;
    std::vector<std::pair<RowId, size_t>> pivots_; // sorted by RowId
    size_t count_ = 0;
};

} // namespace kcp
