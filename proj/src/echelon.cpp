#include "kcp/echelon.hpp"

#include <algorithm>

namespace kcp {

void SparseVec::sort_and_combine() {
    std::sort(nz.begin(), nz.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t out = 0;
    for (size_t i = 0; i < nz.size();) {
        RowId id = nz[i].first;
        Scalar sum = std::move(nz[i].second);
        for (++i; i < nz.size() && nz[i].first == id; ++i) sum += nz[i].second;
        if (sum != 0) nz[out++] = {id, std::move(sum)};
    }
    nz.resize(out);
}

void axpy(SparseVec& v, const Scalar& a, const SparseVec& w) {
    if (a == 0 || w.empty()) return;
    std::vector<std::pair<RowId, Scalar>> merged;
    merged.reserve(v.nz.size() + w.nz.size());
    size_t i = 0, j = 0;
    while (i < v.nz.size() || j < w.nz.size()) {
        if (j == w.nz.size() || (i < v.nz.size() && v.nz[i].first < w.nz[j].first)) {
            merged.push_back(std::move(v.nz[i++]));
        } else if (i == v.nz.size() || w.nz[j].first < v.nz[i].first) {
            merged.emplace_back(w.nz[j].first, a * w.nz[j].second);
            ++j;
        } else {
            Scalar c = std::move(v.nz[i].second);
            c += a * w.nz[j].second;
            if (c != 0) merged.emplace_back(v.nz[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    v.nz = std::move(merged);
}

namespace {

void combo_axpy(Combo& v, const Scalar& a, const Combo& w) {
    for (const auto& [idx, c] : w) {
        auto it = std::find_if(v.begin(), v.end(),
                               [&](const auto& p) { return p.first == idx; });
        if (it == v.end()) {
            v.emplace_back(idx, a * c);
        } else {
            it->second += a * c;
            if (it->second == 0) v.erase(it);
        }
    }
}

} // namespace

const EchelonSolver::Row* EchelonSolver::row_for(RowId id) const {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), id,
                               [](const auto& p, RowId v) { return p.first < v; });
    if (it == pivots_.end() || it->first != id) return nullptr;
    return &rows_[it->second];
}

bool EchelonSolver::insert(SparseVec v, Combo* dependency) {
    Combo combo{{count_, scalar(1)}};
    ++count_;
    while (!v.empty()) {
        const Row* row = row_for(v.nz.front().first);
        if (!row) break;
        Scalar a = -v.nz.front().second;
        axpy(v, a, row->v);
        combo_axpy(combo, a, row->combo);
    }
    if (v.empty()) {
        if (dependency) {
            std::sort(combo.begin(), combo.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            *dependency = std::move(combo);
        }
        return false;
    }
    Scalar lead = v.nz.front().second;
    if (lead != 1) {
        Scalar inv = 1 / lead;
        for (auto& [id, c] : v.nz) c *= inv;
        for (auto& [idx, c] : combo) c *= inv;
    }
    RowId pivot = v.nz.front().first;
    rows_.push_back({std::move(v), std::move(combo), pivot});
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), pivot,
                               [](const auto& p, RowId val) { return p.first < val; });
    pivots_.insert(it, {pivot, rows_.size() - 1});
    return true;
}

Combo EchelonSolver::reduce(SparseVec t, SparseVec* leftover) const {
    Combo coeffs;
    // Full reduction: every entry with a pivot is eliminated, so the
    // remainder is exactly the unrepresentable part. Eliminating the entry
    // at idx only touches entries at larger row ids.
    size_t idx = 0;
    while (idx < t.nz.size()) {
        const Row* row = row_for(t.nz[idx].first);
        if (!row) {
            ++idx;
            continue;
        }
        Scalar a = t.nz[idx].second;
        axpy(t, -a, row->v);
        combo_axpy(coeffs, a, row->combo);
    }
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (leftover) *leftover = std::move(t);
    return coeffs;
}

} // namespace kcp
