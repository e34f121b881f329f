#include <doctest.h>

#include "kcp/echelon.hpp"

using namespace kcp;

namespace {
SparseVec vec(std::initializer_list<std::pair<RowId, long>> entries) {
    SparseVec v;
    for (auto [id, c] : entries) v.nz.emplace_back(id, scalar(c));
    v.sort_and_combine();
    return v;
}
} // namespace

TEST_CASE("echelon insert detects dependencies with provenance") {
    EchelonSolver solver;
    CHECK(solver.insert(vec({{0, 1}, {1, 2}})));
    CHECK(solver.insert(vec({{1, 1}, {2, 1}})));

    // col2 = col0 - 2*col1
    Combo dep;
    CHECK_FALSE(solver.insert(vec({{0, 1}, {2, -2}}), &dep));
    REQUIRE(dep.size() == 3);
    CHECK(dep[0] == std::pair<size_t, Scalar>{0, scalar(-1)});
    CHECK(dep[1] == std::pair<size_t, Scalar>{1, scalar(2)});
    CHECK(dep[2] == std::pair<size_t, Scalar>{2, scalar(1)});
    CHECK(solver.rank() == 2);
    CHECK(solver.columns_seen() == 3);
}

TEST_CASE("echelon reduce solves and reports the unrepresentable part") {
    EchelonSolver solver;
    solver.insert(vec({{0, 2}}));          // col0 = 2 e0
    solver.insert(vec({{0, 1}, {1, 1}}));  // col1 = e0 + e1

    SparseVec leftover;
    Combo sol = solver.reduce(vec({{0, 3}, {1, 2}}), &leftover);
    CHECK(leftover.empty());
    // t = 3 e0 + 2 e1 = 1/2 col0 + 2 col1
    REQUIRE(sol.size() == 2);
    CHECK(sol[0] == std::pair<size_t, Scalar>{0, scalar(1, 2)});
    CHECK(sol[1] == std::pair<size_t, Scalar>{1, scalar(2)});

    // e2 is outside the span; the remainder must isolate exactly it
    sol = solver.reduce(vec({{0, 1}, {2, 5}}), &leftover);
    REQUIRE(leftover.nz.size() == 1);
    CHECK(leftover.nz[0].first == 2);
    CHECK(leftover.nz[0].second == scalar(5));
}

TEST_CASE("axpy merges exactly and drops cancelled entries") {
    SparseVec v = vec({{0, 1}, {2, 3}});
    axpy(v, scalar(-3), vec({{0, 2}, {1, 1}, {2, 1}}));
    REQUIRE(v.nz.size() == 2); // the row-2 entry cancels to zero
    CHECK(v.nz[0] == std::pair<RowId, Scalar>{0, scalar(-5)});
    CHECK(v.nz[1] == std::pair<RowId, Scalar>{1, scalar(-3)});
}
