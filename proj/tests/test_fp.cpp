#include <random>

#include "doctest.h"
#include "fuslim/fp.hpp"

using namespace fuslim;

static FpMatrix from_rows(std::vector<std::vector<uint32_t>> rows, uint32_t p) {
    FpMatrix m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()), p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j] % p;
    return m;
}

TEST_CASE("rref basics") {
    auto id3 = FpMatrix::identity(3, 3);
    auto r = rref(id3);
    CHECK(r.rank == 3);
    CHECK(r.mat == id3);

    FpMatrix z(2, 4, 2);
    CHECK(rref(z).rank == 0);
    CHECK(rref(z).mat == z);

    // [[1,2],[2,4]] over F_5 -> [[1,2],[0,0]], rank 1 (hand elimination)
    auto m = from_rows({{1, 2}, {2, 4}}, 5);
    auto r2 = rref(m);
    CHECK(r2.rank == 1);
    CHECK(r2.mat == from_rows({{1, 2}, {0, 0}}, 5));
}

TEST_CASE("rref is idempotent and rank-nullity holds") {
    std::mt19937_64 rng(12345);
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 50; ++trial) {
            int rows = 1 + int(rng() % 8), cols = 1 + int(rng() % 8);
            FpMatrix m(rows, cols, p);
            for (auto& v : m.a) v = uint32_t(rng() % p);
            auto r = rref(m);
            CHECK(rref(r.mat).mat == r.mat);
            CHECK(r.rank + kernel(m).dim() == cols);
        }
    }
}

TEST_CASE("kernel") {
    CHECK(kernel(FpMatrix::identity(4, 3)).dim() == 0);
    CHECK(kernel(FpMatrix(3, 5, 2)).dim() == 5);

    // [[1,1]] over F_2: kernel = span{(1,1)}, verified against all 4 vectors
    auto m = from_rows({{1, 1}}, 2);
    auto k = kernel(m);
    CHECK(k.dim() == 1);
    for (uint32_t a = 0; a < 2; ++a)
        for (uint32_t b = 0; b < 2; ++b) {
            bool in_kernel = (a + b) % 2 == 0;
            CHECK(k.contains({a, b}) == in_kernel);
        }
}

TEST_CASE("intersect") {
    auto full = FpSubspace::full(3, 3);
    auto line = FpSubspace::from_rows(from_rows({{1, 2, 0}}, 3));
    CHECK(intersect(full, line) == line);
    CHECK(intersect(line, line) == line);

    // two distinct lines in F_3^2 meet in 0; checked against all 9 vectors
    auto l1 = FpSubspace::from_rows(from_rows({{1, 0}}, 3));
    auto l2 = FpSubspace::from_rows(from_rows({{1, 1}}, 3));
    auto meet = intersect(l1, l2);
    CHECK(meet.dim() == 0);
    for (uint32_t a = 0; a < 3; ++a)
        for (uint32_t b = 0; b < 3; ++b) {
            std::vector<uint32_t> v{a, b};
            bool in_both = l1.contains(v) && l2.contains(v);
            bool is_zero = a == 0 && b == 0;
            CHECK(in_both == is_zero);
        }
    CHECK(intersect(l1, l2).dim() == 0);

    CHECK_THROWS_AS(intersect(full, l1), input_error);
}

TEST_CASE("quotient_map") {
    auto q0 = quotient_map(4, FpSubspace::zero(4, 3));
    CHECK(q0.dim() == 4);
    CHECK(q0.proj == FpMatrix::identity(4, 3));

    auto qfull = quotient_map(3, FpSubspace::full(3, 2));
    CHECK(qfull.dim() == 0);

    // ambient 3, relations span{(1,1,0)} over F_2: 8/2 = 4 cosets = dim 2
    auto rel = FpSubspace::from_rows(from_rows({{1, 1, 0}}, 2));
    auto q = quotient_map(3, rel);
    CHECK(q.dim() == 2);
    // proj . inclusion-of-relations = 0 and proj . section = identity
    for (int i = 0; i < rel.basis.rows; ++i) {
        auto img = fp_apply(q.proj, rel.basis.row(i));
        for (uint32_t v : img) CHECK(v == 0);
    }
    CHECK(fp_mul(q.proj, q.section) == FpMatrix::identity(2, 2));
}

TEST_CASE("quotient dims and section, randomized") {
    std::mt19937_64 rng(777);
    for (uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 30; ++trial) {
            int n = 2 + int(rng() % 6);
            FpMatrix rel(1 + int(rng() % 3), n, p);
            for (auto& v : rel.a) v = uint32_t(rng() % p);
            auto sub = FpSubspace::from_rows(rel);
            auto q = quotient_map(n, sub);
            CHECK(q.dim() == n - sub.dim());
            if (q.dim() > 0) CHECK(fp_mul(q.proj, q.section) == FpMatrix::identity(q.dim(), p));
            for (int i = 0; i < sub.basis.rows; ++i) {
                auto img = fp_apply(q.proj, sub.basis.row(i));
                for (uint32_t v : img) CHECK(v == 0);
            }
        }
    }
}

// dense oracle used by the agreement tests
static int dense_rank(const std::vector<SparseTriplet>& ts, int rows, int cols, uint32_t p) {
    FpMatrix m(rows, cols, p);
    for (auto& t : ts) m.at(t.r, t.c) = (m.at(t.r, t.c) + t.v) % p;
    return rref(m).rank;
}

TEST_CASE("sparse_rank") {
    CHECK(sparse_rank({}, 10, 10, 3) == 0);

    std::vector<SparseTriplet> id100;
    for (int i = 0; i < 100; ++i) id100.push_back({i, i, 1});
    CHECK(sparse_rank(id100, 100, 100, 2) == 100);

    // force the genuinely sparse code path: 4000 independent rows plus
    // 1000 duplicated ones at 5000x5000
    std::vector<SparseTriplet> wide;
    for (int i = 0; i < 4000; ++i) wide.push_back({i, i, 1});
    for (int i = 4000; i < 5000; ++i) wide.push_back({i, i - 4000, 1});
    CHECK(sparse_rank(wide, 5000, 5000, 3) == 4000);

    CHECK_THROWS_AS(sparse_rank({{20, 0, 1}}, 10, 10, 3), input_error);
}

TEST_CASE("sparse_rank agrees with dense rank on random matrices") {
    std::mt19937_64 rng(424242);
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 200; ++trial) {
            int rows = 50, cols = 50;
            std::vector<SparseTriplet> ts;
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    if (rng() % 100 < 5) ts.push_back({i, j, uint32_t(1 + rng() % (p - 1))});
            CHECK(sparse_rank(ts, rows, cols, p) == dense_rank(ts, rows, cols, p));
        }
    }
}
