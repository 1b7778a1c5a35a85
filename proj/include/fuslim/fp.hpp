#pragma once

// Exact dense and sparse linear algebra over a prime field F_p, p < 2^16.
// Everything is a value type; nothing here mutates after construction
// except through explicit assignment, so concurrent reads are safe.

#include <cstdint>
#include <vector>

#include "fuslim/errors.hpp"

namespace fuslim {

uint32_t fp_inv(uint32_t a, uint32_t p);
bool is_prime(uint32_t n);

struct FpMatrix {
    uint32_t p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<uint32_t> a;  // row-major residues in [0,p)

    FpMatrix() = default;
    FpMatrix(int r, int c, uint32_t p_);

    uint32_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
    uint32_t at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static FpMatrix identity(int n, uint32_t p);
    static FpMatrix zero(int r, int c, uint32_t p) { return FpMatrix(r, c, p); }

    bool is_zero() const;
    bool operator==(const FpMatrix& o) const = default;

    FpMatrix transposed() const;
    std::vector<uint32_t> row(int r) const;
};

FpMatrix fp_mul(const FpMatrix& x, const FpMatrix& y);
FpMatrix fp_add(const FpMatrix& x, const FpMatrix& y);
FpMatrix fp_sub(const FpMatrix& x, const FpMatrix& y);
FpMatrix fp_scale(const FpMatrix& x, uint32_t c);
FpMatrix fp_vstack(const FpMatrix& x, const FpMatrix& y);
std::vector<uint32_t> fp_apply(const FpMatrix& m, const std::vector<uint32_t>& v);

struct RrefResult {
    FpMatrix mat;
    std::vector<int> pivots;
    int rank = 0;
};

RrefResult rref(const FpMatrix& m);

// A subspace of F_p^ambient held as a reduced-row-echelon basis.
struct FpSubspace {
    int ambient = 0;
    FpMatrix basis;  // rows = dim, in rref with strictly increasing pivots
    std::vector<int> pivots;

    int dim() const { return basis.rows; }
    uint32_t p() const { return basis.p; }

    static FpSubspace zero(int ambient, uint32_t p);
    static FpSubspace full(int ambient, uint32_t p);
    static FpSubspace from_rows(const FpMatrix& rows);

    bool contains(const std::vector<uint32_t>& v) const;
    bool contains(const FpSubspace& other) const;
    bool operator==(const FpSubspace& o) const = default;

    // Coordinates of v in this basis; requires contains(v).
    std::vector<uint32_t> coordinates(const std::vector<uint32_t>& v) const;
};

FpSubspace kernel(const FpMatrix& m);
FpSubspace image(const FpMatrix& m);  // column space, as row vectors
FpSubspace intersect(const FpSubspace& a, const FpSubspace& b);
FpSubspace subspace_sum(const FpSubspace& a, const FpSubspace& b);

// Projection F_p^ambient ->> F_p^quotient with kernel = relations, plus a
// fixed linear section so maps between quotients compose as single matrices.
struct QuotientMap {
    FpMatrix proj;     // quotient_dim x ambient
    FpMatrix section;  // ambient x quotient_dim, proj*section = I
    int dim() const { return proj.rows; }
};

QuotientMap quotient_map(int ambient_dim, const FpSubspace& relations);

struct SparseTriplet {
    int r;
    int c;
    uint32_t v;
};

int sparse_rank(const std::vector<SparseTriplet>& triplets, int rows, int cols, uint32_t p);

}  // namespace fuslim
