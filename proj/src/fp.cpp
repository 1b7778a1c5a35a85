#include "fuslim/fp.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <queue>

namespace fuslim {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    // extended Euclid; a in [1,p)
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    assert(r == 1 && "fp_inv of non-unit");
    if (t < 0) t += p;
    return uint32_t(t);
}

static void check_modulus(uint32_t p) {
    if (!is_prime(p) || p >= (1u << 16))
        throw input_error("modulus must be prime and < 2^16");
}

FpMatrix::FpMatrix(int r, int c, uint32_t p_) : p(p_), rows(r), cols(c), a(size_t(r) * c, 0) {
    check_modulus(p_);
}

FpMatrix FpMatrix::identity(int n, uint32_t p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](uint32_t x) { return x == 0; });
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix t(cols, rows, p);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

std::vector<uint32_t> FpMatrix::row(int r) const {
    return std::vector<uint32_t>(a.begin() + size_t(r) * cols, a.begin() + size_t(r + 1) * cols);
}

FpMatrix fp_mul(const FpMatrix& x, const FpMatrix& y) {
    assert(x.cols == y.rows && x.p == y.p);
    FpMatrix z(x.rows, y.cols, x.p);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            uint64_t v = x.at(i, k);
            if (!v) continue;
            for (int j = 0; j < y.cols; ++j)
                z.at(i, j) = uint32_t((z.at(i, j) + v * y.at(k, j)) % x.p);
        }
    return z;
}

FpMatrix fp_add(const FpMatrix& x, const FpMatrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols && x.p == y.p);
    FpMatrix z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = (z.a[i] + y.a[i]) % x.p;
    return z;
}

FpMatrix fp_sub(const FpMatrix& x, const FpMatrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols && x.p == y.p);
    FpMatrix z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = (z.a[i] + x.p - y.a[i]) % x.p;
    return z;
}

FpMatrix fp_scale(const FpMatrix& x, uint32_t c) {
    FpMatrix z = x;
    for (auto& v : z.a) v = uint32_t(uint64_t(v) * c % x.p);
    return z;
}

FpMatrix fp_vstack(const FpMatrix& x, const FpMatrix& y) {
    assert(x.cols == y.cols && x.p == y.p);
    FpMatrix z(x.rows + y.rows, x.cols, x.p);
    std::copy(x.a.begin(), x.a.end(), z.a.begin());
    std::copy(y.a.begin(), y.a.end(), z.a.begin() + x.a.size());
    return z;
}

std::vector<uint32_t> fp_apply(const FpMatrix& m, const std::vector<uint32_t>& v) {
    assert(int(v.size()) == m.cols);
    std::vector<uint32_t> out(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < m.cols; ++j) acc += uint64_t(m.at(i, j)) * v[j];
        out[i] = uint32_t(acc % m.p);
    }
    return out;
}

RrefResult rref(const FpMatrix& m) {
    RrefResult res;
    res.mat = m;
    FpMatrix& A = res.mat;
    const uint32_t p = m.p;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int piv = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(r, j));
        uint32_t inv = fp_inv(A.at(r, c), p);
        for (int j = c; j < A.cols; ++j) A.at(r, j) = uint32_t(uint64_t(A.at(r, j)) * inv % p);
        for (int i = 0; i < A.rows; ++i) {
            if (i == r) continue;
            uint32_t f = A.at(i, c);
            if (!f) continue;
            for (int j = c; j < A.cols; ++j)
                A.at(i, j) = uint32_t((A.at(i, j) + uint64_t(p - f) * A.at(r, j)) % p);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

FpSubspace FpSubspace::zero(int ambient, uint32_t p) {
    FpSubspace s;
    s.ambient = ambient;
    s.basis = FpMatrix(0, ambient, p);
    return s;
}

FpSubspace FpSubspace::full(int ambient, uint32_t p) {
    FpSubspace s;
    s.ambient = ambient;
    s.basis = FpMatrix::identity(ambient, p);
    for (int i = 0; i < ambient; ++i) s.pivots.push_back(i);
    return s;
}

FpSubspace FpSubspace::from_rows(const FpMatrix& rows) {
    RrefResult r = rref(rows);
    FpSubspace s;
    s.ambient = rows.cols;
    s.basis = FpMatrix(r.rank, rows.cols, rows.p);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < rows.cols; ++j) s.basis.at(i, j) = r.mat.at(i, j);
    s.pivots = r.pivots;
    return s;
}

bool FpSubspace::contains(const std::vector<uint32_t>& v) const {
    const uint32_t p = basis.p;
    std::vector<uint32_t> w = v;
    for (int i = 0; i < basis.rows; ++i) {
        uint32_t f = w[pivots[i]];
        if (!f) continue;
        for (int j = 0; j < ambient; ++j)
            w[j] = uint32_t((w[j] + uint64_t(p - f) * basis.at(i, j)) % p);
    }
    return std::all_of(w.begin(), w.end(), [](uint32_t x) { return x == 0; });
}

bool FpSubspace::contains(const FpSubspace& other) const {
    for (int i = 0; i < other.basis.rows; ++i)
        if (!contains(other.basis.row(i))) return false;
    return true;
}

std::vector<uint32_t> FpSubspace::coordinates(const std::vector<uint32_t>& v) const {
    const uint32_t p = basis.p;
    std::vector<uint32_t> w = v, coord(basis.rows, 0);
    for (int i = 0; i < basis.rows; ++i) {
        uint32_t f = w[pivots[i]];
        coord[i] = f;
        if (!f) continue;
        for (int j = 0; j < ambient; ++j)
            w[j] = uint32_t((w[j] + uint64_t(p - f) * basis.at(i, j)) % p);
    }
    if (!std::all_of(w.begin(), w.end(), [](uint32_t x) { return x == 0; }))
        throw input_error("coordinates: vector not in subspace");
    return coord;
}

FpSubspace kernel(const FpMatrix& m) {
    RrefResult r = rref(m);
    const uint32_t p = m.p;
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : r.pivots) is_pivot[c] = 1;
    FpMatrix basis(m.cols - r.rank, m.cols, p);
    int row = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        basis.at(row, c) = 1;
        for (int i = 0; i < r.rank; ++i) {
            uint32_t v = r.mat.at(i, c);
            if (v) basis.at(row, r.pivots[i]) = p - v;
        }
        ++row;
    }
    return FpSubspace::from_rows(basis);
}

FpSubspace image(const FpMatrix& m) { return FpSubspace::from_rows(m.transposed()); }

FpSubspace intersect(const FpSubspace& a, const FpSubspace& b) {
    if (a.ambient != b.ambient) throw input_error("intersect: ambient dimension mismatch");
    // v = x*A = y*B  <=>  (x,-y) in left kernel of [A;B]
    FpMatrix stacked = fp_vstack(a.basis, b.basis);
    FpSubspace lk = kernel(stacked.transposed());
    FpMatrix rows(lk.dim(), a.ambient, a.basis.p);
    for (int i = 0; i < lk.dim(); ++i) {
        for (int k = 0; k < a.basis.rows; ++k) {
            uint64_t f = lk.basis.at(i, k);
            if (!f) continue;
            for (int j = 0; j < a.ambient; ++j)
                rows.at(i, j) = uint32_t((rows.at(i, j) + f * a.basis.at(k, j)) % a.basis.p);
        }
    }
    return FpSubspace::from_rows(rows);
}

FpSubspace subspace_sum(const FpSubspace& a, const FpSubspace& b) {
    return FpSubspace::from_rows(fp_vstack(a.basis, b.basis));
}

QuotientMap quotient_map(int ambient_dim, const FpSubspace& relations) {
    const uint32_t p = relations.basis.p;
    const int k = relations.dim();
    const int m = ambient_dim - k;
    std::vector<char> is_pivot(ambient_dim, 0);
    for (int c : relations.pivots) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    QuotientMap q;
    q.proj = FpMatrix(m, ambient_dim, p);
    q.section = FpMatrix(ambient_dim, m, p);
    // proj(v) = residues of v at free columns after reduction mod relations
    for (int j = 0; j < m; ++j) q.proj.at(j, free_cols[j]) = 1;
    for (int i = 0; i < k; ++i) {
        int pc = relations.pivots[i];
        for (int j = 0; j < m; ++j) {
            uint32_t v = relations.basis.at(i, free_cols[j]);
            if (v) q.proj.at(j, pc) = p - v;
        }
    }
    for (int j = 0; j < m; ++j) q.section.at(free_cols[j], j) = 1;
    return q;
}

namespace {

// Markowitz-style sparse elimination; rows kept as sorted (col,val) vectors.
// Pivot row = min nnz (lazy heap), pivot column = min column count in it.
struct SparseElim {
    uint32_t p;
    int cols;
    std::vector<std::vector<std::pair<int, uint32_t>>> rows;
    std::vector<int> col_count;
    std::vector<std::vector<int>> col_rows;  // may hold stale row indices
    std::vector<char> active;

    int run() {
        using Entry = std::pair<int, int>;  // (nnz, row)
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
        for (int i = 0; i < int(rows.size()); ++i)
            if (!rows[i].empty()) heap.emplace(int(rows[i].size()), i);
        int rank = 0;
        while (!heap.empty()) {
            auto [len, r] = heap.top();
            heap.pop();
            if (!active[r] || rows[r].empty() || int(rows[r].size()) != len) continue;
            int pc = -1, best = INT32_MAX;
            for (auto& [c, v] : rows[r])
                if (col_count[c] < best) best = col_count[c], pc = c;
            active[r] = 0;
            for (auto& [c, v] : rows[r]) --col_count[c];
            ++rank;

            uint32_t pv = 0;
            for (auto& [c, v] : rows[r])
                if (c == pc) pv = v;
            uint32_t inv = fp_inv(pv, p);
            std::vector<int> touched = std::move(col_rows[pc]);
            col_rows[pc].clear();
            for (int rr : touched) {
                if (rr == r || !active[rr]) continue;
                uint32_t f = 0;
                for (auto& [c, v] : rows[rr])
                    if (c == pc) f = v;
                if (!f) continue;  // stale
                axpy(rr, r, p - uint32_t(uint64_t(f) * inv % p));
                if (!rows[rr].empty()) heap.emplace(int(rows[rr].size()), rr);
            }
        }
        return rank;
    }

    // rows[dst] += k * rows[src]
    void axpy(int dst, int src, uint32_t k) {
        std::vector<std::pair<int, uint32_t>> out;
        out.reserve(rows[dst].size() + rows[src].size());
        auto a = rows[dst].begin(), ae = rows[dst].end();
        auto b = rows[src].begin(), be = rows[src].end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == ae || b->first < a->first) {
                uint32_t v = uint32_t(uint64_t(b->second) * k % p);
                if (v) {
                    out.emplace_back(b->first, v);
                    ++col_count[b->first];
                    col_rows[b->first].push_back(dst);
                }
                ++b;
            } else {
                uint32_t v = uint32_t((a->second + uint64_t(b->second) * k) % p);
                if (v)
                    out.emplace_back(a->first, v);
                else
                    --col_count[a->first];
                ++a;
                ++b;
            }
        }
        rows[dst] = std::move(out);
    }
};

}  // namespace

int sparse_rank(const std::vector<SparseTriplet>& triplets, int nrows, int ncols, uint32_t p) {
    check_modulus(p);
    if (triplets.empty()) return 0;
    for (auto& t : triplets)
        if (t.r < 0 || t.r >= nrows || t.c < 0 || t.c >= ncols)
            throw input_error("sparse_rank: triplet out of range");

    // dense fallback for small shapes
    if ((ncols < 4096 || nrows < 4096) && int64_t(nrows) * ncols <= (int64_t(1) << 24)) {
        FpMatrix m(nrows, ncols, p);
        for (auto& t : triplets) m.at(t.r, t.c) = (m.at(t.r, t.c) + t.v) % p;
        return rref(m).rank;
    }

    SparseElim e;
    e.p = p;
    e.cols = ncols;
    e.rows.resize(nrows);
    {
        // accumulate duplicates
        std::vector<std::vector<std::pair<int, uint32_t>>> tmp(nrows);
        for (auto& t : triplets) tmp[t.r].emplace_back(t.c, t.v % p);
        for (int i = 0; i < nrows; ++i) {
            auto& v = tmp[i];
            std::sort(v.begin(), v.end());
            for (auto& [c, val] : v) {
                if (!e.rows[i].empty() && e.rows[i].back().first == c)
                    e.rows[i].back().second = (e.rows[i].back().second + val) % p;
                else
                    e.rows[i].emplace_back(c, val);
            }
            std::erase_if(e.rows[i], [](auto& cv) { return cv.second == 0; });
        }
    }
    e.col_count.assign(ncols, 0);
    e.col_rows.resize(ncols);
    e.active.assign(nrows, 1);
    for (int i = 0; i < nrows; ++i)
        for (auto& [c, v] : e.rows[i]) {
            ++e.col_count[c];
            e.col_rows[c].push_back(i);
        }
    return e.run();
}

}  // namespace fuslim
