#include "fuslim/limits.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "fuslim/mackeyfication.hpp"

namespace fuslim {

namespace {

struct Chain {
    int start;                              // skeleton position of P_0
    std::vector<std::pair<int, int>> step;  // (target skeleton position, class)
};

struct ChainIndex {
    std::vector<Chain> chains;
    std::map<std::vector<int>, int> lookup;
    std::vector<long> offset;  // block offsets (dim N(P_0) each)
    long total = 0;

    static std::vector<int> key(const Chain& c) {
        std::vector<int> k{c.start};
        for (auto& [b, cls] : c.step) {
            k.push_back(b);
            k.push_back(cls);
        }
        return k;
    }
};

}  // namespace

CochainComplex build_complex(const ContravariantFunctorData& N, int max_degree, long cap) {
    const OrbitCategory& cat = *N.cat;
    const uint32_t p = N.p;
    CochainComplex cx;
    cx.p = p;
    cx.max_degree = max_degree;

    // identity classes never appear in nondegenerate chains
    auto is_identity = [&](int a, int b, int cls) {
        return a == b && cls == cat.identity_class(a);
    };

    std::vector<ChainIndex> deg(max_degree + 2);
    // chains whose start block is zero-dimensional contribute nothing and are
    // pruned from the start (faces into pruned chains vanish identically)
    for (int a = 0; a < cat.nobj(); ++a) {
        if (N.dims[a] == 0) continue;
        Chain c{a, {}};
        deg[0].lookup.emplace(ChainIndex::key(c), int(deg[0].chains.size()));
        deg[0].chains.push_back(std::move(c));
    }
    for (int nn = 1; nn <= max_degree + 1; ++nn) {
        for (const Chain& base : deg[nn - 1].chains) {
            int tail = base.step.empty() ? base.start : base.step.back().first;
            for (int b = 0; b < cat.nobj(); ++b)
                for (int cls = 0; cls < cat.nclasses(tail, b); ++cls) {
                    if (is_identity(tail, b, cls)) continue;
                    Chain c = base;
                    c.step.emplace_back(b, cls);
                    deg[nn].lookup.emplace(ChainIndex::key(c), int(deg[nn].chains.size()));
                    deg[nn].chains.push_back(std::move(c));
                }
        }
    }
    long grand_total = 0;
    for (int nn = 0; nn <= max_degree + 1; ++nn) {
        auto& d = deg[nn];
        d.offset.resize(d.chains.size() + 1, 0);
        for (size_t i = 0; i < d.chains.size(); ++i)
            d.offset[i + 1] = d.offset[i] + N.dims[d.chains[i].start];
        d.total = d.offset.back();
        grand_total += d.total;
        cx.dims.push_back(d.total);
        cx.chain_counts.push_back(long(d.chains.size()));
        if (grand_total > cap)
            throw cap_exceeded("build_complex: total dimension cap exceeded at degree " +
                               std::to_string(nn));
    }

    // differentials
    for (int nn = 0; nn <= max_degree; ++nn) {
        SparseMat d;
        d.rows = int(deg[nn + 1].total);
        d.cols = int(deg[nn].total);
        for (size_t ti = 0; ti < deg[nn + 1].chains.size(); ++ti) {
            const Chain& t = deg[nn + 1].chains[ti];
            long row0 = deg[nn + 1].offset[ti];
            int dim_t = N.dims[t.start];
            if (dim_t == 0) continue;
            // face 0: apply N of the first morphism to the truncated chain
            // (misses the index exactly when the face's start block is zero)
            {
                Chain face{t.step[0].first, {t.step.begin() + 1, t.step.end()}};
                auto it = deg[nn].lookup.find(ChainIndex::key(face));
                if (it != deg[nn].lookup.end()) {
                    long col0 = deg[nn].offset[it->second];
                    const FpMatrix& A = N.contra[t.start][t.step[0].first][t.step[0].second];
                    for (int i = 0; i < A.rows; ++i)
                        for (int j = 0; j < A.cols; ++j)
                            if (A.at(i, j))
                                d.t.push_back({int(row0 + i), int(col0 + j), A.at(i, j)});
                }
            }
            // inner faces: compose adjacent morphisms (normalized: identity
            // composites contribute nothing)
            int sign = 1;
            for (int i = 1; i <= nn; ++i) {
                sign = -sign;
                int a = i >= 2 ? t.step[i - 2].first : t.start;
                int b = t.step[i - 1].first;
                int c = t.step[i].first;
                int comp = cat.compose_classes(a, b, c, t.step[i - 1].second, t.step[i].second);
                if (is_identity(a, c, comp)) continue;
                Chain face{t.start, {}};
                for (int k = 0; k < int(t.step.size()); ++k) {
                    if (k == i - 1) continue;
                    if (k == i)
                        face.step.emplace_back(c, comp);
                    else
                        face.step.push_back(t.step[k]);
                }
                auto it = deg[nn].lookup.find(ChainIndex::key(face));
                assert(it != deg[nn].lookup.end());
                long col0 = deg[nn].offset[it->second];
                uint32_t val = sign > 0 ? 1 : p - 1;
                for (int k = 0; k < dim_t; ++k)
                    d.t.push_back({int(row0 + k), int(col0 + k), val});
            }
            // last face: drop the final morphism
            {
                sign = (nn + 1) % 2 == 0 ? 1 : -1;
                Chain face{t.start, {t.step.begin(), t.step.end() - 1}};
                auto it = deg[nn].lookup.find(ChainIndex::key(face));
                assert(it != deg[nn].lookup.end());
                long col0 = deg[nn].offset[it->second];
                uint32_t val = sign > 0 ? 1 : p - 1;
                for (int k = 0; k < dim_t; ++k)
                    d.t.push_back({int(row0 + k), int(col0 + k), val});
            }
        }
        cx.d.push_back(std::move(d));
    }

    // d∘d = 0, column by column
    for (int nn = 0; nn + 1 <= max_degree; ++nn) {
        const SparseMat& d0 = cx.d[nn];
        const SparseMat& d1 = cx.d[nn + 1];
        std::vector<std::vector<std::pair<int, uint32_t>>> cols0(d0.cols), rows1bycol(d1.cols);
        for (auto& tr : d0.t) cols0[tr.c].emplace_back(tr.r, tr.v);
        for (auto& tr : d1.t) rows1bycol[tr.c].emplace_back(tr.r, tr.v);
        for (int c = 0; c < d0.cols; ++c) {
            std::map<int, uint32_t> acc;
            for (auto& [mid, v0] : cols0[c])
                for (auto& [r, v1] : rows1bycol[mid]) {
                    uint32_t& slot = acc[r];
                    slot = uint32_t((slot + uint64_t(v0) * v1) % p);
                }
            for (auto& [r, v] : acc)
                if (v % p != 0) throw std::logic_error("build_complex: d∘d != 0");
        }
    }
    return cx;
}

CohomologyReport cohomology(const OrbitCategory& cat, const CochainComplex& cx) {
    CohomologyReport rep;
    rep.n = cat.chain_bound();
    rep.chain_counts = cx.chain_counts;
    rep.ranks.resize(cx.d.size());
    for (size_t i = 0; i < cx.d.size(); ++i)
        rep.ranks[i] = sparse_rank(cx.d[i].t, cx.d[i].rows, cx.d[i].cols, cx.p);
    for (int i = 0; i <= cx.max_degree; ++i) {
        long h = cx.dims[i] - rep.ranks[i] - (i > 0 ? rep.ranks[i - 1] : 0);
        rep.dims.push_back(h);
        if (i >= 1 && h != 0) rep.sharp = false;
    }
    return rep;
}

long inverse_limit_dim(const ContravariantFunctorData& N) {
    const OrbitCategory& cat = *N.cat;
    const uint32_t p = N.p;
    std::vector<int> offset(cat.nobj() + 1, 0);
    for (int a = 0; a < cat.nobj(); ++a) offset[a + 1] = offset[a] + N.dims[a];
    int total = offset.back();
    std::vector<std::vector<uint32_t>> rows;
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                // condition N([f])(v_b) = v_a
                const FpMatrix& A = N.contra[a][b][cls];
                for (int i = 0; i < N.dims[a]; ++i) {
                    std::vector<uint32_t> row(total, 0);
                    for (int j = 0; j < N.dims[b]; ++j) row[offset[b] + j] = A.at(i, j);
                    row[offset[a] + i] = (row[offset[a] + i] + p - 1) % p;
                    rows.push_back(std::move(row));
                }
            }
    FpMatrix sys(int(rows.size()), total, p);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < total; ++j) sys.at(int(i), j) = rows[i][j];
    return kernel(sys).dim();
}

SharpnessReport sharpness_report(const ContravariantFunctorData& N, int requested_degree,
                                 long cap) {
    const OrbitCategory& cat = *N.cat;
    SharpnessReport rep;
    rep.n = cat.chain_bound();
    rep.max_degree = requested_degree >= 0 ? std::max(requested_degree, rep.n + 2) : rep.n + 3;
    CochainComplex cx = build_complex(N, rep.max_degree, cap);
    CohomologyReport ch = cohomology(cat, cx);
    rep.dims = ch.dims;
    rep.pass = ch.sharp;
    return rep;
}

std::vector<long> lims_via_shift(const ContravariantFunctorData& N, int max_i,
                                 bool verify_covers) {
    std::vector<long> out;
    out.push_back(inverse_limit_dim(N));
    ContravariantFunctorData cur = N;
    for (int i = 1; i <= max_i; ++i) {
        MackeyficationResult res = mackeyfy(cur);
        if (verify_covers && !verify_axioms(res.I).ok())
            throw std::logic_error("lims_via_shift: Mackeyfication cover failed the axioms");
        long l0N = inverse_limit_dim(cur);
        long l0I = inverse_limit_dim(contravariant_part(res.I));
        long l0C = inverse_limit_dim(res.C);
        out.push_back(l0C - l0I + l0N);
        cur = res.C;
    }
    return out;
}

SharpnessReport sharpness_report_shift(const ContravariantFunctorData& N, int requested_degree,
                                       bool verify_covers) {
    const OrbitCategory& cat = *N.cat;
    SharpnessReport rep;
    rep.n = cat.chain_bound();
    rep.max_degree = requested_degree >= 0 ? std::max(requested_degree, rep.n + 2) : rep.n + 3;
    rep.method = "cokernel-shift";
    rep.dims = lims_via_shift(N, rep.max_degree, verify_covers);
    rep.pass = true;
    for (int i = 1; i <= rep.max_degree; ++i)
        if (rep.dims[i] != 0) rep.pass = false;
    return rep;
}

}  // namespace fuslim
