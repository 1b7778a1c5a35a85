#include "fuslim/mackeyfication.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <random>
#include <set>

#include "fuslim/simple.hpp"

namespace fuslim {

// per-object coinvariant data for I(N)
struct IBuilderImpl {
    const OrbitCategory* cat = nullptr;
    ContravariantFunctorData N;  // copy: result must stay self-contained
    struct ObjData {
        std::vector<int> blocks;   // lattice objects L <= P in the filter
        std::vector<int> offset;   // per block
        int ambient = 0;
        QuotientMap q;             // ambient ->> I(N)(P)
    };
    std::map<int, ObjData> cache;

    const ObjData& at(int P) {
        auto it = cache.find(P);
        if (it != cache.end()) return it->second;
        const FusionSystem& F = cat->fusion();
        const auto& lat = F.lattice();
        const uint32_t p = N.p;
        ObjData d;
        for (int L : lat.subgroups_of(P))
            if (cat->in_filter(L)) d.blocks.push_back(L);
        d.offset.resize(d.blocks.size() + 1, 0);
        for (size_t i = 0; i < d.blocks.size(); ++i)
            d.offset[i + 1] = d.offset[i] + N.dim_at(d.blocks[i]);
        d.ambient = d.offset.back();
        // coinvariant relations x·u - u over generators x of P
        std::vector<std::vector<uint32_t>> rel;
        const auto& gens = lat.subs[P].gens.empty() ? lat.subs[P].elems : lat.subs[P].gens;
        for (size_t bi = 0; bi < d.blocks.size(); ++bi) {
            int L = d.blocks[bi];
            int dL = N.dim_at(L);
            if (dL == 0) continue;
            for (elt x : gens) {
                // x sends block L to block xLx^-1 via N([c_{x^-1}|_{xL}])
                Morphism cx = F.conj_morphism(x, L);
                int xL = cx.img_obj;
                Morphism cxinv = F.inverse(cx);  // xL -> L
                FpMatrix A = N.action(cxinv, L);  // N(L) -> N(xL)
                size_t ti = std::lower_bound(d.blocks.begin(), d.blocks.end(), xL) -
                            d.blocks.begin();
                assert(ti < d.blocks.size() && d.blocks[ti] == xL);
                for (int j = 0; j < dL; ++j) {
                    std::vector<uint32_t> row(d.ambient, 0);
                    for (int k = 0; k < A.rows; ++k)
                        row[d.offset[ti] + k] = (row[d.offset[ti] + k] + A.at(k, j)) % p;
                    row[d.offset[bi] + j] = (row[d.offset[bi] + j] + p - 1) % p;
                    rel.push_back(std::move(row));
                }
            }
        }
        FpMatrix relm(int(rel.size()), d.ambient, p);
        for (size_t i = 0; i < rel.size(); ++i)
            for (int j = 0; j < d.ambient; ++j) relm.at(int(i), j) = rel[i][j];
        d.q = quotient_map(d.ambient, FpSubspace::from_rows(relm));
        return cache.emplace(P, std::move(d)).first->second;
    }

    int block_index(const ObjData& d, int L) const {
        auto it = std::lower_bound(d.blocks.begin(), d.blocks.end(), L);
        assert(it != d.blocks.end() && *it == L);
        return int(it - d.blocks.begin());
    }

    // π^P_L as a matrix N(rep L) -> I(N)(P)
    FpMatrix pi(int P, int L) {
        const ObjData& d = at(P);
        int bi = block_index(d, L);
        int dL = N.dim_at(L);
        FpMatrix emb(d.ambient, dL, N.p);
        for (int j = 0; j < dL; ++j) emb.at(d.offset[bi] + j, j) = 1;
        return fp_mul(d.q.proj, emb);
    }

    // t^P_Q : I(N)(Q) -> I(N)(P) for Q <= P: blocks of Q re-embedded
    FpMatrix t_map(int P, int Q) {
        const ObjData& dp = at(P);
        const ObjData& dq = at(Q);
        FpMatrix emb(dp.ambient, dq.ambient, N.p);
        for (size_t bi = 0; bi < dq.blocks.size(); ++bi) {
            int L = dq.blocks[bi];
            int ti = block_index(dp, L);
            for (int j = 0; j < N.dim_at(L); ++j) emb.at(dp.offset[ti] + j, dq.offset[bi] + j) = 1;
        }
        return fp_mul(dp.q.proj, fp_mul(emb, dq.q.section));
    }

    // r^P_Q by the truncated double-coset formula
    FpMatrix r_map(int P, int Q) {
        const FusionSystem& F = cat->fusion();
        const auto& lat = F.lattice();
        const uint32_t p = N.p;
        const ObjData& dp = at(P);
        const ObjData& dq = at(Q);
        FpMatrix amb(dq.ambient, dp.ambient, p);
        for (size_t bi = 0; bi < dp.blocks.size(); ++bi) {
            int L = dp.blocks[bi];
            int dL = N.dim_at(L);
            if (dL == 0) continue;
            for (elt x : F.truncated_double_cosets(Q, P, L, cat->centric_only())) {
                Morphism cx = F.conj_morphism(x, L);  // L -> xL
                int xL = cx.img_obj;
                // I = Q ∩ xL
                std::vector<elt> inter;
                for (elt y : lat.subs[xL].elems)
                    if (lat.subs[Q].mask.test(y)) inter.push_back(y);
                std::sort(inter.begin(), inter.end());
                int I = F.object_of_elems(inter);
                if (!cat->in_filter(I)) continue;
                // N([ι^{xL}_I]) ∘ (x·) : N(L) -> N(xL) -> N(I)
                FpMatrix xact = N.action(F.inverse(cx), L);  // N(L)->N(xL)
                FpMatrix res = N.action(F.identity_morphism(I), xL);  // N(xL)->N(I)
                FpMatrix comp = fp_mul(res, xact);
                int ti = block_index(dq, I);
                for (int j = 0; j < dL; ++j)
                    for (int k = 0; k < comp.rows; ++k)
                        amb.at(dq.offset[ti] + k, dp.offset[bi] + j) =
                            uint32_t((amb.at(dq.offset[ti] + k, dp.offset[bi] + j) +
                                      comp.at(k, j)) %
                                     p);
            }
        }
        return fp_mul(dq.q.proj, fp_mul(amb, dp.q.section));
    }

    // iso(φ): I(N)(P) -> I(N)(φP): blockwise N([φ|_L]^{-1})
    FpMatrix iso_map(const Morphism& f) {
        const FusionSystem& F = cat->fusion();
        const uint32_t p = N.p;
        const ObjData& dp = at(f.src);
        const ObjData& dq = at(f.img_obj);
        FpMatrix amb(dq.ambient, dp.ambient, p);
        for (size_t bi = 0; bi < dp.blocks.size(); ++bi) {
            int L = dp.blocks[bi];
            int dL = N.dim_at(L);
            if (dL == 0) continue;
            Morphism fl = F.restrict(f, L);
            FpMatrix A = N.action(F.inverse(fl), L);  // N(L) -> N(φL)
            int ti = block_index(dq, fl.img_obj);
            for (int j = 0; j < dL; ++j)
                for (int k = 0; k < A.rows; ++k)
                    amb.at(dq.offset[ti] + k, dp.offset[bi] + j) = A.at(k, j);
        }
        return fp_mul(dq.q.proj, fp_mul(amb, dp.q.section));
    }
};

FpMatrix MackeyficationResult::pi(int P, int L) const { return impl->pi(P, L); }

MackeyficationResult mackeyfy(const ContravariantFunctorData& N) {
    const OrbitCategory& cat = *N.cat;
    const FusionSystem& F = cat.fusion();
    MackeyficationResult res;
    res.impl = std::make_shared<IBuilderImpl>();
    res.impl->cat = &cat;
    res.impl->N = N;
    IBuilderImpl& B = *res.impl;

    MackeyFunctorData& I = res.I;
    I.cat = &cat;
    I.p = N.p;
    I.dims.resize(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) I.dims[a] = B.at(cat.object(a)).q.dim();
    allocate_functor_slots(cat, I.contra);
    allocate_functor_slots(cat, I.cov);
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                const Morphism& f = cat.class_rep(a, b, cls);
                int Bo = cat.object(b);
                I.cov[a][b][cls] = fp_mul(B.t_map(Bo, f.img_obj), B.iso_map(f));
                I.contra[a][b][cls] =
                    fp_mul(B.iso_map(F.inverse(f)), B.r_map(Bo, f.img_obj));
            }

    // unit η and cokernel C
    res.eta.resize(cat.nobj());
    res.C.cat = &cat;
    res.C.p = N.p;
    res.C.dims.resize(cat.nobj());
    allocate_functor_slots(cat, res.C.contra);
    std::vector<QuotientMap> coker(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) {
        int P = cat.object(a);
        res.eta[a] = B.pi(P, P);
        coker[a] = quotient_map(I.dims[a], image(res.eta[a]));
        res.C.dims[a] = coker[a].dim();
    }
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls)
                res.C.contra[a][b][cls] =
                    fp_mul(coker[a].proj, fp_mul(I.contra[a][b][cls], coker[b].section));
    return res;
}

TriangleReport counit_and_triangles(const MackeyFunctorData& M) {
    const OrbitCategory& cat = *M.cat;
    TriangleReport rep;
    ContravariantFunctorData N = contravariant_part(M);
    MackeyficationResult IN = mackeyfy(N);
    rep.i_is_mackey = verify_axioms(IN.I).ok();

    // ε_M(P): I(U*M)(P) -> M(P): π^P_L(u) -> t^P_L(u)
    auto epsilon = [&](const MackeyFunctorData& target, IBuilderImpl& B, int a) {
        int P = cat.object(a);
        const auto& d = B.at(P);
        FpMatrix amb(target.dims[a], d.ambient, target.p);
        for (size_t bi = 0; bi < d.blocks.size(); ++bi) {
            int L = d.blocks[bi];
            FpMatrix tpl = target.t(P, L);
            for (int j = 0; j < tpl.cols; ++j)
                for (int k = 0; k < tpl.rows; ++k) amb.at(k, d.offset[bi] + j) = tpl.at(k, j);
        }
        return fp_mul(amb, d.q.section);
    };

    for (int a = 0; a < cat.nobj(); ++a) {
        // η injective and dim bookkeeping
        if (rref(IN.eta[a]).rank != N.dims[a]) rep.eta_injective = false;
        if (IN.I.dims[a] != N.dims[a] + IN.C.dims[a]) rep.dims_consistent = false;
        // triangle: U*ε ∘ ηU* = Id
        FpMatrix eps = epsilon(M, *IN.impl, a);
        if (fp_mul(eps, IN.eta[a]) != FpMatrix::identity(N.dims[a], N.p))
            rep.triangle_counit = false;
    }

    // triangle: εI ∘ Iη = Id_{I(N)}
    ContravariantFunctorData N2 = contravariant_part(IN.I);
    MackeyficationResult IN2 = mackeyfy(N2);
    for (int a = 0; a < cat.nobj(); ++a) {
        int P = cat.object(a);
        const auto& d1 = IN.impl->at(P);
        const auto& d2 = IN2.impl->at(P);
        // I(η)(P): blockwise η_N(L), on coinvariants
        FpMatrix amb(d2.ambient, d1.ambient, N.p);
        for (size_t bi = 0; bi < d1.blocks.size(); ++bi) {
            int L = d1.blocks[bi];
            const FpMatrix& etaL = IN.eta[cat.rep_pos(L)];
            for (int j = 0; j < etaL.cols; ++j)
                for (int k = 0; k < etaL.rows; ++k)
                    amb.at(d2.offset[bi] + k, d1.offset[bi] + j) = etaL.at(k, j);
        }
        FpMatrix ieta = fp_mul(d2.q.proj, fp_mul(amb, d1.q.section));
        FpMatrix eps = epsilon(IN.I, *IN2.impl, a);
        if (fp_mul(eps, ieta) != FpMatrix::identity(IN.I.dims[a], N.p))
            rep.triangle_unit = false;
    }
    return rep;
}

ContravariantFunctorData iterate_cokernel(const ContravariantFunctorData& N, int i) {
    ContravariantFunctorData cur = N;
    for (int k = 0; k < i; ++k) cur = mackeyfy(cur).C;
    return cur;
}

namespace {

// skyscraper at one object carrying a simple Out-module (inverse-twisted so
// the contravariant functoriality comes out right)
ContravariantFunctorData skyscraper(const OrbitCategory& cat, int a0, const OutModule& V) {
    ContravariantFunctorData N;
    N.cat = &cat;
    N.p = cat.fusion().p();
    N.dims.assign(cat.nobj(), 0);
    N.dims[a0] = V.dim;
    allocate_functor_slots(cat, N.contra);
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int c = 0; c < cat.nclasses(a, b); ++c) {
                FpMatrix m(N.dims[a], N.dims[b], N.p);
                if (a == a0 && b == a0) m = V.action[cat.inverse_class(a0, c)];
                N.contra[a][b][c] = m;
            }
    return N;
}

ContravariantFunctorData direct_sum(const ContravariantFunctorData& X,
                                    const ContravariantFunctorData& Y) {
    const OrbitCategory& cat = *X.cat;
    ContravariantFunctorData N;
    N.cat = &cat;
    N.p = X.p;
    N.dims.resize(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) N.dims[a] = X.dims[a] + Y.dims[a];
    allocate_functor_slots(cat, N.contra);
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int c = 0; c < cat.nclasses(a, b); ++c) {
                FpMatrix m(N.dims[a], N.dims[b], N.p);
                const FpMatrix& mx = X.contra[a][b][c];
                const FpMatrix& my = Y.contra[a][b][c];
                for (int i = 0; i < mx.rows; ++i)
                    for (int j = 0; j < mx.cols; ++j) m.at(i, j) = mx.at(i, j);
                for (int i = 0; i < my.rows; ++i)
                    for (int j = 0; j < my.cols; ++j)
                        m.at(mx.rows + i, mx.cols + j) = my.at(i, j);
                N.contra[a][b][c] = m;
            }
    return N;
}

ContravariantFunctorData random_projective_quotient(const OrbitCategory& cat, uint64_t seed);

}  // namespace

ContravariantFunctorData random_contravariant(const OrbitCategory& cat, uint64_t seed) {
    std::mt19937_64 shape_rng(seed ^ 0x9e3779b97f4a7c15ull);
    int shape = int(shape_rng() % 3);
    if (shape == 0) return random_projective_quotient(cat, seed);
    // twisted skyscraper at a random object
    int a0 = int(shape_rng() % cat.nobj());
    auto simples = enumerate_simple_modules(cat, a0);
    const OutModule& V = simples[shape_rng() % simples.size()];
    ContravariantFunctorData sky = skyscraper(cat, a0, V);
    if (shape == 1) return sky;
    return direct_sum(random_projective_quotient(cat, seed), sky);
}

namespace {

ContravariantFunctorData random_projective_quotient(const OrbitCategory& cat, uint64_t seed) {
    const FusionSystem& F = cat.fusion();
    const uint32_t p = F.p();
    std::mt19937_64 rng(seed);
    // free part: sum of orbit-category representables k Hom_O(-, Z_i)
    int m = 1 + int(rng() % 2);
    std::vector<int> zs;
    for (int i = 0; i < m; ++i) zs.push_back(int(rng() % cat.nobj()));
    ContravariantFunctorData F0;
    F0.cat = &cat;
    F0.p = p;
    F0.dims.assign(cat.nobj(), 0);
    std::vector<std::vector<int>> zoffset(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a)
        for (int z : zs) {
            zoffset[a].push_back(F0.dims[a]);
            F0.dims[a] += cat.nclasses(a, z);
        }
    allocate_functor_slots(cat, F0.contra);
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                FpMatrix mat(F0.dims[a], F0.dims[b], p);
                for (size_t zi = 0; zi < zs.size(); ++zi) {
                    int z = zs[zi];
                    for (int g = 0; g < cat.nclasses(b, z); ++g) {
                        int gf = cat.compose_classes(a, b, z, cls, g);
                        mat.at(zoffset[a][zi] + gf, zoffset[b][zi] + g) = 1;
                    }
                }
                F0.contra[a][b][cls] = mat;
            }
    // spin a random subfunctor and take the quotient
    CategoryAlgebraModule mod = as_category_module(F0);
    std::vector<std::vector<uint32_t>> seeds;
    int nseeds = 1 + int(rng() % 3);
    for (int i = 0; i < nseeds && mod.total > 0; ++i) {
        std::vector<uint32_t> v(mod.total, 0);
        for (int j = 0; j < mod.total; ++j) v[j] = uint32_t(rng() % p);
        seeds.push_back(std::move(v));
    }
    FpSubspace W = mod.total ? spin(mod.dense, seeds) : FpSubspace::zero(0, p);
    if (W.dim() == mod.total) {
        // quotient would vanish; keep the free functor itself
        return F0;
    }
    // per-block subspaces
    ContravariantFunctorData N;
    N.cat = &cat;
    N.p = p;
    N.dims.resize(cat.nobj());
    std::vector<QuotientMap> q(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) {
        // block components of W (W is e_a-closed, so these span e_a W)
        std::vector<std::vector<uint32_t>> blockrows;
        for (int i = 0; i < W.dim(); ++i) {
            auto row = W.basis.row(i);
            std::vector<uint32_t> sub(row.begin() + mod.offset[a],
                                      row.begin() + mod.offset[a] + F0.dims[a]);
            if (std::any_of(sub.begin(), sub.end(), [](uint32_t x) { return x != 0; }))
                blockrows.push_back(sub);
        }
        FpMatrix bm(int(blockrows.size()), F0.dims[a], p);
        for (size_t i = 0; i < blockrows.size(); ++i)
            for (int j = 0; j < F0.dims[a]; ++j) bm.at(int(i), j) = blockrows[i][j];
        q[a] = quotient_map(F0.dims[a], FpSubspace::from_rows(bm));
        N.dims[a] = q[a].dim();
    }
    allocate_functor_slots(cat, N.contra);
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls)
                N.contra[a][b][cls] =
                    fp_mul(q[a].proj, fp_mul(F0.contra[a][b][cls], q[b].section));
    return N;
}

}  // namespace

}  // namespace fuslim
