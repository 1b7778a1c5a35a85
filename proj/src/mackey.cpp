#include "fuslim/mackey.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace fuslim {

void allocate_functor_slots(const OrbitCategory& cat,
                            std::vector<std::vector<std::vector<FpMatrix>>>& slots) {
    slots.assign(cat.nobj(), {});
    for (int a = 0; a < cat.nobj(); ++a) {
        slots[a].resize(cat.nobj());
        for (int b = 0; b < cat.nobj(); ++b) slots[a][b].resize(cat.nclasses(a, b));
    }
}

FpMatrix MackeyFunctorData::r(int P, int Q) const {
    auto c = cat->classify_inclusion(Q, P);
    return contra[c.a][c.b][c.cls];
}

FpMatrix MackeyFunctorData::t(int P, int Q) const {
    auto c = cat->classify_inclusion(Q, P);
    return cov[c.a][c.b][c.cls];
}

FpMatrix MackeyFunctorData::iso(const Morphism& f) const {
    auto c = cat->classify(f, f.img_obj);
    return cov[c.a][c.b][c.cls];
}

FpMatrix ContravariantFunctorData::action(const Morphism& f, int tgt_obj) const {
    auto c = cat->classify(f, tgt_obj);
    return contra[c.a][c.b][c.cls];
}

ContravariantFunctorData contravariant_part(const MackeyFunctorData& M) {
    ContravariantFunctorData N;
    N.cat = M.cat;
    N.p = M.p;
    N.dims = M.dims;
    N.contra = M.contra;
    return N;
}

bool ContravariantFunctorData::is_functorial() const {
    for (int a = 0; a < cat->nobj(); ++a) {
        if (contra[a][a].empty()) return false;
        if (contra[a][a][cat->identity_class(a)] != FpMatrix::identity(dims[a], p)) return false;
    }
    for (int a = 0; a < cat->nobj(); ++a)
        for (int b = 0; b < cat->nobj(); ++b)
            for (int c = 0; c < cat->nobj(); ++c)
                for (int i = 0; i < cat->nclasses(a, b); ++i)
                    for (int j = 0; j < cat->nclasses(b, c); ++j) {
                        int k = cat->compose_classes(a, b, c, i, j);
                        if (contra[a][c][k] != fp_mul(contra[a][b][i], contra[b][c][j]))
                            return false;
                    }
    return true;
}

// ---------------------------------------------------------------------------
// axiom verification

namespace {

struct Verifier {
    const MackeyFunctorData& M;
    const OrbitCategory& cat;
    const FusionSystem& F;
    AxiomReport rep;
    VerifyOptions opt;

    bool room() const { return int(rep.failures.size()) < opt.max_failures; }
    void fail(std::string axiom, int P, int Q, int R, std::string detail) {
        if (room()) rep.failures.push_back({std::move(axiom), P, Q, R, std::move(detail)});
    }

    void structural() {
        for (int a = 0; a < cat.nobj(); ++a) {
            if (M.dims[a] < 0) rep.structural_ok = false;
            for (int b = 0; b < cat.nobj(); ++b) {
                if (int(M.contra[a][b].size()) != cat.nclasses(a, b) ||
                    int(M.cov[a][b].size()) != cat.nclasses(a, b)) {
                    rep.structural_ok = false;
                    continue;
                }
                for (int c = 0; c < cat.nclasses(a, b); ++c) {
                    const FpMatrix& up = M.contra[a][b][c];
                    const FpMatrix& dn = M.cov[a][b][c];
                    if (up.rows != M.dims[a] || up.cols != M.dims[b] || dn.rows != M.dims[b] ||
                        dn.cols != M.dims[a])
                        rep.structural_ok = false;
                }
            }
        }
    }

    void identity() {
        for (int a = 0; a < cat.nobj(); ++a) {
            int idc = cat.identity_class(a);
            FpMatrix I = FpMatrix::identity(M.dims[a], M.p);
            if (M.contra[a][a][idc] != I || M.cov[a][a][idc] != I)
                fail("identity", cat.object(a), -1, -1, "identity class not the identity matrix");
            // iso(c_x|_P) collapses to the identity class
            int A = cat.object(a);
            for (elt x : F.lattice().subs[A].elems) {
                auto c = cat.classify(F.conj_morphism(x, A), A);
                if (c.cls != idc) fail("identity", A, -1, -1, "inner map not in identity class");
            }
        }
    }

    void functoriality() {
        for (int a = 0; a < cat.nobj() && room(); ++a)
            for (int b = 0; b < cat.nobj(); ++b)
                for (int c = 0; c < cat.nobj(); ++c)
                    for (int i = 0; i < cat.nclasses(a, b); ++i)
                        for (int j = 0; j < cat.nclasses(b, c); ++j) {
                            int k = cat.compose_classes(a, b, c, i, j);
                            if (M.contra[a][c][k] != fp_mul(M.contra[a][b][i], M.contra[b][c][j]))
                                fail("contravariant functoriality", cat.object(a), cat.object(b),
                                     cat.object(c), "class " + std::to_string(k));
                            if (M.cov[a][c][k] != fp_mul(M.cov[b][c][j], M.cov[a][b][i]))
                                fail("covariant functoriality", cat.object(a), cat.object(b),
                                     cat.object(c), "class " + std::to_string(k));
                        }
    }

    void isomorphism_condition() {
        for (int a = 0; a < cat.nobj(); ++a)
            for (int cls = 0; cls < cat.nclasses(a, a); ++cls) {
                if (!cat.is_invertible_class(a, a, cls)) continue;
                int inv = cat.inverse_class(a, cls);
                if (M.contra[a][a][cls] != M.cov[a][a][inv])
                    fail("isomorphism condition", cat.object(a), -1, -1,
                         "M*[α] != M_*[α^{-1}] at class " + std::to_string(cls));
            }
    }

    void nested_transitivity() {
        const auto& lat = F.lattice();
        for (int P = 0; P < lat.size() && room(); ++P) {
            if (!cat.in_filter(P)) continue;
            for (int Q : lat.subgroups_of(P)) {
                if (!cat.in_filter(Q)) continue;
                for (int R : lat.subgroups_of(Q)) {
                    if (!cat.in_filter(R)) continue;
                    if (M.r(P, R) != fp_mul(M.r(Q, R), M.r(P, Q)))
                        fail("transitivity of r", P, Q, R, "");
                    if (M.t(P, R) != fp_mul(M.t(P, Q), M.t(Q, R)))
                        fail("transitivity of t", P, Q, R, "");
                }
            }
        }
    }

    void mackey_decomposition() {
        const auto& lat = F.lattice();
        for (int P = 0; P < lat.size() && room(); ++P) {
            if (!cat.in_filter(P)) continue;
            auto subs = lat.subgroups_of(P);
            for (int Q : subs) {
                if (!cat.in_filter(Q)) continue;
                for (int R : subs) {
                    if (!cat.in_filter(R)) continue;
                    FpMatrix lhs = fp_mul(M.r(P, Q), M.t(P, R));
                    FpMatrix rhs(M.dim_at(Q), M.dim_at(R), M.p);
                    for (elt x :
                         double_cosets(F.group(), lat.subs[Q], lat.subs[R], lat.subs[P])) {
                        // I = Q ∩ xRx^-1
                        std::vector<elt> inter;
                        for (elt rr : lat.subs[R].elems) {
                            elt c = F.group().conj(x, rr);
                            if (lat.subs[Q].mask.test(c)) inter.push_back(c);
                        }
                        std::sort(inter.begin(), inter.end());
                        int I = F.object_of_elems(inter);
                        if (!cat.in_filter(I)) continue;  // truncated sum
                        Morphism cx = F.conj_morphism(x, R);
                        FpMatrix term = fp_mul(M.t(Q, I), fp_mul(M.r(cx.img_obj, I), M.iso(cx)));
                        rhs = fp_add(rhs, term);
                    }
                    if (lhs != rhs) fail("Mackey decomposition", P, Q, R, "");
                }
            }
        }
    }
};

}  // namespace

AxiomReport verify_axioms(const MackeyFunctorData& M, VerifyOptions opt) {
    Verifier v{M, *M.cat, M.cat->fusion(), {}, opt};
    v.structural();
    if (!v.rep.structural_ok) return v.rep;
    v.identity();
    v.functoriality();
    v.isomorphism_condition();
    if (opt.nested_transitivity) v.nested_transitivity();
    v.mackey_decomposition();
    return v.rep;
}

// ---------------------------------------------------------------------------
// h0

MackeyFunctorData h0_functor(const OrbitCategory& cat) {
    MackeyFunctorData M;
    M.cat = &cat;
    M.p = cat.fusion().p();
    M.dims.assign(cat.nobj(), 1);
    allocate_functor_slots(cat, M.contra);
    allocate_functor_slots(cat, M.cov);
    const auto& lat = cat.fusion().lattice();
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                const Morphism& f = cat.class_rep(a, b, cls);
                int index = lat.subs[cat.object(b)].order() / lat.subs[f.img_obj].order();
                FpMatrix up(1, 1, M.p), dn(1, 1, M.p);
                up.at(0, 0) = 1;
                dn.at(0, 0) = uint32_t(index % int(M.p));
                M.contra[a][b][cls] = up;
                M.cov[a][b][cls] = dn;
            }
    return M;
}

// ---------------------------------------------------------------------------
// h1

namespace {

// Hom(P, F_p) with a fixed dual basis: generators of P modulo [P,P]P^p and a
// coordinate table for every element.
struct H1Space {
    int dim = 0;
    std::vector<elt> gens;
    std::vector<std::vector<uint32_t>> coords;  // indexed like subs[obj].elems
};

H1Space h1_space(const FusionSystem& F, int obj) {
    const Group& G = F.group();
    const auto& H = F.lattice().subs[obj];
    const uint32_t p = F.p();
    // K = [H,H] H^p
    std::vector<elt> kgens;
    for (elt x : H.elems) {
        for (elt y : H.elems)
            kgens.push_back(G.times(G.times(x, y), G.times(G.inv[x], G.inv[y])));
        kgens.push_back(G.power(x, long(p)));
    }
    std::sort(kgens.begin(), kgens.end());
    kgens.erase(std::unique(kgens.begin(), kgens.end()), kgens.end());
    Subgroup K = closure(G, kgens);
    // coset labels within H
    std::map<elt, int> coset_of;
    std::vector<elt> coset_rep;
    for (elt x : H.elems) {
        if (coset_of.count(x)) continue;
        int c = int(coset_rep.size());
        coset_rep.push_back(x);
        for (elt k : K.elems) coset_of[G.times(x, k)] = c;
    }
    H1Space S;
    // greedy generators of the elementary abelian quotient H/K
    Subgroup span = K;
    for (elt x : H.elems) {
        if (span.mask.test(x)) continue;
        S.gens.push_back(x);
        std::vector<elt> g2 = span.gens;
        g2.push_back(x);
        span = closure(G, g2);
    }
    S.dim = int(S.gens.size());
    // coordinates: enumerate all exponent tuples
    std::vector<std::vector<uint32_t>> coset_coords(coset_rep.size());
    std::vector<uint32_t> tuple(S.dim, 0);
    while (true) {
        elt prod = elt(G.id);
        for (int i = 0; i < S.dim; ++i) prod = G.times(prod, G.power(S.gens[i], long(tuple[i])));
        coset_coords[coset_of.at(prod)] = tuple;
        int i = 0;
        for (; i < S.dim; ++i) {
            if (++tuple[i] < p) break;
            tuple[i] = 0;
        }
        if (i == S.dim) break;
    }
    S.coords.resize(H.elems.size());
    for (size_t i = 0; i < H.elems.size(); ++i) S.coords[i] = coset_coords[coset_of.at(H.elems[i])];
    return S;
}

struct H1Builder {
    const FusionSystem& F;
    std::map<int, H1Space> cache;

    const H1Space& space(int obj) {
        auto it = cache.find(obj);
        if (it == cache.end()) it = cache.emplace(obj, h1_space(F, obj)).first;
        return it->second;
    }

    std::vector<uint32_t> coords(int obj, elt x) {
        const auto& elems = F.lattice().subs[obj].elems;
        auto it = std::lower_bound(elems.begin(), elems.end(), x);
        return space(obj).coords[it - elems.begin()];
    }

    // restriction M(P) -> M(Q) for Q <= P
    FpMatrix restriction(int P, int Q) {
        const H1Space& sp = space(P);
        const H1Space& sq = space(Q);
        FpMatrix m(sq.dim, sp.dim, F.p());
        for (int j = 0; j < sq.dim; ++j) {
            auto c = coords(P, sq.gens[j]);
            for (int i = 0; i < sp.dim; ++i) m.at(j, i) = c[i];
        }
        return m;
    }

    // iso(φ): M(src) -> M(img): f -> f ∘ φ^{-1}
    FpMatrix isomap(const Morphism& phi) {
        const H1Space& sa = space(phi.src);
        const H1Space& sb = space(phi.img_obj);
        Morphism inv = F.inverse(phi);
        FpMatrix m(sb.dim, sa.dim, F.p());
        for (int j = 0; j < sb.dim; ++j) {
            auto c = coords(phi.src, F.apply(inv, sb.gens[j]));
            for (int i = 0; i < sa.dim; ++i) m.at(j, i) = c[i];
        }
        return m;
    }

    // transfer M(Q) -> M(P) for Q <= P by the coset-transversal formula
    FpMatrix transfer(int P, int Q) {
        const Group& G = F.group();
        const H1Space& sp = space(P);
        const H1Space& sq = space(Q);
        const auto& Pelems = F.lattice().subs[P].elems;
        const auto& Qsub = F.lattice().subs[Q];
        // canonical transversal of left cosets tQ: least element per coset
        std::vector<elt> reps;
        std::map<elt, int> coset_of;
        for (elt x : Pelems) {
            if (coset_of.count(x)) continue;
            int c = int(reps.size());
            reps.push_back(x);
            for (elt q : Qsub.elems) coset_of[G.times(x, q)] = c;
        }
        FpMatrix m(sp.dim, sq.dim, F.p());
        for (int j = 0; j < sp.dim; ++j) {
            elt x = sp.gens[j];
            std::vector<uint32_t> acc(sq.dim, 0);
            for (elt ti : reps) {
                elt xt = G.times(x, ti);
                elt tsig = reps[coset_of.at(xt)];
                elt inside = G.times(G.inv[tsig], xt);
                auto c = coords(Q, inside);
                for (int k = 0; k < sq.dim; ++k) acc[k] = (acc[k] + c[k]) % F.p();
            }
            for (int k = 0; k < sq.dim; ++k) m.at(j, k) = acc[k];
        }
        return m;
    }
};

}  // namespace

MackeyFunctorData h1_functor(const OrbitCategory& cat) {
    const FusionSystem& F = cat.fusion();
    H1Builder B{F, {}};
    MackeyFunctorData M;
    M.cat = &cat;
    M.p = F.p();
    M.dims.resize(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) M.dims[a] = B.space(cat.object(a)).dim;
    allocate_functor_slots(cat, M.contra);
    allocate_functor_slots(cat, M.cov);
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                const Morphism& f = cat.class_rep(a, b, cls);
                int B_obj = cat.object(b);
                FpMatrix iso = B.isomap(f);
                FpMatrix isoinv = B.isomap(F.inverse(f));
                M.cov[a][b][cls] = fp_mul(B.transfer(B_obj, f.img_obj), iso);
                M.contra[a][b][cls] = fp_mul(isoinv, B.restriction(B_obj, f.img_obj));
            }
    return M;
}

// ---------------------------------------------------------------------------
// fixed points of a permutation module

namespace {

struct PermModule {
    const FusionSystem& F;
    std::vector<elt> point_rep;          // Ω = G/H: least element per coset
    std::vector<int> point_of;           // g -> point index of gH
    std::map<int, std::vector<int>> orbit_of_cache;  // obj -> per-point orbit index
    std::map<int, int> norbits_cache;

    void build(const Subgroup& H) {
        const Group& G = F.group();
        point_of.assign(G.n, -1);
        for (int g = 0; g < G.n; ++g) {
            if (point_of[g] >= 0) continue;
            int pt = int(point_rep.size());
            point_rep.push_back(elt(g));
            for (elt h : H.elems) point_of[G.times(elt(g), h)] = pt;
        }
    }

    int npoints() const { return int(point_rep.size()); }
    int act(elt g, int pt) const { return point_of[F.group().times(g, point_rep[pt])]; }

    const std::vector<int>& orbits(int obj) {
        auto it = orbit_of_cache.find(obj);
        if (it != orbit_of_cache.end()) return it->second;
        std::vector<int> orb(npoints(), -1);
        int n = 0;
        for (int pt = 0; pt < npoints(); ++pt) {
            if (orb[pt] >= 0) continue;
            int oi = n++;
            std::vector<int> queue{pt};
            orb[pt] = oi;
            for (size_t h = 0; h < queue.size(); ++h)
                for (elt g : F.lattice().subs[obj].elems) {
                    int q = act(g, queue[h]);
                    if (orb[q] < 0) {
                        orb[q] = oi;
                        queue.push_back(q);
                    }
                }
        }
        norbits_cache[obj] = n;
        return orbit_of_cache.emplace(obj, std::move(orb)).first->second;
    }

    int norbits(int obj) {
        orbits(obj);
        return norbits_cache[obj];
    }

    // least G-realizer of an F-morphism (exists for inner/ambient systems)
    elt realizer(const Morphism& m) {
        const Group& G = F.group();
        const auto& elems = F.lattice().subs[m.src].elems;
        for (int g = 0; g < G.n; ++g) {
            bool ok = true;
            for (size_t i = 0; i < elems.size(); ++i)
                if (G.conj(elt(g), elems[i]) != m.img[i]) {
                    ok = false;
                    break;
                }
            if (ok) return elt(g);
        }
        throw input_error("fixed_point_functor: morphism has no group realizer");
    }

    // vector in Ω-coordinates of basis orbit j of M(obj)
    std::vector<uint32_t> orbit_sum(int obj, int j) {
        std::vector<uint32_t> v(npoints(), 0);
        const auto& orb = orbits(obj);
        for (int pt = 0; pt < npoints(); ++pt)
            if (orb[pt] == j) v[pt] = 1;
        return v;
    }

    // express a P-fixed Ω-vector in orbit-sum coordinates
    std::vector<uint32_t> to_basis(int obj, const std::vector<uint32_t>& v) {
        const auto& orb = orbits(obj);
        std::vector<uint32_t> out(norbits(obj), 0);
        std::vector<char> seen(norbits(obj), 0);
        for (int pt = 0; pt < npoints(); ++pt) {
            if (!seen[orb[pt]]) {
                out[orb[pt]] = v[pt];
                seen[orb[pt]] = 1;
            } else if (out[orb[pt]] != v[pt]) {
                throw std::logic_error("fixed_point_functor: vector not P-fixed");
            }
        }
        return out;
    }
};

}  // namespace

MackeyFunctorData fixed_point_functor(const OrbitCategory& cat, const Subgroup& H) {
    const FusionSystem& F = cat.fusion();
    const Group& G = F.group();
    const uint32_t p = F.p();
    PermModule PM{F, {}, {}, {}, {}};
    PM.build(H);

    MackeyFunctorData M;
    M.cat = &cat;
    M.p = p;
    M.dims.resize(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) M.dims[a] = PM.norbits(cat.object(a));
    allocate_functor_slots(cat, M.contra);
    allocate_functor_slots(cat, M.cov);

    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                const Morphism& f = cat.class_rep(a, b, cls);
                int A = cat.object(a), B = cat.object(b);
                int I = f.img_obj;
                elt g = PM.realizer(f);

                // cov: t^B_I ∘ iso(f): orbit sums of A -> g-translate -> trace to B
                FpMatrix dn(M.dims[b], M.dims[a], p);
                // transversal of I in B
                std::vector<elt> reps;
                {
                    std::set<elt> covered;
                    for (elt x : F.lattice().subs[B].elems) {
                        if (covered.count(x)) continue;
                        reps.push_back(x);
                        for (elt q : F.lattice().subs[I].elems) covered.insert(G.times(x, q));
                    }
                }
                for (int j = 0; j < M.dims[a]; ++j) {
                    std::vector<uint32_t> v = PM.orbit_sum(A, j);
                    // iso: apply g
                    std::vector<uint32_t> w(PM.npoints(), 0);
                    for (int pt = 0; pt < PM.npoints(); ++pt)
                        if (v[pt]) w[PM.act(g, pt)] = (w[PM.act(g, pt)] + v[pt]) % p;
                    // trace over reps
                    std::vector<uint32_t> tr(PM.npoints(), 0);
                    for (elt ti : reps)
                        for (int pt = 0; pt < PM.npoints(); ++pt)
                            if (w[pt]) tr[PM.act(ti, pt)] = (tr[PM.act(ti, pt)] + w[pt]) % p;
                    auto col = PM.to_basis(B, tr);
                    for (int i = 0; i < M.dims[b]; ++i) dn.at(i, j) = col[i];
                }
                M.cov[a][b][cls] = dn;

                // contra: iso(f^{-1}) ∘ r^B_I: B-orbit sums restricted, then g^{-1}
                FpMatrix up(M.dims[a], M.dims[b], p);
                elt ginv = G.inv[g];
                for (int j = 0; j < M.dims[b]; ++j) {
                    std::vector<uint32_t> v = PM.orbit_sum(B, j);
                    std::vector<uint32_t> w(PM.npoints(), 0);
                    for (int pt = 0; pt < PM.npoints(); ++pt)
                        if (v[pt]) w[PM.act(ginv, pt)] = (w[PM.act(ginv, pt)] + v[pt]) % p;
                    auto col = PM.to_basis(A, w);
                    for (int i = 0; i < M.dims[a]; ++i) up.at(i, j) = col[i];
                }
                M.contra[a][b][cls] = up;
            }
    return M;
}

bool classical_mackey_check(const OrbitCategory& cat, const Subgroup& H) {
    const FusionSystem& F = cat.fusion();
    const Group& G = F.group();
    const uint32_t p = F.p();
    PermModule PM{F, {}, {}, {}, {}};
    PM.build(H);
    const auto& lat = F.lattice();
    const int npts = PM.npoints();

    // all maps in Ω-coordinates
    auto trace = [&](int A, int B, const std::vector<uint32_t>& v) {
        // tr^A_B: Σ over transversal of B in A
        std::vector<uint32_t> out(npts, 0);
        std::set<elt> covered;
        for (elt x : lat.subs[A].elems) {
            if (covered.count(x)) continue;
            for (elt q : lat.subs[B].elems) covered.insert(G.times(x, q));
            for (int pt = 0; pt < npts; ++pt)
                if (v[pt]) out[PM.act(x, pt)] = (out[PM.act(x, pt)] + v[pt]) % p;
        }
        return out;
    };
    auto act_elt = [&](elt g, const std::vector<uint32_t>& v) {
        std::vector<uint32_t> out(npts, 0);
        for (int pt = 0; pt < npts; ++pt)
            if (v[pt]) out[PM.act(g, pt)] = (out[PM.act(g, pt)] + v[pt]) % p;
        return out;
    };

    for (int P = 0; P < lat.size(); ++P) {
        if (!cat.in_filter(P)) continue;
        auto subs = lat.subgroups_of(P);
        for (int Q : subs) {
            if (!cat.in_filter(Q)) continue;
            for (int R : subs) {
                if (!cat.in_filter(R)) continue;
                // for each R-fixed basis vector (R-orbit sum)
                for (int j = 0; j < PM.norbits(R); ++j) {
                    std::vector<uint32_t> v = PM.orbit_sum(R, j);
                    std::vector<uint32_t> lhs = trace(P, R, v);  // already Q-restr (same coords)
                    std::vector<uint32_t> rhs(npts, 0);
                    for (elt x : double_cosets(G, lat.subs[Q], lat.subs[R], lat.subs[P])) {
                        // tr^Q_{Q∩xR} res c_x  (res is identity on coordinates)
                        std::vector<elt> inter;
                        for (elt rr : lat.subs[R].elems) {
                            elt c = G.conj(x, rr);
                            if (lat.subs[Q].mask.test(c)) inter.push_back(c);
                        }
                        std::sort(inter.begin(), inter.end());
                        int I = F.object_of_elems(inter);
                        auto term = trace(Q, I, act_elt(x, v));
                        for (int pt = 0; pt < npts; ++pt) rhs[pt] = (rhs[pt] + term[pt]) % p;
                    }
                    if (lhs != rhs) return false;
                }
            }
        }
    }
    return true;
}

MackeyFunctorData representable_functor(const OrbitCategory& cat, int z_obj) {
    const FusionSystem& F = cat.fusion();
    const uint32_t p = F.p();
    const bool centric = cat.centric_only();
    MackeyFunctorData M;
    M.cat = &cat;
    M.p = p;
    M.dims.resize(cat.nobj());
    std::vector<std::vector<Biset>> basis(cat.nobj());
    std::vector<std::map<std::pair<int, std::vector<elt>>, int>> index(cat.nobj());
    for (int a = 0; a < cat.nobj(); ++a) {
        basis[a] = biset_basis(F, z_obj, cat.object(a), centric);
        M.dims[a] = int(basis[a].size());
        for (int i = 0; i < M.dims[a]; ++i)
            index[a].emplace(std::make_pair(basis[a][i].dom, basis[a][i].phi.img), i);
    }
    allocate_functor_slots(cat, M.contra);
    allocate_functor_slots(cat, M.cov);
    auto expand = [&](int tgt, const BisetCombo& combo, FpMatrix& m, int col) {
        for (auto& [b, mult] : combo) {
            long mm = mult % long(p);
            if (!mm) continue;
            if (centric && !F.is_centric(b.dom)) continue;
            auto it = index[tgt].find({b.dom, b.phi.img});
            if (it == index[tgt].end()) throw std::logic_error("representable: basis miss");
            m.at(it->second, col) = uint32_t((m.at(it->second, col) + mm) % p);
        }
    };
    for (int a = 0; a < cat.nobj(); ++a)
        for (int b = 0; b < cat.nobj(); ++b)
            for (int cls = 0; cls < cat.nclasses(a, b); ++cls) {
                const Morphism& f = cat.class_rep(a, b, cls);
                // covariant: postcompose with [B ×_f A]
                Biset fb;
                fb.from = cat.object(a);
                fb.to = cat.object(b);
                fb.dom = cat.object(a);
                fb.phi = f;
                FpMatrix dn(M.dims[b], M.dims[a], p);
                for (int i = 0; i < M.dims[a]; ++i)
                    expand(b, compose_bisets(F, fb, basis[a][i]), dn, i);
                M.cov[a][b][cls] = dn;
                // contravariant: postcompose with [A ×_{f^{-1}} B]
                Biset rb;
                rb.from = cat.object(b);
                rb.to = cat.object(a);
                rb.dom = f.img_obj;
                rb.phi = F.inverse(f);
                FpMatrix up(M.dims[a], M.dims[b], p);
                for (int i = 0; i < M.dims[b]; ++i)
                    expand(a, compose_bisets(F, rb, basis[b][i]), up, i);
                M.contra[a][b][cls] = up;
            }
    return M;
}

// ---------------------------------------------------------------------------
// restriction to centrics

MackeyFunctorData restrict_to_centrics(const MackeyFunctorData& M, const OrbitCategory& centric) {
    const OrbitCategory& full = *M.cat;
    MackeyFunctorData R;
    R.cat = &centric;
    R.p = M.p;
    R.dims.resize(centric.nobj());
    allocate_functor_slots(centric, R.contra);
    allocate_functor_slots(centric, R.cov);
    for (int a = 0; a < centric.nobj(); ++a) {
        R.dims[a] = M.dims[full.rep_pos(centric.object(a))];
        for (int b = 0; b < centric.nobj(); ++b)
            for (int cls = 0; cls < centric.nclasses(a, b); ++cls) {
                const Morphism& f = centric.class_rep(a, b, cls);
                auto c = full.classify(f, centric.object(b));
                R.contra[a][b][cls] = M.contra[c.a][c.b][c.cls];
                R.cov[a][b][cls] = M.cov[c.a][c.b][c.cls];
            }
    }
    R.verified = false;
    return R;
}

ContravariantFunctorData restrict_to_centrics(const ContravariantFunctorData& N,
                                              const OrbitCategory& centric) {
    const OrbitCategory& full = *N.cat;
    ContravariantFunctorData R;
    R.cat = &centric;
    R.p = N.p;
    R.dims.resize(centric.nobj());
    allocate_functor_slots(centric, R.contra);
    for (int a = 0; a < centric.nobj(); ++a) {
        R.dims[a] = N.dims[full.rep_pos(centric.object(a))];
        for (int b = 0; b < centric.nobj(); ++b)
            for (int cls = 0; cls < centric.nclasses(a, b); ++cls) {
                const Morphism& f = centric.class_rep(a, b, cls);
                auto c = full.classify(f, centric.object(b));
                R.contra[a][b][cls] = N.contra[c.a][c.b][c.cls];
            }
    }
    return R;
}

Criterion45Report check_criterion_45(const MackeyFunctorData& M) {
    const FusionSystem& F = M.cat->fusion();
    const auto& lat = F.lattice();
    Criterion45Report rep;
    for (int P = 0; P < lat.size(); ++P) {
        if (!F.is_centric(P)) continue;
        for (int R = 0; R < lat.size(); ++R) {
            if (!F.is_centric(R)) continue;
            int I = lat.intersection(P, R);
            if (F.is_centric(I)) continue;
            FpMatrix comp = fp_mul(M.t(R, I), M.r(P, I));
            if (!comp.is_zero()) {
                rep.ok = false;
                rep.witnesses.emplace_back(P, R);
            }
        }
    }
    return rep;
}

}  // namespace fuslim
