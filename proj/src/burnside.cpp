#include "fuslim/burnside.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace fuslim {

Biset identity_biset(const FusionSystem& F, int obj) {
    Biset b;
    b.from = b.to = b.dom = obj;
    b.phi = F.identity_morphism(obj);
    return b;
}

// pre-conjugation: (U, φ) -> (p^-1 U p, φ ∘ c_p), post: (U, c_q ∘ φ)
static Biset conj_biset(const FusionSystem& F, const Biset& b, elt q, elt p) {
    const Group& G = F.group();
    const auto& delems = F.lattice().subs[b.dom].elems;
    std::vector<elt> newdom(delems.size());
    elt pinv = G.inv[p];
    for (size_t i = 0; i < delems.size(); ++i) newdom[i] = G.conj(pinv, delems[i]);
    std::sort(newdom.begin(), newdom.end());
    Biset out;
    out.from = b.from;
    out.to = b.to;
    out.dom = F.object_of_elems(newdom);
    out.phi.src = out.dom;
    out.phi.img.resize(newdom.size());
    for (size_t i = 0; i < newdom.size(); ++i)
        out.phi.img[i] = G.conj(q, F.apply(b.phi, G.conj(p, newdom[i])));
    std::vector<elt> sorted = out.phi.img;
    std::sort(sorted.begin(), sorted.end());
    out.phi.img_obj = F.object_of_elems(sorted);
    return out;
}

Biset canonical_biset(const FusionSystem& F, const Biset& b) {
    const auto& Q = F.lattice().subs[b.to];
    const auto& P = F.lattice().subs[b.from];
    Biset best = b;
    bool first = true;
    for (elt p : P.elems)
        for (elt q : Q.elems) {
            Biset cand = conj_biset(F, b, q, p);
            if (first || cand < best) {
                best = cand;
                first = false;
            }
        }
    return best;
}

std::vector<Biset> biset_basis(const FusionSystem& F, int from, int to,
                               bool centric_domains_only) {
    const auto& lat = F.lattice();
    // all pairs (U <= from, φ: U -> to), then (to,from)-conjugacy orbits by BFS
    using Key = std::pair<int, std::vector<elt>>;  // (dom object, image vector)
    std::set<Key> seen;
    std::vector<Biset> reps;
    const auto& Pgens = lat.subs[from].gens.empty()
                            ? lat.subs[from].elems
                            : lat.subs[from].gens;
    const auto& Qgens = lat.subs[to].gens.empty() ? lat.subs[to].elems : lat.subs[to].gens;
    for (int u : lat.subgroups_of(from)) {
        if (centric_domains_only && !F.is_centric(u)) continue;
        for (const Morphism& m : F.hom(u, to)) {
            Biset seed;
            seed.from = from;
            seed.to = to;
            seed.dom = u;
            seed.phi = m;
            if (seen.count({seed.dom, seed.phi.img})) continue;
            // new orbit
            std::vector<Biset> queue{seed};
            seen.insert({seed.dom, seed.phi.img});
            Biset least = seed;
            for (size_t h = 0; h < queue.size(); ++h) {
                Biset cur = queue[h];
                for (elt p : Pgens) {
                    Biset next = conj_biset(F, cur, elt(F.group().id), p);
                    if (seen.insert({next.dom, next.phi.img}).second) {
                        if (next < least) least = next;
                        queue.push_back(next);
                    }
                }
                for (elt q : Qgens) {
                    Biset next = conj_biset(F, cur, q, elt(F.group().id));
                    if (seen.insert({next.dom, next.phi.img}).second) {
                        if (next < least) least = next;
                        queue.push_back(next);
                    }
                }
            }
            reps.push_back(least);
        }
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

static void push_term(BisetCombo& combo, Biset b, long mult) {
    for (auto& [bb, m] : combo)
        if (bb == b) {
            m += mult;
            return;
        }
    combo.emplace_back(std::move(b), mult);
}

static void sort_combo(BisetCombo& combo) {
    std::sort(combo.begin(), combo.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

BisetCombo compose_bisets(const FusionSystem& F, const Biset& g, const Biset& f) {
    if (f.to != g.from) throw input_error("compose_bisets: middle object mismatch");
    const Group& G = F.group();
    const auto& lat = F.lattice();
    // g = [R ×_ψ Q], ψ: V -> R; f = [Q ×_φ P], φ: U -> Q
    int V = g.dom;
    int phiU = f.phi.img_obj;
    std::vector<elt> reps = double_cosets(G, lat.subs[V], lat.subs[phiU], lat.subs[f.to]);
    BisetCombo combo;
    for (elt x : reps) {
        // domain φ^-1(V^x ∩ φ(U)), map u -> ψ(x φ(u) x^-1)
        elt xinv = G.inv[x];
        std::vector<elt> w;  // V^x ∩ φ(U)
        for (elt v : lat.subs[V].elems) {
            elt vx = G.conj(xinv, v);
            if (lat.subs[phiU].mask.test(vx)) w.push_back(vx);
        }
        Morphism phinv = F.inverse(f.phi);
        std::vector<elt> dom;
        dom.reserve(w.size());
        for (elt y : w) dom.push_back(F.apply(phinv, y));
        std::sort(dom.begin(), dom.end());
        Biset term;
        term.from = f.from;
        term.to = g.to;
        term.dom = F.object_of_elems(dom);
        term.phi.src = term.dom;
        term.phi.img.reserve(dom.size());
        for (elt d : dom) term.phi.img.push_back(F.apply(g.phi, G.conj(x, F.apply(f.phi, d))));
        std::vector<elt> sorted = term.phi.img;
        std::sort(sorted.begin(), sorted.end());
        term.phi.img_obj = F.object_of_elems(sorted);
        push_term(combo, canonical_biset(F, term), 1);
    }
    sort_combo(combo);
    return combo;
}

BisetCombo compose_mod_centric(const FusionSystem& F, const Biset& g, const Biset& f) {
    BisetCombo combo = compose_bisets(F, g, f);
    BisetCombo out;
    for (auto& [b, m] : combo) {
        long mm = m % long(F.p());
        if (mm && F.is_centric(b.dom)) out.emplace_back(b, mm);
    }
    return out;
}

// ---------------------------------------------------------------------------
// set-level oracle

namespace {

// the biset [T ×_ψ M] as the set of classes of pairs (t, m), t in T, m in M,
// with (t ψ(v), m) ~ (t, v m); class of a pair is found through a dense table
struct AmalgFactor {
    const FusionSystem* F;
    const Group* G;
    std::vector<elt> tels, mels;       // elements of T and M
    std::vector<int> class_of_pair;    // |T| x |M| by local index
    std::vector<std::pair<elt, elt>> rep;  // class -> canonical pair
    std::vector<int> tpos, mpos;       // global elt -> local index (-1 outside)

    void build(const FusionSystem& fs, int T, int M, const Morphism& psi) {
        F = &fs;
        G = &fs.group();
        const auto& lat = fs.lattice();
        tels = lat.subs[T].elems;
        mels = lat.subs[M].elems;
        tpos.assign(G->n, -1);
        mpos.assign(G->n, -1);
        for (size_t i = 0; i < tels.size(); ++i) tpos[tels[i]] = int(i);
        for (size_t i = 0; i < mels.size(); ++i) mpos[mels[i]] = int(i);
        class_of_pair.assign(tels.size() * mels.size(), -1);
        const auto& vels = lat.subs[psi.src].elems;
        for (size_t ti = 0; ti < tels.size(); ++ti)
            for (size_t mi = 0; mi < mels.size(); ++mi) {
                if (class_of_pair[ti * mels.size() + mi] >= 0) continue;
                int cls = int(rep.size());
                std::pair<elt, elt> least{elt(0xffff), elt(0xffff)};
                // orbit of (t, m) under (t ψ(v), v^-1 m)
                for (elt v : vels) {
                    elt t2 = G->times(tels[ti], fs.apply(psi, v));
                    elt m2 = G->times(G->inv[v], mels[mi]);
                    class_of_pair[size_t(tpos[t2]) * mels.size() + mpos[m2]] = cls;
                    least = std::min(least, {t2, m2});
                }
                rep.push_back(least);
            }
    }

    int nclasses() const { return int(rep.size()); }
    int cls(elt t, elt m) const { return class_of_pair[size_t(tpos[t]) * mels.size() + mpos[m]]; }
    int left_mul(elt t2, int c) const { return cls(G->times(t2, rep[c].first), rep[c].second); }
    int right_mul(int c, elt m2) const { return cls(rep[c].first, G->times(rep[c].second, m2)); }
};

}  // namespace

BisetCombo oracle_compose(const FusionSystem& F, const Biset& g, const Biset& f) {
    if (f.to != g.from) throw input_error("oracle_compose: middle object mismatch");
    const Group& G = F.group();
    const auto& lat = F.lattice();
    const int R = g.to, Q = f.to, P = f.from;

    AmalgFactor A;  // [R ×_ψ Q]
    A.build(F, R, Q, g.phi);
    AmalgFactor B;  // [Q ×_φ P]
    B.build(F, Q, P, f.phi);

    // A is free as a right Q-set: orbit reps + offsets give A x_Q B = (A/Q) x B
    std::vector<int> orbit_of(A.nclasses(), -1);
    std::vector<elt> offset(A.nclasses(), 0);
    std::vector<int> orbit_rep;
    const auto& qels = lat.subs[Q].elems;
    for (int c = 0; c < A.nclasses(); ++c) {
        if (orbit_of[c] >= 0) continue;
        int oi = int(orbit_rep.size());
        orbit_rep.push_back(c);
        for (elt q : qels) {
            int c2 = A.right_mul(c, q);
            if (orbit_of[c2] < 0) {
                orbit_of[c2] = oi;
                offset[c2] = q;
            }
        }
    }
    const int nB = B.nclasses();
    const int nE = int(orbit_rep.size()) * nB;
    auto eindex = [&](int oi, int bc) { return oi * nB + bc; };
    // actions on E
    auto left_r = [&](elt r, int e) {
        int oi = e / nB, bc = e % nB;
        int c = A.left_mul(r, orbit_rep[oi]);
        int oj = orbit_of[c];
        elt q = offset[c];
        // left Q-action on B classes: q * (qb, pb) = (q*qb, pb)
        int bc2 = B.cls(G.times(q, B.rep[bc].first), B.rep[bc].second);
        return eindex(oj, bc2);
    };
    auto right_p = [&](elt p, int e) {
        int oi = e / nB, bc = e % nB;
        return eindex(oi, B.right_mul(bc, p));
    };

    // transitive components under left R x right P
    const auto& rgens = lat.subs[R].gens.empty() ? lat.subs[R].elems : lat.subs[R].gens;
    const auto& pgens = lat.subs[P].gens.empty() ? lat.subs[P].elems : lat.subs[P].gens;
    std::vector<int> comp(nE, -1);
    int ncomp = 0;
    BisetCombo combo;
    for (int e0 = 0; e0 < nE; ++e0) {
        if (comp[e0] >= 0) continue;
        int ci = ncomp++;
        std::vector<int> queue{e0};
        comp[e0] = ci;
        for (size_t h = 0; h < queue.size(); ++h) {
            for (elt r : rgens) {
                int e2 = left_r(r, queue[h]);
                if (comp[e2] < 0) {
                    comp[e2] = ci;
                    queue.push_back(e2);
                }
            }
            for (elt p : pgens) {
                int e2 = right_p(p, queue[h]);
                if (comp[e2] < 0) {
                    comp[e2] = ci;
                    queue.push_back(e2);
                }
            }
        }
        // point stabilizer of the least element: must be the graph of some χ: U' -> R
        int z = e0;
        std::map<elt, elt> graph;  // p -> r
        for (elt p : lat.subs[P].elems) {
            elt pinv = G.inv[p];
            for (elt r : lat.subs[R].elems) {
                if (left_r(r, right_p(pinv, z)) == z) {
                    if (r == G.id && p != G.id)
                        throw std::logic_error("oracle_compose: right action not free");
                    if (p == G.id && r != G.id)
                        throw std::logic_error("oracle_compose: component not left-free");
                    if (graph.count(p))
                        throw std::logic_error("oracle_compose: stabilizer not a graph");
                    graph[p] = r;
                }
            }
        }
        std::vector<elt> dom;
        for (auto& [p, r] : graph) dom.push_back(p);
        Biset term;
        term.from = P;
        term.to = R;
        term.dom = F.object_of_elems(dom);
        term.phi.src = term.dom;
        for (elt d : lat.subs[term.dom].elems) term.phi.img.push_back(graph.at(d));
        std::vector<elt> sorted = term.phi.img;
        std::sort(sorted.begin(), sorted.end());
        term.phi.img_obj = F.object_of_elems(sorted);
        size_t expect = size_t(lat.subs[R].order()) * lat.subs[P].order() / dom.size();
        if (queue.size() != expect)
            throw std::logic_error("oracle_compose: component size mismatch");
        push_term(combo, canonical_biset(F, term), 1);
    }
    sort_combo(combo);
    return combo;
}

BarredModule bar_quotient(const OrbitCategory& cat, int a_from, int b_to) {
    BarredModule bm;
    bm.a = a_from;
    bm.b = b_to;
    bm.dim = cat.nclasses(a_from, b_to);
    const uint32_t p = cat.fusion().p();
    for (int j = 0; j < cat.nclasses(a_from, a_from); ++j) bm.out_classes.push_back(j);
    for (int j : bm.out_classes) {
        FpMatrix m(bm.dim, bm.dim, p);
        for (int i = 0; i < bm.dim; ++i) {
            int k = cat.compose_classes(a_from, a_from, b_to, j, i);  // [α_i ∘ ξ_j]
            m.at(k, i) = 1;
        }
        bm.out_action.push_back(std::move(m));
    }
    return bm;
}

}  // namespace fuslim
