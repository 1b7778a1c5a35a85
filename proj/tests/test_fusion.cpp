#include <set>

#include "common_groups.hpp"
#include "doctest.h"
#include "fuslim/fusion.hpp"

using namespace fuslim;
using namespace testutil;

static int whole_object(const FusionSystem& F) { return F.nobjects() - 1; }

static int object_by_elems(const FusionSystem& F, std::vector<elt> elems) {
    std::sort(elems.begin(), elems.end());
    return F.object_of_elems(elems);
}

TEST_CASE("inner fusion on C_2: three nonempty hom-sets") {
    auto F = FusionSystem::inner(c2());
    REQUIRE(F.nobjects() == 2);
    int nonempty = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (!F.hom(a, b).empty()) ++nonempty;
    CHECK(nonempty == 3);
    CHECK(F.hom(1, 0).empty());
}

TEST_CASE("inner fusion on D_8") {
    auto F = FusionSystem::inner(d8());
    const Group& S = F.group();
    // Hom(Z(S), S) has a single morphism (central subgroup: only the inclusion)
    int z = object_by_elems(F, center(S));
    CHECK(F.hom(z, whole_object(F)).size() == 1);

    // hom-sets closed under pre/post composition with inner maps
    for (int a = 0; a < F.nobjects(); ++a)
        for (const Morphism& m : F.isos_from(a)) {
            for (elt g : F.lattice().subs[m.img_obj].elems) {
                Morphism post = F.compose(F.conj_morphism(g, m.img_obj), m);
                bool found = false;
                for (const Morphism& mm : F.isos_from(a))
                    if (mm == post) found = true;
                CHECK(found);
            }
            // restriction-closure
            for (int sub : F.lattice().subgroups_of(a)) {
                Morphism r = F.restrict(m, sub);
                bool found = false;
                for (const Morphism& mm : F.isos_from(sub))
                    if (mm == r) found = true;
                CHECK(found);
            }
        }
}

TEST_CASE("inner fusion on 3^{1+2}_+: maximals pairwise non-isomorphic") {
    auto F = FusionSystem::inner(x27());
    std::vector<int> maximals;
    for (int i = 0; i < F.nobjects(); ++i)
        if (F.lattice().subs[i].order() == 9) maximals.push_back(i);
    REQUIRE(maximals.size() == 4);
    for (int i : maximals)
        for (int j : maximals)
            if (i != j) {
                bool iso = false;
                for (const Morphism& m : F.isos_from(i))
                    if (m.img_obj == j) iso = true;
                CHECK(!iso);
            }
}

TEST_CASE("ambient fusion: G = S equals inner") {
    auto S = d8();
    auto Fi = FusionSystem::inner(S);
    std::vector<elt> all(S->n);
    for (int i = 0; i < S->n; ++i) all[i] = elt(i);
    auto Fa = FusionSystem::ambient(S, make_subgroup(*S, all));
    REQUIRE(Fi.nobjects() == Fa.nobjects());
    for (int a = 0; a < Fi.nobjects(); ++a) CHECK(Fi.isos_from(a) == Fa.isos_from(a));
}

TEST_CASE("ambient fusion F_{D_8}(S_4)") {
    auto G = s4();
    Subgroup S = sylow_subgroup(*G, 2);
    REQUIRE(S.order() == 8);
    auto F = FusionSystem::ambient(G, S);
    // The normal Klein subgroup acquires the full Aut-group S_3 in F; the
    // non-normal one keeps automizer C_2 (conjugation preserves cycle type).
    // Frozen from the brute-force oracle over all 24 conjugators.
    int v4_count = 0;
    for (int i = 0; i < F.nobjects(); ++i) {
        const Subgroup& H = F.lattice().subs[i];
        if (H.order() != 4) continue;
        bool klein = true;
        for (elt x : H.elems)
            if (G->elt_order[x] == 4) klein = false;
        if (!klein) continue;
        ++v4_count;
        bool normal_in_g = int(normalizer(*G, H).size()) == G->n;
        CHECK(F.hom(i, i).size() == (normal_in_g ? 6 : 2));
    }
    CHECK(v4_count == 2);

    // S not Sylow is rejected
    auto bad = make_subgroup(*G, {elt(0)});
    CHECK_THROWS_AS(FusionSystem::ambient(G, bad), input_error);
}

TEST_CASE("generated fusion: no extra maps equals inner") {
    auto S = x27();
    auto Fg = FusionSystem::generated(S, {});
    auto Fi = FusionSystem::inner(S);
    REQUIRE(Fg.nobjects() == Fi.nobjects());
    for (int a = 0; a < Fg.nobjects(); ++a) CHECK(Fg.isos_from(a) == Fi.isos_from(a));
}

TEST_CASE("generated fusion on C_3 x C_3 with inversion") {
    auto S = c3c3();
    // inversion automorphism of the whole group
    std::vector<elt> gens, images;
    for (int i = 1; i < S->n; ++i)
        if (S->elt_order[i] == 3) {
            gens.push_back(elt(i));
            images.push_back(S->inv[i]);
        }
    auto F = FusionSystem::generated(S, {{gens, images}});
    int top = whole_object(F);
    CHECK(F.hom(top, top).size() == 2);
    // malformed extra maps are rejected
    CHECK_THROWS_AS(FusionSystem::generated(
                        S, {{{gens[0]}, {elt(0)}}}),
                    input_error);
}

TEST_CASE("generated fusion on 3^{1+2}_+ with an inverted maximal") {
    auto Sp = x27();
    const Group& S = *Sp;
    auto Fi = FusionSystem::inner(Sp);
    // pick a maximal E (elementary abelian of order 9) and invert it
    int emax = -1;
    for (int i = 0; i < Fi.nobjects(); ++i)
        if (Fi.lattice().subs[i].order() == 9) emax = i;
    REQUIRE(emax >= 0);
    const Subgroup& E = Fi.lattice().subs[emax];
    std::vector<elt> gens = E.gens, images;
    for (elt g : gens) images.push_back(S.inv[g]);
    auto F = FusionSystem::generated(Sp, {{gens, images}});
    int eobj = object_by_elems(F, E.elems);
    // closure: Aut_F(E) = <Aut_S(E) of order 3, inversion> = order 6
    CHECK(F.hom(eobj, eobj).size() == 6);
    // the inversion restricts to the center: Aut_F(Z) = {id, inv}
    int z = object_by_elems(F, center(S));
    CHECK(F.hom(z, z).size() == 2);
    // fixed point reached: closure is closed under composition and inverse
    for (const Morphism& m : F.isos_from(eobj)) {
        Morphism inv = F.inverse(m);
        bool found = false;
        for (const Morphism& mm : F.isos_from(m.img_obj))
            if (mm == inv) found = true;
        CHECK(found);
    }
}

TEST_CASE("centricity") {
    auto F = FusionSystem::inner(d8());
    const Group& S = F.group();
    CHECK(F.is_centric(whole_object(F)));
    int z = object_by_elems(F, center(S));
    CHECK(!F.is_centric(z));
    // centric classes of F_{D_8}(D_8): C_4, two V_4 classes, D_8
    std::set<int> centric_classes;
    for (int obj : F.centric_objects()) centric_classes.insert(F.f_class_rep(obj));
    CHECK(centric_classes.size() == 4);
    // centric collection closed under overgroups
    for (int obj : F.centric_objects())
        for (int other = 0; other < F.nobjects(); ++other)
            if (F.lattice().leq(obj, other)) CHECK(F.is_centric(other));
}

TEST_CASE("orbit category of F_{C_3}(C_3)") {
    auto F = FusionSystem::inner(c3());
    OrbitCategory cat(F, false);
    CHECK(cat.nobj() == 2);
    CHECK(cat.nclasses(0, 0) == 1);
    CHECK(cat.nclasses(0, 1) == 1);
    CHECK(cat.nclasses(1, 0) == 0);
    CHECK(cat.nclasses(1, 1) == 1);
    CHECK(cat.chain_bound() == 1);
}

TEST_CASE("orbit category: skeleton, class counts, composition") {
    for (auto Sp : {d8(), q8(), x27()}) {
        auto F = FusionSystem::inner(Sp);
        OrbitCategory cat(F, false);
        const uint32_t p = F.p();

        // |Hom_O(P,Q)| * |orbit sizes| partitions |Hom_F(P,Q)| (direct orbit check)
        for (int a = 0; a < cat.nobj(); ++a)
            for (int b = 0; b < cat.nobj(); ++b) {
                auto homs = F.hom(cat.object(a), cat.object(b));
                if (homs.empty()) {
                    CHECK(cat.nclasses(a, b) == 0);
                    continue;
                }
                std::set<std::vector<elt>> seen;
                int orbits = 0;
                const Subgroup& B = F.lattice().subs[cat.object(b)];
                for (const Morphism& m : homs) {
                    if (seen.count(m.img)) continue;
                    ++orbits;
                    for (elt q : B.elems) {
                        std::vector<elt> img(m.img.size());
                        for (size_t i = 0; i < m.img.size(); ++i)
                            img[i] = F.group().conj(q, m.img[i]);
                        seen.insert(img);
                    }
                }
                CHECK(cat.nclasses(a, b) == orbits);
            }

        // composition well defined on classes: any member composed with any
        // member lands in the composite class
        for (int a = 0; a < cat.nobj(); ++a)
            for (int b = 0; b < cat.nobj(); ++b)
                for (int c = 0; c < cat.nobj(); ++c)
                    for (int i = 0; i < cat.nclasses(a, b); ++i)
                        for (int j = 0; j < cat.nclasses(b, c); ++j) {
                            int k = cat.compose_classes(a, b, c, i, j);
                            const Subgroup& B = F.lattice().subs[cat.object(b)];
                            const Morphism& f = cat.class_rep(a, b, i);
                            const Morphism& g = cat.class_rep(b, c, j);
                            for (elt q : B.elems) {
                                Morphism fq = F.compose(F.conj_morphism(q, f.img_obj), f);
                                Morphism gf = F.compose(g, fq);
                                CHECK(cat.class_index(a, c, gf) == k);
                            }
                        }

        // associativity on all representative triples
        for (int a = 0; a < cat.nobj(); ++a)
            for (int b = 0; b < cat.nobj(); ++b)
                for (int c = 0; c < cat.nobj(); ++c)
                    for (int d = 0; d < cat.nobj(); ++d)
                        for (int i = 0; i < cat.nclasses(a, b); ++i)
                            for (int j = 0; j < cat.nclasses(b, c); ++j)
                                for (int k = 0; k < cat.nclasses(c, d); ++k) {
                                    int ij = cat.compose_classes(a, b, c, i, j);
                                    int jk = cat.compose_classes(b, c, d, j, k);
                                    CHECK(cat.compose_classes(a, c, d, ij, k) ==
                                          cat.compose_classes(a, b, d, i, jk));
                                }

        // |Hom_{O(F^c)}(P,S)| prime to p for every centric P
        OrbitCategory cc(F, true);
        int top = -1;
        for (int a = 0; a < cc.nobj(); ++a)
            if (cc.object(a) == F.nobjects() - 1) top = a;
        REQUIRE(top >= 0);
        for (int a = 0; a < cc.nobj(); ++a) CHECK(cc.nclasses(a, top) % p != 0);
    }
}

TEST_CASE("orbit category with centric filter on D_8") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cat(F, true);
    CHECK(cat.nobj() == 4);
    CHECK(cat.chain_bound() == 1);
}

TEST_CASE("chain bounds") {
    auto F27 = FusionSystem::inner(x27());
    OrbitCategory c27(F27, true);
    CHECK(c27.chain_bound() == 1);

    // abelian S: only S itself is centric, bound 0
    auto Fc4 = FusionSystem::inner(c4());
    OrbitCategory cc4(Fc4, true);
    CHECK(cc4.nobj() == 1);
    CHECK(cc4.chain_bound() == 0);
}

TEST_CASE("truncated double cosets") {
    auto F = FusionSystem::inner(d8());
    int top = whole_object(F);
    // X = all equals plain double cosets
    for (int q = 0; q < F.nobjects(); ++q)
        for (int r = 0; r < F.nobjects(); ++r) {
            auto plain = double_cosets(F.group(), F.lattice().subs[q], F.lattice().subs[r],
                                       F.lattice().subs[top]);
            CHECK(F.truncated_double_cosets(q, top, r, false) == plain);
        }
    // Q = R = V_4, P = D_8: both double cosets have centric intersection V_4
    int v4 = -1;
    for (int i = 0; i < F.nobjects(); ++i) {
        const Subgroup& H = F.lattice().subs[i];
        if (H.order() != 4) continue;
        bool klein = true;
        for (elt x : H.elems)
            if (F.group().elt_order[x] == 4) klein = false;
        if (klein) v4 = i;
    }
    REQUIRE(v4 >= 0);
    auto all = F.truncated_double_cosets(v4, top, v4, false);
    auto kept = F.truncated_double_cosets(v4, top, v4, true);
    CHECK(all.size() == 2);
    CHECK(kept == all);  // V_4 normal: both intersections equal V_4, centric
    // Q = R = Z(D_8): intersections are Z, not centric -> all cosets dropped
    int z = object_by_elems(F, center(F.group()));
    CHECK(F.truncated_double_cosets(z, top, z, true).empty());
}

TEST_CASE("saturation check") {
    auto Fd8 = FusionSystem::inner(d8());
    CHECK(saturation_check(Fd8).ok());

    auto G = s4();
    auto Fs4 = FusionSystem::ambient(G, sylow_subgroup(*G, 2));
    CHECK(saturation_check(Fs4).ok());

    // deliberate failure: inversion on a single line of C_3 x C_3 cannot extend
    auto S = c3c3();
    int line_gen = -1;
    for (int i = 1; i < S->n; ++i)
        if (S->elt_order[i] == 3) {
            line_gen = i;
            break;
        }
    REQUIRE(line_gen > 0);
    auto F = FusionSystem::generated(
        S, {{{elt(line_gen)}, {S->inv[line_gen]}}});
    auto rep = saturation_check(F);
    CHECK(!rep.ok());
    CHECK(!rep.extension_ok);
}
