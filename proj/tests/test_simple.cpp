#include <set>

#include "common_groups.hpp"
#include "doctest.h"
#include "fuslim/simple.hpp"

using namespace fuslim;
using namespace testutil;

TEST_CASE("spin on the h0 category module of F_{C_3}(C_3)") {
    auto F = FusionSystem::inner(c3());
    OrbitCategory cat(F, false);
    auto M = h0_functor(cat);
    auto mod = as_category_module(M);
    REQUIRE(mod.total == 2);
    // seed = the C_3-block component: restriction pulls it down to the full module
    std::vector<uint32_t> e_top(2, 0);
    e_top[mod.offset[1]] = 1;
    CHECK(spin(mod.dense, {e_top}).dim() == 2);
    // seed = trivial-block component: invariant line
    std::vector<uint32_t> e_bot(2, 0);
    e_bot[mod.offset[0]] = 1;
    CHECK(spin(mod.dense, {e_bot}).dim() == 1);
    // brute-force oracle: the only invariant subspaces are 0, span(e_bot), full
    for (uint32_t a = 0; a < 3; ++a)
        for (uint32_t b = 0; b < 3; ++b) {
            if (a == 0 && b == 0) continue;
            std::vector<uint32_t> v{a, b};
            auto w = spin(mod.dense, {v});
            bool is_line = (v[mod.offset[1]] == 0);
            CHECK(w.dim() == (is_line ? 1 : 2));
        }
    // trivial seeds
    CHECK(spin(mod.dense, {}).dim() == 0);
    CHECK(spin(mod.dense, {e_top, e_bot}).dim() == 2);
}

TEST_CASE("is_simple basics") {
    // one-dimensional nonzero module
    ActionModule one{3, 1, {}};
    CHECK(is_simple(one).verdict == Simplicity::Simple);
    // direct sum of two trivial lines is not simple
    ActionModule two{3, 2, {}};
    auto r = is_simple(two);
    CHECK(r.verdict == Simplicity::NotSimple);
    CHECK(r.witness.dim() == 1);
    // the natural 2-dim module of GL_2(F_3) is simple (spin from all 8 vectors)
    FpMatrix g1(2, 2, 3), g2(2, 2, 3);
    g1.at(0, 0) = 1;
    g1.at(0, 1) = 1;
    g1.at(1, 1) = 1;
    g2.at(0, 1) = 2;
    g2.at(1, 0) = 1;
    ActionModule nat{3, 2, {g1, g2}};
    CHECK(is_simple(nat).verdict == Simplicity::Simple);
}

TEST_CASE("composition series of h0 over F_{C_p}(C_p)") {
    for (auto Sp : {c2(), c3()}) {
        auto F = FusionSystem::inner(Sp);
        OrbitCategory cat(F, false);
        auto M = h0_functor(cat);
        auto mod = as_category_module(M);
        auto series = composition_series(mod.dense);
        REQUIRE(series.conclusive);
        CHECK(series.length() == 2);
        // factors are S_{1,k} (supported at the trivial group) and S_{C_p,k}
        std::set<int> minimal_objects;
        for (int i = 0; i + 1 < int(series.chain.size()); ++i) {
            auto fv = factor_view(mod.dense, series.chain[i], series.chain[i + 1]);
            auto id = identify_factor(M, mod, fv);
            CHECK(id.v.dim == 1);
            minimal_objects.insert(id.a);
        }
        CHECK(minimal_objects == std::set<int>{0, 1});
    }
}

TEST_CASE("simple module enumeration for small out-groups") {
    // F_{D_8}(S_4): Out_F(V_4) = S_3, so F_2[S_3] has exactly the trivial and
    // the natural 2-dimensional simple modules
    auto G = s4();
    auto F = FusionSystem::ambient(G, sylow_subgroup(*G, 2));
    OrbitCategory cat(F, false);
    int v4 = -1;
    for (int i = 0; i < F.nobjects(); ++i) {
        const Subgroup& H = F.lattice().subs[i];
        if (H.order() == 4 && int(normalizer(*G, H).size()) == G->n && cat.rep_pos(i) >= 0 &&
            cat.object(cat.rep_pos(i)) == i)
            v4 = i;
    }
    REQUIRE(v4 >= 0);
    int a = cat.rep_pos(v4);
    REQUIRE(cat.nclasses(a, a) == 6);
    auto simples = enumerate_simple_modules(cat, a);
    REQUIRE(simples.size() == 2);
    std::multiset<int> dims;
    for (auto& v : simples) dims.insert(v.dim);
    CHECK(dims == std::multiset<int>{1, 2});
    for (auto& v : simples) CHECK(out_module_simple(cat, v).verdict == Simplicity::Simple);

    // p-group out-groups only have the trivial simple module
    auto Fx = FusionSystem::inner(x27());
    OrbitCategory cx(Fx, false);
    for (int aa = 0; aa < cx.nobj(); ++aa) {
        auto s = enumerate_simple_modules(cx, aa);
        REQUIRE(s.size() == 1);
        CHECK(s[0].dim == 1);
    }
}

TEST_CASE("relative trace") {
    // N = L: single coset, trace is the identity, full image
    FpMatrix id2 = FpMatrix::identity(2, 3);
    CHECK(relative_trace({id2}).dim() == 2);
    // L normal of index p acting trivially: p * id = 0 in char p
    CHECK(relative_trace({id2, id2, id2}).dim() == 0);
    // I + A + A^2 for A = [[1,0],[1,1]] over F_3 is the zero matrix
    FpMatrix A(2, 2, 3);
    A.at(0, 0) = 1;
    A.at(1, 0) = 1;
    A.at(1, 1) = 1;
    CHECK(relative_trace({id2, A, fp_mul(A, A)}).dim() == 0);
}

TEST_CASE("S_{Q,V}: quotient and formula constructions agree everywhere") {
    for (auto [name, Fv] :
         {std::pair<const char*, FusionSystem>{"d8", FusionSystem::inner(d8())},
          {"x27", FusionSystem::inner(x27())},
          {"s4", FusionSystem::ambient(s4(), sylow_subgroup(*s4(), 2))}}) {
        const FusionSystem& F = Fv;
        OrbitCategory cat(F, false);
        for (int a = 0; a < cat.nobj(); ++a) {
            for (const OutModule& V : enumerate_simple_modules(cat, a)) {
                auto Sq = build_S_quotient(cat, V);
                auto Sf = build_S_formula(cat, V);
                REQUIRE(Sq.dims == Sf.dims);
                // evaluation at Q is V, and zero strictly below Q
                CHECK(Sq.dims[a] == V.dim);
                for (int b = 0; b < cat.nobj(); ++b) {
                    int ob = cat.object(b);
                    int oa = cat.object(a);
                    if (F.lattice().subs[ob].order() < F.lattice().subs[oa].order())
                        CHECK(Sq.dims[b] == 0);
                }
                // both are Mackey functors
                CHECK(verify_axioms(Sq).ok());
                CHECK(verify_axioms(Sf).ok());
                // an invertible intertwiner exists
                auto T = find_intertwiner(Sq, Sf);
                CHECK(T.has_value());
            }
        }
    }
}

TEST_CASE("Cor 3.5 style vanishing on D_8") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cat(F, false);
    // S_{V_4, k}: nonzero exactly on the F-class of V_4
    int v4 = -1;
    for (int a = 0; a < cat.nobj(); ++a) {
        const Subgroup& H = F.lattice().subs[cat.object(a)];
        if (H.order() != 4) continue;
        bool klein = true;
        for (elt x : H.elems)
            if (F.group().elt_order[x] == 4) klein = false;
        if (klein) {
            v4 = a;
            break;
        }
    }
    REQUIRE(v4 >= 0);
    auto V = trivial_out_module(cat, v4);
    auto S = build_S_quotient(cat, V);
    auto rep = vanishing_tests(S, V);
    CHECK(rep.clause1);
    CHECK(rep.clause2_applicable);
    CHECK(rep.clause2);
    CHECK(rep.clause4);
    // the minimal-group law, seen through dims
    for (int b = 0; b < cat.nobj(); ++b)
        CHECK((S.dims[b] > 0) == (b == v4));
}

TEST_CASE("identify_factor returns the building pair") {
    auto F = FusionSystem::inner(x27());
    OrbitCategory cat(F, false);
    // build S_{E,k} for a maximal subgroup class and recover (Q, V)
    int e = -1;
    for (int a = 0; a < cat.nobj(); ++a)
        if (F.lattice().subs[cat.object(a)].order() == 9) e = a;
    REQUIRE(e >= 0);
    auto V = trivial_out_module(cat, e);
    auto S = build_S_quotient(cat, V);
    auto mod = as_category_module(S);
    auto series = composition_series(mod.dense);
    REQUIRE(series.conclusive);
    REQUIRE(series.length() == 1);  // S is simple
    auto fv = factor_view(mod.dense, series.chain[0], series.chain[1]);
    auto id = identify_factor(S, mod, fv);
    CHECK(id.a == e);
    CHECK(id.v.dim == 1);
    CHECK(out_modules_isomorphic(id.v, V));
}

TEST_CASE("module multiplicativity against the double-coset composition") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cat(F, false);
    CHECK(module_multiplicative(h0_functor(cat), 300, 11));
    CHECK(module_multiplicative(h1_functor(cat), 300, 12));
    auto Fx = FusionSystem::inner(x27());
    OrbitCategory cx(Fx, false);
    CHECK(module_multiplicative(h1_functor(cx), 120, 13));
}
