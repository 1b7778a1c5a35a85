#include <set>

#include "common_groups.hpp"
#include "doctest.h"
#include "fuslim/constructions.hpp"
#include "fuslim/mackey.hpp"

using namespace fuslim;
using namespace testutil;

TEST_CASE("B(3,r) builders: orders, centers, structure") {
    // (4,0): |B| = 81, M = (1 -3; 1 1), Z(B) = <s1^3>
    auto B40 = build_b3r(4, 0);
    CHECK(B40.G->n == 81);
    CHECK(B40.m12 == -3);
    CHECK(B40.m22 == 1);
    CHECK(B40.z_generator == B40.G->power(B40.s1, 3));
    CHECK(check_b3r(B40).ok());

    // (4,2): M = (1 3; 1 1)
    auto B42 = build_b3r(4, 2);
    CHECK(B42.m12 == 3);
    CHECK(check_b3r(B42).ok());

    // (5,0): γ1 = Z_9 x Z_9, Z(B) = <s2^3>
    auto B50 = build_b3r(5, 0);
    CHECK(B50.G->n == 243);
    CHECK(int(B50.gamma1.size()) == 81);
    CHECK(B50.G->elt_order[B50.s1] == 9);
    CHECK(B50.G->elt_order[B50.s2] == 9);
    CHECK(B50.z_generator == B50.G->power(B50.s2, 3));
    CHECK(check_b3r(B50).ok());

    auto B51 = build_b3r(5, 1);
    CHECK(check_b3r(B51).ok());

    // illegal parameters
    CHECK_THROWS_AS(build_b3r(4, 1), input_error);
    CHECK_THROWS_AS(build_b3r(5, 2), input_error);
    CHECK_THROWS_AS(build_b3r(3, 0), input_error);
}

TEST_CASE("B(3,4;0,0,0): centralizer of gamma_1 is gamma_1") {
    auto B = build_b3r(4, 0);
    auto c = centralizer(*B.G, {B.s1, B.s2});
    CHECK(c == B.gamma1);
}

TEST_CASE("extraspecial 3^{1+2}_+") {
    auto E = build_extraspecial(3);
    CHECK(E->n == 27);
    for (int i = 0; i < E->n; ++i) CHECK(E->elt_order[i] <= 3);
    CHECK(center(*E).size() == 3);
    auto lat = enumerate_subgroups(*E);
    int maximals = 0;
    for (auto& s : lat.subs)
        if (s.order() == 9) ++maximals;
    CHECK(maximals == 4);
    // noncentric subgroups are exactly the cyclic (order <= 3) proper ones;
    // every centric proper subgroup is elementary abelian of order 9
    auto F = FusionSystem::inner(E);
    for (int i = 0; i < F.nobjects(); ++i) {
        const Subgroup& H = F.lattice().subs[i];
        if (H.order() == 27) {
            CHECK(F.is_centric(i));
            continue;
        }
        CHECK(F.is_centric(i) == (H.order() == 9));
    }
    CHECK_THROWS_AS(build_extraspecial(2), input_error);
}

TEST_CASE("2-group builders") {
    auto D8 = build_2group(TwoGroupKind::Dihedral, 8);
    CHECK(D8->n == 8);
    CHECK(enumerate_subgroups(*D8).size() == 10);

    auto Q8 = build_2group(TwoGroupKind::Quaternion, 8);
    int involutions = 0;
    for (int i = 0; i < Q8->n; ++i)
        if (Q8->elt_order[i] == 2) ++involutions;
    CHECK(involutions == 1);

    auto SD16 = build_2group(TwoGroupKind::Semidihedral, 16);
    CHECK(SD16->n == 16);
    // SD_16 has elements of order 8, and its noncentric subgroups are the
    // cyclic ones except the maximal cyclic C_8
    bool has8 = false;
    for (int i = 0; i < SD16->n; ++i)
        if (SD16->elt_order[i] == 8) has8 = true;
    CHECK(has8);
    auto F = FusionSystem::inner(SD16);
    for (int i = 0; i < F.nobjects(); ++i) {
        const Subgroup& H = F.lattice().subs[i];
        bool cyclic = false;
        for (elt x : H.elems)
            if (H.order() > 1 && SD16->elt_order[x] == H.order()) cyclic = true;
        if (H.order() == 1) cyclic = true;
        bool maximal_cyclic = cyclic && H.order() == 8;
        if (!F.is_centric(i)) CHECK((cyclic && !maximal_cyclic));
    }
    CHECK_THROWS_AS(build_2group(TwoGroupKind::Semidihedral, 8), input_error);
    CHECK_THROWS_AS(build_2group(TwoGroupKind::Dihedral, 6), input_error);
}

TEST_CASE("Example 4.3 for p = 2") {
    auto ex = build_example43(2);
    CHECK(ex.S->n == 32);
    CHECK(ex.Q.size() == 16);
    CHECK(ex.P.size() == 16);
    CHECK(ex.U.size() == 8);
    // the superdiagonal convention reproduces c_1 = p - 1 = 1
    CHECK(ex.convention == "superdiagonal");
    CHECK(ex.c_super[0] == 1);
    // convention-independent facts: c_1 != 0 mod p, c_2..c_p = 0 mod p
    CHECK(ex.c_super[0] % 2 != 0);
    for (size_t i = 1; i < ex.c_super.size(); ++i) CHECK(ex.c_super[i] % 2 == 0);

    auto F = FusionSystem::inner(ex.S);
    int q = F.object_of_elems(ex.Q);
    int pp = F.object_of_elems(ex.P);
    int u = F.object_of_elems(ex.U);
    // PQ = S, P ∩ Q = U
    CHECK(F.lattice().intersection(q, pp) == u);
    std::set<elt> prod;
    for (elt a : ex.P)
        for (elt b : ex.Q) prod.insert(ex.S->times(a, b));
    CHECK(int(prod.size()) == ex.S->n);
    // centricity pattern of the example
    CHECK(F.is_centric(q));
    CHECK(F.is_centric(pp));
    CHECK(!F.is_centric(u));
    // B_p acting by conjugation preserves U, and Q is normal in S
    CHECK(int(normalizer(*ex.S, F.lattice().subs[q]).size()) == ex.S->n);
    CHECK(int(normalizer(*ex.S, F.lattice().subs[u]).size()) == ex.S->n);
}

TEST_CASE("Example 4.3 for p = 3 (witness data only)") {
    auto ex = build_example43(3);
    CHECK(ex.S->n == 729);
    CHECK(ex.Q.size() == 243);
    CHECK(ex.P.size() == 243);
    CHECK(ex.U.size() == 81);
    // integrally c_1 = 1 in both orientations, so no convention gives p-1 = 2;
    // the mod-p facts still hold
    CHECK(ex.c_super[0] % 3 != 0);
    for (size_t i = 1; i < ex.c_super.size(); ++i) CHECK(ex.c_super[i] % 3 == 0);
}

TEST_CASE("Example 4.3: the Mackey violation for p = 2") {
    auto ex = build_example43(2);
    auto F = FusionSystem::inner(ex.S);
    OrbitCategory full(F, false);
    auto M = h1_functor(full);
    REQUIRE(verify_axioms(M).ok());
    int q = F.object_of_elems(ex.Q);
    int pp = F.object_of_elems(ex.P);
    int top = F.nobjects() - 1;
    // r^S_P ∘ t^S_Q : H^1(Q) -> H^1(S) -> H^1(P) is nonzero
    FpMatrix rt = fp_mul(M.r(top, pp), M.t(top, q));
    CHECK(!rt.is_zero());
    // the restriction to centrics fails the Mackey decomposition at (S; P, Q)
    OrbitCategory cent(F, true);
    auto Mc = restrict_to_centrics(M, cent);
    VerifyOptions opt;
    opt.max_failures = 10000;
    auto rep = verify_axioms(Mc, opt);
    CHECK(!rep.ok());
    bool witness = false;
    for (auto& fail : rep.failures)
        if (fail.axiom == "Mackey decomposition" && fail.P == top &&
            ((fail.Q == pp && fail.R == q) || (fail.Q == q && fail.R == pp)))
            witness = true;
    CHECK(witness);
    // the truncated double cosets exclude the lone P\S/Q representative
    CHECK(F.truncated_double_cosets(pp, top, q, true).empty());
    CHECK(F.truncated_double_cosets(pp, top, q, false).size() == 1);
    // criterion 4.5 detects the failure too
    auto c45 = check_criterion_45(M);
    CHECK(!c45.ok);
}
