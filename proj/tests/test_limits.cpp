#include "common_groups.hpp"
#include "doctest.h"
#include "fuslim/limits.hpp"
#include "fuslim/mackeyfication.hpp"
#include "fuslim/simple.hpp"

using namespace fuslim;
using namespace testutil;

TEST_CASE("one object, no non-identity morphisms") {
    auto F = FusionSystem::inner(c4());
    OrbitCategory cent(F, true);
    REQUIRE(cent.nobj() == 1);
    REQUIRE(cent.nclasses(0, 0) == 1);
    auto N = contravariant_part(h1_functor(cent));
    auto cx = build_complex(N, 3);
    auto rep = cohomology(cent, cx);
    CHECK(rep.dims[0] == N.dims[0]);
    for (int i = 1; i <= 3; ++i) CHECK(rep.dims[i] == 0);
    CHECK(rep.dims[0] == inverse_limit_dim(N));
}

TEST_CASE("two objects with a single arrow: lim^0 is the graph") {
    // O(F) for F = F_{C_3}(C_3): objects 1 and C_3, one non-identity class
    auto F = FusionSystem::inner(c3());
    OrbitCategory cat(F, false);
    auto M = h0_functor(cat);
    auto N = contravariant_part(M);
    auto cx = build_complex(N, 3);
    auto rep = cohomology(cat, cx);
    // compatible pairs (v_1, v_{C_3}) with v_1 = N(ι)(v_{C_3}): dim 1
    CHECK(rep.dims[0] == 1);
    CHECK(rep.dims[0] == inverse_limit_dim(N));
    for (int i = 1; i <= 3; ++i) CHECK(rep.dims[i] == 0);
}

TEST_CASE("zero functor has zero cohomology") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cent(F, true);
    ContravariantFunctorData Z;
    Z.cat = &cent;
    Z.p = 2;
    Z.dims.assign(cent.nobj(), 0);
    allocate_functor_slots(cent, Z.contra);
    for (int a = 0; a < cent.nobj(); ++a)
        for (int b = 0; b < cent.nobj(); ++b)
            for (int c = 0; c < cent.nclasses(a, b); ++c) Z.contra[a][b][c] = FpMatrix(0, 0, 2);
    auto rep = cohomology(cent, build_complex(Z, 4));
    for (long d : rep.dims) CHECK(d == 0);
}

TEST_CASE("acyclicity of Mackey functors over the centric orbit category") {
    for (auto Sp : {d8(), q8(), x27()}) {
        auto F = FusionSystem::inner(Sp);
        OrbitCategory cent(F, true);
        int n = cent.chain_bound();
        for (const MackeyFunctorData& M :
             {h0_functor(cent), representable_functor(cent, F.nobjects() - 1)}) {
            REQUIRE(verify_axioms(M).ok());
            auto rep = sharpness_report(contravariant_part(M), n + 3);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("sharpness of h1 for the nilpotent fusion system on 3^{1+2}_+") {
    auto F = FusionSystem::inner(x27());
    OrbitCategory cent(F, true);
    auto M = h1_functor(cent);
    auto rep = sharpness_report(contravariant_part(M));
    CHECK(rep.n == 1);
    CHECK(rep.pass);
}

TEST_CASE("h0 sharpness everywhere") {
    for (auto Sp : {d8(), q8(), x27(), c4()}) {
        auto F = FusionSystem::inner(Sp);
        OrbitCategory cent(F, true);
        auto rep = sharpness_report(contravariant_part(h0_functor(cent)));
        CHECK(rep.pass);
        CHECK(rep.dims[0] == 1);
    }
}

TEST_CASE("lim^0 equals the direct equalizer on random functors") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cent(F, true);
    for (uint64_t seed = 10; seed < 20; ++seed) {
        auto N = random_contravariant(cent, seed);
        auto cx = build_complex(N, cent.chain_bound() + 3);
        auto rep = cohomology(cent, cx);
        CHECK(rep.dims[0] == inverse_limit_dim(N));
    }
}

TEST_CASE("theorem-B bound and Euler characteristic bookkeeping") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cent(F, true);
    int n = cent.chain_bound();
    REQUIRE(n == 1);
    for (uint64_t seed = 30; seed < 45; ++seed) {
        auto N = random_contravariant(cent, seed);
        int D = n + 3;
        auto cx = build_complex(N, D);
        auto rep = cohomology(cent, cx);
        // vanishing at and beyond n+2
        for (int i = n + 2; i <= D; ++i) CHECK(rep.dims[i] == 0);
        // alternating-sum identity: Σ(-1)^i (c_i - h_i) = (-1)^D rank d^D
        long lhs = 0;
        for (int i = 0; i <= D; ++i) {
            long term = cx.dims[i] - rep.dims[i];
            lhs += (i % 2 == 0 ? term : -term);
        }
        long rhs = (D % 2 == 0 ? 1 : -1) * rep.ranks[D];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mackeyfication shift: lim^{i+1} N = lim^i C(N)") {
    auto F = FusionSystem::inner(d8());
    OrbitCategory cent(F, true);
    for (uint64_t seed = 50; seed < 56; ++seed) {
        auto N = random_contravariant(cent, seed);
        auto C = mackeyfy(N).C;
        auto repN = cohomology(cent, build_complex(N, 4));
        auto repC = cohomology(cent, build_complex(C, 4));
        for (int i = 1; i + 1 <= 4; ++i) CHECK(repN.dims[i + 1] == repC.dims[i]);
    }
}
