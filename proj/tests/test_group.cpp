#include <algorithm>
#include <set>

#include "doctest.h"
#include "fuslim/group.hpp"

using namespace fuslim;

// standard small groups as permutation groups
static Group c2() { return from_permutations(2, {{1, 0}}); }
static Group c6() { return from_permutations(6, {{1, 2, 3, 4, 5, 0}}); }
static Group d8() { return from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}); }
static Group q8() {
    // <i, j> acting on the 8 unit quaternions {1,-1,i,-i,j,-j,k,-k}
    return from_permutations(8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}});
}
static Group x27() {
    // Heisenberg group of order 27 = <a,b,c> with relations, via triples
    struct T {
        int a, b, c;
        auto operator<=>(const T&) const = default;
    };
    std::vector<T> els;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) els.push_back({a, b, c});
    return from_elements(els, [](const T& x, const T& y) {
        return T{(x.a + y.a) % 3, (x.b + y.b) % 3, (x.c + y.c + x.a * y.b) % 3};
    });
}

TEST_CASE("from_permutations basics") {
    Group g = c2();
    CHECK(g.n == 2);
    CHECK(g.times(1, 1) == 0);

    Group d = d8();
    CHECK(d.n == 8);
    int order4 = 0;
    for (int i = 0; i < d.n; ++i)
        if (d.elt_order[i] == 4) ++order4;
    CHECK(order4 == 2);

    CHECK_THROWS_AS(from_permutations(3, {{0, 1}}), input_error);
    CHECK_THROWS_AS(from_permutations(2, {{1, 1}}), input_error);
    CHECK_THROWS_AS(from_permutations(8, {{1, 2, 3, 4, 5, 6, 7, 0}}, 4), cap_exceeded);
}

TEST_CASE("from_cayley validates") {
    Group g = c6();
    std::vector<std::vector<int>> table(g.n, std::vector<int>(g.n));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) table[i][j] = g.times(elt(i), elt(j));
    Group h = from_cayley(table);
    CHECK(h.n == 6);
    CHECK(h.elt_order == g.elt_order);

    table[0][0] = 1;  // break Latin square
    CHECK_THROWS_AS(from_cayley(table), input_error);
}

TEST_CASE("subgroup enumeration vs brute-force closure oracle") {
    for (const Group& g : {c2(), c6(), d8(), q8()}) {
        auto lat = enumerate_subgroups(g);
        auto oracle = subgroups_bruteforce(g);
        std::set<std::vector<elt>> got;
        for (auto& s : lat.subs) got.insert(s.elems);
        CHECK(got == std::set<std::vector<elt>>(oracle.begin(), oracle.end()));
        // Lagrange
        for (auto& s : lat.subs) CHECK(g.n % s.order() == 0);
    }
}

TEST_CASE("subgroup counts") {
    CHECK(enumerate_subgroups(c2()).size() == 2);

    auto lat = enumerate_subgroups(d8());
    CHECK(lat.size() == 10);
    CHECK(lat.classes.size() == 8);

    // 3^{1+2}_+ : 1 + Z + (12 noncentral C_3 in 4 classes) + 4 maximals + S
    Group x = x27();
    auto lx = enumerate_subgroups(x);
    auto oracle = subgroups_bruteforce(x, 27);
    CHECK(lx.size() == int(oracle.size()));
    CHECK(lx.size() == 19);
    int order3 = 0, order9 = 0;
    for (auto& s : lx.subs) {
        if (s.order() == 3) ++order3;
        if (s.order() == 9) ++order9;
    }
    CHECK(order3 == 13);
    CHECK(order9 == 4);
    CHECK(lx.classes.size() == 11);
}

TEST_CASE("centralizer, normalizer, center") {
    Group d = d8();
    CHECK(center(d).size() == 2);
    auto lat = enumerate_subgroups(d);
    for (auto& s : lat.subs) {
        auto n = normalizer(d, s);
        CHECK(n.size() % s.order() == 0);
        // N(G,G) = G
        if (s.order() == d.n) CHECK(int(n.size()) == d.n);
    }
}

TEST_CASE("double cosets partition the ambient group") {
    Group d = d8();
    auto lat = enumerate_subgroups(d);
    const Subgroup& whole = lat.subs[lat.size() - 1];
    REQUIRE(whole.order() == 8);
    for (int qi = 0; qi < lat.size(); ++qi)
        for (int pi = 0; pi < lat.size(); ++pi) {
            auto reps = double_cosets(d, lat.subs[qi], lat.subs[pi], whole);
            // orbit-counting oracle: mark QxP for each rep, sizes must sum to |G|
            std::set<elt> covered;
            for (elt x : reps) {
                std::set<elt> coset;
                for (elt q : lat.subs[qi].elems)
                    for (elt p : lat.subs[pi].elems) coset.insert(d.times(d.times(q, x), p));
                for (elt y : coset) {
                    CHECK(!covered.count(y));
                    covered.insert(y);
                }
            }
            CHECK(int(covered.size()) == d.n);
        }
    // Q = P = ambient: one coset; trivial Q,P in C_6: six cosets
    CHECK(double_cosets(d, whole, whole, whole).size() == 1);
    Group c = c6();
    auto latc = enumerate_subgroups(c);
    const Subgroup& triv = latc.subs[0];
    const Subgroup& wholec = latc.subs[latc.size() - 1];
    REQUIRE(triv.order() == 1);
    CHECK(double_cosets(c, triv, triv, wholec).size() == 6);
}

TEST_CASE("N_G(Q,H) and the coset-counting congruence") {
    Group d = d8();
    auto lat = enumerate_subgroups(d);
    const Subgroup& whole = lat.subs[lat.size() - 1];

    // Q trivial: N = G, index |G:H|
    for (int hi = 0; hi < lat.size(); ++hi) {
        auto t = n_g_q_h(d, lat.subs[0], lat.subs[hi]);
        CHECK(int(t.elems.size()) == d.n);
        CHECK(t.index == d.n / lat.subs[hi].order());
    }

    // Q = Z(D_8), H = a C_4 < D_8: N = D_8 and index 2 = |D_8:C_4| mod 2
    int z = -1, c4 = -1;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.subs[i].order() == 4) {
            bool cyclic = false;
            for (elt x : lat.subs[i].elems)
                if (d.elt_order[x] == 4) cyclic = true;
            if (cyclic) c4 = i;
        }
    auto zel = center(d);
    for (int i = 0; i < lat.size(); ++i)
        if (lat.subs[i].elems == zel) z = i;
    REQUIRE(z >= 0);
    REQUIRE(c4 >= 0);
    auto t = n_g_q_h(d, lat.subs[z], lat.subs[c4]);
    CHECK(int(t.elems.size()) == d.n);
    CHECK(t.index == 2);

    // |N_G(Q,H):H| ≡ |G:H| mod p for every p-subgroup Q, all H — D_8 and 27
    for (auto [gp, p] : {std::pair<Group, int>{d8(), 2}, {q8(), 2}, {x27(), 3}}) {
        auto l = enumerate_subgroups(gp);
        for (int qi = 0; qi < l.size(); ++qi)
            for (int hi = 0; hi < l.size(); ++hi) {
                auto tr = n_g_q_h(gp, l.subs[qi], l.subs[hi]);
                long lhs = tr.index % p;
                long rhs = (gp.n / l.subs[hi].order()) % p;
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("sylow subgroup") {
    Group s4 = from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    REQUIRE(s4.n == 24);
    Subgroup syl = sylow_subgroup(s4, 2);
    CHECK(syl.order() == 8);
    Subgroup syl3 = sylow_subgroup(s4, 3);
    CHECK(syl3.order() == 3);
}

TEST_CASE("p_group_prime") {
    CHECK(p_group_prime(d8()) == 2);
    CHECK(p_group_prime(x27()) == 3);
    CHECK(p_group_prime(c6()) == 0);
}
