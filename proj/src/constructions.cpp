#include "fuslim/constructions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace fuslim {

namespace {

long pow3(int k) {
    long r = 1;
    while (k-- > 0) r *= 3;
    return r;
}

long imod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

B3rGroup build_b3r(int r, int gamma) {
    // legal parameters: γ ∈ {0,1,2} for even r >= 4, γ ∈ {0,1} for odd r >= 5;
    // (r,γ) = (4,1) is the wreath product of 3-rank three and stays excluded
    bool legal = (r >= 4) && ((r % 2 == 0 && gamma >= 0 && gamma <= 2) ||
                              (r % 2 == 1 && r >= 5 && gamma >= 0 && gamma <= 1));
    if (r == 4 && gamma == 1) legal = false;
    if (!legal) throw input_error("build_b3r: illegal (r, gamma)");
    int k = r / 2;
    B3rGroup B;
    B.r = r;
    B.gamma = gamma;
    if (r % 2 == 1) {
        B.ord1 = int(pow3(k));
        B.ord2 = int(pow3(k));
    } else {
        B.ord1 = int(pow3(k));
        B.ord2 = int(pow3(k - 1));
    }
    // action matrices; the r = 4 cases follow the stated remark
    if (r == 4) {
        B.m11 = 1;
        B.m12 = (gamma == 0) ? -3 : 3;
        B.m21 = 1;
        B.m22 = 1;
    } else if (gamma == 0) {
        B.m11 = 1;
        B.m12 = -3;
        B.m21 = 1;
        B.m22 = -2;
    } else if (r % 2 == 1) {  // M^{2k+1,1}
        B.m11 = 1;
        B.m12 = -3;
        B.m21 = 1;
        long t = 1;
        for (int i = 0; i < k - 1; ++i) t *= -3;
        B.m22 = t - 2;
    } else if (gamma == 1) {  // M^{2k,1}
        B.m11 = 1;
        long t = 1;
        for (int i = 0; i < k - 2; ++i) t *= -3;
        B.m12 = -3 * (t + 1);
        B.m21 = 1;
        B.m22 = -2;
    } else {  // M^{2k,2}
        B.m11 = 1;
        long t = 1;
        for (int i = 0; i < k - 2; ++i) t *= -3;
        B.m12 = 3 * (t - 1);
        B.m21 = 1;
        B.m22 = -2;
    }

    // elements (c, d, e): s_1^c s_2^d s^e with s acting through the matrix
    const long o1 = B.ord1, o2 = B.ord2;
    struct T {
        long c, d, e;
        auto operator<=>(const T&) const = default;
    };
    std::vector<T> els;
    for (long c = 0; c < o1; ++c)
        for (long d = 0; d < o2; ++d)
            for (long e = 0; e < 3; ++e) els.push_back({c, d, e});
    auto act = [&](long e, long c, long d) {
        // M^e applied to the exponent vector (c, d)
        long cc = c, dd = d;
        for (long i = 0; i < e; ++i) {
            long nc = imod(B.m11 * cc + B.m12 * dd, o1);
            long nd = imod(B.m21 * cc + B.m22 * dd, o2);
            cc = nc;
            dd = nd;
        }
        return std::pair<long, long>{cc, dd};
    };
    auto mul = [&](const T& x, const T& y) {
        auto [yc, yd] = act(x.e, y.c, y.d);
        return T{imod(x.c + yc, o1), imod(x.d + yd, o2), imod(x.e + y.e, 3)};
    };
    B.G = std::make_shared<Group>(from_elements(els, mul));
    auto index_of = [&](const T& t) {
        return elt(std::lower_bound(els.begin(), els.end(), t) - els.begin());
    };
    // from_elements relabels so the identity is 0; (0,0,0) is already first
    assert(index_of({0, 0, 0}) == 0);
    B.s1 = index_of({1, 0, 0});
    B.s2 = index_of({0, 1, 0});
    B.s = index_of({0, 0, 1});
    for (long c = 0; c < o1; ++c)
        for (long d = 0; d < o2; ++d) B.gamma1.push_back(index_of({c, d, 0}));
    std::sort(B.gamma1.begin(), B.gamma1.end());
    B.zb = center(*B.G);
    B.z_generator = (r % 2 == 1) ? B.G->power(B.s2, pow3(k - 1)) : B.G->power(B.s1, pow3(k - 1));
    return B;
}

B3rReport check_b3r(const B3rGroup& B, const FusionSystem* Fext) {
    const Group& G = *B.G;
    B3rReport rep;
    const long o1 = B.ord1, o2 = B.ord2;

    // matrix has multiplicative order 3 modulo the generator orders
    {
        long a11 = 1, a12 = 0, a21 = 0, a22 = 1;
        for (int i = 0; i < 3; ++i) {
            long n11 = B.m11 * a11 + B.m12 * a21;
            long n12 = B.m11 * a12 + B.m12 * a22;
            long n21 = B.m21 * a11 + B.m22 * a21;
            long n22 = B.m21 * a12 + B.m22 * a22;
            a11 = n11;
            a12 = n12;
            a21 = n21;
            a22 = n22;
        }
        rep.matrix_order3 = imod(a11, o1) == 1 && imod(a12, o1) == 0 && imod(a21, o2) == 0 &&
                            imod(a22, o2) == 1;
    }

    Subgroup g1 = make_subgroup(G, B.gamma1);
    // abelian of rank two with the stated generator orders
    rep.gamma1_abelian_rank2 = true;
    for (elt x : B.gamma1)
        for (elt y : B.gamma1)
            if (G.times(x, y) != G.times(y, x)) rep.gamma1_abelian_rank2 = false;
    if (G.elt_order[B.s1] != int(o1) || G.elt_order[B.s2] != int(o2))
        rep.gamma1_abelian_rank2 = false;
    {
        // rank two: not cyclic (no element of order |γ1|)
        bool cyclic = false;
        for (elt x : B.gamma1)
            if (G.elt_order[x] == int(B.gamma1.size())) cyclic = true;
        if (cyclic) rep.gamma1_abelian_rank2 = false;
    }

    const FusionSystem* F = Fext;
    std::optional<FusionSystem> owned;
    if (!F) {
        owned = FusionSystem::inner(B.G);
        F = &*owned;
    }
    const auto& lat = F->lattice();

    // γ1 is the unique abelian subgroup of its order (hence characteristic)
    for (int i = 0; i < lat.size(); ++i) {
        if (lat.subs[i].order() != int(B.gamma1.size())) continue;
        bool abelian = true;
        const auto& elems = lat.subs[i].elems;
        for (elt x : elems) {
            for (elt y : elems)
                if (G.times(x, y) != G.times(y, x)) {
                    abelian = false;
                    break;
                }
            if (!abelian) break;
        }
        if (abelian && elems != B.gamma1) rep.gamma1_unique_abelian = false;
    }

    // derived subgroup inside γ1
    {
        std::vector<elt> comms;
        for (int x = 0; x < G.n; ++x)
            for (int y = 0; y < G.n; ++y)
                comms.push_back(G.times(G.times(elt(x), elt(y)),
                                        G.times(G.inv[x], G.inv[y])));
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        Subgroup derived = closure(G, comms);
        rep.contains_derived = derived.mask.subset_of(g1.mask);
    }

    // the action of s on the ordered generators matches the matrix columns
    {
        elt lhs1 = G.conj(B.s, B.s1);
        elt rhs1 = G.times(G.power(B.s1, imod(B.m11, o1)), G.power(B.s2, imod(B.m21, o2)));
        elt lhs2 = G.conj(B.s, B.s2);
        elt rhs2 = G.times(G.power(B.s1, imod(B.m12, o1)), G.power(B.s2, imod(B.m22, o2)));
        rep.action_matches = lhs1 == rhs1 && lhs2 == rhs2;
    }

    // center: order 3, generated as stated
    {
        std::vector<elt> zc{elt(G.id), B.z_generator,
                            G.times(B.z_generator, B.z_generator)};
        std::sort(zc.begin(), zc.end());
        rep.center_as_stated = (B.zb == zc) && int(B.zb.size()) == 3;
    }

    // subgroup dichotomy (d1)/(d2) and the F-centric classification
    Bitmask zmask;
    zmask.resize(G.n);
    for (elt z : B.zb) zmask.set(z);
    for (int i = 0; i < lat.size(); ++i) {
        const Subgroup& P = lat.subs[i];
        bool inside = P.mask.subset_of(g1.mask);
        // plain centricity in B: C_B(P) <= P
        std::vector<elt> cb = centralizer(G, P.gens.empty() ? P.elems : P.gens);
        bool centric = true;
        for (elt c : cb)
            if (!P.mask.test(c)) centric = false;
        if (inside) {
            if (centric != (P.elems == B.gamma1)) rep.d1 = false;
        } else {
            std::vector<elt> K;
            for (elt x : P.elems)
                if (g1.mask.test(x)) K.push_back(x);
            bool k_trivial = K.size() == 1;
            if (!k_trivial) {
                Bitmask km;
                km.resize(G.n);
                for (elt x : K) km.set(x);
                if (!zmask.subset_of(km)) rep.d2_contains_center = false;
                // 3-rank one means a single C_3 inside, i.e. two order-3 elements
                int order3 = 0;
                for (elt x : K)
                    if (G.elt_order[x] == 3) ++order3;
                if (order3 == 2 && K != B.zb) rep.d2_rank_one = false;
            }
            if (centric != !k_trivial) rep.d2_centric = false;
        }
        // Cor: F-centric classification
        bool fc = F->is_centric(i);
        bool expect;
        if (inside) {
            expect = (P.elems == B.gamma1);
        } else {
            std::vector<elt> K;
            for (elt x : P.elems)
                if (g1.mask.test(x)) K.push_back(x);
            if (K.size() == 1) {
                expect = false;
            } else if (K.size() == 3 && K == B.zb) {
                // K = Z(B): P of order 9 (Z_3 x Z_3 or Z_9): non-centric exactly
                // when it is F-conjugate to a subgroup of γ1
                bool conj_into_gamma1 = false;
                for (int other : F->f_class(i))
                    if (lat.subs[other].mask.subset_of(g1.mask)) conj_into_gamma1 = true;
                expect = !conj_into_gamma1;
            } else {
                expect = true;
            }
        }
        if (fc != expect) rep.cor62 = false;
    }
    return rep;
}

std::shared_ptr<const Group> build_extraspecial(uint32_t p) {
    if (p < 3 || p > 7 || !is_prime(p)) throw input_error("build_extraspecial: p must be an odd prime <= 7");
    struct T {
        int a, b, c;
        auto operator<=>(const T&) const = default;
    };
    std::vector<T> els;
    for (int a = 0; a < int(p); ++a)
        for (int b = 0; b < int(p); ++b)
            for (int c = 0; c < int(p); ++c) els.push_back({a, b, c});
    auto mul = [p](const T& x, const T& y) {
        return T{int((x.a + y.a) % p), int((x.b + y.b) % p),
                 int((x.c + y.c + x.a * y.b) % p)};
    };
    return std::make_shared<Group>(from_elements(els, mul));
}

std::shared_ptr<const Group> build_2group(TwoGroupKind kind, int order) {
    int n = 0, m = order;
    while (m > 1) {
        if (m % 2) throw input_error("build_2group: order must be a power of two");
        m /= 2;
        ++n;
    }
    if (n < 3 || (kind == TwoGroupKind::Semidihedral && n < 4))
        throw input_error("build_2group: order too small for the requested kind");
    const int half = order / 2;
    long t = 0, u = 0;
    switch (kind) {
        case TwoGroupKind::Dihedral:
            t = -1;
            u = 0;
            break;
        case TwoGroupKind::Semidihedral:
            t = half / 2 - 1;
            u = 0;
            break;
        case TwoGroupKind::Quaternion:
            t = -1;
            u = half / 2;
            break;
    }
    struct T {
        int i, j;
        auto operator<=>(const T&) const = default;
    };
    std::vector<T> els;
    for (int i = 0; i < half; ++i)
        for (int j = 0; j < 2; ++j) els.push_back({i, j});
    auto mul = [half, t, u](const T& x, const T& y) {
        // (a^i b^j)(a^k b^l) = a^{i + k t^j} b^{j+l}, with b^2 = a^u
        long k = y.i;
        if (x.j) k = imod(k * t, half);
        long i = imod(x.i + k, half);
        int j = x.j + y.j;
        if (j == 2) i = imod(i + u, half);
        return T{int(i), j % 2};
    };
    return std::make_shared<Group>(from_elements(els, mul));
}

Example43 build_example43(uint32_t p) {
    if (!is_prime(p) || p > 3) throw input_error("build_example43: p must be 2 or 3");
    Example43 ex;
    ex.p = p;
    const int n = int(p) + 2;
    // Jordan blocks in both orientations
    ex.A_super = FpMatrix::identity(int(p), p);
    ex.A_sub = FpMatrix::identity(int(p), p);
    for (int i = 0; i + 1 < int(p); ++i) {
        ex.A_super.at(i, i + 1) = 1;
        ex.A_sub.at(i + 1, i) = 1;
    }
    ex.B_p = FpMatrix::identity(n, p);
    for (int i = 0; i + 1 < int(p); ++i) ex.B_p.at(i, i + 1) = 1;
    ex.B_p.at(n - 2, n - 1) = 1;
    // C = I + A + ... + A^{p-1}, integrally, for both orientations
    auto integral_c = [&](bool super) {
        std::vector<std::vector<long>> A(p, std::vector<long>(p, 0)),
            acc(p, std::vector<long>(p, 0)), cur(p, std::vector<long>(p, 0));
        for (uint32_t i = 0; i < p; ++i) A[i][i] = cur[i][i] = 1;
        for (uint32_t i = 0; i + 1 < p; ++i) {
            if (super)
                A[i][i + 1] = 1;
            else
                A[i + 1][i] = 1;
        }
        for (uint32_t k = 0; k < p; ++k) {
            for (uint32_t i = 0; i < p; ++i)
                for (uint32_t j = 0; j < p; ++j) acc[i][j] += cur[i][j];
            // cur = cur * A
            std::vector<std::vector<long>> next(p, std::vector<long>(p, 0));
            for (uint32_t i = 0; i < p; ++i)
                for (uint32_t k2 = 0; k2 < p; ++k2)
                    for (uint32_t j = 0; j < p; ++j) next[i][j] += cur[i][k2] * A[k2][j];
            cur = next;
        }
        return acc;
    };
    auto cs = integral_c(true);
    auto cb = integral_c(false);
    ex.C_super = FpMatrix(int(p), int(p), p);
    ex.C_sub = FpMatrix(int(p), int(p), p);
    for (uint32_t i = 0; i < p; ++i)
        for (uint32_t j = 0; j < p; ++j) {
            ex.C_super.at(i, j) = uint32_t(imod(cs[i][j], p));
            ex.C_sub.at(i, j) = uint32_t(imod(cb[i][j], p));
        }
    for (uint32_t i = 0; i < p; ++i) {
        ex.c_super.push_back(cs[i][p - 1]);
        ex.c_sub.push_back(cb[i][p - 1]);
    }
    ex.convention = "";
    if (ex.c_super[0] == long(p) - 1) ex.convention = "superdiagonal";
    if (ex.c_sub[0] == long(p) - 1) ex.convention = "subdiagonal";
    if (ex.convention.empty()) ex.convention = "none (c_1 != p-1 integrally in either orientation)";

    // the group S = Q ⋊ <B_p> with Q = (C_p)^{p+2}
    struct T {
        std::vector<uint32_t> v;
        int e;
        auto operator<=>(const T&) const = default;
    };
    std::vector<FpMatrix> bpow{FpMatrix::identity(n, p)};
    for (uint32_t i = 1; i < p; ++i) bpow.push_back(fp_mul(bpow.back(), ex.B_p));
    std::vector<T> els;
    std::vector<uint32_t> v(n, 0);
    while (true) {
        for (int e = 0; e < int(p); ++e) els.push_back({v, e});
        int i = 0;
        for (; i < n; ++i) {
            if (++v[i] < p) break;
            v[i] = 0;
        }
        if (i == n) break;
    }
    std::sort(els.begin(), els.end());
    auto mul = [&](const T& x, const T& y) {
        auto w = fp_apply(bpow[x.e], y.v);
        std::vector<uint32_t> sum(n);
        for (int i = 0; i < n; ++i) sum[i] = (x.v[i] + w[i]) % p;
        return T{sum, int((x.e + y.e) % p)};
    };
    ex.S = std::make_shared<Group>(from_elements(els, mul));
    auto index_of = [&](const T& t) {
        return elt(std::lower_bound(els.begin(), els.end(), t) - els.begin());
    };
    for (auto& t : els) {
        if (t.e == 0) ex.Q.push_back(index_of(t));
        if (t.v[n - 1] == 0 && t.e == 0) ex.U.push_back(index_of(t));
        bool in_u = t.v[n - 1] == 0;
        if (in_u) ex.P.push_back(index_of(t));
    }
    std::sort(ex.Q.begin(), ex.Q.end());
    std::sort(ex.U.begin(), ex.U.end());
    std::sort(ex.P.begin(), ex.P.end());
    std::vector<uint32_t> uvec(n, 0);
    uvec[p - 1] = 1;  // the coordinate vector (0,...,0,1,0,0) of the example
    ex.u = index_of({uvec, 0});
    return ex;
}

}  // namespace fuslim
