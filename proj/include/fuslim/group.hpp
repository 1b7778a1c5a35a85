#pragma once

// Finite groups as explicit multiplication tables over dense element ids,
// subgroup enumeration with conjugacy classes, and coset machinery.
// Groups and lattices are immutable once built; concurrent reads are safe.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuslim/errors.hpp"

namespace fuslim {

using elt = uint16_t;

inline constexpr int kGroupOrderCap = 1 << 13;

struct Group {
    int n = 0;
    std::vector<elt> mul;  // n*n row-major
    std::vector<elt> inv;
    std::vector<int> elt_order;
    int id = 0;  // always element 0

    elt times(elt a, elt b) const { return mul[size_t(a) * n + b]; }
    elt conj(elt g, elt x) const { return times(times(g, x), inv[g]); }  // g x g^-1
    elt power(elt a, long e) const;
    bool is_abelian() const;
};

// Cayley table of the group generated by permutations of {0..degree-1}.
// Element ids follow BFS order from the identity with the given generator
// order, so ids are stable across runs.
Group from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                        int cap = kGroupOrderCap);

// Validates Latin-square property, identity/inverses, and associativity
// (Light's test against a generating set) for n <= 4096.
Group from_cayley(const std::vector<std::vector<int>>& table);

void finalize_group(Group& g);  // identity-at-0 relabel, inverses, orders

// Generic builder: elements of any hashable/comparable type with a binary op.
template <class T, class Mul>
Group from_elements(const std::vector<T>& elements, Mul&& op) {
    int n = int(elements.size());
    std::map<T, elt> index;
    for (int i = 0; i < n; ++i) index.emplace(elements[i], elt(i));
    Group g;
    g.n = n;
    g.mul.resize(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto it = index.find(op(elements[i], elements[j]));
            if (it == index.end()) throw input_error("from_elements: product escapes element set");
            g.mul[size_t(i) * n + j] = it->second;
        }
    finalize_group(g);
    return g;
}

struct Bitmask {
    std::vector<uint64_t> w;
    void resize(int n) { w.assign((n + 63) / 64, 0); }
    void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool subset_of(const Bitmask& o) const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k] & ~o.w[k]) return false;
        return true;
    }
    bool operator==(const Bitmask& o) const = default;
    bool operator<(const Bitmask& o) const { return w < o.w; }
};

struct Subgroup {
    const Group* G = nullptr;
    std::vector<elt> elems;  // sorted
    std::vector<elt> gens;
    Bitmask mask;

    int order() const { return int(elems.size()); }
    bool contains(elt x) const { return mask.test(x); }
};

Subgroup make_subgroup(const Group& G, std::vector<elt> sorted_elems);
Subgroup closure(const Group& G, const std::vector<elt>& gens);

std::vector<elt> centralizer(const Group& G, const std::vector<elt>& set);
std::vector<elt> normalizer_in(const Group& G, const std::vector<elt>& ambient, const Subgroup& H);
std::vector<elt> normalizer(const Group& G, const Subgroup& H);
std::vector<elt> center(const Group& G);

// One representative (least id) per Q\ambient/P double coset.
std::vector<elt> double_cosets(const Group& G, const Subgroup& Q, const Subgroup& P,
                               const Subgroup& ambient);

struct TransporterData {
    std::vector<elt> elems;  // N_G(Q,H) = { x : xQx^-1 <= H }, sorted
    long index = 0;          // |N_G(Q,H) : H|
};
TransporterData n_g_q_h(const Group& G, const Subgroup& Q, const Subgroup& H);

// All subgroups of `within` (default: whole of G), canonically sorted by
// (order, element list), grouped into G-conjugacy classes.
struct SubgroupLattice {
    const Group* G = nullptr;
    std::vector<Subgroup> subs;
    std::vector<int> class_of;               // subgroup index -> class index
    std::vector<std::vector<int>> classes;   // class index -> member subgroup indices
    std::vector<int> class_rep;              // class index -> least subgroup index

    int size() const { return int(subs.size()); }
    int index_of(const Bitmask& m) const;
    bool leq(int a, int b) const { return subs[a].mask.subset_of(subs[b].mask); }
    std::vector<int> subgroups_of(int obj) const;  // indices of subgroups contained in obj
    int intersection(int a, int b) const;

  private:
    mutable std::map<Bitmask, int> lookup_;
    friend SubgroupLattice enumerate_subgroups(const Group& G, const Subgroup* within, int cap);
};

SubgroupLattice enumerate_subgroups(const Group& G, const Subgroup* within = nullptr,
                                    int cap = kGroupOrderCap);

// Exhaustive oracle: closure of every subset built by adding one generator at
// a time. Complete for all groups; only feasible at small order.
std::vector<std::vector<elt>> subgroups_bruteforce(const Group& G, int cap = 64);

// Least prime dividing |G| it is a power of; 0 if |G| is not a prime power.
uint32_t p_group_prime(const Group& G);

// Deterministic Sylow p-subgroup (normalizer-climbing from the identity).
Subgroup sylow_subgroup(const Group& G, uint32_t p);

}  // namespace fuslim
