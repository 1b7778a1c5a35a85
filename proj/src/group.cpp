#include "fuslim/group.hpp"

#include "fuslim/fp.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace fuslim {

elt Group::power(elt a, long e) const {
    long m = e % elt_order[a];
    if (m < 0) m += elt_order[a];
    elt r = elt(id);
    for (long i = 0; i < m; ++i) r = times(r, a);
    return r;
}

bool Group::is_abelian() const {
    for (elt a = 0; a < n; ++a)
        for (elt b = a + 1; b < n; ++b)
            if (times(a, b) != times(b, a)) return false;
    return true;
}

void finalize_group(Group& g) {
    const int n = g.n;
    int e = -1;
    for (int i = 0; i < n; ++i) {
        bool left_id = true;
        for (int j = 0; j < n; ++j)
            if (g.mul[size_t(i) * n + j] != j) {
                left_id = false;
                break;
            }
        if (left_id) {
            e = i;
            break;
        }
    }
    if (e < 0) throw input_error("group: no identity element");
    if (e != 0) {
        // relabel so the identity is element 0
        std::vector<elt> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = elt(i);
        std::swap(perm[0], perm[e]);
        std::vector<elt> inv_perm(n);
        for (int i = 0; i < n; ++i) inv_perm[perm[i]] = elt(i);
        std::vector<elt> m2(size_t(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m2[size_t(i) * n + j] = inv_perm[g.mul[size_t(perm[i]) * n + perm[j]]];
        g.mul = std::move(m2);
    }
    g.id = 0;
    g.inv.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        bool found = false;
        for (int j = 0; j < n; ++j)
            if (g.mul[size_t(i) * n + j] == 0) {
                g.inv[i] = elt(j);
                found = true;
                break;
            }
        if (!found) throw input_error("group: element without inverse");
    }
    g.elt_order.assign(n, 1);
    for (int i = 1; i < n; ++i) {
        elt x = elt(i);
        int o = 1;
        while (x != 0) {
            x = g.times(x, elt(i));
            ++o;
        }
        g.elt_order[i] = o;
    }
}

Group from_permutations(int degree, const std::vector<std::vector<int>>& gens, int cap) {
    for (auto& p : gens) {
        if (int(p.size()) != degree) throw input_error("permutation degree mismatch");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]) throw input_error("not a permutation");
            seen[v] = 1;
        }
    }
    std::vector<int> identity(degree);
    std::iota(identity.begin(), identity.end(), 0);
    std::map<std::vector<int>, elt> index;
    std::vector<std::vector<int>> elems;
    elems.push_back(identity);
    index.emplace(identity, 0);
    // BFS from identity, right-multiplying by generators in order
    for (size_t head = 0; head < elems.size(); ++head) {
        for (auto& s : gens) {
            std::vector<int> prod(degree);
            for (int pt = 0; pt < degree; ++pt) prod[pt] = elems[head][s[pt]];
            if (index.emplace(prod, elt(elems.size())).second) {
                elems.push_back(prod);
                if (int(elems.size()) > cap) throw cap_exceeded("group order exceeds cap");
            }
        }
    }
    const int n = int(elems.size());
    Group g;
    g.n = n;
    g.mul.resize(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> prod(degree);
            for (int pt = 0; pt < degree; ++pt) prod[pt] = elems[i][elems[j][pt]];
            g.mul[size_t(i) * n + j] = index.at(prod);
        }
    finalize_group(g);
    return g;
}

Group from_cayley(const std::vector<std::vector<int>>& table) {
    const int n = int(table.size());
    if (n == 0 || n > kGroupOrderCap) throw input_error("cayley: bad order");
    Group g;
    g.n = n;
    g.mul.resize(size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        if (int(table[i].size()) != n) throw input_error("cayley: ragged table");
        std::vector<char> seen(n, 0);
        for (int j = 0; j < n; ++j) {
            int v = table[i][j];
            if (v < 0 || v >= n || seen[v]) throw input_error("cayley: not a Latin square row");
            seen[v] = 1;
            g.mul[size_t(i) * n + j] = elt(v);
        }
    }
    for (int j = 0; j < n; ++j) {
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            int v = g.mul[size_t(i) * n + j];
            if (seen[v]) throw input_error("cayley: not a Latin square column");
            seen[v] = 1;
        }
    }
    finalize_group(g);
    if (n <= 4096) {
        // Light's associativity test against a generating set
        std::vector<elt> gens;
        {
            Bitmask cm;
            cm.resize(n);
            cm.set(0);
            std::vector<elt> cl{elt(0)};
            for (int x = 1; x < n; ++x) {
                if (cm.test(x)) continue;
                gens.push_back(elt(x));
                cm.set(x);
                cl.push_back(elt(x));
                for (size_t i = 0; i < cl.size(); ++i)
                    for (elt w : gens) {
                        elt z = g.times(cl[i], w);
                        if (!cm.test(z)) {
                            cm.set(z);
                            cl.push_back(z);
                        }
                    }
            }
        }
        for (elt x : gens)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (g.times(g.times(elt(a), x), elt(b)) != g.times(elt(a), g.times(x, elt(b))))
                        throw input_error("cayley: not associative");
    }
    return g;
}

Subgroup make_subgroup(const Group& G, std::vector<elt> sorted_elems) {
    Subgroup h;
    h.G = &G;
    h.elems = std::move(sorted_elems);
    h.mask.resize(G.n);
    for (elt x : h.elems) h.mask.set(x);
    // small generating set, greedily
    Bitmask cm;
    cm.resize(G.n);
    cm.set(G.id);
    std::vector<elt> cl{elt(G.id)};
    for (elt x : h.elems) {
        if (cm.test(x)) continue;
        h.gens.push_back(x);
        cm.set(x);
        cl.push_back(x);
        for (size_t i = 0; i < cl.size(); ++i)
            for (elt w : h.gens) {
                elt z = G.times(cl[i], w);
                if (!cm.test(z)) {
                    cm.set(z);
                    cl.push_back(z);
                }
            }
    }
    return h;
}

Subgroup closure(const Group& G, const std::vector<elt>& gens) {
    Bitmask cm;
    cm.resize(G.n);
    cm.set(G.id);
    std::vector<elt> cl{elt(G.id)};
    for (elt x : gens)
        if (!cm.test(x)) {
            cm.set(x);
            cl.push_back(x);
        }
    for (size_t i = 0; i < cl.size(); ++i)
        for (elt w : gens) {
            elt z = G.times(cl[i], w);
            if (!cm.test(z)) {
                cm.set(z);
                cl.push_back(z);
            }
            z = G.times(w, cl[i]);
            if (!cm.test(z)) {
                cm.set(z);
                cl.push_back(z);
            }
        }
    std::sort(cl.begin(), cl.end());
    Subgroup h = make_subgroup(G, cl);
    h.gens.assign(gens.begin(), gens.end());
    return h;
}

std::vector<elt> centralizer(const Group& G, const std::vector<elt>& set) {
    std::vector<elt> out;
    for (int g = 0; g < G.n; ++g) {
        bool ok = true;
        for (elt x : set)
            if (G.times(elt(g), x) != G.times(x, elt(g))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(elt(g));
    }
    return out;
}

std::vector<elt> normalizer_in(const Group& G, const std::vector<elt>& ambient, const Subgroup& H) {
    std::vector<elt> out;
    for (elt g : ambient) {
        bool ok = true;
        for (elt x : H.gens.empty() ? H.elems : H.gens)
            if (!H.mask.test(G.conj(g, x))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return out;
}

std::vector<elt> normalizer(const Group& G, const Subgroup& H) {
    std::vector<elt> all(G.n);
    std::iota(all.begin(), all.end(), 0);
    return normalizer_in(G, all, H);
}

std::vector<elt> center(const Group& G) {
    std::vector<elt> all(G.n);
    std::iota(all.begin(), all.end(), 0);
    return centralizer(G, all);
}

std::vector<elt> double_cosets(const Group& G, const Subgroup& Q, const Subgroup& P,
                               const Subgroup& ambient) {
    std::vector<char> seen(G.n, 0);
    std::vector<elt> reps;
    for (elt x : ambient.elems) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (elt q : Q.elems) {
            elt qx = G.times(q, x);
            for (elt p : P.elems) seen[G.times(qx, p)] = 1;
        }
    }
    return reps;
}

TransporterData n_g_q_h(const Group& G, const Subgroup& Q, const Subgroup& H) {
    TransporterData t;
    for (int x = 0; x < G.n; ++x) {
        bool ok = true;
        for (elt q : Q.gens.empty() ? Q.elems : Q.gens)
            if (!H.mask.test(G.conj(elt(x), q))) {
                ok = false;
                break;
            }
        if (ok) t.elems.push_back(elt(x));
    }
    t.index = long(t.elems.size()) / H.order();
    return t;
}

int SubgroupLattice::index_of(const Bitmask& m) const {
    auto it = lookup_.find(m);
    if (it == lookup_.end()) throw input_error("lattice: unknown subgroup");
    return it->second;
}

std::vector<int> SubgroupLattice::subgroups_of(int obj) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (leq(i, obj)) out.push_back(i);
    return out;
}

int SubgroupLattice::intersection(int a, int b) const {
    std::vector<elt> e;
    for (elt x : subs[a].elems)
        if (subs[b].mask.test(x)) e.push_back(x);
    Bitmask m;
    m.resize(G->n);
    for (elt x : e) m.set(x);
    return index_of(m);
}

SubgroupLattice enumerate_subgroups(const Group& G, const Subgroup* within, int cap) {
    if (G.n > cap) throw cap_exceeded("enumerate_subgroups: order exceeds cap");
    std::vector<elt> universe;
    if (within) {
        universe = within->elems;
    } else {
        universe.resize(G.n);
        std::iota(universe.begin(), universe.end(), 0);
    }
    Bitmask umask;
    umask.resize(G.n);
    for (elt x : universe) umask.set(x);

    std::set<Bitmask> seen;
    std::vector<Subgroup> found;
    // dedupe by mask before paying for generator selection
    auto push = [&](std::vector<elt> sorted_elems) {
        Bitmask m;
        m.resize(G.n);
        for (elt x : sorted_elems) m.set(x);
        if (seen.insert(std::move(m)).second)
            found.push_back(make_subgroup(G, std::move(sorted_elems)));
    };
    push({elt(G.id)});
    // layer 0: all cyclic subgroups
    for (elt x : universe) {
        std::vector<elt> cyc;
        elt y = x;
        while (y != G.id) {
            cyc.push_back(y);
            y = G.times(y, x);
        }
        cyc.push_back(elt(G.id));
        std::sort(cyc.begin(), cyc.end());
        push(std::move(cyc));
    }
    // cyclic extension: extend H by x in N(H) with x^q in H, q prime
    for (size_t head = 0; head < found.size(); ++head) {
        Subgroup H = found[head];  // copy: found may reallocate
        std::vector<elt> nor = normalizer_in(G, universe, H);
        for (elt x : nor) {
            if (H.mask.test(x)) continue;
            // order of xH in N/H
            int m = 1;
            elt y = x;
            while (!H.mask.test(y)) {
                y = G.times(y, x);
                ++m;
            }
            if (!is_prime(uint32_t(m))) continue;
            std::vector<elt> ext;
            ext.reserve(size_t(H.order()) * m);
            elt xp = elt(G.id);
            for (int i = 0; i < m; ++i) {
                for (elt h : H.elems) ext.push_back(G.times(h, xp));
                xp = G.times(xp, x);
            }
            std::sort(ext.begin(), ext.end());
            push(std::move(ext));
        }
    }
    // canonical sort by (order, element list)
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });

    SubgroupLattice lat;
    lat.G = &G;
    lat.subs = std::move(found);
    for (int i = 0; i < lat.size(); ++i) lat.lookup_[lat.subs[i].mask] = i;

    // conjugacy classes under the full group G; the class of P is exactly the
    // set of direct conjugates of P landing inside `within`, so one pass over
    // conjugators per class representative suffices
    lat.class_of.assign(lat.size(), -1);
    Bitmask scratch;
    scratch.resize(G.n);
    for (int i = 0; i < lat.size(); ++i) {
        if (lat.class_of[i] >= 0) continue;
        int cls = int(lat.classes.size());
        std::vector<int> members;
        const Subgroup& s = lat.subs[i];
        for (int g = 0; g < G.n; ++g) {
            std::fill(scratch.w.begin(), scratch.w.end(), 0);
            for (elt x : s.elems) scratch.set(G.conj(elt(g), x));
            if (!scratch.subset_of(umask)) continue;  // conjugate escapes `within`
            auto it = lat.lookup_.find(scratch);
            if (it == lat.lookup_.end()) continue;
            int j = it->second;
            if (lat.class_of[j] < 0) {
                lat.class_of[j] = cls;
                members.push_back(j);
            }
        }
        std::sort(members.begin(), members.end());
        lat.classes.push_back(members);
        lat.class_rep.push_back(members.front());
    }
    return lat;
}

std::vector<std::vector<elt>> subgroups_bruteforce(const Group& G, int cap) {
    if (G.n > cap) throw cap_exceeded("subgroups_bruteforce: order exceeds cap");
    std::set<std::vector<elt>> all;
    all.insert({elt(G.id)});
    std::vector<std::vector<elt>> queue{{elt(G.id)}};
    for (size_t h = 0; h < queue.size(); ++h) {
        std::vector<elt> base = queue[h];
        for (int x = 1; x < G.n; ++x) {
            std::vector<elt> gens = base;
            gens.push_back(elt(x));
            Subgroup s = closure(G, gens);
            if (all.insert(s.elems).second) queue.push_back(s.elems);
        }
    }
    return {all.begin(), all.end()};
}

uint32_t p_group_prime(const Group& G) {
    int n = G.n;
    if (n == 1) return 0;
    uint32_t p = 0;
    for (uint32_t d = 2; d <= uint32_t(n); ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    int m = n;
    while (m % p == 0) m /= int(p);
    return m == 1 ? p : 0;
}

Subgroup sylow_subgroup(const Group& G, uint32_t p) {
    int target = 1;
    int m = G.n;
    while (m % int(p) == 0) {
        m /= int(p);
        target *= int(p);
    }
    Subgroup H = make_subgroup(G, {elt(G.id)});
    while (H.order() < target) {
        std::vector<elt> nor = normalizer(G, H);
        bool grown = false;
        for (elt x : nor) {
            if (H.mask.test(x)) continue;
            int o = 1;
            elt y = x;
            while (!H.mask.test(y)) {
                y = G.times(y, x);
                ++o;
            }
            if (o != int(p)) continue;
            std::vector<elt> gens = H.gens;
            gens.push_back(x);
            H = closure(G, gens);
            grown = true;
            break;
        }
        if (!grown) throw input_error("sylow_subgroup: stuck (non-group input?)");
    }
    return H;
}

}  // namespace fuslim
