#pragma once

// The F_p-linear biset categories kB_F: basis elements [Q ×_φ P] in canonical
// (Q,P)-conjugacy form, composition by the double-coset formula, a set-level
// composition oracle, the quotient D^X and the barred quotient with Out-action.

#include <vector>

#include "fuslim/fp.hpp"
#include "fuslim/fusion.hpp"

namespace fuslim {

// Basis element [to ×_phi from]: a morphism `from -> to` of D_F, where
// phi: dom -> (image <= to) is an F-isomorphism and dom <= from.
struct Biset {
    int from = -1;
    int to = -1;
    int dom = -1;
    Morphism phi;

    bool operator==(const Biset& o) const { return dom == o.dom && phi.img == o.phi.img; }
    bool operator<(const Biset& o) const {
        if (dom != o.dom) return dom < o.dom;
        return phi.img < o.phi.img;
    }
};

using BisetCombo = std::vector<std::pair<Biset, long>>;  // sorted, integral multiplicities

Biset identity_biset(const FusionSystem& F, int obj);
Biset canonical_biset(const FusionSystem& F, const Biset& b);

// Basis of Hom_{D_F}(from, to) = kB_F(to, from): canonical representatives of
// (to,from)-conjugacy classes of pairs (U <= from, φ: U -> to).
// centric_domains_only restricts to dom in F^c (the D^X basis).
std::vector<Biset> biset_basis(const FusionSystem& F, int from, int to,
                               bool centric_domains_only = false);

// Lemma-style composition g∘f by the double-coset formula (integral).
BisetCombo compose_bisets(const FusionSystem& F, const Biset& g, const Biset& f);

// Independent set-level oracle: builds the amalgamated product as a finite
// set, splits it into transitive bisets and recognizes each by its point
// stabilizer. Throws logic_error if a component is not of graph form.
BisetCombo oracle_compose(const FusionSystem& F, const Biset& g, const Biset& f);

// Composition in the quotient category D^X: compose, then drop every term
// whose domain is outside the centric collection.
BisetCombo compose_mod_centric(const FusionSystem& F, const Biset& g, const Biset& f);

// k-bar-B_F(to, from): basis indexed by Hom_{O(F)}(from, to), with the right
// kOut_F(from)-action by precomposition. Lives on the orbit-category skeleton.
struct BarredModule {
    int a = -1;             // skeleton position of `from`
    int b = -1;             // skeleton position of `to`
    int dim = 0;            // = nclasses(a, b)
    std::vector<int> out_classes;      // class indices of Aut_O(from) = all classes (a,a)
    std::vector<FpMatrix> out_action;  // per out-class: basis permutation matrix
};

BarredModule bar_quotient(const OrbitCategory& cat, int a_from, int b_to);

}  // namespace fuslim
