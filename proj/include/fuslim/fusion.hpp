#pragma once

// Fusion systems: subgroup-closed objects, morphism families closed under
// composition, restriction and inverses, containing all inner maps; plus
// centricity, orbit-category skeletons, and truncated double cosets.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuslim/group.hpp"

namespace fuslim {

inline constexpr int kHomSetCap = 1 << 16;

// An F-isomorphism from a lattice object onto its image subgroup.
// img[i] is the image of lat.subs[src].elems[i]; img_obj indexes the image.
struct Morphism {
    int src = -1;
    int img_obj = -1;
    std::vector<elt> img;

    bool operator==(const Morphism& o) const { return src == o.src && img == o.img; }
    bool operator<(const Morphism& o) const {
        if (src != o.src) return src < o.src;
        return img < o.img;
    }
};

class FusionSystem {
  public:
    enum class Flavor { Inner, Ambient, Generated };

    static FusionSystem inner(std::shared_ptr<const Group> S);
    static FusionSystem ambient(std::shared_ptr<const Group> G, const Subgroup& S);
    // extra: automorphisms given as (subgroup generator ids, generator images)
    static FusionSystem generated(
        std::shared_ptr<const Group> S,
        const std::vector<std::pair<std::vector<elt>, std::vector<elt>>>& extra);

    const Group& group() const { return *G_; }
    const Subgroup& sylow() const { return S_; }
    const SubgroupLattice& lattice() const { return lat_; }
    uint32_t p() const { return p_; }
    Flavor flavor() const { return flavor_; }
    int nobjects() const { return lat_.size(); }

    // All F-isomorphisms from obj onto image subgroups, sorted and deduped.
    const std::vector<Morphism>& isos_from(int obj) const;
    // Hom_F(P,Q): isos from P whose image lies in Q.
    std::vector<Morphism> hom(int P, int Q) const;

    elt apply(const Morphism& m, elt x) const;
    Morphism identity_morphism(int obj) const;
    // c_g restricted to obj; requires the conjugate to stay inside S.
    Morphism conj_morphism(elt g, int obj) const;
    Morphism compose(const Morphism& g, const Morphism& f) const;  // g after f
    Morphism inverse(const Morphism& f) const;
    Morphism restrict(const Morphism& f, int subobj) const;

    bool is_centric(int obj) const;
    std::vector<int> centric_objects() const;

    // F-isomorphism class of obj (sorted object indices) and its least member.
    const std::vector<int>& f_class(int obj) const;
    int f_class_rep(int obj) const { return f_class(obj).front(); }

    // Representatives x of Q\P/R with Q ∩ xRx^-1 centric (or any filter).
    std::vector<elt> truncated_double_cosets(int Q, int P, int R, bool centric_filter) const;

    int object_of_elems(std::vector<elt> sorted_elems) const;

  private:
    FusionSystem() = default;
    void init_lattice();
    uint32_t check_p_group() const;
    std::vector<Morphism> compute_isos(int obj) const;

    std::shared_ptr<const Group> owned_;
    const Group* G_ = nullptr;
    Subgroup S_;
    SubgroupLattice lat_;
    uint32_t p_ = 2;
    Flavor flavor_ = Flavor::Inner;
    mutable std::vector<std::optional<std::vector<Morphism>>> iso_cache_;
    mutable std::vector<int> centric_;  // -1 unknown, 0/1 known
    mutable std::vector<std::optional<std::vector<int>>> fclass_cache_;
    std::vector<std::vector<Morphism>> generated_store_;  // eager store per object
};

// Saturation checker (best effort): Sylow axiom and extension axiom in the
// standard fully-normalized formulation, by exhaustive search.
struct SaturationReport {
    bool sylow_ok = true;
    bool extension_ok = true;
    std::vector<std::string> failures;
    bool ok() const { return sylow_ok && extension_ok; }
};
SaturationReport saturation_check(const FusionSystem& F, int cap = 243);

// Skeleton of the orbit category O(F) or O(F^c): one object per F-iso class,
// morphism sets as Inn(target)-orbits with least representatives, and a
// composition table on class representatives.
class OrbitCategory {
  public:
    OrbitCategory(const FusionSystem& F, bool centric_only);

    const FusionSystem& fusion() const { return *F_; }
    bool centric_only() const { return centric_; }
    int nobj() const { return int(objects_.size()); }
    int object(int a) const { return objects_[a]; }
    const std::vector<int>& objects() const { return objects_; }

    bool in_filter(int obj) const { return rep_pos_[obj] >= 0; }
    int rep_pos(int obj) const { return rep_pos_[obj]; }
    const Morphism& kappa(int obj) const { return kappa_[obj]; }

    int nclasses(int a, int b) const { return int(hc_[a][b].size()); }
    const Morphism& class_rep(int a, int b, int cls) const { return hc_[a][b][cls]; }
    int identity_class(int a) const { return id_class_[a]; }

    // Class of a morphism rep_a -> (img <= rep_b).
    int class_index(int a, int b, const Morphism& m) const;
    // Class of an arbitrary f: P -> Q (img f <= Q), transported to reps.
    struct Classified {
        int a, b, cls;
    };
    Classified classify(const Morphism& f, int tgt_obj) const;
    Classified classify_inclusion(int sub, int obj) const;

    int compose_classes(int a, int b, int c, int i, int j) const;  // [j] after [i]
    bool is_invertible_class(int a, int b, int cls) const;
    int inverse_class(int a, int cls) const;  // for invertible classes a -> a

    // Longest strict chain bound n over the filtered objects, computed both by
    // the |S|/|Q_min| formula and by explicit chain search; must agree.
    int chain_bound() const;

  private:
    const FusionSystem* F_;
    bool centric_;
    std::vector<int> objects_;
    std::vector<int> rep_pos_;
    std::vector<Morphism> kappa_;
    std::vector<std::vector<std::vector<Morphism>>> hc_;
    std::vector<std::vector<std::map<std::vector<elt>, int>>> lookup_;
    std::vector<int> id_class_;
    mutable std::map<uint64_t, int> comp_cache_;
};

}  // namespace fuslim
