#pragma once

// Simple Mackey functors S_{Q,V} built two independent ways (the L̄/J̄
// quotient and the relative-trace formula), composition series of category
// modules by deterministic exhaustive spinning, factor identification, and
// the non-vanishing tests of the S_{Q,V} theory.

#include <optional>
#include <vector>

#include "fuslim/burnside.hpp"
#include "fuslim/fp.hpp"
#include "fuslim/fusion.hpp"
#include "fuslim/mackey.hpp"

namespace fuslim {

inline constexpr long kSpinCap = 531441;  // 3^12 vectors

// -------------------------------------------------------------------------
// modules over an algebra given by a finite set of action matrices

struct ActionModule {
    uint32_t p = 2;
    int dim = 0;
    std::vector<FpMatrix> acts;
};

// block-structured module over the category algebra ⊕ Hom_{D^X}(P,Q)
struct CategoryAlgebraModule {
    uint32_t p = 2;
    std::vector<int> dims;
    std::vector<int> offset;
    int total = 0;
    ActionModule dense;  // action matrices on the total space, deduped

    int block_of(int a) const { return offset[a]; }
};

CategoryAlgebraModule as_category_module(const MackeyFunctorData& M);
CategoryAlgebraModule as_category_module(const ContravariantFunctorData& N);

// F([Q×_φP]) = M_*([φ]) ∘ M*([ι^P_U]) as a matrix M(rep from) -> M(rep to).
FpMatrix biset_action(const MackeyFunctorData& M, const Biset& b);
// Multiplicativity of the Def-2.3 presentation against the double-coset
// composition; the conversion consistency check.
bool module_multiplicative(const MackeyFunctorData& M, int samples, uint64_t seed);

FpSubspace spin(const ActionModule& mod, const std::vector<std::vector<uint32_t>>& seeds);

enum class Simplicity { Simple, NotSimple, Inconclusive };
struct SimplicityResult {
    Simplicity verdict = Simplicity::Inconclusive;
    FpSubspace witness;  // a proper nonzero submodule when NotSimple
};
SimplicityResult is_simple(const ActionModule& mod, long cap = kSpinCap);

// maximal strictly increasing chain 0 = C_0 ⊂ C_1 ⊂ ... ⊂ C_r = F_p^dim of
// invariant subspaces with simple factors (deterministic refinement order)
struct CompositionSeries {
    std::vector<FpSubspace> chain;
    bool conclusive = true;
    int length() const { return int(chain.size()) - 1; }
};
CompositionSeries composition_series(const ActionModule& mod, long cap = kSpinCap);

// the factor chain[i+1]/chain[i] as a standalone module, with lift/projection
struct FactorView {
    ActionModule mod;
    FpMatrix lift;  // dim x ambient
    FpMatrix proj;  // dim x ambient -> factor coords (apply to ambient vectors)
};
FactorView factor_view(const ActionModule& parent, const FpSubspace& sub, const FpSubspace& quo);

// -------------------------------------------------------------------------
// Out-groups and their simple modules

struct OutGroup {
    int a = -1;                // skeleton position of Q
    Group grp;                 // abstract group on the Aut-classes
    std::vector<int> classes;  // class ids at (a,a); grp element i = classes[i]
};
OutGroup out_group(const OrbitCategory& cat, int a);

struct OutModule {
    int a = -1;  // skeleton position of Q
    int dim = 0;
    std::vector<FpMatrix> action;  // indexed by class id at (a,a)
};

OutModule trivial_out_module(const OrbitCategory& cat, int a);
bool out_modules_isomorphic(const OutModule& v, const OutModule& w);
SimplicityResult out_module_simple(const OrbitCategory& cat, const OutModule& v,
                                   long cap = kSpinCap);

// every simple F_p Out_F(Q)-module, as composition factors of the regular
// module, deduped up to isomorphism; exhaustive under the spin cap
std::vector<OutModule> enumerate_simple_modules(const OrbitCategory& cat, int a,
                                                long cap = kSpinCap);

// -------------------------------------------------------------------------
// the two constructions of S_{Q,V}

// image of the relative trace Σ ρ(n) over a transversal
FpSubspace relative_trace(const std::vector<FpMatrix>& coset_actions);

// S_{Q,V} = L̄_{Q,V} / J̄_{Q,V} over the full orbit category.
MackeyFunctorData build_S_quotient(const OrbitCategory& cat, const OutModule& V);

// Prop-3.2-style construction by relative traces over P-conjugacy classes.
MackeyFunctorData build_S_formula(const OrbitCategory& cat, const OutModule& V);

// blockwise intertwiner between two functors on the same category with equal
// dims; any nonzero solution between simple functors is invertible (checked)
std::optional<std::vector<FpMatrix>> find_intertwiner(const MackeyFunctorData& A,
                                                      const MackeyFunctorData& B);

// -------------------------------------------------------------------------
// identification and vanishing

struct FactorIdentity {
    int a = -1;        // skeleton position of the minimal object Q
    OutModule v;       // the component as an Out_F(Q)-module
};
FactorIdentity identify_factor(const MackeyFunctorData& M, const CategoryAlgebraModule& mod,
                               const FactorView& factor);

struct VanishingReport {
    bool clause1 = true;  // Stab_P(^αV) = α(Q) and C_P(αQ) <= αQ at nonzero values
    bool clause2_applicable = false;
    bool clause2 = true;  // V = k: S(P) != 0 iff P F-conjugate to Q
    bool clause3_hypothesis = false;
    bool clause3 = true;  // O_p(Out) Sylow: S(P) != 0 iff P F-conjugate to Q
    bool clause4 = true;  // t^P_R r^P_R = |P:R| id (0 for proper R < P)
    bool ok() const {
        return clause1 && (!clause2_applicable || clause2) && (!clause3_hypothesis || clause3) &&
               clause4;
    }
};
VanishingReport vanishing_tests(const MackeyFunctorData& S, const OutModule& V);

}  // namespace fuslim
