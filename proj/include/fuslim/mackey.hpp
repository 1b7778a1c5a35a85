#pragma once

// Mackey functors over an orbit-category skeleton: bivariant matrix data,
// axiom verification (identity, functoriality, isomorphism condition, Mackey
// decomposition over truncated double cosets), the concrete H^0/H^1 and
// fixed-point functors, restriction to centrics, and the r-then-t criterion
// for restrictions staying Mackey.

#include <string>
#include <vector>

#include "fuslim/burnside.hpp"
#include "fuslim/fp.hpp"
#include "fuslim/fusion.hpp"

namespace fuslim {

struct MackeyFunctorData {
    const OrbitCategory* cat = nullptr;
    uint32_t p = 2;
    std::vector<int> dims;  // per skeleton object
    // contra[a][b][cls]: M*(class): M(b) -> M(a);  cov[a][b][cls]: M_*: M(a) -> M(b)
    std::vector<std::vector<std::vector<FpMatrix>>> contra, cov;
    bool verified = false;

    int dim_at(int obj) const { return dims[cat->rep_pos(obj)]; }
    // transported structure maps between arbitrary filtered objects
    FpMatrix r(int P, int Q) const;         // M(P) -> M(Q), Q <= P
    FpMatrix t(int P, int Q) const;         // M(Q) -> M(P), Q <= P
    FpMatrix iso(const Morphism& f) const;  // M(src f) -> M(img f)
};

struct ContravariantFunctorData {
    const OrbitCategory* cat = nullptr;
    uint32_t p = 2;
    std::vector<int> dims;
    std::vector<std::vector<std::vector<FpMatrix>>> contra;

    int dim_at(int obj) const { return dims[cat->rep_pos(obj)]; }
    FpMatrix action(const Morphism& f, int tgt_obj) const;  // N(tgt) -> N(src f)
    bool is_functorial() const;  // identities + contravariant multiplicativity
};

ContravariantFunctorData contravariant_part(const MackeyFunctorData& M);

void allocate_functor_slots(const OrbitCategory& cat,
                            std::vector<std::vector<std::vector<FpMatrix>>>& slots);

struct AxiomFailure {
    std::string axiom;
    int P = -1, Q = -1, R = -1;  // lattice objects involved
    std::string detail;
};

struct AxiomReport {
    bool structural_ok = true;
    std::vector<AxiomFailure> failures;
    bool ok() const { return structural_ok && failures.empty(); }
};

struct VerifyOptions {
    int max_failures = 16;
    bool nested_transitivity = true;
};

AxiomReport verify_axioms(const MackeyFunctorData& M, VerifyOptions opt = {});

// M(P) = F_p, r = iso = id, t^P_Q = |P:Q| mod p.
MackeyFunctorData h0_functor(const OrbitCategory& cat);

// M(P) = Hom(P, F_p); restriction/isomorphisms by precomposition, transfer by
// the coset-transversal formula evaluated on generators.
MackeyFunctorData h1_functor(const OrbitCategory& cat);

// Fixed points of the permutation module F_p[G/H] (G the fusion system's
// ambient group), built with least-element realizers. Satisfies the classical
// group-level Mackey formula (see classical_mackey_check) but is NOT in
// general a functor on orbit-category classes; use representable_functor for
// honest members of Mack(X).
MackeyFunctorData fixed_point_functor(const OrbitCategory& cat, const Subgroup& H);

// Brute-force check of the classical formula res^P_Q tr^P_R =
// Σ_x tr^Q_{Q∩xR} res c_x for fixed points of F_p[G/H], maps indexed by
// group elements (not classes), over all nested triples in the filter.
bool classical_mackey_check(const OrbitCategory& cat, const Subgroup& H);

// The free (representable) module k Hom_{D^X}(Z, -): the category-algebra
// analogue of a permutation module; Mackey by construction.
MackeyFunctorData representable_functor(const OrbitCategory& cat, int z_obj);

// Reindex data over O(F) to the centric skeleton (Mackey flag cleared).
MackeyFunctorData restrict_to_centrics(const MackeyFunctorData& M, const OrbitCategory& centric);
ContravariantFunctorData restrict_to_centrics(const ContravariantFunctorData& N,
                                              const OrbitCategory& centric);

struct Criterion45Report {
    bool ok = true;
    std::vector<std::pair<int, int>> witnesses;  // (P, R) with nonzero composite
};

// Whether t^R_{P∩R} ∘ r^P_{P∩R} = 0 for all centric P, R with non-centric
// intersection (the sufficient condition for the restriction to stay Mackey).
Criterion45Report check_criterion_45(const MackeyFunctorData& M);

}  // namespace fuslim
