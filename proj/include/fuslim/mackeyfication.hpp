#pragma once

// The left adjoint I of the forgetful functor to contravariant parts:
// I(N)(P) = P-coinvariants of ⊕_{L<=P, L in X} N(L), with unit η, counit ε,
// the cokernel C(N), and the iterated-cokernel engine.

#include <memory>

#include "fuslim/mackey.hpp"

namespace fuslim {

struct IBuilderImpl;

struct MackeyficationResult {
    MackeyFunctorData I;
    std::vector<FpMatrix> eta;    // per skeleton object: N(rep) -> I(N)(rep)
    ContravariantFunctorData C;   // the cokernel of η
    std::shared_ptr<IBuilderImpl> impl;

    // ε_M-style evaluation needs per-object block data; exposed for tests
    FpMatrix pi(int P, int L) const;  // π^P_L : N(rep L) -> I(N)(rep P)
};

MackeyficationResult mackeyfy(const ContravariantFunctorData& N);

struct TriangleReport {
    bool eta_injective = true;
    bool dims_consistent = true;   // dim I = dim N + dim C at every object
    bool i_is_mackey = true;
    bool triangle_counit = true;   // U*ε ∘ ηU* = Id_{U*M}
    bool triangle_unit = true;     // εI ∘ Iη = Id_{I(N)}
    bool ok() const {
        return eta_injective && dims_consistent && i_is_mackey && triangle_counit &&
               triangle_unit;
    }
};

// both triangle identities for the adjunction, evaluated on a Mackey functor
TriangleReport counit_and_triangles(const MackeyFunctorData& M);

// C^i(N); C^0 = N
ContravariantFunctorData iterate_cokernel(const ContravariantFunctorData& N, int i);

// seeded pseudo-random contravariant functor: a quotient of a sum of
// orbit-category representables by a spun subfunctor
ContravariantFunctorData random_contravariant(const OrbitCategory& cat, uint64_t seed);

}  // namespace fuslim
