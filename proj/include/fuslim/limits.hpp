#pragma once

// Exact higher limits over an orbit-category skeleton via the normalized
// cochain complex of composable non-identity morphism classes, with sparse
// differentials and exact F_p ranks.

#include <string>
#include <vector>

#include "fuslim/mackey.hpp"

namespace fuslim {

inline constexpr long kComplexDimCap = 2'000'000;

struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<SparseTriplet> t;
};

struct CochainComplex {
    uint32_t p = 2;
    int max_degree = 0;                  // cohomology valid through this degree
    std::vector<long> dims;              // dim C^n for 0 <= n <= max_degree+1
    std::vector<long> chain_counts;      // nondegenerate chains per degree
    std::vector<SparseMat> d;            // d[n]: C^n -> C^{n+1}, 0 <= n <= max_degree
};

// Builds C^0..C^{D+1} and d^0..d^D; verifies d∘d = 0.
CochainComplex build_complex(const ContravariantFunctorData& N, int max_degree,
                             long cap = kComplexDimCap);

struct CohomologyReport {
    int n = 0;                    // strict chain-length bound of the category
    std::vector<long> dims;       // dim lim^i for 0 <= i <= max_degree
    std::vector<long> chain_counts;
    std::vector<long> ranks;      // rank d^i
    bool sharp = true;            // all lim^i = 0 for i >= 1
};

CohomologyReport cohomology(const OrbitCategory& cat, const CochainComplex& cx);

// lim^0 computed directly as the compatible-families kernel.
long inverse_limit_dim(const ContravariantFunctorData& N);

struct SharpnessReport {
    int n = 0;
    int max_degree = 0;
    std::vector<long> dims;
    bool pass = false;          // lim^i = 0 for all 1 <= i <= max_degree
    std::string method = "cochain";
};

// requested_degree < 0 means "use n + 3"
SharpnessReport sharpness_report(const ContravariantFunctorData& N, int requested_degree = -1,
                                 long cap = kComplexDimCap);

// lim^0..lim^max_i through the iterated-cokernel shift: each lim^{i+1} N is
// read off as lim^i C(N) from the short exact sequence 0 -> N -> U*I(N) ->
// C(N) -> 0 with the middle term acyclic, so only equalizer kernels are ever
// computed. Requires a collection where Mackey functors are acyclic (the
// centric collection of a saturated system). verify_covers additionally runs
// verify_axioms on every Mackeyfication cover produced along the way.
std::vector<long> lims_via_shift(const ContravariantFunctorData& N, int max_i,
                                 bool verify_covers = false);

// sharpness via the shift method (for instances beyond the cochain cap)
SharpnessReport sharpness_report_shift(const ContravariantFunctorData& N,
                                       int requested_degree = -1, bool verify_covers = false);

}  // namespace fuslim
