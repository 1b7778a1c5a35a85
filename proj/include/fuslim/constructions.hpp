#pragma once

// Builders for the named groups: the rank-two maximal-class 3-groups
// B(3,r;0,γ,0), extraspecial p^{1+2}_+, the dihedral/semidihedral/quaternion
// 2-groups, and the order-p^{p+3} group of the H^1 counterexample, together
// with their structure checks.

#include <memory>
#include <string>

#include "fuslim/fp.hpp"
#include "fuslim/fusion.hpp"
#include "fuslim/group.hpp"

namespace fuslim {

struct B3rGroup {
    std::shared_ptr<const Group> G;
    int r = 0;
    int gamma = 0;
    long m11, m12, m21, m22;     // the action matrix M^{r,γ}
    int ord1 = 0, ord2 = 0;      // orders of s_1, s_2
    elt s1 = 0, s2 = 0, s = 0;   // distinguished generators
    std::vector<elt> gamma1;     // the characteristic abelian subgroup
    std::vector<elt> zb;         // Z(B)
    elt z_generator = 0;         // the stated generator of Z(B)
};

B3rGroup build_b3r(int r, int gamma);

struct B3rReport {
    bool legal = true;
    bool matrix_order3 = true;        // M^3 = 1 modulo the generator orders
    bool gamma1_abelian_rank2 = true;
    bool gamma1_unique_abelian = true;  // unique abelian subgroup of its order
    bool contains_derived = true;
    bool action_matches = true;       // s s_i s^-1 follows the matrix columns
    bool center_as_stated = true;
    bool d1 = true;                   // P <= γ1 centric iff P = γ1
    bool d2_contains_center = true;   // nontrivial K = P∩γ1 contains Z(B)
    bool d2_rank_one = true;          // K of 3-rank one equals Z(B)
    bool d2_centric = true;           // P ⊄ γ1 centric iff K nontrivial
    bool cor62 = true;                // the F-centric classification
    bool ok() const {
        return legal && matrix_order3 && gamma1_abelian_rank2 && gamma1_unique_abelian &&
               contains_derived && action_matches && center_as_stated && d1 &&
               d2_contains_center && d2_rank_one && d2_centric && cor62;
    }
};

// Exhaustive verification over the subgroup lattice; F defaults to the inner
// fusion system on B.
B3rReport check_b3r(const B3rGroup& B, const FusionSystem* F = nullptr);

// extraspecial p^{1+2}_+ of exponent p (p odd)
std::shared_ptr<const Group> build_extraspecial(uint32_t p);

enum class TwoGroupKind { Dihedral, Semidihedral, Quaternion };
std::shared_ptr<const Group> build_2group(TwoGroupKind kind, int order);

struct Example43 {
    uint32_t p = 2;
    std::shared_ptr<const Group> S;    // order p^{p+3}
    std::vector<elt> Q, P, U;          // the named subgroups
    FpMatrix A_super, A_sub;           // both Jordan-block orientations
    FpMatrix B_p;                      // the acting matrix (superdiagonal blocks)
    FpMatrix C_super, C_sub;           // I + A + ... + A^{p-1}
    std::vector<long> c_super, c_sub;  // rightmost columns, integral
    std::string convention;            // which orientation reproduces c_1 = p-1
    elt u = 0;                         // the witness element of U
};

Example43 build_example43(uint32_t p);

}  // namespace fuslim
