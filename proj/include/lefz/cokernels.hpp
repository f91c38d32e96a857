#pragma once

#include "lefz/lefschetz.hpp"

namespace lefz::ck {

// coker(^omega_k: Lambda^{g-k} -> Lambda^{g+k}) versus (+)_r P^{g-k-2r}/C(r+k,k)
struct HardLefschetzReport {
    int g = 0, k = 0;
    la::AbelianInvariants computed;       // SNF of the wedge matrix
    la::AbelianInvariants computed_dual;  // SNF of the contraction matrix (duality cross-check)
    la::AbelianInvariants formula;
    std::vector<la::AbelianInvariants> per_level;
    bool ok() const { return computed == formula && computed_dual == formula; }
};
HardLefschetzReport hard_lefschetz_coker(int g, int k);

// ---- pair-free ring R_k = Z[v_1..v_k]/(v_i^2) ---------------------------------
// Elements are coefficient vectors indexed by subset masks of {0..k-1}.
namespace pairfree {
std::vector<Int> mul(int k, const std::vector<Int>& x, const std::vector<Int>& y);
IntMat mul_matrix(int k, const std::vector<Int>& poly);
std::vector<Int> omega(int k);            // v_1 + ... + v_k
std::vector<Int> exp_omega_minus_1(int k);  // every nonempty square-free monomial once
}  // namespace pairfree

struct PhiReport {
    int k = 0;
    IntMat phi;
    bool unimodular = false;
    bool squares_vanish = false;   // phi(v_i)^2 = 0
    bool maps_omega = false;       // phi(omega) = e^omega - 1
    bool intertwines = false;      // mul(e^omega-1) . phi = phi . mul(omega)
    bool ok() const { return unimodular && squares_vanish && maps_omega && intertwines; }
};
PhiReport pairfree_phi(int k);

// decomposition Lambda^*(Z^{2g}) = (+)_{S pair-free} V(S) and the contraction
// isomorphisms V(S) ~ V(empty) over Z^{2(g-|S|)}
struct PairFreeDecompReport {
    int g = 0;
    bool monomials_partition = false;
    bool dims_ok = false;  // sum over S of dim V(S) = 4^g
    bool wedge_preserves = false;
    bool contraction_iso_ok = false;  // intertwines mult. by the two omegas
    bool ok() const { return monomials_partition && dims_ok && wedge_preserves && contraction_iso_ok; }
};
PairFreeDecompReport pairfree_decomposition_check(int g);

// ---- coker(omega) vs coker(e^omega - 1) over Z --------------------------------
struct CokerCompareReport {
    int g = 0;
    la::AbelianInvariants coker_omega, coker_exp;              // contraction route (SNF)
    la::AbelianInvariants coker_omega_wedge, coker_exp_wedge;  // wedge route (duality)
    la::AbelianInvariants phi_route;                           // pair-free transport assembly
    bool kernels_equal_lattices = false;   // ker iota_omega = ker iota_{e^omega-1}
    bool kernel_is_primitive_sum = false;  // = (+)_{k<=g} P^k
    bool phi_blocks_match = false;         // per-block transport over each R_j
    bool ok() const {
        return coker_omega == coker_exp && coker_omega == phi_route &&
               coker_omega_wedge == coker_omega && coker_exp_wedge == coker_exp &&
               kernels_equal_lattices && kernel_is_primitive_sum && phi_blocks_match;
    }
};
CokerCompareReport coker_ker_compare(int g);

// exhaustive F_2 kernel-dimension comparison; smallest g where the kernels of
// iota_omega and iota_{e^omega-1} differ (-1 if none up to g_max)
struct F2KernelWitness {
    int smallest_g = -1;
    std::vector<std::array<long, 3>> dims;  // (g, dim ker omega, dim ker exp)
};
F2KernelWitness f2_kernel_witness(int g_max);

// ---- shifted Lefschetz filtration ---------------------------------------------
struct ShiftedGradedReport {
    int g = 0, k = 0;
    la::AbelianInvariants formula;  // (+)_{r=0}^k P^{g-k}/(r)
    la::AbelianInvariants omega_direct, omega_graded;
    la::AbelianInvariants exp_direct, exp_graded;
    bool stability_omega = false, stability_exp = false;  // preimage of curly-F_k equals curly-F_k
    bool parity_ok = false;
    bool ok() const {
        return omega_direct == formula && omega_graded == formula && exp_direct == formula &&
               exp_graded == formula && stability_omega && stability_exp && parity_ok;
    }
};
std::vector<ShiftedGradedReport> shifted_filtration(int g);

// ---- Touchard / Stirling conjugation -------------------------------------------
Int stirling2(int d, int k);

struct TouchardReport {
    int k = 0;
    IntMat D, E, phi;
    bool conj_ok = false;      // phi * E = D * phi with phi unimodular
    bool unimodular = false;
    bool stirling_ok = false;  // (l+1) S(d,l+1) = sum_i C(d,i) S(d-i,l)
    bool coker_ok = false;     // coker(D) = coker(E) = (+)_{r=0}^k Z/r
    bool ok() const { return conj_ok && unimodular && stirling_ok && coker_ok; }
};
TouchardReport touchard_conjugation(int k);

}  // namespace lefz::ck
