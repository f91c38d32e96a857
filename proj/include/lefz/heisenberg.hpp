#pragma once

#include "lefz/lefschetz.hpp"

namespace lefz::hb {

// homology of the integer Heisenberg group N_g, degrees 0..2g+1
struct HeisenbergHomology {
    int g = 0;
    std::string route;
    std::vector<la::AbelianInvariants> H;

    bool operator==(const HeisenbergHomology& o) const { return g == o.g && H == o.H; }
};

// short exact sequence route: H_k = coker(iota: L^{k+1} -> L^{k-1}) (+) Z^{rank ker}
HeisenbergHomology gysin_homology(int g);

// closed cohomology formula, converted to homology by duality
HeisenbergHomology lee_packer_formula(int g);
la::AbelianInvariants lee_packer_cohomology(int g, int k);

// filtration route: explicit splitting-compatible blocks below the middle,
// dual/Ext bookkeeping above it
struct FiltrationRouteReport {
    HeisenbergHomology groups;
    bool blocks_match_formula = true;  // per-level cokernels equal P^{k-2r-1}/(r+1)
    bool uct_consistent = true;        // k > g assembled values match duality + UCT
    bool equivariance_ok = true;       // graded iso commutes with sample transvections
    bool kernels_saturated = true;
};
FiltrationRouteReport filtration_subquotients(int g, std::uint64_t seed);

bool poincare_duality_ok(const HeisenbergHomology& h);
bool euler_characteristic_zero(const HeisenbergHomology& h);

// Gram matrix of (x,y) -> coefficient of the top form in x ^ y ^ omega_{g-k} on P^k
bool primitive_pairing_unimodular(int g, int k);

// multiset of torsion prime powers across all degrees
std::vector<Int> total_torsion(const HeisenbergHomology& h);

}  // namespace lefz::hb
