#pragma once

#include <memory>

#include "lefz/operators.hpp"

namespace lefz::lef {

// Lefschetz filtration of Lambda^k(Z^{2g}):
//   F_r = { a : omega^{g-k+1+r} ^ a = 0 },
// computed as a saturated kernel lattice of the divided-power wedge matrix.
// Valid levels run from rmin = max(0, k-g) to rmax = floor(k/2); F_{rmin-1} = 0.
// An adapted basis of F_r extends the adapted basis of F_{r-1}, so the trailing
// columns represent gr_r = F_r/F_{r-1} and quotient coordinates are exact.
struct Filtration {
    int g = 0, k = 0, rmin = 0, rmax = -1;
    std::vector<IntMat> F;                          // level bases, index r - rmin
    std::vector<IntMat> adapted;                    // adapted bases, same indexing
    std::vector<std::unique_ptr<la::Solver>> level_solver;
    std::vector<std::unique_ptr<la::Solver>> adapted_solver;
    std::vector<std::uint64_t> deg_basis;           // monomial basis of Lambda^k

    int dim() const { return (int)deg_basis.size(); }
    int rank_level(int r) const;                    // 0 below rmin, full above rmax
    int gr_rank(int r) const { return rank_level(r) - rank_level(r - 1); }
    const IntMat& level(int r) const;               // valid levels only
    IntMat gr_complement(int r) const;              // trailing adapted columns
    bool member(int r, const std::vector<Int>& x) const;
    // coordinates in gr_r (throws if x is not in F_r)
    std::vector<Int> gr_coords(int r, const std::vector<Int>& x) const;
    // smallest valid level containing x (rmax is guaranteed)
    int level_of(const std::vector<Int>& x) const;
};

const Filtration& filtration(int g, int k);  // memoized, thread-safe

// saturated basis of P^k = F_0 Lambda^k (empty for k > g)
IntMat primitive_basis(int g, int k);
long primitive_rank(int g, int k);  // C(2g,k) - C(2g,k-2), 0 outside 0..g

// Matrix of the map induced by `fn` from gr_r(src) to gr_s(tgt); verifies that
// complement vectors land in F_s and (optionally) that F_{r-1} lands in F_{s-1}.
IntMat graded_matrix(const Filtration& src, int r,
                     const std::function<Multivector(const Multivector&)>& fn,
                     const Filtration& tgt, int s, bool check_lower = true);

struct GradedIsoCert {
    int g, k, r;
    long rank;
    bool rank_formula_ok, unimodular;
    bool ok() const { return rank_formula_ok && unimodular; }
};
// iota_{omega_r}: gr_r Lambda^k -> P^{k-2r} is a unimodular isomorphism
GradedIsoCert graded_iso_check(int g, int k, int r);

struct GradedConstantReport {
    int g, k, r, j;
    Int wedge_constant;     // (-1)^j C(g-k+r, j)
    Int contract_constant;  // C(r+j, j)
    bool wedge_ok = false, contract_ok = false;
    bool ok() const { return wedge_ok && contract_ok; }
};
GradedConstantReport graded_constants(int g, int k, int r, int j);

// [omega_r ^ x] is divisible by C(g-k, r) in gr_r, and
// iota_{omega_r}(omega_r ^ x) = (-1)^r C(g-k, r) x for primitive x
bool divisibility_check(int g, int k, int r);

// Z-splitting G_r of the filtration on Lambda^k: F_r = G_r (+) F_{r-1}
struct Splitting {
    int g = 0, k = 0, rmin = 0;
    std::vector<IntMat> G;  // index r - rmin
    const IntMat& level(int r) const { return G.at(r - rmin); }
    int levels() const { return (int)G.size(); }
};

// splittings of Lambda^0..Lambda^g with iota_omega(G_r Λ^k) in G_{r-1} Λ^{k-2}
std::vector<Splitting> split_first_half(int g);
// splitting of Lambda^{g+k} with iota_{omega_k}(G_{r+k}) in G_r Lambda^{g-k}
Splitting split_across_midpoint(int g, int k, const Splitting& base);

struct SplittingSet {
    std::vector<Splitting> first_half;  // k = 0..g
    Splitting above_middle;             // Lambda^{g+1}, compatible with Lambda^{g-1}
};
const SplittingSet& splittings(int g);  // memoized, thread-safe

struct ObstructionReport {
    bool iota_top_ok = false;   // iota_omega(omega_g) = -omega_{g-1}
    bool content_ok = false;    // gcd of coefficients of omega_{g-1} is 1
    std::vector<std::pair<int, bool>> class_ok;  // |gr_k class of omega_k| = C(g,k)
    bool ok() const;
};
ObstructionReport obstruction_checks(int g);

}  // namespace lefz::lef
