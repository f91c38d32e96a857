#pragma once

#include <optional>

#include "lefz/intmat.hpp"

namespace lefz::la {

// Isomorphism type of a finitely generated abelian group.  Torsion is kept
// internally as an invariant-factor chain (entries >= 2, d1 | d2 | ...);
// primary() emits the prime-power decomposition used for reporting.
struct AbelianInvariants {
    long free_rank = 0;
    std::vector<Int> torsion;

    static AbelianInvariants free(long r) { return {r, {}}; }
    // normalize an arbitrary multiset of cyclic orders (0 = Z, 1 dropped)
    static AbelianInvariants from_cyclic(long free_rank, const std::vector<Int>& orders);
    static AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b);

    std::vector<Int> primary() const;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool torsion_free() const { return torsion.empty(); }

    std::string str() const;  // e.g. "Z^5 + Z/2^3" (exponent = multiplicity)
    nlohmann::json to_json() const;

    bool operator==(const AbelianInvariants& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }
};

// invariants of P/(m) where P is free of rank `dim`: m=0 -> Z^dim, m=1 -> 0
AbelianInvariants mod_invariants(long dim, const Int& m);

// ---- Hermite normal form ----------------------------------------------------
// Row-style HNF: H = U*A with U unimodular, H in canonical upper echelon form
// (positive pivots, entries above a pivot reduced into [0, pivot)).
struct RowHNF {
    IntMat H, U;
    int rank = 0;
    std::vector<int> pivot_col;
};
RowHNF row_hnf(IntMat A, bool with_u);

// canonical form of the column span of A (trimmed HNF of A^T, transposed back)
IntMat lattice_canonical(const IntMat& A);
bool lattice_equal(const IntMat& A, const IntMat& B);

// basis of the (saturated) integer kernel {v : Av = 0}, columns
IntMat kernel_lattice(const IntMat& A);

// ---- integer solving --------------------------------------------------------
// Prepared solver for A x = b over Z.  Deterministic: free coordinates are 0.
class Solver {
public:
    explicit Solver(const IntMat& A);
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;
    // solves for every column; nullopt if any column has no integer solution
    std::optional<IntMat> solve_mat(const IntMat& B) const;
    bool contains(const std::vector<Int>& b) const { return solve(b).has_value(); }
    int rank() const { return rank_; }
    int nrows() const { return nrows_; }

private:
    int nrows_, ncols_, rank_;
    IntMat h_;  // row HNF of A^T  (h_ = u_ * A^T)
    IntMat u_;
    std::vector<int> pivot_col_;
};

// ---- Smith normal form ------------------------------------------------------
struct SmithForm {
    std::vector<Int> invariants;  // nonzero invariant factors d1 | d2 | ...
    IntMat U, V;                  // unimodular, U*A*V = diag(invariants, 0...)
    IntMat Uinv;                  // inverse of U (tracked alongside)
};

// Full SNF with transforms; U*A*V is re-verified against the diagonal on
// construction and a MathError is thrown on mismatch.
SmithForm smith(const IntMat& A);

// invariant factors only (unit-pivot sweep + classical finish); destructive
std::vector<Int> smith_invariants(IntMat A);

int rank_of(const IntMat& A);

// invariants of Z^rows / colspan(A)
AbelianInvariants cokernel(const IntMat& A);

// invariants of ker(A)/im(B) for a chain B, A with A*B = 0:
//   torsion = invariant factors of B, free = nullity(A) - rank(B)
AbelianInvariants homology(const IntMat& A, const IntMat& B);

// true iff colspan(A) is a saturated (primitive) lattice
bool is_saturated(const IntMat& A);

// ---- saturated sublattice helpers -------------------------------------------
// For B (D x d) with saturated column span: K (D x (D-d)) completing B to a
// unimodular basis of Z^D, and P ((D-d) x D) with ker(P) = colspan(B), so P
// computes coordinates in the quotient Z^D / colspan(B).
struct SaturatedComplement {
    IntMat K, P;
};
SaturatedComplement complement(const IntMat& B);

}  // namespace lefz::la
