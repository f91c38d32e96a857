#pragma once

#include <cstdint>
#include <vector>

#include "lefz/intmat.hpp"

namespace lefz::la {

// Dense matrix over F_p for small prime p.
struct FpMat {
    long p = 2;
    int nrows = 0, ncols = 0;
    std::vector<long> a;  // canonical residues in [0, p)

    FpMat() = default;
    FpMat(long p_, int r, int c) : p(p_), nrows(r), ncols(c), a(size_t(r) * c, 0) {}
    static FpMat from_int(const IntMat& m, long p);

    long& at(int i, int j) { return a[size_t(i) * ncols + j]; }
    long at(int i, int j) const { return a[size_t(i) * ncols + j]; }

    static FpMat identity(long p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    FpMat mul(const FpMat& o) const;
    FpMat transpose() const;
    bool operator==(const FpMat& o) const { return p == o.p && nrows == o.nrows && ncols == o.ncols && a == o.a; }

    // reduced row echelon form (in place); returns pivot columns
    std::vector<int> rref();
    int rank() const;
    // columns form a basis of {v : Av = 0}
    FpMat kernel() const;
    // column space basis (as columns)
    FpMat column_space() const;
    // solve Ax = b; empty optional if unsolvable
    std::optional<std::vector<long>> solve(const std::vector<long>& b) const;
};

// Dense F_2 matrix with 64-bit packed rows.
struct F2Mat {
    int nrows = 0, ncols = 0, words = 0;
    std::vector<std::uint64_t> bits;

    F2Mat() = default;
    F2Mat(int r, int c) : nrows(r), ncols(c), words((c + 63) / 64), bits(size_t(r) * words, 0) {}
    static F2Mat from_int(const IntMat& m);
    static F2Mat identity(int n);

    bool get(int i, int j) const { return (bits[size_t(i) * words + j / 64] >> (j % 64)) & 1; }
    void set(int i, int j, bool v) {
        std::uint64_t& w = bits[size_t(i) * words + j / 64];
        std::uint64_t m = std::uint64_t(1) << (j % 64);
        if (v) w |= m; else w &= ~m;
    }
    std::uint64_t* row(int i) { return &bits[size_t(i) * words]; }
    const std::uint64_t* row(int i) const { return &bits[size_t(i) * words]; }
    void xor_row(int dst, int src) {
        auto *d = row(dst);
        auto *s = row(src);
        for (int w = 0; w < words; ++w) d[w] ^= s[w];
    }

    F2Mat mul(const F2Mat& o) const;
    F2Mat transpose() const;
    bool operator==(const F2Mat& o) const { return nrows == o.nrows && ncols == o.ncols && bits == o.bits; }
    bool is_zero() const {
        for (auto w : bits) if (w) return false;
        return true;
    }

    std::vector<int> rref();  // in place; returns pivot columns
    int rank() const;
    F2Mat kernel() const;     // columns = nullspace basis
    F2Mat column_space() const;

    // row-space membership helpers against an rref matrix
    // reduce v (length ncols, packed) in place; returns true if reduced to zero
    bool reduce_against_rref(const std::vector<int>& pivots, std::vector<std::uint64_t>& v) const;
};

}  // namespace lefz::la
