#include "lefz/fpmat.hpp"

namespace lefz::la {

FpMat FpMat::from_int(const IntMat& m, long p) {
    FpMat r(p, m.nrows, m.ncols);
    for (int i = 0; i < m.nrows; ++i)
        for (int j = 0; j < m.ncols; ++j)
            r.at(i, j) = (long)floormod(m.at(i, j), Int(p)).convert_to<long>();
    return r;
}

FpMat FpMat::mul(const FpMat& o) const {
    if (ncols != o.nrows || p != o.p) throw MathError("FpMat::mul: shape/field mismatch");
    FpMat z(p, nrows, o.ncols);
    for (int i = 0; i < nrows; ++i)
        for (int k = 0; k < ncols; ++k) {
            long v = at(i, k);
            if (!v) continue;
            for (int j = 0; j < o.ncols; ++j) z.at(i, j) = (z.at(i, j) + v * o.at(k, j)) % p;
        }
    return z;
}

FpMat FpMat::transpose() const {
    FpMat t(p, ncols, nrows);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) t.at(j, i) = at(i, j);
    return t;
}

namespace {
long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
}
}  // namespace

std::vector<int> FpMat::rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int pr = -1;
        for (int i = r; i < nrows; ++i)
            if (at(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < ncols; ++j) std::swap(at(pr, j), at(r, j));
        long inv = inv_mod(at(r, c), p);
        for (int j = 0; j < ncols; ++j) at(r, j) = at(r, j) * inv % p;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || !at(i, c)) continue;
            long f = at(i, c);
            for (int j = 0; j < ncols; ++j) at(i, j) = ((at(i, j) - f * at(r, j)) % p + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int FpMat::rank() const {
    FpMat c = *this;
    return (int)c.rref().size();
}

FpMat FpMat::kernel() const {
    FpMat c = *this;
    std::vector<int> piv = c.rref();
    std::vector<char> is_piv(ncols, 0);
    for (int cpos : piv) is_piv[cpos] = 1;
    FpMat k(p, ncols, ncols - (int)piv.size());
    int out = 0;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        k.at(f, out) = 1;
        for (size_t r = 0; r < piv.size(); ++r)
            k.at(piv[r], out) = (p - c.at((int)r, f)) % p;
        ++out;
    }
    return k;
}

FpMat FpMat::column_space() const {
    FpMat t = transpose();
    std::vector<int> piv = t.rref();
    FpMat out(p, nrows, (int)piv.size());
    for (int j = 0; j < (int)piv.size(); ++j)
        for (int i = 0; i < nrows; ++i) out.at(i, j) = t.at(j, i);
    return out;
}

std::optional<std::vector<long>> FpMat::solve(const std::vector<long>& b) const {
    FpMat aug(p, nrows, ncols + 1);
    for (int i = 0; i < nrows; ++i) {
        for (int j = 0; j < ncols; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, ncols) = ((b[i] % p) + p) % p;
    }
    std::vector<int> piv = aug.rref();
    std::vector<long> x(ncols, 0);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == ncols) return std::nullopt;  // pivot in the augmented column
        x[piv[r]] = aug.at((int)r, ncols);
    }
    return x;
}

// ---- F2 ----------------------------------------------------------------------

F2Mat F2Mat::from_int(const IntMat& m) {
    F2Mat r(m.nrows, m.ncols);
    for (int i = 0; i < m.nrows; ++i)
        for (int j = 0; j < m.ncols; ++j)
            if (floormod(m.at(i, j), Int(2)) == 1) r.set(i, j, true);
    return r;
}

F2Mat F2Mat::identity(int n) {
    F2Mat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Mat F2Mat::mul(const F2Mat& o) const {
    if (ncols != o.nrows) throw MathError("F2Mat::mul: shape mismatch");
    F2Mat z(nrows, o.ncols);
    for (int i = 0; i < nrows; ++i) {
        auto* zi = z.row(i);
        const auto* ri = row(i);
        for (int k = 0; k < ncols; ++k)
            if ((ri[k / 64] >> (k % 64)) & 1) {
                const auto* ok = o.row(k);
                for (int w = 0; w < z.words; ++w) zi[w] ^= ok[w];
            }
    }
    return z;
}

F2Mat F2Mat::transpose() const {
    F2Mat t(ncols, nrows);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j)
            if (get(i, j)) t.set(j, i, true);
    return t;
}

std::vector<int> F2Mat::rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int pr = -1;
        for (int i = r; i < nrows; ++i)
            if (get(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int w = 0; w < words; ++w) std::swap(row(pr)[w], row(r)[w]);
        for (int i = 0; i < nrows; ++i)
            if (i != r && get(i, c)) xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int F2Mat::rank() const {
    F2Mat c = *this;
    return (int)c.rref().size();
}

F2Mat F2Mat::kernel() const {
    F2Mat c = *this;
    std::vector<int> piv = c.rref();
    std::vector<char> is_piv(ncols, 0);
    for (int cp : piv) is_piv[cp] = 1;
    F2Mat k(ncols, ncols - (int)piv.size());
    int out = 0;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        k.set(f, out, true);
        for (size_t r = 0; r < piv.size(); ++r)
            if (c.get((int)r, f)) k.set(piv[r], out, true);
        ++out;
    }
    return k;
}

F2Mat F2Mat::column_space() const {
    F2Mat t = transpose();
    std::vector<int> piv = t.rref();
    F2Mat out(nrows, (int)piv.size());
    for (int j = 0; j < (int)piv.size(); ++j)
        for (int i = 0; i < nrows; ++i)
            if (t.get(j, i)) out.set(i, j, true);
    return out;
}

bool F2Mat::reduce_against_rref(const std::vector<int>& pivots, std::vector<std::uint64_t>& v) const {
    for (size_t r = 0; r < pivots.size(); ++r) {
        int c = pivots[r];
        if ((v[c / 64] >> (c % 64)) & 1) {
            const auto* rr = row((int)r);
            for (int w = 0; w < words; ++w) v[w] ^= rr[w];
        }
    }
    for (auto w : v)
        if (w) return false;
    return true;
}

}  // namespace lefz::la
