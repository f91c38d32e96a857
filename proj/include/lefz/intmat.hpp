#pragma once

#include <vector>

#include "lefz/ring.hpp"
#include <nlohmann/json_fwd.hpp>

namespace lefz {

// Dense matrix of arbitrary-precision integers, row-major.
struct IntMat {
    int nrows = 0, ncols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : nrows(r), ncols(c), a(size_t(r) * size_t(c)) {}

    Int& at(int i, int j) { return a[size_t(i) * ncols + j]; }
    const Int& at(int i, int j) const { return a[size_t(i) * ncols + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMat from_cols(int nrows, const std::vector<std::vector<Int>>& cols) {
        IntMat m(nrows, (int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j) {
            if ((int)cols[j].size() != nrows) throw MathError("from_cols: ragged column");
            for (int i = 0; i < nrows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::vector<Int> col(int j) const {
        std::vector<Int> v(nrows);
        for (int i = 0; i < nrows; ++i) v[i] = at(i, j);
        return v;
    }
    std::vector<Int> row(int i) const {
        std::vector<Int> v(ncols);
        for (int j = 0; j < ncols; ++j) v[j] = at(i, j);
        return v;
    }

    IntMat transpose() const {
        IntMat t(ncols, nrows);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMat cols_range(int j0, int j1) const {  // [j0, j1)
        IntMat m(nrows, j1 - j0);
        for (int i = 0; i < nrows; ++i)
            for (int j = j0; j < j1; ++j) m.at(i, j - j0) = at(i, j);
        return m;
    }

    static IntMat hcat(const IntMat& a, const IntMat& b) {
        if (a.nrows != b.nrows && a.ncols != 0 && b.ncols != 0)
            throw MathError("hcat: row mismatch");
        int nr = a.ncols ? a.nrows : b.nrows;
        IntMat m(nr, a.ncols + b.ncols);
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < a.ncols; ++j) m.at(i, j) = a.at(i, j);
            for (int j = 0; j < b.ncols; ++j) m.at(i, a.ncols + j) = b.at(i, j);
        }
        return m;
    }

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        if (x.ncols != y.nrows) throw MathError("matmul: shape mismatch");
        IntMat z(x.nrows, y.ncols);
        for (int i = 0; i < x.nrows; ++i)
            for (int k = 0; k < x.ncols; ++k) {
                const Int& v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.ncols; ++j) {
                    const Int& w = y.at(k, j);
                    if (w != 0) z.at(i, j) += v * w;
                }
            }
        return z;
    }

    std::vector<Int> mul_vec(const std::vector<Int>& v) const {
        if ((int)v.size() != ncols) throw MathError("mul_vec: shape mismatch");
        std::vector<Int> r(nrows);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j)
                if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    bool operator==(const IntMat& o) const { return nrows == o.nrows && ncols == o.ncols && a == o.a; }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& v : a) if (v != 0) return false;
        return true;
    }

    IntMat scaled(const Int& s) const {
        IntMat m = *this;
        for (auto& v : m.a) v *= s;
        return m;
    }

    friend IntMat operator-(const IntMat& x, const IntMat& y) {
        if (x.nrows != y.nrows || x.ncols != y.ncols) throw MathError("matsub: shape mismatch");
        IntMat z = x;
        for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
        return z;
    }
};

// JSON interchange format: {rows, cols, entries: [[i, j, "value"]]} with
// values as decimal strings; zero entries omitted.
nlohmann::json matrix_to_json(const IntMat& m);
IntMat matrix_from_json(const nlohmann::json& j);

}  // namespace lefz
