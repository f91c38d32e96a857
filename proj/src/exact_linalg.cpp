#include "lefz/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace lefz {

nlohmann::json matrix_to_json(const IntMat& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < m.nrows; ++i)
        for (int j = 0; j < m.ncols; ++j)
            if (m.at(i, j) != 0) entries.push_back({i, j, m.at(i, j).str()});
    return {{"rows", m.nrows}, {"cols", m.ncols}, {"entries", entries}};
}

IntMat matrix_from_json(const nlohmann::json& j) {
    IntMat m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (auto& e : j.at("entries")) {
        int r = e.at(0).get<int>(), c = e.at(1).get<int>();
        m.at(r, c) = Int(e.at(2).get<std::string>());
    }
    return m;
}

}  // namespace lefz

namespace lefz::la {

// ---- AbelianInvariants -------------------------------------------------------

AbelianInvariants AbelianInvariants::from_cyclic(long free_rank, const std::vector<Int>& orders) {
    // split into prime powers, then rebuild the invariant-factor chain
    std::map<Int, std::vector<Int>> by_prime;  // prime -> prime powers (descending later)
    long extra_free = 0;
    for (const Int& o : orders) {
        Int v = o < 0 ? Int(-o) : o;
        if (v == 0) { ++extra_free; continue; }
        if (v == 1) continue;
        for (const Int& pw : prime_power_parts(v)) {
            Int p = pw;
            // recover the prime underlying the power
            for (Int d = 2; d * d <= p; ++d)
                if (p % d == 0) { p = d; break; }
            by_prime[p].push_back(pw);
        }
    }
    size_t chain_len = 0;
    for (auto& [p, v] : by_prime) {
        std::sort(v.begin(), v.end(), std::greater<Int>());
        chain_len = std::max(chain_len, v.size());
    }
    std::vector<Int> chain(chain_len, 1);
    for (auto& [p, v] : by_prime)
        for (size_t i = 0; i < v.size(); ++i) chain[i] *= v[i];  // chain[0] = largest factor
    std::reverse(chain.begin(), chain.end());
    AbelianInvariants r;
    r.free_rank = free_rank + extra_free;
    r.torsion = std::move(chain);
    return r;
}

AbelianInvariants AbelianInvariants::direct_sum(const AbelianInvariants& a, const AbelianInvariants& b) {
    std::vector<Int> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return from_cyclic(a.free_rank + b.free_rank, orders);
}

std::vector<Int> AbelianInvariants::primary() const {
    std::vector<Int> out;
    for (const Int& d : torsion)
        for (const Int& pw : prime_power_parts(d)) out.push_back(pw);
    std::sort(out.begin(), out.end());
    return out;
}

std::string AbelianInvariants::str() const {
    if (free_rank == 0 && torsion.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    auto pr = primary();
    for (size_t i = 0; i < pr.size();) {
        size_t j = i;
        while (j < pr.size() && pr[j] == pr[i]) ++j;
        if (!first) os << " + ";
        os << "Z/" << pr[i].str();
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

nlohmann::json AbelianInvariants::to_json() const {
    nlohmann::json tor = nlohmann::json::array();
    for (const Int& pw : primary()) tor.push_back((long)pw.convert_to<long>());
    return {{"free_rank", free_rank}, {"torsion", tor}};
}

AbelianInvariants mod_invariants(long dim, const Int& m) {
    if (m == 0) return AbelianInvariants::free(dim);
    if (m == 1 || m == -1 || dim == 0) return {};
    return AbelianInvariants::from_cyclic(0, std::vector<Int>(dim, m < 0 ? Int(-m) : m));
}

// ---- Hermite normal form -----------------------------------------------------

RowHNF row_hnf(IntMat A, bool with_u) {
    const int m = A.nrows, n = A.ncols;
    RowHNF out;
    out.U = with_u ? IntMat::identity(m) : IntMat();
    int r = 0;
    auto row_sub = [&](int i, int t, const Int& q) {
        if (q == 0) return;
        for (int j = 0; j < n; ++j)
            if (A.at(t, j) != 0) A.at(i, j) -= q * A.at(t, j);
        if (with_u)
            for (int j = 0; j < m; ++j)
                if (out.U.at(t, j) != 0) out.U.at(i, j) -= q * out.U.at(t, j);
    };
    auto row_swap = [&](int i, int t) {
        if (i == t) return;
        for (int j = 0; j < n; ++j) std::swap(A.at(i, j), A.at(t, j));
        if (with_u)
            for (int j = 0; j < m; ++j) std::swap(out.U.at(i, j), out.U.at(t, j));
    };
    auto row_neg = [&](int i) {
        for (int j = 0; j < n; ++j) A.at(i, j) = -A.at(i, j);
        if (with_u)
            for (int j = 0; j < m; ++j) out.U.at(i, j) = -out.U.at(i, j);
    };
    for (int col = 0; col < n && r < m; ++col) {
        while (true) {
            int best = -1;
            for (int i = r; i < m; ++i) {
                if (A.at(i, col) == 0) continue;
                if (best < 0 || boost::multiprecision::abs(A.at(i, col)) <
                                    boost::multiprecision::abs(A.at(best, col)))
                    best = i;
            }
            if (best < 0) break;
            row_swap(best, r);
            bool clean = true;
            for (int i = r + 1; i < m; ++i) {
                if (A.at(i, col) == 0) continue;
                Int q = A.at(i, col) / A.at(r, col);
                row_sub(i, r, q);
                if (A.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (A.at(r, col) == 0) continue;
        if (A.at(r, col) < 0) row_neg(r);
        for (int i = 0; i < r; ++i) {
            Int q = floordiv(A.at(i, col), A.at(r, col));
            row_sub(i, r, q);
        }
        out.pivot_col.push_back(col);
        ++r;
    }
    out.rank = r;
    out.H = std::move(A);
    return out;
}

IntMat lattice_canonical(const IntMat& A) {
    RowHNF h = row_hnf(A.transpose(), false);
    IntMat out(A.nrows, h.rank);
    for (int j = 0; j < h.rank; ++j)
        for (int i = 0; i < A.nrows; ++i) out.at(i, j) = h.H.at(j, i);
    return out;
}

bool lattice_equal(const IntMat& A, const IntMat& B) {
    if (A.nrows != B.nrows) return false;
    return lattice_canonical(A) == lattice_canonical(B);
}

IntMat kernel_lattice(const IntMat& A) {
    RowHNF h = row_hnf(A.transpose(), true);
    int nullity = A.ncols - h.rank;
    IntMat out(A.ncols, nullity);
    for (int k = 0; k < nullity; ++k)
        for (int j = 0; j < A.ncols; ++j) out.at(j, k) = h.U.at(h.rank + k, j);
    return out;
}

// ---- Solver -------------------------------------------------------------------

Solver::Solver(const IntMat& A) : nrows_(A.nrows), ncols_(A.ncols) {
    RowHNF h = row_hnf(A.transpose(), true);
    rank_ = h.rank;
    h_ = std::move(h.H);
    u_ = std::move(h.U);
    pivot_col_ = std::move(h.pivot_col);
}

std::optional<std::vector<Int>> Solver::solve(const std::vector<Int>& b) const {
    if ((int)b.size() != nrows_) throw MathError("Solver: size mismatch");
    std::vector<Int> res = b, y(rank_);
    for (int j = 0; j < rank_; ++j) {
        int pr = pivot_col_[j];
        const Int& piv = h_.at(j, pr);
        if (res[pr] % piv != 0) return std::nullopt;
        y[j] = res[pr] / piv;
        if (y[j] != 0)
            for (int c = 0; c < nrows_; ++c)
                if (h_.at(j, c) != 0) res[c] -= y[j] * h_.at(j, c);
    }
    for (const Int& v : res)
        if (v != 0) return std::nullopt;
    std::vector<Int> x(ncols_);
    for (int j = 0; j < rank_; ++j)
        if (y[j] != 0)
            for (int i = 0; i < ncols_; ++i)
                if (u_.at(j, i) != 0) x[i] += y[j] * u_.at(j, i);
    return x;
}

std::optional<IntMat> Solver::solve_mat(const IntMat& B) const {
    IntMat X(ncols_, B.ncols);
    for (int j = 0; j < B.ncols; ++j) {
        auto x = solve(B.col(j));
        if (!x) return std::nullopt;
        for (int i = 0; i < ncols_; ++i) X.at(i, j) = (*x)[i];
    }
    return X;
}

// ---- Smith normal form ---------------------------------------------------------

namespace {

struct SmithWork {
    IntMat S, U, V, Uinv;
    int m, n;

    explicit SmithWork(const IntMat& A)
        : S(A), U(IntMat::identity(A.nrows)), V(IntMat::identity(A.ncols)),
          Uinv(IntMat::identity(A.nrows)), m(A.nrows), n(A.ncols) {}

    void row_sub(int i, int t, const Int& q) {  // row_i -= q * row_t
        if (q == 0) return;
        for (int j = 0; j < n; ++j)
            if (S.at(t, j) != 0) S.at(i, j) -= q * S.at(t, j);
        for (int j = 0; j < m; ++j)
            if (U.at(t, j) != 0) U.at(i, j) -= q * U.at(t, j);
        for (int r = 0; r < m; ++r)
            if (Uinv.at(r, i) != 0) Uinv.at(r, t) += q * Uinv.at(r, i);
    }
    void col_sub(int j, int t, const Int& q) {  // col_j -= q * col_t
        if (q == 0) return;
        for (int i = 0; i < m; ++i)
            if (S.at(i, t) != 0) S.at(i, j) -= q * S.at(i, t);
        for (int i = 0; i < n; ++i)
            if (V.at(i, t) != 0) V.at(i, j) -= q * V.at(i, t);
    }
    void row_swap(int i, int t) {
        if (i == t) return;
        for (int j = 0; j < n; ++j) std::swap(S.at(i, j), S.at(t, j));
        for (int j = 0; j < m; ++j) std::swap(U.at(i, j), U.at(t, j));
        for (int r = 0; r < m; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, t));
    }
    void col_swap(int j, int t) {
        if (j == t) return;
        for (int i = 0; i < m; ++i) std::swap(S.at(i, j), S.at(i, t));
        for (int i = 0; i < n; ++i) std::swap(V.at(i, j), V.at(i, t));
    }
    void row_neg(int i) {
        for (int j = 0; j < n; ++j) S.at(i, j) = -S.at(i, j);
        for (int j = 0; j < m; ++j) U.at(i, j) = -U.at(i, j);
        for (int r = 0; r < m; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
    }

    // clear row t and column t, leaving the pivot alone (entries outside the
    // t-th row/col of the active block are untouched unless the dance moves them)
    void pivot_dance(int t) {
        while (true) {
            bool changed = false;
            while (true) {  // column t
                int best = -1;
                for (int i = t; i < m; ++i) {
                    if (S.at(i, t) == 0) continue;
                    if (best < 0 || boost::multiprecision::abs(S.at(i, t)) <
                                        boost::multiprecision::abs(S.at(best, t)))
                        best = i;
                }
                if (best < 0) return;  // entire column empty: caller re-picks pivot
                row_swap(best, t);
                bool clean = true;
                for (int i = t + 1; i < m; ++i) {
                    if (S.at(i, t) == 0) continue;
                    row_sub(i, t, S.at(i, t) / S.at(t, t));
                    if (S.at(i, t) != 0) clean = false;
                }
                if (clean) break;
                changed = true;
            }
            while (true) {  // row t
                int best = -1;
                for (int j = t; j < n; ++j) {
                    if (S.at(t, j) == 0) continue;
                    if (best < 0 || boost::multiprecision::abs(S.at(t, j)) <
                                        boost::multiprecision::abs(S.at(t, best)))
                        best = j;
                }
                col_swap(best, t);
                bool clean = true;
                for (int j = t + 1; j < n; ++j) {
                    if (S.at(t, j) == 0) continue;
                    col_sub(j, t, S.at(t, j) / S.at(t, t));
                    if (S.at(t, j) != 0) clean = false;
                }
                if (clean) break;
                changed = true;
            }
            // the column may have been refilled by column operations
            bool col_clean = true;
            for (int i = t + 1; i < m; ++i)
                if (S.at(i, t) != 0) col_clean = false;
            if (col_clean && !changed) return;
            if (col_clean) return;
        }
    }
};

}  // namespace

SmithForm smith(const IntMat& A) {
    SmithWork w(A);
    int t = 0;
    const int lim = std::min(w.m, w.n);
    while (t < lim) {
        // min-abs pivot over the active block, first-index tie-break
        int pi = -1, pj = -1;
        for (int i = t; i < w.m; ++i)
            for (int j = t; j < w.n; ++j) {
                if (w.S.at(i, j) == 0) continue;
                if (pi < 0 || boost::multiprecision::abs(w.S.at(i, j)) <
                                  boost::multiprecision::abs(w.S.at(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        w.row_swap(pi, t);
        w.col_swap(pj, t);
        w.pivot_dance(t);
        ++t;
    }
    // divisibility fixup
    bool stable = false;
    while (!stable) {
        stable = true;
        for (int i = 0; i + 1 < t && stable; ++i)
            for (int j = i + 1; j < t && stable; ++j)
                if (w.S.at(j, j) % w.S.at(i, i) != 0) {
                    w.col_sub(i, j, Int(-1));  // col_i += col_j
                    w.pivot_dance(i);
                    stable = false;
                }
    }
    for (int i = 0; i < t; ++i)
        if (w.S.at(i, i) < 0) w.row_neg(i);

    SmithForm out;
    for (int i = 0; i < t; ++i) out.invariants.push_back(w.S.at(i, i));
    out.U = std::move(w.U);
    out.V = std::move(w.V);
    out.Uinv = std::move(w.Uinv);
    // re-verify on construction
    IntMat check = out.U * A * out.V;
    for (int i = 0; i < A.nrows; ++i)
        for (int j = 0; j < A.ncols; ++j) {
            Int want = (i == j && i < t) ? out.invariants[i] : Int(0);
            if (check.at(i, j) != want) throw MathError("smith: transform verification failed");
        }
    for (size_t i = 0; i + 1 < out.invariants.size(); ++i)
        if (out.invariants[i + 1] % out.invariants[i] != 0)
            throw MathError("smith: divisibility chain violated");
    return out;
}

namespace {

// classical destructive invariant-factor extraction, min-abs pivoting
std::vector<Int> classic_invariants(IntMat M) {
    const int m = M.nrows, n = M.ncols;
    std::vector<Int> diag;
    int t = 0;
    auto row_sub = [&](int i, int tt, const Int& q) {
        if (q == 0) return;
        for (int j = tt; j < n; ++j)
            if (M.at(tt, j) != 0) M.at(i, j) -= q * M.at(tt, j);
    };
    auto col_sub = [&](int j, int tt, const Int& q) {
        if (q == 0) return;
        for (int i = tt; i < m; ++i)
            if (M.at(i, tt) != 0) M.at(i, j) -= q * M.at(i, tt);
    };
    while (t < std::min(m, n)) {
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (M.at(i, j) == 0) continue;
                if (pi < 0 || boost::multiprecision::abs(M.at(i, j)) <
                                  boost::multiprecision::abs(M.at(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        for (int j = t; j < n; ++j) std::swap(M.at(pi, j), M.at(t, j));
        for (int i = t; i < m; ++i) std::swap(M.at(i, pj), M.at(i, t));
        while (true) {
            bool clean = true;
            while (true) {
                int best = -1;
                for (int i = t; i < m; ++i) {
                    if (M.at(i, t) == 0) continue;
                    if (best < 0 || boost::multiprecision::abs(M.at(i, t)) <
                                        boost::multiprecision::abs(M.at(best, t)))
                        best = i;
                }
                for (int j = t; j < n; ++j) std::swap(M.at(best, j), M.at(t, j));
                bool ok = true;
                for (int i = t + 1; i < m; ++i) {
                    if (M.at(i, t) == 0) continue;
                    row_sub(i, t, M.at(i, t) / M.at(t, t));
                    if (M.at(i, t) != 0) ok = false;
                }
                if (ok) break;
                clean = false;
            }
            while (true) {
                int best = -1;
                for (int j = t; j < n; ++j) {
                    if (M.at(t, j) == 0) continue;
                    if (best < 0 || boost::multiprecision::abs(M.at(t, j)) <
                                        boost::multiprecision::abs(M.at(t, best)))
                        best = j;
                }
                for (int i = t; i < m; ++i) std::swap(M.at(i, best), M.at(i, t));
                bool ok = true;
                for (int j = t + 1; j < n; ++j) {
                    if (M.at(t, j) == 0) continue;
                    col_sub(j, t, M.at(t, j) / M.at(t, t));
                    if (M.at(t, j) != 0) ok = false;
                }
                if (ok) break;
                clean = false;
            }
            bool col_ok = true;
            for (int i = t + 1; i < m; ++i)
                if (M.at(i, t) != 0) col_ok = false;
            if (col_ok && clean) break;
            if (col_ok) break;
        }
        Int d = M.at(t, t);
        diag.push_back(d < 0 ? Int(-d) : d);
        ++t;
    }
    return diag;
}

std::vector<Int> chain_fixup(std::vector<Int> d) {
    for (auto& v : d)
        if (v < 0) v = -v;
    bool stable = false;
    while (!stable) {
        stable = true;
        std::sort(d.begin(), d.end());
        for (size_t i = 0; i + 1 < d.size(); ++i)
            if (d[i + 1] % d[i] != 0) {
                Int g = boost::multiprecision::gcd(d[i], d[i + 1]);
                Int l = d[i] / g * d[i + 1];
                d[i] = g;
                d[i + 1] = l;
                stable = false;
            }
    }
    return d;
}

}  // namespace

std::vector<Int> smith_invariants(IntMat A) {
    const int m = A.nrows, n = A.ncols;
    if (m == 0 || n == 0) return {};
    std::vector<char> alive_r(m, 1), alive_c(n, 1);
    std::vector<int> rnnz(m, 0), cnnz(n, 0);
    using Cand = std::tuple<long, int, int>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
    auto is_unit = [](const Int& v) { return v == 1 || v == -1; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (A.at(i, j) != 0) {
                ++rnnz[i];
                ++cnnz[j];
            }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (is_unit(A.at(i, j)))
                heap.emplace(long(rnnz[i] - 1) * (cnnz[j] - 1), i, j);
    long ones = 0;
    while (!heap.empty()) {
        auto [score, pi, pj] = heap.top();
        heap.pop();
        if (!alive_r[pi] || !alive_c[pj] || !is_unit(A.at(pi, pj))) continue;
        long fresh = long(rnnz[pi] - 1) * (cnnz[pj] - 1);
        if (fresh > score) {
            heap.emplace(fresh, pi, pj);
            continue;
        }
        const int sign = A.at(pi, pj) == 1 ? 1 : -1;
        for (int r = 0; r < m; ++r) {
            if (!alive_r[r] || r == pi || A.at(r, pj) == 0) continue;
            Int q = A.at(r, pj) * sign;
            for (int c = 0; c < n; ++c) {
                if (!alive_c[c] || A.at(pi, c) == 0) continue;
                Int& tgt = A.at(r, c);
                bool was = tgt != 0;
                tgt -= q * A.at(pi, c);
                bool now = tgt != 0;
                if (was != now) {
                    int d = now ? 1 : -1;
                    rnnz[r] += d;
                    cnnz[c] += d;
                }
                if (now && is_unit(tgt)) heap.emplace(long(rnnz[r] - 1) * (cnnz[c] - 1), r, c);
            }
        }
        // retire pivot row and column
        for (int c = 0; c < n; ++c)
            if (alive_c[c] && A.at(pi, c) != 0) --cnnz[c];
        alive_r[pi] = 0;
        alive_c[pj] = 0;
        ++ones;
    }
    // residual without unit entries: classical finish
    std::vector<int> rows, cols;
    for (int i = 0; i < m; ++i)
        if (alive_r[i] && rnnz[i] > 0) rows.push_back(i);
    for (int j = 0; j < n; ++j)
        if (alive_c[j] && cnnz[j] > 0) cols.push_back(j);
    std::vector<Int> diag(ones, 1);
    if (!rows.empty() && !cols.empty()) {
        IntMat R((int)rows.size(), (int)cols.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) R.at((int)i, (int)j) = A.at(rows[i], cols[j]);
        for (const Int& d : classic_invariants(std::move(R))) diag.push_back(d);
    }
    return chain_fixup(std::move(diag));
}

int rank_of(const IntMat& A) { return row_hnf(A.transpose(), false).rank; }

AbelianInvariants cokernel(const IntMat& A) {
    std::vector<Int> inv = smith_invariants(A);
    AbelianInvariants r = AbelianInvariants::from_cyclic(A.nrows - (long)inv.size(), inv);
    return r;
}

AbelianInvariants homology(const IntMat& A, const IntMat& B) {
    if (A.ncols != B.nrows) throw MathError("homology: shape mismatch");
    if (A.ncols <= 512 && !(A * B).is_zero()) throw MathError("homology: not a chain complex");
    long nullity = A.ncols - rank_of(A);
    std::vector<Int> inv = smith_invariants(B);
    long free = nullity - (long)inv.size();
    if (free < 0) throw MathError("homology: not a chain complex (rank overflow)");
    return AbelianInvariants::from_cyclic(free, inv);
}

bool is_saturated(const IntMat& A) {
    for (const Int& d : smith_invariants(A))
        if (d != 1) return false;
    return true;
}

SaturatedComplement complement(const IntMat& B) {
    const int D = B.nrows, d = B.ncols;
    SmithForm sf = smith(B);
    if ((int)sf.invariants.size() != d) throw MathError("complement: basis is not independent");
    for (const Int& v : sf.invariants)
        if (v != 1) throw MathError("complement: lattice is not saturated");
    SaturatedComplement out;
    out.K = IntMat(D, D - d);
    for (int j = 0; j < D - d; ++j)
        for (int i = 0; i < D; ++i) out.K.at(i, j) = sf.Uinv.at(i, d + j);
    out.P = IntMat(D - d, D);
    for (int i = 0; i < D - d; ++i)
        for (int j = 0; j < D; ++j) out.P.at(i, j) = sf.U.at(d + i, j);
    return out;
}

}  // namespace lefz::la
