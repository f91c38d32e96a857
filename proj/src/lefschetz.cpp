#include "lefz/lefschetz.hpp"

#include <map>
#include <mutex>

namespace lefz::lef {

int Filtration::rank_level(int r) const {
    if (r < rmin) return 0;
    if (r > rmax) r = rmax;
    return F[r - rmin].ncols;
}

const IntMat& Filtration::level(int r) const {
    if (r < rmin || r > rmax) throw MathError("Filtration::level: out of range");
    return F[r - rmin];
}

IntMat Filtration::gr_complement(int r) const {
    const IntMat& A = adapted.at(r - rmin);
    return A.cols_range(rank_level(r - 1), rank_level(r));
}

bool Filtration::member(int r, const std::vector<Int>& x) const {
    if (r < rmin) {
        for (auto& v : x)
            if (v != 0) return false;
        return true;
    }
    if (r >= rmax) return true;
    return level_solver[r - rmin]->contains(x);
}

std::vector<Int> Filtration::gr_coords(int r, const std::vector<Int>& x) const {
    auto c = adapted_solver.at(r - rmin)->solve(x);
    if (!c) throw MathError("gr_coords: element not in F_r");
    return std::vector<Int>(c->begin() + rank_level(r - 1), c->begin() + rank_level(r));
}

int Filtration::level_of(const std::vector<Int>& x) const {
    for (int r = rmin; r <= rmax; ++r)
        if (member(r, x)) return r;
    throw MathError("level_of: element outside the top level");
}

namespace {

Filtration compute_filtration(int g, int k) {
    Filtration f;
    f.g = g;
    f.k = k;
    f.rmin = std::max(0, k - g);
    f.rmax = k / 2;
    f.deg_basis = op::basis_deg(g, 2 * g, k);
    const int n = f.dim();
    for (int r = f.rmin; r <= f.rmax; ++r) {
        int e = g - k + 1 + r;
        IntMat Fr;
        if (k + 2 * e > 2 * g) {
            Fr = IntMat::identity(n);
        } else {
            Fr = la::kernel_lattice(op::wedge_omega_matrix(g, e, k));
        }
        if (r > f.rmin) {
            // adapted basis: extend the previous one by a complement
            la::Solver sol(Fr);
            auto C = sol.solve_mat(f.F.back());
            if (!C) throw TheoremViolation("filtration: F_{r-1} not contained in F_r");
            IntMat K = la::complement(*C).K;
            IntMat compl_cols = Fr * K;
            f.adapted.push_back(IntMat::hcat(f.adapted.back(), compl_cols));
        } else {
            f.adapted.push_back(Fr);
        }
        f.F.push_back(std::move(Fr));
    }
    for (size_t i = 0; i < f.F.size(); ++i) {
        f.level_solver.push_back(std::make_unique<la::Solver>(f.F[i]));
        f.adapted_solver.push_back(std::make_unique<la::Solver>(f.adapted[i]));
    }
    return f;
}

std::mutex filt_mu;
std::map<std::pair<int, int>, std::unique_ptr<Filtration>> filt_cache;

}  // namespace

const Filtration& filtration(int g, int k) {
    std::unique_lock lk(filt_mu);
    auto key = std::make_pair(g, k);
    auto it = filt_cache.find(key);
    if (it != filt_cache.end()) return *it->second;
    lk.unlock();
    auto f = std::make_unique<Filtration>(compute_filtration(g, k));
    lk.lock();
    auto [it2, fresh] = filt_cache.try_emplace(key, std::move(f));
    return *it2->second;
}

long primitive_rank(int g, int k) {
    if (k < 0 || k > g) return 0;
    return (binom(2 * g, k) - binom(2 * g, k - 2)).convert_to<long>();
}

IntMat primitive_basis(int g, int k) {
    int n = (int)op::basis_deg(g, 2 * g, k).size();
    if (k > g || k < 0) return IntMat(n, 0);
    if (k <= 1) return IntMat::identity(n);
    return la::kernel_lattice(op::wedge_omega_matrix(g, g - k + 1, k));
}

IntMat graded_matrix(const Filtration& src, int r,
                     const std::function<Multivector(const Multivector&)>& fn,
                     const Filtration& tgt, int s, bool check_lower) {
    Ring zz = Ring::integers();
    const int gg = src.g;
    auto apply_col = [&](const IntMat& cols, int j) {
        Multivector x = op::from_coords(gg, 2 * gg, zz, src.deg_basis, cols.col(j));
        return op::coords_in(fn(x), tgt.deg_basis);
    };
    if (check_lower && r - 1 >= src.rmin && r - 1 <= src.rmax) {
        const IntMat& low = src.level(r - 1);
        for (int j = 0; j < low.ncols; ++j)
            if (!tgt.member(s - 1, apply_col(low, j)))
                throw TheoremViolation("graded_matrix: map does not respect the filtration");
    }
    IntMat comp = src.gr_complement(r);
    IntMat out(tgt.gr_rank(s), comp.ncols);
    for (int j = 0; j < comp.ncols; ++j) {
        auto y = apply_col(comp, j);
        if (!tgt.member(s, y))
            throw TheoremViolation("graded_matrix: image leaves F_s");
        auto c = tgt.gr_coords(s, y);
        for (int i = 0; i < out.nrows; ++i) out.at(i, j) = c[i];
    }
    return out;
}

GradedIsoCert graded_iso_check(int g, int k, int r) {
    GradedIsoCert cert{g, k, r, 0, false, false};
    const Filtration& fk = filtration(g, k);
    const Filtration& ft = filtration(g, k - 2 * r);
    Ring zz = Ring::integers();
    Multivector wr = omega_power(g, r, 2 * g, zz);
    IntMat M = graded_matrix(fk, r, [&](const Multivector& x) { return contract_form(wr, x); }, ft, 0);
    cert.rank = fk.gr_rank(r);
    cert.rank_formula_ok = cert.rank == primitive_rank(g, k - 2 * r);
    if (M.nrows == M.ncols) {
        auto inv = la::smith_invariants(M);
        cert.unimodular = (int)inv.size() == M.nrows;
        for (const Int& d : inv)
            if (d != 1) cert.unimodular = false;
    }
    return cert;
}

GradedConstantReport graded_constants(int g, int k, int r, int j) {
    GradedConstantReport rep{g, k, r, j, 0, 0};
    rep.wedge_constant = ((j % 2) ? -1 : 1) * binom(g - k + r, j);
    rep.contract_constant = binom(r + j, j);
    const Filtration& fa = filtration(g, k + 2 * r);
    const Filtration& fb = filtration(g, k + 2 * r + 2 * j);
    const Filtration& fp = filtration(g, k);
    Ring zz = Ring::integers();
    Multivector wj = omega_power(g, j, 2 * g, zz);
    Multivector wr = omega_power(g, r, 2 * g, zz);
    Multivector wrj = omega_power(g, r + j, 2 * g, zz);

    IntMat W = graded_matrix(fa, r, [&](const Multivector& x) { return wedge(wj, x); }, fb, r + j);
    IntMat I1 = graded_matrix(fa, r, [&](const Multivector& x) { return contract_form(wr, x); }, fp, 0);
    IntMat I2 = graded_matrix(fb, r + j, [&](const Multivector& x) { return contract_form(wrj, x); }, fp, 0);
    IntMat C = graded_matrix(fb, r + j, [&](const Multivector& x) { return contract_form(wj, x); }, fa, r);

    rep.wedge_ok = (I2 * W) == I1.scaled(rep.wedge_constant);
    rep.contract_ok = (I1 * C) == I2.scaled(rep.contract_constant);
    return rep;
}

bool divisibility_check(int g, int k, int r) {
    Ring zz = Ring::integers();
    IntMat P = primitive_basis(g, k);
    const Filtration& fh = filtration(g, k + 2 * r);
    Multivector wr = omega_power(g, r, 2 * g, zz);
    Int c = binom(g - k, r);
    Int want = ((r % 2) ? -1 : 1) * c;
    auto pb = op::basis_deg(g, 2 * g, k);
    for (int j = 0; j < P.ncols; ++j) {
        Multivector x = op::from_coords(g, 2 * g, zz, pb, P.col(j));
        Multivector w = wedge(wr, x);
        if (contract_form(wr, w) != x * want) return false;
        auto gc = fh.gr_coords(r, op::coords_in(w, fh.deg_basis));
        for (const Int& v : gc)
            if (v % c != 0) return false;
    }
    return true;
}

std::vector<Splitting> split_first_half(int g) {
    std::vector<Splitting> out;
    Ring zz = Ring::integers();
    for (int k = 0; k <= g; ++k) {
        Splitting s;
        s.g = g;
        s.k = k;
        s.rmin = 0;
        const Filtration& fk = filtration(g, k);
        if (k <= 1) {
            s.G.push_back(IntMat::identity(fk.dim()));
            out.push_back(std::move(s));
            continue;
        }
        s.G.push_back(primitive_basis(g, k));  // G_0 = P^k
        IntMat Mi = op::contract_omega_matrix(g, 1, k);
        for (int r = 1; r <= k / 2; ++r) {
            // X = iota_omega^{-1}(G_{r-1} Lambda^{k-2})
            const IntMat& Glow = out[k - 2].G.at(r - 1);
            IntMat X;
            if (Glow.ncols == (int)op::basis_deg(g, 2 * g, k - 2).size()) {
                X = IntMat::identity(fk.dim());
            } else {
                IntMat P = la::complement(Glow).P;
                X = la::kernel_lattice(P * Mi);
            }
            // section of iota_{omega_r}: X -> P^{k-2r}
            IntMat T_full = op::contract_omega_matrix(g, r, k) * X;
            IntMat Pb = primitive_basis(g, k - 2 * r);
            auto T = la::Solver(Pb).solve_mat(T_full);
            if (!T) throw TheoremViolation("split_first_half: contraction leaves the primitive subspace");
            auto S = la::Solver(*T).solve_mat(IntMat::identity(Pb.ncols));
            if (!S) throw TheoremViolation("split_first_half: contraction section does not exist");
            IntMat Gr = X * *S;
            // F_r = G_r (+) F_{r-1}
            if (!la::lattice_equal(IntMat::hcat(fk.level(r - 1), Gr), fk.level(r)) ||
                fk.level(r - 1).ncols + Gr.ncols != fk.level(r).ncols)
                throw TheoremViolation("split_first_half: G_r is not a complement of F_{r-1}");
            // compatibility iota_omega(G_r) in G_{r-1}
            if (!la::Solver(Glow).solve_mat(Mi * Gr))
                throw TheoremViolation("split_first_half: iota_omega(G_r) not in G_{r-1}");
            s.G.push_back(std::move(Gr));
        }
        out.push_back(std::move(s));
    }
    return out;
}

Splitting split_across_midpoint(int g, int k, const Splitting& base) {
    if (base.k != g - k) throw MathError("split_across_midpoint: base splitting must live on Lambda^{g-k}");
    if (k == 0) return base;
    Splitting s;
    s.g = g;
    s.k = g + k;
    s.rmin = k;
    const Filtration& fk = filtration(g, g + k);
    IntMat Mk = op::contract_omega_matrix(g, k, g + k);
    for (int r = 0; 2 * r <= g - k; ++r) {
        const IntMat& Glow = base.G.at(r);
        IntMat X;
        if (Glow.ncols == (int)op::basis_deg(g, 2 * g, g - k).size()) {
            X = IntMat::identity(fk.dim());
        } else {
            IntMat P = la::complement(Glow).P;
            X = la::kernel_lattice(P * Mk);
        }
        IntMat T_full = op::contract_omega_matrix(g, r + k, g + k) * X;
        IntMat Pb = primitive_basis(g, g - k - 2 * r);
        auto T = la::Solver(Pb).solve_mat(T_full);
        if (!T) throw TheoremViolation("split_across_midpoint: contraction leaves the primitive subspace");
        auto S = la::Solver(*T).solve_mat(IntMat::identity(Pb.ncols));
        if (!S) throw TheoremViolation("split_across_midpoint: contraction section does not exist");
        IntMat Gr = X * *S;
        int lvl = r + k;
        IntMat prev = (lvl - 1 < fk.rmin) ? IntMat(fk.dim(), 0) : fk.level(lvl - 1);
        if (!la::lattice_equal(IntMat::hcat(prev, Gr), fk.level(lvl)) ||
            prev.ncols + Gr.ncols != fk.level(lvl).ncols)
            throw TheoremViolation("split_across_midpoint: G_{r+k} is not a complement of F_{r+k-1}");
        if (!la::Solver(Glow).solve_mat(Mk * Gr))
            throw TheoremViolation("split_across_midpoint: iota_{omega_k}(G) not in base G");
        s.G.push_back(std::move(Gr));
    }
    return s;
}

namespace {
std::mutex split_mu;
std::map<int, std::unique_ptr<SplittingSet>> split_cache;
}  // namespace

const SplittingSet& splittings(int g) {
    std::unique_lock lk(split_mu);
    auto it = split_cache.find(g);
    if (it != split_cache.end()) return *it->second;
    lk.unlock();
    auto ss = std::make_unique<SplittingSet>();
    ss->first_half = split_first_half(g);
    ss->above_middle = split_across_midpoint(g, 1, ss->first_half[g - 1]);
    lk.lock();
    auto [it2, fresh] = split_cache.try_emplace(g, std::move(ss));
    return *it2->second;
}

bool ObstructionReport::ok() const {
    if (!iota_top_ok || !content_ok) return false;
    for (auto& [k, b] : class_ok)
        if (!b) return false;
    return true;
}

ObstructionReport obstruction_checks(int g) {
    ObstructionReport rep;
    Ring zz = Ring::integers();
    Multivector w = omega_form(g, 2 * g, zz);
    Multivector wg = omega_power(g, g, 2 * g, zz);
    Multivector wg1 = omega_power(g, g - 1, 2 * g, zz);
    rep.iota_top_ok = contract_form(w, wg) == -wg1;
    rep.content_ok = wg1.content() == 1;
    for (int k = 1; k < g; ++k) {
        const Filtration& f = filtration(g, 2 * k);
        auto gc = f.gr_coords(k, op::coords_in(omega_power(g, k, 2 * g, zz), f.deg_basis));
        bool ok = gc.size() == 1 && boost::multiprecision::abs(gc[0]) == binom(g, k);
        rep.class_ok.emplace_back(k, ok);
    }
    return rep;
}

}  // namespace lefz::lef
