#include "lefz/operators.hpp"

#include <unordered_map>

namespace lefz::op {

std::vector<std::uint64_t> basis_all(int g, int ambient) {
    std::vector<std::uint64_t> out;
    if (ambient == 2 * g) {
        // indices 1..2g live at bits 1..2g; enumerate in ascending mask order
        std::uint64_t n = std::uint64_t(1) << (2 * g);
        out.reserve(n);
        for (std::uint64_t m = 0; m < n; ++m) out.push_back(m << 1);
    } else {
        std::uint64_t n = std::uint64_t(1) << (2 * g + 1);
        out.reserve(n);
        for (std::uint64_t m = 0; m < n; ++m) out.push_back(m);
    }
    return out;
}

std::vector<std::uint64_t> basis_deg(int g, int ambient, int k) {
    std::vector<std::uint64_t> out;
    if (k < 0 || k > ambient) return out;
    for (std::uint64_t m : basis_all(g, ambient))
        if (mono::degree(m) == k) out.push_back(m);
    return out;
}

std::vector<std::uint64_t> basis_parity(int g, int ambient, int parity) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m : basis_all(g, ambient))
        if ((mono::degree(m) & 1) == parity) out.push_back(m);
    return out;
}

namespace {
std::unordered_map<std::uint64_t, int> index_map(const std::vector<std::uint64_t>& basis) {
    std::unordered_map<std::uint64_t, int> idx;
    idx.reserve(basis.size() * 2);
    for (int i = 0; i < (int)basis.size(); ++i) idx.emplace(basis[i], i);
    return idx;
}
}  // namespace

IntMat matrix_of(const std::function<Multivector(const Multivector&)>& fn,
                 int g, int ambient,
                 const std::vector<std::uint64_t>& source,
                 const std::vector<std::uint64_t>& target) {
    auto idx = index_map(target);
    IntMat m((int)target.size(), (int)source.size());
    Ring zz = Ring::integers();
    for (int j = 0; j < (int)source.size(); ++j) {
        Multivector img = fn(Multivector::basis(g, ambient, zz, source[j]));
        for (auto& [mask, c] : img.terms) {
            auto it = idx.find(mask);
            if (it == idx.end()) throw MathError("matrix_of: image leaves the target space");
            m.at(it->second, j) = c;
        }
    }
    return m;
}

std::vector<Int> coords_in(const Multivector& x, const std::vector<std::uint64_t>& basis) {
    auto idx = index_map(basis);
    std::vector<Int> c(basis.size());
    for (auto& [mask, v] : x.terms) {
        auto it = idx.find(mask);
        if (it == idx.end()) throw MathError("coords_in: term outside basis");
        c[it->second] = v;
    }
    return c;
}

Multivector from_coords(int g, int ambient, const Ring& r,
                        const std::vector<std::uint64_t>& basis, const std::vector<Int>& c) {
    if (c.size() != basis.size()) throw MathError("from_coords: size mismatch");
    Multivector x(g, ambient, r);
    for (size_t i = 0; i < c.size(); ++i) x.add_term(basis[i], c[i]);
    return x;
}

IntMat wedge_omega_matrix(int g, int j, int k) {
    int amb = 2 * g;
    Multivector wj = omega_power(g, j, amb, Ring::integers());
    return matrix_of([&](const Multivector& x) { return wedge(wj, x); }, g, amb,
                     basis_deg(g, amb, k), basis_deg(g, amb, k + 2 * j));
}

IntMat contract_omega_matrix(int g, int j, int k) {
    int amb = 2 * g;
    Multivector wj = omega_power(g, j, amb, Ring::integers());
    return matrix_of([&](const Multivector& x) { return contract_form(wj, x); }, g, amb,
                     basis_deg(g, amb, k), basis_deg(g, amb, k - 2 * j));
}

IntMat star_matrix(int g, int k) {
    int amb = 2 * g;
    return matrix_of([&](const Multivector& x) { return star(x); }, g, amb,
                     basis_deg(g, amb, k), basis_deg(g, amb, 2 * g - k));
}

namespace {
Multivector contract_exp_apply(int g, const Multivector& x) {
    Multivector out = Multivector::zero(g, 2 * g, x.ring);
    for (int j = 1; j <= g; ++j)
        out += contract_form(omega_power(g, j, 2 * g, x.ring), x);
    return out;
}
Multivector wedge_exp_apply(int g, const Multivector& x) {
    Multivector out = Multivector::zero(g, 2 * g, x.ring);
    for (int j = 1; j <= g; ++j)
        out += wedge(omega_power(g, j, 2 * g, x.ring), x);
    return out;
}
}  // namespace

IntMat contract_exp_matrix(int g, int parity) {
    auto b = basis_parity(g, 2 * g, parity);
    return matrix_of([&](const Multivector& x) { return contract_exp_apply(g, x); }, g, 2 * g, b, b);
}

IntMat wedge_exp_matrix(int g, int parity) {
    auto b = basis_parity(g, 2 * g, parity);
    return matrix_of([&](const Multivector& x) { return wedge_exp_apply(g, x); }, g, 2 * g, b, b);
}

IntMat contract_omega_parity(int g, int parity) {
    auto b = basis_parity(g, 2 * g, parity);
    Multivector w = omega_form(g, 2 * g, Ring::integers());
    return matrix_of([&](const Multivector& x) { return contract_form(w, x); }, g, 2 * g, b, b);
}

IntMat wedge_omega_parity(int g, int parity) {
    auto b = basis_parity(g, 2 * g, parity);
    Multivector w = omega_form(g, 2 * g, Ring::integers());
    return matrix_of([&](const Multivector& x) { return wedge(w, x); }, g, 2 * g, b, b);
}

IntMat contract_exp_from_degree(int g, int k) {
    return matrix_of([&](const Multivector& x) { return contract_exp_apply(g, x); }, g, 2 * g,
                     basis_deg(g, 2 * g, k), basis_all(g, 2 * g));
}

IntMat operator_matrix(const std::string& name, int g, int k) {
    auto colon = name.find(':');
    std::string base = name.substr(0, colon);
    int j = colon == std::string::npos ? 1 : std::stoi(name.substr(colon + 1));
    if (base == "wedge-omega") return wedge_omega_matrix(g, j, k);
    if (base == "contract-omega") return contract_omega_matrix(g, j, k);
    if (base == "contract-exp") return contract_exp_from_degree(g, k);
    if (base == "wedge-exp") {
        return matrix_of([&](const Multivector& x) { return wedge_exp_apply(g, x); }, g, 2 * g,
                         basis_deg(g, 2 * g, k), basis_all(g, 2 * g));
    }
    if (base == "star") return star_matrix(g, k);
    throw MathError("operator_matrix: unknown operator '" + name + "'");
}

IntMat pushforward_matrix(int g, int ambient, const IntMat& T, int k) {
    if (T.nrows != ambient || T.ncols != ambient) throw MathError("pushforward: T must be ambient x ambient");
    Ring zz = Ring::integers();
    // images of basis vectors as degree-1 multivectors; index row offset when ambient = 2g
    int off = (ambient == 2 * g) ? 1 : 0;
    std::vector<Multivector> img;
    for (int c = 0; c < ambient; ++c) {
        Multivector v(g, ambient, zz);
        for (int r = 0; r < ambient; ++r) v.add_term(mono::bit(r + off), T.at(r, c));
        img.push_back(std::move(v));
    }
    auto fn = [&](const Multivector& x) {
        Multivector out(g, ambient, zz);
        for (auto& [mask, coef] : x.terms) {
            Multivector acc = Multivector::one(g, ambient, zz);
            std::uint64_t m = mask;
            while (m) {
                int t = __builtin_ctzll(m);
                m &= m - 1;
                acc = wedge(acc, img[t - off]);
                if (acc.is_zero()) break;
            }
            out += acc * coef;
        }
        return out;
    };
    auto b = basis_deg(g, ambient, k);
    return matrix_of(fn, g, ambient, b, b);
}

IntMat pushforward_parity(int g, int ambient, const IntMat& T, int parity) {
    IntMat full;  // assembled blockwise to keep basis order
    auto bp = basis_parity(g, ambient, parity);
    auto idx = index_map(bp);
    IntMat m((int)bp.size(), (int)bp.size());
    for (int k = parity; k <= ambient; k += 2) {
        IntMat blk = pushforward_matrix(g, ambient, T, k);
        auto bk = basis_deg(g, ambient, k);
        for (int j = 0; j < (int)bk.size(); ++j)
            for (int i = 0; i < (int)bk.size(); ++i)
                if (blk.at(i, j) != 0) m.at(idx.at(bk[i]), idx.at(bk[j])) = blk.at(i, j);
    }
    return m;
}

IntMat transvection(int g, int ambient, const std::vector<Int>& v, const Int& lambda) {
    if ((int)v.size() != 2 * g) throw MathError("transvection: v must have 2g coordinates");
    IntMat T = IntMat::identity(ambient);
    int off = (ambient == 2 * g) ? 0 : 1;  // row/col position of index i is i-1+off... e_i at i-1 when 2g
    // w_i = omega(e_i, v) for i = 1..2g
    std::vector<Int> w(2 * g);
    for (int i = 1; i <= 2 * g; ++i) {
        Int acc = 0;
        for (int j = 1; j <= 2 * g; ++j) {
            int pr = mono::omega_pair(i, j);
            if (pr) acc += pr * v[j - 1];
        }
        w[i - 1] = acc;
    }
    for (int c = 1; c <= 2 * g; ++c)
        for (int r = 1; r <= 2 * g; ++r)
            T.at(r - 1 + off, c - 1 + off) += lambda * w[c - 1] * v[r - 1];
    return T;
}

Multivector cup_contract(const Multivector& form, const Multivector& x) {
    form.check_space(x);
    Multivector out(x.g, x.ambient_dim, x.ring);
    for (auto& [tmask, tc] : form.terms) {
        if (mono::degree(tmask) != 3) throw MathError("cup_contract: form must be a 3-form");
        for (auto& [smask, sc] : x.terms) {
            if ((smask & tmask) != tmask) continue;
            // positional front-extraction sign
            int s = 0, pos_shift = 0;
            std::uint64_t t = tmask;
            int slot = 1;
            while (t) {
                int b = __builtin_ctzll(t);
                t &= t - 1;
                int pos = mono::count_below(smask, b) + 1;
                s += pos - slot;
                ++slot;
                (void)pos_shift;
            }
            int sign = (s & 1) ? -1 : +1;
            out.add_term(smask & ~tmask, tc * sc * sign);
        }
    }
    return out;
}

IntMat cup_contract_matrix(int g, const Multivector& form, int parity) {
    int amb = 2 * g + 1;
    auto src = basis_parity(g, amb, parity);
    auto tgt = basis_parity(g, amb, 1 - parity);
    return matrix_of([&](const Multivector& x) { return cup_contract(form, x); }, g, amb, src, tgt);
}

Multivector product_cup_form(int g, const Ring& ring) {
    Multivector f(g, 2 * g + 1, ring);
    for (int i = 1; i <= g; ++i)
        f.add_term(mono::bit(0) | mono::bit(2 * i - 1) | mono::bit(2 * i), 1);
    return f;
}

}  // namespace lefz::op
