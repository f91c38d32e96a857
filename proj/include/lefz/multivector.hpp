#pragma once

#include <map>
#include <optional>
#include <sstream>

#include "lefz/ring.hpp"

namespace lefz {

// Basis monomials of Lambda^*(R^n) are encoded as bitmasks over the index set.
// Index i (1-based) lives at bit i; bit 0 is the extra index e^0 used for the
// (2g+1)-dimensional ambient space.  Iterating bits from low to high yields the
// indices in increasing order, and ascending mask value is the canonical basis
// order everywhere.
namespace mono {

inline int degree(std::uint64_t m) { return __builtin_popcountll(m); }

inline std::uint64_t bit(int index) { return std::uint64_t(1) << index; }

// number of elements of mask strictly below index i
inline int count_below(std::uint64_t mask, int i) {
    return __builtin_popcountll(mask & (bit(i) - 1));
}

// sign of e^A ^ e^B for disjoint masks: parity of inversions when the
// concatenated index list is sorted
inline int wedge_sign(std::uint64_t a, std::uint64_t b) {
    int inv = 0;
    std::uint64_t bb = b;
    while (bb) {
        int t = __builtin_ctzll(bb);
        bb &= bb - 1;
        inv += __builtin_popcountll(a >> (t + 1));
    }
    return (inv & 1) ? -1 : +1;
}

// symplectic pairing on basis indices: omega(e_{2i-1}, e_{2i}) = +1,
// omega(e_{2i}, e_{2i-1}) = -1, everything else (including index 0) pairs to 0
inline int omega_pair(int a, int b) {
    if (a >= 1 && b == a + 1 && (a & 1)) return +1;
    if (b >= 1 && a == b + 1 && (b & 1)) return -1;
    return 0;
}

inline int partner(int j) {
    if (j == 0) return -1;
    return (j & 1) ? j + 1 : j - 1;
}

// iota_{e^j}(e^S): at most one term survives.  Returns false if zero.
inline bool contract_index(int j, std::uint64_t s, std::uint64_t& out, int& coef) {
    int p = partner(j);
    if (p < 0 || !(s & bit(p))) return false;
    int sign = (count_below(s, p) & 1) ? -1 : +1;
    coef = sign * omega_pair(p, j);
    out = s & ~bit(p);
    return true;
}

// iota_{e^C}(e^S) with C = c_1 < ... < c_m: compose single contractions from
// the last factor inward (iota_{x^y} = iota_x after iota_y).
inline bool contract_mono(std::uint64_t c, std::uint64_t s, std::uint64_t& out, int& coef) {
    coef = 1;
    out = s;
    while (c) {
        int top = 63 - __builtin_clzll(c);
        c &= ~bit(top);
        std::uint64_t nxt;
        int cf;
        if (!contract_index(top, out, nxt, cf)) return false;
        out = nxt;
        coef *= cf;
    }
    return true;
}

std::string str(std::uint64_t m);  // "e{1,2}", "1" for the empty monomial

}  // namespace mono

// Sparse exterior-algebra element over an exact coefficient ring.  The genus g
// fixes the symplectic pairing; ambient_dim is 2g or 2g+1 (the latter adds the
// index 0, which pairs to zero with everything).  Inhomogeneous elements are
// first-class.  No zero coefficients are ever stored.
class Multivector {
public:
    int g = 0;
    int ambient_dim = 0;
    Ring ring;
    std::map<std::uint64_t, Int> terms;

    Multivector() = default;
    Multivector(int g_, int ambient, Ring r) : g(g_), ambient_dim(ambient), ring(std::move(r)) {
        if (ambient != 2 * g && ambient != 2 * g + 1)
            throw MathError("Multivector: ambient_dim must be 2g or 2g+1");
        if (ambient > 62) throw MathError("Multivector: ambient too large for mask encoding");
    }

    static Multivector zero(int g, int ambient, const Ring& r) { return Multivector(g, ambient, r); }
    static Multivector one(int g, int ambient, const Ring& r) {
        Multivector x(g, ambient, r);
        x.add_term(0, 1);
        return x;
    }
    static Multivector basis(int g, int ambient, const Ring& r, std::uint64_t mask) {
        Multivector x(g, ambient, r);
        x.add_term(mask, 1);
        return x;
    }

    std::uint64_t index_mask() const {
        // allowed indices: 1..2g, plus 0 when ambient is odd
        std::uint64_t m = (mono::bit(2 * g + 1) - 1) & ~std::uint64_t(1);
        if (ambient_dim == 2 * g + 1) m |= 1;
        return m;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(std::uint64_t mask, Int c) {
        if (mask & ~index_mask()) throw MathError("Multivector: monomial outside ambient space");
        c = ring.reduce(c);
        if (c == 0) return;
        auto it = terms.find(mask);
        if (it == terms.end()) {
            terms.emplace(mask, std::move(c));
        } else {
            it->second = ring.reduce(it->second + c);
            if (it->second == 0) terms.erase(it);
        }
    }

    Int coeff(std::uint64_t mask) const {
        auto it = terms.find(mask);
        return it == terms.end() ? Int(0) : it->second;
    }

    // set of degrees present; homogeneity is a queryable property
    std::optional<int> degree() const {
        std::optional<int> d;
        for (auto& [m, c] : terms) {
            int dm = mono::degree(m);
            if (!d) d = dm;
            else if (*d != dm) return std::nullopt;
        }
        return d;
    }

    bool same_space(const Multivector& o) const {
        return g == o.g && ambient_dim == o.ambient_dim && ring == o.ring;
    }
    void check_space(const Multivector& o) const {
        if (!same_space(o)) throw MathError("Multivector: mismatched ambient spaces or rings");
    }

    Multivector& operator+=(const Multivector& o) {
        check_space(o);
        for (auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        check_space(o);
        for (auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }

    Multivector operator*(const Int& s) const {
        Multivector r(g, ambient_dim, ring);
        for (auto& [m, c] : terms) r.add_term(m, c * s);
        return r;
    }
    Multivector operator-() const { return *this * Int(-1); }

    bool operator==(const Multivector& o) const { return same_space(o) && terms == o.terms; }
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    // exact division by a scalar; throws if any coefficient is not divisible
    Multivector divide_exact(const Int& s) const {
        if (!ring.is_integers()) throw MathError("divide_exact: integer ring only");
        Multivector r(g, ambient_dim, ring);
        for (auto& [m, c] : terms) {
            if (c % s != 0) throw MathError("divide_exact: coefficient not divisible");
            r.add_term(m, c / s);
        }
        return r;
    }

    Int content() const {
        Int gcd = 0;
        for (auto& [m, c] : terms) gcd = boost::multiprecision::gcd(gcd, c);
        return gcd;
    }

    std::string str() const;
};

Multivector wedge(const Multivector& a, const Multivector& b);

// iota_v for v of degree 1 (the defining signed sum)
Multivector contract_vector(const Multivector& v, const Multivector& x);

// iota_x(z) for arbitrary x, extended linearly over the terms of x via
// iota_{x^y} = iota_x . iota_y.  Not a derivation for |x| > 1.
Multivector contract_form(const Multivector& x, const Multivector& z);

// the standard symplectic 2-form e^1^e^2 + ... + e^{2g-1}^e^{2g}
Multivector omega_form(int g, int ambient, const Ring& r);

// divided power omega_r = omega^r / r!; r<0 gives 0, r=0 gives 1.
// Built as an actual wedge power with the exact division asserted.
Multivector omega_power(int g, int r, int ambient, const Ring& ring);

// Hodge-Lefschetz duality *x = iota_x(omega_g) on Lambda^*(R^{2g})
Multivector star(const Multivector& x);

Multivector parse_multivector(const std::string& text, int g, int ambient, const Ring& r);

}  // namespace lefz
