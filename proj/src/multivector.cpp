#include "lefz/multivector.hpp"

#include <cctype>

namespace lefz {

namespace mono {

std::string str(std::uint64_t m) {
    if (m == 0) return "1";
    std::string s = "e{";
    bool first = true;
    while (m) {
        int t = __builtin_ctzll(m);
        m &= m - 1;
        if (!first) s += ',';
        s += std::to_string(t);
        first = false;
    }
    s += '}';
    return s;
}

}  // namespace mono

Multivector wedge(const Multivector& a, const Multivector& b) {
    a.check_space(b);
    Multivector r(a.g, a.ambient_dim, a.ring);
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            if (ma & mb) continue;
            int sg = mono::wedge_sign(ma, mb);
            r.add_term(ma | mb, ca * cb * sg);
        }
    return r;
}

Multivector contract_vector(const Multivector& v, const Multivector& x) {
    v.check_space(x);
    if (v.degree() != std::optional<int>(1)) throw MathError("contract_vector: v must be homogeneous of degree 1");
    Multivector r(x.g, x.ambient_dim, x.ring);
    for (auto& [mv, cv] : v.terms) {
        int j = __builtin_ctzll(mv);
        for (auto& [ms, cs] : x.terms) {
            std::uint64_t out;
            int cf;
            if (mono::contract_index(j, ms, out, cf)) r.add_term(out, cv * cs * cf);
        }
    }
    return r;
}

Multivector contract_form(const Multivector& x, const Multivector& z) {
    x.check_space(z);
    Multivector r(z.g, z.ambient_dim, z.ring);
    for (auto& [mx, cx] : x.terms)
        for (auto& [mz, cz] : z.terms) {
            std::uint64_t out;
            int cf;
            if (mono::contract_mono(mx, mz, out, cf)) r.add_term(out, cx * cz * cf);
        }
    return r;
}

Multivector omega_form(int g, int ambient, const Ring& r) {
    Multivector w(g, ambient, r);
    for (int i = 1; i <= g; ++i) w.add_term(mono::bit(2 * i - 1) | mono::bit(2 * i), 1);
    return w;
}

Multivector omega_power(int g, int r, int ambient, const Ring& ring) {
    if (r < 0) return Multivector::zero(g, ambient, ring);
    if (r == 0) return Multivector::one(g, ambient, ring);
    if (ring.is_integers()) {
        Multivector w = omega_form(g, ambient, ring);
        Multivector p = w;
        for (int i = 2; i <= r; ++i) p = wedge(p, w);
        return p.divide_exact(factorial(r));
    }
    // over Z/n: reduce the integral divided power
    Multivector zi = omega_power(g, r, ambient, Ring::integers());
    Multivector out(g, ambient, ring);
    for (auto& [m, c] : zi.terms) out.add_term(m, c);
    return out;
}

Multivector star(const Multivector& x) {
    if (x.ambient_dim != 2 * x.g) throw MathError("star: defined on the 2g-dimensional ambient space");
    return contract_form(x, omega_power(x.g, x.g, x.ambient_dim, x.ring));
}

std::string Multivector::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms) {
        Int cc = c;
        bool neg = cc < 0;
        if (neg) cc = -cc;
        if (first) {
            if (neg) os << "- ";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (m == 0) os << cc.str();
        else if (cc == 1) os << mono::str(m);
        else os << cc.str() << " " << mono::str(m);
        first = false;
    }
    return os.str();
}

Multivector parse_multivector(const std::string& text, int g, int ambient, const Ring& r) {
    Multivector out(g, ambient, r);
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw MathError("parse_multivector: expected '+' or '-' between terms");
        }
        Int coef = 1;
        bool have_digits = false;
        if (i < text.size() && std::isdigit((unsigned char)text[i])) {
            std::string num;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) num += text[i++];
            coef = Int(num);
            have_digits = true;
            skip();
        }
        std::uint64_t mask = 0;
        if (i < text.size() && text[i] == 'e') {
            ++i;
            if (i >= text.size() || text[i] != '{') throw MathError("parse_multivector: expected '{' after e");
            ++i;
            while (true) {
                skip();
                std::string num;
                while (i < text.size() && std::isdigit((unsigned char)text[i])) num += text[i++];
                if (num.empty()) throw MathError("parse_multivector: expected index");
                int idx = std::stoi(num);
                if (mask & mono::bit(idx)) throw MathError("parse_multivector: repeated index");
                if (mask && idx <= 63 - __builtin_clzll(mask))
                    throw MathError("parse_multivector: indices must be ascending");
                mask |= mono::bit(idx);
                skip();
                if (i < text.size() && text[i] == ',') { ++i; continue; }
                if (i < text.size() && text[i] == '}') { ++i; break; }
                throw MathError("parse_multivector: expected ',' or '}'");
            }
        } else if (!have_digits) {
            throw MathError("parse_multivector: expected coefficient or monomial");
        }
        // bare integer "1" (or any integer) denotes a multiple of the empty monomial
        out.add_term(mask, coef * sign);
        skip();
        first = false;
    }
    return out;
}

}  // namespace lefz
