#pragma once

#include "lefz/basics.hpp"

namespace lefz {

// Coefficient ring: exact integers, or integers mod n (n >= 2).
// Modular values are kept canonical in [0, n).
struct Ring {
    enum class Kind { integers, mod };
    Kind kind = Kind::integers;
    Int modulus = 0;

    static Ring integers() { return Ring{}; }
    static Ring zmod(Int n) {
        if (n < 2) throw MathError("zmod: modulus must be >= 2");
        return Ring{Kind::mod, std::move(n)};
    }
    static Ring fp(Int p) {
        if (!is_prime_small(p)) throw MathError("fp: modulus is not prime");
        return Ring{Kind::mod, std::move(p)};
    }

    bool is_integers() const { return kind == Kind::integers; }
    bool is_field() const { return kind == Kind::mod && is_prime_small(modulus); }

    Int reduce(const Int& v) const {
        if (kind == Kind::integers) return v;
        return floormod(v, modulus);
    }

    bool operator==(const Ring& o) const { return kind == o.kind && modulus == o.modulus; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    std::string str() const {
        if (is_integers()) return "Z";
        return "Z/" + modulus.str();
    }
};

}  // namespace lefz
