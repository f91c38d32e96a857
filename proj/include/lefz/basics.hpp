#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefz {

using Int = boost::multiprecision::cpp_int;

inline Int floordiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floormod(const Int& a, const Int& b) {
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

inline Int factorial(long n) {
    Int f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// Generalized binomial: top may be any integer, bottom must be >= 0.
// Satisfies binom(-i, j) = (-1)^j binom(i+j-1, j).
inline Int binom(const Int& n, long k) {
    if (k < 0) return 0;
    Int num = 1;
    for (long i = 0; i < k; ++i) num *= (n - i);
    return num / factorial(k);
}

inline Int binom(long n, long k) { return binom(Int(n), k); }

inline bool is_prime_small(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Trial-division factorization into prime powers (orders here are tiny).
inline std::vector<Int> prime_power_parts(Int n) {
    std::vector<Int> parts;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            Int pw = 1;
            while (n % d == 0) { pw *= d; n /= d; }
            parts.push_back(pw);
        }
    }
    if (n > 1) parts.push_back(n);
    return parts;
}

struct MathError : std::runtime_error {
    explicit MathError(const std::string& m) : std::runtime_error(m) {}
};

// Raised when a computation contradicts one of the verified theorems.
struct TheoremViolation : std::runtime_error {
    explicit TheoremViolation(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace lefz
