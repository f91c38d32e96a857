#pragma once

#include <functional>

#include "lefz/exact_linalg.hpp"
#include "lefz/multivector.hpp"

namespace lefz::op {

// Canonical ordered monomial bases (ascending bitmask value).
std::vector<std::uint64_t> basis_deg(int g, int ambient, int k);
std::vector<std::uint64_t> basis_parity(int g, int ambient, int parity);
std::vector<std::uint64_t> basis_all(int g, int ambient);

// Matrix of a linear map with respect to ordered monomial bases; every image
// term must land in the target basis.
IntMat matrix_of(const std::function<Multivector(const Multivector&)>& fn,
                 int g, int ambient,
                 const std::vector<std::uint64_t>& source,
                 const std::vector<std::uint64_t>& target);

// coordinates of a multivector in an ordered basis (throws if a term is missing)
std::vector<Int> coords_in(const Multivector& x, const std::vector<std::uint64_t>& basis);
Multivector from_coords(int g, int ambient, const Ring& r,
                        const std::vector<std::uint64_t>& basis, const std::vector<Int>& c);

// named graded operators on Lambda^*(Z^{2g})
IntMat wedge_omega_matrix(int g, int j, int k);        // ^omega_j : deg k -> k+2j
IntMat contract_omega_matrix(int g, int j, int k);     // iota_{omega_j} : deg k -> k-2j
IntMat star_matrix(int g, int k);                      // deg k -> 2g-k

// iota_{e^omega - 1} = sum_{j>=1} iota_{omega_j}, parity-preserving
IntMat contract_exp_matrix(int g, int parity);
IntMat wedge_exp_matrix(int g, int parity);
// iota_omega restricted to a parity block (block superdiagonal)
IntMat contract_omega_parity(int g, int parity);
IntMat wedge_omega_parity(int g, int parity);

// single-degree source, stacked inhomogeneous target over the whole algebra
IntMat contract_exp_from_degree(int g, int k);

// Matrix of a named operator; canonical column order.  Supported names:
// wedge-omega:j, contract-omega:j, contract-exp, wedge-exp, star.
IntMat operator_matrix(const std::string& name, int g, int k);

// pushforward Lambda^k(T) of T: R^n -> R^n given by columns (images of e_i)
IntMat pushforward_matrix(int g, int ambient, const IntMat& T, int k);
IntMat pushforward_parity(int g, int ambient, const IntMat& T, int parity);

// symplectic transvection t_v(x) = x + lambda * omega(x, v) * v on R^{2g}
// (index 0 is fixed when ambient = 2g+1)
IntMat transvection(int g, int ambient, const std::vector<Int>& v, const Int& lambda);

// contraction of Lambda^*(R^n) against a dual 3-form given by its coefficients
// on increasing triples (positional sign convention)
Multivector cup_contract(const Multivector& form, const Multivector& x);
IntMat cup_contract_matrix(int g, const Multivector& form, int parity);

// the triple cup form of a product three-manifold: e^0 ^ omega on R^{2g+1}
Multivector product_cup_form(int g, const Ring& ring);

}  // namespace lefz::op
