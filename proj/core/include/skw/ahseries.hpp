#pragma once

#include <cstdint>
#include <vector>

#include "skw/series.hpp"

namespace skw {

// Coefficients of the one-variable Artin-Hasse series
//   E(X) = exp(sum_{n>=0} X^{p^n}/p^n)
// reduced mod p, up to degree maxdeg. Computed from the product formula
// E(X) = prod_{p ∤ m} (1 - X^m)^{-mu(m)/m}, whose factors reduce mod p via
// the base-p digits of -mu(m)/m in Z_p.
std::vector<uint8_t> artin_hasse_coeffs_mod_p(uint32_t p, int64_t maxdeg);

// The same coefficients mod p^M (for evaluating E^AH inside O_L at small
// p-adic precision). Uses the ODE recurrence (m+1) c_{m+1} = sum c_{m+1-p^n}
// with enough guard digits to make every division by m+1 exact.
std::vector<uint32_t> artin_hasse_coeffs_mod_pM(uint32_t p, int64_t maxdeg, uint32_t M);

// E^AH on series arguments, componentwise: for each component, the product
// over monomials c v^i of E(c v^i) truncated at precision N. Agrees with the
// Z_p-module isomorphism on F_p-rational arguments; the coefficient-side
// extension is Frobenius-semilinear, which is the convention used everywhere
// a unit is needed as an actual series.
TensorSeries ah_exp(const TensorSeries& x, int64_t N);

// Inverse of ah_exp by digit peeling: strips the lowest term c v^i, divides
// by E(c v^i), repeats.
TensorSeries ah_log(const TensorSeries& u, int64_t N);

} // namespace skw
