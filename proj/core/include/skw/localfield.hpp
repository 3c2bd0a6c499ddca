#pragma once

#include <cstdint>
#include <vector>

#include "skw/series.hpp"

namespace skw {

// W(l)/p^M realized as (Z/p^M)[t]/(h~) for the fixed monic lift h~ of the
// modulus of l. The Frobenius lift is the unique ring endomorphism reducing
// to x -> x^p; it is found by Hensel-lifting t^p to a root of h~.
struct WittElem {
    std::vector<uint32_t> c; // length D, entries in [0, p^M)
};

class WittRing {
public:
    WittRing(const FieldSpec* l, uint32_t M);

    const FieldSpec* residue_field() const { return l_; }
    uint32_t precision() const { return M_; }
    uint32_t pM() const { return pM_; }
    uint32_t p() const { return l_->p(); }
    uint32_t D() const { return l_->degree(); }

    WittElem zero() const { return WittElem{std::vector<uint32_t>(D(), 0)}; }
    WittElem one() const;
    WittElem from_int(int64_t n) const;
    WittElem lift(const FieldElem& a) const; // naive coordinate lift
    FieldElem residue(const WittElem& a) const;

    WittElem add(const WittElem& a, const WittElem& b) const;
    WittElem sub(const WittElem& a, const WittElem& b) const;
    WittElem neg(const WittElem& a) const;
    WittElem mul(const WittElem& a, const WittElem& b) const;
    WittElem pow(WittElem a, uint64_t e) const;
    bool is_zero(const WittElem& a) const;
    bool divisible_by_p(const WittElem& a) const;
    WittElem divide_by_p(const WittElem& a) const; // exact; precision loss is the caller's concern
    WittElem unit_inverse(const WittElem& a) const;

    WittElem frobenius(const WittElem& a, int64_t m = 1) const; // canonical lift of x -> x^{p^m}
    WittElem teichmuller(const FieldElem& a) const;

private:
    const FieldSpec* l_;
    uint32_t M_, pM_;
    std::vector<uint32_t> hlift_;             // monic, length D+1
    std::vector<std::vector<uint32_t>> frob_; // D x D matrix of the Frobenius lift
    WittElem reduce_product(std::vector<uint64_t>& acc) const;
};

// O_L = W(l)[v]/(v^{e_L} - p) with e_L = p^f - 1, for K/Q_p unramified with
// pi = p. Elements are coefficient vectors of 1, v, ..., v^{e_L - 1}.
struct OLElem {
    std::vector<WittElem> c;
};

class OLRing {
public:
    OLRing(const WittRing* W, uint32_t eL) : W_(W), eL_(eL) {}

    const WittRing* witt() const { return W_; }
    uint32_t ramification() const { return eL_; }

    OLElem zero() const;
    OLElem one() const;
    OLElem from_witt(const WittElem& w) const;
    OLElem varpi() const;

    OLElem add(const OLElem& a, const OLElem& b) const;
    OLElem sub(const OLElem& a, const OLElem& b) const;
    OLElem mul(const OLElem& a, const OLElem& b) const;
    OLElem pow(OLElem a, uint64_t e) const;
    bool is_zero(const OLElem& a) const;
    OLElem unit_inverse(const OLElem& a) const; // for units of O_L
    OLElem divide_by_varpi(const OLElem& a) const;

    // g = (s, zeta) acting by the Witt Frobenius^{f s} on coefficients and
    // v -> [zeta] v; zeta_in_l is the image of zeta under the k -> l embedding.
    OLElem gal_act(int s, const FieldElem& zeta_in_l, const OLElem& a, int f) const;

    // varpi-adic valuation, scanning Teichmuller digits; returns cap if the
    // element vanishes to that depth.
    uint32_t valuation(const OLElem& a, uint32_t cap) const;

    // Teichmuller digit expansion x = sum [a_i] varpi^i, i < count.
    std::vector<FieldElem> teich_digits(const OLElem& x, uint32_t count) const;
    OLElem from_teich_digits(const std::vector<FieldElem>& digits) const;

private:
    const WittRing* W_;
    uint32_t eL_;
};

// Primitive p-th root of unity in O_L with val(zeta - 1) = e_L/(p-1),
// deterministic via the `variant`-th seed in value order (variant < p-1).
OLElem hensel_zeta_p(const OLRing& OL, uint32_t variant = 0);

// Teichmuller digits a_0..a_N of the deterministic zeta, computed in a fresh
// O_L at p-adic precision M = ceil((N+1)/e_L) + 1.
std::vector<FieldElem> zeta_digits(const FieldSpec* l, uint32_t eL, int64_t N,
                                   uint32_t variant = 0);

// z(v) mod p with z(varpi) = zeta: the digit series, fanned out over the
// given l ⊗ E ring, known exactly up to v-precision N+1.
TensorSeries z_series(const FieldSpec* l, uint32_t eL, const TensorRing* lring, int64_t N,
                      uint32_t variant = 0);

// chi_cyc(g) for g = (s, zeta): the exponent j in [1, p) with g(zeta_p) = zeta_p^j.
uint32_t cyclotomic_exponent(const OLRing& OL, const OLElem& zeta_p, int s,
                             const FieldElem& zeta_in_l, int f);

} // namespace skw
