#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skw/ffield.hpp"

namespace skw {

// Sentinel precision for series that are known exactly (polynomials,
// monomials). Arithmetic clamps at this value.
inline constexpr int64_t kPrecExact = int64_t(1) << 40;

// The coefficient ring base ⊗_{F_p} E in idempotent coordinates: one
// component per embedding base -> E, cyclically ordered so that component
// i+1 equals component i composed with the Frobenius of the base field.
//
// gal_shift is the number of component positions one application of the
// residue Frobenius of Gal(L/K) moves (f for the l-ring, 0 for the k-ring);
// rings that never carry a Galois action leave it at -1.
struct TensorRing {
    const FieldSpec* base = nullptr;
    const FieldSpec* coeff = nullptr;
    std::vector<Embedding> emb; // size base->degree()

    int gal_shift = -1;
    const FieldSpec* k_spec = nullptr;  // residue field of K (for the Galois twist)
    std::vector<Embedding> k_emb;       // embeddings k -> E, cyclic
    std::vector<int> res_idx;           // component j of base restricts to k-component res_idx[j]

    size_t components() const { return emb.size(); }
    bool operator==(const TensorRing& o) const { return this == &o; }
};

// Builds the ring with the canonical cyclic embedding order (emb[0] the
// lex-least root embedding).
TensorRing make_tensor_ring(const FieldSpec* base, const FieldSpec* coeff);

// Fills k_spec/k_emb/res_idx/gal_shift for a ring whose base contains k.
// Requires [base : k] to be an integer; res_idx[j+1] = res_idx[j] + 1 is
// checked as a consistency invariant of the cyclic orderings.
void attach_gal_structure(TensorRing& ring, const FieldSpec* k);

// Element of Gal(L/K): s = power of the residue Frobenius x -> x^{p^f} on l,
// zeta = omega(g) in k^x (the tame twist). Abelian, componentwise law.
struct GalElem {
    int s = 0;          // mod p^f - 1
    FieldElem zeta;     // element of k

    static GalElem identity(const FieldSpec* k)
    {
        return GalElem{0, k->one()};
    }
};

GalElem gal_compose(const GalElem& a, const GalElem& b, int pf1);
GalElem gal_inverse(const GalElem& a, int pf1);
std::vector<GalElem> gal_group(const FieldSpec* k); // all (p^f-1)^2 elements

// Truncated Laurent series over a TensorRing. Coefficients of v^n are stored
// for n in [min_support, prec); the series is exactly zero below min_support
// and unknown at prec and above.
class TensorSeries {
public:
    TensorSeries() = default;
    TensorSeries(const TensorRing* ring, int64_t min_support, int64_t prec);

    static TensorSeries zero(const TensorRing* ring, int64_t prec = kPrecExact);
    // c * v^e in component `comp`
    static TensorSeries monomial(const TensorRing* ring, size_t comp, int64_t e,
                                 const FieldElem& c);
    // x ⊗ 1 for x in the base field, as a constant series
    static TensorSeries constant(const TensorRing* ring, const FieldElem& base_elem);
    // diagonal v-power (v^{e[res_idx-ish comp]})_comp with per-component exponents;
    // exps is indexed by component.
    static TensorSeries diag_v_power(const TensorRing* ring, const std::vector<int64_t>& exps);

    const TensorRing* ring() const { return ring_; }
    int64_t min_support() const { return ms_; }
    int64_t prec() const { return prec_; }
    bool exact() const { return prec_ >= kPrecExact; }
    size_t components() const { return ring_->components(); }

    // stored coefficient window [stored_begin, stored_end); outside it the
    // series is known zero up to prec
    int64_t stored_begin() const { return ms_; }
    int64_t stored_end() const { return ms_ + stored_; }

    // coefficient of v^e in component comp; zero below min_support, throws
    // PrecisionLoss at or above prec.
    FieldElem coeff(size_t comp, int64_t e) const;
    void set_coeff(size_t comp, int64_t e, const FieldElem& c);
    bool is_known_zero() const;

    // Drops known leading zero coefficients (tightens min_support).
    TensorSeries normalized() const;
    TensorSeries truncated(int64_t new_prec) const;
    void require_prec(int64_t floor) const;

    TensorSeries add(const TensorSeries& o) const;
    TensorSeries sub(const TensorSeries& o) const;
    TensorSeries negated() const;
    TensorSeries mul(const TensorSeries& o) const;
    TensorSeries scaled(const FieldElem& e_scalar) const;
    // multiply by v^j
    TensorSeries shifted(int64_t j) const;
    // inverse of a unit: every component must have a nonzero coefficient at
    // min_support.
    TensorSeries inverted() const;

    TensorSeries derivative() const;  // d/dv
    TensorSeries vddv() const;        // v d/dv

    // phi^m: E-linear, component index shift by m, v -> v^{p^m}
    TensorSeries phi(int64_t m = 1) const;

    // Galois action per the series formula g . sum f_i v^i = sum g(f_i) omega(g)^i v^i.
    TensorSeries gal_act(const GalElem& g) const;

    // projection to / injection of a single component
    TensorSeries component_series(size_t comp) const;
    static TensorSeries e_tau(const TensorRing* ring, size_t comp);

    // constant-term trace: sum over components of the v^0 coefficient
    FieldElem const_trace() const;
    // residue: not provided densely; see res_of_products in pairing.

    bool equal_below(const TensorSeries& o, int64_t bound) const;

private:
    const TensorRing* ring_ = nullptr;
    int64_t ms_ = 0, prec_ = 0;
    // component-major: coeffs_[comp * window + (e - ms_)]
    std::vector<FieldElem> coeffs_;

    size_t window() const { return size_t(prec_ >= kPrecExact ? stored_ : prec_ - ms_); }
    int64_t stored_ = 0; // stored window length (for exact series prec is symbolic)

    friend TensorSeries include_k_series(const TensorSeries&, const TensorRing*);
};

// Inclusion k[[u]] ⊗ E -> l[[v]] ⊗ E along u = v^{p^f-1}: exponent n maps to
// n (p^f - 1) and component j of the target reads k-component res_idx[j].
TensorSeries include_k_series(const TensorSeries& x, const TensorRing* lring);

} // namespace skw
