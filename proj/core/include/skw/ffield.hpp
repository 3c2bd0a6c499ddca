#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skw/errors.hpp"

namespace skw {

// Fixed storage bound on extension degrees. Large enough for the residue
// field of L at (p,f) = (5,2) (degree 48); build_field rejects anything bigger.
inline constexpr int kMaxDeg = 48;

class FieldSpec;

// Element of F_{p^d}, coordinates w.r.t. the power basis of spec->poly.
// Coordinates beyond spec->degree() are kept at zero.
struct FieldElem {
    const FieldSpec* spec = nullptr;
    std::array<uint8_t, kMaxDeg> c{};

    bool is_zero() const
    {
        for (auto v : c)
            if (v) return false;
        return true;
    }
    bool operator==(const FieldElem& o) const { return spec == o.spec && c == o.c; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
};

// Immutable description of F_{p^d} = F_p[x]/(poly). Shareable across threads
// once constructed.
class FieldSpec {
public:
    static const FieldSpec* get(uint32_t p, uint32_t d,
                                std::optional<std::vector<uint8_t>> poly = std::nullopt);

    uint32_t p() const { return p_; }
    uint32_t degree() const { return d_; }
    // coefficients c0..c_{d-1} of the monic modulus x^d + c_{d-1}x^{d-1} + ... + c0
    const std::vector<uint8_t>& poly() const { return poly_; }
    uint64_t order() const { return q_; } // p^d, valid for q < 2^63

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_coords(const std::vector<uint8_t>& coords) const;
    FieldElem from_int(int64_t n) const; // image of n under Z -> F_p -> F_{p^d}
    // Elements ordered by value sum c_i p^i; used wherever a deterministic
    // choice among field elements is required.
    FieldElem from_value(uint64_t value) const;
    uint64_t value(const FieldElem& x) const;
    FieldElem x() const; // the class of the variable

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul_scalar(const FieldElem& a, uint32_t s) const; // s mod p
    FieldElem inv(const FieldElem& a) const;
    FieldElem pow(const FieldElem& a, uint64_t e) const;
    FieldElem pow_signed(const FieldElem& a, int64_t e) const;

    // x^{p^m} with m reduced mod d; m may be negative (Frobenius is invertible).
    FieldElem frobenius_iter(const FieldElem& a, int64_t m) const;
    // Tr_{F_{p^d}/F_p}, returned as an element of this field (it lies in F_p).
    FieldElem trace_to_prime(const FieldElem& a) const;
    uint32_t trace_to_prime_int(const FieldElem& a) const;

    // Deterministic generator of the multiplicative group: the least element
    // in value order that has full order.
    const FieldElem& generator() const { return gen_; }

    std::string to_string(const FieldElem& x) const;

private:
    FieldSpec(uint32_t p, uint32_t d, std::vector<uint8_t> poly);

    uint32_t p_, d_;
    uint64_t q_;
    std::vector<uint8_t> poly_;
    // x^{d+i} mod poly for i in [0, d-1)
    std::vector<std::array<uint8_t, kMaxDeg>> red_;
    // matrix of x -> x^p (column j = coords of (basis_j)^p)
    std::vector<std::array<uint8_t, kMaxDeg>> frob_;
    FieldElem gen_;
    std::vector<uint64_t> group_prime_factors_;

    void build_tables();
    friend struct FieldSpecRegistry;
};

// Convenience wrappers matching the operation names used throughout.
const FieldSpec* build_field(uint32_t p, uint32_t d,
                             std::optional<std::vector<uint8_t>> poly = std::nullopt);
inline FieldElem frobenius_iter(const FieldElem& x, int64_t m) { return x.spec->frobenius_iter(x, m); }
inline FieldElem trace_to_prime(const FieldElem& x) { return x.spec->trace_to_prime(x); }

// An embedding of src into dst (src degree divides dst degree), realized as
// the F_p-linear map sending the class of x to a fixed root of src->poly in
// dst. make_embedding picks the lex-least root; composing with src-Frobenius
// walks through all embeddings.
class Embedding {
public:
    Embedding() = default;
    const FieldSpec* src() const { return src_; }
    const FieldSpec* dst() const { return dst_; }
    FieldElem apply(const FieldElem& a) const;
    const FieldElem& root() const { return root_; }
    // this ∘ Frobenius^m of the source
    Embedding precompose_frobenius(int64_t m) const;

private:
    friend Embedding make_embedding(const FieldSpec*, const FieldSpec*);
    const FieldSpec* src_ = nullptr;
    const FieldSpec* dst_ = nullptr;
    FieldElem root_;                 // image of x
    std::vector<FieldElem> powers_;  // root^0..root^{d_src-1}
    void build();
};

Embedding make_embedding(const FieldSpec* src, const FieldSpec* dst);
FieldElem embed(const FieldElem& x, const FieldSpec* target);

// All roots in dst of the modulus of src (requires src->degree() | dst->degree()),
// sorted by value. Used for embedding construction and tests.
std::vector<FieldElem> modulus_roots(const FieldSpec* src, const FieldSpec* dst);

bool is_prime_u64(uint64_t n);
std::vector<uint64_t> factor_u64(uint64_t n);

} // namespace skw
