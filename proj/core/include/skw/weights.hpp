#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skw/ffield.hpp"

namespace skw {

// A continuous character of G_K valued in E^x, presented as its normalized
// inertial exponents n_tau (n_tau in [1,p], not all p) together with the
// value lambda of its unramified part on the fixed arithmetic Frobenius.
struct CharData {
    std::vector<int> n;  // size f, indexed by the cyclic k-embedding order
    FieldElem lambda;    // in E^x

    bool inertially_equal(const CharData& o) const { return n == o.n; }
    bool operator==(const CharData& o) const { return n == o.n && lambda == o.lambda; }
};

// Serre weight sigma_{a,b}: b_tau in [0,p-1], a_tau - b_tau in [0,p-1],
// not all b_tau = p-1.
struct SerreWeight {
    std::vector<int> a, b;
    bool operator==(const SerreWeight& o) const { return a == o.a && b == o.b; }
    bool operator<(const SerreWeight& o) const
    {
        return std::tie(a, b) < std::tie(o.a, o.b);
    }
};

struct PairJX {
    uint32_t J = 0;        // bitmask over k-embedding indices
    std::vector<int> x;    // size f, entries in [0, e-1]

    bool in_J(size_t t) const { return (J >> t) & 1; }
    bool operator==(const PairJX& o) const { return J == o.J && x == o.x; }
    bool operator<(const PairJX& o) const { return std::tie(J, x) < std::tie(o.J, o.x); }
};

// s_tau = x_tau (tau not in J), a_tau - b_tau + 1 + x_tau (tau in J).
struct SProfile {
    std::vector<int> s;
    bool operator==(const SProfile& o) const { return s == o.s; }
};

// Combinatorial environment for fixed (p, f, e); the field E is needed only
// to carry unramified parts.
struct WeightParams {
    uint32_t p, f, e;
    const FieldSpec* E;

    uint64_t pf() const
    {
        uint64_t r = 1;
        for (uint32_t i = 0; i < f; ++i) r *= p;
        return r;
    }
    int64_t pf1() const { return int64_t(pf()) - 1; }
};

// ----- characters ----------------------------------------------------------

// Unique normalized exponent tuple with the same inertial character (the
// rewriting uses omega_tau^p = omega_{tau o phi}).
CharData normalize_char(const WeightParams& P, const std::vector<int>& raw_n,
                        const FieldElem& lambda);

// Omega_{tau,n} = sum p^i n_{tau o phi^i}; tau given by its index.
int64_t omega_exp(const WeightParams& P, const std::vector<int>& n, size_t tau);

CharData char_mul(const WeightParams& P, const CharData& a, const CharData& b);
CharData char_div(const WeightParams& P, const CharData& a, const CharData& b);
bool char_is_trivial(const WeightParams& P, const CharData& c);

// The mod-p cyclotomic character restricted to inertia has exponents (e,..,e).
// Its unramified part is configuration data (extracted from the action on a
// concrete p-th root of unity); callers that only compare inertially may pass
// lambda = 1.
CharData cyclotomic_inertial(const WeightParams& P);
bool is_cyclotomic_inertial(const WeightParams& P, const CharData& c);

// chi(g) for g = (s, zeta): lambda^s prod_tau tau(zeta)^{n_tau}.
FieldElem char_value(const WeightParams& P, const CharData& chi, int s, const FieldElem& zeta,
                     const std::vector<Embedding>& k_emb);

// ----- weights and pairs ----------------------------------------------------

std::vector<SerreWeight> all_weights(const WeightParams& P);

// W^exp for semisimple representations.
struct SplitDescriptor {
    CharData chi1, chi2;
};
struct IrredDescriptor {
    // niveau-2 inertial exponents over the 2f embeddings of k_2, cyclic order
    std::vector<int> n2;
};

std::vector<SerreWeight> wexp_split(const WeightParams& P, const SplitDescriptor& d);
std::vector<SerreWeight> wexp_irred(const WeightParams& P, const IrredDescriptor& d);

// All (J,x) for which the two inertial display characters match (chi1, chi2)
// in order. Empty means sigma is not a weight of chi1 ⊕ chi2.
std::vector<PairJX> valid_pairs(const WeightParams& P, const SerreWeight& sigma,
                                const CharData& chi1, const CharData& chi2);

// Omega_{tau,sigma,J,x}
int64_t omega_sigma(const WeightParams& P, const SerreWeight& sigma, const PairJX& jx,
                    size_t tau);

SProfile s_profile(const WeightParams& P, const SerreWeight& sigma, const PairJX& jx);

// preorder: Omega_{tau,J,x} - Omega_{tau,J',x'} in 2(p^f-1) Z_{>=0} for all tau
bool pair_leq(const WeightParams& P, const SerreWeight& sigma, const PairJX& a, const PairJX& b);

struct MaxPairs {
    SProfile profile;
    PairJX canonical;            // lex-least maximal pair (J as a bitmask, then x)
    std::vector<PairJX> all_max; // every maximal pair
};

MaxPairs max_pairs(const WeightParams& P, const SerreWeight& sigma, const CharData& chi1,
                   const CharData& chi2);

struct DimPsi {
    int64_t dimension;
    int nu_prime; // 1 iff chi1/chi2 trivial (including the unramified part)
    int nu;       // 1 iff chi trivial and -Omega_max in (p^f-1) Z_{>=0}
};

DimPsi dim_psi(const WeightParams& P, const SerreWeight& sigma, const CharData& chi1,
               const CharData& chi2);

struct TwistNormalized {
    SerreWeight sigma; // b = 0
    CharData chi1, chi2;
};

TwistNormalized twist_normalize(const WeightParams& P, const SerreWeight& sigma,
                                const CharData& chi1, const CharData& chi2);

// degenerate configuration of the maximal pair: J = everything, all x = e-1,
// all a - b = p - 1
bool is_degenerate(const WeightParams& P, const SerreWeight& sigma, const PairJX& jx);

} // namespace skw
