#include "skw/weights.hpp"

#include <algorithm>
#include <map>

namespace skw {

namespace {

int64_t mod_pos(int64_t a, int64_t m)
{
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// enumerate all normalized tuples (entries in [1,p], not all p) keyed by
// Omega_{tau_0} mod p^f-1; this is a bijection onto Z/(p^f-1)
std::vector<int> normalized_from_omega(const WeightParams& P, int64_t omega0)
{
    omega0 = mod_pos(omega0, P.pf1());
    std::vector<int> n(P.f, 1);
    for (;;) {
        int64_t om = 0, pw = 1;
        for (uint32_t i = 0; i < P.f; ++i) {
            om += pw * n[i];
            pw *= P.p;
        }
        bool all_p = true;
        for (uint32_t i = 0; i < P.f; ++i)
            if (n[i] != int(P.p)) all_p = false;
        if (!all_p && mod_pos(om, P.pf1()) == omega0) return n;
        // next tuple
        uint32_t i = 0;
        while (i < P.f && n[i] == int(P.p)) n[i++] = 1;
        if (i == P.f) raise(ErrorKind::InvariantViolated, "no normalized representative found");
        ++n[i];
    }
}

} // namespace

int64_t omega_exp(const WeightParams& P, const std::vector<int>& n, size_t tau)
{
    int64_t om = 0, pw = 1;
    for (uint32_t i = 0; i < P.f; ++i) {
        om += pw * n[(tau + i) % P.f];
        pw *= P.p;
    }
    return om;
}

CharData normalize_char(const WeightParams& P, const std::vector<int>& raw_n,
                        const FieldElem& lambda)
{
    if (raw_n.size() != P.f) raise(ErrorKind::BadArgument, "exponent tuple has wrong length");
    CharData c;
    c.n = normalized_from_omega(P, omega_exp(P, raw_n, 0));
    c.lambda = lambda;
    return c;
}

CharData char_mul(const WeightParams& P, const CharData& a, const CharData& b)
{
    std::vector<int> n(P.f);
    for (uint32_t i = 0; i < P.f; ++i) n[i] = a.n[i] + b.n[i];
    return normalize_char(P, n, P.E->mul(a.lambda, b.lambda));
}

CharData char_div(const WeightParams& P, const CharData& a, const CharData& b)
{
    std::vector<int> n(P.f);
    for (uint32_t i = 0; i < P.f; ++i) n[i] = a.n[i] - b.n[i];
    return normalize_char(P, n, P.E->mul(a.lambda, P.E->inv(b.lambda)));
}

bool char_is_trivial(const WeightParams& P, const CharData& c)
{
    return c.lambda == P.E->one() &&
           mod_pos(omega_exp(P, c.n, 0), P.pf1()) == 0;
}

CharData cyclotomic_inertial(const WeightParams& P)
{
    std::vector<int> n(P.f, int(P.e));
    return normalize_char(P, n, P.E->one());
}

bool is_cyclotomic_inertial(const WeightParams& P, const CharData& c)
{
    return c.n == cyclotomic_inertial(P).n;
}

FieldElem char_value(const WeightParams& P, const CharData& chi, int s, const FieldElem& zeta,
                     const std::vector<Embedding>& k_emb)
{
    FieldElem v = P.E->pow_signed(chi.lambda, s);
    for (uint32_t i = 0; i < P.f; ++i)
        v = P.E->mul(v, P.E->pow_signed(k_emb[i].apply(zeta), chi.n[i]));
    return v;
}

std::vector<SerreWeight> all_weights(const WeightParams& P)
{
    std::vector<SerreWeight> out;
    std::vector<int> b(P.f, 0), r(P.f, 0);
    // iterate b and r = a - b over [0, p-1]^f, excluding b = (p-1,...,p-1)
    uint64_t total = 1;
    for (uint32_t i = 0; i < 2 * P.f; ++i) total *= P.p;
    for (uint64_t v = 0; v < total; ++v) {
        uint64_t t = v;
        for (uint32_t i = 0; i < P.f; ++i) {
            b[i] = int(t % P.p);
            t /= P.p;
        }
        for (uint32_t i = 0; i < P.f; ++i) {
            r[i] = int(t % P.p);
            t /= P.p;
        }
        bool all_b = true;
        for (uint32_t i = 0; i < P.f; ++i)
            if (b[i] != int(P.p) - 1) all_b = false;
        if (all_b) continue;
        SerreWeight w;
        w.b = b;
        w.a.resize(P.f);
        for (uint32_t i = 0; i < P.f; ++i) w.a[i] = b[i] + r[i];
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PairJX> valid_pairs(const WeightParams& P, const SerreWeight& sigma,
                                const CharData& chi1, const CharData& chi2)
{
    std::vector<PairJX> out;
    uint64_t xtotal = 1;
    for (uint32_t i = 0; i < P.f; ++i) xtotal *= P.e;
    for (uint32_t J = 0; J < (1u << P.f); ++J) {
        for (uint64_t xv = 0; xv < xtotal; ++xv) {
            PairJX jx;
            jx.J = J;
            jx.x.resize(P.f);
            uint64_t t = xv;
            for (uint32_t i = 0; i < P.f; ++i) {
                jx.x[i] = int(t % P.e);
                t /= P.e;
            }
            std::vector<int> d1(P.f), d2(P.f);
            for (uint32_t i = 0; i < P.f; ++i) {
                if (jx.in_J(i)) {
                    d1[i] = sigma.a[i] + 1 + jx.x[i];
                    d2[i] = sigma.b[i] + int(P.e) - 1 - jx.x[i];
                } else {
                    d1[i] = sigma.b[i] + jx.x[i];
                    d2[i] = sigma.a[i] + int(P.e) - jx.x[i];
                }
            }
            if (normalize_char(P, d1, P.E->one()).n == chi1.n &&
                normalize_char(P, d2, P.E->one()).n == chi2.n)
                out.push_back(std::move(jx));
        }
    }
    return out;
}

std::vector<SerreWeight> wexp_split(const WeightParams& P, const SplitDescriptor& d)
{
    std::vector<SerreWeight> out;
    for (const auto& w : all_weights(P))
        if (!valid_pairs(P, w, d.chi1, d.chi2).empty()) out.push_back(w);
    return out;
}

std::vector<SerreWeight> wexp_irred(const WeightParams& P, const IrredDescriptor& d)
{
    if (d.n2.size() != 2 * P.f) raise(ErrorKind::MalformedDescriptor, "niveau-2 exponent length");
    const uint32_t f2 = 2 * P.f;
    int64_t pf2_1 = 1;
    for (uint32_t i = 0; i < f2; ++i) pf2_1 *= P.p;
    pf2_1 -= 1;
    auto omega2 = [&](const std::vector<int>& n, size_t tau) {
        int64_t om = 0, pw = 1;
        for (uint32_t i = 0; i < f2; ++i) {
            om += pw * n[(tau + i) % f2];
            pw *= P.p;
        }
        return mod_pos(om, pf2_1);
    };
    // the two inertial characters cut out by the input: xi and its conjugate
    std::vector<int> conj(d.n2.begin(), d.n2.end());
    std::rotate(conj.begin(), conj.begin() + P.f, conj.end());
    int64_t xi0 = omega2(d.n2, 0), xi0c = omega2(conj, 0);

    std::vector<SerreWeight> out;
    uint64_t xtotal = 1;
    for (uint32_t i = 0; i < P.f; ++i) xtotal *= P.e;
    for (const auto& w : all_weights(P)) {
        bool member = false;
        // J picks exactly one embedding from each conjugate pair {j, j+f}
        for (uint32_t pick = 0; pick < (1u << P.f) && !member; ++pick) {
            for (uint64_t xv = 0; xv < xtotal && !member; ++xv) {
                std::vector<int> x(P.f);
                uint64_t t = xv;
                for (uint32_t i = 0; i < P.f; ++i) {
                    x[i] = int(t % P.e);
                    t /= P.e;
                }
                std::vector<bool> inJ(f2, false);
                for (uint32_t i = 0; i < P.f; ++i) {
                    if ((pick >> i) & 1)
                        inJ[i + P.f] = true;
                    else
                        inJ[i] = true;
                }
                std::vector<int> d1(f2), d2(f2);
                for (uint32_t j = 0; j < f2; ++j) {
                    uint32_t i = j % P.f; // restriction to k
                    if (inJ[j]) {
                        d1[j] = w.a[i] + 1 + x[i];
                        d2[j] = w.b[i] + int(P.e) - 1 - x[i];
                    } else {
                        d1[j] = w.b[i] + x[i];
                        d2[j] = w.a[i] + int(P.e) + x[i];
                    }
                }
                int64_t o1 = omega2(d1, 0), o2 = omega2(d2, 0);
                if ((o1 == xi0 && o2 == xi0c) || (o1 == xi0c && o2 == xi0)) member = true;
            }
        }
        if (member) out.push_back(w);
    }
    return out;
}

int64_t omega_sigma(const WeightParams& P, const SerreWeight& sigma, const PairJX& jx, size_t tau)
{
    int64_t om = 0, pw = 1;
    for (uint32_t i = 0; i < P.f; ++i) {
        size_t t = (tau + i) % P.f;
        int sign = jx.in_J(t) ? -1 : 1;
        om += pw * (sign * (sigma.a[t] - sigma.b[t] + 1) + (int(P.e) - 1 - 2 * jx.x[t]));
        pw *= P.p;
    }
    return om;
}

SProfile s_profile(const WeightParams& P, const SerreWeight& sigma, const PairJX& jx)
{
    SProfile s;
    s.s.resize(P.f);
    for (uint32_t t = 0; t < P.f; ++t)
        s.s[t] = jx.in_J(t) ? sigma.a[t] - sigma.b[t] + 1 + jx.x[t] : jx.x[t];
    return s;
}

bool pair_leq(const WeightParams& P, const SerreWeight& sigma, const PairJX& a, const PairJX& b)
{
    for (uint32_t t = 0; t < P.f; ++t) {
        int64_t diff = omega_sigma(P, sigma, a, t) - omega_sigma(P, sigma, b, t);
        if (diff < 0 || diff % (2 * P.pf1()) != 0) return false;
    }
    return true;
}

MaxPairs max_pairs(const WeightParams& P, const SerreWeight& sigma, const CharData& chi1,
                   const CharData& chi2)
{
    auto pairs = valid_pairs(P, sigma, chi1, chi2);
    if (pairs.empty()) raise(ErrorKind::NoValidPairs, "no (J, x) matches the characters");
    std::sort(pairs.begin(), pairs.end());
    MaxPairs mp;
    for (const auto& cand : pairs) {
        bool maximal = true;
        for (const auto& other : pairs) {
            if (other == cand) continue;
            // strictly above cand: cand <= other but not other <= cand
            if (pair_leq(P, sigma, cand, other) && !pair_leq(P, sigma, other, cand)) {
                maximal = false;
                break;
            }
        }
        if (maximal) mp.all_max.push_back(cand);
    }
    mp.profile = s_profile(P, sigma, mp.all_max.front());
    for (const auto& m : mp.all_max)
        if (!(s_profile(P, sigma, m) == mp.profile))
            raise(ErrorKind::NonUniqueMaxProfile,
                  "distinct maximal s-profiles for one (sigma, chi1, chi2)");
    mp.canonical = mp.all_max.front(); // lex-least: J minimal, so tau in J iff s_tau >= e
    return mp;
}

DimPsi dim_psi(const WeightParams& P, const SerreWeight& sigma, const CharData& chi1,
               const CharData& chi2)
{
    MaxPairs mp = max_pairs(P, sigma, chi1, chi2);
    DimPsi d;
    CharData chi = char_div(P, chi1, chi2);
    d.nu_prime = char_is_trivial(P, chi) ? 1 : 0;

    int64_t om0 = omega_sigma(P, sigma, mp.canonical, 0);
    bool omega_ok = (-om0 >= 0) && (mod_pos(om0, P.pf1()) == 0);
    // "for one (equivalently all) tau": check the equivalence rather than assume it
    for (uint32_t t = 1; t < P.f; ++t) {
        int64_t omt = omega_sigma(P, sigma, mp.canonical, t);
        bool ok_t = (-omt >= 0) && (mod_pos(omt, P.pf1()) == 0);
        if (ok_t != omega_ok)
            raise(ErrorKind::InvariantViolated, "-Omega membership differs between embeddings");
    }
    d.nu = (char_is_trivial(P, chi) && omega_ok) ? 1 : 0;

    int64_t card = 0, xsum = 0;
    for (uint32_t t = 0; t < P.f; ++t) {
        if (mp.canonical.in_J(t)) ++card;
        xsum += mp.canonical.x[t];
    }
    d.dimension = d.nu_prime + card + xsum;
    return d;
}

TwistNormalized twist_normalize(const WeightParams& P, const SerreWeight& sigma,
                                const CharData& chi1, const CharData& chi2)
{
    TwistNormalized t;
    t.sigma.a.resize(P.f);
    t.sigma.b.assign(P.f, 0);
    std::vector<int> n1(P.f), n2(P.f);
    for (uint32_t i = 0; i < P.f; ++i) {
        t.sigma.a[i] = sigma.a[i] - sigma.b[i];
        n1[i] = chi1.n[i] - sigma.b[i];
        n2[i] = chi2.n[i] - sigma.b[i];
    }
    t.chi1 = normalize_char(P, n1, chi1.lambda);
    t.chi2 = normalize_char(P, n2, chi2.lambda);
    return t;
}

bool is_degenerate(const WeightParams& P, const SerreWeight& sigma, const PairJX& jx)
{
    for (uint32_t t = 0; t < P.f; ++t) {
        if (!jx.in_J(t)) return false;
        if (jx.x[t] != int(P.e) - 1) return false;
        if (sigma.a[t] - sigma.b[t] != int(P.p) - 1) return false;
    }
    return true;
}

} // namespace skw
