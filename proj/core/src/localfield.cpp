#include "skw/localfield.hpp"

#include <algorithm>

namespace skw {

namespace {
uint64_t ipow(uint64_t b, uint32_t e)
{
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

uint64_t binomial(uint32_t n, uint32_t k)
{
    uint64_t r = 1;
    for (uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
} // namespace

WittRing::WittRing(const FieldSpec* l, uint32_t M) : l_(l), M_(M)
{
    if (M < 1 || ipow(l->p(), M) > (uint64_t(1) << 30))
        raise(ErrorKind::BadArgument, "witt precision out of range");
    pM_ = uint32_t(ipow(l->p(), M));
    hlift_.assign(l->degree() + 1, 0);
    for (uint32_t i = 0; i <= l->degree(); ++i) hlift_[i] = l->poly()[i];

    // Frobenius lift: Hensel the residue root t^p of h~ upward. h~'(r) is a
    // unit because h is separable mod p.
    const uint32_t D_ = l->degree();
    WittElem r = lift(l_->frobenius_iter(l_->x(), 1));
    for (int it = 0; it < 64; ++it) {
        WittElem h = zero(), dh = zero();
        for (size_t i = hlift_.size(); i-- > 0;) {
            h = mul(h, r);
            h.c[0] = uint32_t((h.c[0] + hlift_[i]) % pM_);
            if (i >= 1) {
                dh = mul(dh, r);
                dh.c[0] = uint32_t((dh.c[0] + uint64_t(hlift_[i]) * uint64_t(i)) % pM_);
            }
        }
        if (is_zero(h)) break;
        if (it == 63) raise(ErrorKind::NoConvergence, "frobenius root did not converge");
        r = sub(r, mul(h, unit_inverse(dh)));
    }

    frob_.assign(D_, std::vector<uint32_t>(D_, 0));
    WittElem col = one();
    for (uint32_t j = 0; j < D_; ++j) {
        for (uint32_t i = 0; i < D_; ++i) frob_[j][i] = col.c[i];
        col = mul(col, r);
    }
}

WittElem WittRing::one() const
{
    WittElem e = zero();
    e.c[0] = 1;
    return e;
}

WittElem WittRing::from_int(int64_t n) const
{
    WittElem e = zero();
    int64_t r = n % int64_t(pM_);
    if (r < 0) r += pM_;
    e.c[0] = uint32_t(r);
    return e;
}

WittElem WittRing::lift(const FieldElem& a) const
{
    WittElem e = zero();
    for (uint32_t i = 0; i < D(); ++i) e.c[i] = a.c[i];
    return e;
}

FieldElem WittRing::residue(const WittElem& a) const
{
    FieldElem r = l_->zero();
    for (uint32_t i = 0; i < D(); ++i) r.c[i] = uint8_t(a.c[i] % p());
    return r;
}

WittElem WittRing::add(const WittElem& a, const WittElem& b) const
{
    WittElem r = zero();
    for (uint32_t i = 0; i < D(); ++i) {
        uint32_t s = a.c[i] + b.c[i];
        r.c[i] = s >= pM_ ? s - pM_ : s;
    }
    return r;
}

WittElem WittRing::sub(const WittElem& a, const WittElem& b) const
{
    WittElem r = zero();
    for (uint32_t i = 0; i < D(); ++i) {
        uint32_t s = a.c[i] + pM_ - b.c[i];
        r.c[i] = s >= pM_ ? s - pM_ : s;
    }
    return r;
}

WittElem WittRing::neg(const WittElem& a) const { return sub(zero(), a); }

WittElem WittRing::mul(const WittElem& a, const WittElem& b) const
{
    const uint32_t D_ = D();
    std::vector<uint64_t> acc(2 * D_, 0);
    for (uint32_t i = 0; i < D_; ++i) {
        if (!a.c[i]) continue;
        uint64_t ai = a.c[i];
        for (uint32_t j = 0; j < D_; ++j) acc[i + j] += ai * b.c[j] % pM_;
    }
    if (D_ > 1) {
        for (uint32_t m = 2 * D_ - 2; m >= D_; --m) {
            uint64_t r = acc[m] % pM_;
            if (r) {
                for (uint32_t j = 0; j < D_; ++j) {
                    uint64_t c = uint64_t(pM_ - hlift_[j] % pM_) % pM_;
                    acc[m - D_ + j] = (acc[m - D_ + j] + r * c % pM_) % (uint64_t(pM_) << 20);
                }
            }
            acc[m] = 0;
            if (m == D_) break;
        }
    }
    WittElem out = zero();
    for (uint32_t j = 0; j < D_; ++j) out.c[j] = uint32_t(acc[j] % pM_);
    return out;
}

WittElem WittRing::pow(WittElem a, uint64_t e) const
{
    WittElem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool WittRing::is_zero(const WittElem& a) const
{
    for (auto v : a.c)
        if (v) return false;
    return true;
}

bool WittRing::divisible_by_p(const WittElem& a) const
{
    for (auto v : a.c)
        if (v % p()) return false;
    return true;
}

WittElem WittRing::divide_by_p(const WittElem& a) const
{
    if (!divisible_by_p(a)) raise(ErrorKind::BadArgument, "inexact division by p");
    WittElem r = zero();
    for (uint32_t i = 0; i < D(); ++i) r.c[i] = a.c[i] / p();
    return r;
}

WittElem WittRing::unit_inverse(const WittElem& a) const
{
    FieldElem r0 = residue(a);
    if (r0.is_zero()) raise(ErrorKind::NotInvertible, "not a unit of W(l)");
    WittElem y = lift(l_->inv(r0));
    for (uint32_t it = 0; it < M_ + 2; ++it) {
        WittElem t = sub(from_int(2), mul(a, y));
        y = mul(y, t);
    }
    return y;
}

WittElem WittRing::frobenius(const WittElem& a, int64_t m) const
{
    const uint32_t D_ = D();
    int64_t mm = m % int64_t(D_);
    if (mm < 0) mm += D_;
    WittElem cur = a;
    for (int64_t it = 0; it < mm; ++it) {
        WittElem nxt = zero();
        for (uint32_t j = 0; j < D_; ++j) {
            if (!cur.c[j]) continue;
            uint64_t cj = cur.c[j];
            for (uint32_t i = 0; i < D_; ++i)
                nxt.c[i] = uint32_t((nxt.c[i] + cj * frob_[j][i]) % pM_);
        }
        cur = nxt;
    }
    return cur;
}

WittElem WittRing::teichmuller(const FieldElem& a) const
{
    WittElem x = lift(a);
    uint64_t q = l_->order();
    for (uint32_t it = 0; it < M_ + 1; ++it) {
        WittElem nx = pow(x, q);
        if (nx.c == x.c) break;
        x = nx;
    }
    return x;
}

// ---------------------------------------------------------------------------

OLElem OLRing::zero() const { return OLElem{std::vector<WittElem>(eL_, W_->zero())}; }

OLElem OLRing::one() const
{
    OLElem e = zero();
    e.c[0] = W_->one();
    return e;
}

OLElem OLRing::from_witt(const WittElem& w) const
{
    OLElem e = zero();
    e.c[0] = w;
    return e;
}

OLElem OLRing::varpi() const
{
    OLElem e = zero();
    if (eL_ == 1)
        e.c[0] = W_->from_int(int64_t(W_->p()));
    else
        e.c[1] = W_->one();
    return e;
}

OLElem OLRing::add(const OLElem& a, const OLElem& b) const
{
    OLElem r = zero();
    for (uint32_t i = 0; i < eL_; ++i) r.c[i] = W_->add(a.c[i], b.c[i]);
    return r;
}

OLElem OLRing::sub(const OLElem& a, const OLElem& b) const
{
    OLElem r = zero();
    for (uint32_t i = 0; i < eL_; ++i) r.c[i] = W_->sub(a.c[i], b.c[i]);
    return r;
}

OLElem OLRing::mul(const OLElem& a, const OLElem& b) const
{
    std::vector<WittElem> acc(2 * eL_, W_->zero());
    for (uint32_t i = 0; i < eL_; ++i) {
        if (W_->is_zero(a.c[i])) continue;
        for (uint32_t j = 0; j < eL_; ++j)
            acc[i + j] = W_->add(acc[i + j], W_->mul(a.c[i], b.c[j]));
    }
    WittElem pw = W_->from_int(int64_t(W_->p()));
    OLElem r = zero();
    for (uint32_t i = 0; i < eL_; ++i) r.c[i] = acc[i];
    for (uint32_t i = eL_; i < 2 * eL_ - 1; ++i)
        r.c[i - eL_] = W_->add(r.c[i - eL_], W_->mul(pw, acc[i]));
    return r;
}

OLElem OLRing::pow(OLElem a, uint64_t e) const
{
    OLElem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool OLRing::is_zero(const OLElem& a) const
{
    for (const auto& w : a.c)
        if (!W_->is_zero(w)) return false;
    return true;
}

OLElem OLRing::unit_inverse(const OLElem& a) const
{
    FieldElem r0 = W_->residue(a.c[0]);
    if (r0.is_zero()) raise(ErrorKind::NotInvertible, "not a unit of O_L");
    OLElem y = from_witt(W_->lift(W_->residue_field()->inv(r0)));
    OLElem two = from_witt(W_->from_int(2));
    for (uint32_t it = 0; it < 4 * W_->precision() + 8; ++it) {
        y = mul(y, sub(two, mul(a, y)));
        if (is_zero(sub(mul(a, y), one()))) break;
    }
    if (!is_zero(sub(mul(a, y), one())))
        raise(ErrorKind::NoConvergence, "unit inversion in O_L did not converge");
    return y;
}

OLElem OLRing::divide_by_varpi(const OLElem& a) const
{
    OLElem r = zero();
    if (eL_ == 1) {
        r.c[0] = W_->divide_by_p(a.c[0]);
        return r;
    }
    for (uint32_t i = 1; i < eL_; ++i) r.c[i - 1] = a.c[i];
    r.c[eL_ - 1] = W_->divide_by_p(a.c[0]);
    return r;
}

OLElem OLRing::gal_act(int s, const FieldElem& zeta_in_l, const OLElem& a, int f) const
{
    WittElem tz = W_->teichmuller(zeta_in_l);
    WittElem pw = W_->one();
    OLElem r = zero();
    for (uint32_t i = 0; i < eL_; ++i) {
        r.c[i] = W_->mul(W_->frobenius(a.c[i], int64_t(f) * s), pw);
        pw = W_->mul(pw, tz);
    }
    return r;
}

uint32_t OLRing::valuation(const OLElem& a, uint32_t cap) const
{
    OLElem x = a;
    for (uint32_t v = 0; v < cap; ++v) {
        if (!W_->residue(x.c[0]).is_zero()) return v;
        x = divide_by_varpi(x);
    }
    return cap;
}

std::vector<FieldElem> OLRing::teich_digits(const OLElem& x, uint32_t count) const
{
    std::vector<FieldElem> out;
    out.reserve(count);
    OLElem cur = x;
    for (uint32_t i = 0; i < count; ++i) {
        FieldElem d = W_->residue(cur.c[0]);
        out.push_back(d);
        cur.c[0] = W_->sub(cur.c[0], W_->teichmuller(d));
        cur = divide_by_varpi(cur);
    }
    return out;
}

OLElem OLRing::from_teich_digits(const std::vector<FieldElem>& digits) const
{
    OLElem acc = zero();
    OLElem pw = one();
    OLElem vp = varpi();
    for (const auto& d : digits) {
        acc = add(acc, mul(pw, from_witt(W_->teichmuller(d))));
        pw = mul(pw, vp);
    }
    return acc;
}

// ---------------------------------------------------------------------------

OLElem hensel_zeta_p(const OLRing& OL, uint32_t variant)
{
    const WittRing* W = OL.witt();
    const FieldSpec* l = W->residue_field();
    const uint32_t p = W->p(), eL = OL.ramification();
    if (W->precision() < 2) raise(ErrorKind::PrecisionTooLow, "need p-adic precision >= 2");
    if (eL % (p - 1) != 0) raise(ErrorKind::BadArgument, "e_L not divisible by p-1");
    const uint32_t w = eL / (p - 1);
    if (variant >= p - 1) raise(ErrorKind::BadArgument, "root variant out of range");

    // residue seeds: the p-1 solutions of Z^{p-1} = -1 in l, in value order
    uint64_t q = l->order();
    if ((q - 1) % (2 * uint64_t(p - 1)) != 0)
        raise(ErrorKind::BadArgument, "l contains no solution of Z^{p-1} = -1");
    FieldElem z0 = l->pow(l->generator(), (q - 1) / (2 * uint64_t(p - 1)));
    FieldElem step = l->pow(l->generator(), (q - 1) / uint64_t(p - 1));
    std::vector<FieldElem> seeds;
    FieldElem cur = z0;
    for (uint32_t j = 0; j < p - 1; ++j) {
        seeds.push_back(cur);
        cur = l->mul(cur, step);
    }
    std::sort(seeds.begin(), seeds.end(),
              [&](const FieldElem& a, const FieldElem& b) { return l->value(a) < l->value(b); });
    FieldElem seed = seeds[variant];

    // write zeta = 1 + varpi^w Z; then Phi_p(zeta) = 0 becomes G(Z) = 0 with
    // G(Z) = sum_{j<p-1} (binom(p,j+1)/p) varpi^{jw} Z^j + Z^{p-1}, a polynomial
    // with unit derivative at the seed.
    std::vector<OLElem> g(p, OL.zero());
    {
        OLElem vpw = OL.pow(OL.varpi(), w);
        OLElem pwj = OL.one();
        for (uint32_t j = 0; j + 1 < p; ++j) {
            uint64_t cj = binomial(p, j + 1) / p;
            g[j] = OL.mul(pwj, OL.from_witt(W->from_int(int64_t(cj % W->pM()))));
            pwj = OL.mul(pwj, vpw);
        }
        g[p - 1] = OL.one();
    }

    auto eval = [&](const OLElem& z, bool deriv) {
        OLElem acc = OL.zero();
        if (!deriv) {
            for (uint32_t j = p; j-- > 0;) acc = OL.add(OL.mul(acc, z), g[j]);
        } else {
            for (uint32_t j = p; j-- > 1;)
                acc = OL.add(OL.mul(acc, z), OL.mul(g[j], OL.from_witt(W->from_int(int64_t(j)))));
        }
        return acc;
    };

    OLElem Z = OL.from_witt(W->teichmuller(seed));
    for (int it = 0; it < 60; ++it) {
        OLElem h = eval(Z, false);
        if (OL.is_zero(h)) break;
        if (it == 59) raise(ErrorKind::NoConvergence, "cyclotomic root did not converge");
        Z = OL.sub(Z, OL.mul(h, OL.unit_inverse(eval(Z, true))));
    }

    OLElem zeta = OL.add(OL.one(), OL.mul(OL.pow(OL.varpi(), w), Z));

    // postconditions: Phi_p(zeta) = 0 and val(zeta - 1) = w exactly
    OLElem phi = OL.zero(), zp = OL.one();
    for (uint32_t i = 0; i < p; ++i) {
        phi = OL.add(phi, zp);
        zp = OL.mul(zp, zeta);
    }
    if (!OL.is_zero(phi)) raise(ErrorKind::NoConvergence, "Phi_p(zeta) != 0");
    if (OL.valuation(OL.sub(zeta, OL.one()), w + 2) != w)
        raise(ErrorKind::NoConvergence, "zeta - 1 has wrong valuation");
    return zeta;
}

std::vector<FieldElem> zeta_digits(const FieldSpec* l, uint32_t eL, int64_t N, uint32_t variant)
{
    if (N < 1) raise(ErrorKind::BadArgument, "need v-precision >= 1");
    uint32_t M = uint32_t((N + 1 + eL - 1) / eL) + 1;
    if (M < 2) M = 2;
    WittRing W(l, M);
    OLRing OL(&W, eL);
    OLElem zeta = hensel_zeta_p(OL, variant);
    return OL.teich_digits(zeta, uint32_t(N + 1));
}

TensorSeries z_series(const FieldSpec* l, uint32_t eL, const TensorRing* lring, int64_t N,
                      uint32_t variant)
{
    if (lring->base != l) raise(ErrorKind::RingMismatch, "ring base must be l");
    auto digits = zeta_digits(l, eL, N, variant);
    uint32_t w = eL / (l->p() - 1);
    if (digits[0] != l->one()) raise(ErrorKind::InvariantViolated, "z(0) != 1");
    for (int64_t i = 1; i < int64_t(w) && i <= N; ++i)
        if (!digits[size_t(i)].is_zero())
            raise(ErrorKind::InvariantViolated, "z - 1 has too small valuation");
    if (int64_t(w) <= N && digits[size_t(w)].is_zero())
        raise(ErrorKind::InvariantViolated, "z - 1 has too large valuation");

    TensorSeries z(lring, 0, N + 1);
    for (size_t j = 0; j < lring->components(); ++j)
        for (int64_t i = 0; i <= N; ++i)
            z.set_coeff(j, i, lring->emb[j].apply(digits[size_t(i)]));
    return z;
}

uint32_t cyclotomic_exponent(const OLRing& OL, const OLElem& zeta_p, int s,
                             const FieldElem& zeta_in_l, int f)
{
    OLElem g_zeta = OL.gal_act(s, zeta_in_l, zeta_p, f);
    OLElem zj = OL.one();
    for (uint32_t j = 0; j < OL.witt()->p(); ++j) {
        zj = OL.mul(zj, zeta_p);
        if (OL.is_zero(OL.sub(g_zeta, zj))) return j + 1;
    }
    raise(ErrorKind::InvariantViolated, "g(zeta) is not a power of zeta");
}

} // namespace skw
