#include "skw/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace skw {

const char* error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::EvenPrime: return "EvenPrime";
    case ErrorKind::ReduciblePoly: return "ReduciblePoly";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MalformedDescriptor: return "MalformedDescriptor";
    case ErrorKind::NoValidPairs: return "NoValidPairs";
    case ErrorKind::BadSupport: return "BadSupport";
    case ErrorKind::NotPrincipalUnit: return "NotPrincipalUnit";
    case ErrorKind::SupportTooNegative: return "SupportTooNegative";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::NonUniqueMaxProfile: return "NonUniqueMaxProfile";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::NoVerdict: return "NoVerdict";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
    case ErrorKind::DependentFamily: return "DependentFamily";
    case ErrorKind::CardinalityMismatch: return "CardinalityMismatch";
    }
    return "Error";
}

bool is_prime_u64(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> factor_u64(uint64_t n)
{
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

namespace {

// dense F_p polynomial helpers used only during construction
using Poly = std::vector<uint8_t>;

Poly poly_trim(Poly a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, uint32_t p)
{
    std::vector<uint32_t> acc(std::max(a.size() + b.size(), f.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint32_t(a[i]) * b[j];
    }
    size_t d = f.size() - 1; // f monic, coefficients f[0..d]
    for (size_t m = acc.size(); m-- > d;) {
        uint32_t r = acc[m] % p;
        if (!r) continue;
        acc[m] = 0;
        for (size_t j = 0; j < d; ++j) acc[m - d + j] = (acc[m - d + j] + r * (p - f[j] % p)) % (p * p * 64);
    }
    Poly out(d);
    for (size_t j = 0; j < d; ++j) out[j] = uint8_t(acc[j] % p);
    return poly_trim(out);
}

Poly poly_pow_p_mod(const Poly& a, uint32_t p, const Poly& f)
{
    Poly r{1}, base = a;
    uint32_t e = p;
    while (e) {
        if (e & 1) r = poly_mul_mod(r, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_sub(Poly a, const Poly& b, uint32_t p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = uint8_t((a[i] + p - b[i]) % p);
    return poly_trim(a);
}

Poly poly_gcd(Poly a, Poly b, uint32_t p)
{
    a = poly_trim(a);
    b = poly_trim(b);
    auto inv_mod_p = [p](uint32_t v) {
        uint32_t r = 1, base = v % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            uint32_t lc = inv_mod_p(b.back());
            uint32_t coef = uint32_t(a.back()) * lc % p;
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[shift + i] = uint8_t((a[shift + i] + p - coef * b[i] % p) % p);
            a = poly_trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

// Irreducibility over F_p: gcd(x^{p^i} - x, f) = 1 for 0 < i < d and
// x^{p^d} = x mod f.
bool is_irreducible(const Poly& f, uint32_t p)
{
    size_t d = f.size() - 1;
    if (d == 0) return false;
    Poly x{0, 1};
    if (d == 1) return true;
    Poly xp = x;
    for (size_t i = 1; i < d; ++i) {
        xp = poly_pow_p_mod(xp, p, f);
        Poly diff = poly_sub(xp, x, p);
        Poly g = poly_gcd(diff, f, p);
        if (!(g.size() == 1)) return false;
    }
    xp = poly_pow_p_mod(xp, p, f);
    return poly_sub(xp, x, p).empty();
}

struct SpecKey {
    uint32_t p, d;
    std::vector<uint8_t> poly;
    bool operator<(const SpecKey& o) const
    {
        return std::tie(p, d, poly) < std::tie(o.p, o.d, o.poly);
    }
};

} // namespace

struct FieldSpecRegistry {
    std::mutex mu;
    std::map<SpecKey, std::unique_ptr<FieldSpec>> specs;

    static FieldSpecRegistry& instance()
    {
        static FieldSpecRegistry r;
        return r;
    }
};

FieldSpec::FieldSpec(uint32_t p, uint32_t d, std::vector<uint8_t> poly)
    : p_(p), d_(d), poly_(std::move(poly))
{
    q_ = 1;
    for (uint32_t i = 0; i < d_; ++i) q_ *= p_;
    build_tables();
}

const FieldSpec* FieldSpec::get(uint32_t p, uint32_t d, std::optional<std::vector<uint8_t>> poly)
{
    if (!is_prime_u64(p)) raise(ErrorKind::NotPrime, "p = " + std::to_string(p));
    if (p == 2) raise(ErrorKind::EvenPrime, "p must be an odd prime");
    if (d == 0 || d > uint32_t(kMaxDeg))
        raise(ErrorKind::BadArgument, "extension degree out of range: " + std::to_string(d));

    std::vector<uint8_t> f;
    if (poly) {
        f = *poly;
        if (f.size() != d + 1 || f.back() != 1)
            raise(ErrorKind::BadArgument, "modulus must be monic of degree d");
        for (auto& c : f) c = uint8_t(c % p);
        if (!is_irreducible(f, p)) raise(ErrorKind::ReduciblePoly, "modulus is reducible");
    } else {
        // smallest monic irreducible in value order of (c_0,...,c_{d-1})
        uint64_t total = 1;
        for (uint32_t i = 0; i < d; ++i) total *= p;
        bool found = false;
        for (uint64_t v = 0; v < total; ++v) {
            f.assign(d + 1, 0);
            uint64_t t = v;
            for (uint32_t i = 0; i < d; ++i) {
                f[i] = uint8_t(t % p);
                t /= p;
            }
            f[d] = 1;
            if (is_irreducible(f, p)) {
                found = true;
                break;
            }
        }
        if (!found) raise(ErrorKind::BadArgument, "no irreducible polynomial found");
    }

    auto& reg = FieldSpecRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mu);
    SpecKey key{p, d, f};
    auto it = reg.specs.find(key);
    if (it == reg.specs.end())
        it = reg.specs.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, d, f))).first;
    return it->second.get();
}

const FieldSpec* build_field(uint32_t p, uint32_t d, std::optional<std::vector<uint8_t>> poly)
{
    return FieldSpec::get(p, d, std::move(poly));
}

void FieldSpec::build_tables()
{
    // reduction rows x^{d+i} mod poly
    red_.assign(d_ ? d_ - 1 : 0, {});
    std::array<uint8_t, kMaxDeg> cur{}; // x^d mod poly = -poly[0..d)
    for (uint32_t j = 0; j < d_; ++j) cur[j] = uint8_t((p_ - poly_[j] % p_) % p_);
    for (uint32_t i = 0; i + 1 < d_; ++i) {
        red_[i] = cur;
        // multiply cur by x
        std::array<uint32_t, kMaxDeg + 1> t{};
        for (uint32_t j = 0; j < d_; ++j) t[j + 1] = cur[j];
        uint32_t top = t[d_];
        for (uint32_t j = 0; j < d_; ++j)
            t[j] = (t[j] + top * ((p_ - poly_[j] % p_) % p_)) % p_;
        for (uint32_t j = 0; j < d_; ++j) cur[j] = uint8_t(t[j] % p_);
    }

    // Frobenius matrix: column j = (x^j)^p = x^{jp} mod poly
    frob_.assign(d_, {});
    FieldElem xp = pow(x(), p_);
    FieldElem col = one();
    for (uint32_t j = 0; j < d_; ++j) {
        frob_[j] = col.c;
        col = mul(col, xp);
    }
    // fix column 0 (1^p = 1) and rebuild properly: column j = (x^p)^j
    // (the loop above already computes exactly that)

    // deterministic multiplicative generator
    group_prime_factors_ = factor_u64(q_ - 1);
    for (uint64_t v = 1; v < q_; ++v) {
        FieldElem cand = from_value(v);
        bool ok = true;
        for (uint64_t ell : group_prime_factors_) {
            if (pow(cand, (q_ - 1) / ell) == one()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_ = cand;
            break;
        }
    }
}

FieldElem FieldSpec::zero() const
{
    FieldElem e;
    e.spec = this;
    return e;
}

FieldElem FieldSpec::one() const { return from_int(1); }

FieldElem FieldSpec::x() const
{
    FieldElem e = zero();
    if (d_ == 1) {
        // the class of x is the constant -poly[0]
        e.c[0] = uint8_t((p_ - poly_[0] % p_) % p_);
    } else {
        e.c[1] = 1;
    }
    return e;
}

FieldElem FieldSpec::from_coords(const std::vector<uint8_t>& coords) const
{
    if (coords.size() > d_) raise(ErrorKind::BadArgument, "coordinate vector too long");
    FieldElem e = zero();
    for (size_t i = 0; i < coords.size(); ++i) e.c[i] = uint8_t(coords[i] % p_);
    return e;
}

FieldElem FieldSpec::from_int(int64_t n) const
{
    FieldElem e = zero();
    int64_t r = n % int64_t(p_);
    if (r < 0) r += p_;
    e.c[0] = uint8_t(r);
    return e;
}

FieldElem FieldSpec::from_value(uint64_t value) const
{
    FieldElem e = zero();
    for (uint32_t i = 0; i < d_ && value; ++i) {
        e.c[i] = uint8_t(value % p_);
        value /= p_;
    }
    return e;
}

uint64_t FieldSpec::value(const FieldElem& e) const
{
    uint64_t v = 0;
    for (uint32_t i = d_; i-- > 0;) v = v * p_ + e.c[i];
    return v;
}

FieldElem FieldSpec::add(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r = zero();
    for (uint32_t i = 0; i < d_; ++i) {
        uint32_t s = uint32_t(a.c[i]) + b.c[i];
        r.c[i] = uint8_t(s >= p_ ? s - p_ : s);
    }
    return r;
}

FieldElem FieldSpec::sub(const FieldElem& a, const FieldElem& b) const
{
    FieldElem r = zero();
    for (uint32_t i = 0; i < d_; ++i) {
        uint32_t s = uint32_t(a.c[i]) + p_ - b.c[i];
        r.c[i] = uint8_t(s >= p_ ? s - p_ : s);
    }
    return r;
}

FieldElem FieldSpec::neg(const FieldElem& a) const { return sub(zero(), a); }

FieldElem FieldSpec::mul(const FieldElem& a, const FieldElem& b) const
{
    std::array<uint32_t, 2 * kMaxDeg> acc{};
    for (uint32_t i = 0; i < d_; ++i) {
        uint32_t ai = a.c[i];
        if (!ai) continue;
        for (uint32_t j = 0; j < d_; ++j) acc[i + j] += ai * b.c[j];
    }
    for (uint32_t m = 2 * d_ - 2; m >= d_ && d_ > 1; --m) {
        uint32_t r = acc[m] % p_;
        if (r) {
            const auto& row = red_[m - d_];
            for (uint32_t j = 0; j < d_; ++j) acc[j] += r * row[j];
        }
        if (m == d_) break;
    }
    FieldElem r = zero();
    if (d_ == 1) {
        r.c[0] = uint8_t(acc[0] % p_);
    } else {
        for (uint32_t j = 0; j < d_; ++j) r.c[j] = uint8_t(acc[j] % p_);
    }
    return r;
}

FieldElem FieldSpec::mul_scalar(const FieldElem& a, uint32_t s) const
{
    s %= p_;
    FieldElem r = zero();
    for (uint32_t i = 0; i < d_; ++i) r.c[i] = uint8_t(uint32_t(a.c[i]) * s % p_);
    return r;
}

FieldElem FieldSpec::pow(const FieldElem& a, uint64_t e) const
{
    FieldElem r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElem FieldSpec::pow_signed(const FieldElem& a, int64_t e) const
{
    if (e >= 0) return pow(a, uint64_t(e));
    return pow(inv(a), uint64_t(-e));
}

FieldElem FieldSpec::inv(const FieldElem& a) const
{
    if (a.is_zero()) raise(ErrorKind::NotInvertible, "zero has no inverse");
    return pow(a, q_ - 2);
}

FieldElem FieldSpec::frobenius_iter(const FieldElem& a, int64_t m) const
{
    int64_t mm = m % int64_t(d_);
    if (mm < 0) mm += d_;
    FieldElem cur = a;
    for (int64_t it = 0; it < mm; ++it) {
        FieldElem nxt = zero();
        for (uint32_t j = 0; j < d_; ++j) {
            uint32_t cj = cur.c[j];
            if (!cj) continue;
            const auto& col = frob_[j];
            for (uint32_t i = 0; i < d_; ++i)
                nxt.c[i] = uint8_t((nxt.c[i] + cj * col[i]) % p_);
        }
        cur = nxt;
    }
    return cur;
}

FieldElem FieldSpec::trace_to_prime(const FieldElem& a) const
{
    FieldElem s = a, cur = a;
    for (uint32_t i = 1; i < d_; ++i) {
        cur = frobenius_iter(cur, 1);
        s = add(s, cur);
    }
    FieldElem r = zero();
    r.c[0] = s.c[0]; // the trace lies in F_p
    return r;
}

uint32_t FieldSpec::trace_to_prime_int(const FieldElem& a) const
{
    return trace_to_prime(a).c[0];
}

std::string FieldSpec::to_string(const FieldElem& e) const
{
    std::string s;
    for (uint32_t i = 0; i < d_; ++i) {
        if (i) s += ',';
        s += std::to_string(int(e.c[i]));
    }
    return s;
}

// ---------------------------------------------------------------------------
// embeddings

namespace {

// dense polynomial over an arbitrary FieldSpec, used for root finding
struct EPoly {
    const FieldSpec* F;
    std::vector<FieldElem> c;

    void trim()
    {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    int deg() const { return int(c.size()) - 1; }
};

EPoly epoly_mul_mod(const EPoly& a, const EPoly& b, const EPoly& f)
{
    const FieldSpec* F = a.F;
    std::vector<FieldElem> acc(a.c.size() + b.c.size(), F->zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            acc[i + j] = F->add(acc[i + j], F->mul(a.c[i], b.c[j]));
    }
    size_t d = f.c.size() - 1;
    FieldElem lcinv = F->inv(f.c.back());
    for (size_t m = acc.size(); m-- > d;) {
        if (acc[m].is_zero()) continue;
        FieldElem coef = F->mul(acc[m], lcinv);
        acc[m] = F->zero();
        for (size_t j = 0; j < d; ++j)
            acc[m - d + j] = F->sub(acc[m - d + j], F->mul(coef, f.c[j]));
    }
    acc.resize(d);
    EPoly out{F, std::move(acc)};
    out.trim();
    return out;
}

EPoly epoly_pow_mod(EPoly base, uint64_t e, const EPoly& f)
{
    const FieldSpec* F = base.F;
    EPoly r{F, {F->one()}};
    while (e) {
        if (e & 1) r = epoly_mul_mod(r, base, f);
        base = epoly_mul_mod(base, base, f);
        e >>= 1;
    }
    return r;
}

EPoly epoly_gcd(EPoly a, EPoly b)
{
    const FieldSpec* F = a.F;
    a.trim();
    b.trim();
    while (!b.c.empty()) {
        FieldElem lcinv = F->inv(b.c.back());
        while (a.c.size() >= b.c.size() && !a.c.empty()) {
            FieldElem coef = F->mul(a.c.back(), lcinv);
            size_t shift = a.c.size() - b.c.size();
            for (size_t i = 0; i < b.c.size(); ++i)
                a.c[shift + i] = F->sub(a.c[shift + i], F->mul(coef, b.c[i]));
            a.trim();
        }
        std::swap(a, b);
    }
    return a;
}

// Split f (squarefree, splits into linear factors over F) into roots.
// Deterministic: the shift sequence is fixed, and the returned set of roots
// is independent of the splitting order anyway.
void epoly_roots(EPoly f, std::vector<FieldElem>& out)
{
    const FieldSpec* F = f.F;
    f.trim();
    if (f.deg() <= 0) return;
    if (f.deg() == 1) {
        out.push_back(F->neg(F->mul(f.c[0], F->inv(f.c[1]))));
        return;
    }
    uint64_t half = (F->order() - 1) / 2;
    FieldElem delta = F->zero();
    for (uint64_t attempt = 0;; ++attempt) {
        // pow((x + delta), (q-1)/2) - 1 mod f
        EPoly xs{F, {delta, F->one()}};
        EPoly t = epoly_pow_mod(xs, half, f);
        if (t.c.empty())
            t.c.push_back(F->neg(F->one()));
        else
            t.c[0] = F->sub(t.c[0], F->one());
        t.trim();
        EPoly g = epoly_gcd(t, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            // normalize g monic and divide f by g
            FieldElem lcinv = F->inv(g.c.back());
            for (auto& cc : g.c) cc = F->mul(cc, lcinv);
            EPoly q{F, {}};
            EPoly rem = f;
            q.c.assign(f.c.size() - g.c.size() + 1, F->zero());
            while (rem.c.size() >= g.c.size() && !rem.c.empty()) {
                FieldElem coef = rem.c.back();
                size_t shift = rem.c.size() - g.c.size();
                q.c[shift] = coef;
                for (size_t i = 0; i < g.c.size(); ++i)
                    rem.c[shift + i] = F->sub(rem.c[shift + i], F->mul(coef, g.c[i]));
                rem.trim();
            }
            epoly_roots(g, out);
            epoly_roots(q, out);
            return;
        }
        delta = F->add(F->mul(delta, F->generator()), F->one());
        if (attempt > 200) raise(ErrorKind::NoConvergence, "root splitting did not progress");
    }
}

} // namespace

std::vector<FieldElem> modulus_roots(const FieldSpec* src, const FieldSpec* dst)
{
    if (dst->p() != src->p() || dst->degree() % src->degree() != 0)
        raise(ErrorKind::NoEmbedding,
              "degree " + std::to_string(src->degree()) + " does not divide " +
                  std::to_string(dst->degree()));
    // map the modulus into dst[X] and find one root, then take the Frobenius orbit
    EPoly f{dst, {}};
    for (auto ci : src->poly()) f.c.push_back(dst->from_int(ci));
    std::vector<FieldElem> roots;
    if (src->degree() == 1) {
        roots.push_back(dst->neg(f.c[0]));
    } else {
        std::vector<FieldElem> found;
        epoly_roots(f, found);
        if (found.empty()) raise(ErrorKind::NoEmbedding, "modulus has no root in target");
        FieldElem r = found[0];
        FieldElem cur = r;
        for (uint32_t i = 0; i < src->degree(); ++i) {
            roots.push_back(cur);
            cur = dst->frobenius_iter(cur, 1);
        }
    }
    std::sort(roots.begin(), roots.end(), [&](const FieldElem& a, const FieldElem& b) {
        return dst->value(a) < dst->value(b);
    });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

void Embedding::build()
{
    powers_.clear();
    FieldElem cur = dst_->one();
    for (uint32_t i = 0; i < src_->degree(); ++i) {
        powers_.push_back(cur);
        cur = dst_->mul(cur, root_);
    }
}

FieldElem Embedding::apply(const FieldElem& a) const
{
    FieldElem r = dst_->zero();
    for (uint32_t i = 0; i < src_->degree(); ++i)
        if (a.c[i]) r = dst_->add(r, dst_->mul_scalar(powers_[i], a.c[i]));
    return r;
}

Embedding Embedding::precompose_frobenius(int64_t m) const
{
    Embedding e = *this;
    // (this ∘ Frob^m)(x) = this(x^{p^m}); on the root: new root = root^{p^m}
    int64_t mm = m % int64_t(src_->degree());
    if (mm < 0) mm += src_->degree();
    FieldElem nr = root_;
    for (int64_t i = 0; i < mm; ++i) nr = dst_->pow(nr, dst_->p());
    e.root_ = nr;
    e.build();
    return e;
}

Embedding make_embedding(const FieldSpec* src, const FieldSpec* dst)
{
    auto roots = modulus_roots(src, dst);
    Embedding e;
    e.src_ = src;
    e.dst_ = dst;
    e.root_ = roots[0];
    e.build();
    return e;
}

FieldElem embed(const FieldElem& x, const FieldSpec* target)
{
    if (x.spec == target) return x;
    return make_embedding(x.spec, target).apply(x);
}

} // namespace skw
