#include "skw/ahseries.hpp"

#include <map>
#include <mutex>

namespace skw {

namespace {

std::vector<int> moebius_table(int64_t n)
{
    std::vector<int> mu(size_t(n + 1), 1);
    std::vector<bool> composite(size_t(n + 1), false);
    std::vector<int64_t> primes;
    for (int64_t i = 2; i <= n; ++i) {
        if (!composite[size_t(i)]) {
            primes.push_back(i);
            mu[size_t(i)] = -1;
        }
        for (int64_t q : primes) {
            if (i * q > n) break;
            composite[size_t(i * q)] = true;
            if (i % q == 0) {
                mu[size_t(i * q)] = 0;
                break;
            }
            mu[size_t(i * q)] = -mu[size_t(i)];
        }
    }
    return mu;
}

uint64_t inv_mod(uint64_t a, uint64_t m)
{
    int64_t t = 0, nt = 1, r = int64_t(m), nr = int64_t(a % m);
    while (nr) {
        int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    return uint64_t(t < 0 ? t + int64_t(m) : t);
}

// multiply poly (mod p, truncated at maxdeg) by (1 - X^M)^a for 0 <= a < p
void mul_binomial_factor(std::vector<uint8_t>& poly, uint32_t p, int64_t maxdeg, int64_t M,
                         uint32_t a)
{
    if (a == 0) return;
    // (1 - X^M)^a = sum_i binom(a,i) (-1)^i X^{Mi}
    std::vector<uint8_t> factor;
    uint64_t binom = 1;
    for (uint32_t i = 0; i <= a && int64_t(i) * M <= maxdeg; ++i) {
        uint64_t c = binom % p;
        if (i % 2) c = (p - c) % p;
        factor.push_back(uint8_t(c));
        binom = binom * (a - i) / (i + 1);
    }
    std::vector<uint8_t> out(size_t(maxdeg + 1), 0);
    for (int64_t d = 0; d <= maxdeg; ++d) {
        if (!poly[size_t(d)]) continue;
        for (size_t i = 0; i < factor.size(); ++i) {
            int64_t e = d + int64_t(i) * M;
            if (e > maxdeg) break;
            out[size_t(e)] = uint8_t((out[size_t(e)] + uint32_t(poly[size_t(d)]) * factor[i]) % p);
        }
    }
    poly = std::move(out);
}

} // namespace

std::vector<uint8_t> artin_hasse_coeffs_mod_p(uint32_t p, int64_t maxdeg)
{
    static std::mutex mu_lock;
    static std::map<std::pair<uint32_t, int64_t>, std::vector<uint8_t>> cache;
    {
        std::lock_guard<std::mutex> lk(mu_lock);
        auto it = cache.lower_bound({p, maxdeg});
        if (it != cache.end() && it->first.first == p && it->first.second >= maxdeg)
            return {it->second.begin(), it->second.begin() + maxdeg + 1};
    }

    auto mu = moebius_table(maxdeg);
    std::vector<uint8_t> poly(size_t(maxdeg + 1), 0);
    poly[0] = 1;
    for (int64_t m = 1; m <= maxdeg; ++m) {
        if (m % p == 0 || mu[size_t(m)] == 0) continue;
        // alpha = -mu(m)/m in Z/p^K with m p^K > maxdeg
        uint32_t K = 1;
        uint64_t pK = p;
        while (m * int64_t(pK) <= maxdeg) {
            pK *= p;
            ++K;
        }
        uint64_t alpha = (mu[size_t(m)] == 1) ? pK - 1 : 1; // -mu(m) mod p^K
        alpha = alpha * inv_mod(uint64_t(m % int64_t(pK)), pK) % pK;
        int64_t M = m;
        for (uint32_t j = 0; j < K; ++j) {
            mul_binomial_factor(poly, p, maxdeg, M, uint32_t(alpha % p));
            alpha /= p;
            M *= p;
        }
    }

    std::lock_guard<std::mutex> lk(mu_lock);
    cache[{p, maxdeg}] = poly;
    return poly;
}

std::vector<uint32_t> artin_hasse_coeffs_mod_pM(uint32_t p, int64_t maxdeg, uint32_t M)
{
    // guard digits: each step m divides by m+1, so v_p(maxdeg!) digits suffice
    uint32_t guard = 0;
    for (int64_t m = 1; m <= maxdeg; ++m) {
        int64_t t = m;
        while (t % p == 0) {
            ++guard;
            t /= p;
        }
    }
    uint64_t pK = 1;
    for (uint32_t i = 0; i < M + guard; ++i) {
        pK *= p;
        if (pK > (uint64_t(1) << 31))
            raise(ErrorKind::BadArgument, "artin-hasse precision out of range");
    }
    uint64_t pM = 1;
    for (uint32_t i = 0; i < M; ++i) pM *= p;

    std::vector<uint64_t> c(size_t(maxdeg + 1), 0);
    std::vector<uint32_t> valid(size_t(maxdeg + 1), M + guard);
    c[0] = 1;
    for (int64_t m = 0; m < maxdeg; ++m) {
        // (m+1) c_{m+1} = sum over p-power steps
        uint64_t num = 0;
        uint32_t vmin = M + guard;
        for (int64_t pn = 1; pn - 1 <= m; pn *= p) {
            num = (num + c[size_t(m - pn + 1)]) % pK;
            vmin = std::min(vmin, valid[size_t(m - pn + 1)]);
            if (pn > maxdeg) break;
        }
        uint64_t d = uint64_t(m + 1);
        uint32_t v = 0;
        while (d % p == 0) {
            ++v;
            d /= p;
        }
        // exact division by p^v, then by the unit d
        uint64_t pv = 1;
        for (uint32_t i = 0; i < v; ++i) pv *= p;
        if (num % pv != 0) raise(ErrorKind::InvariantViolated, "artin-hasse recurrence not integral");
        num /= pv;
        num = num * inv_mod(d % pK, pK) % pK;
        c[size_t(m + 1)] = num;
        if (vmin < v + M)
            raise(ErrorKind::PrecisionTooLow, "artin-hasse guard digits exhausted");
        valid[size_t(m + 1)] = vmin - v;
    }
    std::vector<uint32_t> out(size_t(maxdeg + 1));
    for (int64_t m = 0; m <= maxdeg; ++m) out[size_t(m)] = uint32_t(c[size_t(m)] % pM);
    return out;
}

TensorSeries ah_exp(const TensorSeries& x, int64_t N)
{
    const TensorRing* ring = x.ring();
    const FieldSpec* F = ring->coeff;
    TensorSeries xs = x.normalized();
    if (!xs.is_known_zero() && xs.min_support() <= 0)
        raise(ErrorKind::BadSupport, "argument must be supported in positive degrees");
    auto E = artin_hasse_coeffs_mod_p(F->p(), N);

    int64_t upto = std::min(N + 1, xs.exact() ? N + 1 : xs.prec());
    TensorSeries out(ring, 0, N + 1);
    for (size_t j = 0; j < ring->components(); ++j) {
        std::vector<FieldElem> acc(size_t(N + 1), F->zero());
        acc[0] = F->one();
        for (int64_t i = std::max<int64_t>(1, xs.min_support()); i < upto && i <= N; ++i) {
            FieldElem c = xs.coeff(j, i);
            if (c.is_zero()) continue;
            // multiply acc by E(c v^i) = sum_d E_d c^d v^{id}
            std::vector<FieldElem> nxt(size_t(N + 1), F->zero());
            FieldElem cp = F->one();
            for (int64_t d = 0; int64_t(i) * d <= N; ++d) {
                if (E[size_t(d)]) {
                    FieldElem ed = F->mul_scalar(cp, E[size_t(d)]);
                    for (int64_t e = 0; e + i * d <= N; ++e)
                        if (!acc[size_t(e)].is_zero())
                            nxt[size_t(e + i * d)] =
                                F->add(nxt[size_t(e + i * d)], F->mul(acc[size_t(e)], ed));
                }
                cp = F->mul(cp, c);
            }
            acc = std::move(nxt);
        }
        for (int64_t e = 0; e <= N; ++e) out.set_coeff(j, e, acc[size_t(e)]);
    }
    // precision: if x is not known through v^N, neither is the product
    if (!xs.exact() && xs.prec() <= N) return out.truncated(xs.prec());
    return out;
}

TensorSeries ah_log(const TensorSeries& u, int64_t N)
{
    const TensorRing* ring = u.ring();
    const FieldSpec* F = ring->coeff;
    TensorSeries un = u.normalized();
    if (un.min_support() < 0) raise(ErrorKind::NotPrincipalUnit, "negative support");
    for (size_t j = 0; j < ring->components(); ++j)
        if (!(un.coeff(j, 0) == F->one()))
            raise(ErrorKind::NotPrincipalUnit, "constant term must be 1");
    auto E = artin_hasse_coeffs_mod_p(F->p(), N);

    int64_t upto = std::min(N + 1, un.exact() ? N + 1 : un.prec());
    TensorSeries arg(ring, 1, upto < 1 ? 1 : upto);
    for (size_t j = 0; j < ring->components(); ++j) {
        std::vector<FieldElem> rem(size_t(N + 1), F->zero());
        for (int64_t e = 0; e <= N && e < upto; ++e) rem[size_t(e)] = un.coeff(j, e);
        for (int64_t i = 1; i < upto; ++i) {
            FieldElem c = rem[size_t(i)];
            arg.set_coeff(j, i, c);
            if (c.is_zero()) continue;
            // divide rem by E(c v^i), i.e. multiply by E(-c v^i)
            FieldElem mc = F->neg(c);
            std::vector<FieldElem> nxt(size_t(N + 1), F->zero());
            FieldElem cp = F->one();
            for (int64_t d = 0; int64_t(i) * d <= N; ++d) {
                if (E[size_t(d)]) {
                    FieldElem ed = F->mul_scalar(cp, E[size_t(d)]);
                    for (int64_t e = 0; e + i * d <= N; ++e)
                        if (!rem[size_t(e)].is_zero())
                            nxt[size_t(e + i * d)] =
                                F->add(nxt[size_t(e + i * d)], F->mul(rem[size_t(e)], ed));
                }
                cp = F->mul(cp, mc);
            }
            rem = std::move(nxt);
        }
    }
    return arg;
}

} // namespace skw
