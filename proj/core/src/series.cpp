#include "skw/series.hpp"

#include <algorithm>

namespace skw {

TensorRing make_tensor_ring(const FieldSpec* base, const FieldSpec* coeff)
{
    TensorRing r;
    r.base = base;
    r.coeff = coeff;
    Embedding e0 = make_embedding(base, coeff);
    for (uint32_t i = 0; i < base->degree(); ++i) r.emb.push_back(e0.precompose_frobenius(i));
    return r;
}

void attach_gal_structure(TensorRing& ring, const FieldSpec* k)
{
    const int f = int(k->degree());
    if (ring.base->degree() % k->degree() != 0)
        raise(ErrorKind::NoEmbedding, "k does not embed into the base field");
    ring.k_spec = k;
    ring.gal_shift = (ring.base == k) ? 0 : f;
    ring.k_emb.clear();
    Embedding k2E = make_embedding(k, ring.coeff);
    for (int i = 0; i < f; ++i) ring.k_emb.push_back(k2E.precompose_frobenius(i));

    ring.res_idx.assign(ring.components(), 0);
    if (ring.base == k) {
        for (size_t j = 0; j < ring.components(); ++j) ring.res_idx[j] = int(j);
        return;
    }
    Embedding k2l = make_embedding(k, ring.base);
    FieldElem gk = k->generator();
    FieldElem gl = k2l.apply(gk);
    for (size_t j = 0; j < ring.components(); ++j) {
        FieldElem img = ring.emb[j].apply(gl);
        int found = -1;
        for (int i = 0; i < f; ++i)
            if (ring.k_emb[size_t(i)].apply(gk) == img) {
                found = i;
                break;
            }
        if (found < 0) raise(ErrorKind::NoEmbedding, "restriction of component not found");
        ring.res_idx[j] = found;
    }
    for (size_t j = 0; j < ring.components(); ++j)
        if (ring.res_idx[(j + 1) % ring.components()] != (ring.res_idx[j] + 1) % f)
            raise(ErrorKind::InvariantViolated, "component restriction is not cyclic");
}

GalElem gal_compose(const GalElem& a, const GalElem& b, int pf1)
{
    GalElem g;
    g.s = (a.s + b.s) % pf1;
    g.zeta = a.zeta.spec->mul(a.zeta, b.zeta);
    return g;
}

GalElem gal_inverse(const GalElem& a, int pf1)
{
    GalElem g;
    g.s = (pf1 - a.s % pf1) % pf1;
    g.zeta = a.zeta.spec->inv(a.zeta);
    return g;
}

std::vector<GalElem> gal_group(const FieldSpec* k)
{
    int pf1 = int(k->order()) - 1;
    std::vector<GalElem> out;
    FieldElem z = k->one();
    for (int t = 0; t < pf1; ++t) {
        for (int s = 0; s < pf1; ++s) out.push_back(GalElem{s, z});
        z = k->mul(z, k->generator());
    }
    return out;
}

TensorSeries::TensorSeries(const TensorRing* ring, int64_t min_support, int64_t prec)
    : ring_(ring), ms_(min_support), prec_(std::min(prec, kPrecExact))
{
    if (prec_ < ms_) raise(ErrorKind::BadArgument, "prec below min_support");
    stored_ = prec_ >= kPrecExact ? 0 : prec_ - ms_;
    coeffs_.assign(size_t(stored_) * ring_->components(), ring_->coeff->zero());
}

TensorSeries TensorSeries::zero(const TensorRing* ring, int64_t prec)
{
    TensorSeries s(ring, 0, std::min(prec, kPrecExact));
    s.stored_ = 0;
    s.coeffs_.clear();
    return s;
}

TensorSeries TensorSeries::monomial(const TensorRing* ring, size_t comp, int64_t e,
                                    const FieldElem& c)
{
    if (comp >= ring->components()) raise(ErrorKind::IndexOutOfRange, "component index");
    TensorSeries s(ring, e, e); // empty window
    s.prec_ = kPrecExact;
    s.stored_ = 1;
    s.coeffs_.assign(ring->components(), ring->coeff->zero());
    s.coeffs_[comp] = c;
    return s;
}

TensorSeries TensorSeries::constant(const TensorRing* ring, const FieldElem& base_elem)
{
    if (base_elem.spec != ring->base) raise(ErrorKind::RingMismatch, "constant not in base field");
    TensorSeries s(ring, 0, 0);
    s.prec_ = kPrecExact;
    s.stored_ = 1;
    s.coeffs_.resize(ring->components());
    for (size_t j = 0; j < ring->components(); ++j) s.coeffs_[j] = ring->emb[j].apply(base_elem);
    return s;
}

TensorSeries TensorSeries::diag_v_power(const TensorRing* ring, const std::vector<int64_t>& exps)
{
    if (exps.size() != ring->components()) raise(ErrorKind::BadArgument, "exponent count");
    int64_t lo = *std::min_element(exps.begin(), exps.end());
    int64_t hi = *std::max_element(exps.begin(), exps.end());
    TensorSeries s(ring, lo, lo);
    s.prec_ = kPrecExact;
    s.stored_ = hi - lo + 1;
    s.coeffs_.assign(size_t(s.stored_) * ring->components(), ring->coeff->zero());
    for (size_t j = 0; j < ring->components(); ++j)
        s.coeffs_[j * size_t(s.stored_) + size_t(exps[j] - lo)] = ring->coeff->one();
    return s;
}

TensorSeries TensorSeries::e_tau(const TensorRing* ring, size_t comp)
{
    if (comp >= ring->components()) raise(ErrorKind::IndexOutOfRange, "component index");
    return monomial(ring, comp, 0, ring->coeff->one());
}

FieldElem TensorSeries::coeff(size_t comp, int64_t e) const
{
    if (comp >= components()) raise(ErrorKind::IndexOutOfRange, "component index");
    if (e < ms_) return ring_->coeff->zero();
    if (e < ms_ + stored_) return coeffs_[comp * size_t(stored_) + size_t(e - ms_)];
    if (e < prec_) return ring_->coeff->zero();
    raise(ErrorKind::PrecisionLoss,
          "coefficient of v^" + std::to_string(e) + " beyond precision " + std::to_string(prec_));
}

void TensorSeries::set_coeff(size_t comp, int64_t e, const FieldElem& c)
{
    if (comp >= components()) raise(ErrorKind::IndexOutOfRange, "component index");
    if (e < ms_ || e >= ms_ + stored_) raise(ErrorKind::IndexOutOfRange, "exponent outside window");
    coeffs_[comp * size_t(stored_) + size_t(e - ms_)] = c;
}

bool TensorSeries::is_known_zero() const
{
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

TensorSeries TensorSeries::normalized() const
{
    int64_t lead = 0;
    const size_t m = components();
    for (; lead < stored_; ++lead) {
        bool nz = false;
        for (size_t j = 0; j < m; ++j)
            if (!coeffs_[j * size_t(stored_) + size_t(lead)].is_zero()) {
                nz = true;
                break;
            }
        if (nz) break;
    }
    if (lead == 0) return *this;
    TensorSeries s = *this;
    s.ms_ = ms_ + lead;
    s.stored_ = stored_ - lead;
    s.coeffs_.assign(size_t(s.stored_) * m, ring_->coeff->zero());
    for (size_t j = 0; j < m; ++j)
        for (int64_t e = 0; e < s.stored_; ++e)
            s.coeffs_[j * size_t(s.stored_) + size_t(e)] =
                coeffs_[j * size_t(stored_) + size_t(e + lead)];
    if (s.stored_ == 0 && s.prec_ < kPrecExact) s.ms_ = std::min(s.ms_, s.prec_);
    return s;
}

TensorSeries TensorSeries::truncated(int64_t new_prec) const
{
    if (new_prec >= prec_) return *this;
    TensorSeries s(ring_, std::min(ms_, new_prec), new_prec);
    for (size_t j = 0; j < components(); ++j)
        for (int64_t e = s.ms_; e < std::min(new_prec, ms_ + stored_); ++e)
            if (e >= ms_) s.set_coeff(j, e, coeffs_[j * size_t(stored_) + size_t(e - ms_)]);
    return s;
}

void TensorSeries::require_prec(int64_t floor) const
{
    if (prec_ < floor)
        raise(ErrorKind::PrecisionLoss, "series precision " + std::to_string(prec_) +
                                            " below required " + std::to_string(floor));
}

namespace {
int64_t clamp_prec(int64_t x) { return std::min(x, kPrecExact); }
} // namespace

TensorSeries TensorSeries::add(const TensorSeries& o) const
{
    if (ring_ != o.ring_) raise(ErrorKind::RingMismatch, "add over different rings");
    int64_t prec = std::min(prec_, o.prec_);
    int64_t ms = std::min(ms_, o.ms_);
    int64_t end = std::min(prec, std::max(ms_ + stored_, o.ms_ + o.stored_));
    if (end < ms) end = ms;
    TensorSeries s(ring_, ms, end);
    s.prec_ = clamp_prec(prec);
    for (size_t j = 0; j < components(); ++j)
        for (int64_t e = ms; e < end; ++e)
            s.set_coeff(j, e, ring_->coeff->add(coeff(j, e), o.coeff(j, e)));
    return s;
}

TensorSeries TensorSeries::sub(const TensorSeries& o) const { return add(o.negated()); }

TensorSeries TensorSeries::negated() const
{
    TensorSeries s = *this;
    for (auto& c : s.coeffs_) c = ring_->coeff->neg(c);
    return s;
}

TensorSeries TensorSeries::scaled(const FieldElem& e_scalar) const
{
    TensorSeries s = *this;
    for (auto& c : s.coeffs_) c = ring_->coeff->mul(c, e_scalar);
    return s;
}

TensorSeries TensorSeries::shifted(int64_t j) const
{
    TensorSeries s = *this;
    s.ms_ += j;
    s.prec_ = clamp_prec(prec_ >= kPrecExact ? kPrecExact : prec_ + j);
    return s;
}

TensorSeries TensorSeries::mul(const TensorSeries& o) const
{
    if (ring_ != o.ring_) raise(ErrorKind::RingMismatch, "mul over different rings");
    const FieldSpec* F = ring_->coeff;
    int64_t prec;
    if (exact() && o.exact())
        prec = kPrecExact;
    else
        prec = std::min(prec_ + o.ms_, o.prec_ + ms_);
    int64_t ms = ms_ + o.ms_;
    int64_t end = std::min(prec, (ms_ + stored_ - 1) + (o.ms_ + o.stored_ - 1) + 1);
    if (stored_ == 0 || o.stored_ == 0) end = ms;
    if (end < ms) end = ms;
    TensorSeries s(ring_, ms, end);
    s.prec_ = clamp_prec(prec);
    const size_t m = components();
    for (size_t j = 0; j < m; ++j) {
        const FieldElem* A = coeffs_.data() + j * size_t(stored_);
        const FieldElem* B = o.coeffs_.data() + j * size_t(o.stored_);
        FieldElem* C = s.coeffs_.data() + j * size_t(s.stored_);
        for (int64_t ia = 0; ia < stored_; ++ia) {
            if (A[ia].is_zero()) continue;
            int64_t base = (ms_ + ia) + o.ms_ - ms; // index offset into C for ib = 0
            int64_t ib_max = std::min(o.stored_, s.stored_ - base);
            for (int64_t ib = 0; ib < ib_max; ++ib) {
                if (B[ib].is_zero()) continue;
                C[size_t(base + ib)] = F->add(C[size_t(base + ib)], F->mul(A[ia], B[ib]));
            }
        }
    }
    return s;
}

TensorSeries TensorSeries::inverted() const
{
    const FieldSpec* F = ring_->coeff;
    const size_t m = components();
    if (stored_ == 0) raise(ErrorKind::NotInvertible, "zero series");
    int64_t L = exact() ? stored_ : prec_ - ms_;
    TensorSeries s(ring_, -ms_, -ms_ + L);
    for (size_t j = 0; j < m; ++j) {
        FieldElem a0 = coeffs_[j * size_t(stored_)];
        if (a0.is_zero())
            raise(ErrorKind::NotInvertible, "component " + std::to_string(j) +
                                                " has zero leading coefficient");
        FieldElem b0 = F->inv(a0);
        std::vector<FieldElem> b(size_t(L), F->zero());
        b[0] = b0;
        for (int64_t n = 1; n < L; ++n) {
            FieldElem acc = F->zero();
            int64_t kmax = std::min(n, stored_ - 1);
            for (int64_t k = 1; k <= kmax; ++k) {
                const FieldElem& ak = coeffs_[j * size_t(stored_) + size_t(k)];
                if (ak.is_zero() || b[size_t(n - k)].is_zero()) continue;
                acc = F->add(acc, F->mul(ak, b[size_t(n - k)]));
            }
            b[size_t(n)] = F->neg(F->mul(b0, acc));
        }
        for (int64_t n = 0; n < L; ++n) s.set_coeff(j, -ms_ + n, b[size_t(n)]);
    }
    return s;
}

TensorSeries TensorSeries::derivative() const
{
    const FieldSpec* F = ring_->coeff;
    TensorSeries s(ring_, ms_ - 1, ms_ - 1);
    s.prec_ = clamp_prec(exact() ? kPrecExact : prec_ - 1);
    s.stored_ = stored_;
    s.coeffs_.assign(coeffs_.size(), F->zero());
    for (size_t j = 0; j < components(); ++j)
        for (int64_t e = 0; e < stored_; ++e) {
            int64_t n = ms_ + e; // coefficient of v^n becomes n*c at v^{n-1}
            int64_t r = n % int64_t(F->p());
            if (r < 0) r += F->p();
            s.coeffs_[j * size_t(stored_) + size_t(e)] =
                F->mul_scalar(coeffs_[j * size_t(stored_) + size_t(e)], uint32_t(r));
        }
    return s;
}

TensorSeries TensorSeries::vddv() const { return derivative().shifted(1); }

TensorSeries TensorSeries::phi(int64_t m) const
{
    if (m < 0) raise(ErrorKind::BadArgument, "phi exponent must be nonnegative");
    const size_t nc = components();
    int64_t pm = 1;
    for (int64_t i = 0; i < m; ++i) pm *= ring_->coeff->p();
    int64_t ms = pm * ms_;
    int64_t prec = exact() ? kPrecExact : pm * (prec_ - 1) + 1;
    int64_t stored = stored_ == 0 ? 0 : pm * (stored_ - 1) + 1;
    TensorSeries s(ring_, ms, ms);
    s.prec_ = clamp_prec(prec);
    s.stored_ = stored;
    s.coeffs_.assign(size_t(stored) * nc, ring_->coeff->zero());
    for (size_t j = 0; j < nc; ++j) {
        size_t src = (j + size_t(m)) % nc;
        for (int64_t e = 0; e < stored_; ++e)
            s.coeffs_[j * size_t(stored) + size_t(pm * e)] =
                coeffs_[src * size_t(stored_) + size_t(e)];
    }
    return s;
}

TensorSeries TensorSeries::gal_act(const GalElem& g) const
{
    if (ring_->gal_shift < 0)
        raise(ErrorKind::BadArgument, "ring does not carry a Galois action");
    const FieldSpec* F = ring_->coeff;
    const size_t nc = components();
    TensorSeries s = *this;
    int shift = int((int64_t(g.s) * ring_->gal_shift) % int64_t(nc));
    for (size_t j = 0; j < nc; ++j) {
        FieldElem zj = ring_->k_emb[size_t(ring_->res_idx[j])].apply(g.zeta);
        FieldElem pw = F->pow_signed(zj, ms_);
        size_t src = (j + size_t(shift)) % nc;
        for (int64_t e = 0; e < stored_; ++e) {
            s.coeffs_[j * size_t(stored_) + size_t(e)] =
                F->mul(coeffs_[src * size_t(stored_) + size_t(e)], pw);
            pw = F->mul(pw, zj);
        }
    }
    return s;
}

TensorSeries TensorSeries::component_series(size_t comp) const
{
    if (comp >= components()) raise(ErrorKind::IndexOutOfRange, "component index");
    TensorSeries s = *this;
    for (size_t j = 0; j < components(); ++j) {
        if (j == comp) continue;
        for (int64_t e = 0; e < stored_; ++e)
            s.coeffs_[j * size_t(stored_) + size_t(e)] = ring_->coeff->zero();
    }
    return s;
}

FieldElem TensorSeries::const_trace() const
{
    if (prec_ <= 0) raise(ErrorKind::PrecisionLoss, "constant term not determined");
    FieldElem acc = ring_->coeff->zero();
    for (size_t j = 0; j < components(); ++j) acc = ring_->coeff->add(acc, coeff(j, 0));
    return acc;
}

bool TensorSeries::equal_below(const TensorSeries& o, int64_t bound) const
{
    if (ring_ != o.ring_) raise(ErrorKind::RingMismatch, "comparison over different rings");
    int64_t lo = std::min(ms_, o.ms_);
    for (size_t j = 0; j < components(); ++j)
        for (int64_t e = lo; e < bound; ++e)
            if (!(coeff(j, e) == o.coeff(j, e))) return false;
    return true;
}

TensorSeries include_k_series(const TensorSeries& x, const TensorRing* lring)
{
    const TensorRing* kr = x.ring();
    if (lring->k_spec != kr->base)
        raise(ErrorKind::RingMismatch, "inclusion requires matching residue fields");
    int64_t step = int64_t(lring->base->degree()) / kr->base->degree(); // p^f - 1
    TensorSeries s(lring, 0, 0);
    s.ms_ = step * x.min_support();
    s.prec_ = x.exact() ? kPrecExact : std::min(kPrecExact, step * (x.prec() - 1) + 1);
    s.stored_ = x.stored_ == 0 ? 0 : step * (x.stored_ - 1) + 1;
    s.coeffs_.assign(size_t(s.stored_) * lring->components(), lring->coeff->zero());
    for (size_t j = 0; j < lring->components(); ++j) {
        size_t src = size_t(lring->res_idx[j]);
        for (int64_t e = 0; e < x.stored_; ++e)
            s.coeffs_[j * size_t(s.stored_) + size_t(step * e)] =
                x.coeffs_[src * size_t(x.stored_) + size_t(e)];
    }
    return s;
}

} // namespace skw
