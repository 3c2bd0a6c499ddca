#include "skw/pairing.hpp"

#include <algorithm>

namespace skw {

Context::Context(const ContextParams& prm) : prm_(prm)
{
    const uint32_t p = prm.p, f = prm.f;
    uint64_t pf = 1;
    for (uint32_t i = 0; i < f; ++i) pf *= p;
    eL_ = uint32_t(pf - 1);
    Vz_ = int64_t(p) * eL_ / (p - 1);

    k = build_field(p, f);
    l = build_field(p, f * eL_);
    if (prm.field_mult < 1) raise(ErrorKind::BadArgument, "field_mult must be >= 1");
    E = prm.field_mult == 1 ? l : build_field(p, f * eL_ * prm.field_mult);

    lring = make_tensor_ring(l, E);
    kring = make_tensor_ring(k, E);
    attach_gal_structure(lring, k);
    attach_gal_structure(kring, k);
    k_to_l = make_embedding(k, l);

    wp = WeightParams{p, f, 1, E};

    work_prec_ = Vz_ + eL_ + 6 + prm.prec_bump;
    z_prec_ = 3 * Vz_ + 2 * eL_ + 8 + int64_t(p) * prm.prec_bump;

    zbar_ = z_series(l, eL_, &lring, z_prec_, prm.root_variant);
    TensorSeries zp = zbar_;
    for (uint32_t i = 1; i < p; ++i) zp = zp.mul(zbar_);
    zp1_ = zp.sub(TensorSeries::constant(&lring, l->one())).normalized();
    if (zp1_.min_support() != Vz_)
        raise(ErrorKind::InvariantViolated, "z^p - 1 has unexpected valuation");
    zp1_inv_ = zp1_.inverted();

    // unramified part of the cyclotomic character, read off from the action
    // of the arithmetic Frobenius on the fixed primitive p-th root
    {
        uint32_t M = std::max<uint32_t>(3, uint32_t((Vz_ + eL_) / eL_) + 2);
        WittRing W(l, M);
        OLRing OL(&W, eL_);
        OLElem zeta = hensel_zeta_p(OL, prm.root_variant);
        uint32_t j = cyclotomic_exponent(OL, zeta, 1, k_to_l.apply(k->one()), int(f));
        cyc_char_ = cyclotomic_inertial(wp);
        cyc_char_.lambda = E->from_int(int64_t(j));
        // consistency on inertia: chi_cyc(0, zeta) = prod_tau tau(zeta)^{n_tau}
        GalElem gI{0, k->generator()};
        uint32_t jI = cyclotomic_exponent(OL, zeta, 0, k_to_l.apply(gI.zeta), int(f));
        if (!(char_at(cyc_char_, gI) == E->from_int(int64_t(jI))))
            raise(ErrorKind::InvariantViolated,
                  "cyclotomic character does not factor as unramified x tame");
    }

    // mu_{p^f-1}(E)
    {
        uint64_t q1 = E->order() - 1;
        if (q1 % uint64_t(eL_) != 0)
            raise(ErrorKind::BadArgument, "E does not contain the tame roots of unity");
        FieldElem w = E->pow(E->generator(), q1 / eL_);
        FieldElem cur = E->one();
        for (uint32_t t = 0; t < eL_; ++t) {
            unram_values_.push_back(cur);
            cur = E->mul(cur, w);
        }
    }

    l_power_basis_.clear();
    {
        FieldElem t = l->x(), cur = l->one();
        for (uint32_t j = 0; j < l->degree(); ++j) {
            l_power_basis_.push_back(cur);
            cur = l->mul(cur, t);
        }
    }
    for (uint64_t v = 1;; ++v) {
        FieldElem cand = l->from_value(v);
        if (l->trace_to_prime_int(cand)) {
            cyc_theta_ = cand;
            trace_cyc_theta_ = l->trace_to_prime_int(cand);
            break;
        }
        if (v > l->order()) raise(ErrorKind::InvariantViolated, "trace is identically zero");
    }

    gal_elements_ = gal_group(k);
    build_basis();
    build_gal_matrices();
}

UnitClass Context::zero_class() const
{
    return UnitClass{E->zero(), TensorSeries::zero(&lring)};
}

UnitClass Context::varpi_class() const
{
    return UnitClass{E->one(), TensorSeries::zero(&lring)};
}

UnitClass Context::unit_class(const TensorSeries& ah_arg) const
{
    TensorSeries a = ah_arg.normalized();
    if (!a.is_known_zero() && a.min_support() < 1)
        raise(ErrorKind::BadSupport, "ah_arg must be supported in positive degrees");
    return UnitClass{E->zero(), a};
}

UnitClass Context::class_add(const UnitClass& a, const UnitClass& b) const
{
    return UnitClass{E->add(a.varpi_exp, b.varpi_exp), a.ah_arg.add(b.ah_arg)};
}

UnitClass Context::class_scale(const UnitClass& a, const FieldElem& s) const
{
    return UnitClass{E->mul(a.varpi_exp, s), a.ah_arg.scaled(s)};
}

UnitClass Context::psi0_class(const TensorSeries& x) const
{
    TensorSeries xn = x.normalized();
    if (!xn.is_known_zero() && xn.min_support() < 0)
        raise(ErrorKind::BadSupport, "psi_0 needs min_support >= 0");
    FieldElem varpi = xn.const_trace(); // trace surjection on the constant term
    if (xn.exact()) {
        // polynomial input: the positive part is an exact polynomial too
        TensorSeries acc = TensorSeries::zero(&lring);
        for (size_t j = 0; j < lring.components(); ++j)
            for (int64_t e = std::max<int64_t>(1, xn.stored_begin()); e < xn.stored_end(); ++e) {
                FieldElem c = xn.coeff(j, e);
                if (!c.is_zero()) acc = acc.add(TensorSeries::monomial(&lring, j, e, c));
            }
        return UnitClass{varpi, acc};
    }
    TensorSeries pos(&lring, 1, xn.prec());
    for (size_t j = 0; j < lring.components(); ++j)
        for (int64_t e = 1; e < xn.prec(); ++e) pos.set_coeff(j, e, xn.coeff(j, e));
    return UnitClass{varpi, pos};
}

UnitClass Context::psi_class(const TensorSeries& h) const
{
    TensorSeries hn = h.normalized();
    if (!hn.is_known_zero() && hn.min_support() < -Vz_)
        raise(ErrorKind::SupportTooNegative,
              "psi needs min_support >= -" + std::to_string(Vz_));
    TensorSeries w = hn.mul(zp1_).normalized();
    if (!w.is_known_zero() && w.min_support() < 0)
        raise(ErrorKind::SupportTooNegative, "h (z^p - 1) has negative support");
    return psi0_class(w);
}

UnitClass Context::gal_act_class(const GalElem& g, const UnitClass& a) const
{
    // the varpi direction is fixed: g(varpi)/varpi is prime-to-p torsion
    return UnitClass{a.varpi_exp, a.ah_arg.gal_act(g)};
}

UnitClass Context::class_of_principal_unit(const OLElem& u, const OLRing& OL) const
{
    const WittRing* W = OL.witt();
    if (W->residue_field() != l || OL.ramification() != eL_)
        raise(ErrorKind::RingMismatch, "O_L over a different configuration");
    uint32_t M = W->precision();
    if (int64_t(M) * eL_ < Vz_ + 2)
        raise(ErrorKind::PrecisionTooLow, "O_L precision too small to peel digits");
    auto Ecoef = artin_hasse_coeffs_mod_pM(p(), int64_t(M) * eL_ + 1, M);

    auto ah_unit = [&](const FieldElem& a, int64_t i) {
        // E^AH([a] varpi^i) in O_L
        OLElem acc = OL.zero();
        WittElem ta = W->teichmuller(a);
        WittElem tp = W->one();
        OLElem vp = OL.pow(OL.varpi(), uint64_t(i));
        OLElem vpd = OL.one();
        for (int64_t d = 0; int64_t(d) * i <= int64_t(M) * eL_; ++d) {
            if (Ecoef[size_t(d)]) {
                OLElem term = OL.from_witt(W->mul(W->from_int(int64_t(Ecoef[size_t(d)])), tp));
                acc = OL.add(acc, OL.mul(term, vpd));
            }
            tp = W->mul(tp, ta);
            vpd = OL.mul(vpd, vp);
        }
        return acc;
    };

    OLElem cur = u;
    TensorSeries arg = TensorSeries::zero(&lring);
    auto digits0 = OL.teich_digits(cur, 1);
    if (digits0[0] != l->one()) raise(ErrorKind::NotPrincipalUnit, "unit is not principal");
    for (int64_t i = 1; i <= Vz_; ++i) {
        auto digits = OL.teich_digits(cur, uint32_t(i + 1));
        FieldElem a = digits[size_t(i)];
        if (a.is_zero()) continue;
        for (size_t j = 0; j < lring.components(); ++j)
            arg = arg.add(TensorSeries::monomial(&lring, j, i, lring.emb[j].apply(a)));
        cur = OL.mul(cur, ah_unit(l->neg(a), i));
    }
    auto rem = OL.teich_digits(cur, uint32_t(Vz_ + 1));
    if (rem[0] != l->one()) raise(ErrorKind::InvariantViolated, "digit peeling lost the unit");
    for (int64_t i = 1; i <= Vz_; ++i)
        if (!rem[size_t(i)].is_zero())
            raise(ErrorKind::InvariantViolated, "digit peeling left low-degree terms");
    return UnitClass{E->zero(), arg};
}

// ---------------------------------------------------------------------------
// the Vostokov formula

FieldElem Context::pair(const UnitClass& A, const UnitClass& B) const
{
    const TensorSeries &x = A.ah_arg, &y = B.ah_arg;
    if (x.ring() != &lring || y.ring() != &lring)
        raise(ErrorKind::RingMismatch, "classes from a different context");
    if (!x.is_known_zero() && x.min_support() < 1)
        raise(ErrorKind::BadSupport, "ah_arg with nonpositive support");
    if (!y.is_known_zero() && y.min_support() < 1)
        raise(ErrorKind::BadSupport, "ah_arg with nonpositive support");
    const TensorSeries& zi = zp1_inv_;
    const size_t nc = lring.components();
    const FieldSpec* F = E;

    // precision demands: every residue extraction below stays strictly under
    // the known windows
    int64_t px = x.exact() ? kPrecExact : x.prec();
    int64_t py = y.exact() ? kPrecExact : y.prec();
    int64_t msx = x.is_known_zero() ? Vz_ + 1 : x.min_support();
    int64_t msy = y.is_known_zero() ? Vz_ + 1 : y.min_support();
    if (std::min(px, py) < Vz_ + 1)
        raise(ErrorKind::PrecisionLoss, "operand precision below the certified bound");
    if (zi.prec() < Vz_ + 2)
        raise(ErrorKind::PrecisionLoss, "1/(z^p-1) known to insufficient precision");

    auto zi_at = [&](size_t j, int64_t e) -> FieldElem {
        if (e < zi.min_support()) return F->zero();
        if (e >= zi.prec())
            raise(ErrorKind::PrecisionLoss, "residue lookup beyond 1/(z^p-1) precision");
        return zi.coeff(j, e);
    };

    FieldElem total = F->zero();
    for (size_t j = 0; j < nc; ++j) {
        FieldElem gj = F->zero();

        // res( x y' / (z^p-1) ): sum over e1, e2 of x_{e1} (e2 y_{e2}) zi_{-e1-e2}
        for (int64_t e1 = x.stored_begin(); e1 < x.stored_end(); ++e1) {
            FieldElem xc = x.coeff(j, e1);
            if (xc.is_zero()) continue;
            for (int64_t e2 = y.stored_begin(); e2 < y.stored_end(); ++e2) {
                if (-e1 - e2 < zi.min_support()) continue;
                uint32_t sc = uint32_t(((e2 % p()) + p()) % p());
                if (!sc) continue;
                FieldElem yc = y.coeff(j, e2);
                if (yc.is_zero()) continue;
                gj = F->add(gj, F->mul(F->mul(xc, F->mul_scalar(yc, sc)), zi_at(j, -e1 - e2)));
            }
        }

        // - res( x DL(y) / (z^p-1) ) with DL(w) = v^{-1} sum_m phi^m(v w')
        {
            int64_t pm = 1;
            for (int64_t m = 0; pm * msy <= Vz_ - msx; ++m, pm *= int64_t(p())) {
                size_t src = (j + size_t(m)) % nc;
                for (int64_t e2 = y.stored_begin(); e2 < y.stored_end(); ++e2) {
                    uint32_t sc = uint32_t(((e2 % p()) + p()) % p());
                    if (!sc) continue;
                    FieldElem cy = F->mul_scalar(y.coeff(src, e2), sc);
                    if (cy.is_zero()) continue;
                    int64_t t = pm * e2 - 1;
                    for (int64_t e1 = x.stored_begin(); e1 < x.stored_end(); ++e1) {
                        if (-1 - e1 - t < zi.min_support()) continue;
                        FieldElem xc = x.coeff(j, e1);
                        if (xc.is_zero()) continue;
                        gj = F->sub(gj, F->mul(F->mul(xc, cy), zi_at(j, -1 - e1 - t)));
                    }
                }
            }
        }

        // + res( y DL(x) / (z^p-1) )
        {
            int64_t pm = 1;
            for (int64_t m = 0; pm * msx <= Vz_ - msy; ++m, pm *= int64_t(p())) {
                size_t src = (j + size_t(m)) % nc;
                for (int64_t e2 = x.stored_begin(); e2 < x.stored_end(); ++e2) {
                    uint32_t sc = uint32_t(((e2 % p()) + p()) % p());
                    if (!sc) continue;
                    FieldElem cx = F->mul_scalar(x.coeff(src, e2), sc);
                    if (cx.is_zero()) continue;
                    int64_t t = pm * e2 - 1;
                    for (int64_t e1 = y.stored_begin(); e1 < y.stored_end(); ++e1) {
                        if (-1 - e1 - t < zi.min_support()) continue;
                        FieldElem yc = y.coeff(j, e1);
                        if (yc.is_zero()) continue;
                        gj = F->add(gj, F->mul(F->mul(yc, cx), zi_at(j, -1 - e1 - t)));
                    }
                }
            }
        }

        // res( (a y - b x) v^{-1} / (z^p-1) ) = coeff_0( (a y - b x)/(z^p-1) )
        if (!A.varpi_exp.is_zero()) {
            for (int64_t e = y.stored_begin(); e < y.stored_end(); ++e) {
                if (-e < zi.min_support()) continue;
                FieldElem yc = y.coeff(j, e);
                if (yc.is_zero()) continue;
                gj = F->add(gj, F->mul(F->mul(A.varpi_exp, yc), zi_at(j, -e)));
            }
        }
        if (!B.varpi_exp.is_zero()) {
            for (int64_t e = x.stored_begin(); e < x.stored_end(); ++e) {
                if (-e < zi.min_support()) continue;
                FieldElem xc = x.coeff(j, e);
                if (xc.is_zero()) continue;
                gj = F->sub(gj, F->mul(F->mul(B.varpi_exp, xc), zi_at(j, -e)));
            }
        }

        total = F->add(total, gj);
    }
    return total;
}

std::vector<FieldElem> Context::pairing_vector(const UnitClass& a) const
{
    std::vector<FieldElem> v;
    v.reserve(basis_.size());
    for (const auto& b : basis_) v.push_back(pair(b.cls, a));
    return v;
}

std::vector<FieldElem> Context::coordinates(const UnitClass& a) const
{
    return gram_inv_.mul_vec(pairing_vector(a));
}

FieldElem Context::pair_coords(const std::vector<FieldElem>& cu,
                               const std::vector<FieldElem>& ca) const
{
    std::vector<FieldElem> gca = gram_.mul_vec(ca);
    FieldElem r = E->zero();
    for (size_t i = 0; i < cu.size(); ++i)
        if (!cu[i].is_zero() && !gca[i].is_zero()) r = E->add(r, E->mul(cu[i], gca[i]));
    return r;
}

void Context::build_basis()
{
    basis_.clear();
    basis_.push_back(BasisElement{BasisKind::Varpi, 0, l->zero(), varpi_class()});
    for (int64_t i = 1; i < Vz_; ++i) {
        if (i % p() == 0) continue;
        for (uint32_t j = 0; j < l->degree(); ++j) {
            const FieldElem& th = l_power_basis_[j];
            TensorSeries arg = TensorSeries::zero(&lring);
            for (size_t c = 0; c < lring.components(); ++c)
                arg = arg.add(TensorSeries::monomial(&lring, c, i, lring.emb[c].apply(th)));
            basis_.push_back(BasisElement{BasisKind::Unit, i, th, unit_class(arg)});
        }
    }
    {
        TensorSeries arg = TensorSeries::zero(&lring);
        for (size_t c = 0; c < lring.components(); ++c)
            arg = arg.add(TensorSeries::monomial(&lring, c, Vz_, lring.emb[c].apply(cyc_theta_)));
        basis_.push_back(BasisElement{BasisKind::Cyc, Vz_, cyc_theta_, unit_class(arg)});
    }

    size_t n = basis_.size();
    gram_ = Matrix(E, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            FieldElem v = pair(basis_[i].cls, basis_[j].cls);
            gram_.at(i, j) = v;
            gram_.at(j, i) = E->neg(v);
        }
    if (gram_.rank() != n)
        raise(ErrorKind::SingularGram, "pairing degenerates on the spanning family");
    gram_inv_ = gram_.inverse();

    // classes E^AH([c] v^{Vz}) with Tr(c) = 0 must vanish; this pins down the
    // top filtration level and is relied on by the Galois matrices
    for (uint32_t j = 0; j < l->degree(); ++j) {
        FieldElem th = l_power_basis_[j];
        uint32_t tr = l->trace_to_prime_int(th);
        FieldElem c = l->sub(th, l->mul_scalar(cyc_theta_, tr * inv_mod_p(trace_cyc_theta_)));
        if (c.is_zero()) continue;
        TensorSeries arg = TensorSeries::zero(&lring);
        for (size_t cc = 0; cc < lring.components(); ++cc)
            arg = arg.add(TensorSeries::monomial(&lring, cc, Vz_, lring.emb[cc].apply(c)));
        for (const auto& pv : pairing_vector(unit_class(arg)))
            if (!pv.is_zero())
                raise(ErrorKind::InvariantViolated,
                      "trace-zero class at the top level is nontrivial");
    }
}

uint32_t Context::inv_mod_p(uint32_t a) const
{
    uint32_t r = 1, b = a % p(), e = p() - 2;
    while (e) {
        if (e & 1) r = r * b % p();
        b = b * b % p();
        e >>= 1;
    }
    return r;
}

size_t Context::gal_index(const GalElem& g) const
{
    // elements are enumerated as (t, s) with zeta = gen^t
    int pf1 = int(eL_);
    uint64_t val = k->value(g.zeta);
    for (int t = 0; t < pf1; ++t)
        if (k->value(k->pow(k->generator(), uint64_t(t))) == val)
            return size_t(t) * size_t(pf1) + size_t(g.s % pf1);
    raise(ErrorKind::BadArgument, "zeta is not a tame root of unity");
}

void Context::build_gal_matrices()
{
    const size_t n = basis_.size();
    const int pf1 = int(eL_);
    auto col_matrix = [&](const GalElem& g) {
        std::vector<std::vector<uint8_t>> m(n, std::vector<uint8_t>(n, 0));
        for (size_t jcol = 0; jcol < n; ++jcol) {
            auto coords = coordinates(gal_act_class(g, basis_[jcol].cls));
            for (size_t i = 0; i < n; ++i) {
                const FieldElem& e = coords[i];
                for (uint32_t d = 1; d < E->degree(); ++d)
                    if (e.c[d])
                        raise(ErrorKind::InvariantViolated,
                              "Galois matrix has an entry outside F_p");
                m[i][jcol] = e.c[0];
            }
        }
        return m;
    };
    auto matmul = [&](const std::vector<std::vector<uint8_t>>& A,
                      const std::vector<std::vector<uint8_t>>& B) {
        std::vector<std::vector<uint8_t>> C(n, std::vector<uint8_t>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t kk = 0; kk < n; ++kk) {
                if (!A[i][kk]) continue;
                uint32_t a = A[i][kk];
                for (size_t j = 0; j < n; ++j)
                    C[i][j] = uint8_t((C[i][j] + a * B[kk][j]) % p());
            }
        return C;
    };

    std::vector<std::vector<uint8_t>> MF = col_matrix(GalElem{1, k->one()});
    std::vector<std::vector<uint8_t>> MI = col_matrix(GalElem{0, k->generator()});

    gal_mats_.assign(size_t(pf1) * size_t(pf1), {});
    std::vector<std::vector<uint8_t>> It(n, std::vector<uint8_t>(n, 0));
    for (size_t i = 0; i < n; ++i) It[i][i] = 1;
    std::vector<std::vector<uint8_t>> Zt = It;
    for (int t = 0; t < pf1; ++t) {
        std::vector<std::vector<uint8_t>> Ms = Zt;
        for (int s = 0; s < pf1; ++s) {
            gal_mats_[size_t(t) * size_t(pf1) + size_t(s)] = Ms;
            Ms = matmul(MF, Ms);
        }
        Zt = matmul(MI, Zt);
    }
    // order checks: g_F^{pf1} = g_I^{pf1} = identity
    if (matmul(MF, gal_mats_[size_t(pf1 - 1)]) != It)
        raise(ErrorKind::InvariantViolated, "frobenius matrix has wrong order");
    if (matmul(MI, gal_mats_[size_t(pf1 - 1) * size_t(pf1)]) != It)
        raise(ErrorKind::InvariantViolated, "inertia matrix has wrong order");
}

const std::vector<std::vector<uint8_t>>& Context::gal_matrix(const GalElem& g) const
{
    return gal_mats_[gal_index(g)];
}

std::vector<FieldElem> Context::gal_apply(const GalElem& g,
                                          const std::vector<FieldElem>& coords) const
{
    const auto& M = gal_matrix(g);
    const size_t n = basis_.size();
    std::vector<FieldElem> out(n, E->zero());
    for (size_t i = 0; i < n; ++i) {
        FieldElem acc = E->zero();
        for (size_t j = 0; j < n; ++j)
            if (M[i][j] && !coords[j].is_zero())
                acc = E->add(acc, E->mul_scalar(coords[j], M[i][j]));
        out[i] = acc;
    }
    return out;
}

std::vector<FieldElem> Context::project_eigen(const CharData& eta,
                                              const std::vector<FieldElem>& coords) const
{
    const size_t n = basis_.size();
    std::vector<FieldElem> acc(n, E->zero());
    for (const auto& g : gal_elements_) {
        FieldElem w = E->inv(char_at(eta, g));
        auto gc = gal_apply(g, coords);
        for (size_t i = 0; i < n; ++i)
            if (!gc[i].is_zero()) acc[i] = E->add(acc[i], E->mul(w, gc[i]));
    }
    FieldElem invG = E->inv(E->from_int(int64_t(gal_elements_.size() % p())));
    for (auto& c : acc) c = E->mul(c, invG);
    return acc;
}

bool Context::is_eigenvector(const CharData& eta, const std::vector<FieldElem>& coords) const
{
    for (const GalElem& g :
         {GalElem{1, k->one()}, GalElem{0, k->generator()}}) {
        auto gc = gal_apply(g, coords);
        FieldElem w = char_at(eta, g);
        for (size_t i = 0; i < coords.size(); ++i)
            if (!(gc[i] == E->mul(w, coords[i]))) return false;
    }
    return true;
}

FieldElem Context::char_at(const CharData& chi, const GalElem& g) const
{
    return char_value(wp, chi, g.s, g.zeta, kring.emb);
}

} // namespace skw
