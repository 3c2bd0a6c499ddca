#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "skw/series.hpp"

using namespace skw;

namespace {

struct Rig {
    const FieldSpec* k;
    const FieldSpec* l;
    const FieldSpec* E;
    TensorRing lring, kring;
    std::mt19937_64 rng{20240801};

    Rig(uint32_t p, uint32_t f)
    {
        uint64_t pf = 1;
        for (uint32_t i = 0; i < f; ++i) pf *= p;
        k = build_field(p, f);
        l = build_field(p, uint32_t(f * (pf - 1)));
        E = l;
        lring = make_tensor_ring(l, E);
        kring = make_tensor_ring(k, E);
        attach_gal_structure(lring, k);
        attach_gal_structure(kring, k);
    }

    TensorSeries random_series(const TensorRing* r, int64_t ms, int64_t prec)
    {
        TensorSeries s(r, ms, prec);
        for (size_t j = 0; j < r->components(); ++j)
            for (int64_t e = ms; e < prec; ++e)
                s.set_coeff(j, e, E->from_value(rng() % E->order()));
        return s;
    }

    TensorSeries random_unit(const TensorRing* r, int64_t ms, int64_t prec)
    {
        TensorSeries s = random_series(r, ms, prec);
        for (size_t j = 0; j < r->components(); ++j)
            s.set_coeff(j, ms, E->from_value(1 + rng() % (E->order() - 1)));
        return s;
    }

    GalElem random_gal()
    {
        int pf1 = int(k->order()) - 1;
        return GalElem{int(rng() % uint64_t(pf1)), k->pow(k->generator(), rng() % uint64_t(pf1))};
    }
};

} // namespace

TEST_CASE("ring ops: identities and support arithmetic")
{
    Rig R(3, 1);
    TensorSeries x = R.random_series(&R.lring, -2, 9);
    CHECK(x.add(TensorSeries::zero(&R.lring)).equal_below(x, x.prec()));

    TensorSeries u = R.random_unit(&R.lring, -3, 6);
    TensorSeries w = u.mul(u.inverted());
    // x * x^{-1} = 1 + O(v^prec)
    TensorSeries one = TensorSeries::constant(&R.lring, R.l->one());
    CHECK(w.equal_below(one, w.prec()));
    CHECK(w.prec() >= 6);

    TensorSeries a = R.random_unit(&R.lring, -3, 5);
    TensorSeries b = R.random_unit(&R.lring, 3, 11);
    CHECK(a.mul(b).normalized().min_support() == 0);

    TensorSeries y = R.random_series(&R.kring, 0, 4);
    CHECK_THROWS_AS(x.add(y), Error); // ring mismatch
}

TEST_CASE("phi: component shift, dilation, multiplicativity")
{
    Rig R(3, 2); // [l : F_3] = 16
    // phi of a constant has order [l : F_p]
    FieldElem a = R.l->generator();
    TensorSeries c = TensorSeries::constant(&R.lring, a);
    TensorSeries it = c;
    for (uint32_t i = 0; i < R.l->degree(); ++i) it = it.phi(1);
    CHECK(it.equal_below(c, 1));

    // phi(a v): components shift by one, exponent dilates
    TensorSeries av = c.shifted(1);
    TensorSeries pav = av.phi(1);
    CHECK(pav.min_support() == 3);
    for (size_t j = 0; j < R.lring.components(); ++j)
        CHECK(pav.coeff(j, 3) == av.coeff((j + 1) % R.lring.components(), 1));

    // multiplicativity on random series
    TensorSeries x = R.random_series(&R.lring, -1, 5);
    TensorSeries y = R.random_series(&R.lring, 0, 6);
    CHECK(x.mul(y).phi(1).equal_below(x.phi(1).mul(y.phi(1)), 12));
}

TEST_CASE("v d/dv")
{
    Rig R(3, 1);
    TensorSeries c = TensorSeries::constant(&R.lring, R.l->generator());
    CHECK(c.vddv().is_known_zero());
    // a v^p dies in characteristic p
    CHECK(c.shifted(3).vddv().is_known_zero());
    // v d/dv of phi(x) is zero: all exponents divisible by p
    TensorSeries x = R.random_series(&R.lring, -2, 7);
    CHECK(x.phi(1).vddv().is_known_zero());
    // Leibniz rule
    TensorSeries y = R.random_series(&R.lring, 0, 9);
    TensorSeries lhs = x.mul(y).vddv();
    TensorSeries rhs = x.vddv().mul(y).add(x.mul(y.vddv()));
    CHECK(lhs.equal_below(rhs, lhs.prec()));
}

TEST_CASE("constant-term trace")
{
    Rig R(3, 2);
    size_t m = R.lring.components();
    TensorSeries one = TensorSeries::constant(&R.lring, R.l->one());
    CHECK(one.const_trace() == R.E->from_int(int64_t(m)));

    TensorSeries x(&R.lring, 1, 5);
    x.set_coeff(0, 2, R.E->one());
    CHECK(x.const_trace() == R.E->zero());

    // embedding-sum oracle for a random constant a in l
    for (int it = 0; it < 10; ++it) {
        FieldElem a = R.l->from_value(R.rng() % R.l->order());
        TensorSeries c = TensorSeries::constant(&R.lring, a);
        FieldElem expect = R.E->zero();
        for (size_t j = 0; j < m; ++j) expect = R.E->add(expect, R.lring.emb[j].apply(a));
        CHECK(c.const_trace() == expect);
    }
}

TEST_CASE("Galois action")
{
    Rig R(3, 2);
    TensorSeries x = R.random_series(&R.lring, -3, 8);

    GalElem id = GalElem::identity(R.k);
    CHECK(x.gal_act(id).equal_below(x, 8));

    // g . v = omega(g) v
    GalElem g{1, R.k->generator()};
    TensorSeries v = TensorSeries::constant(&R.lring, R.l->one()).shifted(1);
    TensorSeries gv = v.gal_act(g);
    for (size_t j = 0; j < R.lring.components(); ++j) {
        FieldElem zj = R.lring.k_emb[size_t(R.lring.res_idx[j])].apply(g.zeta);
        CHECK(gv.coeff(j, 1) == zj);
    }

    // composition oracle
    int pf1 = int(R.k->order()) - 1;
    for (int it = 0; it < 8; ++it) {
        GalElem g1 = R.random_gal(), g2 = R.random_gal();
        TensorSeries lhs = x.gal_act(gal_compose(g1, g2, pf1));
        TensorSeries rhs = x.gal_act(g2).gal_act(g1);
        CHECK(lhs.equal_below(rhs, 8));
    }

    // the action commutes with ring operations and with phi
    TensorSeries y = R.random_series(&R.lring, 0, 11);
    GalElem g3 = R.random_gal();
    CHECK(x.mul(y).gal_act(g3).equal_below(x.gal_act(g3).mul(y.gal_act(g3)), 7));
    CHECK(x.phi(1).gal_act(g3).equal_below(x.gal_act(g3).phi(1), 12));
}

TEST_CASE("idempotent decomposition")
{
    Rig R(3, 2);
    size_t fcomps = R.kring.components();
    TensorSeries sum = TensorSeries::zero(&R.kring);
    for (size_t t = 0; t < fcomps; ++t) sum = sum.add(TensorSeries::e_tau(&R.kring, t));
    TensorSeries one = TensorSeries::constant(&R.kring, R.k->one());
    CHECK(sum.equal_below(one, 1));

    TensorSeries e0 = TensorSeries::e_tau(&R.kring, 0), e1 = TensorSeries::e_tau(&R.kring, 1);
    CHECK(e0.mul(e1).is_known_zero());
    CHECK(e0.mul(e0).equal_below(e0, 1));

    // component of a ⊗ 1 at tau equals tau(a)
    FieldElem a = R.k->generator();
    TensorSeries c = TensorSeries::constant(&R.kring, a);
    for (size_t t = 0; t < fcomps; ++t) CHECK(c.coeff(t, 0) == R.kring.emb[t].apply(a));

    CHECK_THROWS_AS(TensorSeries::e_tau(&R.kring, fcomps), Error);
}

TEST_CASE("inclusion of k series into the l ring")
{
    Rig R(3, 2);
    TensorSeries y = R.random_series(&R.kring, -1, 3);
    TensorSeries inc = include_k_series(y, &R.lring);
    int64_t step = int64_t(R.l->degree() / R.k->degree()); // p^f - 1
    CHECK(inc.min_support() == -step);
    for (size_t j = 0; j < R.lring.components(); ++j)
        for (int64_t e = -1; e < 3; ++e)
            CHECK(inc.coeff(j, e * step) == y.coeff(size_t(R.lring.res_idx[j]), e));
    CHECK(inc.coeff(0, 1) == R.E->zero());
}

TEST_CASE("precision tracking is sound")
{
    Rig R(5, 1);
    auto pipeline = [&](int64_t prec) {
        TensorSeries x(&R.lring, -2, prec);
        for (size_t j = 0; j < R.lring.components(); ++j)
            for (int64_t e = -2; e < prec; ++e) {
                // coefficient depends on (j, e) only, not on the window size
                uint64_t h = (j * 1315423911u) ^ uint64_t((e + 7) * 2654435761u);
                x.set_coeff(j, e, R.E->from_value(h % R.E->order()));
            }
        for (size_t j = 0; j < R.lring.components(); ++j) x.set_coeff(j, -2, R.E->one());
        return x.mul(x).add(x.phi(1)).mul(x.inverted());
    };
    TensorSeries a = pipeline(9), b = pipeline(14);
    CHECK(b.prec() >= a.prec());
    CHECK(a.equal_below(b, a.prec()));

    TensorSeries x(&R.lring, 0, 3);
    CHECK_THROWS_AS(x.coeff(0, 5), Error);
    CHECK_THROWS_AS(x.require_prec(4), Error);
}
