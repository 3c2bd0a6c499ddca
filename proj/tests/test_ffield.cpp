#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "skw/ffield.hpp"

using namespace skw;

TEST_CASE("build_field validates inputs")
{
    // x^2 + 1 irreducible over F_3
    const FieldSpec* F9 = build_field(3, 2, std::vector<uint8_t>{1, 0, 1});
    CHECK(F9->order() == 9);

    // x^2 + 2x + 1 = (x+1)^2 is reducible
    CHECK_THROWS_AS(build_field(3, 2, std::vector<uint8_t>{1, 2, 1}), Error);
    try {
        build_field(3, 2, std::vector<uint8_t>{1, 2, 1});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ReduciblePoly);
    }

    CHECK_THROWS_AS(build_field(2, 1), Error);
    try {
        build_field(2, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EvenPrime);
    }

    CHECK_THROWS_AS(build_field(9, 1), Error);
}

TEST_CASE("default modulus is deterministic and irreducible")
{
    const FieldSpec* a = build_field(3, 2);
    const FieldSpec* b = build_field(3, 2);
    CHECK(a == b); // interned
    const FieldSpec* l = build_field(3, 4);
    CHECK(l->poly().size() == 5);
    CHECK(l->poly().back() == 1);
}

TEST_CASE("frobenius on F_9")
{
    const FieldSpec* F9 = build_field(3, 2, std::vector<uint8_t>{1, 0, 1}); // t^2 = -1
    FieldElem t = F9->x();
    // t^3 = t * t^2 = -t = 2t
    FieldElem t3 = frobenius_iter(t, 1);
    CHECK(t3 == F9->mul_scalar(t, 2));
    // m = d is the identity
    CHECK(frobenius_iter(t, 2) == t);
    // inverse composition
    CHECK(frobenius_iter(frobenius_iter(t, -1), 1) == t);
}

TEST_CASE("frobenius is a field automorphism")
{
    const FieldSpec* F = build_field(3, 4);
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 50; ++it) {
        FieldElem x = F->from_value(rng() % F->order());
        FieldElem y = F->from_value(rng() % F->order());
        CHECK(F->frobenius_iter(F->mul(x, y), 1) ==
              F->mul(F->frobenius_iter(x, 1), F->frobenius_iter(y, 1)));
        CHECK(F->frobenius_iter(F->add(x, y), 1) ==
              F->add(F->frobenius_iter(x, 1), F->frobenius_iter(y, 1)));
    }
}

TEST_CASE("trace to prime field")
{
    const FieldSpec* F9 = build_field(3, 2, std::vector<uint8_t>{1, 0, 1});
    FieldElem t = F9->x();
    CHECK(F9->trace_to_prime_int(t) == 0); // t + t^3 = t + 2t = 0
    CHECK(F9->trace_to_prime_int(F9->one()) == 2);

    // brute-force oracle: trace = sum of frobenius iterates
    const FieldSpec* F = build_field(5, 4);
    std::mt19937_64 rng(99);
    bool saw_nonzero = false;
    for (int it = 0; it < 40; ++it) {
        FieldElem x = F->from_value(rng() % F->order());
        FieldElem s = F->zero();
        for (uint32_t i = 0; i < F->degree(); ++i) s = F->add(s, F->frobenius_iter(x, i));
        CHECK(F->trace_to_prime(x) == s);
        if (!s.is_zero()) saw_nonzero = true;
    }
    CHECK(saw_nonzero); // surjectivity onto F_p
}

TEST_CASE("embeddings")
{
    const FieldSpec* F3 = build_field(3, 1);
    const FieldSpec* F9 = build_field(3, 2, std::vector<uint8_t>{1, 0, 1});
    const FieldSpec* F27 = build_field(3, 3);

    // prime field embeds canonically
    CHECK(F9->value(embed(F3->from_int(2), F9)) == F9->value(F9->from_int(2)));
    // identity embedding
    Embedding self = make_embedding(F9, F9);
    FieldElem t = F9->x();
    CHECK(self.apply(self.apply(t)).spec == F9);
    // 2 does not divide 3
    CHECK_THROWS_AS(make_embedding(F9, F27), Error);

    // ring homomorphism + injectivity, F_9 -> F_81
    const FieldSpec* F81 = build_field(3, 4);
    Embedding e = make_embedding(F9, F81);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        FieldElem x = F9->from_value(rng() % 9);
        FieldElem y = F9->from_value(rng() % 9);
        CHECK(e.apply(F9->mul(x, y)) == F81->mul(e.apply(x), e.apply(y)));
        CHECK(e.apply(F9->add(x, y)) == F81->add(e.apply(x), e.apply(y)));
        if (!(x == y)) CHECK(!(e.apply(x) == e.apply(y)));
    }
    // composing with frobenius gives the other embedding: both are roots
    auto roots = modulus_roots(F9, F81);
    CHECK(roots.size() == 2);
    Embedding e2 = e.precompose_frobenius(1);
    CHECK((e2.root() == roots[0] || e2.root() == roots[1]));
    CHECK(!(e2.root() == e.root()));
}

TEST_CASE("deterministic generator has full order")
{
    for (auto [p, d] : {std::pair<uint32_t, uint32_t>{3, 2}, {5, 1}, {3, 4}}) {
        const FieldSpec* F = build_field(p, d);
        FieldElem g = F->generator();
        uint64_t n = F->order() - 1;
        CHECK(F->pow(g, n) == F->one());
        for (uint64_t ell : factor_u64(n)) CHECK(!(F->pow(g, n / ell) == F->one()));
    }
}

TEST_CASE("inverses and powers")
{
    const FieldSpec* F = build_field(5, 4);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
        FieldElem x = F->from_value(1 + rng() % (F->order() - 1));
        CHECK(F->mul(x, F->inv(x)) == F->one());
        CHECK(F->pow_signed(x, -3) == F->inv(F->pow(x, 3)));
    }
    CHECK_THROWS_AS(F->inv(F->zero()), Error);
}
