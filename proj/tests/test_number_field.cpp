#include <random>

#include "doctest.h"
#include "qsys/number_field.hpp"

using namespace qsys;

namespace {

Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return Rational(num(rng), den(rng));
}

FieldElement random_element(std::mt19937_64& rng, const RealQuadraticField& k, long bound) {
    return FieldElement(k, random_rational(rng, bound, 12), random_rational(rng, bound, 12));
}

FieldElement random_integral(std::mt19937_64& rng, const RealQuadraticField& k, long bound) {
    std::uniform_int_distribution<long> coord(-bound, bound);
    return FieldElement(k, coord(rng), coord(rng));
}

}  // namespace

TEST_CASE("field construction constraints") {
    CHECK_NOTHROW(RealQuadraticField(2));
    CHECK_NOTHROW(RealQuadraticField(3));
    CHECK_NOTHROW(RealQuadraticField(6));
    CHECK_THROWS_AS(RealQuadraticField(1), std::invalid_argument);
    CHECK_THROWS_AS(RealQuadraticField(5), std::invalid_argument);   // 1 mod 4
    CHECK_THROWS_AS(RealQuadraticField(8), std::invalid_argument);   // not squarefree
    CHECK_THROWS_AS(RealQuadraticField(12), std::invalid_argument);
    CHECK_THROWS_AS(RealQuadraticField(-2), std::invalid_argument);
}

TEST_CASE("embedding values") {
    RealQuadraticField k(2);
    FieldElement u(k, 1, 1);
    CHECK(u.embed(Place::principal) == doctest::Approx(2.414213562).epsilon(1e-9));
    CHECK(u.embed(Place::conjugate) == doctest::Approx(-0.414213562).epsilon(1e-9));
    CHECK(FieldElement().embed(Place::principal) == 0.0);
    CHECK(FieldElement().embed(Place::conjugate) == 0.0);
}

TEST_CASE("field norm examples") {
    RealQuadraticField k(2);
    CHECK(FieldElement(k, 1, 1).norm() == Rational(-1));
    CHECK(FieldElement(k, 3, 0).norm() == Rational(9));
    CHECK(FieldElement(k, 23216, 16416).norm() == Rational(12544));
    CHECK(Rational(12544) == Rational(49) * Rational(256));
}

TEST_CASE("norm is multiplicative, embeddings factor the norm") {
    RealQuadraticField k(2);
    std::mt19937_64 rng(20240811);
    for (int it = 0; it < 1000; ++it) {
        FieldElement u = random_element(rng, k, 40);
        FieldElement v = random_element(rng, k, 40);
        CHECK((u * v).norm() == u.norm() * v.norm());
    }
    for (int it = 0; it < 300; ++it) {
        FieldElement u = random_integral(rng, k, 1000000);
        double lhs = u.embed(Place::principal) * u.embed(Place::conjugate);
        double rhs = u.norm().get_d();
        double scale = std::max(1.0, std::fabs(rhs));
        CHECK(std::fabs(lhs - rhs) / scale <= 1e-9);
    }
}

TEST_CASE("exact arithmetic identities") {
    RealQuadraticField k(3);
    FieldElement u(k, Rational(7, 2), Rational(-1, 3));
    FieldElement one = FieldElement::from_rational(1);
    CHECK(u * u.inverse() == one);
    CHECK(u + (-u) == FieldElement());
    CHECK(u.galois_conjugate().galois_conjugate() == u);
    CHECK((u * u.galois_conjugate()) == FieldElement::from_rational(u.norm()));
    CHECK(u.pow(3) == u * u * u);
    CHECK_THROWS_AS(FieldElement().inverse(), std::domain_error);
    RealQuadraticField k2(2);
    CHECK_THROWS_AS(FieldElement(k, 1, 1) + FieldElement(k2, 1, 1), std::invalid_argument);
}

TEST_CASE("exact signs at both places") {
    RealQuadraticField k(2);
    CHECK(FieldElement(k, 1, 1).sign_at(Place::principal) == 1);
    CHECK(FieldElement(k, 1, 1).sign_at(Place::conjugate) == -1);
    CHECK(FieldElement(k, 1, -1).sign_at(Place::principal) == -1);
    CHECK(FieldElement(k, -3, 2).sign_at(Place::principal) == -1);  // 2*sqrt(2) < 3
    CHECK(FieldElement(k, -3, 3).sign_at(Place::principal) == 1);   // 3*sqrt(2) > 3
    CHECK(FieldElement().sign_at(Place::principal) == 0);
    CHECK(compare_with_rational(FieldElement(k, 1, 1), Rational(5, 2)) < 0);
    CHECK(compare_with_rational(FieldElement(k, 1, 1), Rational(2)) > 0);
}

TEST_CASE("prime classification in Q(sqrt 2)") {
    RealQuadraticField k(2);

    auto p7 = classify_prime(7, k);
    REQUIRE(p7.size() == 2);
    CHECK(p7[0].kind == SplitType::split);
    CHECK(p7[0].r == 3);
    CHECK(p7[1].r == 4);
    CHECK(p7[0].residue_size() == 7);

    auto p3 = classify_prime(3, k);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].kind == SplitType::inert);
    CHECK(p3[0].residue_size() == 9);

    auto p2 = classify_prime(2, k);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].kind == SplitType::ramified);
    CHECK(p2[0].residue_size() == 2);

    CHECK_THROWS_AS(classify_prime(6, k), std::invalid_argument);
    CHECK_THROWS_AS(classify_prime(1, k), std::invalid_argument);
}

TEST_CASE("prime classification odd ramified and d = 3 mod 4") {
    RealQuadraticField k3(3);
    auto p3 = classify_prime(3, k3);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].kind == SplitType::ramified);
    auto p2 = classify_prime(2, k3);  // 2 ramifies via the discriminant
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].kind == SplitType::ramified);
    CHECK(p2[0].r == 1);
}

TEST_CASE("ideal norms") {
    RealQuadraticField k(2);
    PrimeIdealData split7 = classify_prime(7, k)[0];
    PrimeIdealData inert3 = classify_prime(3, k)[0];

    CHECK(IdealSpec::single(split7).norm() == 7);
    CHECK(IdealSpec::single(inert3).norm() == 9);
    CHECK(IdealSpec::single(split7, 2).norm() == 49);
    CHECK(IdealSpec().norm() == 1);

    IdealSpec both({IdealFactor{split7, 2}, IdealFactor{inert3, 1}});
    CHECK(both.norm() == IdealSpec::single(split7, 2).norm() * IdealSpec::single(inert3).norm());
    CHECK(both.power(3).norm() == pow_integer(both.norm(), 3));

    CHECK_THROWS_AS(IdealSpec({IdealFactor{split7, 1}, IdealFactor{split7, 2}}), std::invalid_argument);
}

TEST_CASE("residue reduction examples at the split prime over 7") {
    RealQuadraticField k(2);
    PrimeIdealData split7 = classify_prime(7, k)[0];

    ResidueRing r1(k, split7, 1);
    CHECK(r1.reduce(FieldElement(k, 1, 1)).u == 4);
    CHECK(r1.is_zero(r1.reduce(FieldElement(k, 7, 7))));
    CHECK(!r1.is_zero(r1.reduce(FieldElement(k, 0, 1))));  // sqrt(2) -> 3

    ResidueRing r2(k, split7, 2);
    CHECK(r2.is_zero(r2.reduce(FieldElement(k, 23216, 16416))));
    CHECK(!r2.is_zero(r2.reduce(FieldElement(k, 7, 7))));
    CHECK(r2.size() == 49);

    CHECK_THROWS_AS(r1.reduce(FieldElement(k, Rational(1, 2), 0)), std::domain_error);
}

TEST_CASE("hensel-lifted root squares to d") {
    RealQuadraticField k(2);
    PrimeIdealData split7 = classify_prime(7, k)[0];
    for (unsigned e = 1; e <= 5; ++e) {
        ResidueRing ring(k, split7, e);
        ResidueElement root = ring.reduce(FieldElement(k, 0, 1));
        ResidueElement sq = ring.mul(root, root);
        CHECK(sq == ring.from_integer(2));
    }
}

TEST_CASE("residue rings are ring homomorphisms") {
    RealQuadraticField k2(2);
    RealQuadraticField k6(6);
    struct Case {
        RealQuadraticField k;
        PrimeIdealData prime;
        unsigned e;
    };
    std::vector<Case> cases = {
        {k2, classify_prime(7, k2)[0], 1},  // split
        {k2, classify_prime(7, k2)[0], 3},
        {k2, classify_prime(3, k2)[0], 1},  // inert
        {k2, classify_prime(3, k2)[0], 2},
        {k2, classify_prime(2, k2)[0], 1},  // ramified (2 | d)
        {k2, classify_prime(2, k2)[0], 4},
        {k6, classify_prime(3, k6)[0], 3},  // odd ramified
    };
    std::mt19937_64 rng(424243);
    for (const auto& c : cases) {
        ResidueRing ring(c.k, c.prime, c.e);
        for (int it = 0; it < 1000; ++it) {
            FieldElement u = random_integral(rng, c.k, 500);
            FieldElement v = random_integral(rng, c.k, 500);
            CHECK(ring.reduce(u + v) == ring.add(ring.reduce(u), ring.reduce(v)));
            CHECK(ring.reduce(u * v) == ring.mul(ring.reduce(u), ring.reduce(v)));
        }
        CHECK(ring.reduce(FieldElement::from_rational(1)) == ring.one());
    }
}

TEST_CASE("ramified membership matches valuations") {
    RealQuadraticField k(6);
    PrimeIdealData p3 = classify_prime(3, k)[0];
    REQUIRE(p3.kind == SplitType::ramified);

    FieldElement sqrt6(k, 0, 1);
    FieldElement three(k, 3, 0);

    // v(sqrt 6) = 1, v(3) = 2, v(3 sqrt 6) = 3, v(9) = 4
    auto in_power = [&](const FieldElement& el, unsigned e) {
        ResidueRing ring(k, p3, e);
        return ring.is_zero(ring.reduce(el));
    };
    CHECK(in_power(sqrt6, 1));
    CHECK(!in_power(sqrt6, 2));
    CHECK(in_power(three, 2));
    CHECK(!in_power(three, 3));
    CHECK(in_power(three * sqrt6, 3));
    CHECK(!in_power(three * sqrt6, 4));
    CHECK(in_power(three * three, 4));
}

TEST_CASE("ideal membership across factors") {
    RealQuadraticField k(2);
    PrimeIdealData split7 = classify_prime(7, k)[0];
    PrimeIdealData inert3 = classify_prime(3, k)[0];
    IdealSpec both({IdealFactor{split7, 1}, IdealFactor{inert3, 1}});

    CHECK(ideal_contains(both, FieldElement(k, 21, 21), k));
    CHECK(!ideal_contains(both, FieldElement(k, 7, 7), k));   // misses the inert factor
    CHECK(!ideal_contains(both, FieldElement(k, 3, 3), k));   // misses the split factor
    CHECK(ideal_contains(IdealSpec(), FieldElement(k, 5, 1), k));
}
