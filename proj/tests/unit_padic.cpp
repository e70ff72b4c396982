#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "robbalab/padic.hpp"

using namespace robbalab;

namespace {

// Independent extended-Euclid oracle for modular inverses.
long long egcd_inverse(long long a, long long m) {
    long long old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        long long q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    REQUIRE(old_r == 1);
    return ((old_s % m) + m) % m;
}

PadicScalar rand_unit(std::mt19937_64& rng, long p, long long prec) {
    Int u = 0;
    Int pw = 1;
    for (long long k = 0; k < prec; ++k) {
        u += pw * static_cast<long>(rng() % static_cast<unsigned long>(p));
        pw *= p;
    }
    if (u % p == 0) u += 1;
    long long v = static_cast<long long>(rng() % 7) - 3;
    return PadicScalar::make(p, v, u, prec);
}

}  // namespace

TEST_CASE("additive inverse gives the certified zero") {
    for (long p : {2L, 3L, 5L}) {
        auto a = PadicScalar::make(p, 1, 1, 3);  // p with 3 digits
        auto s = a + (-a);
        CHECK(s.is_zero());
        CHECK(s.precision() == 4);  // O(p^4)
    }
}

TEST_CASE("ultrametric addition with distinct valuations is exact") {
    long p = 5;
    auto one = PadicScalar::from_integer(p, 1, 3);
    auto pp = PadicScalar::make(p, 1, 1, 3);
    auto s = one + pp;
    CHECK(s.valuation() == 0);
    CHECK(s.unit() == 1 + p);
    CHECK(s.precision() == 3);
}

TEST_CASE("cancellation reduces precision per the propagation rule") {
    long p = 5;
    auto one = PadicScalar::from_integer(p, 1, 3);
    auto other = PadicScalar::from_integer(p, p * p - 1, 3);
    auto s = one + other;
    // big-integer oracle mod p^5: (1 + p^2 - 1) = p^2
    Int oracle = (Int(1) + Int(p * p - 1)) % Int(5 * 5 * 5 * 5 * 5);
    CHECK(oracle == Int(p) * Int(p));
    CHECK(s.valuation() == 2);
    CHECK(s.unit() == 1);
    CHECK(s.precision() == 1);  // abs precision 3 kept, minus valuation 2
}

TEST_CASE("multiplication and inversion") {
    long p = 5;
    auto one = PadicScalar::from_integer(p, 1, 4);
    CHECK(one.inv().same(one));

    auto pp = PadicScalar::make(p, 1, 1, 4);
    auto sq = pp * pp;
    CHECK(sq.valuation() == 2);
    CHECK(sq.unit() == 1);

    auto x = PadicScalar::from_integer(p, 1 + p, 4);
    auto inv = x.inv();
    CHECK(inv.valuation() == 0);
    CHECK(inv.unit() == il(egcd_inverse(1 + p, 625)));
}

TEST_CASE("lognorm normalization |p| = 1/p") {
    long p = 3;
    CHECK(PadicScalar::make(p, 1, 1, 4).lognorm().w() == 1);
    CHECK(PadicScalar::from_integer(p, 1, 4).lognorm().w() == 0);
    CHECK(PadicScalar::make(p, -1, 2, 4).lognorm().w() == -1);
    CHECK(PadicScalar::zero(p).lognorm().is_bottom());
}

TEST_CASE("lognorm is multiplicative and ultrametric over random samples") {
    std::mt19937_64 rng(20240811);
    for (long p : {2L, 3L, 5L}) {
        for (int it = 0; it < 400; ++it) {
            auto a = rand_unit(rng, p, 8);
            auto b = rand_unit(rng, p, 8);
            CHECK((a * b).lognorm().w() == a.lognorm().w() + b.lognorm().w());
            auto s = (a + b).lognorm();
            auto m = LogNorm::min(a.lognorm(), b.lognorm());
            if (a.lognorm().w() != b.lognorm().w()) {
                CHECK(s.w() == m.w());
            } else if (!s.is_bottom()) {
                CHECK(s.w() >= m.w());
            }
        }
    }
}

TEST_CASE("double inversion is the identity to stated precision") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 1000; ++it) {
        long p = (it % 3 == 0) ? 2 : (it % 3 == 1 ? 3 : 5);
        auto a = rand_unit(rng, p, 6);
        CHECK(a.inv().inv().same(a));
    }
}

TEST_CASE("teichmueller lifts are roots of unity") {
    long p = 5;
    for (long a = 1; a < p; ++a) {
        auto t = PadicScalar::teichmueller(p, a, 8);
        CHECK(t.residue() == a);
        auto pw = t;
        for (int k = 1; k < p - 1; ++k) pw = pw * t;
        CHECK(pw.same(PadicScalar::from_integer(p, 1, 8)));
    }
}

TEST_CASE("prime mismatch and zero inversion are rejected") {
    auto a = PadicScalar::from_integer(3, 2, 4);
    auto b = PadicScalar::from_integer(5, 2, 4);
    CHECK_THROWS_AS(a + b, PreconditionError);
    CHECK_THROWS_AS(PadicScalar::zero(3).inv(), PreconditionError);
}
