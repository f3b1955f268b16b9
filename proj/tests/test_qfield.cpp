#include <doctest.h>

#include <random>

#include "agolomb/qfield.hpp"

using namespace agolomb;

namespace {

// Independent floor oracle: x = (P + Q*sqrt(r)) / den reduced to one integer
// square root, with no use of QuadExpr internals.
long long oracle_floor(const mpq_class& a, const mpq_class& b, long r) {
    mpz_class den = a.get_den() * b.get_den();
    mpz_class p = a.get_num() * b.get_den();
    mpz_class q = b.get_num() * a.get_den();
    mpz_class w = q * q * r;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), w.get_mpz_t());
    bool exact = s * s == w;
    mpz_class num = sgn(q) >= 0 ? p + s : p - s - (exact ? 0 : 1);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return fl.get_si();
}

mpq_class rand_q(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-2000, 2000);
    std::uniform_int_distribution<long> den(1, 60);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("addition is componentwise and reduced") {
    QuadExpr one_plus_root(1, 1, 2);
    CHECK(QuadExpr(1) + QuadExpr::sqrt_of(2) == one_plus_root);
    CHECK(QuadExpr(mpq_class(1, 2), mpq_class(1, 2), 2) +
              QuadExpr(mpq_class(1, 2), mpq_class(-1, 2), 2) ==
          QuadExpr(1));
    QuadExpr d_r(-2, 2, 2);  // 2(sqrt(2)-1)
    CHECK(d_r + QuadExpr(0, 0, 2) == d_r);
    CHECK((QuadExpr(mpq_class(1, 2), mpq_class(1, 2), 2) +
           QuadExpr(mpq_class(1, 2), mpq_class(-1, 2), 2))
              .is_rational());
}

TEST_CASE("multiplication uses the field law") {
    QuadExpr c(0, mpq_class(1, 2), 2);  // 1/sqrt(2)
    CHECK(c * c == QuadExpr(mpq_class(1, 2)));
    QuadExpr lhs = QuadExpr(-2, 2, 2) * QuadExpr(1, 1, 2);  // (4c-2)(2c+1)
    CHECK(lhs == QuadExpr(2));
    QuadExpr x(mpq_class(3, 7), mpq_class(-5, 11), 3);
    CHECK(x * QuadExpr(1) == x);
}

TEST_CASE("sign is exact") {
    CHECK(QuadExpr(1, -1, 2).sign() == -1);
    CHECK(QuadExpr(0, 0, 3).sign() == 0);
    // (5 sqrt(3)-3)/6 - sqrt(3)/2 = (2 sqrt(3)-3)/6 > 0
    QuadExpr half_width = QuadExpr(mpq_class(-1, 2), mpq_class(5, 6), 3) -
                          QuadExpr(0, mpq_class(1, 2), 3);
    CHECK(half_width == QuadExpr(mpq_class(-1, 2), mpq_class(1, 3), 3));
    CHECK(half_width.sign() == 1);
}

TEST_CASE("floor matches the paper values") {
    CHECK(QuadExpr::sqrt_of(2).floor64() == 1);
    // 13/sqrt(2) + sqrt(2)/2 = 7 sqrt(2)
    QuadExpr x = QuadExpr(0, mpq_class(13, 2), 2) + QuadExpr(0, mpq_class(1, 2), 2);
    CHECK(x == QuadExpr(0, 7, 2));
    CHECK(x.floor64() == 9);
    // 1/sqrt(3) + sqrt(3)/2 = 5 sqrt(3)/6
    QuadExpr y = QuadExpr(0, mpq_class(1, 3), 3) + QuadExpr(0, mpq_class(1, 2), 3);
    CHECK(y.floor64() == 1);
    CHECK(y.floor64() == oracle_floor(0, mpq_class(5, 6), 3));
}

TEST_CASE("floor and sign: randomized against the oracle") {
    std::mt19937 rng(42);
    const long radicands[] = {2, 3, 5, 7, 10, 9, 16};
    for (int round = 0; round < 10000; ++round) {
        long r = radicands[static_cast<size_t>(round) % 7];
        mpq_class a = rand_q(rng), b = rand_q(rng);
        QuadExpr x(a, b, r);
        int steps = 0;
        long long fl = x.floor64(&steps);
        CHECK(fl == oracle_floor(a, b, r));
        CHECK(steps <= 2);  // the double hint is nearly always already right
        CHECK(QuadExpr(fl) <= x);
        CHECK(x < QuadExpr(fl + 1));
        QuadExpr f = x.frac();
        CHECK(f.sign() >= 0);
        CHECK(f < QuadExpr(1));
        CHECK(QuadExpr(fl) + f == x);
    }
}

TEST_CASE("sign is multiplicative and squares are nonnegative") {
    std::mt19937 rng(7);
    for (int round = 0; round < 10000; ++round) {
        long r = round % 2 ? 2 : 5;
        QuadExpr x(rand_q(rng), rand_q(rng), r);
        QuadExpr y(rand_q(rng), rand_q(rng), r);
        CHECK((x * x).sign() >= 0);
        CHECK(x.sign() * y.sign() == (x * y).sign());
    }
}

TEST_CASE("square radicands behave like their rational value") {
    std::mt19937 rng(11);
    for (int round = 0; round < 2000; ++round) {
        mpq_class a = rand_q(rng), b = rand_q(rng);
        QuadExpr x(a, b, 9);
        mpq_class value = a + b * 3;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
        CHECK(x.floor_z() == fl);
        CHECK(x.sign() == sgn(value));
    }
}

TEST_CASE("radicand mismatch is a usage error") {
    CHECK_THROWS_AS(QuadExpr::sqrt_of(2) + QuadExpr::sqrt_of(3), usage_error);
    CHECK_THROWS_AS(QuadExpr::sqrt_of(2) * QuadExpr::sqrt_of(5), usage_error);
    CHECK_NOTHROW(QuadExpr::sqrt_of(2) + QuadExpr(3));  // rationals are field-agnostic
}

TEST_CASE("inverse") {
    QuadExpr c = QuadExpr::inv_sqrt(2);
    CHECK(c.inverse() == QuadExpr::sqrt_of(2));
    QuadExpr x(3, -1, 7);
    CHECK(x * x.inverse() == QuadExpr(1));
    CHECK_THROWS_AS(QuadExpr(0).inverse(), usage_error);
    // square radicand with vanishing conjugate: 3 + 1*sqrt(9) = 6
    CHECK(QuadExpr(3, 1, 9).inverse() == QuadExpr(mpq_class(1, 6)));
}

TEST_CASE("rendering and parsing round-trip") {
    CHECK(QuadExpr(0, mpq_class(1, 2), 2).str() == "0/1 + 1/2*sqrt(2)");
    CHECK(QuadExpr::parse("0/1+1/2*sqrt(2)") == QuadExpr(0, mpq_class(1, 2), 2));
    CHECK(QuadExpr::parse("-2/1 + 2/1*sqrt(2)") == QuadExpr(-2, 2, 2));
    CHECK(QuadExpr::parse("7/10") == QuadExpr(mpq_class(7, 10)));
    CHECK(QuadExpr::parse("sqrt(5)") == QuadExpr::sqrt_of(5));
    CHECK(QuadExpr::parse("1 - 1/2*sqrt(2)") == QuadExpr(1, mpq_class(-1, 2), 2));
    std::mt19937 rng(3);
    for (int round = 0; round < 500; ++round) {
        QuadExpr x(rand_q(rng), rand_q(rng), 3);
        CHECK(QuadExpr::parse(x.str()) == x);
    }
    CHECK_THROWS_AS(QuadExpr::parse(""), usage_error);
    CHECK_THROWS_AS(QuadExpr::parse("1/0"), usage_error);
    CHECK_THROWS_AS(QuadExpr::parse("sqrt(2) + sqrt(3)"), usage_error);
    CHECK_THROWS_AS(QuadExpr::parse("abc"), usage_error);
    CHECK_THROWS_AS(QuadExpr::parse("1/2*sqrt(3)", 2), usage_error);
}

TEST_CASE("decimal rendering rounds half up to four places") {
    CHECK(QuadExpr(0, mpq_class(1, 2), 2).decimal(4) == "0.7071");
    CHECK(QuadExpr(1, 1, 2).decimal(4) == "2.4142");
    CHECK(QuadExpr(mpq_class(1, 8)).decimal(2) == "0.13");
    CHECK(QuadExpr(2).decimal(4) == "2.0000");
}
