#include <doctest.h>

#include <numeric>
#include <set>

#include "agolomb/beatty.hpp"

using namespace agolomb;

namespace {

long long oracle_floor_scaled(long long x, long r, long long den) {
    // floor(x*sqrt(r)/den) for x >= 0 via one integer square root.
    mpz_class w = mpz_class(static_cast<long>(x)) * x * r;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), w.get_mpz_t());
    mpz_class fl;
    mpz_class d(static_cast<long>(den));
    mpz_fdiv_q(fl.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    return fl.get_si();
}

const std::vector<long long> kBeattyR2First20 = {1, 2, 2, 3, 4,  4,  5,  6,  7,  7,
                                                 8, 9, 9, 10, 11, 12, 12, 13, 14, 14};

}  // namespace

TEST_CASE("canonical r=2 listing") {
    BeattyParams p = BeattyParams::canonical(2);
    for (long long n = 1; n <= 20; ++n)
        CHECK(p.eval(n) == kBeattyR2First20[static_cast<size_t>(n - 1)]);
    CHECK(p.eval(0) == 0);
    CHECK(p.eval(-3) == 0);
    CHECK(p.eval(12) == 9);
    // c*c*r == 1 and the shift reproduces floor((n+1)/sqrt(2))
    CHECK(p.c * p.c * QuadExpr(2) == QuadExpr(1));
    for (long long n = 1; n <= 10000; ++n)
        CHECK(p.eval(n) == oracle_floor_scaled(n + 1, 2, 2));  // (n+1)/sqrt(2) = (n+1)sqrt(2)/2
}

TEST_CASE("eval for r=5") {
    BeattyParams p = BeattyParams::canonical(5);
    CHECK(p.eval(5) == 3);
}

TEST_CASE("theta decomposition and rotation step") {
    BeattyParams p = BeattyParams::canonical(2);
    for (long long n = 1; n <= 300; ++n) {
        QuadExpr th = p.theta(n);
        CHECK(th.sign() >= 0);
        CHECK(th < QuadExpr(1));
        CHECK(QuadExpr(p.eval(n)) + th == p.c * QuadExpr(n) + p.d);
        QuadExpr step = p.theta(n + 1) - th;
        CHECK((step == p.c || step == p.c - QuadExpr(1)));
    }
}

TEST_CASE("orbit walker agrees with direct evaluation") {
    for (long r : {2L, 3L, 5L, 9L}) {
        BeattyParams p = BeattyParams::canonical(r);
        BeattyOrbit orbit(p, 1);
        for (long long n = 1; n <= 2000; ++n) {
            REQUIRE(orbit.a() == p.eval(n));
            orbit.step();
        }
        REQUIRE(orbit.theta() == p.theta(2001));
    }
}

TEST_CASE("difference word") {
    BeattyParams p = BeattyParams::canonical(2);
    std::vector<uint8_t> w = difference_word(p, 100000);
    const uint8_t first12[] = {1, 0, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0};
    for (int i = 0; i < 12; ++i) CHECK(w[static_cast<size_t>(i)] == first12[i]);
    // slope above 1/2 forbids two consecutive repeats
    for (size_t i = 0; i + 1 < w.size(); ++i) CHECK((w[i] + w[i + 1] > 0));
    // telescoping: bit sum equals a(N+1) - a(1)
    long long bits = std::accumulate(w.begin(), w.begin() + 5000, 0LL);
    CHECK(bits == p.eval(5001) - p.eval(1));
}

TEST_CASE("difference word balance") {
    std::vector<uint8_t> w = difference_word(BeattyParams::canonical(2), 20000);
    CHECK(balance_check(w, 30).pass);
    std::vector<uint8_t> w3 = difference_word(BeattyParams::canonical(3), 20000);
    CHECK(balance_check(w3, 30).pass);
    // a deliberately unbalanced word is rejected
    std::vector<uint8_t> bad = {1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0};
    CHECK_FALSE(balance_check(bad, 8).pass);
}

TEST_CASE("multiplicity counts preimages") {
    BeattyParams p = BeattyParams::canonical(2);
    CHECK(multiplicity(p, 2) == 2);
    CHECK(multiplicity(p, 8) == 1);
    CHECK(multiplicity(p, 9) == 2);
    // m(v) = 2 iff w(v-1) = 0 iff {cv+d} < 1-c
    std::vector<uint8_t> w = difference_word(p, 600);
    for (long long v = 2; v <= 500; ++v) {
        long long m = multiplicity(p, v);
        CHECK((m == 1 || m == 2));
        CHECK((m == 2) == (w[static_cast<size_t>(v - 2)] == 0));
        CHECK((m == 2) == (p.theta(v) < QuadExpr(1) - p.c));
    }
}

TEST_CASE("substitution word has silver growth and the same factors") {
    // lengths of sigma^k(0) under 0 -> 1, 1 -> 011
    std::vector<long long> lengths{1};
    std::vector<uint8_t> cur{0};
    for (int k = 0; k < 12; ++k) {
        std::vector<uint8_t> next;
        for (uint8_t b : cur)
            if (b == 0)
                next.push_back(1);
            else {
                next.push_back(0);
                next.push_back(1);
                next.push_back(1);
            }
        cur = std::move(next);
        lengths.push_back(static_cast<long long>(cur.size()));
    }
    for (size_t k = 2; k + 1 < lengths.size(); ++k)
        CHECK(lengths[k + 1] == 2 * lengths[k] + lengths[k - 1]);
    double ratio = static_cast<double>(lengths.back()) / static_cast<double>(lengths[lengths.size() - 2]);
    CHECK(ratio == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-4));

    VerifyReport rep = sturmian_morphism_check(10000, 12);
    CHECK(rep.pass);
    CHECK(rep.detail.find("offset") != std::string::npos);

    // L = 1: both alphabets are {0,1}
    std::vector<uint8_t> w = difference_word(BeattyParams::canonical(2), 100);
    std::set<uint8_t> letters(w.begin(), w.end());
    CHECK(letters == std::set<uint8_t>{0, 1});
}

TEST_CASE("continuous affine solution") {
    AffineSolution sol2 = continuous_solution(2);
    CHECK(sol2.slope == QuadExpr(0, mpq_class(1, 2), 2));
    CHECK(sol2.intercept == QuadExpr(mpq_class(-1, 2), mpq_class(1, 2), 2));
    CHECK(sol2.residual_zero);
    for (long r = 2; r <= 30; ++r) CHECK(continuous_solution(r).residual_zero);
}

TEST_CASE("shift must live in the right field") {
    CHECK_THROWS_AS(BeattyParams(2, QuadExpr::sqrt_of(3)), usage_error);
    CHECK_NOTHROW(BeattyParams(2, QuadExpr(mpq_class(3, 4))));
}
