#include <doctest.h>

#include <random>
#include <sstream>

#include "agolomb/beatty.hpp"
#include "agolomb/golomb.hpp"
#include "agolomb/sawtooth.hpp"

using namespace agolomb;

TEST_CASE("counting table rows for small r") {
    struct Row {
        long r;
        long long N;
        const char* bound;
        const char* margin;
        const char* sup;
        const char* inf;
    };
    const Row rows[] = {
        {2, 0, "0.8284", "0.8284", "1.7071", "0.2929"},
        {3, 2, "2.1962", "0.1962", "2.2679", "0.7321"},
        {5, 0, "2.1803", "2.1803", "3.4721", "1.5279"},
        {6, 3, "3.6969", "0.6969", "3.8763", "2.1237"},
        {7, 4, "5.5203", "1.5203", "4.3542", "2.6458"},
        {8, 7, "7.6274", "0.6274", "5.1005", "2.8995"},
    };
    for (const Row& row : rows) {
        SawtoothProfile pr = profile(row.r);
        CHECK(pr.N == row.N);
        CHECK(pr.bound.decimal(4) == row.bound);
        CHECK(pr.margin.decimal(4) == row.margin);
        CHECK(pr.sup_phi.decimal(4) == row.sup);
        CHECK(pr.inf_phi.decimal(4) == row.inf);
        CHECK(pr.sup_phi + pr.inf_phi == QuadExpr(row.r));
        CHECK(pr.margin_positive);
    }
}

TEST_CASE("N(r) values and the r = s^2+1 family") {
    CHECK(count_N(3) == 2);
    CHECK(count_N(5) == 0);
    CHECK(count_N(8) == 7);
    for (long r = 2; r <= 120; ++r) {
        long s = 1;
        while ((s + 1) * (s + 1) <= r) ++s;
        if (s * s == r) continue;
        bool family = r == s * s + 1;
        CHECK((count_N(r) == 0) == family);
    }
}

TEST_CASE("palindrome and boundedness of the step sums") {
    for (long r : {6L, 7L, 11L, 29L, 60L}) {
        QuadExpr c = QuadExpr::inv_sqrt(r);
        std::vector<QuadExpr> delta;
        QuadExpr jc;
        std::vector<QuadExpr> fr(static_cast<size_t>(r));
        for (long j = 1; j <= r - 1; ++j) {
            jc += c;
            fr[static_cast<size_t>(j)] = jc.frac();
        }
        for (long k = 1; k <= r - 1; ++k)
            delta.push_back(fr[static_cast<size_t>(k)] + fr[static_cast<size_t>(r - k)] -
                            QuadExpr(1));
        for (long k = 0; k < r - 1; ++k) CHECK(delta[static_cast<size_t>(k)] == delta[static_cast<size_t>(r - 2 - k)]);
        QuadExpr p;
        for (long j = 0; j < r - 1; ++j) {
            p += delta[static_cast<size_t>(j)];
            CHECK(p < QuadExpr(1));
            CHECK(p > QuadExpr(-1));
        }
    }
}

TEST_CASE("phi stays in the band exactly when the identity holds") {
    for (long r : {2L, 3L, 6L}) {
        BeattyParams params = BeattyParams::canonical(r);
        auto a = materialize(params, 4 * r * 600);
        QuadExpr lo = (QuadExpr(r) - QuadExpr::sqrt_of(r)) * QuadExpr(mpq_class(1, 2));
        QuadExpr hi = (QuadExpr(r) + QuadExpr::sqrt_of(r)) * QuadExpr(mpq_class(1, 2));
        for (long long n = r; n <= 500; ++n) {
            QuadExpr f = phi(r, n);
            bool in_band = f > lo && f <= hi;
            bool identity = a[static_cast<size_t>(window_sum(a, r, n))] == n;
            CHECK(in_band == identity);
            CHECK(in_band);  // non-square and odd-square orders hold it
        }
    }
}

TEST_CASE("phi respects the profile extrema") {
    for (long r : {2L, 3L, 8L}) {
        SawtoothProfile pr = profile(r);
        for (long long n = r; n <= 400; ++n) {
            QuadExpr f = phi(r, n);
            CHECK(f <= pr.sup_phi);
            CHECK(f >= pr.inf_phi);
        }
    }
}

TEST_CASE("parity identities for assorted r") {
    for (long r : {2L, 3L, 7L, 10L, 12L, 37L, 99L}) {
        VerifyReport rep = parity_identities(r);
        CHECK(rep.pass);
    }
    CHECK(parity_identities(7).detail == "N=4");
    CHECK(parity_identities(10).detail == "N=0");
    CHECK_THROWS_AS(parity_identities(9), usage_error);  // perfect square
}

TEST_CASE("hermite identity on rationals") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> num(-400, 400), den(1, 40), size(2, 9);
    for (int round = 0; round < 400; ++round) {
        long s = size(rng);
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        mpz_class sum = 0;
        for (long v = 0; v < s; ++v) {
            mpq_class term = x + mpq_class(v, s);
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), term.get_num().get_mpz_t(), term.get_den().get_mpz_t());
            sum += fl;
        }
        mpq_class sx = x * s;
        mpz_class fl_sx;
        mpz_fdiv_q(fl_sx.get_mpz_t(), sx.get_num().get_mpz_t(), sx.get_den().get_mpz_t());
        CHECK(sum == fl_sx);
    }
}

TEST_CASE("square closed forms against direct window sums") {
    // s odd
    SquareClosedForm odd = square_closed_form(3, 9);
    CHECK(odd.S_n == 24);
    CHECK(odd.a_of_S == 9);
    auto a9 = materialize(BeattyParams::canonical(9), 64);
    CHECK(window_sum(a9, 9, 9) == odd.S_n);
    CHECK(a9[24] == 9);
    // s even
    SquareClosedForm even = square_closed_form(2, 4);
    CHECK(even.S_n == 8);
    CHECK(even.a_of_S == 5);
    auto a4 = materialize(BeattyParams::canonical(4), 32);
    CHECK(window_sum(a4, 4, 4) == even.S_n);
    CHECK(a4[8] == 5);
    // first valid index for several s, plus a sweep above it
    for (long s = 2; s <= 6; ++s) {
        long long r = static_cast<long long>(s) * s;
        auto a = materialize(BeattyParams::canonical(r), 3 * r * s);
        for (long long n = r; n <= 2 * r; ++n) {
            SquareClosedForm cf = square_closed_form(s, n);
            CHECK(window_sum(a, r, n) == cf.S_n);
            CHECK(a[static_cast<size_t>(cf.S_n)] == cf.a_of_S);
        }
    }
}

TEST_CASE("csv emitter covers every non-square r") {
    std::ostringstream out;
    write_counting_table_csv(out, 12);
    std::string text = out.str();
    CHECK(text.find("r,s,beta,N,bound,margin,sup_phi,inf_phi") == 0);
    CHECK(text.find("\n3,1,0.7321,2,2.1962,0.1962,2.2679,0.7321") != std::string::npos);
    CHECK(text.find("\n9,") == std::string::npos);  // squares are skipped
}
