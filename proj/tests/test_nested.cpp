#include <doctest.h>

#include <sstream>

#include "agolomb/nested.hpp"

using namespace agolomb;

namespace {

QuadExpr q(long long num, long long den) { return QuadExpr::rational(num, den); }

}  // namespace

TEST_CASE("interval endpoints and their D values") {
    QuadExpr c2 = QuadExpr::inv_sqrt(2);
    NestedContext left2(2, NestedContext::left_endpoint(2));
    NestedContext right2(2, NestedContext::right_endpoint(2));
    CHECK(left2.D == QuadExpr(1) + c2);
    CHECK(right2.D == QuadExpr(2));
    QuadExpr c3 = QuadExpr::inv_sqrt(3);
    NestedContext left3(3, NestedContext::left_endpoint(3));
    NestedContext right3(3, NestedContext::right_endpoint(3));
    CHECK(left3.D == QuadExpr(1) + QuadExpr(2) * c3);
    CHECK(right3.D == QuadExpr(2) + c3);
    // the r=3 interval is centred at sqrt(3)/2 with half-width (2 sqrt(3)-3)/6
    QuadExpr centre = (left3.params.d + right3.params.d) * q(1, 2);
    CHECK(centre == QuadExpr(0, mpq_class(1, 2), 3));
    CHECK(right3.params.d - centre == QuadExpr(mpq_class(-1, 2), mpq_class(1, 3), 3));
    CHECK(left2.inside_interval());
    CHECK(right2.inside_interval());
    CHECK_FALSE(NestedContext(2, q(7, 10)).inside_interval());
}

TEST_CASE("strong-identity shift gives m = 0 everywhere") {
    NestedContext ctx(2, NestedContext::left_endpoint(2));
    for (long long n = 2; n <= 500; ++n) CHECK(shift_m(ctx, n) == 0);
}

TEST_CASE("right endpoint has m(6) = 1 and shifts in {0,1}") {
    NestedContext ctx(2, NestedContext::right_endpoint(2));
    CHECK(shift_m(ctx, 6) == 1);
    for (long long n = 2; n <= 2000; ++n) {
        long long m = shift_m(ctx, n);
        CHECK((m == 0 || m == 1));
    }
}

TEST_CASE("r=2 classes partition by theta and drive the increments") {
    NestedContext ctx(2, NestedContext::right_endpoint(2));
    const QuadExpr& c = ctx.params.c;
    for (long long n = 2; n <= 400; ++n) {
        std::string reg = classify_regime(ctx, n);
        QuadExpr th = ctx.params.theta(n);
        bool repeat = ctx.params.eval(n + 1) == ctx.params.eval(n);
        if (reg == "I") {
            CHECK(th < QuadExpr(1) - c);
            CHECK(repeat);
        } else {
            CHECK(th >= QuadExpr(1) - c);
            CHECK_FALSE(repeat);
            // class III: c*Theta_2 = 2c*theta - 1/2; class II adds c
            QuadExpr lhs = c * (th + ctx.params.theta(n - 1));
            QuadExpr rhs = QuadExpr(2) * c * th - q(1, 2);
            if (reg == "III")
                CHECK(lhs == rhs);
            else
                CHECK(lhs == rhs + c);
        }
    }
}

TEST_CASE("verify_nested passes on the proven intervals") {
    for (const QuadExpr& d : {NestedContext::left_endpoint(2), q(3, 4), q(4, 5),
                              NestedContext::right_endpoint(2)}) {
        NestedContext ctx(2, d);
        VerifyReport rep = verify_nested(ctx, 2, 20000);
        CHECK(rep.pass);
    }
    for (const QuadExpr& d : {NestedContext::left_endpoint(3), QuadExpr(0, mpq_class(1, 2), 3),
                              NestedContext::right_endpoint(3)}) {
        NestedContext ctx(3, d);
        VerifyReport rep = verify_nested(ctx, 3, 20000);
        CHECK(rep.pass);
    }
    // threaded run agrees
    CHECK(verify_nested(NestedContext(2, q(4, 5)), 2, 30000, 2).pass);
}

TEST_CASE("r=5 at the strong shift satisfies the nested identity too") {
    NestedContext ctx(5, QuadExpr(0, mpq_class(1, 2), 5));
    CHECK(verify_nested(ctx, 5, 20000).pass);
}

TEST_CASE("failures outside the r=2 interval land in the predicted windows") {
    NestedContext low(2, q(7, 10));
    NestedWitness w = find_failure(low, 10000);
    REQUIRE(w.found);
    CHECK(w.n <= 10000);
    CHECK(w.regime == "II");
    CHECK(w.m <= -1);
    CHECK(w.window_ok);

    NestedContext just_low(2, NestedContext::left_endpoint(2) - q(1, 100));
    NestedWitness w2 = find_failure(just_low, 10000);
    REQUIRE(w2.found);
    CHECK(w2.regime == "II");
    CHECK(w2.window_ok);

    NestedContext high(2, q(17, 20));
    NestedWitness w3 = find_failure(high, 10000);
    REQUIRE(w3.found);
    CHECK(w3.regime == "III");
    CHECK(w3.m >= 1);
    CHECK(w3.window_ok);

    NestedContext just_high(2, NestedContext::right_endpoint(2) + q(1, 100));
    NestedWitness w4 = find_failure(just_high, 10000);
    REQUIRE(w4.found);
    CHECK(w4.regime == "III");
    CHECK(w4.window_ok);

    NestedWitness none = find_failure(NestedContext(2, q(3, 4)), 5000);
    CHECK_FALSE(none.found);
    CHECK(none.note.find("no failure") != std::string::npos);
}

TEST_CASE("failures outside the r=3 interval carry regime tags") {
    NestedWitness low = find_failure(NestedContext(3, q(3, 4)), 100000);
    REQUIRE(low.found);
    CHECK(low.regime == "B");
    CHECK(low.m <= -1);
    CHECK(low.window_ok);

    NestedWitness high = find_failure(NestedContext(3, q(19, 20)), 100000);
    REQUIRE(high.found);
    CHECK(high.regime == "C");
    CHECK(high.m >= 1);
    CHECK(high.window_ok);

    NestedWitness just_high =
        find_failure(NestedContext(3, NestedContext::right_endpoint(3) + q(1, 100)), 100000);
    REQUIRE(just_high.found);
    CHECK(just_high.regime == "C");
    CHECK(just_high.window_ok);
}

TEST_CASE("theta ranges per regime") {
    for (const QuadExpr& d : {NestedContext::left_endpoint(3), QuadExpr(0, mpq_class(1, 2), 3),
                              NestedContext::right_endpoint(3)}) {
        VerifyReport rep = theta_range_check(NestedContext(3, d), 997, 10000);
        CHECK(rep.pass);
        CHECK(rep.detail.find("min Theta") != std::string::npos);
    }
    CHECK_THROWS_AS(theta_range_check(NestedContext(2, q(3, 4)), 100, 100), usage_error);
}

TEST_CASE("floor expansion reproduces the nested value") {
    for (const QuadExpr& d : {NestedContext::left_endpoint(2), q(3, 4), q(4, 5),
                              NestedContext::right_endpoint(2), q(7, 10)}) {
        VerifyReport rep = expansion_check(NestedContext(2, d), 2, 2000);
        CHECK(rep.pass);
    }
}

TEST_CASE("interval scan brackets the true endpoints") {
    std::vector<QuadExpr> grid;
    for (long long k = 65; k <= 87; ++k) grid.push_back(q(k, 100));
    auto rows = scan_interval(2, grid, 3000, 2);
    REQUIRE(rows.size() == grid.size());
    // left endpoint 0.70710..., right 0.82842...
    for (size_t i = 0; i < rows.size(); ++i) {
        bool inside = grid[i] >= NestedContext::left_endpoint(2) &&
                      grid[i] <= NestedContext::right_endpoint(2);
        CHECK(rows[i].pass == inside);
        if (!rows[i].pass) CHECK(rows[i].first_witness > 0);
    }
    std::ostringstream csv;
    write_scan_csv(csv, rows);
    CHECK(csv.str().find("d_num,d_den,d_surd_num,d_surd_den,pass,first_witness") == 0);
}
