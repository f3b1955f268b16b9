#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "agolomb/beatty.hpp"
#include "agolomb/qfield.hpp"
#include "agolomb/report.hpp"

namespace agolomb {

// Shift context for the triple-nested identity a(a(f(n))) = a(n), where
// f(n) is the order-r window sum. The regime analysis is implemented for
// r = 2 and r = 3; the plain verifier and scanner work for any order.
struct NestedContext {
    BeattyParams params;
    QuadExpr D;  // d*(2c+1) for r=2, d*(sqrt(3)+1) for r=3, else unused

    NestedContext(long r, QuadExpr d);

    // Exact endpoints of the proven shift intervals.
    static QuadExpr left_endpoint(long r);   // sqrt(2)/2   | (sqrt(3)+3)/6
    static QuadExpr right_endpoint(long r);  // 2(sqrt(2)-1)| (5 sqrt(3)-3)/6
    bool inside_interval() const;
};

// a(f(n)) - n, computed both by direct evaluation and by the closed-form
// floor; throws internal_error if the two routes disagree.
long long shift_m(const NestedContext& ctx, long long n);

// r=2: "I" (repeat), "II", "III" from theta_n.
// r=3: "A".."D" from t = theta_{n-2}; the predicted repeat statuses of
// (n, n-1) are cross-checked against the actual increments.
std::string classify_regime(const NestedContext& ctx, long long n);

// Scans a(a(f(n))) == a(n) on [n_lo, n_hi]. For r in {2,3} every step also
// runs the closed-form shift oracle and the absorption logic (m=1 forces n
// to repeat, m=-1 forces n-1 to repeat).
VerifyReport verify_nested(const NestedContext& ctx, long long n_lo, long long n_hi,
                           int threads = 1);

struct NestedWitness {
    bool found = false;
    long long n = -1;
    long long m = 0;
    std::string regime;
    QuadExpr theta;       // theta_n for r=2, t = theta_{n-2} for r=3
    bool window_ok = false;  // witness lies in the predicted failure window
    std::string note;
};

// Least n <= n_cap violating the identity, tagged with its regime and
// checked against the predicted failure window for the side of the interval
// d falls on.
NestedWitness find_failure(const NestedContext& ctx, long long n_cap);

// r=3 only: validates the per-regime ranges of Theta = theta_n + theta_{n-1}
// + theta_{n-2} on a rational grid of the base parameter and on all orbit
// points n <= orbit_cap, including the extremal behaviour near t = 1-c.
// When d lies in the interval, also checks m(n) in {-1,0,1} and
// D - c*Theta(n) in (2-2c, 1+2c].
VerifyReport theta_range_check(const NestedContext& ctx, long long grid_den, long long orbit_cap);

// Exact check of the full floor expansion: floor(c*n + R(n)) must reproduce
// a(a(f(n))) term by term (r=2, any shift).
VerifyReport expansion_check(const NestedContext& ctx, long long n_lo, long long n_hi);

struct ScanRow {
    QuadExpr d;
    bool pass = false;
    long long first_witness = -1;
};

// verify_nested over a grid of shifts; rows come back in grid order.
std::vector<ScanRow> scan_interval(long r, const std::vector<QuadExpr>& grid, long long n_cap,
                                   int threads = 1);

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace agolomb
