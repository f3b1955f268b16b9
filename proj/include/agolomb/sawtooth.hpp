#pragma once

#include <iosfwd>
#include <vector>

#include "agolomb/qfield.hpp"
#include "agolomb/report.hpp"

namespace agolomb {

// Everything the counting inequality N(r) < r*beta + s - 1 needs for one r,
// plus the exact extrema of the sawtooth Phi.
struct SawtoothProfile {
    long r;
    long s;              // floor(sqrt(r))
    long t;              // r - s^2
    QuadExpr beta;       // sqrt(r) - s
    long long u;         // floor(s*beta)
    long long N;         // #{1<=j<=r-1 : {j/sqrt(r)} < beta}
    QuadExpr bound;      // r*beta + s - 1
    QuadExpr margin;     // bound - N, must be > 0
    QuadExpr sup_phi;
    QuadExpr inf_phi;
    bool margin_positive;
};

// Phi(n) = sum_{j=0}^{r-1} { (n-j)/sqrt(r) + sqrt(r)/2 }, exact.
QuadExpr phi(long r, long long n);

long long count_N(long r);

// Exact profile via the r-1 jump points of the sawtooth (no sampling in n).
SawtoothProfile profile(long r);

// The four exact identities behind the parity argument:
//   floor(s*beta) = floor((t-1)/2)
//   N(r) = (s+1)(t-1) - 2*sum_{k<=s} floor(k*beta)
//   sum_{k<=s} floor(k*beta) = sum_{m<=u} (s+1-ceil(m/beta))
//   2*sum_{j<r} floor(j/sqrt(r)) = (r-1)(s-1) + N(r)
VerifyReport parity_identities(long r);

// Closed forms for square r = s^2: S(n) and a(S(n)) per the parity of s,
// valid for n >= s^2.
struct SquareClosedForm {
    long long S_n;
    long long a_of_S;
};
SquareClosedForm square_closed_form(long s, long long n);

// CSV reproduction of the counting table for all non-square r <= rmax.
void write_counting_table_csv(std::ostream& out, long rmax);

}  // namespace agolomb
