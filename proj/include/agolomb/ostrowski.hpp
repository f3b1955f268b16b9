#pragma once

#include <iosfwd>
#include <vector>

#include "agolomb/qfield.hpp"
#include "agolomb/report.hpp"

namespace agolomb {

// Continued fraction of 1/sqrt(r) with convergents p_k/q_k, built by the
// exact quadratic-surd algorithm. Index 0 holds p_0/q_0 = 0/1; for r=2 the
// denominators q_1.. run 1, 3, 7, 17, 41, ...
struct ConvergentTable {
    long r = 0;
    std::vector<long long> a;  // partial quotients, a[0] = 0
    std::vector<long long> p;
    std::vector<long long> q;
    int depth() const { return static_cast<int>(a.size()) - 1; }
};

ConvergentTable continued_fraction(long r, int depth);

// Digit constraint sets for n = sum e_k q_k over k >= 1.
//  PaperLiteral: e_1 in {0,1}, e_k in {0,1,2} for k >= 2, e_k=2 => e_{k-1}=0.
//                Not every integer is representable (n=2 already fails).
//  Standard:     e_k in {0,1,2} for all k >= 1, e_k=2 => e_{k-1}=0 (digits
//                bounded by the next partial quotient); total and unique.
enum class DigitConvention { PaperLiteral, Standard };

struct OstrowskiDigits {
    long long n = 0;
    bool feasible = false;
    std::vector<int> e;  // e[k] for k >= 1; e[0] unused
};

OstrowskiDigits to_ostrowski(long long n, const ConvergentTable& table, DigitConvention conv);

long long digits_value(const OstrowskiDigits& d, const ConvergentTable& table);
// sum e_k p_k, the digit-swapped evaluation.
long long digits_swap_value(const OstrowskiDigits& d, const ConvergentTable& table);

struct DigitSwapReport {
    DigitConvention convention = DigitConvention::Standard;
    long long checked = 0;
    long long matches = 0;
    std::vector<long long> mismatches;  // at most the first 16
    bool pass = false;
};

// Compares a_B(n) (canonical r=2 Beatty) against sum e_k p_k for every
// n <= n_max. Tries the paper-literal digit set first and falls back to the
// standard one when representability fails; the report records which
// convention was used.
DigitSwapReport digit_swap_check(long long n_max);

void write_digit_swap_csv(std::ostream& out, long long n_max);

// Exhaustive digit-string enumeration: every n in [1, n_max] must have
// exactly one legal representation under the standard convention.
VerifyReport uniqueness_check(long long n_max);

struct PellReport {
    std::vector<long long> q_prefix;   // q_1..q_8
    bool gap_identities = false;       // 3=q_2, 4=q_3-q_2, 7=q_3
    bool silver_root = false;          // (1+sqrt(2))^2 - 2(1+sqrt(2)) - 1 == 0
    std::vector<long long> wall;       // floor(m/sqrt(2)), m = 1..10
    bool pass = false;
};
PellReport pell_constants();

}  // namespace agolomb
