#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "agolomb/qfield.hpp"
#include "agolomb/report.hpp"

namespace agolomb {

// Indices n <= cap with a(f(n)) = n + 1 at the right interval endpoint
// (d = 2(sqrt(2)-1) for r=2, d = (5 sqrt(3)-3)/6 for r=3).
struct DefectSet {
    long r;
    QuadExpr d;
    long long cap = 0;
    std::vector<long long> elements;
    // r=2: delta(n)=1 <=> theta_{n-1} in [1-c,1/2], both sides computed
    // independently for every n; also asserts no exact endpoint hits and
    // theta_n != c throughout, and that every defect is an absorbed repeat.
    VerifyReport equivalence;
};

DefectSet compute_defects(long r, long long cap, int threads = 1);

struct GapWord {
    long r;
    std::vector<int> letters;
    std::map<int, long long> counts;
};

// Consecutive differences; any letter outside {3,4,7} (r=2) or {7,12,19}
// (r=3) is a hard failure.
GapWord gap_word(const DefectSet& ds);

// The three return-time sub-intervals of J = [1-c, 1/2] for r=2:
// J3 = [1-c, 5/2-3c], J4 = (4-5c, 1/2], J7 = (5/2-3c, 4-5c].
struct ReturnIntervals {
    QuadExpr j3_lo, j3_hi;
    QuadExpr j4_lo, j4_hi;
    QuadExpr j7_lo, j7_hi;
    QuadExpr len3, len4, len7;  // |J3| = |J7| = (3-2sqrt(2))/2, |J4| = (5 sqrt(2)-7)/2
};
ReturnIntervals return_intervals();

// Re-walks the orbit and checks that theta_{n-1} of each defect element lies
// in the sub-interval matching its observed following gap.
VerifyReport classify_returns(const DefectSet& ds);

struct GapFrequencies {
    long long total = 0;
    std::map<int, mpq_class> freq;    // letter -> empirical frequency
    std::map<int, double> deviation;  // |empirical - exact target| (r=2 only)
    double average_gap = 0;
    double average_gap_deviation = 0;  // from 2(sqrt(2)+1) (r=2 only)
};
GapFrequencies gap_frequencies(const GapWord& gw);

// Tests the conjectured substitution 3->34, 4->37, 7->377: every factor of
// the gap word with length <= max_factor_len must occur in the substitution
// word. A missing factor is a conjecture counterexample, reported in the
// witness detail rather than thrown. Also verifies the incidence matrix
// (primitive of index 2, characteristic polynomial, exact Perron
// frequencies).
VerifyReport substitution_check(const GapWord& gw, int max_factor_len = 20);

struct SLWord {
    std::string word;               // 'S' for gaps 3 and 4, 'L' for 7
    mpq_class freq_S, freq_L;
    double dev_S = 0;               // |freq_S - (2-sqrt(2))|
    int max_imbalance = 0;          // over factor lengths <= 30; diagnostic only
};
SLWord coarsen_SL(const GapWord& gw);

// OEIS-format b-file lines "n value" for a defect set or its gap word.
void write_bfile(std::ostream& out, const std::vector<long long>& values, long long first_index);

}  // namespace agolomb
