#pragma once

#include <map>
#include <vector>

#include "agolomb/beatty.hpp"
#include "agolomb/qfield.hpp"
#include "agolomb/report.hpp"

namespace agolomb {

// No monotone extension exists at index n; `position` is the constrained
// address in conflict and `forced` the value it demands.
struct construction_error : std::runtime_error {
    construction_error(long long n_, long long position_, long long forced_, const std::string& msg)
        : std::runtime_error(msg), n(n_), position(position_), forced(forced_) {}
    long long n;
    long long position;
    long long forced;
};

// Greedy solver state for the order-r window equation a(S(n)) = n:
// the materialised prefix plus every pending position -> value constraint
// recorded so far. Constraints are kept for all time; positions and values
// stay order-isomorphic.
struct GolombState {
    long r;
    std::vector<long long> prefix;              // prefix[i] = a(i), prefix[0] = 0 padding
    std::map<long long, long long> constraints;  // position -> forced value

    explicit GolombState(long r_);
    long long size() const { return static_cast<long long>(prefix.size()) - 1; }
    long long at(long long i) const { return i < 1 ? 0 : prefix[static_cast<size_t>(i)]; }
};

// Extends the prefix to length `upto`, choosing at each free index the least
// value >= a(n-1) whose induced constraint S(n) -> n is consistent.
void greedy_extend(GolombState& st, long long upto);

// S(n) = a(n) + ... + a(n-r+1) with zero padding below index 1.
long long window_sum(const std::vector<long long>& a, long r, long long n);

// Checks a(S(n)) == n + expected_offset over [n_lo, n_hi] for a materialised
// 1-based sequence (must extend far enough to index S(n_hi)).
VerifyReport verify_strong_prefix(const std::vector<long long>& a, long r, long long n_lo,
                                  long long n_hi, int expected_offset);

// Same check for a Beatty sequence, materialising just enough of it.
VerifyReport verify_strong(const BeattyParams& p, long long n_lo, long long n_hi,
                           int expected_offset, int threads = 1);

// r=2 recurrences a(2n) = a(n) + a(n+1) - 1 (n >= 1) and
// a(2n+1) = a(n) + a(n+1) (n >= 2). Witness is the violating index.
VerifyReport dyadic_check(const std::vector<long long>& a);

}  // namespace agolomb
