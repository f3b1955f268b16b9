#pragma once

#include <cstdint>
#include <vector>

#include "agolomb/qfield.hpp"
#include "agolomb/report.hpp"

namespace agolomb {

// Shifted Beatty generator a(n) = floor(c*n + d) with c = 1/sqrt(r) and a
// shift d from Q(sqrt(r)). a(n) = 0 for n < 1.
struct BeattyParams {
    long r;
    QuadExpr d;
    QuadExpr c;  // (1/r)*sqrt(r), so c*c*r == 1 exactly

    BeattyParams(long r_, QuadExpr d_);
    // d = sqrt(r)/2, the strong-identity shift of order r.
    static BeattyParams canonical(long r_);

    long long eval(long long n) const;
    // {c*n + d}, exact, in [0,1).
    QuadExpr theta(long long n) const;
};

// Incremental walker along (n, a(n), theta_n). One exact interval test per
// step; no floors after initialisation.
class BeattyOrbit {
public:
    BeattyOrbit(const BeattyParams& p, long long start_n);

    long long n() const { return n_; }
    long long a() const { return a_; }
    const QuadExpr& theta() const { return theta_; }

    void step();
    // Advance until n() == target (target must be >= n()).
    void advance_to(long long target);

    const BeattyParams& params() const { return p_; }

private:
    BeattyParams p_;
    long long n_;
    long long a_;
    QuadExpr theta_;
};

// a(1..n_hi) as a 1-based vector (index 0 holds the zero padding).
std::vector<long long> materialize(const BeattyParams& p, long long n_hi, int threads = 1);

// w(n) = a(n+1) - a(n) for n = 1..len, each in {0,1}.
std::vector<uint8_t> difference_word(const BeattyParams& p, long long len);

// #\{k >= 1 : a(k) = value\}; exact via ceil arithmetic on (value - d)*sqrt(r).
long long multiplicity(const BeattyParams& p, long long value);

// Balance check: for every factor length in [1, max_len], the weights of all
// length-ell windows of w differ by at most 1.
VerifyReport balance_check(const std::vector<uint8_t>& w, int max_len);

// Compares the factor sets (lengths 1..max_factor_len) of the canonical r=2
// difference word against the substitution word fixing its subshift
// (0 -> 1, 1 -> 011; silver incidence, Perron root 1+sqrt(2)).
// detail records the alignment offset at which the w prefix first occurs.
VerifyReport sturmian_morphism_check(long long len, int max_factor_len = 12);

// Substitution word prefix sigma^k(0) with length >= min_len.
std::vector<uint8_t> morphism_word(long long min_len);

struct AffineSolution {
    QuadExpr slope;      // 1/sqrt(r)
    QuadExpr intercept;  // (sqrt(r)-1)/2
    bool residual_zero;  // r*c^2 == 1 and d(sqrt(r)+1) == (r-1)/2, checked exactly
};
AffineSolution continuous_solution(long r);

}  // namespace agolomb
