#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace agolomb {

// Thrown for caller mistakes (bad arguments, radicand mismatch, parse errors).
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when two routes that must agree exactly disagree (a bug, not bad input).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

// An exact element  rat + surd*sqrt(rad)  of Q(sqrt(rad)).
//
// Both coefficients are arbitrary-precision rationals kept reduced by GMP.
// A pure rational carries rad == 0 and may combine with any radicand; two
// values with distinct nonzero radicands never combine. Square radicands
// are legal and are not collapsed: comparisons agree with the rational
// value rat + surd*s when rad == s*s.
class QuadExpr {
public:
    QuadExpr() : rad_(0) {}
    QuadExpr(long long n) : rat_(static_cast<long>(n)), rad_(0) {}  // NOLINT(google-explicit-constructor)
    QuadExpr(const mpq_class& q) : rat_(q), rad_(0) {}              // NOLINT(google-explicit-constructor)
    QuadExpr(mpq_class rat, mpq_class surd, long rad);

    static QuadExpr rational(long long num, long long den);
    // 0 + 1*sqrt(rad)
    static QuadExpr sqrt_of(long rad);
    // 1/sqrt(rad) stored exactly as (1/rad)*sqrt(rad)
    static QuadExpr inv_sqrt(long rad);

    const mpq_class& rat() const { return rat_; }
    const mpq_class& surd() const { return surd_; }
    long radicand() const { return rad_; }
    bool is_rational() const { return rad_ == 0; }

    QuadExpr operator-() const;
    QuadExpr& operator+=(const QuadExpr& o);
    QuadExpr& operator-=(const QuadExpr& o);
    QuadExpr& operator*=(const QuadExpr& o);
    friend QuadExpr operator+(QuadExpr a, const QuadExpr& b) { return a += b; }
    friend QuadExpr operator-(QuadExpr a, const QuadExpr& b) { return a -= b; }
    friend QuadExpr operator*(QuadExpr a, const QuadExpr& b) { return a *= b; }

    // Exact sign in {-1,0,+1}; integer arithmetic only.
    int sign() const;

    friend bool operator<(const QuadExpr& a, const QuadExpr& b) { return (a - b).sign() < 0; }
    friend bool operator>(const QuadExpr& a, const QuadExpr& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const QuadExpr& a, const QuadExpr& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const QuadExpr& a, const QuadExpr& b) { return (a - b).sign() >= 0; }
    friend bool operator==(const QuadExpr& a, const QuadExpr& b) { return (a - b).sign() == 0; }
    friend bool operator!=(const QuadExpr& a, const QuadExpr& b) { return (a - b).sign() != 0; }

    // Unique m with m <= x < m+1. A double estimate seeds the search and the
    // result is verified and adjusted with exact sign tests; *adjust_steps, if
    // given, receives the number of adjustments applied to the seed.
    mpz_class floor_z(int* adjust_steps = nullptr) const;
    long long floor64(int* adjust_steps = nullptr) const;
    // x - floor(x), in [0,1).
    QuadExpr frac() const;

    // 1/x; throws usage_error on zero.
    QuadExpr inverse() const;

    double approx() const;

    // "p/q" or "p/q + u/v*sqrt(r)" (minus sign absorbed into the numerators).
    std::string str() const;
    // Fixed-point rendering with `places` digits, rounding half up.
    std::string decimal(int places) const;

    // Accepts the grammar produced by str(): [+|-]INT[/INT] with optional
    // [+|-] INT[/INT]*sqrt(INT) tail, either term alone also fine.
    // expect_rad, when nonzero, rejects other radicands.
    static QuadExpr parse(const std::string& text, long expect_rad = 0);

private:
    void normalize();

    mpq_class rat_;
    mpq_class surd_;
    long rad_;
};

}  // namespace agolomb
