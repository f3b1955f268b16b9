#include "agolomb/qfield.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace agolomb {

namespace {

bool is_square(long n, long* root) {
    if (n < 0) return false;
    long s = static_cast<long>(std::lround(std::sqrt(static_cast<double>(n))));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    if (root) *root = s;
    return s * s == n;
}

}  // namespace

QuadExpr::QuadExpr(mpq_class rat, mpq_class surd, long rad)
    : rat_(std::move(rat)), surd_(std::move(surd)), rad_(rad) {
    if (rad_ < 0) throw usage_error("negative radicand");
    if (rad_ == 0 && surd_ != 0) throw usage_error("surd part requires a radicand");
    normalize();
}

QuadExpr QuadExpr::rational(long long num, long long den) {
    if (den == 0) throw usage_error("zero denominator");
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return QuadExpr(q);
}

QuadExpr QuadExpr::sqrt_of(long rad) {
    if (rad <= 0) throw usage_error("radicand must be positive");
    return QuadExpr(0, 1, rad);
}

QuadExpr QuadExpr::inv_sqrt(long rad) {
    if (rad <= 0) throw usage_error("radicand must be positive");
    return QuadExpr(0, mpq_class(1, rad), rad);
}

void QuadExpr::normalize() {
    if (surd_ == 0) rad_ = 0;
}

QuadExpr QuadExpr::operator-() const {
    QuadExpr out(*this);
    out.rat_ = -out.rat_;
    out.surd_ = -out.surd_;
    return out;
}

QuadExpr& QuadExpr::operator+=(const QuadExpr& o) {
    if (rad_ != 0 && o.rad_ != 0 && rad_ != o.rad_)
        throw usage_error("radicand mismatch: sqrt(" + std::to_string(rad_) + ") vs sqrt(" +
                          std::to_string(o.rad_) + ")");
    if (rad_ == 0) rad_ = o.rad_;
    rat_ += o.rat_;
    surd_ += o.surd_;
    normalize();
    return *this;
}

QuadExpr& QuadExpr::operator-=(const QuadExpr& o) {
    if (rad_ != 0 && o.rad_ != 0 && rad_ != o.rad_)
        throw usage_error("radicand mismatch: sqrt(" + std::to_string(rad_) + ") vs sqrt(" +
                          std::to_string(o.rad_) + ")");
    if (rad_ == 0) rad_ = o.rad_;
    rat_ -= o.rat_;
    surd_ -= o.surd_;
    normalize();
    return *this;
}

QuadExpr& QuadExpr::operator*=(const QuadExpr& o) {
    if (rad_ != 0 && o.rad_ != 0 && rad_ != o.rad_)
        throw usage_error("radicand mismatch: sqrt(" + std::to_string(rad_) + ") vs sqrt(" +
                          std::to_string(o.rad_) + ")");
    long rad = rad_ != 0 ? rad_ : o.rad_;
    // (a + b*sqrt(r)) (a' + b'*sqrt(r)) = (aa' + bb'r) + (ab' + a'b)*sqrt(r)
    mpq_class new_rat = rat_ * o.rat_ + surd_ * o.surd_ * rad;
    mpq_class new_surd = rat_ * o.surd_ + o.rat_ * surd_;
    rat_ = std::move(new_rat);
    surd_ = std::move(new_surd);
    rad_ = rad;
    normalize();
    return *this;
}

int QuadExpr::sign() const {
    int sa = sgn(rat_);
    int sb = sgn(surd_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite component signs: compare rat^2 against surd^2 * rad. For a
    // square radicand s^2 this still matches the rational value, since
    // rat^2 - surd^2 s^2 = (rat - surd*s)(rat + surd*s) and rat - surd*s has
    // the sign of rat here.
    mpq_class lhs = rat_ * rat_;
    mpq_class rhs = surd_ * surd_ * rad_;
    int c = cmp(lhs, rhs);
    return sa * c;
}

double QuadExpr::approx() const {
    double v = rat_.get_d();
    if (rad_ != 0) v += surd_.get_d() * std::sqrt(static_cast<double>(rad_));
    return v;
}

mpz_class QuadExpr::floor_z(int* adjust_steps) const {
    mpz_class m;
    double est = approx();
    if (std::isfinite(est) && std::abs(est) < 9.0e15) {
        m = static_cast<long>(std::floor(est));
    } else {
        // Exact seed via integer square root: x = (P + Q*sqrt(rad)) / den.
        mpz_class den = rat_.get_den() * surd_.get_den();
        mpz_class p = rat_.get_num() * surd_.get_den();
        mpz_class q = surd_.get_num() * rat_.get_den();
        mpz_class w = q * q * rad_;
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), w.get_mpz_t());
        mpz_class num = p + (sgn(q) >= 0 ? s : -(s + 1));
        mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    int steps = 0;
    while ((*this - QuadExpr(mpq_class(m))).sign() < 0) {
        --m;
        ++steps;
    }
    while ((*this - QuadExpr(mpq_class(m + 1))).sign() >= 0) {
        ++m;
        ++steps;
    }
    if (adjust_steps) *adjust_steps = steps;
    return m;
}

long long QuadExpr::floor64(int* adjust_steps) const {
    mpz_class m = floor_z(adjust_steps);
    if (!m.fits_slong_p()) throw usage_error("floor out of 64-bit range");
    return m.get_si();
}

QuadExpr QuadExpr::frac() const {
    return *this - QuadExpr(mpq_class(floor_z()));
}

QuadExpr QuadExpr::inverse() const {
    if (sign() == 0) throw usage_error("division by zero");
    if (rad_ == 0) {
        mpq_class inv = 1 / rat_;
        return QuadExpr(inv);
    }
    long s = 0;
    if (is_square(rad_, &s)) {
        mpq_class value = rat_ + surd_ * s;
        mpq_class inv = 1 / value;
        return QuadExpr(inv);
    }
    // 1/(a + b*sqrt(r)) = (a - b*sqrt(r)) / (a^2 - b^2 r); the norm is nonzero
    // for irrational sqrt(r).
    mpq_class norm = rat_ * rat_ - surd_ * surd_ * rad_;
    return QuadExpr(rat_ / norm, -surd_ / norm, rad_);
}

std::string QuadExpr::str() const {
    auto rat_str = [](const mpq_class& q) {
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    if (rad_ == 0) return rat_str(rat_);
    std::string out = rat_str(rat_);
    if (sgn(surd_) < 0)
        out += " - " + rat_str(-surd_);
    else
        out += " + " + rat_str(surd_);
    out += "*sqrt(" + std::to_string(rad_) + ")";
    return out;
}

std::string QuadExpr::decimal(int places) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    QuadExpr scaled = *this * QuadExpr(mpq_class(scale));
    scaled += QuadExpr(mpq_class(1, 2));
    mpz_class n = scaled.floor_z();
    bool neg = n < 0;
    mpz_class mag = neg ? mpz_class(-n) : n;
    std::string digits = mag.get_str();
    if (static_cast<int>(digits.size()) <= places)
        digits.insert(0, static_cast<size_t>(places + 1) - digits.size(), '0');
    digits.insert(digits.size() - static_cast<size_t>(places), ".");
    return neg ? "-" + digits : digits;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool done() {
        skip_ws();
        return i == s.size();
    }
    mpz_class integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) throw usage_error("expected integer at position " + std::to_string(start) +
                                           " in \"" + s + "\"");
        return mpz_class(s.substr(start, i - start));
    }
};

}  // namespace

QuadExpr QuadExpr::parse(const std::string& text, long expect_rad) {
    Cursor cur{text};
    QuadExpr acc;
    bool first = true;
    while (!cur.done()) {
        int term_sign = 1;
        if (!first) {
            if (cur.eat('+')) {
                term_sign = 1;
            } else if (cur.eat('-')) {
                term_sign = -1;
            } else {
                throw usage_error("expected '+' or '-' in \"" + text + "\"");
            }
        }
        cur.skip_ws();
        mpq_class coeff;
        bool have_coeff = false;
        if (cur.i < text.size() && text[cur.i] != 's') {
            mpz_class num = cur.integer();
            mpz_class den = 1;
            if (cur.eat('/')) den = cur.integer();
            if (den == 0) throw usage_error("zero denominator in \"" + text + "\"");
            coeff = mpq_class(num) / mpq_class(den);
            have_coeff = true;
        }
        bool have_sqrt = false;
        long rad = 0;
        size_t save = cur.i;
        if (!have_coeff || cur.eat('*')) {
            cur.skip_ws();
            if (text.compare(cur.i, 5, "sqrt(") == 0) {
                cur.i += 5;
                mpz_class r = cur.integer();
                if (!cur.eat(')')) throw usage_error("missing ')' in \"" + text + "\"");
                if (!r.fits_slong_p() || r <= 0)
                    throw usage_error("bad radicand in \"" + text + "\"");
                rad = r.get_si();
                have_sqrt = true;
            } else if (!have_coeff) {
                throw usage_error("expected term in \"" + text + "\"");
            } else {
                cur.i = save;  // bare rational followed by +/-
            }
        }
        if (!have_coeff) coeff = 1;
        coeff *= term_sign;
        if (have_sqrt)
            acc += QuadExpr(0, coeff, rad);
        else
            acc += QuadExpr(coeff);
        first = false;
    }
    if (first) throw usage_error("empty expression");
    if (expect_rad != 0 && acc.radicand() != 0 && acc.radicand() != expect_rad)
        throw usage_error("expression radicand " + std::to_string(acc.radicand()) +
                          " does not match sqrt(" + std::to_string(expect_rad) + ")");
    return acc;
}

}  // namespace agolomb
