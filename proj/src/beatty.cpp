#include "agolomb/beatty.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

namespace agolomb {

BeattyParams::BeattyParams(long r_, QuadExpr d_) : r(r_), d(std::move(d_)), c(QuadExpr::inv_sqrt(r_)) {
    if (r < 2) throw usage_error("Beatty order must be >= 2");
    if (d.radicand() != 0 && d.radicand() != r)
        throw usage_error("shift lives in the wrong field: sqrt(" + std::to_string(d.radicand()) + ")");
}

BeattyParams BeattyParams::canonical(long r_) {
    return BeattyParams(r_, QuadExpr(0, mpq_class(1, 2), r_));
}

long long BeattyParams::eval(long long n) const {
    if (n < 1) return 0;
    QuadExpr x = c * QuadExpr(n) + d;
    return x.floor64();
}

QuadExpr BeattyParams::theta(long long n) const {
    QuadExpr x = c * QuadExpr(n) + d;
    return x.frac();
}

BeattyOrbit::BeattyOrbit(const BeattyParams& p, long long start_n)
    : p_(p), n_(start_n), a_(p.eval(start_n)), theta_(p.theta(start_n)) {
    if (start_n < 1) throw usage_error("orbit starts at n >= 1");
}

void BeattyOrbit::step() {
    // a(n+1) - a(n) = floor(theta_n + c), which is 1 exactly on wrap.
    theta_ += p_.c;
    if ((theta_ - QuadExpr(1)).sign() >= 0) {
        theta_ -= QuadExpr(1);
        ++a_;
    }
    ++n_;
}

void BeattyOrbit::advance_to(long long target) {
    if (target < n_) throw usage_error("orbit cannot move backwards");
    while (n_ < target) step();
}

std::vector<long long> materialize(const BeattyParams& p, long long n_hi, int threads) {
    std::vector<long long> a(static_cast<size_t>(n_hi) + 1, 0);
    if (n_hi < 1) return a;
    auto fill = [&](long long lo, long long hi) {
        BeattyOrbit orbit(p, lo);
        for (long long n = lo; n <= hi; ++n) {
            a[static_cast<size_t>(n)] = orbit.a();
            orbit.step();
        }
    };
    if (threads <= 1 || n_hi < 4096) {
        fill(1, n_hi);
        return a;
    }
    std::vector<std::thread> pool;
    long long chunk = (n_hi + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        long long lo = 1 + t * chunk;
        long long hi = std::min(n_hi, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back(fill, lo, hi);
    }
    for (auto& th : pool) th.join();
    return a;
}

std::vector<uint8_t> difference_word(const BeattyParams& p, long long len) {
    if (len < 1) throw usage_error("difference word needs len >= 1");
    std::vector<uint8_t> w(static_cast<size_t>(len));
    BeattyOrbit orbit(p, 1);
    long long prev = orbit.a();
    for (long long n = 1; n <= len; ++n) {
        orbit.step();
        long long cur = orbit.a();
        long long diff = cur - prev;
        if (diff != 0 && diff != 1)
            throw internal_error("difference word letter " + std::to_string(diff) + " at n=" +
                                 std::to_string(n));
        w[static_cast<size_t>(n - 1)] = static_cast<uint8_t>(diff);
        prev = cur;
    }
    return w;
}

long long multiplicity(const BeattyParams& p, long long value) {
    if (value < 1) throw usage_error("multiplicity defined for attained values >= 1");
    // a(n) = value  <=>  n in [ (value-d)*sqrt(r), (value+1-d)*sqrt(r) )
    QuadExpr root = QuadExpr::sqrt_of(p.r);
    auto ceil_of = [](const QuadExpr& x) { return -((-x).floor_z()); };
    mpz_class lo = ceil_of((QuadExpr(value) - p.d) * root);
    mpz_class hi = ceil_of((QuadExpr(value + 1) - p.d) * root);
    mpz_class count = hi - lo;
    if (count <= 0) throw usage_error("value " + std::to_string(value) + " is not attained");
    return count.get_si();
}

VerifyReport balance_check(const std::vector<uint8_t>& w, int max_len) {
    VerifyReport rep;
    long long n = static_cast<long long>(w.size());
    for (int ell = 1; ell <= max_len && ell <= n; ++ell) {
        long long weight = 0;
        for (int i = 0; i < ell; ++i) weight += w[static_cast<size_t>(i)];
        long long wmin = weight, wmax = weight;
        for (long long i = ell; i < n; ++i) {
            weight += w[static_cast<size_t>(i)] - w[static_cast<size_t>(i - ell)];
            wmin = std::min(wmin, weight);
            wmax = std::max(wmax, weight);
        }
        ++rep.checked;
        if (wmax - wmin > 1) {
            rep.fail(ell, "factor length " + std::to_string(ell) + " weights span " +
                              std::to_string(wmax - wmin));
            return rep;
        }
    }
    return rep;
}

std::vector<uint8_t> morphism_word(long long min_len) {
    // sigma: 0 -> 1, 1 -> 011. Lengths of sigma^k(0) obey the Pell recurrence
    // x_{k+1} = 2 x_k + x_{k-1}.
    std::vector<uint8_t> cur{0};
    while (static_cast<long long>(cur.size()) < min_len) {
        std::vector<uint8_t> next;
        next.reserve(cur.size() * 3);
        for (uint8_t b : cur) {
            if (b == 0) {
                next.push_back(1);
            } else {
                next.push_back(0);
                next.push_back(1);
                next.push_back(1);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

namespace {

std::unordered_set<std::string> factor_set(const std::vector<uint8_t>& w, int max_len) {
    std::unordered_set<std::string> out;
    std::string buf;
    for (size_t i = 0; i < w.size(); ++i) {
        buf.clear();
        for (size_t j = i; j < w.size() && j < i + static_cast<size_t>(max_len); ++j) {
            buf.push_back(static_cast<char>('0' + w[j]));
            out.insert(buf);
        }
    }
    return out;
}

}  // namespace

VerifyReport sturmian_morphism_check(long long len, int max_factor_len) {
    VerifyReport rep;
    std::vector<uint8_t> wb = difference_word(BeattyParams::canonical(2), len);
    std::vector<uint8_t> sw = morphism_word(len);
    auto fw = factor_set(wb, max_factor_len);
    auto fs = factor_set(sw, max_factor_len);
    rep.checked = static_cast<long long>(fw.size());
    for (const auto& f : fw)
        if (!fs.count(f)) {
            rep.fail(static_cast<long long>(f.size()), "factor " + f + " of w_B missing from morphism word");
            return rep;
        }
    for (const auto& f : fs)
        if (!fw.count(f)) {
            rep.fail(static_cast<long long>(f.size()), "factor " + f + " of morphism word missing from w_B");
            return rep;
        }
    // Alignment diagnostic: first occurrence of the w_B prefix inside the
    // substitution word.
    int probe = static_cast<int>(std::min<long long>(len, 64));
    std::string needle(wb.begin(), wb.begin() + probe);
    std::string hay(sw.begin(), sw.end());
    for (auto& ch : needle) ch = static_cast<char>('0' + ch);
    for (auto& ch : hay) ch = static_cast<char>('0' + ch);
    size_t pos = hay.find(needle);
    rep.detail = "factor sets agree to length " + std::to_string(max_factor_len) +
                 "; w_B prefix occurs at offset " +
                 (pos == std::string::npos ? std::string("none") : std::to_string(pos));
    return rep;
}

AffineSolution continuous_solution(long r) {
    if (r < 2) throw usage_error("order must be >= 2");
    QuadExpr c = QuadExpr::inv_sqrt(r);
    QuadExpr d(mpq_class(-1, 2), mpq_class(1, 2), r);  // (sqrt(r)-1)/2
    QuadExpr root = QuadExpr::sqrt_of(r);
    bool ok = (QuadExpr(r) * c * c == QuadExpr(1)) &&
              (d * (root + QuadExpr(1)) == QuadExpr(mpq_class(r - 1, 2)));
    return AffineSolution{c, d, ok};
}

}  // namespace agolomb
