#include "agolomb/ostrowski.hpp"

#include <functional>
#include <ostream>

#include "agolomb/beatty.hpp"

namespace agolomb {

ConvergentTable continued_fraction(long r, int depth) {
    if (depth < 1) throw usage_error("depth must be >= 1");
    {
        long s = 1;
        while ((s + 1) * (s + 1) <= r) ++s;
        if (s * s == r) throw usage_error("continued fraction wants non-square r");
    }
    ConvergentTable t;
    t.r = r;
    t.a = {0};
    t.p = {0};
    t.q = {1};
    QuadExpr x = QuadExpr::inv_sqrt(r);
    long long p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    for (int k = 1; k <= depth; ++k) {
        long long ak = x.floor64();
        x = (x - QuadExpr(ak)).inverse();
        t.a.push_back(ak);
        long long pk = ak * t.p.back() + p_prev;
        long long qk = ak * t.q.back() + q_prev;
        p_prev = t.p.back();
        q_prev = t.q.back();
        t.p.push_back(pk);
        t.q.push_back(qk);
    }
    return t;
}

OstrowskiDigits to_ostrowski(long long n, const ConvergentTable& table, DigitConvention conv) {
    if (n < 1) throw usage_error("representation defined for n >= 1");
    OstrowskiDigits out;
    out.n = n;
    int top = table.depth();
    while (top > 1 && table.q[static_cast<size_t>(top)] > n) --top;
    if (table.q[static_cast<size_t>(top)] > n || top == table.depth())
        throw usage_error("convergent table too shallow for n=" + std::to_string(n));
    out.e.assign(static_cast<size_t>(top) + 1, 0);
    long long rem = n;
    for (int k = top; k >= 1; --k) {
        long long qk = table.q[static_cast<size_t>(k)];
        int digit = static_cast<int>(rem / qk);
        // rem < q_{k+1} = 2 q_k + q_{k-1} keeps greedy digits at most 2, and
        // a digit 2 leaves rem < q_{k-1}, so the adjacency constraint holds.
        if (digit > 2 || (k + 1 <= top && out.e[static_cast<size_t>(k + 1)] == 2 && digit != 0))
            throw internal_error("digit constraint broken at n=" + std::to_string(n));
        if (k == 1 && conv == DigitConvention::PaperLiteral && digit > 1) {
            out.feasible = false;
            return out;
        }
        out.e[static_cast<size_t>(k)] = digit;
        rem -= static_cast<long long>(digit) * qk;
    }
    if (rem != 0) {
        out.feasible = false;
        return out;
    }
    out.feasible = true;
    return out;
}

long long digits_value(const OstrowskiDigits& d, const ConvergentTable& table) {
    long long v = 0;
    for (size_t k = 1; k < d.e.size(); ++k) v += static_cast<long long>(d.e[k]) * table.q[k];
    return v;
}

long long digits_swap_value(const OstrowskiDigits& d, const ConvergentTable& table) {
    long long v = 0;
    for (size_t k = 1; k < d.e.size(); ++k) v += static_cast<long long>(d.e[k]) * table.p[k];
    return v;
}

namespace {

int needed_depth(long long /*n_max*/) {
    // q_k grows like (1+sqrt(2))^k; 40 covers anything we scan and stays
    // far from 64-bit overflow (q_40 ~ 2e15).
    return 40;
}

DigitSwapReport run_swap(long long n_max, DigitConvention conv, const ConvergentTable& table,
                         const std::vector<long long>& beatty) {
    DigitSwapReport rep;
    rep.convention = conv;
    for (long long n = 1; n <= n_max; ++n) {
        OstrowskiDigits d = to_ostrowski(n, table, conv);
        if (!d.feasible) {
            rep.pass = false;
            rep.mismatches.clear();
            rep.mismatches.push_back(n);
            return rep;  // representability failure: convention unusable
        }
        ++rep.checked;
        if (digits_value(d, table) != n)
            throw internal_error("digit round-trip failed at n=" + std::to_string(n));
        if (digits_swap_value(d, table) == beatty[static_cast<size_t>(n)]) {
            ++rep.matches;
        } else if (rep.mismatches.size() < 16) {
            rep.mismatches.push_back(n);
        }
    }
    rep.pass = rep.matches == rep.checked;
    return rep;
}

}  // namespace

DigitSwapReport digit_swap_check(long long n_max) {
    ConvergentTable table = continued_fraction(2, needed_depth(n_max));
    std::vector<long long> beatty = materialize(BeattyParams::canonical(2), n_max);
    DigitSwapReport literal = run_swap(n_max, DigitConvention::PaperLiteral, table, beatty);
    if (literal.checked == n_max) return literal;
    return run_swap(n_max, DigitConvention::Standard, table, beatty);
}

void write_digit_swap_csv(std::ostream& out, long long n_max) {
    ConvergentTable table = continued_fraction(2, needed_depth(n_max));
    std::vector<long long> beatty = materialize(BeattyParams::canonical(2), n_max);
    out << "n,digits,sum_e_p,a_B,match\n";
    for (long long n = 1; n <= n_max; ++n) {
        OstrowskiDigits d = to_ostrowski(n, table, DigitConvention::Standard);
        long long swapped = digits_swap_value(d, table);
        out << n << ',';
        for (size_t k = d.e.size(); k-- > 1;) out << d.e[k];
        out << ',' << swapped << ',' << beatty[static_cast<size_t>(n)] << ','
            << (swapped == beatty[static_cast<size_t>(n)] ? 1 : 0) << '\n';
    }
}

VerifyReport uniqueness_check(long long n_max) {
    VerifyReport rep;
    ConvergentTable table = continued_fraction(2, needed_depth(n_max));
    int top = 1;
    while (table.q[static_cast<size_t>(top + 1)] <= n_max) ++top;
    std::vector<long long> hits(static_cast<size_t>(n_max) + 1, 0);
    // Depth-first over legal digit strings (e_k <= 2, e_k = 2 => e_{k-1} = 0).
    std::function<void(int, long long, bool)> walk = [&](int k, long long value, bool prev_was_2) {
        if (k == 0) {
            if (value >= 1 && value <= n_max) ++hits[static_cast<size_t>(value)];
            return;
        }
        long long qk = table.q[static_cast<size_t>(k)];
        for (int digit = 0; digit <= (prev_was_2 ? 0 : 2); ++digit) {
            long long v = value + static_cast<long long>(digit) * qk;
            if (v > n_max) break;
            walk(k - 1, v, digit == 2);
        }
    };
    walk(top, 0, false);
    for (long long n = 1; n <= n_max; ++n) {
        ++rep.checked;
        if (hits[static_cast<size_t>(n)] != 1) {
            rep.fail(n, std::to_string(hits[static_cast<size_t>(n)]) + " legal digit strings for n");
            return rep;
        }
    }
    return rep;
}

PellReport pell_constants() {
    PellReport rep;
    ConvergentTable t = continued_fraction(2, 10);
    for (int k = 1; k <= 8; ++k) rep.q_prefix.push_back(t.q[static_cast<size_t>(k)]);
    rep.gap_identities = t.q[2] == 3 && t.q[3] - t.q[2] == 4 && t.q[3] == 7;
    QuadExpr silver(1, 1, 2);
    rep.silver_root = silver * silver - QuadExpr(2) * silver - QuadExpr(1) == QuadExpr(0);
    QuadExpr c = QuadExpr::inv_sqrt(2);
    for (long long m = 1; m <= 10; ++m) rep.wall.push_back((c * QuadExpr(m)).floor64());
    rep.pass = rep.gap_identities && rep.silver_root;
    return rep;
}

}  // namespace agolomb
