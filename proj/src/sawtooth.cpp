#include "agolomb/sawtooth.hpp"

#include <cmath>
#include <ostream>

namespace agolomb {

namespace {

long isqrt_long(long n) {
    long s = static_cast<long>(std::lround(std::sqrt(static_cast<double>(n))));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

void require_nonsquare(long r) {
    if (r < 2) throw usage_error("r must be >= 2");
    long s = isqrt_long(r);
    if (s * s == r) throw usage_error("r = " + std::to_string(r) + " is a perfect square");
}

QuadExpr ceil_quad(const QuadExpr& x) {
    return QuadExpr(mpq_class(-((-x).floor_z())));
}

}  // namespace

QuadExpr phi(long r, long long n) {
    if (r < 2) throw usage_error("r must be >= 2");
    if (n < r) throw usage_error("phi defined for n >= r");
    QuadExpr c = QuadExpr::inv_sqrt(r);
    QuadExpr half_root(0, mpq_class(1, 2), r);
    QuadExpr sum;
    for (long j = 0; j < r; ++j) sum += (c * QuadExpr(n - j) + half_root).frac();
    return sum;
}

long long count_N(long r) {
    require_nonsquare(r);
    QuadExpr c = QuadExpr::inv_sqrt(r);
    long s = isqrt_long(r);
    QuadExpr beta(-s, 1, r);
    long long count = 0;
    QuadExpr jc;
    for (long j = 1; j <= r - 1; ++j) {
        jc += c;
        if (jc.frac() < beta) ++count;
    }
    return count;
}

SawtoothProfile profile(long r) {
    require_nonsquare(r);
    SawtoothProfile pr;
    pr.r = r;
    pr.s = isqrt_long(r);
    pr.t = r - pr.s * pr.s;
    pr.beta = QuadExpr(-pr.s, 1, r);
    pr.u = (QuadExpr(pr.s) * pr.beta).floor64();

    QuadExpr c = QuadExpr::inv_sqrt(r);
    // Walk the jump points: Delta_k = {kc} + {(r-k)c} - 1, P(j) = sum Delta_k.
    // Local extrema of Phi are M(j) = r - Sigma + P(j) and M(j) - 1, with
    // P(0) = 0 covering the wrap-around maximum.
    std::vector<QuadExpr> fracs(static_cast<size_t>(r), QuadExpr());
    QuadExpr jc;
    QuadExpr sigma;
    for (long j = 1; j <= r - 1; ++j) {
        jc += c;
        fracs[static_cast<size_t>(j)] = jc.frac();
        sigma += fracs[static_cast<size_t>(j)];
    }
    long long n_count = 0;
    QuadExpr p;      // running P(j)
    QuadExpr p_max;  // P(0) = 0 participates in both
    QuadExpr p_min;
    for (long k = 1; k <= r - 1; ++k) {
        if (fracs[static_cast<size_t>(k)] < pr.beta) ++n_count;
        p += fracs[static_cast<size_t>(k)] + fracs[static_cast<size_t>(r - k)] - QuadExpr(1);
        if (p > p_max) p_max = p;
        if (p < p_min) p_min = p;
    }
    pr.N = n_count;
    pr.bound = QuadExpr(r) * pr.beta + QuadExpr(pr.s - 1);
    pr.margin = pr.bound - QuadExpr(pr.N);
    pr.margin_positive = pr.margin.sign() > 0;
    pr.sup_phi = QuadExpr(r) - sigma + p_max;
    pr.inf_phi = QuadExpr(r - 1) - sigma + p_min;
    if (pr.sup_phi + pr.inf_phi != QuadExpr(r))
        throw internal_error("sup+inf != r at r=" + std::to_string(r));
    return pr;
}

VerifyReport parity_identities(long r) {
    require_nonsquare(r);
    VerifyReport rep;
    SawtoothProfile pr = profile(r);
    QuadExpr c = QuadExpr::inv_sqrt(r);

    // floor(s*beta) = floor((t-1)/2)
    ++rep.checked;
    if (pr.u != (pr.t - 1) / 2) {
        rep.fail(r, "floor(s*beta) != floor((t-1)/2)");
        return rep;
    }

    // N(r) = (s+1)(t-1) - 2*sum floor(k*beta)
    long long sum_kbeta = 0;
    for (long k = 1; k <= pr.s; ++k) sum_kbeta += (QuadExpr(k) * pr.beta).floor64();
    ++rep.checked;
    if (pr.N != (pr.s + 1) * static_cast<long long>(pr.t - 1) - 2 * sum_kbeta) {
        rep.fail(r, "N(r) formula violated");
        return rep;
    }

    // sum floor(k*beta) = sum_{m<=u} (s+1-ceil(m/beta))
    QuadExpr inv_beta = pr.beta.inverse();
    long long swapped = 0;
    for (long long m = 1; m <= pr.u; ++m)
        swapped += pr.s + 1 - ceil_quad(QuadExpr(m) * inv_beta).floor64();
    ++rep.checked;
    if (sum_kbeta != swapped) {
        rep.fail(r, "floor swap identity violated");
        return rep;
    }

    // 2*sum floor(jc) = (r-1)(s-1) + N(r)
    long long sum_jc = 0;
    QuadExpr jc;
    for (long j = 1; j <= r - 1; ++j) {
        jc += c;
        sum_jc += jc.floor64();
    }
    ++rep.checked;
    if (2 * sum_jc != static_cast<long long>(r - 1) * (pr.s - 1) + pr.N) {
        rep.fail(r, "pairing identity violated");
        return rep;
    }
    rep.detail = "N=" + std::to_string(pr.N);
    return rep;
}

SquareClosedForm square_closed_form(long s, long long n) {
    if (s < 2) throw usage_error("s must be >= 2");
    if (n < static_cast<long long>(s) * s) throw usage_error("closed form valid for n >= s^2");
    SquareClosedForm out;
    if (s % 2 == 1) {
        out.S_n = s * n - static_cast<long long>(s) * (s - 1) / 2;
        out.a_of_S = n;
    } else {
        out.S_n = s * n - static_cast<long long>(s) * (s - 2) / 2;
        out.a_of_S = n + 1;
    }
    return out;
}

void write_counting_table_csv(std::ostream& out, long rmax) {
    out << "r,s,beta,N,bound,margin,sup_phi,inf_phi,beta_exact,margin_exact,sup_exact,inf_exact\n";
    for (long r = 2; r <= rmax; ++r) {
        long s = isqrt_long(r);
        if (s * s == r) continue;
        SawtoothProfile pr = profile(r);
        out << r << ',' << pr.s << ',' << pr.beta.decimal(4) << ',' << pr.N << ','
            << pr.bound.decimal(4) << ',' << pr.margin.decimal(4) << ',' << pr.sup_phi.decimal(4)
            << ',' << pr.inf_phi.decimal(4) << ',' << pr.beta.str() << ',' << pr.margin.str()
            << ',' << pr.sup_phi.str() << ',' << pr.inf_phi.str() << '\n';
    }
}

}  // namespace agolomb
