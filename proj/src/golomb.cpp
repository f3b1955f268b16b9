#include "agolomb/golomb.hpp"

#include <algorithm>
#include <thread>

namespace agolomb {

GolombState::GolombState(long r_) : r(r_) {
    if (r < 2) throw usage_error("window size must be >= 2");
    prefix = {0, 1};  // a(1) = 1
}

namespace {

// Sum of the r-1 values behind position n (a(n-1) ... a(n-r+1), zero padded).
long long trailing_sum(const GolombState& st, long long n) {
    long long s = 0;
    for (long j = 1; j < st.r; ++j) s += st.at(n - j);
    return s;
}

// Whether setting a(n) = v is consistent with the constraint map, and the
// induced address S it would constrain to n.
bool feasible(const GolombState& st, long long n, long long v, long long rest, long long* s_out) {
    long long s = v + rest;
    *s_out = s;
    if (s < n) return st.at(s) == n;  // materialised; a(s) <= s < n makes this dead
    if (s == n) return v == n;
    auto it = st.constraints.find(s);
    if (it != st.constraints.end()) return it->second == n;
    // Inserting (s -> n) must keep positions and values order-isomorphic.
    // Every recorded value is < n, so s has to exceed every recorded position.
    if (!st.constraints.empty() && s <= st.constraints.rbegin()->first) return false;
    return true;
}

}  // namespace

void greedy_extend(GolombState& st, long long upto) {
    if (upto < st.size()) throw usage_error("cannot extend to a shorter prefix");
    if (st.size() == 1 && st.constraints.empty()) {
        // a(S(1)) = 1 with S(1) = a(1) = 1, already materialised and true.
        st.constraints.emplace(1, 1);
    }
    for (long long n = st.size() + 1; n <= upto; ++n) {
        long long prev = st.at(n - 1);
        long long rest = trailing_sum(st, n);
        long long v;
        long long s = 0;
        auto forced = st.constraints.find(n);
        if (forced != st.constraints.end()) {
            v = forced->second;
            if (v < prev)
                throw construction_error(n, n, v,
                                         "forced value " + std::to_string(v) + " at n=" +
                                             std::to_string(n) + " breaks monotonicity");
            if (!feasible(st, n, v, rest, &s))
                throw construction_error(n, s, v,
                                         "no consistent address for forced a(" +
                                             std::to_string(n) + ")=" + std::to_string(v));
        } else {
            v = prev;
            while (v <= n + 1 && !feasible(st, n, v, rest, &s)) ++v;
            if (v > n + 1)
                throw construction_error(n, s, -1,
                                         "no feasible value at n=" + std::to_string(n) +
                                             " (greedy would need backtracking)");
        }
        st.prefix.push_back(v);
        if (s > st.size()) st.constraints.emplace(s, n);
    }
}

long long window_sum(const std::vector<long long>& a, long r, long long n) {
    if (n < 1) throw usage_error("window sum needs n >= 1");
    if (n >= static_cast<long long>(a.size())) throw usage_error("sequence too short for window at n");
    long long s = 0;
    for (long j = 0; j < r; ++j) {
        long long i = n - j;
        if (i >= 1) s += a[static_cast<size_t>(i)];
    }
    return s;
}

VerifyReport verify_strong_prefix(const std::vector<long long>& a, long r, long long n_lo,
                                  long long n_hi, int expected_offset) {
    VerifyReport rep;
    long long len = static_cast<long long>(a.size()) - 1;
    long long window = n_lo >= 1 ? window_sum(a, r, n_lo) : 0;
    for (long long n = n_lo; n <= n_hi; ++n) {
        if (n > n_lo) {
            window += a[static_cast<size_t>(n)];
            if (n - r >= 1) window -= a[static_cast<size_t>(n - r)];
        }
        if (window > len)
            throw usage_error("sequence too short: S(" + std::to_string(n) + ")=" +
                              std::to_string(window) + " beyond length " + std::to_string(len));
        ++rep.checked;
        long long got = a[static_cast<size_t>(window)];
        if (got != n + expected_offset) {
            rep.fail(n, "a(S(n))=" + std::to_string(got) + " with S(n)=" + std::to_string(window) +
                            ", expected " + std::to_string(n + expected_offset));
            return rep;
        }
    }
    return rep;
}

VerifyReport verify_strong(const BeattyParams& p, long long n_lo, long long n_hi,
                           int expected_offset, int threads) {
    // S(n_hi) does not exceed r * a(n_hi); materialise to that and verify.
    long long s_max = 0;
    {
        std::vector<long long> probe(1, 0);
        BeattyOrbit orbit(p, std::max<long long>(1, n_hi - p.r + 1));
        long long sum = 0;
        for (long long n = orbit.n(); n <= n_hi; ++n) {
            sum += orbit.a();
            if (n < n_hi) orbit.step();
        }
        s_max = sum;
    }
    std::vector<long long> a = materialize(p, std::max(s_max, n_hi), threads);
    if (threads <= 1 || n_hi - n_lo < 4096) return verify_strong_prefix(a, p.r, n_lo, n_hi, expected_offset);
    std::vector<VerifyReport> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    long long chunk = (n_hi - n_lo) / threads + 1;
    for (int t = 0; t < threads; ++t) {
        long long lo = n_lo + t * chunk;
        long long hi = std::min(n_hi, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back([&, t, lo, hi] {
            parts[static_cast<size_t>(t)] = verify_strong_prefix(a, p.r, lo, hi, expected_offset);
        });
    }
    for (auto& th : pool) th.join();
    VerifyReport rep;
    for (auto& part : parts) rep.merge(part);
    return rep;
}

VerifyReport dyadic_check(const std::vector<long long>& a) {
    VerifyReport rep;
    long long len = static_cast<long long>(a.size()) - 1;
    if (len < 3) throw usage_error("dyadic check needs a prefix of length >= 3");
    for (long long m = 2; m <= len; ++m) {
        long long k = m / 2;
        if (k + 1 > len) break;
        long long lhs = a[static_cast<size_t>(m)];
        long long rhs = a[static_cast<size_t>(k)] + a[static_cast<size_t>(k + 1)];
        if (m % 2 == 0) {
            ++rep.checked;
            if (lhs != rhs - 1) {
                rep.fail(m, "a(2n) = " + std::to_string(lhs) + " but a(n)+a(n+1)-1 = " +
                                 std::to_string(rhs - 1) + " at n=" + std::to_string(k));
                return rep;
            }
        } else if (k >= 2) {
            ++rep.checked;
            if (lhs != rhs) {
                rep.fail(m, "a(2n+1) = " + std::to_string(lhs) + " but a(n)+a(n+1) = " +
                                 std::to_string(rhs) + " at n=" + std::to_string(k));
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace agolomb
