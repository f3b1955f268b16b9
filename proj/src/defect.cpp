#include "agolomb/defect.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>
#include <unordered_set>

#include "agolomb/beatty.hpp"
#include "agolomb/nested.hpp"

namespace agolomb {

namespace {

QuadExpr right_endpoint_shift(long r) { return NestedContext::right_endpoint(r); }

struct ChunkResult {
    std::vector<long long> elements;
    VerifyReport equivalence;
};

// Scan [n_lo, n_hi] for delta(n) = a(f(n)) - n = 1. For r=2 the rotation
// return-time criterion is evaluated independently per n.
ChunkResult scan_chunk(const BeattyParams& p, long long n_lo, long long n_hi) {
    ChunkResult out;
    long r = p.r;
    const QuadExpr& c = p.c;
    QuadExpr one_minus_c = QuadExpr(1) - c;
    QuadExpr half(mpq_class(1, 2));

    BeattyOrbit orbit(p, n_lo - r + 1);
    std::vector<long long> ring;
    long long f = 0;
    for (long j = 0; j < r; ++j) {
        ring.push_back(orbit.a());
        f += orbit.a();
        if (j + 1 < r) orbit.step();
    }
    QuadExpr theta_prev = p.theta(n_lo - 1);
    BeattyOrbit cursor(p, std::max<long long>(1, f));

    size_t ring_pos = 0;
    for (long long n = n_lo; n <= n_hi; ++n) {
        cursor.advance_to(f);
        long long delta = cursor.a() - n;
        if (delta != 0 && delta != 1)
            throw internal_error("delta(n) = " + std::to_string(delta) + " at n=" + std::to_string(n));
        bool is_defect = delta == 1;
        if (is_defect) out.elements.push_back(n);

        if (r == 2) {
            ++out.equivalence.checked;
            // Independent side: theta_{n-1} in [1-c, 1/2], endpoints never hit.
            int lo_sign = (theta_prev - one_minus_c).sign();
            int hi_sign = (theta_prev - half).sign();
            if (lo_sign == 0 || hi_sign == 0) {
                out.equivalence.fail(n, "theta_{n-1} hit an interval endpoint exactly");
            } else if ((lo_sign > 0 && hi_sign < 0) != is_defect) {
                out.equivalence.fail(n, is_defect ? "defect with theta_{n-1} outside [1-c,1/2]"
                                                  : "non-defect with theta_{n-1} inside [1-c,1/2]");
            } else if ((orbit.theta() - c).sign() == 0) {
                out.equivalence.fail(n, "theta_n = c attained");
            } else if (is_defect) {
                // Absorption: defects are repeats and the outer application
                // swallows the overshoot.
                BeattyOrbit probe = orbit;
                probe.step();
                long long a_next = probe.a();
                if (a_next != orbit.a())
                    out.equivalence.fail(n, "defect index is not a repeat");
                else if (p.eval(cursor.a()) != orbit.a())
                    out.equivalence.fail(n, "a(a(f(n))) != a(n) at a defect");
            }
        }

        // advance
        theta_prev = orbit.theta();
        orbit.step();
        f += orbit.a() - ring[ring_pos];
        ring[ring_pos] = orbit.a();
        ring_pos = (ring_pos + 1) % ring.size();
    }
    return out;
}

}  // namespace

DefectSet compute_defects(long r, long long cap, int threads) {
    if (r != 2 && r != 3) throw usage_error("defect sets are computed for r in {2,3}");
    if (cap < 10) throw usage_error("cap too small");
    DefectSet ds;
    ds.r = r;
    ds.d = right_endpoint_shift(r);
    ds.cap = cap;
    BeattyParams p(r, ds.d);

    long long n_lo = r;
    if (threads <= 1 || cap - n_lo < 4096) {
        ChunkResult res = scan_chunk(p, n_lo, cap);
        ds.elements = std::move(res.elements);
        ds.equivalence = res.equivalence;
        return ds;
    }
    std::vector<ChunkResult> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    long long chunk = (cap - n_lo) / threads + 1;
    for (int t = 0; t < threads; ++t) {
        long long lo = n_lo + t * chunk;
        long long hi = std::min(cap, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back([&parts, &p, t, lo, hi] {
            parts[static_cast<size_t>(t)] = scan_chunk(p, lo, hi);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& part : parts) {
        ds.elements.insert(ds.elements.end(), part.elements.begin(), part.elements.end());
        ds.equivalence.merge(part.equivalence);
    }
    return ds;
}

GapWord gap_word(const DefectSet& ds) {
    if (ds.elements.size() < 2) throw usage_error("need at least two defect elements");
    const std::array<int, 3> alphabet = ds.r == 2 ? std::array<int, 3>{3, 4, 7}
                                                  : std::array<int, 3>{7, 12, 19};
    GapWord gw;
    gw.r = ds.r;
    gw.letters.reserve(ds.elements.size() - 1);
    for (size_t i = 1; i < ds.elements.size(); ++i) {
        long long gap = ds.elements[i] - ds.elements[i - 1];
        if (std::find(alphabet.begin(), alphabet.end(), gap) == alphabet.end())
            throw usage_error("gap " + std::to_string(gap) + " after element " +
                              std::to_string(ds.elements[i - 1]) + " is outside the alphabet");
        gw.letters.push_back(static_cast<int>(gap));
        ++gw.counts[static_cast<int>(gap)];
    }
    return gw;
}

ReturnIntervals return_intervals() {
    QuadExpr c = QuadExpr::inv_sqrt(2);
    ReturnIntervals ri;
    ri.j3_lo = QuadExpr(1) - c;
    ri.j3_hi = QuadExpr(mpq_class(5, 2)) - QuadExpr(3) * c;
    ri.j7_lo = ri.j3_hi;
    ri.j7_hi = QuadExpr(4) - QuadExpr(5) * c;
    ri.j4_lo = ri.j7_hi;
    ri.j4_hi = QuadExpr(mpq_class(1, 2));
    ri.len3 = ri.j3_hi - ri.j3_lo;
    ri.len4 = ri.j4_hi - ri.j4_lo;
    ri.len7 = ri.j7_hi - ri.j7_lo;
    return ri;
}

VerifyReport classify_returns(const DefectSet& ds) {
    if (ds.r != 2) throw usage_error("return intervals are the r=2 analysis");
    VerifyReport rep;
    ReturnIntervals ri = return_intervals();
    BeattyParams p(2, ds.d);
    for (size_t i = 0; i + 1 < ds.elements.size(); ++i) {
        long long n = ds.elements[i];
        long long gap = ds.elements[i + 1] - n;
        QuadExpr th = p.theta(n - 1);
        bool ok = false;
        if (gap == 3) ok = th >= ri.j3_lo && th <= ri.j3_hi;
        else if (gap == 7) ok = th > ri.j7_lo && th <= ri.j7_hi;
        else if (gap == 4) ok = th > ri.j4_lo && th <= ri.j4_hi;
        ++rep.checked;
        if (!ok) {
            rep.fail(n, "theta_{n-1} not in J" + std::to_string(gap));
            return rep;
        }
    }
    return rep;
}

GapFrequencies gap_frequencies(const GapWord& gw) {
    if (gw.letters.size() < 100) throw usage_error("need at least 100 gaps for frequencies");
    GapFrequencies out;
    out.total = static_cast<long long>(gw.letters.size());
    long long weighted = 0;
    for (const auto& [letter, count] : gw.counts) {
        out.freq[letter] = mpq_class(static_cast<long>(count), static_cast<long>(out.total));
        weighted += static_cast<long long>(letter) * count;
    }
    out.average_gap = static_cast<double>(weighted) / static_cast<double>(out.total);
    if (gw.r == 2) {
        double root2 = std::sqrt(2.0);
        auto dev = [&](int letter, double target) {
            out.deviation[letter] = std::abs(out.freq[letter].get_d() - target);
        };
        dev(3, root2 - 1);
        dev(4, 3 - 2 * root2);
        dev(7, root2 - 1);
        out.average_gap_deviation = std::abs(out.average_gap - 2 * (root2 + 1));
    }
    return out;
}

namespace {

std::vector<int> substitution_word(long long min_len) {
    std::vector<int> cur{3};
    while (static_cast<long long>(cur.size()) < min_len) {
        std::vector<int> next;
        next.reserve(cur.size() * 3);
        for (int letter : cur) {
            switch (letter) {
                case 3: next.insert(next.end(), {3, 4}); break;
                case 4: next.insert(next.end(), {3, 7}); break;
                default: next.insert(next.end(), {3, 7, 7}); break;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::unordered_set<std::string> factors_of(const std::vector<int>& w, int max_len) {
    std::unordered_set<std::string> out;
    std::string buf;
    for (size_t i = 0; i < w.size(); ++i) {
        buf.clear();
        for (size_t j = i; j < w.size() && j < i + static_cast<size_t>(max_len); ++j) {
            buf.push_back(static_cast<char>('0' + w[j] % 10));  // 3,4,7 stay distinct
            out.insert(buf);
        }
    }
    return out;
}

}  // namespace

VerifyReport substitution_check(const GapWord& gw, int max_factor_len) {
    if (gw.r != 2) throw usage_error("the substitution conjecture is about the r=2 gap word");
    VerifyReport rep;

    // Incidence matrix M[i][j] = occurrences of letter i in sigma(letter j),
    // letters ordered (3,4,7).
    const long long M[3][3] = {{1, 1, 1}, {1, 0, 0}, {0, 1, 2}};
    long long M2[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) M2[i][j] += M[i][k] * M[k][j];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (M2[i][j] <= 0) {
                rep.fail(0, "M^2 not positive: sigma not primitive of index 2");
                return rep;
            }
    // Characteristic polynomial x^3 - 3x^2 + x + 1 via trace, principal
    // 2x2 minors, and determinant.
    long long tr = M[0][0] + M[1][1] + M[2][2];
    long long minors = (M[0][0] * M[1][1] - M[0][1] * M[1][0]) +
                       (M[0][0] * M[2][2] - M[0][2] * M[2][0]) +
                       (M[1][1] * M[2][2] - M[1][2] * M[2][1]);
    long long det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                    M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                    M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    if (tr != 3 || minors != 1 || det != -1) {
        rep.fail(0, "characteristic polynomial is not x^3-3x^2+x+1");
        return rep;
    }
    // Perron pair: M v = (1+sqrt(2)) v with v the exact frequency vector
    // (sqrt(2)-1, 3-2sqrt(2), sqrt(2)-1), summing to 1.
    QuadExpr lambda(1, 1, 2);
    QuadExpr v[3] = {QuadExpr(-1, 1, 2), QuadExpr(3, -2, 2), QuadExpr(-1, 1, 2)};
    if (v[0] + v[1] + v[2] != QuadExpr(1)) {
        rep.fail(0, "frequency vector does not sum to 1");
        return rep;
    }
    for (int i = 0; i < 3; ++i) {
        QuadExpr row;
        for (int j = 0; j < 3; ++j) row += QuadExpr(M[i][j]) * v[j];
        if (row != lambda * v[i]) {
            rep.fail(i, "Perron eigenvector equation fails in row " + std::to_string(i));
            return rep;
        }
    }

    // Factor containment in the subshift of sigma.
    auto gw_factors = factors_of(gw.letters, max_factor_len);
    long long want_len =
        std::max<long long>(static_cast<long long>(gw_factors.size()) * 10, max_factor_len + 1);
    std::vector<int> sw = substitution_word(want_len);
    auto sub_factors = factors_of(sw, max_factor_len);
    rep.checked = static_cast<long long>(gw_factors.size());
    for (const auto& f : gw_factors)
        if (!sub_factors.count(f)) {
            rep.fail(static_cast<long long>(f.size()),
                     "conjecture counterexample: gap-word factor \"" + f +
                         "\" (letters by last digit) is not in the substitution subshift");
            return rep;
        }
    rep.detail = "all " + std::to_string(gw_factors.size()) + " factors up to length " +
                 std::to_string(max_factor_len) + " occur in the subshift";
    return rep;
}

SLWord coarsen_SL(const GapWord& gw) {
    if (gw.r != 2) throw usage_error("S/L coarsening applies to the r=2 gap word");
    SLWord out;
    out.word.reserve(gw.letters.size());
    long long s_count = 0;
    for (int letter : gw.letters) {
        bool is_s = letter == 3 || letter == 4;
        out.word.push_back(is_s ? 'S' : 'L');
        if (is_s) ++s_count;
    }
    long long total = static_cast<long long>(out.word.size());
    out.freq_S = mpq_class(static_cast<long>(s_count), static_cast<long>(total));
    out.freq_L = mpq_class(static_cast<long>(total - s_count), static_cast<long>(total));
    out.dev_S = std::abs(out.freq_S.get_d() - (2 - std::sqrt(2.0)));
    for (int ell = 1; ell <= 30 && ell <= total; ++ell) {
        long long weight = 0;
        for (int i = 0; i < ell; ++i) weight += out.word[static_cast<size_t>(i)] == 'L';
        long long wmin = weight, wmax = weight;
        for (long long i = ell; i < total; ++i) {
            weight += (out.word[static_cast<size_t>(i)] == 'L') -
                      (out.word[static_cast<size_t>(i - ell)] == 'L');
            wmin = std::min(wmin, weight);
            wmax = std::max(wmax, weight);
        }
        out.max_imbalance = std::max(out.max_imbalance, static_cast<int>(wmax - wmin));
    }
    return out;
}

void write_bfile(std::ostream& out, const std::vector<long long>& values, long long first_index) {
    long long idx = first_index;
    for (long long v : values) out << idx++ << ' ' << v << '\n';
}

}  // namespace agolomb
