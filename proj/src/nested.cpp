#include "agolomb/nested.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <optional>
#include <ostream>
#include <thread>

namespace agolomb {

NestedContext::NestedContext(long r, QuadExpr d) : params(r, std::move(d)) {
    if (r == 2) {
        D = params.d * QuadExpr(1, 1, 2);  // 2c + 1 = 1 + sqrt(2)
    } else if (r == 3) {
        D = params.d * QuadExpr(1, 1, 3);  // sqrt(3) + 1
    }
}

QuadExpr NestedContext::left_endpoint(long r) {
    if (r == 2) return QuadExpr(0, mpq_class(1, 2), 2);
    if (r == 3) return QuadExpr(mpq_class(1, 2), mpq_class(1, 6), 3);
    throw usage_error("proven interval endpoints exist for r in {2,3}");
}

QuadExpr NestedContext::right_endpoint(long r) {
    if (r == 2) return QuadExpr(-2, 2, 2);
    if (r == 3) return QuadExpr(mpq_class(-1, 2), mpq_class(5, 6), 3);
    throw usage_error("proven interval endpoints exist for r in {2,3}");
}

bool NestedContext::inside_interval() const {
    long r = params.r;
    if (r != 2 && r != 3) return false;
    return params.d >= left_endpoint(r) && params.d <= right_endpoint(r);
}

namespace {

// Steps n while maintaining the window sum f(n), a short theta history, and
// two monotone cursors giving a(f(n)) and a(a(f(n))) without fresh floors.
class NestedWalker {
public:
    NestedWalker(const NestedContext& ctx, long long start_n)
        : ctx_(ctx), r_(ctx.params.r), orbit_(ctx.params, start_n - r_ + 1) {
        if (start_n < r_) throw usage_error("nested walk starts at n >= r");
        for (long j = 0; j < r_; ++j) {
            ring_.push_back(orbit_.a());
            f_ += orbit_.a();
            push_theta(orbit_.theta());
            if (j + 1 < r_) orbit_.step();
        }
        cursor_b_.emplace(ctx_.params, std::max<long long>(1, f_));
        long long af = a_of_f();
        cursor_c_.emplace(ctx_.params, std::max<long long>(1, af));
    }

    long long n() const { return orbit_.n(); }
    long long a_n() const { return ring_.back(); }
    long long f() const { return f_; }
    const QuadExpr& theta(int back = 0) const { return thetas_[static_cast<size_t>(back)]; }
    bool repeat_n() const { return theta(0) < one_minus_c(); }
    bool repeat_n1() const { return theta(1) < one_minus_c(); }

    long long a_of_f() {
        if (f_ < 1) return 0;
        cursor_b_->advance_to(f_);
        return cursor_b_->a();
    }
    long long a_of_a_of_f() {
        long long af = a_of_f();
        if (af < 1) return 0;
        cursor_c_->advance_to(af);
        return cursor_c_->a();
    }
    // -theta at position f(n) and at position a(f(n)), for expansion checks.
    QuadExpr theta_at_f() {
        a_of_f();
        return cursor_b_->theta();
    }
    QuadExpr theta_at_af() {
        a_of_a_of_f();
        return cursor_c_->theta();
    }

    long long m_direct() { return a_of_f() - n(); }

    // Closed-form shift from the floor expansion; r in {2,3} only.
    long long m_closed() const {
        const QuadExpr& c = ctx_.params.c;
        if (r_ == 2) {
            QuadExpr x = ctx_.D - c * (theta(0) + theta(1)) - QuadExpr(mpq_class(1, 2));
            return x.floor64();
        }
        if (r_ == 3) {
            QuadExpr x = ctx_.D - c * (theta(0) + theta(1) + theta(2));
            return x.floor64() - 1;
        }
        throw usage_error("closed-form shift needs r in {2,3}");
    }

    long long m_checked() {
        long long md = m_direct();
        if (r_ == 2 || r_ == 3) {
            long long mc = m_closed();
            if (md != mc)
                throw internal_error("shift mismatch at n=" + std::to_string(n()) + ": direct " +
                                     std::to_string(md) + " vs closed form " + std::to_string(mc));
        }
        return md;
    }

    QuadExpr one_minus_c() const { return QuadExpr(1) - ctx_.params.c; }

    std::string regime() const {
        const QuadExpr& c = ctx_.params.c;
        if (r_ == 2) {
            if (theta(0) < one_minus_c()) return "I";
            if (theta(0) < c) return "II";
            return "III";
        }
        if (r_ == 3) {
            const QuadExpr& t = theta(2);
            QuadExpr b1 = QuadExpr(2) - QuadExpr(3) * c;  // 2-3c
            QuadExpr b2 = one_minus_c();                  // 1-c
            QuadExpr b3 = QuadExpr(2) - QuadExpr(2) * c;  // 2-2c
            std::string reg;
            QuadExpr pred_n1, pred_n;
            bool rep_n, rep_n1;
            if (t < b1) {
                reg = "A", pred_n1 = t + c, pred_n = t + QuadExpr(2) * c - QuadExpr(1);
                rep_n = true, rep_n1 = false;
            } else if (t < b2) {
                reg = "B", pred_n1 = t + c, pred_n = t + QuadExpr(2) * c - QuadExpr(1);
                rep_n = false, rep_n1 = false;
            } else if (t < b3) {
                reg = "C", pred_n1 = t + c - QuadExpr(1), pred_n = t + QuadExpr(2) * c - QuadExpr(1);
                rep_n = false, rep_n1 = true;
            } else {
                reg = "D", pred_n1 = t + c - QuadExpr(1), pred_n = t + QuadExpr(2) * c - QuadExpr(2);
                rep_n = true, rep_n1 = false;
            }
            if (pred_n1 != theta(1) || pred_n != theta(0))
                throw internal_error("regime table thetas broken at n=" + std::to_string(n()));
            if (rep_n != repeat_n() || rep_n1 != repeat_n1())
                throw internal_error("regime repeat statuses broken at n=" + std::to_string(n()));
            return reg;
        }
        return "";
    }

    void step() {
        orbit_.step();
        f_ += orbit_.a() - ring_.front();
        ring_.pop_front();
        ring_.push_back(orbit_.a());
        push_theta(orbit_.theta());
    }

private:
    void push_theta(const QuadExpr& th) {
        thetas_[2] = thetas_[1];
        thetas_[1] = thetas_[0];
        thetas_[0] = th;
    }

    const NestedContext& ctx_;
    long r_;
    BeattyOrbit orbit_;
    std::deque<long long> ring_;
    QuadExpr thetas_[3];
    long long f_ = 0;
    std::optional<BeattyOrbit> cursor_b_;
    std::optional<BeattyOrbit> cursor_c_;
};

VerifyReport verify_range(const NestedContext& ctx, long long n_lo, long long n_hi) {
    VerifyReport rep;
    NestedWalker w(ctx, n_lo);
    bool structured = ctx.params.r == 2 || ctx.params.r == 3;
    bool inside = ctx.inside_interval();
    for (long long n = n_lo; n <= n_hi; ++n, w.step()) {
        ++rep.checked;
        long long lhs = w.a_of_a_of_f();
        long long rhs = w.a_n();
        if (lhs != rhs) {
            rep.fail(n, "a(a(f(n)))=" + std::to_string(lhs) + " != a(n)=" + std::to_string(rhs) +
                            (structured ? ", m=" + std::to_string(w.m_checked()) + ", regime " +
                                              w.regime()
                                        : ""));
            return rep;
        }
        if (structured) {
            long long m = w.m_checked();
            if (inside) {
                if (m > 1 || m < (ctx.params.r == 2 ? 0 : -1)) {
                    rep.fail(n, "shift m=" + std::to_string(m) + " out of the absorbed range");
                    return rep;
                }
                if (m == 1 && !w.repeat_n()) {
                    rep.fail(n, "m=1 at a non-repeat index");
                    return rep;
                }
                if (m == -1 && !w.repeat_n1()) {
                    rep.fail(n, "m=-1 with n-1 a non-repeat");
                    return rep;
                }
                if (ctx.params.r == 2 && !w.repeat_n() && m != 0) {
                    rep.fail(n, "non-repeat index with a(f(n)) != n");
                    return rep;
                }
            }
        }
    }
    return rep;
}

}  // namespace

long long shift_m(const NestedContext& ctx, long long n) {
    NestedWalker w(ctx, n);
    return w.m_checked();
}

std::string classify_regime(const NestedContext& ctx, long long n) {
    NestedWalker w(ctx, n);
    return w.regime();
}

VerifyReport verify_nested(const NestedContext& ctx, long long n_lo, long long n_hi, int threads) {
    if (n_lo < ctx.params.r) throw usage_error("verification starts at n >= r");
    if (threads <= 1 || n_hi - n_lo < 4096) return verify_range(ctx, n_lo, n_hi);
    std::vector<VerifyReport> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    long long chunk = (n_hi - n_lo) / threads + 1;
    for (int t = 0; t < threads; ++t) {
        long long lo = n_lo + t * chunk;
        long long hi = std::min(n_hi, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back(
            [&, t, lo, hi] { parts[static_cast<size_t>(t)] = verify_range(ctx, lo, hi); });
    }
    for (auto& th : pool) th.join();
    VerifyReport rep;
    for (auto& part : parts) rep.merge(part);
    return rep;
}

NestedWitness find_failure(const NestedContext& ctx, long long n_cap) {
    NestedWitness out;
    long r = ctx.params.r;
    NestedWalker w(ctx, r);
    for (long long n = r; n <= n_cap; ++n, w.step()) {
        if (w.a_of_a_of_f() == w.a_n()) continue;
        out.found = true;
        out.n = n;
        out.m = w.m_direct();
        out.regime = w.regime();
        const QuadExpr& c = ctx.params.c;
        if (r == 2) {
            out.theta = w.theta(0);
            if (ctx.params.d < NestedContext::left_endpoint(2)) {
                QuadExpr thr = (ctx.D - c) * (QuadExpr(2) * c).inverse();
                out.window_ok = out.regime == "II" && out.theta > thr;
                out.note = "lower-threshold window theta > " + thr.str();
            } else if (ctx.params.d > NestedContext::right_endpoint(2)) {
                QuadExpr thr = (ctx.D - QuadExpr(1)) * (QuadExpr(2) * c).inverse();
                out.window_ok = out.regime == "III" && out.theta <= thr;
                out.note = "upper-threshold window theta <= " + thr.str();
            } else {
                out.note = "failure inside the proven interval";
            }
        } else if (r == 3) {
            out.theta = w.theta(2);
            QuadExpr one_minus_c = QuadExpr(1) - c;
            if (ctx.params.d > NestedContext::right_endpoint(3)) {
                QuadExpr hi = one_minus_c + (ctx.D - QuadExpr(2) - c) * c;
                out.window_ok = out.regime == "C" && out.theta >= one_minus_c && out.theta < hi;
                out.note = "U_R window [1-c, " + hi.str() + ")";
            } else if (ctx.params.d < NestedContext::left_endpoint(3)) {
                QuadExpr t_star = ctx.D * c - QuadExpr(2) * c + QuadExpr(mpq_class(1, 3));
                QuadExpr b_left = QuadExpr(2) - QuadExpr(3) * c;
                if (t_star < b_left) t_star = b_left;
                out.window_ok = out.regime == "B" && out.theta > t_star && out.theta < one_minus_c;
                out.note = "U_L window (" + t_star.str() + ", 1-c)";
            } else {
                out.note = "failure inside the proven interval";
            }
        }
        return out;
    }
    out.note = "no failure up to n=" + std::to_string(n_cap) +
               " (cap too small or shift inside the interval)";
    return out;
}

VerifyReport theta_range_check(const NestedContext& ctx, long long grid_den, long long orbit_cap) {
    if (ctx.params.r != 3) throw usage_error("theta range table is the r=3 regime analysis");
    VerifyReport rep;
    const QuadExpr c = ctx.params.c;
    const QuadExpr b1 = QuadExpr(2) - QuadExpr(3) * c;
    const QuadExpr b2 = QuadExpr(1) - c;
    const QuadExpr b3 = QuadExpr(2) - QuadExpr(2) * c;
    // Exact range endpoints per regime.
    const QuadExpr lo_A(-1, 1, 3), hi_A(5, -2, 3);       // [sqrt(3)-1, 5-2sqrt(3))
    const QuadExpr lo_B = hi_A, hi_B = QuadExpr(2);      // [5-2sqrt(3), 2)
    const QuadExpr lo_C = QuadExpr(1), hi_C(4, -1, 3);   // [1, 4-sqrt(3))
    const QuadExpr lo_D(3, -1, 3), hi_D(0, 1, 3);        // [3-sqrt(3), sqrt(3))

    auto theta_formula = [&](const QuadExpr& t, const std::string& reg) {
        QuadExpr base = QuadExpr(3) * t + QuadExpr(3) * c;
        if (reg == "A" || reg == "B") return base - QuadExpr(1);
        if (reg == "C") return base - QuadExpr(2);
        return base - QuadExpr(3);
    };
    auto regime_of_t = [&](const QuadExpr& t) -> std::string {
        if (t < b1) return "A";
        if (t < b2) return "B";
        if (t < b3) return "C";
        return "D";
    };
    auto in_range = [&](const std::string& reg, const QuadExpr& v) {
        if (reg == "A") return v >= lo_A && v < hi_A;
        if (reg == "B") return v >= lo_B && v < hi_B;
        if (reg == "C") return v >= lo_C && v < hi_C;
        return v >= lo_D && v < hi_D;
    };

    for (long long k = 0; k < grid_den; ++k) {
        QuadExpr t(mpq_class(static_cast<long>(k), static_cast<long>(grid_den)));
        std::string reg = regime_of_t(t);
        ++rep.checked;
        if (!in_range(reg, theta_formula(t, reg))) {
            rep.fail(k, "grid point t=" + t.str() + " leaves the regime-" + reg + " range");
            return rep;
        }
    }

    bool inside = ctx.inside_interval();
    const QuadExpr df_lo = QuadExpr(2) - QuadExpr(2) * c;   // 2-2c
    const QuadExpr df_hi = QuadExpr(1) + QuadExpr(2) * c;   // 1+2c
    NestedWalker w(ctx, 3);
    QuadExpr min_bc, max_abd, argmin_t, argmax_t;
    bool have_min = false, have_max = false;
    for (long long n = 3; n <= orbit_cap; ++n, w.step()) {
        const QuadExpr& t = w.theta(2);
        QuadExpr big = w.theta(0) + w.theta(1) + w.theta(2);
        std::string reg = regime_of_t(t);
        ++rep.checked;
        if (big != theta_formula(t, reg)) {
            rep.fail(n, "orbit Theta disagrees with the regime formula");
            return rep;
        }
        if (!in_range(reg, big)) {
            rep.fail(n, "orbit Theta outside the regime-" + reg + " range");
            return rep;
        }
        if (reg == "B" || reg == "C") {
            if (big <= QuadExpr(1)) {
                rep.fail(n, "Theta reached its infimum on B|C");
                return rep;
            }
            if (!have_min || big < min_bc) {
                min_bc = big;
                argmin_t = t;
                have_min = true;
            }
        }
        if (reg != "C") {
            if (big >= QuadExpr(2)) {
                rep.fail(n, "Theta reached its supremum on A|B|D");
                return rep;
            }
            if (!have_max || big > max_abd) {
                max_abd = big;
                argmax_t = t;
                have_max = true;
            }
        }
        if (inside) {
            long long m = w.m_checked();
            if (m < -1 || m > 1) {
                rep.fail(n, "m(n) outside {-1,0,1} inside the interval");
                return rep;
            }
            QuadExpr diff = ctx.D - c * big;
            if (!(diff > df_lo && diff <= df_hi)) {
                rep.fail(n, "D - c*Theta left (2-2c, 1+2c]");
                return rep;
            }
        }
    }
    // Extremal behaviour: the infimum 1 is approached only near t = 1-c from
    // regime C, the supremum 2 only near t = 1-c from regime B.
    QuadExpr tol(mpq_class(1, 50));
    if (!have_min || !(min_bc - QuadExpr(1) < tol) || !((argmin_t - b2) < tol && argmin_t >= b2)) {
        rep.fail(-1, "infimum of Theta on B|C not approached near t=1-c");
        return rep;
    }
    if (!have_max || !(QuadExpr(2) - max_abd < tol) || !((b2 - argmax_t) < tol && argmax_t < b2)) {
        rep.fail(-1, "supremum of Theta on A|B|D not approached near t=1-c");
        return rep;
    }
    rep.detail = "min Theta(B|C) = " + min_bc.decimal(6) + " at t = " + argmin_t.decimal(6) +
                 ", max Theta(A|B|D) = " + max_abd.decimal(6) + " at t = " + argmax_t.decimal(6);
    return rep;
}

VerifyReport expansion_check(const NestedContext& ctx, long long n_lo, long long n_hi) {
    if (ctx.params.r != 2) throw usage_error("expansion constant R0 is the r=2 formula");
    VerifyReport rep;
    const QuadExpr& c = ctx.params.c;
    QuadExpr r0 = ctx.params.d * (c + QuadExpr(2)) - c * QuadExpr(mpq_class(1, 2));
    NestedWalker w(ctx, n_lo);
    for (long long n = n_lo; n <= n_hi; ++n, w.step()) {
        QuadExpr rn = r0 - c * c * (w.theta(0) + w.theta(1)) - c * w.theta_at_f() - w.theta_at_af();
        long long lhs = (c * QuadExpr(n) + rn).floor64();
        long long rhs = w.a_of_a_of_f();
        ++rep.checked;
        if (lhs != rhs) {
            rep.fail(n, "floor(cn + R(n)) = " + std::to_string(lhs) + " but a(a(f(n))) = " +
                            std::to_string(rhs));
            return rep;
        }
    }
    return rep;
}

std::vector<ScanRow> scan_interval(long r, const std::vector<QuadExpr>& grid, long long n_cap,
                                   int threads) {
    std::vector<ScanRow> rows(grid.size());
    auto work = [&](size_t i) {
        NestedContext ctx(r, grid[i]);
        VerifyReport rep = verify_range(ctx, r, n_cap);
        rows[i] = ScanRow{grid[i], rep.pass, rep.first_witness};
    };
    if (threads <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) work(i);
        return rows;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < grid.size(); i = next++) work(i);
        });
    for (auto& th : pool) th.join();
    return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << "d_num,d_den,d_surd_num,d_surd_den,pass,first_witness\n";
    for (const auto& row : rows) {
        out << row.d.rat().get_num().get_str() << ',' << row.d.rat().get_den().get_str() << ','
            << row.d.surd().get_num().get_str() << ',' << row.d.surd().get_den().get_str() << ','
            << (row.pass ? 1 : 0) << ',' << row.first_witness << '\n';
    }
}

}  // namespace agolomb
