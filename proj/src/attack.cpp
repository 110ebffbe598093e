#include "cfrsa/attack.hpp"

#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "cfrsa/approx.hpp"
#include "cfrsa/constants.hpp"

namespace cfrsa {

const char* family_name(Family f) {
    switch (f) {
        case Family::convergent: return "convergent";
        case Family::rs_plus: return "rs+";
        case Family::st_minus: return "st-";
        case Family::rs_prime: return "r's'";
    }
    return "?";
}

std::optional<std::tuple<Integer, Integer, Integer>>
phi_test(const RsaPublicKey& pub, const Integer& a, const Integer& b) {
    if (a < 1 || b < 1) throw std::domain_error("phi_test: a, b must be >= 1");
    Integer num = b * pub.e - 1;
    if (!mpz_divisible_p(num.get_mpz_t(), a.get_mpz_t())) return std::nullopt;
    Integer phi = num / a;
    if (phi <= 0 || phi >= pub.n) return std::nullopt;
    Integer half_sum2 = pub.n - phi + 1;  // p + q
    if (mpz_odd_p(half_sum2.get_mpz_t())) return std::nullopt;
    Integer half_sum = half_sum2 / 2;
    Integer disc = half_sum * half_sum - pub.n;  // ((q-p)/2)^2
    if (disc < 0) return std::nullopt;
    Integer half_diff = isqrt(disc);
    if (half_diff * half_diff != disc) return std::nullopt;
    Integer p = half_sum - half_diff;
    Integer q = half_sum + half_diff;
    if (p <= 1 || p * q != pub.n) return std::nullopt;
    return std::make_tuple(p, q, b);
}

bool modpow_test(const RsaPublicKey& pub, const Integer& b, const Integer& M) {
    if (M <= 1 || M >= pub.n) throw std::domain_error("modpow_test: need 1 < M < n");
    return modpow(M, pub.e * b, pub.n) == M;
}

namespace {

// candidate k/d acceptance shared by all attacks; full outcome on success
std::optional<AttackOutcome> test_pair(const RsaPublicKey& pub, const AttackConfig& cfg,
                                       const Integer& k, const Integer& d) {
    if (k < 1 || d < 1) return std::nullopt;
    if (cfg.test_mode != TestMode::phi_test) {
        if (!modpow_test(pub, d, cfg.modpow_witness)) return std::nullopt;
    }
    auto pq = phi_test(pub, k, d);
    if (!pq) return std::nullopt;
    auto [p, q, dd] = *pq;
    AttackOutcome out;
    out.d = d;
    out.k = k;
    out.p = p;
    out.q = q;
    out.phi = (p - 1) * (q - 1);
    if ((pub.e * d - 1) % out.phi != 0 || p * q != pub.n)
        throw std::logic_error("attack outcome failed verification");
    return out;
}

}  // namespace

BoundContext BoundContext::resolve(const AttackConfig& cfg, const Integer& n) {
    if (cfg.d_bound.has_value() == cfg.D_bound.has_value())
        throw std::invalid_argument("exactly one of d_bound / D_bound must be set");
    BoundContext ctx;
    ctx.n = n;
    if (cfg.D_bound) {
        Fraction D = *cfg.D_bound;
        if (D <= 0) throw std::invalid_argument("D_bound must be positive");
        ctx.from_D = true;
        ctx.D2 = D * D;
        // largest d with d <= D * n^(1/4)
        Integer num = pow_ui(D.get_num(), 4) * n;
        Integer den = pow_ui(D.get_den(), 4);
        ctx.d_cap = iroot4(fdiv(num, den));
    } else {
        if (*cfg.d_bound < 1) throw std::invalid_argument("d_bound must be >= 1");
        ctx.from_D = false;
        ctx.d_cap = *cfg.d_bound;
        ctx.d_cap4_num = pow_ui(ctx.d_cap, 4);
        ctx.d_cap4_den_n = n;
    }
    return ctx;
}

bool BoundContext::below_gamma_D2(const Integer& x, const Fraction& gamma) const {
    if (x < 0) return true;
    if (from_D) {
        return Fraction(x) < gamma * D2;
    }
    // x < gamma * d_cap^2 / sqrt(n)  <=>  x^2 n gden^2 < gnum^2 d_cap^4
    Integer lhs = x * x * d_cap4_den_n * gamma.get_den() * gamma.get_den();
    Integer rhs = gamma.get_num() * gamma.get_num() * d_cap4_num;
    return lhs < rhs;
}

Integer BoundContext::floor_sqrt_gamma_D(const Fraction& gamma) const {
    if (gamma <= 0) return 0;
    if (from_D) {
        // floor(sqrt(gamma * D^2))
        Fraction g = gamma * D2;
        return isqrt(fdiv(g.get_num(), g.get_den()));
    }
    // floor((gamma)^(1/2) d_cap / n^(1/4)) = floor((gamma^2 d_cap^4 / n)^(1/4))
    Integer num = gamma.get_num() * gamma.get_num() * d_cap4_num;
    Integer den = gamma.get_den() * gamma.get_den() * d_cap4_den_n;
    return iroot4(fdiv(num, den));
}

namespace {

Fraction regime_constant(Regime r) {
    return r == Regime::balanced ? constants::k2_122 : constants::k3_183;
}

// sign of (p_m/q_m - e/n) - C e/(n sqrt(n)), exact
int cmp_gap_vs_threshold(const CFExpansion& cf, long m, const Integer& n,
                         const Integer& e, const Fraction& C) {
    Integer gap_num = cf.p(m) * n - e * cf.q(m);  // over q_m * n
    if (gap_num <= 0) return -1;
    // gap_num * n * Cden  vs  Cnum * e * q_m * sqrt(n), both positive: square
    Integer lhs = gap_num * n * C.get_den();
    Integer rhs_base = C.get_num() * e * cf.q(m);
    return cmp(lhs * lhs, rhs_base * rhs_base * n);
}

}  // namespace

std::optional<long> locate_attack_m(const CFExpansion& cf, const Integer& n,
                                    const Integer& e, const Fraction& C) {
    std::optional<long> m;
    for (long i = 1; i + 1 <= cf.last_index(); i += 2) {
        if (cmp_gap_vs_threshold(cf, i, n, e, C) > 0) m = i; else break;
    }
    return m;
}

std::optional<AttackOutcome> wiener_attack(const RsaPublicKey& pub, const AttackConfig& cfg) {
    BoundContext bounds = BoundContext::resolve(cfg, pub.n);
    CFExpansion cf(make_fraction(pub.e, pub.n));
    std::uint64_t steps = 0;
    for (long i = 0; i <= cf.last_index(); ++i) {
        if (cf.q(i) > bounds.d_cap) break;
        ++steps;
        if (auto out = test_pair(pub, cfg, cf.p(i), cf.q(i))) {
            out->steps = steps;
            out->method = "wiener";
            out->m = i;
            out->family = Family::convergent;
            out->coeff1 = cf.p(i);
            out->coeff2 = cf.q(i);
            return out;
        }
    }
    return std::nullopt;
}

long locate_m_shortcut(const RsaPublicKey& pub, const AttackConfig& cfg) {
    CFExpansion cf(make_fraction(pub.e, pub.n));
    Fraction two_c = regime_constant(cfg.regime) * 2;  // 4.244 in the balanced regime
    for (long m = 1; m + 1 <= cf.last_index(); m += 2) {
        // q_m q_{m+1} > n sqrt(n) / (two_c * e)
        Fraction lhs = Fraction(cf.q(m) * cf.q(m + 1)) * two_c * Fraction(pub.e);
        if (cmp_with_sqrt_scaled(lhs, Fraction(pub.n), pub.n) > 0) return m;
    }
    throw std::runtime_error("locate_m_shortcut: no odd index found");
}

std::optional<AttackOutcome> wiener_f_attack(const RsaPublicKey& pub, const AttackConfig& cfg) {
    BoundContext bounds = BoundContext::resolve(cfg, pub.n);
    Integer f = pub.n - isqrt(4 * pub.n) + 1;
    ApproxQuery query{make_fraction(pub.e, f), Fraction(2), bounds.d_cap};
    std::uint64_t steps = 0;
    for (const ApproxSolution& sol : enumerate_solutions(query)) {
        ++steps;
        if (auto out = test_pair(pub, cfg, sol.a, sol.b)) {
            out->steps = steps;
            out->method = "wiener_f";
            out->m = sol.m;
            out->family = sol.sign > 0 ? Family::rs_plus : Family::st_minus;
            out->coeff1 = sol.r;
            out->coeff2 = sol.s;
            return out;
        }
    }
    return std::nullopt;
}

namespace {

// The candidate window: k/d always lies in (e/n + 2e/(n sqrt n), e/n + C e/(n sqrt n)).
// Rational sqrt bounds widen it slightly, never shrink it.
struct Window {
    Fraction lo, hi;
};

Window make_window(const Integer& n, const Integer& e, const Fraction& C) {
    Fraction en = make_fraction(e, n);
    Fraction lo = en + Fraction(2) * en / sqrt_upper_bound(n);
    Fraction hi = en + C * en / sqrt_lower_bound(n);
    return {lo, hi};
}

// r-range with lo < (r ph + s pl)/(r qh + s ql) < hi, for p_h/q_h below the
// window and p_l/q_l above it; the value is decreasing in r.
std::optional<std::pair<Integer, Integer>>
plus_range(const Integer& ph, const Integer& qh, const Integer& pl, const Integer& ql,
           const Integer& s, const Window& w, const Integer& d_cap) {
    // v < hi: r (ph Hd - qh Hn) < s (ql Hn - pl Hd)
    Integer A = ph * w.hi.get_den() - qh * w.hi.get_num();
    if (A >= 0) return std::nullopt;  // whole family sits at or above hi
    Integer B = s * (ql * w.hi.get_num() - pl * w.hi.get_den());
    Integer r_lo = fdiv(B, A) + 1;
    if (r_lo < 0) r_lo = 0;

    // v > lo: r (ph Ld - qh Ln) > s (ql Ln - pl Ld)
    Integer A2 = ph * w.lo.get_den() - qh * w.lo.get_num();
    Integer r_hi_den = fdiv(d_cap - s * ql, qh);  // d <= d_cap
    Integer r_hi = r_hi_den;
    if (A2 < 0) {
        Integer B2 = s * (ql * w.lo.get_num() - pl * w.lo.get_den());
        Integer from_lo = cdiv(B2, A2) - 1;
        if (from_lo < r_hi) r_hi = from_lo;
    }
    if (r_hi < r_lo) return std::nullopt;
    return std::make_pair(r_lo, r_hi);
}

// t-range with lo < (s ph - t pl)/(s qh - t ql) < hi and 1 <= b <= d_cap;
// here p_l/q_l is below the window, p_h/q_h near it, value increasing in t.
std::optional<std::pair<Integer, Integer>>
minus_range(const Integer& ph, const Integer& qh, const Integer& pl, const Integer& ql,
            const Integer& s, const Window& w, const Integer& d_cap) {
    Integer C1 = ql * w.lo.get_num() - pl * w.lo.get_den();
    if (C1 <= 0) return std::nullopt;
    Integer t_lo = fdiv(s * (qh * w.lo.get_num() - ph * w.lo.get_den()), C1) + 1;
    if (t_lo < 1) t_lo = 1;
    Integer from_dcap = cdiv(s * qh - d_cap, ql);  // b <= d_cap
    if (from_dcap > t_lo) t_lo = from_dcap;

    Integer C2 = ql * w.hi.get_num() - pl * w.hi.get_den();
    if (C2 <= 0) return std::nullopt;
    Integer t_hi = cdiv(s * (qh * w.hi.get_num() - ph * w.hi.get_den()), C2) - 1;
    Integer b_pos = fdiv(s * qh - 1, ql);  // b >= 1
    if (b_pos < t_hi) t_hi = b_pos;
    if (t_hi < t_lo) return std::nullopt;
    return std::make_pair(t_lo, t_hi);
}

struct SearchAnchor {
    CFExpansion cf;
    long m;
    Window window;
    bool case_a;  // e/n - p_{m+1}/q_{m+1} > C e/(n sqrt n)
};

std::optional<SearchAnchor> make_anchor(const RsaPublicKey& pub, const AttackConfig& cfg) {
    CFExpansion cf(make_fraction(pub.e, pub.n));
    Fraction C = regime_constant(cfg.regime);
    auto m = locate_attack_m(cf, pub.n, pub.e, C);
    if (!m) return std::nullopt;
    Window w = make_window(pub.n, pub.e, C);
    // sign of e/n - p_{m+1}/q_{m+1} - C e/(n sqrt n); p_{m+1} is an even
    // convergent so the gap is nonnegative
    bool case_a = false;
    {
        Integer gap_num = pub.e * cf.q(*m + 1) - cf.p(*m + 1) * pub.n;  // over q_{m+1} n
        if (gap_num > 0) {
            Integer lhs = gap_num * pub.n * C.get_den();
            Integer rhs = C.get_num() * pub.e * cf.q(*m + 1);
            case_a = lhs * lhs > rhs * rhs * pub.n;
        }
    }
    return SearchAnchor{std::move(cf), *m, w, case_a};
}

// s-cap from the section-3 case analysis (a factor (a_{m+1}+1) in case B)
Integer s1_bound(const SearchAnchor& anc, const BoundContext& bounds, const Fraction& C) {
    const CFExpansion& cf = anc.cf;
    long m = anc.m;
    if (m + 2 > cf.last_index()) return bounds.d_cap;  // short expansion fallback
    Fraction g = C * Fraction(cf.a(m + 2) + 2);
    if (anc.case_a) {
        // the two case-A analyses bound s by sqrt(C(a+2))D with a = a_{m+2}
        // or a_{m+3}; take the larger so the true witness is never cut off
        if (m + 3 <= cf.last_index() && cf.a(m + 3) > cf.a(m + 2))
            g = C * Fraction(cf.a(m + 3) + 2);
        return bounds.floor_sqrt_gamma_D(g);
    }
    Integer infl = cf.a(m + 1) + 1;
    return bounds.floor_sqrt_gamma_D(g * Fraction(infl * infl));
}

}  // namespace

std::optional<AttackOutcome> vvt_attack(const RsaPublicKey& pub, const AttackConfig& cfg) {
    BoundContext bounds = BoundContext::resolve(cfg, pub.n);
    auto anc = make_anchor(pub, cfg);
    if (!anc) return std::nullopt;
    const CFExpansion& cf = anc->cf;
    const long m = anc->m;
    const Fraction C = regime_constant(cfg.regime);
    const bool fallback = m + 2 > cf.last_index();

    Integer s_cap = s1_bound(*anc, bounds, C);
    Integer by_dcap = fdiv(bounds.d_cap, cf.q(m));
    if (by_dcap < s_cap) s_cap = by_dcap;

    std::uint64_t steps = 0;
    for (Integer s = 1; s <= s_cap; ++s) {
        auto range = plus_range(cf.p(m + 1), cf.q(m + 1), cf.p(m), cf.q(m), s,
                                anc->window, bounds.d_cap);
        if (!range) continue;
        for (Integer r = range->first; r <= range->second; ++r) {
            if (fallback && !bounds.below_gamma_D2(r * s, C * 2)) break;
            if (gcd(r, s) != 1) continue;
            ++steps;
            Integer k = r * cf.p(m + 1) + s * cf.p(m);
            Integer d = r * cf.q(m + 1) + s * cf.q(m);
            if (auto out = test_pair(pub, cfg, k, d)) {
                out->steps = steps;
                out->method = "vvt";
                out->m = m;
                out->family = Family::rs_plus;
                out->coeff1 = r;
                out->coeff2 = s;
                out->short_expansion_fallback = fallback;
                return out;
            }
        }
    }
    return std::nullopt;
}

namespace {

struct Stream {
    Integer product;   // s * cur
    int family;        // 0 = rs+, 1 = st-, 2 = r's'
    Integer s;
    Integer cur, hi;   // current and last second coefficient (r or t)
};

struct StreamOrder {
    bool operator()(const Stream& a, const Stream& b) const {
        int c = cmp(a.product, b.product);
        if (c != 0) return c > 0;
        if (a.family != b.family) return a.family > b.family;
        c = cmp(a.s, b.s);
        if (c != 0) return c > 0;
        return cmp(a.cur, b.cur) > 0;
    }
};

}  // namespace

std::optional<AttackOutcome> variant_attack(const RsaPublicKey& pub, const AttackConfig& cfg) {
    BoundContext bounds = BoundContext::resolve(cfg, pub.n);
    auto anc = make_anchor(pub, cfg);
    if (!anc) return std::nullopt;
    const CFExpansion& cf = anc->cf;
    const long m = anc->m;
    const long J = cf.last_index();
    const Fraction C = regime_constant(cfg.regime);
    const Fraction prod_cap_rs = C * 2;                          // 4.244 D^2
    const Fraction prod_cap_prime =
        cfg.regime == Regime::balanced ? constants::k0_3885 : C * 2;
    const bool have_st = m + 2 <= J;
    const bool have_prime = m + 3 <= J;
    const bool fallback = !have_st || !have_prime;

    // per-coefficient caps: r, t < 2.061 sqrt(a_{m+2}) D and r, t < a_{m+2} s
    Integer rt_cap = bounds.d_cap;
    if (have_st) {
        Fraction g = constants::k2_061 * constants::k2_061 * Fraction(cf.a(m + 2));
        rt_cap = bounds.floor_sqrt_gamma_D(g);
    }

    Integer s_cap = s1_bound(*anc, bounds, C);
    Integer by_dcap = fdiv(bounds.d_cap, cf.q(m));
    Integer s_cap_rs = s_cap < by_dcap ? s_cap : by_dcap;

    std::priority_queue<Stream, std::vector<Stream>, StreamOrder> heap;

    auto push_plus = [&](int family, long lvl, const Integer& s, const Fraction& pcap,
                         const Integer& r_extra_cap) {
        auto range = plus_range(cf.p(lvl + 1), cf.q(lvl + 1), cf.p(lvl), cf.q(lvl), s,
                                anc->window, bounds.d_cap);
        if (!range) return;
        Integer lo = range->first, hi = range->second;
        if (r_extra_cap >= 0 && r_extra_cap < hi) hi = r_extra_cap;
        if (hi < lo) return;
        if (!bounds.below_gamma_D2(lo * s, pcap)) return;
        heap.push(Stream{lo * s, family, s, lo, hi});
    };

    for (Integer s = 1; s <= s_cap_rs; ++s) {
        // in the three-family regime r < a_{m+2} s and r <= rt_cap; without
        // the st family (short expansion) search the full rs < 4.244 D^2 box
        Integer extra = -1;
        if (have_st && have_prime) {
            extra = cf.a(m + 2) * s - 1;
            if (rt_cap < extra) extra = rt_cap;
        }
        push_plus(0, m, s, prod_cap_rs, extra);
    }
    if (have_st) {
        Integer st_s_cap = s_cap;  // same s bound as the rs family
        for (Integer s = 1; s <= st_s_cap; ++s) {
            auto range = minus_range(cf.p(m + 2), cf.q(m + 2), cf.p(m + 1), cf.q(m + 1), s,
                                     anc->window, bounds.d_cap);
            if (!range) continue;
            Integer lo = range->first, hi = range->second;
            Integer extra = cf.a(m + 2) * s - 1;
            if (rt_cap < extra) extra = rt_cap;
            if (extra < hi) hi = extra;
            if (hi < lo) continue;
            if (!bounds.below_gamma_D2(lo * s, prod_cap_rs)) continue;
            heap.push(Stream{lo * s, 1, s, lo, hi});
        }
    }
    if (have_prime) {
        Integer prime_s_cap = fdiv(bounds.d_cap, cf.q(m + 2));
        {
            Fraction g = C * Fraction(cf.a(m + 3) + 2);
            Integer theory = bounds.floor_sqrt_gamma_D(g);
            if (theory < prime_s_cap) prime_s_cap = theory;
        }
        for (Integer s = 1; s <= prime_s_cap; ++s)
            push_plus(2, m + 2, s, prod_cap_prime, Integer(-1));
    }

    std::uint64_t steps = 0;
    std::set<std::pair<Integer, Integer>> tested;  // (d, k)
    while (!heap.empty()) {
        Stream st = heap.top();
        heap.pop();
        Integer s = st.s, x = st.cur;

        // advance the stream before testing
        if (x < st.hi) {
            Fraction pcap = st.family == 2 ? prod_cap_prime : prod_cap_rs;
            if (bounds.below_gamma_D2((x + 1) * s, pcap)) {
                st.cur = x + 1;
                st.product = st.cur * s;
                heap.push(st);
            }
        }

        if (gcd(x, s) != 1) continue;
        Integer k, d;
        long fam_m = m;
        Family fam;
        Integer c1, c2;
        if (st.family == 0) {
            k = x * cf.p(m + 1) + s * cf.p(m);
            d = x * cf.q(m + 1) + s * cf.q(m);
            fam = Family::rs_plus; c1 = x; c2 = s;
        } else if (st.family == 1) {
            k = s * cf.p(m + 2) - x * cf.p(m + 1);
            d = s * cf.q(m + 2) - x * cf.q(m + 1);
            fam = Family::st_minus; c1 = s; c2 = x;
        } else {
            k = x * cf.p(m + 3) + s * cf.p(m + 2);
            d = x * cf.q(m + 3) + s * cf.q(m + 2);
            fam = Family::rs_prime; c1 = x; c2 = s;
        }
        if (!tested.insert({d, k}).second) continue;
        ++steps;
        if (auto out = test_pair(pub, cfg, k, d)) {
            out->steps = steps;
            out->method = "variant";
            out->m = fam_m;
            out->family = fam;
            out->coeff1 = c1;
            out->coeff2 = c2;
            out->short_expansion_fallback = fallback;
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace cfrsa
