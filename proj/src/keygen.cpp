#include "cfrsa/keygen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cfrsa/constants.hpp"

namespace cfrsa {

namespace {

Integer rand_bits(std::mt19937_64& rng, unsigned bits) {
    Integer r = 0;
    unsigned got = 0;
    while (got < bits) {
        r <<= 64;
        r |= Integer(rng());
        got += 64;
    }
    r >>= (got - bits);
    return r;
}

// uniform in [0, bound)
Integer rand_below(std::mt19937_64& rng, const Integer& bound) {
    if (bound <= 0) throw std::invalid_argument("rand_below: empty range");
    unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
    while (true) {
        Integer r = rand_bits(rng, bits);
        if (r < bound) return r;
    }
}

Integer random_prime_in(std::mt19937_64& rng, const Integer& lo, const Integer& hi) {
    if (hi <= lo) throw std::invalid_argument("random_prime_in: empty range");
    Integer span = hi - lo;
    for (int tries = 0; tries < 200000; ++tries) {
        Integer c = lo + rand_below(rng, span);
        if (mpz_even_p(c.get_mpz_t())) c += 1;
        if (c >= hi) continue;
        if (is_probable_prime(c)) return c;
    }
    throw std::runtime_error("random_prime_in: no prime found");
}

}  // namespace

RsaKeySet gen_key(const KeyGenSpec& spec) {
    int d_modes = int(spec.d_exact.has_value()) + int(spec.d_bits.has_value()) +
                  int(spec.D_target.has_value());
    if (d_modes != 1) throw std::invalid_argument("gen_key: exactly one d mode required");
    if (spec.modulus_bits < 32 && !spec.p_forced) throw std::invalid_argument("gen_key: modulus_bits >= 32");

    std::mt19937_64 rng(spec.seed);
    Integer p, q;
    if (spec.p_forced || spec.q_forced) {
        if (!spec.p_forced || !spec.q_forced)
            throw std::invalid_argument("gen_key: both primes must be forced together");
        p = *spec.p_forced;
        q = *spec.q_forced;
        if (p > q) std::swap(p, q);
        if (!is_probable_prime(p) || !is_probable_prime(q))
            throw std::invalid_argument("gen_key: forced factors are not prime");
    } else {
        unsigned half = spec.modulus_bits / 2;
        Integer lo = Integer(1) << (half - 1);
        Integer hi = Integer(1) << half;
        Integer mult = spec.balance == Balance::two_p ? 2 : 8;
        for (int tries = 0;; ++tries) {
            p = random_prime_in(rng, lo, hi);
            q = random_prime_in(rng, p + 1, mult * p);
            if (q > p) break;
            if (tries > 1000) throw std::runtime_error("gen_key: balance infeasible");
        }
    }
    Integer n = p * q;
    Integer phi = (p - 1) * (q - 1);

    Integer d;
    if (spec.d_exact) {
        d = *spec.d_exact;
        if (d < 2 || gcd(d, phi) != 1)
            throw std::invalid_argument("gen_key: exact d not invertible mod phi");
    } else if (spec.d_bits) {
        unsigned b = *spec.d_bits;
        if (b < 2) throw std::invalid_argument("gen_key: d_bits too small");
        Integer lo = Integer(1) << (b - 1);
        Integer span = Integer(1) << (b - 1);
        do {
            d = lo + rand_below(rng, span);
        } while (gcd(d, phi) != 1);
    } else {
        const Fraction& D = *spec.D_target;
        Integer num = pow_ui(D.get_num(), 4) * n;
        Integer den = pow_ui(D.get_den(), 4);
        d = iroot4(fdiv(num, den));  // floor(D n^(1/4))
        while (d > 2 && gcd(d, phi) != 1) d -= 1;
        if (gcd(d, phi) != 1) throw std::invalid_argument("gen_key: no invertible d near target");
    }

    auto e = modinv(d, phi);
    if (!e || *e <= 1) throw std::invalid_argument("gen_key: no usable public exponent");
    Integer k = (*e * d - 1) / phi;
    return RsaKeySet{n, *e, p, q, d, k, phi};
}

double SweepStats::mean_ratio() const {
    if (count == 0) return 0.0;
    return sum_ratio_scaled.get_d() / (1e6 * static_cast<double>(count));
}

Integer SweepStats::max_ratio_scaled(const Integer& n) const {
    if (max_den == 0) return 0;
    Integer sqrt_fp = isqrt(n * pow_ui(Integer(10), 12));  // 10^6 sqrt(n)
    return fdiv(max_num * sqrt_fp, max_den * max_den);
}

double SweepStats::max_ratio(const Integer& n) const {
    return max_ratio_scaled(n).get_d() / 1e6;
}

namespace {

struct WitnessSet {
    Integer rs;               // always valid
    Integer r, s;
    std::optional<Integer> st, t;
    std::optional<Integer> rps, rp, sp;
};

// witnesses of k/d at the anchor m of the cf expansion of e/n
std::optional<WitnessSet> witnesses_at_anchor(const Integer& n, const Integer& e,
                                              const Integer& k, const Integer& d) {
    CFExpansion cf(make_fraction(e, n));
    auto m_opt = locate_attack_m(cf, n, e, constants::k2_122);
    if (!m_opt) return std::nullopt;
    long m = *m_opt;
    const long J = cf.last_index();

    WitnessSet w;
    int det = (m % 2 == 0) ? 1 : -1;
    w.r = det * (k * cf.q(m) - d * cf.p(m));
    w.s = -det * (k * cf.q(m + 1) - d * cf.p(m + 1));
    if (w.r < 0 || w.s < 0) return std::nullopt;  // k/d outside the anchored cone
    w.rs = w.r * w.s;

    if (m + 2 <= J) {
        Integer t = w.s * cf.a(m + 2) - w.r;
        if (t >= 0) {
            w.t = t;
            w.st = w.s * t;
        }
    }
    if (m + 3 <= J) {
        int det2 = ((m + 2) % 2 == 0) ? 1 : -1;
        Integer rp = det2 * (k * cf.q(m + 2) - d * cf.p(m + 2));
        Integer sp = -det2 * (k * cf.q(m + 3) - d * cf.p(m + 3));
        if (rp >= 0 && sp >= 0) {
            w.rp = rp;
            w.sp = sp;
            w.rps = rp * sp;
        }
    }
    return w;
}

SweepStats run_sweep(const Integer& n, const Integer& p, const Integer& q,
                     const Integer& d_from, const Integer& d_to,
                     bool take_min, const SweepRowSink& sink) {
    if (p * q != n) throw std::invalid_argument("sweep: p*q != n");
    if (d_from < 2 || d_to < d_from) throw std::invalid_argument("sweep: bad d range");
    Integer phi = (p - 1) * (q - 1);
    Integer sqrt_fp = isqrt(n * pow_ui(Integer(10), 12));  // 10^6 sqrt(n)

    SweepStats stats;
    for (Integer d = d_from; d <= d_to; ++d) {
        if (gcd(d, phi) != 1) { ++stats.skipped; continue; }
        auto e = modinv(d, phi);
        Integer k = (*e * d - 1) / phi;
        auto w = witnesses_at_anchor(n, *e, k, d);
        if (!w) { ++stats.skipped; continue; }

        Integer product = w->rs;
        Family fam = Family::rs_plus;
        Integer c1 = w->r, c2 = w->s;
        if (take_min) {
            if (w->st && *w->st < product) {
                product = *w->st; fam = Family::st_minus; c1 = w->s; c2 = *w->t;
            }
            if (w->rps && *w->rps < product) {
                product = *w->rps; fam = Family::rs_prime; c1 = *w->rp; c2 = *w->sp;
            }
        }

        Integer ratio_scaled = fdiv(product * sqrt_fp, d * d);
        ++stats.count;
        stats.sum_ratio_scaled += ratio_scaled;
        // ratio > 1000 iff product^2 n > 10^6 d^4, exactly
        if (product * product * n > 1000000 * pow_ui(d, 4)) ++stats.over_threshold;
        // max via cross-multiplied comparison (sqrt(n) cancels)
        if (stats.max_den == 0 ||
            product * stats.max_den * stats.max_den > stats.max_num * d * d) {
            stats.max_num = product;
            stats.max_den = d;
            stats.argmax_d = d;
        }
        if (sink) sink(SweepRow{d, fam, c1, c2, ratio_scaled});
    }
    return stats;
}

}  // namespace

SweepStats vvt_sweep(const Integer& n, const Integer& p, const Integer& q,
                     const Integer& d_from, const Integer& d_to, const SweepRowSink& sink) {
    return run_sweep(n, p, q, d_from, d_to, /*take_min=*/false, sink);
}

SweepStats variant_sweep(const Integer& n, const Integer& p, const Integer& q,
                         const Integer& d_from, const Integer& d_to, const SweepRowSink& sink) {
    return run_sweep(n, p, q, d_from, d_to, /*take_min=*/true, sink);
}

double QuotientHistogram::frequency(unsigned long x) const {
    if (total == 0) return 0.0;
    auto it = counts.find(x);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

double QuotientHistogram::tail_frequency(unsigned long x) const {
    if (total == 0) return 0.0;
    std::uint64_t acc = 0;
    for (auto it = counts.lower_bound(x); it != counts.end(); ++it) acc += it->second;
    return static_cast<double>(acc) / static_cast<double>(total);
}

double QuotientHistogram::reference_tail(unsigned long x) {
    return std::log2(1.0 + 1.0 / static_cast<double>(x));
}

QuotientHistogram quotient_distribution(const std::vector<CFExpansion>& sample) {
    if (sample.empty()) throw std::invalid_argument("quotient_distribution: empty sample");
    QuotientHistogram h;
    for (const CFExpansion& cf : sample) {
        for (std::size_t i = 1; i < cf.size(); ++i) {
            const Integer& a = cf.quotients()[i];
            unsigned long v = mpz_fits_ulong_p(a.get_mpz_t())
                                  ? mpz_get_ui(a.get_mpz_t())
                                  : static_cast<unsigned long>(-1);
            ++h.counts[v];
            ++h.total;
        }
    }
    return h;
}

}  // namespace cfrsa
