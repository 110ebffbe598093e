#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "cfrsa/constants.hpp"
#include "cfrsa/keygen.hpp"

using namespace cfrsa;

namespace {

const Integer kN1("7978886869909");
const Integer kP1("2323259");
const Integer kQ1("3434351");

}  // namespace

TEST_CASE("forced primes reproduce the first worked key") {
    KeyGenSpec spec;
    spec.p_forced = kP1;
    spec.q_forced = kQ1;
    spec.d_exact = 313;
    RsaKeySet key = gen_key(spec);
    CHECK(key.n == kN1);
    CHECK(key.e == Integer("3594320245477"));
    CHECK(key.d == 313);
    CHECK(key.k == 141);
    CHECK((key.e * key.d) % key.phi == 1);
}

TEST_CASE("determinism and balance") {
    KeyGenSpec spec;
    spec.modulus_bits = 48;
    spec.d_bits = 12;
    spec.seed = 42;
    RsaKeySet a = gen_key(spec);
    RsaKeySet b = gen_key(spec);
    CHECK(a.n == b.n);
    CHECK(a.d == b.d);
    CHECK(a.p < a.q);
    CHECK(a.q < 2 * a.p);
    CHECK(a.p * a.q == a.n);
    CHECK((a.e * a.d) % a.phi == 1);
    CHECK(a.e < a.n);

    spec.seed = 43;
    CHECK(gen_key(spec).n != a.n);

    spec.balance = Balance::eight_p;
    RsaKeySet w = gen_key(spec);
    CHECK(w.q < 8 * w.p);
}

TEST_CASE("spec validation") {
    KeyGenSpec spec;
    CHECK_THROWS_AS(gen_key(spec), std::invalid_argument);  // no d mode
    spec.d_bits = 12;
    spec.d_exact = 313;
    CHECK_THROWS_AS(gen_key(spec), std::invalid_argument);  // two d modes
    KeyGenSpec bad;
    bad.p_forced = kP1;
    bad.q_forced = kQ1;
    bad.d_exact = 5;  // 5 divides phi(n) here? ensure incompatible d errors
    Integer phi = (kP1 - 1) * (kQ1 - 1);
    if (gcd(Integer(5), phi) != 1) {
        CHECK_THROWS_AS(gen_key(bad), std::invalid_argument);
    }
}

TEST_CASE("sweep rows rebuild the swept denominator") {
    Integer phi = (kP1 - 1) * (kQ1 - 1);
    std::vector<SweepRow> rows;
    SweepStats st = variant_sweep(kN1, kP1, kQ1, 1000, 2000,
                                  [&rows](const SweepRow& r) { rows.push_back(r); });
    CHECK(st.count == rows.size());
    CHECK(st.count + st.skipped == 1001);
    Integer sqrt_fp = isqrt(kN1 * pow_ui(Integer(10), 12));
    for (const auto& row : rows) {
        CHECK(gcd(row.d, phi) == 1);
        Integer e = *modinv(row.d, phi);
        Integer k = (e * row.d - 1) / phi;
        CFExpansion cf(make_fraction(e, kN1));
        auto m = locate_attack_m(cf, kN1, e, constants::k2_122);
        REQUIRE(m.has_value());
        Integer den;
        switch (row.family) {
            case Family::rs_plus:
                den = row.coeff1 * cf.q(*m + 1) + row.coeff2 * cf.q(*m);
                break;
            case Family::st_minus:
                den = row.coeff1 * cf.q(*m + 2) - row.coeff2 * cf.q(*m + 1);
                break;
            case Family::rs_prime:
                den = row.coeff1 * cf.q(*m + 3) + row.coeff2 * cf.q(*m + 2);
                break;
            default:
                den = -1;
        }
        CHECK(den == row.d);
        CHECK(row.ratio_scaled ==
              fdiv(row.coeff1 * row.coeff2 * sqrt_fp, row.d * row.d));
        (void)k;
    }
}

TEST_CASE("sweep stats match an independent per-row accumulation") {
    std::vector<SweepRow> rows;
    SweepStats st = vvt_sweep(kN1, kP1, kQ1, 1000, 2000,
                              [&rows](const SweepRow& r) { rows.push_back(r); });
    Integer sum = 0, best = -1, best_d = 0;
    std::uint64_t over = 0;
    for (const auto& row : rows) {
        sum += row.ratio_scaled;
        if (row.ratio_scaled > best) {
            best = row.ratio_scaled;
            best_d = row.d;
        }
        if (row.ratio_scaled > 1000000000) ++over;
    }
    CHECK(st.sum_ratio_scaled == sum);
    CHECK(st.argmax_d == best_d);
    CHECK(st.over_threshold == over);
    CHECK(st.max_ratio_scaled(kN1) == best);
    CHECK(st.mean_ratio() >= 0.0);
    CHECK(st.max_ratio(kN1) >= st.mean_ratio());
}

TEST_CASE("a convergent k/d contributes zero to the three-family minimum") {
    // d = 313 for the first key: k/d = p_7/q_7. The anchor sits two levels
    // below, so the plus witness is (a_7, 1) and the minus witness (1, 0)
    // with product zero; the minimum over families is therefore 0.
    bool seen = false;
    variant_sweep(kN1, kP1, kQ1, 313, 313, [&seen](const SweepRow& r) {
        seen = true;
        CHECK(r.family == Family::st_minus);
        CHECK(r.coeff1 * r.coeff2 == 0);
        CHECK(r.ratio_scaled == 0);
    });
    CHECK(seen);
    vvt_sweep(kN1, kP1, kQ1, 313, 313, [](const SweepRow& r) {
        CHECK(r.family == Family::rs_plus);
        CHECK(r.coeff1 == 2);  // a_{m+2} for this expansion
        CHECK(r.coeff2 == 1);
    });
}

TEST_CASE("partial quotient distribution") {
    auto h = quotient_distribution({CFExpansion(make_fraction(1, 2))});
    CHECK(h.total == 1);
    CHECK(h.frequency(2) == 1.0);

    std::mt19937_64 rng(5);
    std::vector<CFExpansion> sample;
    for (int i = 0; i < 10000; ++i) {
        Integer num(rng()), den(rng());
        if (den == 0) den = 1;
        sample.push_back(CFExpansion(make_fraction(num, den)));
    }
    auto big = quotient_distribution(sample);
    CHECK(big.frequency(1) == doctest::Approx(0.415).epsilon(0.08));
    CHECK(big.frequency(2) == doctest::Approx(0.170).epsilon(0.08));
    CHECK(big.frequency(3) == doctest::Approx(0.093).epsilon(0.10));
    CHECK(big.frequency(4) == doctest::Approx(0.059).epsilon(0.12));
    CHECK(big.tail_frequency(10) ==
          doctest::Approx(QuotientHistogram::reference_tail(10)).epsilon(0.05));
    CHECK(QuotientHistogram::reference_tail(10) == doctest::Approx(std::log2(1.1)));
}
