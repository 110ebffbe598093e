#include <random>

#include "doctest.h"

#include "cfrsa/attack.hpp"
#include "cfrsa/constants.hpp"
#include "cfrsa/keygen.hpp"

using namespace cfrsa;

namespace {

const Integer kN1("7978886869909");
const Integer kE1("3594320245477");
const Integer kE2("4603830998027");
const RsaPublicKey kPub1{kN1, kE1};
const RsaPublicKey kPub2{kN1, kE2};

AttackConfig with_d_bound(const Integer& d_bound) {
    AttackConfig cfg;
    cfg.d_bound = d_bound;
    return cfg;
}

void check_outcome_valid(const AttackOutcome& out, const RsaPublicKey& pub) {
    CHECK(out.p * out.q == pub.n);
    CHECK(out.p < out.q);
    CHECK((pub.e * out.d - 1) % out.phi == 0);
    CHECK(out.steps >= 1);
}

}  // namespace

TEST_CASE("phi recovery test") {
    auto hit = phi_test(kPub1, 141, 313);
    REQUIRE(hit.has_value());
    auto [p, q, d] = *hit;
    CHECK(p == 2323259);
    CHECK(q == 3434351);
    CHECK(d == 313);
    CHECK((p + q) / 2 == 2878805);
    CHECK((q - p) / 2 == 555546);
    CHECK_FALSE(phi_test(kPub1, 50, 111).has_value());
    CHECK_FALSE(phi_test(kPub1, 1, 1).has_value());
}

TEST_CASE("modular exponentiation test") {
    CHECK(modpow_test(kPub1, 313, 2));
    CHECK_FALSE(modpow_test(kPub1, 111, 2));
}

TEST_CASE("convergent walk on the first worked key") {
    auto out = wiener_attack(kPub1, with_d_bound(561));
    REQUIRE(out.has_value());
    CHECK(out->d == 313);
    CHECK(out->k == 141);
    CHECK(out->p == 2323259);
    CHECK(out->q == 3434351);
    CHECK(out->steps == 8);
    CHECK(out->m == 7);
    check_outcome_valid(*out, kPub1);
}

TEST_CASE("convergent walk fails on the second worked key") {
    CHECK_FALSE(wiener_attack(kPub2, with_d_bound(10000000)).has_value());
}

TEST_CASE("smallest-odd-m shortcut") {
    AttackConfig cfg = with_d_bound(561);
    long m = locate_m_shortcut(kPub1, cfg);
    CHECK(m == 7);
    CFExpansion cf(make_fraction(kE1, kN1));
    CHECK(make_fraction(cf.p(m), cf.q(m)) == make_fraction(141, 313));
}

TEST_CASE("e/f refinement recovers the first key") {
    auto out = wiener_f_attack(kPub1, with_d_bound(561));
    REQUIRE(out.has_value());
    CHECK(out->d == 313);
    check_outcome_valid(*out, kPub1);
}

TEST_CASE("bounded semiconvergent search, both worked keys") {
    auto out1 = vvt_attack(kPub1, with_d_bound(561));
    REQUIRE(out1.has_value());
    CHECK(out1->d == 313);
    check_outcome_valid(*out1, kPub1);

    auto out2 = vvt_attack(kPub2, with_d_bound(10000000));
    REQUIRE(out2.has_value());
    CHECK(out2->d == 5936963);
    CHECK(out2->m == 5);
    CHECK(out2->coeff1 == 219433);
    CHECK(out2->coeff2 == 12195);
    check_outcome_valid(*out2, kPub2);
}

TEST_CASE("three-family search, both worked keys") {
    auto out1 = variant_attack(kPub1, with_d_bound(561));
    REQUIRE(out1.has_value());
    CHECK(out1->d == 313);
    check_outcome_valid(*out1, kPub1);

    auto out2 = variant_attack(kPub2, with_d_bound(10000000));
    REQUIRE(out2.has_value());
    CHECK(out2->d == 5936963);
    CHECK(out2->m == 5);
    CHECK(out2->family == Family::st_minus);
    CHECK(out2->coeff1 == 12195);
    CHECK(out2->coeff2 == 77);
    check_outcome_valid(*out2, kPub2);
    // the two searches agree on d whenever both succeed
    CHECK(out2->d == vvt_attack(kPub2, with_d_bound(10000000))->d);
}

TEST_CASE("second key denominators come from the three family bases") {
    // 26r + 19s, 487s - 26t or 4896r' + 487s'
    CHECK(26 * 219433 + 19 * 12195 == 5936963);
    CHECK(487 * 12195 - 26 * 77 == 5936963);
    CFExpansion cf(make_fraction(kE2, kN1));
    CHECK(cf.q(5) == 19);
    CHECK(cf.q(6) == 26);
    CHECK(cf.q(7) == 487);
    CHECK(cf.q(8) == 4896);
}

TEST_CASE("anchor index location") {
    CFExpansion cf(make_fraction(kE2, kN1));
    auto m = locate_attack_m(cf, kN1, kE2, constants::k2_122);
    REQUIRE(m.has_value());
    CHECK(*m == 5);
}

TEST_CASE("config resolution") {
    AttackConfig cfg;
    cfg.D_bound = Fraction(20);
    auto ctx = BoundContext::resolve(cfg, kN1);
    // d_cap = floor(20 * n^(1/4))
    Integer want = iroot4(pow_ui(Integer(20), 4) * kN1);
    CHECK(ctx.d_cap == want);
    CHECK(ctx.below_gamma_D2(Integer(100), Fraction(1)));

    AttackConfig bad;
    CHECK_THROWS_AS(BoundContext::resolve(bad, kN1), std::invalid_argument);
    bad.d_bound = 100;
    bad.D_bound = Fraction(1);
    CHECK_THROWS_AS(BoundContext::resolve(bad, kN1), std::invalid_argument);
}

TEST_CASE("attacks on generated keys") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        KeyGenSpec spec;
        spec.modulus_bits = 64;
        spec.D_target = make_fraction(25, 100);
        spec.seed = seed;
        RsaKeySet key = gen_key(spec);
        RsaPublicKey pub{key.n, key.e};
        AttackConfig cfg;
        cfg.D_bound = make_fraction(1, 3);

        auto w = wiener_attack(pub, cfg);
        REQUIRE(w.has_value());
        CHECK(w->d == key.d);
        auto v = variant_attack(pub, cfg);
        REQUIRE(v.has_value());
        CHECK(v->d == key.d);
    }
}
