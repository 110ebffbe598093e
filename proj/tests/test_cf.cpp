#include <random>
#include <vector>

#include "doctest.h"

#include "cfrsa/cf.hpp"

using namespace cfrsa;

namespace {

const Integer kN1("7978886869909");
const Integer kE1("3594320245477");
const Integer kE2("4603830998027");

std::vector<long> quotients_of(const CFExpansion& cf) {
    std::vector<long> out;
    for (const Integer& a : cf.quotients()) out.push_back(a.get_si());
    return out;
}

Fraction fold_back(const CFExpansion& cf) {
    long j = cf.last_index();
    Fraction acc(cf.a(j));
    for (long i = j - 1; i >= 0; --i) acc = Fraction(cf.a(i)) + 1 / acc;
    return acc;
}

}  // namespace

TEST_CASE("expansion of the first worked key") {
    CFExpansion cf(make_fraction(kE1, kN1));
    std::vector<long> want = {0, 2, 4, 1, 1, 4, 1,  2,  31, 21, 1,
                              3, 1, 16, 3, 1, 114, 10, 1,  4,  5, 1, 2};
    CHECK(quotients_of(cf) == want);
    CHECK(convergent(cf, 7) == make_fraction(141, 313));
    CHECK(convergent(cf, 0) == Fraction(0));
}

TEST_CASE("expansion of the second worked key") {
    CFExpansion cf(make_fraction(kE2, kN1));
    std::vector<long> want = {0, 1, 1, 2, 1, 2, 1, 18, 10, 1, 3, 3, 1,
                              6, 57, 2, 1, 2, 14, 7, 1, 2, 1, 4, 6, 2};
    CHECK(quotients_of(cf) == want);
    CHECK(convergent(cf, 8) == make_fraction(2825, 4896));
    CHECK(cf.q(6) == 26);
    CHECK(cf.q(7) == 487);
}

TEST_CASE("single step and canonical trailing fold") {
    CHECK(quotients_of(CFExpansion(make_fraction(1, 2))) == std::vector<long>{0, 2});
    CHECK(quotients_of(CFExpansion(make_fraction(5, 7))) == std::vector<long>{0, 1, 2, 2});
    CHECK(quotients_of(CFExpansion(Fraction(7))) == std::vector<long>{7});
    CFExpansion neg(make_fraction(-3, 2));
    CHECK(neg.a(0) == -2);  // floor convention
    CHECK(fold_back(neg) == make_fraction(-3, 2));
}

TEST_CASE("semiconvergents") {
    CFExpansion cf(make_fraction(kE2, kN1));
    CHECK(semiconvergent(cf, 5, 0, 1, +1) == make_fraction(11, 19));
    CHECK(semiconvergent(cf, 5, 1, 1, +1) == make_fraction(26, 45));
    // the minus form s*p_{m+2} - t*p_{m+1} written at level m+1
    Fraction v = semiconvergent(cf, 6, 12195, 77, -1);
    CHECK(v.get_den() == Integer("5936963"));
    CHECK(487 * 12195 - 26 * 77 == 5936963);
    CHECK_THROWS_AS(semiconvergent(cf, 5, 0, 0, +1), std::domain_error);
    CHECK_THROWS_AS(semiconvergent(cf, 0, 0, 1, -1), std::domain_error);  // den 0
    // m = -1 reaches the p_{-1} = 1, q_{-1} = 0 convention
    CHECK(semiconvergent(cf, -1, 1, 1, -1) == Fraction(-1));
}

TEST_CASE("isqrt") {
    CHECK(isqrt(Integer(16)) == 4);
    CHECK(isqrt(Integer(15)) == 3);
    CHECK(isqrt(Integer(0)) == 0);
    Integer t = isqrt(kN1);
    CHECK(t * t <= kN1);
    CHECK((t + 1) * (t + 1) > kN1);
    CHECK_THROWS_AS(isqrt(Integer(-1)), std::domain_error);
}

TEST_CASE("comparison against coeff*sqrt(n)") {
    CHECK(cmp_with_sqrt_scaled(Fraction(2), Fraction(1), 4) == 0);
    CHECK(cmp_with_sqrt_scaled(Fraction(3), Fraction(1), 8) > 0);
    Integer t = isqrt(kN1);
    CHECK(cmp_with_sqrt_scaled(Fraction(t), Fraction(1), kN1) <= 0);
    CHECK(cmp_with_sqrt_scaled(Fraction(t + 1), Fraction(1), kN1) > 0);
    // n is not a perfect square, so its floor root sits strictly below
    CHECK(t == 2824692);
    CHECK(cmp_with_sqrt_scaled(Fraction(2824692), Fraction(1), kN1) < 0);
    CHECK(sqrt_lower_bound(kN1) * sqrt_lower_bound(kN1) <= Fraction(kN1));
    CHECK(sqrt_upper_bound(kN1) * sqrt_upper_bound(kN1) > Fraction(kN1));
}

TEST_CASE("recurrence, determinant and convergent error bounds") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 500; ++iter) {
        Integer num = Integer(rng() >> (rng() % 40));
        Integer den = Integer(rng() >> (rng() % 40)) + 1;
        CFExpansion cf(make_fraction(num, den));
        long J = cf.last_index();
        if (J > 0) CHECK(cf.a(J) >= 2);
        CHECK(fold_back(cf) == cf.value());
        for (long i = 0; i <= J; ++i) {
            CHECK(cf.p(i) == cf.a(i) * cf.p(i - 1) + cf.p(i - 2));
            CHECK(cf.q(i) == cf.a(i) * cf.q(i - 1) + cf.q(i - 2));
            int det = (i % 2 == 0) ? -1 : 1;  // (-1)^(i-1)
            CHECK(cf.p(i) * cf.q(i - 1) - cf.p(i - 1) * cf.q(i) == det);
            CHECK(gcd(cf.p(i), cf.q(i)) == 1);
            if (i + 1 <= J) {
                Fraction err = abs(cf.value() - make_fraction(cf.p(i), cf.q(i)));
                CHECK(err > make_fraction(1, cf.q(i) * (cf.q(i + 1) + cf.q(i))));
                // equality at the next-to-last index of a rational expansion
                if (i + 1 < J) {
                    CHECK(err < make_fraction(1, cf.q(i) * cf.q(i + 1)));
                } else {
                    CHECK(err == make_fraction(1, cf.q(i) * cf.q(i + 1)));
                }
            }
        }
    }
}
