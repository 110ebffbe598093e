#include "cfrsa/integer.hpp"

#include <array>
#include <random>

namespace cfrsa {

int cmp_with_sqrt_scaled(const Fraction& lhs, const Fraction& coeff, const Integer& n) {
    if (coeff <= 0) throw std::domain_error("cmp_with_sqrt_scaled: coeff must be positive");
    if (n == 0) return sgn(lhs);
    if (lhs <= 0) return -1;  // coeff*sqrt(n) > 0
    // lhs^2 vs coeff^2 * n, cross-multiplied to integers
    Integer left = lhs.get_num() * lhs.get_num() * coeff.get_den() * coeff.get_den();
    Integer right = coeff.get_num() * coeff.get_num() * n * lhs.get_den() * lhs.get_den();
    return cmp(left, right);
}

Fraction sqrt_lower_bound(const Integer& n, unsigned scale_digits) {
    Integer scale = pow_ui(Integer(10), scale_digits);
    Integer t = isqrt(n * scale * scale);
    return make_fraction(t, scale);
}

Fraction sqrt_upper_bound(const Integer& n, unsigned scale_digits) {
    Integer scale = pow_ui(Integer(10), scale_digits);
    Integer t = isqrt(n * scale * scale) + 1;
    return make_fraction(t, scale);
}

namespace {

bool miller_rabin_round(const Integer& n, const Integer& n_minus_1,
                        const Integer& odd_part, unsigned long two_exp,
                        const Integer& base) {
    Integer x = modpow(base, odd_part, n);
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long i = 1; i < two_exp; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

}  // namespace

bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    static const std::array<unsigned long, 12> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Integer n_minus_1 = n - 1;
    Integer odd_part = n_minus_1;
    unsigned long two_exp = mpz_scan1(n_minus_1.get_mpz_t(), 0);
    odd_part >>= two_exp;

    // deterministic witness set suffices below 2^64
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        for (unsigned long w : small) {
            if (!miller_rabin_round(n, n_minus_1, odd_part, two_exp, Integer(w))) return false;
        }
        return true;
    }
    for (unsigned long w : small) {
        if (!miller_rabin_round(n, n_minus_1, odd_part, two_exp, Integer(w))) return false;
    }
    // extra rounds with bases derived deterministically from n
    std::mt19937_64 rng(mpz_get_ui(n.get_mpz_t()) ^ 0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < 28; ++i) {
        Integer base = Integer(rng()) % (n - 3) + 2;
        if (!miller_rabin_round(n, n_minus_1, odd_part, two_exp, base)) return false;
    }
    return true;
}

}  // namespace cfrsa
