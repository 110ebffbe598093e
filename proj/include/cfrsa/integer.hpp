#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cfrsa {

// Arbitrary-precision signed integer and exact rational. Fractions are kept
// canonical: positive denominator, numerator and denominator coprime.
using Integer = mpz_class;
using Fraction = mpq_class;

inline Fraction make_fraction(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("fraction with zero denominator");
    Fraction f(num, den);
    f.canonicalize();
    return f;
}

/// Floor square root: the unique t with t*t <= n < (t+1)*(t+1).
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Floor fourth root.
inline Integer iroot4(const Integer& n) {
    if (n < 0) throw std::domain_error("iroot4 of negative integer");
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), 4);
    return r;
}

/// Sign of lhs - coeff*sqrt(n), decided exactly by cross-multiplication and
/// squaring (coeff > 0, n >= 0; no floating point anywhere).
int cmp_with_sqrt_scaled(const Fraction& lhs, const Fraction& coeff, const Integer& n);

/// Rational lower/upper bounds on sqrt(n) with absolute error below
/// 10^-scale_digits. Used to widen search windows safely.
Fraction sqrt_lower_bound(const Integer& n, unsigned scale_digits = 6);
Fraction sqrt_upper_bound(const Integer& n, unsigned scale_digits = 6);

inline Integer modpow(const Integer& base, const Integer& exp, const Integer& mod) {
    if (exp < 0) throw std::domain_error("negative exponent");
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline std::optional<Integer> modinv(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Floor division (toward negative infinity), matching the convention used
/// for partial quotients.
inline Integer fdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer cdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer pow_ui(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Miller-Rabin probable-prime test. Deterministic witness set below 2^64,
/// witnesses derived deterministically from n above it.
bool is_probable_prime(const Integer& n);

}  // namespace cfrsa
