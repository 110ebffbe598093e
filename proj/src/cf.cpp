#include "cfrsa/cf.hpp"

#include <stdexcept>

namespace cfrsa {

CFExpansion::CFExpansion(const Fraction& x) : value_(x) {
    value_.canonicalize();
    Integer num = value_.get_num();
    Integer den = value_.get_den();
    if (den < 1) throw std::domain_error("cf_expand: denominator must be >= 1");

    while (den != 0) {
        Integer a = fdiv(num, den);
        quotients_.push_back(a);
        Integer rem = num - a * den;
        num = den;
        den = rem;
    }
    // canonical form: fold a trailing 1 (the Euclidean loop only produces it
    // for inputs like [a0; 1], which cannot arise here, but keep the guard)
    if (quotients_.size() > 1 && quotients_.back() == 1) {
        quotients_.pop_back();
        quotients_.back() += 1;
    }

    p_.reserve(quotients_.size() + 2);
    q_.reserve(quotients_.size() + 2);
    p_ = {0, 1};  // p_{-2}, p_{-1}
    q_ = {1, 0};
    for (std::size_t i = 0; i < quotients_.size(); ++i) {
        p_.push_back(quotients_[i] * p_[i + 1] + p_[i]);
        q_.push_back(quotients_[i] * q_[i + 1] + q_[i]);
    }
}

const Integer& CFExpansion::a(long i) const {
    if (i < 0 || i > last_index()) throw std::out_of_range("partial quotient index");
    return quotients_[static_cast<std::size_t>(i)];
}

const Integer& CFExpansion::p(long i) const {
    if (i < -2 || i > last_index()) throw std::out_of_range("convergent index");
    return p_[static_cast<std::size_t>(i + 2)];
}

const Integer& CFExpansion::q(long i) const {
    if (i < -2 || i > last_index()) throw std::out_of_range("convergent index");
    return q_[static_cast<std::size_t>(i + 2)];
}

CFExpansion cf_expand(const Fraction& x) { return CFExpansion(x); }

Fraction convergent(const CFExpansion& cf, std::size_t i) {
    if (i >= cf.size()) throw std::out_of_range("convergent index");
    long j = static_cast<long>(i);
    return make_fraction(cf.p(j), cf.q(j));
}

Fraction semiconvergent(const CFExpansion& cf, long m, const Integer& r,
                        const Integer& s, int sign) {
    if (m < -1 || m + 1 > cf.last_index()) throw std::out_of_range("semiconvergent index");
    if (r < 0 || s < 0 || (r == 0 && s == 0))
        throw std::domain_error("semiconvergent: need r, s >= 0, not both zero");
    if (sign != 1 && sign != -1) throw std::domain_error("semiconvergent: sign must be +-1");
    Integer num = r * cf.p(m + 1) + sign * s * cf.p(m);
    Integer den = r * cf.q(m + 1) + sign * s * cf.q(m);
    if (den <= 0) throw std::domain_error("semiconvergent: nonpositive denominator");
    return make_fraction(num, den);
}

}  // namespace cfrsa
