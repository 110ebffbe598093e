#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cfrsa/integer.hpp"

namespace cfrsa {

/// Continued fraction expansion of a rational, in canonical form (the last
/// partial quotient is >= 2 whenever there is more than one), together with
/// the eagerly computed convergent table p_i/q_i.
///
/// Indices -1 and -2 follow the convention p_{-1}=1, q_{-1}=0, p_{-2}=0,
/// q_{-2}=1, so that p_i = a_i p_{i-1} + p_{i-2} holds from i = 0.
class CFExpansion {
public:
    explicit CFExpansion(const Fraction& x);

    const std::vector<Integer>& quotients() const { return quotients_; }
    const Fraction& value() const { return value_; }

    /// Number of partial quotients (valid convergent indices are 0..size()-1).
    std::size_t size() const { return quotients_.size(); }
    long last_index() const { return static_cast<long>(size()) - 1; }

    const Integer& a(long i) const;
    const Integer& p(long i) const;  // i >= -2
    const Integer& q(long i) const;  // i >= -2

private:
    std::vector<Integer> quotients_;
    std::vector<Integer> p_, q_;  // p_[i+2] is p_i
    Fraction value_;
};

CFExpansion cf_expand(const Fraction& x);

/// The convergent p_i/q_i, in lowest terms. Throws std::out_of_range for an
/// invalid index.
Fraction convergent(const CFExpansion& cf, std::size_t i);

/// (r*p_{m+1} + sign*s*p_m) / (r*q_{m+1} + sign*s*q_m), reduced. m = -1 is
/// allowed through the p_{-1}, q_{-1} convention. Throws std::domain_error
/// if the resulting denominator is not positive.
Fraction semiconvergent(const CFExpansion& cf, long m, const Integer& r,
                        const Integer& s, int sign);

}  // namespace cfrsa
