#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfrsa/attack.hpp"
#include "cfrsa/cf.hpp"
#include "cfrsa/integer.hpp"

namespace cfrsa {

struct RsaKeySet {
    Integer n, e, p, q, d, k, phi;
};

enum class Balance { two_p, eight_p };  // q in (p, 2p) vs (p, 8p)

struct KeyGenSpec {
    unsigned modulus_bits = 64;
    // exactly one of the following three
    std::optional<Integer> d_exact;
    std::optional<unsigned> d_bits;
    std::optional<Fraction> D_target;   // d ~ D * n^(1/4)
    Balance balance = Balance::two_p;
    std::uint64_t seed = 0;
    // test fixtures may pin the primes
    std::optional<Integer> p_forced, q_forced;
};

/// Deterministic key generation: identical spec -> identical key.
RsaKeySet gen_key(const KeyGenSpec& spec);

/// One row of a sweep: the witness for k/d at the attack's anchor index.
struct SweepRow {
    Integer d;
    Family family;
    Integer coeff1, coeff2;
    Integer ratio_scaled;   // ratio * 10^6, floored
};

struct SweepStats {
    std::uint64_t count = 0;           // d values actually swept
    std::uint64_t skipped = 0;         // gcd(d, phi) != 1 or no anchor m
    Integer sum_ratio_scaled = 0;      // sum of floor(ratio * 10^6)
    Integer max_num = 0, max_den = 1;  // max ratio as (product, d): product*sqrt(n)/d^2
    Integer argmax_d = 0;
    std::uint64_t over_threshold = 0;  // ratio > 1000, decided exactly

    double mean_ratio() const;
    double max_ratio(const Integer& n) const;
    Integer max_ratio_scaled(const Integer& n) const;  // * 10^6
};

using SweepRowSink = std::function<void(const SweepRow&)>;

/// For each d in [d_from, d_to] with gcd(d, phi) = 1: e = d^-1 mod phi and
/// the (r, s) witness of k/d at the anchor m; accumulates rs/D^2 where
/// D^2 = d^2/sqrt(n).
SweepStats vvt_sweep(const Integer& n, const Integer& p, const Integer& q,
                     const Integer& d_from, const Integer& d_to,
                     const SweepRowSink& sink = nullptr);

/// Same loop accumulating min(rs, st, r's') / D^2 over the three families.
SweepStats variant_sweep(const Integer& n, const Integer& p, const Integer& q,
                         const Integer& d_from, const Integer& d_to,
                         const SweepRowSink& sink = nullptr);

/// Empirical distribution of the partial quotients a_i, i >= 1.
struct QuotientHistogram {
    std::map<unsigned long, std::uint64_t> counts;  // huge quotients clamp to ULONG_MAX
    std::uint64_t total = 0;

    double frequency(unsigned long x) const;
    double tail_frequency(unsigned long x) const;      // empirical P(a_i >= x)
    static double reference_tail(unsigned long x);     // log2(1 + 1/x)
};

QuotientHistogram quotient_distribution(const std::vector<CFExpansion>& sample);

}  // namespace cfrsa
