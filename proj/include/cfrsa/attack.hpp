#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>

#include "cfrsa/cf.hpp"
#include "cfrsa/integer.hpp"

namespace cfrsa {

struct RsaPublicKey {
    Integer n;
    Integer e;
};

enum class Regime { balanced, wide };       // p<q<2p (2.122) vs p<q<8p (3.183)
enum class TestMode { phi_test, modpow_test, both };

struct AttackConfig {
    Regime regime = Regime::balanced;
    std::optional<Integer> d_bound;         // exactly one of d_bound / D_bound
    std::optional<Fraction> D_bound;        // D = d / n^(1/4)
    TestMode test_mode = TestMode::both;
    Integer modpow_witness = 2;
};

enum class Family { convergent, rs_plus, st_minus, rs_prime };

const char* family_name(Family f);

struct AttackOutcome {
    Integer d, k, p, q, phi;
    std::uint64_t steps = 0;
    std::string method;
    long m = 0;
    Family family = Family::convergent;
    Integer coeff1, coeff2;   // (r,s), (s,t) or (r',s') per family
    bool short_expansion_fallback = false;
};

/// phi = (b*e - 1)/a if exactly divisible, then (p+q)/2 from
/// n - phi + 1 and the perfect-square test on ((p+q)/2)^2 - n.
/// Returns (p, q, d=b) on success.
std::optional<std::tuple<Integer, Integer, Integer>>
phi_test(const RsaPublicKey& pub, const Integer& a, const Integer& b);

/// True iff M^(e*b) == M (mod n).
bool modpow_test(const RsaPublicKey& pub, const Integer& b, const Integer& M);

/// Classic attack: walk the convergents of e/n in order and test each
/// denominator. steps = number of convergents tested.
std::optional<AttackOutcome> wiener_attack(const RsaPublicKey& pub, const AttackConfig& cfg);

/// The smallest odd positive m with q_m * q_{m+1} > n*sqrt(n) / (4.244 e)
/// (2*C with C the regime constant). In the Wiener regime p_m/q_m = k/d.
/// Throws std::runtime_error if no such m exists in the expansion.
long locate_m_shortcut(const RsaPublicKey& pub, const AttackConfig& cfg);

/// Wiener's e/f refinement, f = n - floor(2*sqrt(n)) + 1: candidates for
/// k/d are the solutions of |e/f - a/b| < 2/b^2.
std::optional<AttackOutcome> wiener_f_attack(const RsaPublicKey& pub, const AttackConfig& cfg);

/// Verheul-van Tilborg: exhaust (r, s) semiconvergents of e/n anchored at
/// the largest odd m with p_m/q_m - e/n > C e/(n sqrt(n)).
std::optional<AttackOutcome> vvt_attack(const RsaPublicKey& pub, const AttackConfig& cfg);

/// The three-family search: (r,s) plus at m, (s,t) minus at m+1 and
/// (r',s') plus at m+2, interleaved in ascending coefficient-product order.
std::optional<AttackOutcome> variant_attack(const RsaPublicKey& pub, const AttackConfig& cfg);

// --- shared internals, exposed for the harness and tests ---

/// Largest odd m with p_m/q_m - e/n > C e/(n sqrt(n)); nullopt if none.
std::optional<long> locate_attack_m(const CFExpansion& cf, const Integer& n,
                                    const Integer& e, const Fraction& C);

/// Candidate-denominator budget resolved from the config.
struct BoundContext {
    Integer d_cap;                      // largest admissible denominator
    bool from_D;                        // true when D_bound was given
    Fraction D2;                        // D^2, exact (only when from_D)
    Integer d_cap4_num, d_cap4_den_n;   // d_cap^4 and n, for the d_bound form
    Integer n;

    static BoundContext resolve(const AttackConfig& cfg, const Integer& n);
    /// x < gamma * D^2, exactly.
    bool below_gamma_D2(const Integer& x, const Fraction& gamma) const;
    /// floor(sqrt(gamma) * D).
    Integer floor_sqrt_gamma_D(const Fraction& gamma) const;
};

}  // namespace cfrsa
