#pragma once

#include "cfrsa/integer.hpp"

namespace cfrsa::constants {

// The bound constants of the attacks, stored as exact rationals so that
// every comparison stays bit-exact.
inline const Fraction k2_122{2122, 1000};    // upper bound constant, p < q < 2p
inline const Fraction k3_183{3183, 1000};    // upper bound constant, p < q < 8p
inline const Fraction k4_244{4244, 1000};    // 2 * 2.122; rs and st search budget
inline const Fraction k0_122{122, 1000};     // 2.122 - 2; window width
inline const Fraction k0_061{61, 1000};      // 0.122 / 2
inline const Fraction k2_061{2061, 1000};    // sqrt(4.244) rounded up; r,t cap scale
inline const Fraction k0_3885{3885, 10000};  // r's' search budget
inline const Fraction k5_248{5248, 1000};    // pair-count bound scale
inline const Fraction k4_04{404, 100};       // wiener_f exponent reach
inline const Fraction k1_3{1, 3};            // classic Wiener bound d < n^(1/4)/3

}  // namespace cfrsa::constants
