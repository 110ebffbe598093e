#pragma once

#include <utility>
#include <vector>

#include "cfrsa/cf.hpp"
#include "cfrsa/integer.hpp"

namespace cfrsa {

/// A solution (a, b) of |alpha - a/b| < c/b^2 together with its witness
/// representation (a, b) = (r*p_{m+1} + sign*s*p_m, r*q_{m+1} + sign*s*q_m).
struct ApproxSolution {
    Integer a;
    Integer b;
    long m = 0;  // >= -1
    Integer r;
    Integer s;
    int sign = +1;
};

struct ApproxQuery {
    Fraction alpha;
    Fraction c;      // > 0
    Integer b_max;   // >= 1
};

/// All coprime pairs (a, b), 1 <= b <= b_max, with |alpha - a/b| < c/b^2
/// (strict), each carrying its witness. Sorted by (b, a), no duplicates.
std::vector<ApproxSolution> enumerate_solutions(const ApproxQuery& query);

/// Independent oracle: direct scan over b = 1..b_max testing the few
/// integers a nearest to b*alpha, with exact comparisons throughout.
std::vector<std::pair<Integer, Integer>> brute_force_solutions(const ApproxQuery& query);

/// Witness for a known solution, built by the constructive argument: m is
/// the extreme index with a/b on the far side of p_m/q_m, (r, s) solved from
/// the unimodular system, re-expressed in the minus form at level m+1 when
/// r*s >= 2c. Throws std::invalid_argument if (a, b) is not a solution.
ApproxSolution classify_solution(const Fraction& alpha, const Integer& a,
                                 const Integer& b, const Fraction& c);

/// The named solution shapes for c <= 2.
enum class WorleyForm {
    convergent,   // p_m / q_m
    plus_1_1,     // (p_{m+1} + p_m) / (q_{m+1} + q_m)
    minus_1_1,    // (p_{m+1} - p_m) / (q_{m+1} - q_m)
    plus_2_1,     // (2p_{m+1} + p_m) / ...
    minus_2_1,    // (2p_{m+1} - p_m) / ...
    plus_3_1,     // (3p_{m+1} + p_m) / ...
    plus_1_2,     // (p_{m+1} + 2p_m) / ...
    minus_1_2,    // (p_{m+1} - 2p_m) / ...
    minus_1_3,    // (p_{m+1} - 3p_m) / ...
};

const char* worley_form_name(WorleyForm f);

/// Maps a witness produced with c <= 2 onto one of the listed forms. Throws
/// std::logic_error for an unmappable witness (test failure signal).
WorleyForm worley_form_check(const ApproxSolution& sol);

}  // namespace cfrsa
