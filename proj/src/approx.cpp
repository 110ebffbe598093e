#include "cfrsa/approx.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cfrsa {

namespace {

bool satisfies(const Fraction& alpha, const Integer& a, const Integer& b, const Fraction& c) {
    Fraction diff = alpha - make_fraction(a, b);
    Fraction bound = c / Fraction(b * b);
    return abs(diff) < bound;
}

// largest integer strictly below 2c in the r*s sense is not needed; we just
// test r*s < 2c exactly
bool product_ok(const Integer& r, const Integer& s, const Fraction& two_c) {
    return Fraction(r * s) < two_c;
}

}  // namespace

std::vector<std::pair<Integer, Integer>> brute_force_solutions(const ApproxQuery& query) {
    if (query.c <= 0 || query.b_max < 1) throw std::invalid_argument("invalid query");
    std::vector<std::pair<Integer, Integer>> out;
    for (Integer b = 1; b <= query.b_max; ++b) {
        // |b*alpha - a| < c/b, so a runs over an interval of length 2c/b
        Fraction center = query.alpha * Fraction(b);
        Fraction radius = query.c / Fraction(b);
        Fraction lo = center - radius;
        Fraction hi = center + radius;
        Integer a_lo = cdiv(lo.get_num(), lo.get_den());
        Integer a_hi = fdiv(hi.get_num(), hi.get_den());
        for (Integer a = a_lo; a <= a_hi; ++a) {
            if (gcd(a, b) != 1) continue;
            if (satisfies(query.alpha, a, b, query.c)) out.emplace_back(a, b);
        }
    }
    return out;
}

ApproxSolution classify_solution(const Fraction& alpha, const Integer& a_in,
                                 const Integer& b_in, const Fraction& c) {
    Integer a = a_in, b = b_in;
    if (b < 1 || gcd(a, b) != 1) throw std::invalid_argument("classify_solution: (a,b) not a reduced pair");
    if (!satisfies(alpha, a, b, c)) throw std::invalid_argument("classify_solution: not a solution");

    CFExpansion cf(alpha);
    const long J = cf.last_index();
    Fraction ab = make_fraction(a, b);
    Fraction two_c = c * 2;

    auto solve_at = [&](long m) -> std::pair<Integer, Integer> {
        // a = r p_{m+1} + s p_m, b = r q_{m+1} + s q_m, by unimodularity
        int det = (m % 2 == 0) ? 1 : -1;  // p_{m+1} q_m - p_m q_{m+1} = (-1)^m
        Integer r = det * (a * cf.q(m) - b * cf.p(m));
        Integer s = -det * (a * cf.q(m + 1) - b * cf.p(m + 1));
        return {r, s};
    };

    if (ab == cf.value()) {
        // alpha itself: the terminal convergent p_J/q_J
        return {a, b, J - 1, Integer(1), Integer(0), +1};
    }

    long m;
    if (ab > cf.value()) {
        // largest odd m with a/b <= p_m/q_m (odd convergents decrease to alpha)
        m = -1;
        for (long i = 1; i <= J; i += 2) {
            if (make_fraction(cf.p(i), cf.q(i)) >= ab) m = i; else break;
        }
    } else {
        if (ab < Fraction(cf.p(0))) {
            // below the integer part: minus case through p_{-1} = 1, q_{-1} = 0
            Integer r = b;
            Integer s = b * cf.p(0) - a;
            return {a, b, -1, r, s, -1};
        }
        // largest even m with p_m/q_m <= a/b
        m = 0;
        for (long i = 2; i <= J; i += 2) {
            if (make_fraction(cf.p(i), cf.q(i)) <= ab) m = i; else break;
        }
    }

    auto [r, s] = solve_at(m);
    if (r < 0 || s < 0) throw std::logic_error("classify_solution: negative witness coefficients");

    if (m + 2 > J) {
        // rational-alpha terminal family; here r*s < c already
        if (!product_ok(r, s, two_c)) throw std::logic_error("classify_solution: terminal witness too large");
        return {a, b, m, r, s, +1};
    }
    if (product_ok(r, s, two_c)) return {a, b, m, r, s, +1};

    Integer t = s * cf.a(m + 2) - r;
    if (t < 1 || !product_ok(s, t, two_c))
        throw std::logic_error("classify_solution: no small witness");
    return {a, b, m + 1, s, t, -1};
}

std::vector<ApproxSolution> enumerate_solutions(const ApproxQuery& query) {
    if (query.c <= 0 || query.b_max < 1) throw std::invalid_argument("invalid query");
    CFExpansion cf(query.alpha);
    const long J = cf.last_index();
    const Fraction two_c = query.c * 2;

    std::map<std::pair<Integer, Integer>, ApproxSolution> found;  // keyed by (b, a)

    auto consider = [&](const Integer& a, const Integer& b) {
        if (b < 1 || b > query.b_max) return;
        if (gcd(a, b) != 1) return;
        auto key = std::make_pair(b, a);
        if (found.count(key)) return;
        if (!satisfies(query.alpha, a, b, query.c)) return;
        found.emplace(key, classify_solution(query.alpha, a, b, query.c));
    };

    for (long m = -1; m < J || (m == -1 && J == 0); ++m) {
        // pure convergents p_{m+1}/q_{m+1}
        consider(cf.p(m + 1), cf.q(m + 1));
        for (int sign : {+1, -1}) {
            for (Integer s = 1; product_ok(Integer(1), s, two_c); ++s) {
                for (Integer r = 1; product_ok(r, s, two_c); ++r) {
                    Integer a = r * cf.p(m + 1) + sign * s * cf.p(m);
                    Integer b = r * cf.q(m + 1) + sign * s * cf.q(m);
                    consider(a, b);
                }
            }
        }
    }

    std::vector<ApproxSolution> out;
    out.reserve(found.size());
    for (auto& [key, sol] : found) out.push_back(std::move(sol));
    return out;
}

const char* worley_form_name(WorleyForm f) {
    switch (f) {
        case WorleyForm::convergent: return "p_m/q_m";
        case WorleyForm::plus_1_1: return "(p_{m+1}+p_m)/(q_{m+1}+q_m)";
        case WorleyForm::minus_1_1: return "(p_{m+1}-p_m)/(q_{m+1}-q_m)";
        case WorleyForm::plus_2_1: return "(2p_{m+1}+p_m)/(2q_{m+1}+q_m)";
        case WorleyForm::minus_2_1: return "(2p_{m+1}-p_m)/(2q_{m+1}-q_m)";
        case WorleyForm::plus_3_1: return "(3p_{m+1}+p_m)/(3q_{m+1}+q_m)";
        case WorleyForm::plus_1_2: return "(p_{m+1}+2p_m)/(q_{m+1}+2q_m)";
        case WorleyForm::minus_1_2: return "(p_{m+1}-2p_m)/(q_{m+1}-2q_m)";
        case WorleyForm::minus_1_3: return "(p_{m+1}-3p_m)/(q_{m+1}-3q_m)";
    }
    return "?";
}

WorleyForm worley_form_check(const ApproxSolution& sol) {
    const Integer& r = sol.r;
    const Integer& s = sol.s;
    if (s == 0 && r == 1) return WorleyForm::convergent;
    if (r == 0 && s == 1) return WorleyForm::convergent;
    if (r == 1 && s == 1) return sol.sign > 0 ? WorleyForm::plus_1_1 : WorleyForm::minus_1_1;
    if (r == 2 && s == 1) return sol.sign > 0 ? WorleyForm::plus_2_1 : WorleyForm::minus_2_1;
    if (r == 3 && s == 1 && sol.sign > 0) return WorleyForm::plus_3_1;
    if (r == 1 && s == 2) return sol.sign > 0 ? WorleyForm::plus_1_2 : WorleyForm::minus_1_2;
    if (r == 1 && s == 3 && sol.sign < 0) return WorleyForm::minus_1_3;
    throw std::logic_error("witness outside Worley's c=2 form list");
}

}  // namespace cfrsa
