#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfrsa/approx.hpp"
#include "cfrsa/attack.hpp"
#include "cfrsa/cf.hpp"
#include "cfrsa/keygen.hpp"

namespace py = pybind11;
using namespace cfrsa;

namespace pybind11::detail {

// mpz_class <-> python int, via decimal strings (exact at any size)
template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        object s = reinterpret_steal<object>(PyObject_Str(src.ptr()));
        if (!s) return false;
        return mpz_set_str(value.get_mpz_t(), PyUnicode_AsUTF8(s.ptr()), 10) == 0;
    }

    static handle cast(const mpz_class& v, return_value_policy, handle) {
        return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    }
};

// mpq_class <-> fractions.Fraction (or any numerator/denominator pair)
template <>
struct type_caster<mpq_class> {
    PYBIND11_TYPE_CASTER(mpq_class, const_name("Fraction"));

    bool load(handle src, bool convert) {
        handle h = src;
        object holder;
        if (PyLong_Check(src.ptr())) {
            type_caster<mpz_class> num;
            if (!num.load(src, convert)) return false;
            value = mpq_class(static_cast<mpz_class&>(num));
            return true;
        }
        if (!hasattr(h, "numerator") || !hasattr(h, "denominator")) return false;
        type_caster<mpz_class> num, den;
        if (!num.load(h.attr("numerator"), convert)) return false;
        if (!den.load(h.attr("denominator"), convert)) return false;
        value = mpq_class(static_cast<mpz_class&>(num)) /
                mpq_class(static_cast<mpz_class&>(den));
        value.canonicalize();
        return true;
    }

    static handle cast(const mpq_class& v, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        object num = reinterpret_steal<object>(
            PyLong_FromString(v.get_num().get_str().c_str(), nullptr, 10));
        object den = reinterpret_steal<object>(
            PyLong_FromString(v.get_den().get_str().c_str(), nullptr, 10));
        return fraction(num, den).release();
    }
};

}  // namespace pybind11::detail

namespace {

AttackConfig make_config(std::optional<Integer> d_bound, std::optional<Fraction> D_bound,
                         const std::string& regime) {
    AttackConfig cfg;
    cfg.regime = regime == "wide" ? Regime::wide : Regime::balanced;
    cfg.d_bound = std::move(d_bound);
    cfg.D_bound = std::move(D_bound);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "continued-fraction approximation and small-d RSA attacks";

    py::class_<CFExpansion>(mod, "CFExpansion")
        .def(py::init<const Fraction&>())
        .def_property_readonly("quotients",
                               [](const CFExpansion& cf) { return cf.quotients(); })
        .def("a", &CFExpansion::a)
        .def("p", &CFExpansion::p)
        .def("q", &CFExpansion::q)
        .def_property_readonly("last_index", &CFExpansion::last_index)
        .def("value", &CFExpansion::value);

    mod.def("cf_expand", &cf_expand, py::arg("x"));
    mod.def("convergent", &convergent, py::arg("cf"), py::arg("i"));
    mod.def("semiconvergent", &semiconvergent, py::arg("cf"), py::arg("m"),
            py::arg("r"), py::arg("s"), py::arg("sign"));
    mod.def("isqrt", &isqrt, py::arg("n"));

    py::class_<ApproxSolution>(mod, "ApproxSolution")
        .def_readonly("a", &ApproxSolution::a)
        .def_readonly("b", &ApproxSolution::b)
        .def_readonly("m", &ApproxSolution::m)
        .def_readonly("r", &ApproxSolution::r)
        .def_readonly("s", &ApproxSolution::s)
        .def_readonly("sign", &ApproxSolution::sign)
        .def("__repr__", [](const ApproxSolution& s) {
            return "ApproxSolution(" + s.a.get_str() + "/" + s.b.get_str() + ")";
        });

    mod.def(
        "enumerate_solutions",
        [](const Fraction& alpha, const Fraction& c, const Integer& b_max) {
            return enumerate_solutions(ApproxQuery{alpha, c, b_max});
        },
        py::arg("alpha"), py::arg("c"), py::arg("b_max"));
    mod.def(
        "brute_force_solutions",
        [](const Fraction& alpha, const Fraction& c, const Integer& b_max) {
            return brute_force_solutions(ApproxQuery{alpha, c, b_max});
        },
        py::arg("alpha"), py::arg("c"), py::arg("b_max"));
    mod.def("classify_solution", &classify_solution, py::arg("alpha"), py::arg("a"),
            py::arg("b"), py::arg("c"));

    py::class_<AttackOutcome>(mod, "AttackOutcome")
        .def_readonly("d", &AttackOutcome::d)
        .def_readonly("k", &AttackOutcome::k)
        .def_readonly("p", &AttackOutcome::p)
        .def_readonly("q", &AttackOutcome::q)
        .def_readonly("phi", &AttackOutcome::phi)
        .def_readonly("steps", &AttackOutcome::steps)
        .def_readonly("method", &AttackOutcome::method)
        .def_readonly("m", &AttackOutcome::m)
        .def_property_readonly("family",
                               [](const AttackOutcome& o) { return family_name(o.family); })
        .def_readonly("coeff1", &AttackOutcome::coeff1)
        .def_readonly("coeff2", &AttackOutcome::coeff2)
        .def_readonly("short_expansion_fallback", &AttackOutcome::short_expansion_fallback);

    mod.def(
        "phi_test",
        [](const Integer& n, const Integer& e, const Integer& a, const Integer& b) {
            return phi_test(RsaPublicKey{n, e}, a, b);
        },
        py::arg("n"), py::arg("e"), py::arg("a"), py::arg("b"));
    mod.def(
        "modpow_test",
        [](const Integer& n, const Integer& e, const Integer& b, const Integer& M) {
            return modpow_test(RsaPublicKey{n, e}, b, M);
        },
        py::arg("n"), py::arg("e"), py::arg("b"), py::arg("M"));

    auto bind_attack = [&mod](const char* name, auto fn) {
        mod.def(
            name,
            [fn](const Integer& n, const Integer& e, std::optional<Integer> d_bound,
                 std::optional<Fraction> D_bound, const std::string& regime) {
                return fn(RsaPublicKey{n, e},
                          make_config(std::move(d_bound), std::move(D_bound), regime));
            },
            py::arg("n"), py::arg("e"), py::arg("d_bound") = std::nullopt,
            py::arg("D_bound") = std::nullopt, py::arg("regime") = "balanced");
    };
    bind_attack("wiener_attack", &wiener_attack);
    bind_attack("wiener_f_attack", &wiener_f_attack);
    bind_attack("vvt_attack", &vvt_attack);
    bind_attack("variant_attack", &variant_attack);

    py::class_<RsaKeySet>(mod, "RsaKeySet")
        .def_readonly("n", &RsaKeySet::n)
        .def_readonly("e", &RsaKeySet::e)
        .def_readonly("p", &RsaKeySet::p)
        .def_readonly("q", &RsaKeySet::q)
        .def_readonly("d", &RsaKeySet::d)
        .def_readonly("k", &RsaKeySet::k)
        .def_readonly("phi", &RsaKeySet::phi);

    mod.def(
        "gen_key",
        [](unsigned modulus_bits, std::optional<Integer> d_exact,
           std::optional<unsigned> d_bits, std::optional<Fraction> D_target,
           const std::string& balance, std::uint64_t seed,
           std::optional<Integer> p_forced, std::optional<Integer> q_forced) {
            KeyGenSpec spec;
            spec.modulus_bits = modulus_bits;
            spec.d_exact = std::move(d_exact);
            spec.d_bits = d_bits;
            spec.D_target = std::move(D_target);
            spec.balance = balance == "8p" ? Balance::eight_p : Balance::two_p;
            spec.seed = seed;
            spec.p_forced = std::move(p_forced);
            spec.q_forced = std::move(q_forced);
            return gen_key(spec);
        },
        py::arg("modulus_bits") = 64, py::arg("d_exact") = std::nullopt,
        py::arg("d_bits") = std::nullopt, py::arg("D_target") = std::nullopt,
        py::arg("balance") = "2p", py::arg("seed") = 0,
        py::arg("p_forced") = std::nullopt, py::arg("q_forced") = std::nullopt);

    py::class_<SweepStats>(mod, "SweepStats")
        .def_readonly("count", &SweepStats::count)
        .def_readonly("skipped", &SweepStats::skipped)
        .def_readonly("argmax_d", &SweepStats::argmax_d)
        .def_readonly("over_threshold", &SweepStats::over_threshold)
        .def("mean_ratio", &SweepStats::mean_ratio)
        .def("max_ratio", &SweepStats::max_ratio, py::arg("n"));

    mod.def(
        "vvt_sweep",
        [](const Integer& n, const Integer& p, const Integer& q, const Integer& d_from,
           const Integer& d_to) { return vvt_sweep(n, p, q, d_from, d_to); },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("d_from"), py::arg("d_to"));
    mod.def(
        "variant_sweep",
        [](const Integer& n, const Integer& p, const Integer& q, const Integer& d_from,
           const Integer& d_to) { return variant_sweep(n, p, q, d_from, d_to); },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("d_from"), py::arg("d_to"));
}
