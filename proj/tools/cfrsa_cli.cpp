#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfrsa/approx.hpp"
#include "cfrsa/attack.hpp"
#include "cfrsa/cf.hpp"
#include "cfrsa/keygen.hpp"

using nlohmann::ordered_json;
using namespace cfrsa;

namespace {

// decimal or 0x-hex
Integer parse_int(const std::string& s) {
    Integer v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 0) != 0)
        throw CLI::ValidationError("not an integer: " + s);
    return v;
}

// "a", "a/b" or "a.bcd"
Fraction parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num = parse_int(s.substr(0, slash));
        Integer den = parse_int(s.substr(slash + 1));
        if (den == 0) throw CLI::ValidationError("zero denominator: " + s);
        return make_fraction(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Integer num = parse_int(digits);
        Integer den = pow_ui(Integer(10), static_cast<unsigned long>(s.size() - dot - 1));
        return make_fraction(num, den);
    }
    return Fraction(parse_int(s));
}

std::string str(const Integer& v) { return v.get_str(); }

ordered_json outcome_json(const AttackOutcome& out) {
    ordered_json j;
    j["found"] = true;
    j["method"] = out.method;
    j["d"] = str(out.d);
    j["k"] = str(out.k);
    j["p"] = str(out.p);
    j["q"] = str(out.q);
    j["phi"] = str(out.phi);
    j["steps"] = out.steps;
    j["m"] = out.m;
    j["family"] = family_name(out.family);
    j["coeff1"] = str(out.coeff1);
    j["coeff2"] = str(out.coeff2);
    j["short_expansion_fallback"] = out.short_expansion_fallback;
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string ratio_string(const Integer& scaled) {
    // scaled = ratio * 10^6, floored
    Integer whole = fdiv(scaled, Integer(1000000));
    Integer frac = scaled - whole * 1000000;
    std::string f = frac.get_str();
    return whole.get_str() + "." + std::string(6 - f.size(), '0') + f;
}

struct SweepArgs {
    std::string n, p, q, d_from, d_to, csv_path;
};

int run_sweep_cmd(const SweepArgs& a, bool take_min) {
    Integer n = parse_int(a.n), p = parse_int(a.p), q = parse_int(a.q);
    Integer from = parse_int(a.d_from), to = parse_int(a.d_to);

    std::ofstream csv;
    SweepRowSink sink = nullptr;
    if (!a.csv_path.empty()) {
        csv.open(a.csv_path);
        if (!csv) throw CLI::ValidationError("cannot open " + a.csv_path);
        csv << "d,family,coeff1,coeff2,ratio\n";
        sink = [&csv](const SweepRow& row) {
            csv << row.d.get_str() << ',' << family_name(row.family) << ','
                << row.coeff1.get_str() << ',' << row.coeff2.get_str() << ','
                << ratio_string(row.ratio_scaled) << '\n';
        };
    }

    SweepStats st = take_min ? variant_sweep(n, p, q, from, to, sink)
                             : vvt_sweep(n, p, q, from, to, sink);
    ordered_json j;
    j["count"] = st.count;
    j["skipped"] = st.skipped;
    j["mean_ratio"] = ratio_string(st.count ? fdiv(st.sum_ratio_scaled, Integer(st.count)) : Integer(0));
    j["max_ratio"] = ratio_string(st.max_ratio_scaled(n));
    j["argmax_d"] = str(st.argmax_d);
    j["over_1000"] = st.over_threshold;
    emit(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continued-fraction approximation and small-d RSA attacks"};
    app.require_subcommand(1);

    // cf expand
    std::string cf_num, cf_den = "1";
    auto* cf_cmd = app.add_subcommand("cf", "continued fractions");
    cf_cmd->require_subcommand(1);
    auto* cf_expand_cmd = cf_cmd->add_subcommand("expand", "expand num/den");
    cf_expand_cmd->add_option("--num", cf_num)->required();
    cf_expand_cmd->add_option("--den", cf_den);

    // approx enum
    std::string ap_an, ap_ad = "1", ap_cn, ap_cd = "1", ap_bmax;
    auto* ap_cmd = app.add_subcommand("approx", "diophantine approximation");
    ap_cmd->require_subcommand(1);
    auto* ap_enum_cmd = ap_cmd->add_subcommand("enum", "all a/b with |alpha - a/b| < c/b^2, b <= bmax");
    ap_enum_cmd->add_option("--alpha-num", ap_an)->required();
    ap_enum_cmd->add_option("--alpha-den", ap_ad);
    ap_enum_cmd->add_option("--c-num", ap_cn)->required();
    ap_enum_cmd->add_option("--c-den", ap_cd);
    ap_enum_cmd->add_option("--bmax", ap_bmax)->required();

    // attack <method>
    std::string at_n, at_e, at_dbound, at_Dbound, at_regime = "balanced";
    auto* at_cmd = app.add_subcommand("attack", "small-d key recovery");
    at_cmd->require_subcommand(1);
    std::vector<CLI::App*> at_subs;
    for (const char* name : {"wiener", "wiener-f", "vvt", "variant"}) {
        auto* sub = at_cmd->add_subcommand(name);
        sub->add_option("--n", at_n)->required();
        sub->add_option("--e", at_e)->required();
        auto* db = sub->add_option("--d-bound", at_dbound);
        auto* Db = sub->add_option("--D-bound", at_Dbound);
        db->excludes(Db);
        sub->add_option("--regime", at_regime)->check(CLI::IsMember({"balanced", "wide"}));
        at_subs.push_back(sub);
    }

    // keygen
    std::string kg_d, kg_Dt;
    unsigned kg_bits = 64, kg_dbits = 0;
    std::uint64_t kg_seed = 0;
    std::string kg_balance = "2p";
    auto* kg_cmd = app.add_subcommand("keygen", "deterministic test keys");
    kg_cmd->add_option("--bits", kg_bits);
    kg_cmd->add_option("--d-bits", kg_dbits);
    kg_cmd->add_option("--d", kg_d);
    kg_cmd->add_option("--D-target", kg_Dt);
    kg_cmd->add_option("--seed", kg_seed);
    kg_cmd->add_option("--balance", kg_balance)->check(CLI::IsMember({"2p", "8p"}));

    // sweep <family>
    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "per-d witness statistics");
    sw_cmd->require_subcommand(1);
    for (const char* name : {"vvt", "variant"}) {
        auto* sub = sw_cmd->add_subcommand(name);
        sub->add_option("--n", sw.n)->required();
        sub->add_option("--p", sw.p)->required();
        sub->add_option("--q", sw.q)->required();
        sub->add_option("--d-from", sw.d_from)->required();
        sub->add_option("--d-to", sw.d_to)->required();
        sub->add_option("--csv", sw.csv_path);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cf_expand_cmd->parsed()) {
            Integer num = parse_int(cf_num), den = parse_int(cf_den);
            CFExpansion cf(make_fraction(num, den));
            ordered_json j;
            j["quotients"] = ordered_json::array();
            j["convergents"] = ordered_json::array();
            for (std::size_t i = 0; i < cf.size(); ++i) {
                long li = static_cast<long>(i);
                j["quotients"].push_back(str(cf.a(li)));
                j["convergents"].push_back({{"p", str(cf.p(li))}, {"q", str(cf.q(li))}});
            }
            emit(j);
            return 0;
        }

        if (ap_enum_cmd->parsed()) {
            ApproxQuery query{make_fraction(parse_int(ap_an), parse_int(ap_ad)),
                              make_fraction(parse_int(ap_cn), parse_int(ap_cd)),
                              parse_int(ap_bmax)};
            auto sols = enumerate_solutions(query);
            ordered_json j;
            j["count"] = sols.size();
            j["solutions"] = ordered_json::array();
            for (const auto& s : sols) {
                j["solutions"].push_back({{"a", str(s.a)},
                                          {"b", str(s.b)},
                                          {"m", s.m},
                                          {"r", str(s.r)},
                                          {"s", str(s.s)},
                                          {"sign", s.sign}});
            }
            emit(j);
            return 0;
        }

        if (at_cmd->parsed()) {
            RsaPublicKey pub{parse_int(at_n), parse_int(at_e)};
            AttackConfig cfg;
            cfg.regime = at_regime == "wide" ? Regime::wide : Regime::balanced;
            if (!at_dbound.empty()) cfg.d_bound = parse_int(at_dbound);
            if (!at_Dbound.empty()) cfg.D_bound = parse_fraction(at_Dbound);
            if (!cfg.d_bound && !cfg.D_bound)
                throw CLI::ValidationError("one of --d-bound / --D-bound is required");

            std::optional<AttackOutcome> out;
            if (at_subs[0]->parsed()) out = wiener_attack(pub, cfg);
            else if (at_subs[1]->parsed()) out = wiener_f_attack(pub, cfg);
            else if (at_subs[2]->parsed()) out = vvt_attack(pub, cfg);
            else out = variant_attack(pub, cfg);

            if (!out) {
                emit(ordered_json{{"found", false}});
                return 1;
            }
            emit(outcome_json(*out));
            return 0;
        }

        if (kg_cmd->parsed()) {
            KeyGenSpec spec;
            spec.modulus_bits = kg_bits;
            spec.seed = kg_seed;
            spec.balance = kg_balance == "8p" ? Balance::eight_p : Balance::two_p;
            if (!kg_d.empty()) spec.d_exact = parse_int(kg_d);
            if (kg_dbits) spec.d_bits = kg_dbits;
            if (!kg_Dt.empty()) spec.D_target = parse_fraction(kg_Dt);
            RsaKeySet key = gen_key(spec);
            ordered_json j;
            j["n"] = str(key.n);
            j["e"] = str(key.e);
            j["p"] = str(key.p);
            j["q"] = str(key.q);
            j["d"] = str(key.d);
            j["k"] = str(key.k);
            j["phi"] = str(key.phi);
            emit(j);
            return 0;
        }

        if (sw_cmd->parsed()) {
            bool take_min = sw_cmd->get_subcommands().front()->get_name() == "variant";
            return run_sweep_cmd(sw, take_min);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
