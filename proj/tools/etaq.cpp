// Command-line front end: q-expansions, eta-quotient classification, Hecke
// annihilation tests, prime searches, and congruence verification.
//
// Exit codes: 0 all verdicts hold / command succeeded, 1 a verification
// failed, 2 usage or input error, 3 resource cap exceeded.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etaq/congruence.hpp"
#include "etaq/errors.hpp"
#include "etaq/eta.hpp"
#include "etaq/hecke.hpp"
#include "etaq/json.hpp"
#include "etaq/series.hpp"

using namespace etaq;

namespace {

constexpr std::size_t default_precision_cap = 1000000;
constexpr std::size_t slow_precision_cap = 10000000;
constexpr std::size_t slow_oracle_cap = 1500000;

struct Caps {
    std::size_t precision;
    std::size_t oracle;
};

std::optional<std::size_t> env_cap(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v)
        return std::nullopt;
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != std::string(v).size())
            throw std::invalid_argument(v);
        return static_cast<std::size_t>(x);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + ": not a number: " + v);
    }
}

// Precedence: explicit flag > environment variable > --slow default > default.
Caps resolve_caps(bool slow, std::optional<std::size_t> flag_precision,
                  std::optional<std::size_t> flag_oracle) {
    Caps caps{slow ? slow_precision_cap : default_precision_cap,
              slow ? slow_oracle_cap : default_oracle_cap};
    if (auto e = env_cap("ETAQ_MAX_PRECISION"))
        caps.precision = *e;
    if (auto e = env_cap("ETAQ_MAX_ORACLE_N"))
        caps.oracle = *e;
    if (flag_precision)
        caps.precision = *flag_precision;
    if (flag_oracle)
        caps.oracle = *flag_oracle;
    return caps;
}

void require_precision(std::size_t P, const Caps& caps) {
    if (P > caps.precision)
        throw resource_cap_error("precision " + std::to_string(P) +
                                 " exceeds cap " +
                                 std::to_string(caps.precision));
}

std::vector<EtaQuotient> parse_specs(const std::vector<std::string>& specs) {
    if (specs.empty())
        throw std::invalid_argument("at least one --spec is required");
    std::vector<EtaQuotient> out;
    out.reserve(specs.size());
    for (const auto& s : specs)
        out.push_back(parse_eta_quotient(s));
    return out;
}

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump() << "\n"; }

void emit_hecke(const HeckeReport& rep, bool json) {
    if (json) {
        emit(report_json(rep));
        return;
    }
    std::cout << "p=" << rep.prime;
    if (!rep.error.empty()) {
        std::cout << " error: " << rep.error << "\n";
        return;
    }
    std::cout << " level=" << rep.level << " weight=" << rep.weight
              << " chi_p=" << rep.chi_p << " sturm=" << rep.sturm
              << " terms_checked=" << rep.terms_checked << " annihilated_mod2="
              << (rep.annihilated_mod2 ? "true" : "false");
    if (rep.first_nonzero_index)
        std::cout << " first_nonzero_index=" << *rep.first_nonzero_index;
    std::cout << "\n";
}

void emit_congruence(const CongruenceReport& rep, bool json) {
    if (json) {
        emit(report_json(rep));
        return;
    }
    std::cout << rep.target;
    if (rep.p)
        std::cout << " p=" << *rep.p;
    if (rep.alpha)
        std::cout << " alpha=" << *rep.alpha;
    if (rep.beta)
        std::cout << " beta=" << *rep.beta;
    if (rep.gamma)
        std::cout << " gamma=" << *rep.gamma;
    std::cout << " n=[" << rep.n_range.first << "," << rep.n_range.second
              << "] holds=" << (rep.holds ? "true" : "false");
    if (rep.first_failure)
        std::cout << " first_failure=" << *rep.first_failure;
    std::cout << "\n";
}

int cmd_expand(const std::vector<std::string>& specs, std::size_t terms,
               bool mod2, const Caps& caps, bool json) {
    require_precision(terms, caps);
    std::vector<EtaQuotient> eqs = parse_specs(specs);
    const Ring ring = mod2 ? Ring::GF2 : Ring::INT;
    Series s = Series::zero(ring, terms);
    for (const auto& eq : eqs)
        s = add(s, q_expansion(eq, terms, ring));
    if (json) {
        nlohmann::ordered_json j;
        nlohmann::ordered_json sp = nlohmann::ordered_json::array();
        for (const auto& eq : eqs)
            sp.push_back(to_string(eq));
        j["specs"] = std::move(sp);
        j["ring"] = ring_name(ring);
        j["precision"] = s.precision();
        if (s.is_zero())
            j["valuation"] = nullptr;
        else
            j["valuation"] = s.valuation();
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (std::size_t n = 0; n < s.precision(); ++n) {
            if (ring == Ring::GF2)
                coeffs.push_back(s.coeff_mod2(n));
            else
                coeffs.push_back(s.coeff(n).get_str());
        }
        j["coefficients"] = std::move(coeffs);
        emit(j);
    } else {
        for (std::size_t n = 0; n < s.precision(); ++n)
            std::cout << n << "\t" << s.coeff(n) << "\n";
    }
    return 0;
}

int cmd_eta_check(const std::vector<std::string>& specs, bool json) {
    std::vector<EtaQuotient> eqs = parse_specs(specs);
    Classification cls = classify_sum(eqs);
    if (json) {
        emit(classification_json(eqs, cls));
    } else {
        std::cout << "level=" << eqs.front().level
                  << " weight=" << cls.weight.get_str()
                  << " cond24_delta=" << (cls.cond24_delta ? "true" : "false")
                  << " cond24_codelta="
                  << (cls.cond24_codelta ? "true" : "false")
                  << " character_kernel=" << cls.character_kernel.get_str()
                  << " verdict=" << verdict_name(cls.verdict) << "\n";
        for (const auto& [d, ord] : cls.cusp_orders)
            std::cout << "  cusp d=" << d << " order=" << ord.get_str() << "\n";
    }
    return cls.verdict == Verdict::CUSP_FORM ||
                   cls.verdict == Verdict::MODULAR_FORM
               ? 0
               : 1;
}

int cmd_hecke(const std::vector<std::string>& specs, unsigned long prime,
              const Caps& caps, bool json) {
    HeckeCaps hc{caps.precision};
    HeckeReport rep = annihilation_test(parse_specs(specs), prime, hc);
    emit_hecke(rep, json);
    return rep.annihilated_mod2 ? 0 : 1;
}

int cmd_search(const std::vector<std::string>& specs, long residue,
               unsigned long modulus, unsigned long p_max, const Caps& caps,
               bool json) {
    HeckeCaps hc{caps.precision};
    std::vector<HeckeReport> reps =
        prime_search(parse_specs(specs), residue, modulus, p_max, hc);
    bool capped = false;
    for (const auto& rep : reps) {
        emit_hecke(rep, json);
        capped |= rep.error.rfind("resource cap: ", 0) == 0;
    }
    return capped ? 3 : 0;
}

int cmd_verify(const std::string& target, std::optional<unsigned long> prime,
               std::optional<std::size_t> n_max, const Caps& caps, bool json) {
    OracleSet oracles(caps.oracle);
    CongruenceReport rep;
    if (target == "eq-1-2") {
        if (prime && *prime != 13)
            throw std::invalid_argument("eq-1-2 is the p=13 instance");
        rep = verify_eq_1_2(n_max.value_or(200), oracles);
    } else {
        if (!prime)
            throw std::invalid_argument("--prime is required for " + target);
        if (target == "thm-b3")
            rep = verify_theorem_b3(*prime, n_max.value_or(500), oracles);
        else if (target == "thm-b25")
            rep = verify_theorem_b25(*prime, n_max.value_or(500), oracles);
        else if (target == "thm-b21")
            rep = verify_theorem_b21(*prime, n_max.value_or(500), oracles);
        else if (target == "kz-b25-vanishing")
            rep = verify_kz_b25_vanishing(*prime, n_max.value_or(20), oracles);
        else
            throw std::invalid_argument("unknown target " + target);
    }
    emit_congruence(rep, json);
    return rep.holds ? 0 : 1;
}

int cmd_identities(std::size_t terms, const Caps& caps, bool json) {
    require_precision(terms, caps);
    OracleSet oracles(caps.oracle);
    bool all = true;
    for (const auto& name : identity_names()) {
        CongruenceReport rep = verify_identity(name, terms, oracles);
        emit_congruence(rep, json);
        all &= rep.holds;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-series and eta-quotient toolkit"};
    app.require_subcommand(1);

    std::string format = "json";
    bool slow = false;
    std::optional<std::size_t> flag_precision, flag_oracle;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--slow", slow,
                 "Raise resource caps for long runs (precision 1e7, oracle "
                 "1.5e6)");
    app.add_option("--max-precision", flag_precision,
                   "Series precision cap (env ETAQ_MAX_PRECISION)");
    app.add_option("--max-oracle-n", flag_oracle,
                   "Largest b_t argument (env ETAQ_MAX_ORACLE_N)");

    std::vector<std::string> specs;
    std::size_t terms = 100;
    bool mod2 = false;
    unsigned long prime_raw = 0;
    long residue = 0;
    unsigned long modulus = 1;
    unsigned long p_max = 100;
    std::string target;
    std::optional<std::size_t> n_max;

    CLI::App* expand = app.add_subcommand("expand", "q-expansion of a sum of "
                                                    "eta-quotients");
    expand->add_option("--spec", specs, "Eta-quotient, N:d1^r1*d2^r2*...")
        ->required();
    expand->add_option("--terms", terms, "Number of coefficients")
        ->capture_default_str();
    expand->add_flag("--mod2", mod2, "Reduce coefficients mod 2");

    CLI::App* eta_check =
        app.add_subcommand("eta-check", "Classify a sum of eta-quotients");
    eta_check->add_option("--spec", specs, "Eta-quotient")->required();

    CLI::App* hecke =
        app.add_subcommand("hecke", "Mod-2 Hecke annihilation test");
    hecke->add_option("--spec", specs, "Eta-quotient")->required();
    hecke->add_option("--prime", prime_raw, "Prime p")->required();

    CLI::App* search = app.add_subcommand(
        "search", "Annihilation tests over primes in a residue class");
    search->add_option("--spec", specs, "Eta-quotient")->required();
    search->add_option("--residue", residue, "Residue")->capture_default_str();
    search->add_option("--modulus", modulus, "Modulus")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--pmax", p_max, "Largest prime tested")
        ->capture_default_str();

    CLI::App* verify =
        app.add_subcommand("verify", "Congruence family verification");
    verify
        ->add_option("--target", target,
                     "thm-b3 | thm-b25 | thm-b21 | eq-1-2 | kz-b25-vanishing")
        ->required()
        ->check(CLI::IsMember({"thm-b3", "thm-b25", "thm-b21", "eq-1-2",
                               "kz-b25-vanishing"}));
    CLI::Option* verify_prime = verify->add_option("--prime", prime_raw,
                                                   "Prime p");
    verify->add_option("--nmax", n_max, "Largest index checked");

    CLI::App* identities =
        app.add_subcommand("identities", "Verify all named mod-2 identities");
    std::size_t id_terms = 10000;
    identities->add_option("--terms", id_terms, "Number of coefficients")
        ->capture_default_str();

    for (CLI::App* sub :
         {expand, eta_check, hecke, search, verify, identities})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const bool json = format == "json";
    try {
        Caps caps = resolve_caps(slow, flag_precision, flag_oracle);
        if (expand->parsed())
            return cmd_expand(specs, terms, mod2, caps, json);
        if (eta_check->parsed())
            return cmd_eta_check(specs, json);
        if (hecke->parsed())
            return cmd_hecke(specs, prime_raw, caps, json);
        if (search->parsed())
            return cmd_search(specs, residue, modulus, p_max, caps, json);
        if (verify->parsed())
            return cmd_verify(target,
                              verify_prime->count()
                                  ? std::optional<unsigned long>(prime_raw)
                                  : std::nullopt,
                              n_max, caps, json);
        if (identities->parsed())
            return cmd_identities(id_terms, caps, json);
        return 2;
    } catch (const resource_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
