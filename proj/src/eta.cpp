#include "etaq/eta.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace etaq {

namespace {

void validate(const EtaQuotient& eq) {
    if (eq.level == 0)
        throw std::invalid_argument("eta-quotient: level must be positive");
    bool any = false;
    for (const auto& [delta, r] : eq.exponents) {
        if (delta == 0 || eq.level % delta != 0)
            throw std::invalid_argument("eta-quotient: divisor " +
                                        std::to_string(delta) +
                                        " does not divide level " +
                                        std::to_string(eq.level));
        any |= (r != 0);
    }
    if (!any)
        throw std::invalid_argument("eta-quotient: all exponents are zero");
}

} // namespace

EtaQuotient make_eta_quotient(unsigned long level,
                              std::map<unsigned long, long> exponents) {
    EtaQuotient eq{level, std::move(exponents)};
    validate(eq);
    std::erase_if(eq.exponents, [](const auto& kv) { return kv.second == 0; });
    return eq;
}

EtaQuotient parse_eta_quotient(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("eta-quotient grammar: missing ':' in \"" +
                                    text + "\"");
    std::size_t pos = 0;
    auto parse_long = [&](const std::string& str, std::size_t& at) {
        std::size_t used = 0;
        long v;
        try {
            v = std::stol(str.substr(at), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("eta-quotient grammar: expected integer at \"" +
                                        str.substr(at) + "\"");
        }
        at += used;
        return v;
    };
    const long level = parse_long(s, pos);
    if (pos != colon || level <= 0)
        throw std::invalid_argument("eta-quotient grammar: bad level in \"" +
                                    text + "\"");
    std::map<unsigned long, long> exps;
    pos = colon + 1;
    while (true) {
        const long delta = parse_long(s, pos);
        if (delta <= 0)
            throw std::invalid_argument("eta-quotient grammar: bad divisor in \"" +
                                        text + "\"");
        if (pos >= s.size() || s[pos] != '^')
            throw std::invalid_argument("eta-quotient grammar: expected '^' in \"" +
                                        text + "\"");
        ++pos;
        const long r = parse_long(s, pos);
        exps[static_cast<unsigned long>(delta)] += r;
        if (pos == s.size())
            break;
        if (s[pos] != '*')
            throw std::invalid_argument("eta-quotient grammar: expected '*' in \"" +
                                        text + "\"");
        ++pos;
    }
    return make_eta_quotient(static_cast<unsigned long>(level), std::move(exps));
}

std::string to_string(const EtaQuotient& eq) {
    std::ostringstream os;
    os << eq.level << ':';
    bool first = true;
    for (const auto& [delta, r] : eq.exponents) {
        if (!first) os << '*';
        first = false;
        os << delta << '^' << r;
    }
    return os.str();
}

std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> lo, hi;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

WeightConditions weight_and_conditions(const EtaQuotient& eq) {
    validate(eq);
    WeightConditions wc;
    long sum_r = 0;
    wc.sum_delta_r = 0;
    wc.sum_codelta_r = 0;
    for (const auto& [delta, r] : eq.exponents) {
        sum_r += r;
        wc.sum_delta_r += static_cast<long long>(delta) * r;
        wc.sum_codelta_r += static_cast<long long>(eq.level / delta) * r;
    }
    wc.weight = mpq_class(mpz_class(sum_r), mpz_class(2));
    wc.weight.canonicalize();
    wc.cond24_delta = wc.sum_delta_r % 24 == 0;
    wc.cond24_codelta = wc.sum_codelta_r % 24 == 0;
    return wc;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

// s = product of delta^r_delta as an exact positive rational.
mpq_class eta_s(const EtaQuotient& eq) {
    mpq_class s(1);
    for (const auto& [delta, r] : eq.exponents) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), delta,
                      static_cast<unsigned long>(r < 0 ? -r : r));
        if (r > 0)
            s *= pw;
        else if (r < 0)
            s /= pw;
    }
    return s;
}

// (-1)^weight * numerator * denominator of s: the character argument with
// the denominator cleared by a square.
mpz_class character_argument(const EtaQuotient& eq, const WeightConditions& wc) {
    const mpq_class s = eta_s(eq);
    mpz_class d = s.get_num() * s.get_den();
    if (mpz_odd_p(mpz_class(wc.weight.get_num()).get_mpz_t()))
        d = -d;
    return d;
}

// Sign times the product of primes dividing v to odd multiplicity.
mpz_class squarefree_kernel(mpz_class v) {
    mpz_class out = (v < 0) ? -1 : 1;
    mpz_class a = abs(v);
    for (mpz_class p = 2; p * p <= a; ++p) {
        if (a % p != 0)
            continue;
        unsigned e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        if (e & 1)
            out *= p;
    }
    return out * a;
}

bool weight_is_positive_integer(const mpq_class& w) {
    return w.get_den() == 1 && w.get_num() > 0;
}

} // namespace

int character(const EtaQuotient& eq, const mpz_class& d) {
    const WeightConditions wc = weight_and_conditions(eq);
    if (!wc.cond24_delta || !wc.cond24_codelta)
        throw std::domain_error("character: 24-divisibility conditions fail");
    if (wc.weight.get_den() != 1)
        throw std::domain_error("character: weight is not integral");
    if (gcd(d, mpz_class(2 * eq.level)) != 1)
        throw std::domain_error("character: d must be coprime to twice the level");
    return kronecker(character_argument(eq, wc), d);
}

mpq_class cusp_order(const EtaQuotient& eq, unsigned long d) {
    validate(eq);
    if (d == 0 || eq.level % d != 0)
        throw std::invalid_argument("cusp_order: d must divide the level");
    const unsigned long N = eq.level;
    mpq_class sum(0);
    for (const auto& [delta, r] : eq.exponents) {
        const unsigned long g = std::gcd(d, delta);
        mpz_class num = mpz_class(g) * g * r;
        mpz_class den = mpz_class(std::gcd(d, N / d)) * d * delta;
        mpq_class term(num, den);
        term.canonicalize();
        sum += term;
    }
    mpq_class scale(N, 24);
    scale.canonicalize();
    return sum * scale;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CUSP_FORM: return "CUSP_FORM";
        case Verdict::MODULAR_FORM: return "MODULAR_FORM";
        case Verdict::HOLOMORPHIC_FAILURE: return "HOLOMORPHIC_FAILURE";
        case Verdict::CONDITION_FAILURE: return "CONDITION_FAILURE";
    }
    return "?";
}

Classification classify(const EtaQuotient& eq) {
    const WeightConditions wc = weight_and_conditions(eq);
    Classification c;
    c.weight = wc.weight;
    c.cond24_delta = wc.cond24_delta;
    c.cond24_codelta = wc.cond24_codelta;
    if (wc.weight.get_den() == 1) {
        c.character_raw = character_argument(eq, wc);
        c.character_kernel = squarefree_kernel(c.character_raw);
    }
    bool any_zero = false, any_negative = false;
    for (unsigned long d : divisors(eq.level)) {
        mpq_class ord = cusp_order(eq, d);
        if (ord == 0) any_zero = true;
        if (ord < 0) any_negative = true;
        c.cusp_orders.emplace_back(d, std::move(ord));
    }
    if (!wc.cond24_delta || !wc.cond24_codelta ||
        !weight_is_positive_integer(wc.weight))
        c.verdict = Verdict::CONDITION_FAILURE;
    else if (any_negative)
        c.verdict = Verdict::HOLOMORPHIC_FAILURE;
    else if (any_zero)
        c.verdict = Verdict::MODULAR_FORM;
    else
        c.verdict = Verdict::CUSP_FORM;
    return c;
}

Classification classify_sum(const std::vector<EtaQuotient>& summands) {
    if (summands.empty())
        throw std::invalid_argument("classify_sum: no summands");
    std::vector<Classification> parts;
    parts.reserve(summands.size());
    for (const auto& eq : summands)
        parts.push_back(classify(eq));
    Classification out = parts.front();
    bool compatible = true;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        compatible &= summands[i].level == summands.front().level;
        compatible &= parts[i].weight == out.weight;
        compatible &= parts[i].character_kernel == out.character_kernel;
    }
    bool all_holomorphic = true, all_cusp = true;
    for (const auto& p : parts) {
        all_holomorphic &= p.verdict == Verdict::CUSP_FORM ||
                           p.verdict == Verdict::MODULAR_FORM;
        all_cusp &= p.verdict == Verdict::CUSP_FORM;
    }
    if (compatible) {
        for (std::size_t i = 1; i < parts.size(); ++i)
            for (std::size_t k = 0; k < out.cusp_orders.size(); ++k)
                out.cusp_orders[k].second = std::min(
                    out.cusp_orders[k].second, parts[i].cusp_orders[k].second);
    }
    if (!compatible || !all_holomorphic)
        out.verdict = Verdict::CONDITION_FAILURE;
    else
        out.verdict = all_cusp ? Verdict::CUSP_FORM : Verdict::MODULAR_FORM;
    return out;
}

Series q_expansion(const EtaQuotient& eq, std::size_t P, Ring ring) {
    const WeightConditions wc = weight_and_conditions(eq);
    if (wc.sum_delta_r % 24 != 0)
        throw std::domain_error("q_expansion: leading exponent is not integral");
    const long long lead = wc.sum_delta_r / 24;
    if (lead < 0)
        throw std::domain_error("q_expansion: negative leading exponent");
    if (P == 0)
        return Series::zero(ring, 0);
    Series num = Series::one(ring, P);
    Series den = Series::one(ring, P);
    for (const auto& [delta, r] : eq.exponents) {
        Series f = euler_product(delta, P, ring);
        if (r > 0)
            num = mul(num, pow(f, r));
        else
            den = mul(den, pow(f, -r));
    }
    Series out = mul(num, inverse(den));
    if (lead > 0)
        out = truncate(shift(out, static_cast<std::size_t>(lead)), P);
    return out;
}

} // namespace etaq
