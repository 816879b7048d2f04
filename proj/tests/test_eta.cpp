#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "etaq/eta.hpp"
#include "etaq/partition.hpp"
#include "etaq/series.hpp"

#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

using namespace etaq;

namespace {

const char* B_SPEC = "3456:24^6*48^-1*72^-1";
const char* H_SPEC = "3456:24^1*48^-1*72^4";
const char* F1_SPEC = "100:2^2*10^2";
const char* F2_SPEC = "100:2^1*10^2*50^1";

std::mt19937_64 rng(0xe7a);

// Random eta-quotient with level dividing 3456; delta = 1 is adjusted so
// that sum_delta_r is a multiple of 24 when `integral_lead` is set.
EtaQuotient random_eq(bool integral_lead) {
    const auto levels = divisors(3456);
    for (;;) {
        EtaQuotient eq;
        eq.level = levels[rng() % levels.size()];
        for (unsigned long d : divisors(eq.level))
            if (rng() % 3 == 0) {
                long r = static_cast<long>(rng() % 13) - 6;
                if (r != 0)
                    eq.exponents[d] = r;
            }
        if (integral_lead) {
            long long s = 0;
            for (auto& [d, r] : eq.exponents)
                s += static_cast<long long>(d) * r;
            long long fix = ((-s) % 24 + 24) % 24;
            if (fix)
                eq.exponents[1] += fix;
        }
        if (!eq.exponents.empty() && eq.exponents.count(1) == 0)
            return eq;
        bool nonzero = false;
        for (auto& [d, r] : eq.exponents)
            nonzero |= r != 0;
        if (nonzero)
            return eq;
    }
}

long sum_delta_r(const EtaQuotient& eq) {
    long s = 0;
    for (auto& [d, r] : eq.exponents)
        s += static_cast<long>(d) * r;
    return s;
}

long sum_codelta_r(const EtaQuotient& eq) {
    long s = 0;
    for (auto& [d, r] : eq.exponents)
        s += static_cast<long>(eq.level / d) * r;
    return s;
}

} // namespace

TEST_CASE("grammar: parse, print, accumulate, validate") {
    EtaQuotient b = parse_eta_quotient(B_SPEC);
    CHECK(b.level == 3456);
    CHECK(b.exponents.at(24) == 6);
    CHECK(b.exponents.at(48) == -1);
    CHECK(b.exponents.at(72) == -1);
    EtaQuotient again = parse_eta_quotient(to_string(b));
    CHECK(again.level == b.level);
    CHECK(again.exponents == b.exponents);

    EtaQuotient ws = parse_eta_quotient(" 3456 : 24^6 * 48^-1 * 72^-1 ");
    CHECK(ws.exponents == b.exponents);

    CHECK(parse_eta_quotient("100:2^1*2^1").exponents.at(2) == 2);
    EtaQuotient dropped = parse_eta_quotient("100:2^0*5^1");
    CHECK(dropped.exponents.count(2) == 0);
    CHECK(dropped.exponents.at(5) == 1);

    CHECK_THROWS_AS(parse_eta_quotient("100:3^1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eta_quotient("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eta_quotient("100:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eta_quotient("100"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eta_quotient("100:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eta_quotient("0:1^1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eta_quotient("100:2^0"), std::invalid_argument);
    CHECK_THROWS_AS(make_eta_quotient(100, {{3, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_eta_quotient(100, {}), std::invalid_argument);
}

TEST_CASE("divisor enumeration") {
    CHECK(divisors(1) == std::vector<unsigned long>{1});
    CHECK(divisors(100) ==
          std::vector<unsigned long>{1, 2, 4, 5, 10, 20, 25, 50, 100});
    auto d = divisors(3456);
    CHECK(d.size() == 32);
    CHECK(d.front() == 1);
    CHECK(d.back() == 3456);
    CHECK(std::is_sorted(d.begin(), d.end()));
}

TEST_CASE("weight and the two 24-divisibility conditions") {
    WeightConditions b = weight_and_conditions(parse_eta_quotient(B_SPEC));
    CHECK(b.weight == 2);
    CHECK(b.sum_delta_r == 24);
    CHECK(b.sum_codelta_r == 744);
    CHECK(b.cond24_delta);
    CHECK(b.cond24_codelta);

    WeightConditions h = weight_and_conditions(parse_eta_quotient(H_SPEC));
    CHECK(h.weight == 2);
    CHECK(h.sum_delta_r == 264);
    CHECK(h.cond24_delta);
    CHECK(h.cond24_codelta);

    WeightConditions eta = weight_and_conditions(make_eta_quotient(1, {{1, 1}}));
    CHECK(eta.weight == mpq_class(1, 2));
    CHECK(!eta.cond24_delta);
}

TEST_CASE("kronecker symbol against the euler criterion") {
    for (long a : {-9L, -1L, 0L, 1L, 2L, 55296L})
        CHECK(kronecker(a, 1) == 1);
    CHECK(kronecker(2, 5) == -1);
    CHECK(kronecker(3, 5) == -1);
    CHECK(kronecker(55296, 5) == 1);

    for (unsigned long q : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul,
                            31ul, 37ul, 41ul, 43ul, 47ul}) {
        mpz_class qz(q), e((q - 1) / 2);
        for (long a = -20; a <= 20; ++a) {
            mpz_class az(a), r;
            mpz_powm(r.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(),
                     qz.get_mpz_t());
            int expect = r == 0 ? 0 : (r == 1 ? 1 : -1);
            CHECK(kronecker(az, qz) == expect);
        }
    }

    // Conventions at 2, 0, and -1.
    CHECK(kronecker(6, 2) == 0);
    CHECK(kronecker(1, 2) == 1);
    CHECK(kronecker(7, 2) == 1);
    CHECK(kronecker(3, 2) == -1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-3, -1) == -1);
    CHECK(kronecker(3, -1) == 1);

    // Complete multiplicativity in both arguments (positive bottom).
    for (int trial = 0; trial < 200; ++trial) {
        long a = static_cast<long>(rng() % 41) - 20;
        long b = static_cast<long>(rng() % 41) - 20;
        long m = 1 + static_cast<long>(rng() % 30);
        long n = 1 + static_cast<long>(rng() % 30);
        CHECK(kronecker(mpz_class(a) * b, n) ==
              kronecker(a, n) * kronecker(b, n));
        CHECK(kronecker(a, mpz_class(m) * n) ==
              kronecker(a, m) * kronecker(a, n));
    }
}

TEST_CASE("character argument and squarefree reduction") {
    EtaQuotient B = parse_eta_quotient(B_SPEC);
    Classification cb = classify(B);
    CHECK(cb.character_raw == 55296); // 2^11 * 3^3
    CHECK(cb.character_kernel == 6);
    CHECK(character(B, 1) == 1);
    int seen_minus = 0;
    for (unsigned long d = 1; d <= 120; ++d) {
        if (std::gcd(d, 2 * B.level) != 1)
            continue;
        int raw = kronecker(cb.character_raw, d);
        int red = kronecker(cb.character_kernel, d);
        int chi = character(B, d);
        CHECK(raw == red);
        CHECK(chi == raw);
        seen_minus += chi == -1;
    }
    CHECK(seen_minus > 0);

    // Multiplicativity of the character.
    for (int trial = 0; trial < 100; ++trial) {
        unsigned long d1 = 1 + rng() % 200;
        unsigned long d2 = 1 + rng() % 200;
        if (std::gcd(d1 * d2, 2 * B.level) != 1)
            continue;
        CHECK(character(B, mpz_class(d1) * d2) ==
              character(B, d1) * character(B, d2));
    }

    // Perfect-square s gives the trivial character.
    EtaQuotient F1 = parse_eta_quotient(F1_SPEC);
    Classification cf = classify(F1);
    CHECK(cf.character_raw == 400);
    CHECK(cf.character_kernel == 1);
    for (unsigned long d = 1; d <= 60; ++d)
        if (std::gcd(d, 200ul) == 1)
            CHECK(character(F1, d) == 1);

    CHECK_THROWS_AS(character(make_eta_quotient(1, {{1, 1}}), 5),
                    std::domain_error);
    CHECK_THROWS_AS(character(B, 2), std::domain_error);
    CHECK_THROWS_AS(character(B, 3), std::domain_error);
}

TEST_CASE("cusp orders of the weight-2 level-3456 quotient") {
    EtaQuotient B = parse_eta_quotient(B_SPEC);
    CHECK(cusp_order(B, 1) == 31);
    CHECK(cusp_order(B, 3456) == 1);
    for (unsigned long d : divisors(3456))
        CHECK(cusp_order(B, d) > 0);
    CHECK_THROWS_AS(cusp_order(B, 5), std::invalid_argument);
    CHECK_THROWS_AS(cusp_order(B, 0), std::invalid_argument);
}

TEST_CASE("order sign matches the four-case gcd-ratio analysis") {
    EtaQuotient B = parse_eta_quotient(B_SPEC);
    std::set<std::pair<mpq_class, mpq_class>> seen;
    for (unsigned long d : divisors(3456)) {
        mpq_class g1(mpz_class(std::gcd(d, 24ul)) * std::gcd(d, 24ul),
                     mpz_class(std::gcd(d, 48ul)) * std::gcd(d, 48ul));
        g1.canonicalize();
        mpq_class g2(mpz_class(std::gcd(d, 72ul)) * std::gcd(d, 72ul),
                     mpz_class(std::gcd(d, 48ul)) * std::gcd(d, 48ul));
        g2.canonicalize();
        mpq_class L = 12 * g1 - mpq_class(2, 3) * g2 - 1;
        CHECK((L > 0) == (cusp_order(B, d) > 0));
        seen.insert({g1, g2});
    }
    std::set<std::pair<mpq_class, mpq_class>> expect = {
        {mpq_class(1), mpq_class(1)},
        {mpq_class(1), mpq_class(9)},
        {mpq_class(1, 4), mpq_class(1, 4)},
        {mpq_class(1, 4), mpq_class(9, 4)}};
    CHECK(seen == expect);
}

TEST_CASE("classification verdicts") {
    Classification b = classify(parse_eta_quotient(B_SPEC));
    CHECK(b.verdict == Verdict::CUSP_FORM);
    CHECK(b.weight == 2);
    CHECK(b.cusp_orders.size() == 32);

    Classification h = classify(parse_eta_quotient(H_SPEC));
    CHECK(h.verdict == Verdict::CUSP_FORM);
    CHECK(h.weight == 2);
    CHECK(h.character_raw == 13436928); // 2^11 * 3^8
    CHECK(h.character_kernel == 2);

    Classification f1 = classify(parse_eta_quotient(F1_SPEC));
    Classification f2 = classify(parse_eta_quotient(F2_SPEC));
    CHECK(f1.verdict == Verdict::CUSP_FORM);
    CHECK(f2.verdict == Verdict::CUSP_FORM);
    CHECK(f1.weight == 2);
    CHECK(f2.weight == 2);
    CHECK(f1.character_kernel == f2.character_kernel);

    // Half-integral weight never classifies as a form.
    Classification a = classify(parse_eta_quotient("48:24^2*48^-1"));
    CHECK(a.verdict == Verdict::CONDITION_FAILURE);
    CHECK(a.weight == mpq_class(1, 2));
    CHECK(a.character_raw == 0);

    // Negative order at d = 1.
    Classification neg = classify(parse_eta_quotient("3456:24^-6*48^11*72^-1"));
    CHECK(neg.verdict == Verdict::HOLOMORPHIC_FAILURE);
    CHECK(neg.weight == 2);

    // Vanishing order at d = 4 only.
    Classification mf = classify(parse_eta_quotient("4:1^4*2^6*4^-4"));
    CHECK(mf.verdict == Verdict::MODULAR_FORM);
    CHECK(mf.weight == 3);
    CHECK(cusp_order(parse_eta_quotient("4:1^4*2^6*4^-4"), 4) == 0);
}

TEST_CASE("classification of sums") {
    std::vector<EtaQuotient> F = {parse_eta_quotient(F1_SPEC),
                                  parse_eta_quotient(F2_SPEC)};
    Classification sum = classify_sum(F);
    CHECK(sum.verdict == Verdict::CUSP_FORM);
    CHECK(sum.weight == 2);
    // Per-divisor minima: at d = 100 the two summands vanish to orders 1
    // and 3.
    Classification f1 = classify(F[0]);
    Classification f2 = classify(F[1]);
    for (std::size_t i = 0; i < sum.cusp_orders.size(); ++i) {
        CHECK(sum.cusp_orders[i].second ==
              std::min(f1.cusp_orders[i].second, f2.cusp_orders[i].second));
    }

    CHECK(classify_sum({parse_eta_quotient(B_SPEC)}).verdict ==
          Verdict::CUSP_FORM);
    CHECK_THROWS_AS(classify_sum({}), std::invalid_argument);

    // Mixed levels are not a form.
    Classification mixed = classify_sum(
        {parse_eta_quotient(F1_SPEC), parse_eta_quotient(B_SPEC)});
    CHECK(mixed.verdict == Verdict::CONDITION_FAILURE);

    // Mismatched character kernels are not a form.
    Classification kernels = classify_sum(
        {parse_eta_quotient(B_SPEC), parse_eta_quotient(H_SPEC)});
    CHECK(kernels.verdict == Verdict::CONDITION_FAILURE);
}

TEST_CASE("q-expansions") {
    const std::size_t P = 240;
    EtaQuotient B = parse_eta_quotient(B_SPEC);
    Series bq = q_expansion(B, P);
    CHECK(bq.valuation() == 1);
    Series rhs = truncate(
        shift(mul(pow(euler_product(24, P, Ring::GF2), 4),
                  inverse(euler_product(72, P, Ring::GF2))),
              1),
        P);
    CHECK(to_gf2(bq) == rhs);
    CHECK(q_expansion(B, P, Ring::GF2) == rhs);

    CHECK(q_expansion(parse_eta_quotient(H_SPEC), 40).valuation() == 11);
    CHECK(q_expansion(parse_eta_quotient(F1_SPEC), 40).valuation() == 1);
    CHECK(q_expansion(parse_eta_quotient(F2_SPEC), 40).valuation() == 3);

    // A negative order away from infinity still expands (valuation 312/24).
    CHECK(q_expansion(parse_eta_quotient("3456:24^-6*48^11*72^-1"), 20)
              .valuation() == 13);

    CHECK_THROWS_AS(q_expansion(make_eta_quotient(1, {{1, 1}}), 10),
                    std::domain_error); // lead 1/24 not integral
    CHECK_THROWS_AS(q_expansion(parse_eta_quotient("1:1^-24"), 10),
                    std::domain_error); // pole at infinity
}

TEST_CASE("sum of the two level-100 quotients carries b_25 parities") {
    const std::size_t P = 400;
    Series F = add(q_expansion(parse_eta_quotient(F1_SPEC), P, Ring::GF2),
                   q_expansion(parse_eta_quotient(F2_SPEC), P, Ring::GF2));
    BtOracle b25(25);
    for (std::size_t n = 0; n < P; ++n) {
        if (n % 2 == 1)
            CHECK(F.coeff_mod2(n) == b25.parity(2 * n - 1)); // n = 2m+1
        else
            CHECK(F.coeff_mod2(n) == 0);
    }
}

TEST_CASE("random quotients: boundary cusp orders and valuations") {
    for (int trial = 0; trial < 100; ++trial) {
        EtaQuotient eq = random_eq(false);
        mpq_class at_n = cusp_order(eq, eq.level);
        mpq_class at_1 = cusp_order(eq, 1);
        mpq_class en(mpz_class(sum_delta_r(eq)), mpz_class(24));
        mpq_class e1(mpz_class(sum_codelta_r(eq)), mpz_class(24));
        en.canonicalize();
        e1.canonicalize();
        CHECK(at_n == en);
        CHECK(at_1 == e1);
    }
    for (int trial = 0; trial < 100; ++trial) {
        EtaQuotient eq = random_eq(true);
        long long lead = sum_delta_r(eq);
        REQUIRE(lead % 24 == 0);
        if (lead < 0) {
            CHECK_THROWS_AS(q_expansion(eq, 8), std::domain_error);
            continue;
        }
        std::size_t P = static_cast<std::size_t>(lead / 24) + 40;
        Series s = q_expansion(eq, P);
        CHECK(s.valuation() == static_cast<std::size_t>(lead / 24));
    }
}

TEST_CASE("expansion of a pointwise exponent sum is the product") {
    for (int trial = 0; trial < 40; ++trial) {
        EtaQuotient a = random_eq(true);
        EtaQuotient b = random_eq(true);
        b.level = a.level = 3456; // exponents divide 3456 by construction
        long long la = sum_delta_r(a), lb = sum_delta_r(b);
        if (la < 0 || lb < 0)
            continue;
        EtaQuotient ab;
        ab.level = 3456;
        ab.exponents = a.exponents;
        for (auto& [d, r] : b.exponents)
            ab.exponents[d] += r;
        bool allzero = true;
        for (auto& [d, r] : ab.exponents)
            allzero &= r == 0;
        if (allzero)
            continue;
        const std::size_t P = 160 + static_cast<std::size_t>((la + lb) / 24);
        CHECK(q_expansion(ab, P) ==
              mul(q_expansion(a, P), q_expansion(b, P)));
    }
}
