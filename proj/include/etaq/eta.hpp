#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "etaq/series.hpp"

namespace etaq {

// Product over divisors delta of `level` of eta(delta z)^r_delta.
// Exponent map keys always divide level; zero exponents are dropped.
struct EtaQuotient {
    unsigned long level = 0;
    std::map<unsigned long, long> exponents;
};

// Validating factory: checks level >= 1, key divisibility, and that at
// least one exponent is nonzero.
EtaQuotient make_eta_quotient(unsigned long level,
                              std::map<unsigned long, long> exponents);

// Grammar: "N:d1^r1*d2^r2*..." with integer exponents, e.g.
// "3456:24^6*48^-1*72^-1". Repeated divisors accumulate.
EtaQuotient parse_eta_quotient(const std::string& text);
std::string to_string(const EtaQuotient& eq);

// Sorted divisors of n.
std::vector<unsigned long> divisors(unsigned long n);

struct WeightConditions {
    mpq_class weight;        // half the exponent sum
    long long sum_delta_r;   // sum of delta * r_delta
    long long sum_codelta_r; // sum of (level/delta) * r_delta
    bool cond24_delta;       // sum_delta_r divisible by 24
    bool cond24_codelta;     // sum_codelta_r divisible by 24
};

WeightConditions weight_and_conditions(const EtaQuotient& eq);

// Kronecker symbol (a|n), full extension to all integer n.
int kronecker(const mpz_class& a, const mpz_class& n);

// Quadratic character value at d, gcd(d, 2*level) = 1. Requires both
// 24-conditions and integral weight.
int character(const EtaQuotient& eq, const mpz_class& d);

// Vanishing order at the cusps with denominator d, d | level. Exact
// rational; independent of the cusp numerator.
mpq_class cusp_order(const EtaQuotient& eq, unsigned long d);

enum class Verdict { CUSP_FORM, MODULAR_FORM, HOLOMORPHIC_FAILURE, CONDITION_FAILURE };
const char* verdict_name(Verdict v);

struct Classification {
    mpq_class weight;
    bool cond24_delta = false;
    bool cond24_codelta = false;
    // Character argument D with chi(d) = (D|d): raw form and its
    // squarefree reduction (equal Kronecker values for d coprime to
    // 2*level). Zero when the weight is not integral.
    mpz_class character_raw;
    mpz_class character_kernel;
    std::vector<std::pair<unsigned long, mpq_class>> cusp_orders; // per divisor d
    Verdict verdict = Verdict::CONDITION_FAILURE;
};

Classification classify(const EtaQuotient& eq);

// Classification of a sum of eta-quotients. All summands must share the
// level, an integral positive weight, and the character kernel, and each
// must itself be holomorphic; otherwise CONDITION_FAILURE. Reported cusp
// orders are per-divisor minima over the summands (lower bounds for the
// order of the sum).
Classification classify_sum(const std::vector<EtaQuotient>& summands);

// q^(sum_delta_r/24) * product of euler_product(delta,P)^r_delta, truncated
// to P coefficients. Requires sum_delta_r to be a nonnegative multiple of 24.
Series q_expansion(const EtaQuotient& eq, std::size_t P, Ring ring = Ring::INT);

} // namespace etaq
