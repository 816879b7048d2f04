#include "etaq/congruence.hpp"

#include <stdexcept>

#include "etaq/hecke.hpp"

namespace etaq {

SelfSimilarityParams self_similarity_params(const std::string& target,
                                            unsigned long p) {
    if (!is_prime(p))
        throw std::invalid_argument("self_similarity_params: p must be prime");
    SelfSimilarityParams out;
    if (target == "THM_B3") {
        if (p <= 3)
            throw std::invalid_argument("THM_B3 requires p > 3");
        out.alpha = (p * p - 1) / 24;
    } else if (target == "THM_B25") {
        if (p == 2 || p == 5)
            throw std::invalid_argument("THM_B25 requires p coprime to 10");
        out.alpha = 2 * p - 1;
        out.beta = p - 1;
    } else if (target == "THM_B21") {
        if (p <= 3)
            throw std::invalid_argument("THM_B21 requires p > 3");
        out.gamma = (p * p - 1) / 6;
    } else {
        throw std::invalid_argument("self_similarity_params: unknown target " +
                                    target);
    }
    return out;
}

OracleSet::OracleSet(std::size_t cap) : cap_(cap) {}

BtOracle& OracleSet::oracle(unsigned t) {
    return oracles_.try_emplace(t, t, cap_).first->second;
}

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = {
        "KZ_EQ6", "B3_EVEN", "JUDGE", "B25_ODD", "B25_4N1", "B21_4N1",
        "A_UNIT"};
    return names;
}

namespace {

Series f(std::size_t k, std::size_t P) {
    return euler_product(k, P, Ring::GF2);
}

// q^k * a, truncated back to a's precision.
Series qmul(std::size_t k, const Series& a) {
    return truncate(shift(a, k), a.precision());
}

Series bt_bits(BtOracle& o, std::size_t stride, std::size_t offset,
               std::size_t P) {
    o.value(stride * (P - 1) + offset);
    std::vector<mpz_class> bits(P);
    for (std::size_t n = 0; n < P; ++n)
        bits[n] = o.parity(stride * n + offset);
    return Series::from_coeffs(std::move(bits), Ring::GF2);
}

std::optional<std::size_t> first_mismatch(const Series& a, const Series& b) {
    std::size_t P = std::min(a.precision(), b.precision());
    for (std::size_t n = 0; n < P; ++n)
        if (a.coeff_mod2(n) != b.coeff_mod2(n))
            return n;
    return std::nullopt;
}

std::pair<Series, Series> identity_sides(const std::string& name,
                                         std::size_t P, OracleSet& oracles) {
    if (name == "KZ_EQ6") {
        Series f1 = f(1, P), f3 = f(3, P);
        Series lhs = mul(f3, inverse(f1));
        Series rhs = add(mul(pow(f1, 8), inverse(pow(f3, 2))),
                         qmul(1, mul(pow(f3, 10), inverse(pow(f1, 4)))));
        return {lhs, rhs};
    }
    if (name == "B3_EVEN") {
        Series lhs = bt_bits(oracles.oracle(3), 2, 0, P);
        Series rhs = mul(pow(f(1, P), 4), inverse(f(3, P)));
        return {lhs, rhs};
    }
    if (name == "JUDGE") {
        Series f1 = f(1, P), f5 = f(5, P);
        Series lhs = mul(f1, f5);
        Series rhs = add(pow(f1, 6), qmul(1, pow(f5, 6)));
        return {lhs, rhs};
    }
    if (name == "B25_ODD") {
        Series lhs = bt_bits(oracles.oracle(25), 2, 1, P);
        Series f1 = f(1, P), f5 = f(5, P), f25 = f(25, P);
        Series rhs = add(mul(pow(f5, 5), inverse(f1)),
                         qmul(2, mul(mul(pow(f1, 2), pow(f25, 3)),
                                     inverse(f5))));
        return {lhs, rhs};
    }
    if (name == "B25_4N1") {
        // LHS lives in q^{2n}: even coefficients carry b_25(4n+1), odd
        // coefficients must vanish on the RHS.
        BtOracle& o = oracles.oracle(25);
        o.value(4 * ((P - 1) / 2) + 1);
        std::vector<mpz_class> bits(P);
        for (std::size_t n = 0; 2 * n < P; ++n)
            bits[2 * n] = o.parity(4 * n + 1);
        Series lhs = Series::from_coeffs(std::move(bits), Ring::GF2);
        Series f2 = f(2, P), f10 = f(10, P), f50 = f(50, P);
        Series rhs = add(mul(pow(f2, 2), pow(f10, 2)),
                         qmul(2, mul(mul(f2, pow(f10, 2)), f50)));
        return {lhs, rhs};
    }
    if (name == "B21_4N1") {
        Series lhs = bt_bits(oracles.oracle(21), 4, 1, P);
        Series rhs = mul(pow(f(3, P), 4), inverse(f(1, P)));
        return {lhs, rhs};
    }
    if (name == "A_UNIT") {
        Series lhs = mul(pow(f(24, P), 2), inverse(f(48, P)));
        return {lhs, Series::one(Ring::GF2, P)};
    }
    throw std::invalid_argument("verify_identity: unknown name " + name);
}

CongruenceReport scan_report(std::string target,
                             std::optional<std::size_t> failure,
                             std::pair<std::size_t, std::size_t> range) {
    CongruenceReport rep;
    rep.target = std::move(target);
    rep.n_range = range;
    rep.holds = !failure.has_value();
    rep.first_failure = failure;
    return rep;
}

} // namespace

CongruenceReport verify_identity(const std::string& name, std::size_t terms,
                                 OracleSet& oracles) {
    if (terms < 16)
        throw std::invalid_argument("verify_identity: need at least 16 terms");
    auto [lhs, rhs] = identity_sides(name, terms, oracles);
    return scan_report(name, first_mismatch(lhs, rhs), {0, terms - 1});
}

CongruenceReport verify_theorem_b3(unsigned long p, std::size_t n_max,
                                   OracleSet& oracles) {
    SelfSimilarityParams par = self_similarity_params("THM_B3", p);
    const unsigned long alpha = *par.alpha;
    BtOracle& b3 = oracles.oracle(3);
    b3.value(2 * (p * n_max + alpha));
    std::optional<std::size_t> failure;
    for (std::size_t m = 0; m <= n_max; ++m) {
        int lhs = b3.parity(2 * (p * m + alpha));
        int rhs = m % p == 0 ? b3.parity(2 * (m / p)) : 0;
        if (lhs != rhs) {
            failure = m;
            break;
        }
    }
    CongruenceReport rep = scan_report("THM_B3", failure, {0, n_max});
    rep.p = p;
    rep.alpha = alpha;
    return rep;
}

CongruenceReport verify_theorem_b25(unsigned long p, std::size_t n_max,
                                    OracleSet& oracles) {
    SelfSimilarityParams par = self_similarity_params("THM_B25", p);
    const unsigned long alpha = *par.alpha;
    const unsigned long beta = *par.beta;
    BtOracle& b25 = oracles.oracle(25);
    b25.value(2 * p * n_max + alpha);
    std::optional<std::size_t> failure;
    for (std::size_t m = 0; m <= n_max; ++m) {
        int lhs = b25.parity(2 * p * m + alpha);
        int rhs = m % p == beta % p ? b25.parity(2 * ((m - beta) / p) + 1) : 0;
        if (lhs != rhs) {
            failure = m;
            break;
        }
    }
    CongruenceReport rep = scan_report("THM_B25", failure, {0, n_max});
    rep.p = p;
    rep.alpha = alpha;
    rep.beta = beta;
    return rep;
}

CongruenceReport verify_theorem_b21(unsigned long p, std::size_t n_max,
                                    OracleSet& oracles) {
    SelfSimilarityParams par = self_similarity_params("THM_B21", p);
    const unsigned long gamma = *par.gamma;
    BtOracle& b21 = oracles.oracle(21);
    b21.value(p * n_max + 11 * gamma + 1);
    std::optional<std::size_t> failure;
    for (std::size_t m = 0; m <= n_max; ++m) {
        int lhs = b21.parity(p * m + 11 * gamma + 1);
        int rhs = m % p == 0 ? b21.parity(m / p + 1) : 0;
        if (lhs != rhs) {
            failure = m;
            break;
        }
    }
    CongruenceReport rep = scan_report("THM_B21", failure, {0, n_max});
    rep.p = p;
    rep.gamma = gamma;
    return rep;
}

CongruenceReport verify_eq_1_2(std::size_t n_max, OracleSet& oracles) {
    CongruenceReport rep = verify_theorem_b3(13, n_max, oracles);
    rep.target = "EQ_1_2";
    return rep;
}

CongruenceReport verify_kz_b25_vanishing(unsigned long p, std::size_t n_max,
                                         OracleSet& oracles) {
    if (!is_prime(p))
        throw std::invalid_argument("verify_kz_b25_vanishing: p must be prime");
    unsigned long r = p % 20;
    if (r != 11 && r != 13 && r != 17 && r != 19)
        throw std::invalid_argument(
            "verify_kz_b25_vanishing: p must be 11, 13, 17, or 19 mod 20");
    mpz_class p2 = mpz_class(p) * p;
    mpz_class inv4;
    mpz_invert(inv4.get_mpz_t(), mpz_class(4).get_mpz_t(), p2.get_mpz_t());
    mpz_class cz = 3 * inv4 % p2;
    const long long c = cz.get_si();
    const long long p2ll = static_cast<long long>(p) * p;
    BtOracle& b25 = oracles.oracle(25);
    const long long max_idx = p2ll * static_cast<long long>(n_max) +
                              static_cast<long long>(p - 1) * p - c;
    if (max_idx >= 0)
        b25.value(static_cast<std::size_t>(8 * max_idx + 5));
    std::optional<std::size_t> failure;
    for (std::size_t n = 0; n <= n_max && !failure; ++n) {
        for (unsigned long k = 1; k < p; ++k) {
            long long idx = p2ll * static_cast<long long>(n) +
                            static_cast<long long>(k) * p - c;
            if (idx < 0)
                continue;
            if (b25.parity(static_cast<std::size_t>(8 * idx + 5))) {
                failure = n;
                break;
            }
        }
    }
    CongruenceReport rep = scan_report("KZ_B25_VANISHING", failure, {0, n_max});
    rep.p = p;
    return rep;
}

} // namespace etaq
