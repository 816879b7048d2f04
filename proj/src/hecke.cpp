#include "etaq/hecke.hpp"

#include <stdexcept>

#include "etaq/errors.hpp"

namespace etaq {

bool is_prime(unsigned long n) {
    mpz_class z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

unsigned long sturm_bound(unsigned long level, unsigned long weight) {
    if (level == 0 || weight == 0)
        throw std::invalid_argument("sturm_bound: level and weight must be positive");
    unsigned long long mu = level;
    unsigned long n = level;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            mu = mu / p * (p + 1);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1)
        mu = mu / n * (n + 1);
    return static_cast<unsigned long>(weight * mu / 12);
}

Series hecke_tp(const Series& f, unsigned long p, unsigned long weight,
                int chi_p) {
    if (!is_prime(p))
        throw std::invalid_argument("hecke_tp: p must be prime");
    if (weight == 0)
        throw std::invalid_argument("hecke_tp: weight must be positive");
    if (chi_p != 1 && chi_p != -1)
        throw std::invalid_argument("hecke_tp: chi_p must be +1 or -1");
    const std::size_t out_prec = f.precision() / p;
    if (out_prec == 0)
        throw std::invalid_argument("hecke_tp: insufficient precision");
    std::vector<mpz_class> coeffs(out_prec);
    if (f.ring() == Ring::GF2) {
        const bool lower_term_odd = (p % 2 == 1) || weight == 1;
        for (std::size_t n = 0; n < out_prec; ++n) {
            int v = f.coeff_mod2(p * n);
            if (lower_term_odd && n % p == 0)
                v ^= f.coeff_mod2(n / p);
            coeffs[n] = v;
        }
        return Series::from_coeffs(std::move(coeffs), Ring::GF2);
    }
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, weight - 1);
    if (chi_p < 0)
        pk = -pk;
    for (std::size_t n = 0; n < out_prec; ++n) {
        coeffs[n] = f.coeff(p * n);
        if (n % p == 0)
            coeffs[n] += pk * f.coeff(n / p);
    }
    return Series::from_coeffs(std::move(coeffs), Ring::INT);
}

namespace {

HeckeReport run_annihilation(const std::vector<EtaQuotient>& summands,
                             unsigned long p, const HeckeCaps& caps) {
    HeckeReport rep;
    rep.prime = p;
    if (!is_prime(p))
        throw std::invalid_argument("annihilation_test: p must be prime");
    const Classification cls = classify_sum(summands);
    if (cls.verdict != Verdict::CUSP_FORM)
        throw std::domain_error(std::string("annihilation_test: form is ") +
                                verdict_name(cls.verdict) + ", need CUSP_FORM");
    const unsigned long N = summands.front().level;
    const unsigned long ell =
        static_cast<unsigned long>(cls.weight.get_num().get_ui());
    if (p == 2 || (2 * N) % p == 0)
        throw std::domain_error("annihilation_test: p divides 2N");
    rep.level = N;
    rep.weight = ell;
    rep.chi_p = kronecker(cls.character_kernel, mpz_class(p));
    rep.sturm = sturm_bound(N, ell);
    const std::size_t need = p * (rep.sturm + 1) + 1;
    if (need > caps.max_precision)
        throw resource_cap_error("annihilation_test: precision " +
                                 std::to_string(need) + " exceeds cap " +
                                 std::to_string(caps.max_precision));
    Series f = Series::zero(Ring::GF2, need);
    for (const auto& eq : summands)
        f = add(f, q_expansion(eq, need, Ring::GF2));
    Series t = hecke_tp(f, p, ell, rep.chi_p);
    rep.terms_checked = t.precision() - 1;
    rep.annihilated_mod2 = true;
    for (std::size_t n = 0; n <= rep.sturm; ++n) {
        if (t.coeff_mod2(n)) {
            rep.annihilated_mod2 = false;
            rep.first_nonzero_index = n;
            break;
        }
    }
    return rep;
}

} // namespace

HeckeReport annihilation_test(const std::vector<EtaQuotient>& summands,
                              unsigned long p, const HeckeCaps& caps) {
    return run_annihilation(summands, p, caps);
}

HeckeReport annihilation_test(const EtaQuotient& eq, unsigned long p,
                              const HeckeCaps& caps) {
    return run_annihilation({eq}, p, caps);
}

std::vector<HeckeReport> prime_search(const std::vector<EtaQuotient>& summands,
                                      long residue, unsigned long modulus,
                                      unsigned long p_max,
                                      const HeckeCaps& caps) {
    if (modulus == 0)
        throw std::invalid_argument("prime_search: modulus must be positive");
    const unsigned long r = static_cast<unsigned long>(
        ((residue % static_cast<long>(modulus)) + static_cast<long>(modulus)) %
        static_cast<long>(modulus));
    std::vector<HeckeReport> out;
    for (unsigned long p = 2; p <= p_max; ++p) {
        if (p % modulus != r || !is_prime(p))
            continue;
        try {
            out.push_back(run_annihilation(summands, p, caps));
        } catch (const resource_cap_error& e) {
            HeckeReport rep;
            rep.prime = p;
            rep.error = std::string("resource cap: ") + e.what();
            out.push_back(std::move(rep));
        } catch (const std::exception& e) {
            HeckeReport rep;
            rep.prime = p;
            rep.error = e.what();
            out.push_back(std::move(rep));
        }
    }
    return out;
}

} // namespace etaq
