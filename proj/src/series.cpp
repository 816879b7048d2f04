#include "etaq/series.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace etaq {

const char* ring_name(Ring r) { return r == Ring::INT ? "int" : "gf2"; }

Series::Series(Ring r, std::size_t prec) : ring_(r), prec_(prec), val_(prec) {
    if (r == Ring::INT)
        ints_.assign(prec, mpz_class(0));
    else
        words_.assign(gf2::words_for(prec), 0);
}

void Series::normalize() {
    if (ring_ == Ring::GF2) {
        words_.resize(gf2::words_for(prec_), 0);
        gf2::trim(words_, prec_);
        val_ = prec_;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w]) {
                val_ = w * gf2::word_bits +
                       static_cast<std::size_t>(__builtin_ctzll(words_[w]));
                break;
            }
        }
    } else {
        val_ = prec_;
        for (std::size_t i = 0; i < prec_; ++i) {
            if (ints_[i] != 0) {
                val_ = i;
                break;
            }
        }
    }
}

Series Series::zero(Ring r, std::size_t precision) { return Series(r, precision); }

Series Series::one(Ring r, std::size_t precision) {
    return monomial(r, 0, precision);
}

Series Series::monomial(Ring r, std::size_t exponent, std::size_t precision) {
    Series s(r, precision);
    if (exponent < precision) {
        if (r == Ring::INT)
            s.ints_[exponent] = 1;
        else
            gf2::set_bit(s.words_, exponent, true);
        s.val_ = exponent;
    }
    return s;
}

Series Series::from_coeffs(std::vector<mpz_class> coeffs, Ring r) {
    if (r == Ring::INT) {
        Series s(Ring::INT, coeffs.size());
        s.ints_ = std::move(coeffs);
        s.normalize();
        return s;
    }
    Series s(Ring::GF2, coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (mpz_odd_p(coeffs[i].get_mpz_t()))
            gf2::set_bit(s.words_, i, true);
    s.normalize();
    return s;
}

Series Series::from_ints(const std::vector<long>& coeffs, Ring r) {
    std::vector<mpz_class> z(coeffs.begin(), coeffs.end());
    return from_coeffs(std::move(z), r);
}

mpz_class Series::coeff(std::size_t n) const {
    if (n >= prec_)
        throw std::out_of_range("Series::coeff: exponent beyond precision");
    if (ring_ == Ring::INT)
        return ints_[n];
    return mpz_class(gf2::get_bit(words_, n) ? 1 : 0);
}

int Series::coeff_mod2(std::size_t n) const {
    if (n >= prec_)
        throw std::out_of_range("Series::coeff_mod2: exponent beyond precision");
    if (ring_ == Ring::GF2)
        return gf2::get_bit(words_, n) ? 1 : 0;
    return mpz_odd_p(ints_[n].get_mpz_t()) ? 1 : 0;
}

namespace {

void require_same_ring(const Series& a, const Series& b, const char* op) {
    if (a.ring() != b.ring())
        throw std::invalid_argument(std::string(op) + ": ring mismatch");
}

} // namespace

Series add(const Series& a, const Series& b) {
    require_same_ring(a, b, "add");
    const std::size_t P = std::min(a.prec_, b.prec_);
    Series out(a.ring_, P);
    if (a.ring_ == Ring::INT) {
        for (std::size_t i = 0; i < P; ++i)
            out.ints_[i] = a.ints_[i] + b.ints_[i];
    } else {
        for (std::size_t w = 0; w < out.words_.size(); ++w)
            out.words_[w] = a.words_[w] ^ b.words_[w];
    }
    out.normalize();
    return out;
}

Series sub(const Series& a, const Series& b) {
    require_same_ring(a, b, "sub");
    if (a.ring_ == Ring::GF2)
        return add(a, b);
    const std::size_t P = std::min(a.prec_, b.prec_);
    Series out(Ring::INT, P);
    for (std::size_t i = 0; i < P; ++i)
        out.ints_[i] = a.ints_[i] - b.ints_[i];
    out.normalize();
    return out;
}

Series mul(const Series& a, const Series& b) {
    require_same_ring(a, b, "mul");
    const std::size_t P = std::min(a.prec_, b.prec_);
    Series out(a.ring_, P);
    if (a.ring_ == Ring::GF2) {
        out.words_ = (&a == &b) ? gf2::square(a.words_, a.prec_, P)
                                : gf2::mul(a.words_, a.prec_, b.words_, b.prec_, P);
    } else {
        // Truncated Cauchy product; zero coefficients are common (sparse
        // eta-quotient expansions), so skip them.
        for (std::size_t i = a.val_; i < P; ++i) {
            if (a.ints_[i] == 0) continue;
            const std::size_t jmax = P - i;
            for (std::size_t j = b.val_; j < jmax && j < b.prec_; ++j) {
                if (b.ints_[j] == 0) continue;
                mpz_addmul(out.ints_[i + j].get_mpz_t(), a.ints_[i].get_mpz_t(),
                           b.ints_[j].get_mpz_t());
            }
        }
    }
    out.normalize();
    return out;
}

Series inverse(const Series& a) {
    if (a.prec_ == 0)
        throw std::domain_error("inverse: empty series");
    if (a.ring_ == Ring::GF2) {
        if (!a.coeff_mod2(0))
            throw std::domain_error("inverse: constant term must be a unit");
        Series out(Ring::GF2, a.prec_);
        out.words_ = gf2::inverse(a.words_, a.prec_, a.prec_);
        out.normalize();
        return out;
    }
    const mpz_class c0 = a.ints_[0];
    if (c0 != 1 && c0 != -1)
        throw std::domain_error("inverse: constant term must be a unit");
    const std::size_t P = a.prec_;
    // Newton iteration b <- b(2 - a b), doubling the correct prefix.
    Series b(Ring::INT, P);
    b.ints_[0] = c0;
    b.normalize();
    std::size_t t = 1;
    while (t < P) {
        const std::size_t nt = std::min(2 * t, P);
        Series e = mul(truncate(a, nt), truncate(b, nt)); // 1 + O(q^t)
        for (std::size_t i = 0; i < nt; ++i)
            e.ints_[i] = -e.ints_[i];
        e.ints_[0] += 2;
        Series bn = mul(truncate(b, nt), e);
        std::copy(bn.ints_.begin(), bn.ints_.end(), b.ints_.begin());
        t = nt;
    }
    b.normalize();
    return b;
}

Series pow(const Series& a, long e) {
    Series result = Series::one(a.ring(), a.precision());
    Series base = e < 0 ? inverse(a) : a;
    unsigned long k = e < 0 ? 0UL - static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(e);
    while (k) {
        if (k & 1)
            result = mul(result, base);
        k >>= 1;
        if (k)
            base = mul(base, base);
    }
    return result;
}

Series dissect(const Series& a, std::size_t m, std::size_t r) {
    if (m == 0)
        throw std::invalid_argument("dissect: modulus must be positive");
    if (r >= m)
        throw std::invalid_argument("dissect: residue must satisfy r < m");
    const std::size_t P = a.prec_ > r ? (a.prec_ - r + m - 1) / m : 0;
    Series out(a.ring_, P);
    for (std::size_t n = 0; n < P; ++n) {
        const std::size_t src = m * n + r;
        if (a.ring_ == Ring::INT)
            out.ints_[n] = a.ints_[src];
        else if (gf2::get_bit(a.words_, src))
            gf2::set_bit(out.words_, n, true);
    }
    out.normalize();
    return out;
}

Series inflate(const Series& a, std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("inflate: m must be positive");
    if (m == 1 || a.prec_ == 0)
        return a;
    const std::size_t P = m * (a.prec_ - 1) + 1;
    Series out(a.ring_, P);
    if (a.ring_ == Ring::GF2 && m == 2) {
        out.words_ = gf2::square(a.words_, a.prec_, P);
    } else {
        for (std::size_t n = 0; n < a.prec_; ++n) {
            if (a.ring_ == Ring::INT)
                out.ints_[m * n] = a.ints_[n];
            else if (gf2::get_bit(a.words_, n))
                gf2::set_bit(out.words_, m * n, true);
        }
    }
    out.normalize();
    return out;
}

Series shift(const Series& a, std::size_t k) {
    if (k == 0)
        return a;
    Series out(a.ring_, a.prec_ + k);
    if (a.ring_ == Ring::INT) {
        for (std::size_t n = 0; n < a.prec_; ++n)
            out.ints_[n + k] = a.ints_[n];
    } else {
        for (std::size_t n = 0; n < a.prec_; ++n)
            if (gf2::get_bit(a.words_, n))
                gf2::set_bit(out.words_, n + k, true);
    }
    out.normalize();
    return out;
}

Series truncate(const Series& a, std::size_t P) {
    if (P > a.prec_)
        throw std::invalid_argument("truncate: cannot extend precision");
    if (P == a.prec_)
        return a;
    Series out(a.ring_, P);
    if (a.ring_ == Ring::INT)
        out.ints_.assign(a.ints_.begin(), a.ints_.begin() + P);
    else
        out.words_.assign(a.words_.begin(), a.words_.begin() + gf2::words_for(P));
    out.normalize();
    return out;
}

Series to_gf2(const Series& a) {
    if (a.ring_ == Ring::GF2)
        return a;
    Series out(Ring::GF2, a.prec_);
    for (std::size_t n = 0; n < a.prec_; ++n)
        if (mpz_odd_p(a.ints_[n].get_mpz_t()))
            gf2::set_bit(out.words_, n, true);
    out.normalize();
    return out;
}

Series euler_product(std::size_t k, std::size_t P, Ring ring) {
    if (k == 0)
        throw std::invalid_argument("euler_product: k must be positive");
    if (P == 0)
        throw std::invalid_argument("euler_product: precision must be positive");
    Series out(ring, P);
    // (q^k;q^k)_inf = sum over all integers j of (-1)^j q^{k j(3j-1)/2}.
    auto put = [&](unsigned long long e, int sign) {
        if (e >= P) return false;
        if (ring == Ring::INT)
            out.ints_[e] = sign;
        else
            gf2::flip_bit(out.words_, e);
        return true;
    };
    put(0, 1);
    for (unsigned long long j = 1;; ++j) {
        const unsigned long long g1 = j * (3 * j - 1) / 2;
        const unsigned long long g2 = j * (3 * j + 1) / 2;
        const int sign = (j % 2) ? -1 : 1;
        bool any = put(g1 * k, sign);
        any |= put(g2 * k, sign);
        if (!any) break;
    }
    out.normalize();
    return out;
}

bool operator==(const Series& a, const Series& b) {
    if (a.ring_ != b.ring_ || a.prec_ != b.prec_)
        return false;
    return a.ring_ == Ring::INT ? a.ints_ == b.ints_ : a.words_ == b.words_;
}

bool prefix_equal(const Series& a, const Series& b, std::size_t n) {
    if (a.ring() != b.ring())
        return false;
    if (n > a.precision() || n > b.precision())
        throw std::invalid_argument("prefix_equal: prefix exceeds precision");
    for (std::size_t i = 0; i < n; ++i) {
        if (a.ring() == Ring::GF2) {
            if (a.coeff_mod2(i) != b.coeff_mod2(i)) return false;
        } else if (a.coeff(i) != b.coeff(i)) {
            return false;
        }
    }
    return true;
}

std::ostream& operator<<(std::ostream& os, const Series& s) {
    os << "Series(" << ring_name(s.ring()) << ", P=" << s.precision() << ")[";
    const std::size_t show = std::min<std::size_t>(s.precision(), 16);
    for (std::size_t i = 0; i < show; ++i) {
        if (i) os << ", ";
        os << s.coeff(i);
    }
    if (show < s.precision()) os << ", ...";
    return os << "]";
}

void write_cache(std::ostream& os, const Series& s) {
    os << "qseries v1 ring=" << ring_name(s.ring())
       << " precision=" << s.precision() << "\n";
    if (s.ring() == Ring::INT) {
        for (std::size_t i = 0; i < s.precision(); ++i)
            os << s.coeff(i) << "\n";
    } else {
        char buf[17];
        for (gf2::word w : s.words()) {
            std::snprintf(buf, sizeof buf, "%016llx",
                          static_cast<unsigned long long>(w));
            os << buf << "\n";
        }
    }
}

Series read_cache(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("read_cache: missing header");
    std::istringstream hs(header);
    std::string magic, version, ringkv, preckv;
    hs >> magic >> version >> ringkv >> preckv;
    if (magic != "qseries" || version != "v1" ||
        ringkv.rfind("ring=", 0) != 0 || preckv.rfind("precision=", 0) != 0)
        throw std::runtime_error("read_cache: malformed header: " + header);
    const std::string ringstr = ringkv.substr(5);
    const std::size_t P = std::stoull(preckv.substr(10));
    if (ringstr == "int") {
        std::vector<mpz_class> coeffs(P);
        std::string line;
        for (std::size_t i = 0; i < P; ++i) {
            if (!std::getline(is, line))
                throw std::runtime_error("read_cache: truncated file");
            coeffs[i] = mpz_class(line);
        }
        return Series::from_coeffs(std::move(coeffs), Ring::INT);
    }
    if (ringstr != "gf2")
        throw std::runtime_error("read_cache: unknown ring: " + ringstr);
    Series out(Ring::GF2, P);
    std::string line;
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        if (!std::getline(is, line))
            throw std::runtime_error("read_cache: truncated file");
        out.words_[i] = std::stoull(line, nullptr, 16);
    }
    out.normalize();
    return out;
}

} // namespace etaq
