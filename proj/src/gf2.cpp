#include "etaq/gf2.hpp"

#include <algorithm>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define ETAQ_X86_64 1
#endif

namespace etaq::gf2 {

void trim(std::vector<word>& w, std::size_t nbits) {
    std::size_t nw = words_for(nbits);
    w.resize(nw, 0);
    if (nbits % word_bits != 0 && nw > 0)
        w[nw - 1] &= (word(1) << (nbits % word_bits)) - 1;
}

namespace {

// Portable 64x64 -> 128 carry-less multiply: 4-bit window over a with a
// 16-entry table of multiples of b, plus repair terms for the three b bits
// that fall off the top of each table entry.
void clmul64_generic(word a, word b, word& lo, word& hi) {
    word u[16];
    u[0] = 0;
    u[1] = b;
    for (int i = 2; i < 16; i += 2) {
        u[i] = u[i / 2] << 1;
        u[i + 1] = u[i] ^ b;
    }
    word l = u[a & 15], h = 0;
    for (unsigned s = 4; s < 64; s += 4) {
        word g = u[(a >> s) & 15];
        l ^= g << s;
        h ^= g >> (64 - s);
    }
    // Nibble-aligned masks of a's bit k within each window (k = 1,2,3).
    word a1 = (a >> 1) & 0x1111111111111111ULL;
    word a2 = (a >> 2) & 0x1111111111111111ULL;
    word a3 = (a >> 3) & 0x1111111111111111ULL;
    h ^= (word(0) - (b >> 63 & 1)) & a1;
    h ^= (word(0) - (b >> 62 & 1)) & a2;
    h ^= (word(0) - (b >> 61 & 1)) & a3;
    h ^= ((word(0) - (b >> 63 & 1)) & a2) << 1;
    h ^= ((word(0) - (b >> 62 & 1)) & a3) << 1;
    h ^= ((word(0) - (b >> 63 & 1)) & a3) << 2;
    lo = l;
    hi = h;
}

void schoolbook_generic(const word* a, std::size_t na,
                        const word* b, std::size_t nb, word* c) {
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < nb; ++j) {
            if (b[j] == 0) continue;
            word lo, hi;
            clmul64_generic(a[i], b[j], lo, hi);
            c[i + j] ^= lo;
            c[i + j + 1] ^= hi;
        }
    }
}

#ifdef ETAQ_X86_64
__attribute__((target("pclmul,sse4.1")))
void schoolbook_clmul(const word* a, std::size_t na,
                      const word* b, std::size_t nb, word* c) {
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        const __m128i va = _mm_set_epi64x(0, static_cast<long long>(a[i]));
        for (std::size_t j = 0; j < nb; ++j) {
            const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b[j]));
            const __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
            c[i + j] ^= static_cast<word>(_mm_cvtsi128_si64(p));
            c[i + j + 1] ^= static_cast<word>(_mm_extract_epi64(p, 1));
        }
    }
}
#endif

using schoolbook_fn = void (*)(const word*, std::size_t, const word*, std::size_t, word*);

schoolbook_fn resolve_schoolbook() {
#ifdef ETAQ_X86_64
    if (__builtin_cpu_supports("pclmul"))
        return schoolbook_clmul;
#endif
    return schoolbook_generic;
}

schoolbook_fn schoolbook = resolve_schoolbook();

void xor_into(word* dst, const word* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

// c[0..2n) ^= a[0..n) * b[0..n). ws has at least 4n + 64 words.
void kara(const word* a, const word* b, std::size_t n, word* c, word* ws) {
    if (n <= karatsuba_threshold) {
        schoolbook(a, n, b, n, c);
        return;
    }
    const std::size_t h = n / 2;      // low half
    const std::size_t g = n - h;      // high half, g >= h
    word* t0 = ws;                    // g words: a0 + a1
    word* t1 = ws + g;                // g words: b0 + b1
    word* m = ws + 2 * g;             // 2g words: middle product
    word* rest = m + 2 * g;
    for (std::size_t i = 0; i < g; ++i) {
        t0[i] = a[h + i] ^ (i < h ? a[i] : 0);
        t1[i] = b[h + i] ^ (i < h ? b[i] : 0);
    }
    std::fill(m, m + 2 * g, 0);
    kara(t0, t1, g, m, rest);         // (a0+a1)(b0+b1)
    kara(a, b, h, c, rest);           // low: into c[0..2h)
    kara(a + h, b + h, g, c + 2 * h, rest); // high: into c[2h..2n)
    xor_into(m, c, 2 * h);            // m -= low
    xor_into(m, c + 2 * h, 2 * g);    // m -= high
    xor_into(c + h, m, 2 * g);        // add middle at offset h
}

} // namespace

bool has_clmul_hardware() {
#ifdef ETAQ_X86_64
    return __builtin_cpu_supports("pclmul");
#else
    return false;
#endif
}

std::vector<word> mul(const std::vector<word>& a, std::size_t abits,
                      const std::vector<word>& b, std::size_t bbits,
                      std::size_t out_bits) {
    if (abits == 0 || bbits == 0 || out_bits == 0)
        return std::vector<word>(words_for(out_bits), 0);
    // Only the first out_bits coefficients of each operand can reach the output.
    const std::size_t la = words_for(std::min(abits, out_bits));
    const std::size_t lb = words_for(std::min(bbits, out_bits));
    const std::size_t n = std::max(la, lb);
    std::vector<word> full;
    if (n <= karatsuba_threshold) {
        full.assign(la + lb + 1, 0);
        schoolbook(a.data(), la, b.data(), lb, full.data());
    } else {
        std::vector<word> pa(a.begin(), a.begin() + la), pb(b.begin(), b.begin() + lb);
        pa.resize(n, 0);
        pb.resize(n, 0);
        full.assign(2 * n, 0);
        std::vector<word> ws(4 * n + 256, 0);
        kara(pa.data(), pb.data(), n, full.data(), ws.data());
    }
    full.resize(words_for(out_bits), 0);
    trim(full, out_bits);
    return full;
}

std::vector<word> square(const std::vector<word>& a, std::size_t abits,
                         std::size_t out_bits) {
    auto spread = [](word x) {
        x &= 0xffffffffULL;
        x = (x | (x << 16)) & 0x0000ffff0000ffffULL;
        x = (x | (x << 8)) & 0x00ff00ff00ff00ffULL;
        x = (x | (x << 4)) & 0x0f0f0f0f0f0f0f0fULL;
        x = (x | (x << 2)) & 0x3333333333333333ULL;
        x = (x | (x << 1)) & 0x5555555555555555ULL;
        return x;
    };
    std::vector<word> out(words_for(out_bits), 0);
    const std::size_t na = std::min(words_for(abits), words_for(out_bits) / 2 + 1);
    for (std::size_t i = 0; i < na; ++i) {
        if (2 * i < out.size()) out[2 * i] = spread(a[i]);
        if (2 * i + 1 < out.size()) out[2 * i + 1] = spread(a[i] >> 32);
    }
    trim(out, out_bits);
    return out;
}

std::vector<word> inverse(const std::vector<word>& a, std::size_t abits,
                          std::size_t out_bits) {
    if (abits == 0 || !(a[0] & 1))
        throw std::domain_error("gf2::inverse: constant term must be 1");
    std::vector<word> g(words_for(out_bits), 0);
    g[0] = 1;
    // g <- a * g^2 doubles the correct prefix each round (char-2 Newton step).
    std::size_t t = 1;
    while (t < out_bits) {
        const std::size_t nt = std::min(2 * t, out_bits);
        auto g2 = square(g, t, nt);
        g = mul(a, std::min(abits, nt), g2, nt, nt);
        t = nt;
    }
    g.resize(words_for(out_bits), 0);
    trim(g, out_bits);
    return g;
}

} // namespace etaq::gf2
