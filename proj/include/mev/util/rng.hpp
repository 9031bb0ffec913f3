#pragma once

#include <cstdint>
#include <random>

#include "mev/util/rational.hpp"

namespace mev {

// Deterministic RNG wrapper. mt19937_64 output is fully specified by the
// standard; the std distributions are not, so bounded draws and real-valued
// samples are derived here with integer arithmetic only. Identical seeds give
// identical streams on every platform.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Unbiased draw in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n)
    {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return v % n;
    }

    // Exact dyadic rational in [0, 1) with denominator 2^53.
    Rat unit()
    {
        return Rat(BigInt(eng_() >> 11), BigInt(1) << 53);
    }

    Rat uniform(const Rat& a, const Rat& b) { return a + (b - a) * unit(); }

    // Inverse-CDF exponential with the log computed in fixed point; result is
    // an exact rational, so replay never depends on libm rounding.
    Rat exponential(const Rat& mean)
    {
        // 1 - U = v / 2^53 with v in [1, 2^53]
        const std::uint64_t v = (BigInt(1) << 53).convert_to<std::uint64_t>() - (eng_() >> 11);
        // E = -ln(1-U) = 53*ln2 - ln(v)
        const Rat ln_v = ln_of_u64(v);
        const Rat e = Rat(53) * kLn2 - ln_v;
        return mean * e;
    }

    template <typename Vec>
    void shuffle(Vec& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    // log2 of x in [1,2) as a Q0.32 fraction, by repeated squaring.
    static std::uint64_t log2_frac_q32(std::uint64_t x_q32)
    {
        std::uint64_t frac = 0;
        for (int i = 0; i < 32; ++i) {
            unsigned __int128 sq = static_cast<unsigned __int128>(x_q32) * x_q32;
            std::uint64_t y = static_cast<std::uint64_t>(sq >> 32); // back to Q32.32
            frac <<= 1;
            if (y >= (2ULL << 32)) {
                frac |= 1;
                y >>= 1;
            }
            x_q32 = y;
        }
        return frac;
    }

    static Rat ln_of_u64(std::uint64_t v)
    {
        if (v <= 1) return Rat(0);
        int p = 63;
        while (!(v >> p)) --p; // 2^p <= v < 2^(p+1)
        // mantissa in [1,2) as Q32.32
        std::uint64_t mant;
        if (p >= 32) mant = v >> (p - 32);
        else mant = v << (32 - p);
        const std::uint64_t frac = log2_frac_q32(mant);
        const Rat log2v = Rat(p) + Rat(BigInt(frac), BigInt(1) << 32);
        return log2v * kLn2;
    }

    // ln2 as an exact dyadic approximation (Q0.64), error < 2^-64.
    static inline const Rat kLn2 = Rat(BigInt("12786308645202655660"), BigInt(1) << 64);

    std::mt19937_64 eng_;
};

} // namespace mev
