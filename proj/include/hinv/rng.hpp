#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace hinv {

/// Deterministic random stream: PCG32 (XSH-RR 64/32, O'Neill 2014) with
/// labeled sub-streams.
///
/// Every random draw in the library flows from a single root seed. Modules
/// derive independent streams from that seed by hashing a textual label
/// (plus an optional index) into the PCG stream selector, so one number
/// reproduces a whole run and streams never collide across modules.
///
/// Normal variates use the Box-Muller transform (the second variate of each
/// pair is cached). Chi-square with integer df is a sum of df squared
/// normals; Student-t is normal / sqrt(chisq(df)/df).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    /// Stream with selector derived from a label and an optional index.
    static Rng stream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
        return Rng(seed, stream_id(label, index));
    }

    /// FNV-1a over the label bytes, then the index, then one splitmix64 round.
    static std::uint64_t stream_id(std::string_view label, std::uint64_t index = 0) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        for (int i = 0; i < 8; ++i) {
            h ^= (index >> (8 * i)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
        h += 0x9e3779b97f4a7c15ULL;
        h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
        h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
        return h ^ (h >> 31);
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform on [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Uniform integer in [0, bound) by rejection (no modulo bias).
    std::uint64_t uniform_int(std::uint64_t bound) {
        std::uint64_t threshold = (0u - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform_pos();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Chi-square with positive integer df: sum of df squared normals.
    double chi_squared(int df) {
        double s = 0.0;
        for (int i = 0; i < df; ++i) {
            double z = normal();
            s += z * z;
        }
        return s;
    }

    /// Student-t with positive integer df.
    double student_t(int df) {
        double z = normal();
        return z / std::sqrt(chi_squared(df) / static_cast<double>(df));
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 1;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hinv
