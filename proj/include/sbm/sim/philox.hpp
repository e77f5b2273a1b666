#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace sbm {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

// Deterministic stream addressed by (seed, a, b, c). Words are drawn from successive
// counter blocks {block, a, b, c} under key = seed.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint32_t a, std::uint32_t b, std::uint32_t c)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, a_(a), b_(b), c_(c) {}

    std::uint32_t next_u32() {
        if (used_ == 4) {
            buf_ = Philox4x32::generate({block_++, a_, b_, c_}, key_);
            used_ = 0;
        }
        return buf_[used_++];
    }

    // Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Standard normal by Box-Muller; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double th = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    std::uint32_t blocks_used() const { return block_; }

private:
    Philox4x32::Key key_;
    std::uint32_t a_, b_, c_;
    std::uint32_t block_ = 0;
    Philox4x32::Counter buf_{};
    int used_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sbm
