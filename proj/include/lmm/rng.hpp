#ifndef LMM_RNG_HPP
#define LMM_RNG_HPP

#include <array>
#include <cstdint>

namespace lmm {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Each (seed, stream) pair addresses an independent substream; simulation
// code keys streams by path index, so the draws a path sees are a pure
// function of (seed, path) and never depend on thread count or scheduling.
class PhiloxStream {
  public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::uint64_t next_u64() {
        if (word_ == 4) {
            block_ = philox_block(counter_++, stream_, key_);
            word_ = 0;
        }
        const std::uint64_t lo = block_[word_];
        const std::uint64_t hi = block_[word_ + 1];
        word_ += 2;
        return lo | (hi << 32);
    }

    // Uniform on the open interval (0,1); never returns an endpoint, so the
    // inverse-CDF transform below is always finite.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via inverse-CDF transform (monotone in the uniform).
    double next_normal();

    // One 4x32 output block for counter (ctr_lo, stream) under key.  Exposed
    // so tests can check against known-answer vectors.
    static std::array<std::uint32_t, 4> philox_block(std::uint64_t ctr_lo,
                                                     std::uint64_t ctr_hi,
                                                     std::array<std::uint32_t, 2> key);

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int word_ = 4;
};

} // namespace lmm

#endif
