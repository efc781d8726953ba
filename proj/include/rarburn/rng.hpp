#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rarburn {

// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the output
// is a pure function of (counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept;
};

// Counter-based random stream addressed by (master_seed, replication_index).
//
// The master seed is the Philox key; the replication index occupies the two
// high counter words and the block index the two low words, so streams for
// distinct replications never overlap and can be generated in any order or on
// any thread with identical results.
class RngStream {
public:
    using result_type = std::uint32_t;

    RngStream(std::uint64_t master_seed, std::uint64_t replication_index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    bool bernoulli(double p) noexcept { return uniform() < p; }

    // Uniform integer in [0, bound); bound must be positive.
    std::uint32_t below(std::uint32_t bound) noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t replication_index() const noexcept { return replication_index_; }

private:
    void refill() noexcept;

    std::uint64_t master_seed_;
    std::uint64_t replication_index_;
    std::uint64_t block_ = 0;
    Philox4x32::Counter buffer_{};
    int next_ = 4;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Derives an independent master seed for a named sub-experiment, e.g. the
// power and type-I runs of one table row.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view tag) noexcept;

}  // namespace rarburn
