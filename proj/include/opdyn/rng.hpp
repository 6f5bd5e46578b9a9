#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace opdyn {

/// Sub-stream indices derived from a run's root seed.
enum class Stream : std::uint64_t {
    Network = 1,
    Opinions = 2,
    Roles = 3,
    Shuffle = 4,
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of sub-stream `stream` for root seed `root`.
std::uint64_t derive_seed(std::uint64_t root, Stream stream) noexcept;

/// Platform-independent random source.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so uniform reals and bounded integers are derived
/// here directly from the raw 64-bit words.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t root, Stream stream) {
        return Rng(derive_seed(root, stream));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();

    /// Uniform integer on [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Fisher-Yates, last index first.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace opdyn
