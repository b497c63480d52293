#pragma once

#include <cstdint>
#include <string_view>

namespace fsbi {

// Portable seeded generator (splitmix64). Identical seed gives the identical
// draw sequence on every platform; substreams are derived by hashing an id
// into the seed so manifest entries can be processed in any order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Decorrelate trivially related seeds.
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive integer range.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(next_u64() % std::uint64_t(hi - lo + 1));
    }

    bool bernoulli(double p) { return uniform() < p; }

    Rng substream(std::uint64_t id) const {
        return Rng(state_ ^ (0x9e3779b97f4a7c15ULL * (id + 0x632be59bd9b4e019ULL)));
    }

    Rng substream(std::string_view id) const { return substream(fnv1a(id)); }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= std::uint64_t(static_cast<unsigned char>(c));
            h *= 0x100000001b3ULL;
        }
        return h;
    }

  private:
    std::uint64_t state_;
};

}  // namespace fsbi
