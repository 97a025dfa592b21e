#ifndef FFK_RNG_HPP
#define FFK_RNG_HPP

#include <cstdint>

namespace ffk {

// Deterministic xoshiro256** generator. All randomized routines take an
// explicit Rng handle; identical seeds give identical streams on every
// platform, which the CLI's byte-determinism contract relies on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        // fill state with splitmix64 so that seed=0 is fine
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, n) by rejection; n >= 1
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // independent child stream (used by parallel trial racing)
    Rng child(std::uint64_t index) const {
        Rng c(0);
        c.s_[0] = s_[0] ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        c.s_[1] = s_[1] + 0xd1b54a32d192ed03ULL * (index + 1);
        c.s_[2] = s_[2] ^ rotl(index + 0x2545f4914f6cdd1dULL, 23);
        c.s_[3] = s_[3] + index;
        for (int i = 0; i < 8; ++i) c.next();
        return c;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace ffk

#endif
