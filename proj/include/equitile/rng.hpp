// Small deterministic RNG.  std::mt19937_64 plus the std distributions is
// avoided on purpose: distribution output is implementation-defined and the
// test suite freezes sampled values.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace equitile {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64: tiny, fast, passes BigCrush when used as a stream.
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).  Rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    double unit() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Knuth multiplication method; fine for the small means used here.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        double limit = std::exp(-mean);
        int count = 0;
        double p = 1.0;
        for (;;) {
            p *= unit();
            if (p <= limit) return count;
            ++count;
            if (count > 10'000'000) return count;  // mean misuse guard
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace equitile
