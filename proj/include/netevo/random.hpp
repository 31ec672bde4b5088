// Deterministic random streams. All draws are hand-rolled on top of the
// raw 64-bit generator output so that results are reproducible across
// standard library implementations.
#ifndef NETEVO_RANDOM_HPP_
#define NETEVO_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace netevo {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for replication r of a master seed.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t r)
{
    return splitmix64(splitmix64(master) ^ splitmix64(r + 0x5851f42d4c957f2dULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t next() { return eng_(); }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n).
    std::size_t uniform_index(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("uniform_index: empty range");
        const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = next();
        } while (r >= bound);
        return static_cast<std::size_t>(r % n);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Index drawn from a (normalized) probability vector by inverse CDF.
    int categorical(const std::vector<double>& probs)
    {
        const double u = uniform01();
        double cum = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            cum += probs[k];
            if (u < cum)
                return static_cast<int>(k);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace netevo

#endif // NETEVO_RANDOM_HPP_
