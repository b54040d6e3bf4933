#include "coarse/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace coarse {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t state = master;
    std::uint64_t a = splitmix64(state);
    state = a ^ stream;
    return splitmix64(state);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

std::uint64_t Xoshiro256ss::next() {
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

std::uint64_t uniform_below(Xoshiro256ss& gen, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: empty range");
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t v;
    do {
        v = gen.next();
    } while (v >= limit);
    return v % n;
}

std::vector<std::uint64_t> sample_without_replacement(std::uint64_t universe, std::uint64_t r,
                                                      Xoshiro256ss& gen) {
    if (r > universe) throw std::invalid_argument("sample_without_replacement: r exceeds universe");
    std::vector<std::uint64_t> picks;
    picks.reserve(r);
    std::unordered_map<std::uint64_t, std::uint64_t> swapped;
    for (std::uint64_t i = 0; i < r; ++i) {
        const std::uint64_t j = i + uniform_below(gen, universe - i);
        auto value_of = [&](std::uint64_t k) {
            auto it = swapped.find(k);
            return it == swapped.end() ? k : it->second;
        };
        const std::uint64_t vj = value_of(j);
        swapped[j] = value_of(i);
        picks.push_back(vj);
    }
    std::sort(picks.begin(), picks.end());
    return picks;
}

}  // namespace coarse
