#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace trigreg {

// Deterministic random stream. Raw bits come from std::mt19937_64 (whose
// output sequence is fixed by the standard); every distribution transform
// is implemented here explicitly, so a given seed produces the same stream
// on any conforming platform. Experiment runners derive one stream per run
// from (master_seed, run_index), which keeps parallel output reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_run(std::uint64_t master_seed, std::uint64_t run_index) {
        // splitmix64 over the pair; decorrelates neighbouring run indices
        std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (run_index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return Rng(z ^ (z >> 31));
    }

    // uniform on [0, 1) with 53 usable bits
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // standard normal via Box-Muller (two uniforms per draw, no cached spare)
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // integer in [lo, hi], unbiased via rejection
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    // Gamma(shape, rate) by Marsaglia-Tsang squeeze; shape < 1 boosted
    double gamma(double shape, double rate) {
        if (shape <= 0.0 || rate <= 0.0)
            throw std::invalid_argument("Rng::gamma: shape and rate must be positive");
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v / rate;
        }
    }

    // k distinct indices from {0, ..., n-1}, order of selection
    std::vector<int> sample_without_replacement(int n, int k) {
        if (k > n || k < 0) throw std::invalid_argument("sample_without_replacement: k > n");
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out(k);
        for (int i = 0; i < k; ++i) {
            const int j = static_cast<int>(integer(i, n - 1));
            std::swap(pool[i], pool[j]);
            out[i] = pool[i];
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace trigreg
