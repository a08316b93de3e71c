#pragma once

#include <cstdint>
#include <random>

#include "blockenc/matrix.hpp"

namespace blockenc {

// All randomized paths in the library draw from this seeded engine so that a
// given (config, seed) pair is exactly reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(engine_);
    }

    double gaussian() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(engine_);
    }

    long binomial(long trials, double p) {
        std::binomial_distribution<long> d(trials, p);
        return d(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

Vector random_unit_vector(std::size_t n, Rng& rng);
Vector random_real_unit_vector(std::size_t n, Rng& rng);

// Haar-ish random unitary: Gram-Schmidt of a complex Gaussian matrix.
Matrix random_unitary(std::size_t n, Rng& rng);

// Q diag(spectrum) Q^dagger for a random unitary Q.
Matrix planted_hermitian(const std::vector<double>& spectrum, Rng& rng);

// Spectrum helpers for planted test systems: log-spaced magnitudes in
// [sigma_max/kappa, sigma_max]; `indefinite` flips signs of all but the
// leading value at random (the leading one stays positive so the spectral
// radius is attained at a positive eigenvalue).
std::vector<double> planted_spectrum(std::size_t n, double kappa, double sigma_max,
                                     bool indefinite, Rng& rng);

} // namespace blockenc
