#include "blockenc/random.hpp"

#include <cmath>

namespace blockenc {

Vector random_unit_vector(std::size_t n, Rng& rng) {
    Vector v(n);
    for (auto& x : v) x = cplx(rng.gaussian(), rng.gaussian());
    return normalized(v);
}

Vector random_real_unit_vector(std::size_t n, Rng& rng) {
    Vector v(n);
    for (auto& x : v) x = cplx(rng.gaussian(), 0.0);
    return normalized(v);
}

Matrix random_unitary(std::size_t n, Rng& rng) {
    std::vector<Vector> cols;
    cols.reserve(n);
    while (cols.size() < n) {
        Vector v(n);
        for (auto& x : v) x = cplx(rng.gaussian(), rng.gaussian());
        for (const auto& prev : cols) v = v - (dot(prev, v) * prev);
        const double remaining = norm(v);
        if (remaining < 1e-8) continue; // essentially dependent draw; retry
        for (auto& x : v) x /= remaining;
        cols.push_back(std::move(v));
    }
    Matrix q(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
    return q;
}

Matrix planted_hermitian(const std::vector<double>& spectrum, Rng& rng) {
    const std::size_t n = spectrum.size();
    const Matrix q = random_unitary(n, rng);
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const cplx qik = q(i, k) * spectrum[k];
            for (std::size_t j = 0; j < n; ++j) m(i, j) += qik * std::conj(q(j, k));
        }
    // Scrub rounding so downstream Hermiticity checks see an exact input.
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = cplx(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    return m;
}

std::vector<double> planted_spectrum(std::size_t n, double kappa, double sigma_max,
                                     bool indefinite, Rng& rng) {
    if (n == 0 || kappa < 1.0 || sigma_max <= 0.0)
        throw validation_error("invalid planted spectrum parameters");
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = (n == 1) ? 0.0 : double(i) / double(n - 1);
        s[i] = sigma_max * std::pow(1.0 / kappa, frac); // log-spaced magnitudes
    }
    if (indefinite)
        for (std::size_t i = 1; i < n; ++i)
            if (rng.uniform(0.0, 1.0) < 0.5) s[i] = -s[i];
    return s;
}

} // namespace blockenc
