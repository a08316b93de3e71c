#include "blockenc/polytransform.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace blockenc {

namespace {

constexpr int kGridPoints = 2001;

double grid_point(int k) { return -1.0 + 2.0 * double(k) / double(kGridPoints - 1); }

double measure_sup_error(const PolySpec& p, const std::function<cplx(double)>& target) {
    double worst = 0.0;
    for (int k = 0; k < kGridPoints; ++k) {
        const double x = grid_point(k);
        worst = std::max(worst, std::abs(p.eval(x) - target(x)));
    }
    return worst;
}

double measure_sup_mag(const PolySpec& p) {
    double worst = 0.0;
    for (int k = 0; k < kGridPoints; ++k) worst = std::max(worst, std::abs(p.eval(grid_point(k))));
    return worst;
}

void finalize(PolySpec& p, const std::function<cplx(double)>& target) {
    p.degree = int(p.cheb_coeffs.size()) - 1;
    p.sup_error = measure_sup_error(p, target);
    const double mag = measure_sup_mag(p);
    p.cap_scale = std::max(1.0, 2.0 * mag);
    p.escalation = p.requested_degree > 0 ? double(std::max(p.degree, 1)) /
                                                double(std::max(p.requested_degree, 1))
                                          : 1.0;
}

std::vector<cplx> interpolation_coeffs(const std::function<cplx(double)>& f, int degree) {
    // Chebyshev interpolation at the degree+1 Chebyshev nodes of the first kind.
    const int npts = degree + 1;
    std::vector<cplx> fvals(npts);
    for (int j = 0; j < npts; ++j) {
        const double theta = M_PI * (double(j) + 0.5) / double(npts);
        fvals[j] = f(std::cos(theta));
    }
    std::vector<cplx> coeffs(npts);
    for (int k = 0; k < npts; ++k) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < npts; ++j)
            acc += fvals[j] * std::cos(double(k) * M_PI * (double(j) + 0.5) / double(npts));
        coeffs[k] = acc * (k == 0 ? 1.0 : 2.0) / double(npts);
    }
    return coeffs;
}

} // namespace

cplx PolySpec::eval(double x) const {
    if (cheb_coeffs.empty()) return cplx(0.0, 0.0);
    // Clenshaw for sum_k c_k T_k(x).
    cplx b1(0.0, 0.0), b2(0.0, 0.0);
    for (std::size_t k = cheb_coeffs.size(); k-- > 1;) {
        const cplx b0 = 2.0 * x * b1 - b2 + cheb_coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + cheb_coeffs[0];
}

PolySpec exp_filter_poly(double beta, double eps) {
    if (beta < 0.0) throw domain_error("exp_filter_poly requires beta >= 0");
    if (!(eps > 0.0) || eps >= 1.0) throw domain_error("exp_filter_poly requires eps in (0, 1)");
    const double log_term = std::log(1.0 / eps);
    const int requested =
        std::max(1, int(std::ceil(std::sqrt(std::max(beta, log_term) * log_term))));
    const auto target = [beta](double x) { return cplx(std::exp(-beta * (1.0 - x)), 0.0); };

    PolySpec p;
    p.requested_degree = requested;
    std::ostringstream tag;
    tag << "exp_filter(beta=" << beta << ")";
    p.target = tag.str();
    for (int d = requested; d <= std::max(64, 64 * requested); ++d) {
        p.cheb_coeffs = interpolation_coeffs([&](double x) { return target(x); }, d);
        finalize(p, target);
        if (p.sup_error <= eps) return p;
    }
    throw approximation_error("exp filter polynomial failed to certify at escalated degree");
}

PolySpec jacobi_anger_poly(double t, double eps) {
    if (t < 0.0) throw domain_error("jacobi_anger_poly requires t >= 0");
    if (!(eps > 0.0) || eps >= 1.0) throw domain_error("jacobi_anger_poly requires eps in (0, 1)");
    const auto target = [t](double x) { return std::exp(cplx(0.0, -x * t)); };

    PolySpec p;
    std::ostringstream tag;
    tag << "jacobi_anger(t=" << t << ")";
    p.target = tag.str();
    int requested = 0;
    if (t > 1e-12) {
        const double log_term = std::log(1.0 / eps);
        requested = int(std::ceil(t + log_term / std::log(M_E + log_term / t)));
    }
    p.requested_degree = std::max(requested, 1);

    // e^{-ixt} = J_0(t) + 2 sum_{k>=1} (-i)^k J_k(t) T_k(x).
    const auto coeff = [t](int k) -> cplx {
        const double jk = (t == 0.0) ? (k == 0 ? 1.0 : 0.0) : std::cyl_bessel_j(double(k), t);
        cplx unit(1.0, 0.0);
        switch (k % 4) { // (-i)^k
            case 1: unit = cplx(0.0, -1.0); break;
            case 2: unit = cplx(-1.0, 0.0); break;
            case 3: unit = cplx(0.0, 1.0); break;
            default: break;
        }
        return (k == 0 ? 1.0 : 2.0) * unit * jk;
    };

    for (int d = std::max(requested, 0); d <= std::max(128, 64 * std::max(requested, 1)); ++d) {
        p.cheb_coeffs.resize(d + 1);
        for (int k = 0; k <= d; ++k) p.cheb_coeffs[k] = coeff(k);
        finalize(p, target);
        if (p.sup_error <= eps) return p;
    }
    throw approximation_error("Jacobi-Anger truncation failed to certify at escalated degree");
}

PolySpec chebyshev_interpolant(const std::function<double(double)>& f, double lo, double hi,
                               int degree, const std::string& tag) {
    if (!(hi > lo)) throw domain_error("interpolation interval must be nondegenerate");
    if (degree < 0) throw domain_error("interpolation degree must be nonnegative");
    // Interpolate g(u) = f((hi+lo)/2 + (hi-lo)/2 u) on u in [-1, 1]; the caller
    // evaluates through eval_on below using the same affine map.
    const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
    PolySpec p;
    p.cheb_coeffs =
        interpolation_coeffs([&](double u) { return cplx(f(mid + half * u), 0.0); }, degree);
    p.degree = degree;
    p.requested_degree = degree;
    p.target = tag;
    double worst = 0.0;
    for (int k = 0; k < kGridPoints; ++k) {
        const double u = grid_point(k);
        worst = std::max(worst, std::abs(p.eval(u) - cplx(f(mid + half * u), 0.0)));
    }
    p.sup_error = worst;
    p.cap_scale = std::max(1.0, 2.0 * measure_sup_mag(p));
    return p;
}

BlockEncoding apply_poly(const BlockEncoding& e, const PolySpec& p) {
    if (!e.encoded().is_hermitian(1e-10))
        throw symmetry_error("apply_poly requires a Hermitian block (parity handling of the "
                             "singular-value extension is out of scope)");
    EigenDecomposition eig = hermitian_eig(e.encoded());
    const std::size_t n = e.dim();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx pk = p.eval(eig.values[k]);
        const Vector& v = eig.vectors[k];
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = pk * v[i];
            if (vi == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(v[j]);
        }
    }
    const double degree_factor = double(std::max(p.degree, 1));
    CostLedger ledger = e.ledger();
    ledger.scale(degree_factor);
    ledger.count("polynomial-transform");
    const double propagated =
        e.eps() > 0.0 ? 4.0 * degree_factor * std::sqrt(e.eps() / e.alpha()) : 0.0;
    return BlockEncoding(std::move(out), 1.0, e.ancillas() + 2, propagated + p.sup_error, ledger);
}

namespace {

// Shared implementation of the fractional/negative power transforms.  `sign`
// distinguishes M^{-c}/(2 kappa^c) (negative) from M^{c}/2 (positive).
BlockEncoding power_transform(const BlockEncoding& e, double c, double kappa_m, double eps,
                              bool strict, bool negative) {
    if (!(kappa_m >= 1.0)) throw domain_error("power transform requires kappa_M >= 1");
    if (!(eps > 0.0) || eps >= 1.0) throw domain_error("power transform requires eps in (0, 1)");
    if (negative) {
        if (!(c > 0.0)) throw domain_error("negative power transform requires c > 0");
    } else {
        if (!(c > 0.0) || c >= 1.0)
            throw domain_error("positive power transform requires c in (0, 1)");
    }
    if (!e.encoded().is_hermitian(1e-10))
        throw symmetry_error("power transform requires a Hermitian block");

    EigenDecomposition eig = hermitian_eig(e.encoded());
    const bool integer_c = std::abs(c - std::round(c)) < 1e-12;
    const double window_tol = 1e-9 + 8e-6 / kappa_m; // admit boundary eigenvalues
    for (double lam : eig.values) {
        const double mag = std::abs(lam);
        if (mag < 1.0 / kappa_m - window_tol || mag > 1.0 + 1e-9)
            throw spectrum_error("eigenvalue magnitude " + std::to_string(mag) +
                                 " outside [1/kappa_M, 1] window (kappa_M = " +
                                 std::to_string(kappa_m) + ")");
        // The principal fractional branch needs a positive spectrum; integer
        // powers extend to indefinite input through their natural parity.
        if (lam < 0.0 && !integer_c)
            throw spectrum_error("fractional power of a non-positive-definite block");
    }

    const double prefactor = negative ? 0.5 / std::pow(kappa_m, c) : 0.5;
    const auto scalar_map = [&](double lam) -> double {
        if (negative) {
            if (lam >= 0.0) return prefactor * std::pow(lam, -c);
            // integer c only (validated above): (-|x|)^{-c} = (-1)^c |x|^{-c}
            const double mag = prefactor * std::pow(-lam, -c);
            return (long(std::llround(c)) % 2 == 0) ? mag : -mag;
        }
        return prefactor * std::pow(lam, c);
    };

    PolySpec approx;
    if (strict) {
        // Validate the stated eps with an explicit polynomial on the spectral
        // window.  Negative eigenvalues ride on the odd/even extension
        // P(x) = x^parity * Q(x^2) so one interpolant covers both signs.
        const double lo = 1.0 / kappa_m, hi = 1.0;
        const bool odd_extension = negative && integer_c && (std::llround(c) % 2 == 1);
        const std::function<double(double)> core = [&](double y) {
            // y ranges over the squared window when we build in x^2.
            return scalar_map(std::sqrt(y)) / (odd_extension ? std::sqrt(y) : 1.0);
        };
        for (int d = 8; d <= 4096; d *= 2) {
            approx = chebyshev_interpolant(core, lo * lo, hi, d, "power-window");
            // Certify against the true map over the window (both signs).
            double worst = 0.0;
            for (int k = 0; k < kGridPoints; ++k) {
                const double x = lo + (hi - lo) * double(k) / double(kGridPoints - 1);
                const double approx_val =
                    approx.eval(-1.0 + 2.0 * (x * x - lo * lo) / (hi - lo * lo)).real() *
                    (odd_extension ? x : 1.0);
                worst = std::max(worst, std::abs(approx_val - scalar_map(x)));
                if (odd_extension)
                    worst = std::max(worst, std::abs(-approx_val - scalar_map(-x)));
            }
            if (worst <= eps) {
                approx.sup_error = worst;
                break;
            }
            if (d == 4096)
                throw approximation_error("strict power transform failed to certify eps");
        }
    }

    const std::size_t n = e.dim();
    Matrix out(n, n);
    const double lo = 1.0 / kappa_m, hi = 1.0;
    const bool odd_extension = negative && integer_c && (std::llround(c) % 2 == 1);
    for (std::size_t k = 0; k < n; ++k) {
        double val;
        if (strict) {
            const double x = std::abs(eig.values[k]);
            const double u = -1.0 + 2.0 * (x * x - lo * lo) / (hi - lo * lo);
            val = approx.eval(std::min(1.0, std::max(-1.0, u))).real() *
                  (odd_extension ? eig.values[k] / std::max(x, 1e-300) : 1.0);
            if (!odd_extension && eig.values[k] < 0.0 && negative && integer_c)
                val = scalar_map(eig.values[k]); // even integer branch
        } else {
            val = scalar_map(eig.values[k]);
        }
        const Vector& v = eig.vectors[k];
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = val * v[i];
            if (vi == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(v[j]);
        }
    }

    const double factor =
        negative ? kappa_m * (1.0 + c) * std::pow(std::log2(std::pow(kappa_m, 1.0 + c) / eps), 2)
                 : kappa_m * std::pow(std::log2(kappa_m / eps), 2);
    CostLedger ledger = e.ledger();
    ledger.scale(std::max(1.0, factor));
    ledger.count(negative ? "negative-power" : "positive-power");
    // First-order propagation: the scalar map's Lipschitz constant over the
    // window times the input bound, plus the requested approximation error.
    const double lipschitz = negative ? c * kappa_m / 2.0 : 0.5 * c * std::pow(kappa_m, 1.0 - c);
    const double eps_out = eps + lipschitz * e.eps();
    return BlockEncoding(std::move(out), 1.0, e.ancillas() + 2, eps_out, ledger);
}

} // namespace

BlockEncoding neg_power(const BlockEncoding& e, double c, double kappa_m, double eps,
                        bool strict) {
    return power_transform(e, c, kappa_m, eps, strict, true);
}

BlockEncoding pos_power(const BlockEncoding& e, double c, double kappa_m, double eps,
                        bool strict) {
    return power_transform(e, c, kappa_m, eps, strict, false);
}

} // namespace blockenc
