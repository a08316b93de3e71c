#include "blockenc/qlsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "blockenc/error.hpp"
#include "blockenc/polytransform.hpp"

namespace blockenc {

namespace {

// Eigenvalue extremes of a Hermitian matrix, by sign and by magnitude.  The
// solver reuses these for window sizing, amplification targets, and the
// reported scales, always measuring rather than assuming.
struct SpectralExtremes {
    double lam_min = 0.0;
    double lam_max = 0.0;
    double sig_min = std::numeric_limits<double>::infinity();
    double sig_max = 0.0;
};

SpectralExtremes spectral_extremes(const Matrix& a) {
    EigenDecomposition eig = hermitian_eig(a);
    SpectralExtremes ext;
    ext.lam_max = eig.values.front();
    ext.lam_min = eig.values.back();
    for (double lam : eig.values) {
        ext.sig_min = std::min(ext.sig_min, std::abs(lam));
        ext.sig_max = std::max(ext.sig_max, std::abs(lam));
    }
    return ext;
}

void snapshot(StageTrace* trace, const std::string& stage, const CostLedger& led, double eps) {
    if (trace) trace->push_back({stage, led.queries, led.depth_proxy, eps});
}

std::size_t max_row_nonzeros(const Matrix& a) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::size_t row = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j)) > 1e-14) ++row;
        s = std::max(s, row);
    }
    return s;
}

// Row-loading Gram construction: |phi> = sum_ij conj(M_ij)/||M||_F |i>|j>,
// tracing the row register leaves M^dagger M / ||M||_F^2 in the block.
// Charged as two state-preparation queries at depth log(s n).
BlockEncoding gram_encoding(const Matrix& m, std::size_t sparsity) {
    const std::size_t n = m.rows();
    const double f = m.frobenius_norm();
    if (f < 1e-300) throw singularity_error("cannot Gram-encode a zero matrix");
    Vector psi(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) psi[i * n + j] = std::conj(m(i, j)) / f;
    BlockEncoding raw = density_from_state(psi, n);
    CostLedger led;
    led.queries = 2.0;
    led.depth_proxy =
        2.0 * std::log2(std::max<double>(2.0, double(std::max<std::size_t>(sparsity, 1)) * double(n)));
    led.count("gram-encoding");
    return BlockEncoding(raw.encoded(), raw.alpha(), raw.ancillas(), raw.eps(), led);
}

// Shared tail of both paths.  `inv` holds final_scale * A^{-1}; amplify it
// toward the canonical (1/(2 kappa)) A^{-1} when that is within reach, then
// post-select on b and assemble the report.
SolveResult finish_solve(const LinearSystem& sys, double eps, const SolveOptions& opts,
                         BlockEncoding inv, double final_scale, SolvePath path,
                         StageTrace trace, double shift_condition,
                         const SpectralExtremes& ext) {
    if (ext.sig_max < 1.0 - 1e-12) {
        const double gamma = 1.0 / ext.sig_max;
        // The amplified block tops out at gamma * 1/2; it fits only while
        // sigma_max > 1/2.  Otherwise stay at the partial scale and say so.
        const double headroom = 1.0 - 1.0 / (2.0 * ext.sig_max);
        if (headroom > 1e-8) {
            const double delta = std::min(0.45, 0.9 * headroom);
            inv = amplify(inv, gamma, delta, std::min(0.49, eps / 8.0));
            final_scale *= gamma;
            snapshot(&trace, "amplify", inv.ledger(), inv.eps());
        }
    }

    PostSelectOutcome sel = post_select(inv, sys.b, opts.amplitude_amplification);
    snapshot(&trace, "post-select", sel.ledger, inv.eps());

    SolveResult res;
    res.path = path;
    res.state = std::move(sel.state);
    res.measured_prob = sel.prob;
    res.ledger = std::move(sel.ledger);
    res.stages = std::move(trace);
    res.kappa = sys.kappa;
    res.spectral_scale = sys.spectral_scale;
    res.shift_condition = shift_condition;
    res.final_scale = final_scale;

    const Vector exact = inverse_oracle(sys.a) * sys.b;
    const double exact_norm = norm(exact);
    res.success_prob = final_scale * final_scale * exact_norm * exact_norm;
    res.fidelity = std::abs(dot(res.state, normalized(exact)));
    res.eps_bound = 2.0 * inv.eps() / std::sqrt(std::max(res.measured_prob, 1e-300));
    return res;
}

} // namespace

LinearSystem ingest_system(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols()) throw shape_error("system matrix must be square");
    if (b.size() != a.rows()) throw shape_error("right-hand side length must match the matrix");
    if (!a.is_hermitian(1e-10)) throw symmetry_error("system matrix must be Hermitian");
    const double nb = norm(b);
    if (nb < 1e-300) throw validation_error("right-hand side must be nonzero");

    LinearSystem sys;
    sys.b = normalized(b);
    const SpectralExtremes ext = spectral_extremes(a);
    double scale = 1.0;
    if (ext.sig_max > 1.0) {
        scale = (1.0 - 1e-6) / ext.sig_max;
    } else if (ext.lam_min <= -1.0 + 1e-12) {
        // An eigenvalue exactly at -1 makes the shift (I+A)/2 singular; pull
        // the whole spectrum in slightly.  Boundary +1 needs no such care.
        scale = 1.0 - 1e-6;
    }
    sys.a = (scale == 1.0) ? a : a * cplx(scale, 0.0);
    sys.spectral_scale = scale;
    sys.kappa = ext.sig_min > 1e-300 ? ext.sig_max / ext.sig_min
                                     : std::numeric_limits<double>::infinity();
    sys.sparsity = max_row_nonzeros(sys.a);
    sys.frobenius_scale = sys.a.frobenius_norm();
    return sys;
}

BlockEncoding encode_system(const LinearSystem& sys) {
    return gram_encoding(sys.a, sys.sparsity);
}

SolveResult solve_psd(const LinearSystem& sys, double eps, const SolveOptions& opts) {
    if (!(eps > 0.0) || eps >= 1.0) throw validation_error("accuracy must lie in (0, 1)");
    const SpectralExtremes ext = spectral_extremes(sys.a);
    if (ext.sig_min < 1e-12) throw singularity_error("system matrix is numerically singular");
    if (ext.lam_min < -1e-10)
        throw spectrum_error("matrix has a negative eigenvalue; use solve_general");

    StageTrace trace;
    BlockEncoding gram = encode_system(sys);
    snapshot(&trace, "gram", gram.ledger(), gram.eps());

    // Inverse square root of A^2/||A||_F^2 lands on A^{-1} directly.  The
    // window floor comes from the measured Gram spectrum.
    const SpectralExtremes gext = spectral_extremes(gram.encoded());
    const double kappa_m = 1.0 / std::max(gext.sig_min, 1e-300);
    BlockEncoding inv = neg_power(gram, 0.5, kappa_m, eps / 2.0, opts.strict_polynomials);
    snapshot(&trace, "inverse-sqrt", inv.ledger(), inv.eps());
    const double final_scale = 0.5 * sys.frobenius_scale / std::sqrt(kappa_m);

    return finish_solve(sys, eps, opts, std::move(inv), final_scale, SolvePath::psd,
                        std::move(trace), 0.0, ext);
}

BlockEncoding shifted_eighth_encoding(const Matrix& a, double eps,
                                      const SolveOptions& opts, StageTrace* trace,
                                      double* shift_condition) {
    if (!(eps > 0.0) || eps >= 1.0) throw validation_error("accuracy must lie in (0, 1)");
    const SpectralExtremes ext = spectral_extremes(a);
    const double shift_min = (1.0 + ext.lam_min) / 2.0;
    const double shift_max = (1.0 + ext.lam_max) / 2.0;
    if (shift_min <= 1e-14)
        throw spectrum_error("shift (I+A)/2 is singular: eigenvalue at -1");
    if (shift_condition) *shift_condition = shift_max / shift_min;

    const std::size_t n = a.rows();
    const Matrix shifted = (Matrix::identity(n) + a) * cplx(0.5, 0.0);
    BlockEncoding gram_s = gram_encoding(shifted, max_row_nonzeros(shifted));
    snapshot(trace, "gram-shift", gram_s.ledger(), gram_s.eps());

    const SpectralExtremes gext = spectral_extremes(gram_s.encoded());
    if (gext.lam_min <= 0.0 || gext.lam_max > 1.0 + 1e-12)
        throw Error("internal", "shifted Gram spectrum escaped (0, 1]");
    const double kappa_m = 1.0 / gext.sig_min;
    BlockEncoding half = pos_power(gram_s, 0.5, kappa_m, eps / 8.0, opts.strict_polynomials);
    snapshot(trace, "square-root", half.ledger(), half.eps());

    // The square root leaves S/(2 ||S||_F); bring it to S/2.  The amplified
    // block tops out at (1+lam_max)/4 < 1/2, so delta = 0.45 always fits.
    const double f_s = shifted.frobenius_norm();
    if (f_s > 1.0 + 1e-12) {
        half = amplify(half, f_s, 0.45, std::min(0.49, eps / 16.0));
        snapshot(trace, "rescale", half.ledger(), half.eps());
    } else if (f_s < 1.0 - 1e-12) {
        half = scale_down(half, 1.0 / f_s);
        snapshot(trace, "rescale", half.ledger(), half.eps());
    }

    BlockEncoding eighth = lcu({half, scale_down(identity_encoding(n), 4.0)}, {+1, -1});
    snapshot(trace, "shift-subtract", eighth.ledger(), eighth.eps());
    return eighth;
}

SolveResult solve_general(const LinearSystem& sys, double eps, const SolveOptions& opts) {
    const SpectralExtremes ext = spectral_extremes(sys.a);
    if (ext.sig_min < 1e-12) throw singularity_error("system matrix is numerically singular");

    StageTrace trace;
    double shift_condition = 0.0;
    BlockEncoding eighth = shifted_eighth_encoding(sys.a, eps, opts, &trace, &shift_condition);

    // Inverting the measured A/8 block restores A^{-1} at scale
    // sig_min(A/8)/2 * 8 = sig_min/2, independent of the shift detour.
    const SpectralExtremes eext = spectral_extremes(eighth.encoded());
    const double kappa_m = 1.0 / std::max(eext.sig_min, 1e-300);
    BlockEncoding inv = neg_power(eighth, 1.0, kappa_m, eps / 4.0, opts.strict_polynomials);
    snapshot(&trace, "inverse", inv.ledger(), inv.eps());
    const double final_scale = 4.0 * eext.sig_min;

    return finish_solve(sys, eps, opts, std::move(inv), final_scale, SolvePath::general,
                        std::move(trace), shift_condition, ext);
}

double success_probability(const LinearSystem& sys) {
    const SpectralExtremes ext = spectral_extremes(sys.a);
    if (ext.sig_min < 1e-12) throw singularity_error("system matrix is numerically singular");
    const Vector x = inverse_oracle(sys.a) * sys.b;
    const double nx = norm(x);
    return nx * nx / (4.0 * sys.kappa * sys.kappa);
}

LinearSystem planted_system(std::size_t n, double kappa, bool indefinite, Rng& rng,
                            bool eigenbasis_uniform_b) {
    if (n == 0) throw validation_error("system dimension must be positive");
    if (kappa < 1.0) throw validation_error("condition number must be at least 1");
    const std::vector<double> spectrum = planted_spectrum(n, kappa, 1.0, indefinite, rng);
    const Matrix a = planted_hermitian(spectrum, rng);
    Vector b;
    if (eigenbasis_uniform_b) {
        // Uniform mixture of eigenvectors: keeps every inverse mode populated
        // so post-selection probabilities stay mild across the kappa sweep.
        EigenDecomposition eig = hermitian_eig(a);
        Vector ones(n, cplx(1.0 / std::sqrt(double(n)), 0.0));
        b = normalized(eig.vectors_as_columns() * ones);
    } else {
        b = random_unit_vector(n, rng);
    }
    return ingest_system(a, b);
}

} // namespace blockenc
