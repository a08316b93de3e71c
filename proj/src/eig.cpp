#include "blockenc/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace blockenc {

namespace {

constexpr double kHermitianTol = 1e-10;

double offdiag_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
    return 2.0 * s;
}

} // namespace

Matrix EigenDecomposition::vectors_as_columns() const {
    if (vectors.empty()) return Matrix();
    Matrix m(vectors[0].size(), vectors.size());
    for (std::size_t k = 0; k < vectors.size(); ++k)
        for (std::size_t i = 0; i < vectors[k].size(); ++i) m(i, k) = vectors[k][i];
    return m;
}

EigenDecomposition hermitian_eig(const Matrix& m) {
    if (!m.is_square()) throw shape_error("hermitian_eig needs a square matrix");
    if (m.rows() == 0) throw shape_error("hermitian_eig on empty matrix");
    if (!m.all_finite()) throw validation_error("hermitian_eig input has non-finite entries");
    if (!m.is_hermitian(kHermitianTol))
        throw symmetry_error("hermitian_eig input deviates from Hermitian beyond 1e-10");

    const std::size_t n = m.rows();
    Matrix a(m);
    Matrix v = Matrix::identity(n);

    // Each rotation phases the (p,q) pivot real, then applies the classical
    // symmetric Jacobi rotation that annihilates it.  Cyclic sweeps converge
    // quadratically once the off-diagonal mass is small.
    const double scale = std::max(1.0, a.frobenius_norm());
    const double stop = 1e-28 * scale * scale;
    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps && offdiag_sq(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 1.0 / (2.0 * tau);
                } else {
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Combined rotation G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
                // acting on coordinates (p, q):
                //   G(p,p) = c        G(p,q) = s
                //   G(q,p) = -s e^{-i phi}   G(q,q) = c e^{-i phi}
                const cplx gqp = -s * std::conj(phase);
                const cplx gqq = c * std::conj(phase);

                for (std::size_t i = 0; i < n; ++i) { // A <- A G (update columns p, q)
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * c + aiq * gqp;
                    a(i, q) = aip * s + aiq * gqq;
                }
                for (std::size_t j = 0; j < n; ++j) { // A <- G^dagger A (update rows p, q)
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(gqp) * aqj;
                    a(q, j) = s * apj + std::conj(gqq) * aqj;
                }
                a(p, q) = cplx(0.0, 0.0);
                a(q, p) = cplx(0.0, 0.0);
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) { // V <- V G
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * c + viq * gqp;
                    v(i, q) = vip * s + viq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        Vector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v(i, order[k]);
        out.vectors[k] = phase_fixed(col);
    }
    return out;
}

SingularDecomposition svd(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw shape_error("svd on empty matrix");
    if (!m.all_finite()) throw validation_error("svd input has non-finite entries");

    // Work with the smaller Gram matrix; relabel afterwards if we transposed.
    const bool flipped = m.rows() < m.cols();
    const Matrix& w = m; // original
    Matrix work = flipped ? m.adjoint() : m; // rows >= cols
    const std::size_t k = work.cols();

    Matrix gram = work.adjoint() * work;
    // Clean tiny asymmetry from rounding before the symmetry check.
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            const cplx avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
            gram(i, j) = avg;
            gram(j, i) = std::conj(avg);
        }
    EigenDecomposition eig = hermitian_eig(gram);

    SingularDecomposition out;
    out.s.resize(k);
    Matrix vmat(k, k);
    Matrix umat(work.rows(), k);
    const double tiny = 1e-14 * std::max(1.0, work.frobenius_norm());
    std::vector<Vector> ucols;
    for (std::size_t j = 0; j < k; ++j) {
        const double lam = std::max(eig.values[j], 0.0);
        const double sigma = std::sqrt(lam);
        out.s[j] = sigma;
        Vector vj = eig.vectors[j];
        Vector uj;
        if (sigma > tiny) {
            uj = work * vj;
            for (auto& x : uj) x /= sigma;
        } else {
            // Null direction: extend the left basis by Gram-Schmidt over the
            // canonical basis so U stays orthonormal.
            uj.assign(work.rows(), cplx(0.0, 0.0));
            for (std::size_t cand = 0; cand < work.rows(); ++cand) {
                Vector trial(work.rows(), cplx(0.0, 0.0));
                trial[cand] = 1.0;
                for (const auto& prev : ucols) trial = trial - (dot(prev, trial) * prev);
                if (norm(trial) > 1e-6) {
                    uj = normalized(trial);
                    break;
                }
            }
        }
        uj = phase_fixed(uj);
        // Keep U's phase convention authoritative; fold the compensating phase
        // into V so that  M = U diag(S) V^dagger  still holds exactly.
        if (sigma > tiny) {
            const Vector raw = work * vj;
            // phase applied to uj was rot = conj(raw_pivot)/|raw_pivot|; vj gets the same rot.
            cplx rot(1.0, 0.0);
            double best = 0.0;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < raw.size(); ++i) {
                const double mag = std::abs(raw[i]);
                if (mag > best + 1e-12) {
                    best = mag;
                    idx = i;
                }
            }
            if (best > 0.0) rot = std::conj(raw[idx]) / best;
            for (auto& x : vj) x *= rot;
        }
        ucols.push_back(uj);
        for (std::size_t i = 0; i < work.rows(); ++i) umat(i, j) = uj[i];
        for (std::size_t i = 0; i < k; ++i) vmat(i, j) = vj[i];
    }

    if (flipped) {
        out.u = vmat;
        out.v = umat;
    } else {
        out.u = umat;
        out.v = vmat;
    }
    (void)w;
    return out;
}

Matrix expm_oracle(const Matrix& h, double t) {
    EigenDecomposition eig = hermitian_eig(h);
    const std::size_t n = h.rows();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx phase = std::exp(cplx(0.0, -eig.values[k] * t));
        const Vector& v = eig.vectors[k];
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = phase * v[i];
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(v[j]);
        }
    }
    return out;
}

Matrix inverse_oracle(const Matrix& a) {
    if (!a.is_square()) throw shape_error("inverse of non-square matrix");
    SingularDecomposition dec = svd(a);
    const double smin = dec.s.empty() ? 0.0 : dec.s.back();
    if (smin <= 1e-12)
        throw singularity_error("matrix is singular to working precision (sigma_min <= 1e-12)");
    const std::size_t n = a.rows();
    Matrix out(n, n);
    // A^{-1} = V diag(1/s) U^dagger
    for (std::size_t k = 0; k < n; ++k) {
        const double inv = 1.0 / dec.s[k];
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = dec.v(i, k) * inv;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(dec.u(j, k));
        }
    }
    return out;
}

double cond_number(const Matrix& a) {
    SingularDecomposition dec = svd(a);
    const double smax = dec.s.empty() ? 0.0 : dec.s.front();
    const double smin = dec.s.empty() ? 0.0 : dec.s.back();
    if (smin <= 1e-12)
        throw singularity_error("condition number undefined: sigma_min <= 1e-12");
    return smax / smin;
}

double spectral_norm(const Matrix& a) {
    SingularDecomposition dec = svd(a);
    return dec.s.empty() ? 0.0 : dec.s.front();
}

double spectral_norm_estimate(const Matrix& a, int iters) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    if (a.rows() * a.cols() <= 96 * 96) return spectral_norm(a);
    const Matrix ah = a.adjoint();
    double best = 0.0;
    // Two fixed pseudo-random starts; overlap with the top singular subspace is
    // overwhelming at these dimensions, and the estimate only guards invariants.
    for (int trial = 0; trial < 2; ++trial) {
        Vector v(a.cols());
        unsigned long long s = 0x9e3779b97f4a7c15ULL + 0x1234ULL * (trial + 1);
        for (auto& x : v) {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            x = cplx(double(s % 1000) / 1000.0 + 0.1, double((s >> 10) % 1000) / 1000.0);
        }
        v = normalized(v);
        double lam = 0.0;
        for (int it = 0; it < iters; ++it) {
            Vector w = ah * (a * v);
            const double n = norm(w);
            if (n == 0.0) {
                lam = 0.0;
                break;
            }
            lam = n;
            for (auto& x : w) x /= n;
            v = std::move(w);
        }
        best = std::max(best, std::sqrt(lam));
    }
    return best;
}

} // namespace blockenc
