#pragma once

#include <functional>
#include <string>

#include "blockenc/encoding.hpp"
#include "blockenc/matrix.hpp"

namespace blockenc {

// Polynomial in the Chebyshev-T basis on [-1, 1], with a certified sup error
// against the analytic target it approximates.  Complex coefficients cover
// targets like e^{-ixt} whose real/imaginary parts are handled as two real
// polynomials combined linearly.
//
// Polynomials fed to a singular-value transform must satisfy |P(x)| <= 1/2;
// builders record the rescale factor `cap_scale` (>= 1) that a circuit would
// divide out and later undo by amplification.  The simulator applies the true
// polynomial and keeps the factor as bookkeeping.
struct PolySpec {
    std::vector<cplx> cheb_coeffs; // c_0 .. c_degree
    int degree = 0;
    double sup_error = 0.0;   // measured on a 2001-point grid over [-1, 1]
    std::string target;       // human-readable tag of the approximated function
    double cap_scale = 1.0;   // division needed to meet the |P| <= 1/2 cap
    int requested_degree = 0; // degree the cost formula predicted
    double escalation = 1.0;  // degree / requested_degree after certification

    cplx eval(double x) const; // Clenshaw recurrence
};

// e^{-beta (1 - x)} on [-1, 1]; degree ~ sqrt(max(beta, ln(1/eps)) * ln(1/eps)),
// escalated until the certified grid error is at most eps.
PolySpec exp_filter_poly(double beta, double eps);

// Truncated Jacobi-Anger expansion of e^{-i x t}; degree ~ t + ln(1/eps) /
// ln(e + ln(1/eps)/t), escalated until certified.
PolySpec jacobi_anger_poly(double t, double eps);

// Chebyshev interpolant of an arbitrary function on [lo, hi] (mapped onto
// [-1, 1]); used by the strict mode of the power transforms.
PolySpec chebyshev_interpolant(const std::function<double(double)>& f, double lo, double hi,
                               int degree, const std::string& tag);

// Eigenvalue functional calculus P(A) for Hermitian A: the matrix-level
// semantics of a degree-d singular-value transform.  Output block is
// sum_i P(lambda_i) v_i v_i^dagger; queries and depth multiply by the degree;
// two ancillas join; the error bound becomes 4 d sqrt(eps/alpha) (zero when
// the input is exact) plus the polynomial's certified sup error.
BlockEncoding apply_poly(const BlockEncoding& e, const PolySpec& p);

// M^{-c} / (2 kappa_M^c) for Hermitian M whose eigenvalue magnitudes lie in
// [1/kappa_M, 1].  Positive definiteness is required for non-integer c (the
// principal branch needs it); integer powers extend oddly/evenly to negative
// eigenvalues.  The value is exact eigenvalue calculus; the ledger multiplies
// by kappa_M (1 + c) log2^2(kappa_M^{1+c} / eps).  `strict` routes the value
// through an explicit Chebyshev approximant instead, to validate eps end to end.
BlockEncoding neg_power(const BlockEncoding& e, double c, double kappa_m, double eps,
                        bool strict = false);

// M^{c} / 2 under the same window; ledger multiplies by
// kappa_M log2^2(kappa_M / eps).
BlockEncoding pos_power(const BlockEncoding& e, double c, double kappa_m, double eps,
                        bool strict = false);

} // namespace blockenc
