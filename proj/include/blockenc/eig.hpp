#pragma once

#include "blockenc/matrix.hpp"

namespace blockenc {

// Eigendecomposition of a Hermitian matrix.  Eigenvalues are real, sorted
// descending; vectors[k] is the (unit, phase-fixed) eigenvector of values[k].
struct EigenDecomposition {
    std::vector<double> values;
    std::vector<Vector> vectors;

    Matrix vectors_as_columns() const;
};

// Thin singular value decomposition  M = U diag(S) V^dagger  with
// k = min(rows, cols) columns in U and V; singular values sorted descending.
struct SingularDecomposition {
    Matrix u;               // rows x k
    std::vector<double> s;  // k, descending, nonnegative
    Matrix v;               // cols x k
};

// Cyclic Jacobi for Hermitian matrices.  Accurate and simple at desk scale.
// Throws shape/symmetry errors for non-square or non-Hermitian (tol 1e-10) input.
EigenDecomposition hermitian_eig(const Matrix& m);

// SVD computed from the eigendecomposition of the Gram matrix (M^dagger M, or
// M M^dagger when that is smaller), with deterministic sign/phase fixing.
SingularDecomposition svd(const Matrix& m);

// Reference oracles used to validate everything downstream.
Matrix expm_oracle(const Matrix& h, double t); // exp(-i H t), H Hermitian
Matrix inverse_oracle(const Matrix& a);        // via SVD; sigma_min must exceed 1e-12
double cond_number(const Matrix& a);           // sigma_max / sigma_min
double spectral_norm(const Matrix& a);         // sigma_max via SVD

// Fast largest-singular-value estimate (power iteration on A^dagger A) for
// internal invariant guards on large matrices; tests use spectral_norm.
double spectral_norm_estimate(const Matrix& a, int iters = 60);

} // namespace blockenc
