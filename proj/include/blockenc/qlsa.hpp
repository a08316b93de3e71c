#pragma once

#include <string>
#include <vector>

#include "blockenc/encoding.hpp"
#include "blockenc/random.hpp"

namespace blockenc {

// A Hermitian system A x = b ready for the solver: spectrum inside [-1, 1]
// (ingestion rescales and records the factor when the input exceeds that),
// unit right-hand side, and the oracle-computed condition number.
struct LinearSystem {
    Matrix a;
    Vector b;
    double kappa = 1.0;
    std::size_t sparsity = 0;   // max nonzeros per row
    double spectral_scale = 1.0; // stored A = spectral_scale * original A
    double frobenius_scale = 1.0; // ||A||_F, the Gram-encoding sub-normalization
};

enum class SolvePath { psd, general };

struct SolveOptions {
    // Certify the inversion polynomials on a dense grid instead of applying
    // the eigenvalue map exactly.  Slower, with a nonzero tracked error.
    bool strict_polynomials = false;
    // Charge post-selection as 1/sqrt(prob) repetitions instead of 1/prob.
    bool amplitude_amplification = false;
};

struct SolveResult {
    Vector state;               // unit, proportional to A^{-1} b (phase-fixed)
    double success_prob = 0.0;  // post-selection probability predicted from the oracle inverse
    double measured_prob = 0.0; // squared norm of the final encoding applied to b
    double fidelity = 0.0;      // overlap with the oracle solution
    double eps_bound = 0.0;     // tracked state-error bound after post-selection
    double kappa = 1.0;
    double spectral_scale = 1.0;
    double shift_condition = 0.0; // condition number of (I + A)/2 (general path)
    double final_scale = 1.0;     // c with pre-selection block = c * A^{-1}
    CostLedger ledger;
    StageTrace stages; // cumulative ledger snapshots, one per pipeline stage
    SolvePath path = SolvePath::psd;
};

// Validate (Hermitian to 1e-10, b nonzero), normalize b, and pull the
// spectrum into [-1, 1] when it sticks out; fills the derived fields.
LinearSystem ingest_system(const Matrix& a, const Vector& b);

// Encoding of A^dagger A / ||A||_F^2 obtained by loading the conjugated rows
// of A as one pure state and tracing out the row register.
BlockEncoding encode_system(const LinearSystem& sys);

// Chain Gram -> inverse square root -> post-selection.  Requires a positive
// semidefinite A (throws otherwise, pointing at solve_general).
SolveResult solve_psd(const LinearSystem& sys, double eps, const SolveOptions& opts = {});

// Shift path for arbitrary Hermitian A: square root of the Gram of
// (I + A)/2, recover A/8 by subtracting I/4, then invert.
SolveResult solve_general(const LinearSystem& sys, double eps, const SolveOptions& opts = {});

// The encoding of A/8 built by the shift path (shared with the Hamiltonian
// pipeline, which amplifies it instead of inverting it).  Takes the already
// rescaled Hermitian matrix; `stages` and `shift_condition` are optional taps
// for the caller's reporting.
BlockEncoding shifted_eighth_encoding(const Matrix& a, double eps,
                                      const SolveOptions& opts = {},
                                      StageTrace* stages = nullptr,
                                      double* shift_condition = nullptr);

// ||A^{-1} b||^2 / (4 kappa^2), evaluated with the oracle inverse.
double success_probability(const LinearSystem& sys);

// Random Hermitian test system with a planted spectrum: condition number
// `kappa`, largest singular value 1, sign pattern per `indefinite`.  The
// right-hand side is either a Haar-random unit vector or the uniform mixture
// of eigenvectors (useful for keeping post-selection probabilities mild).
LinearSystem planted_system(std::size_t n, double kappa, bool indefinite, Rng& rng,
                            bool eigenbasis_uniform_b = false);

} // namespace blockenc
