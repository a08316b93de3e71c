#pragma once

#include "blockenc/encoding.hpp"
#include "blockenc/ledger.hpp"
#include "blockenc/matrix.hpp"

namespace blockenc {

// A classical vector loaded as an amplitude-encoded state.  `amplitudes` is
// the unit vector actually prepared; `norm_scale` is the factor divided out,
// so norm_scale * amplitudes reproduces the raw input.
struct PreparedState {
    Vector amplitudes;
    double norm_scale = 1.0;
    std::size_t sparsity = 0; // nonzero entries of the raw input
    CostLedger ledger;
};

// A data table of m samples (rows) with n features each, rescaled at ingestion
// so the squared row norms sum to one (the convention every downstream
// encoding assumes).  `global_scale` restores raw units: raw = global_scale * rows.
struct Dataset {
    std::size_t m = 0, n = 0;
    Matrix rows;
    double global_scale = 1.0;

    void check() const;
};

// Build a Dataset from raw (real) samples; records the normalization factor.
Dataset ingest_dataset(const Matrix& raw);

// Amplitude encoding of a single vector; depth log2(sparsity * log2 dim),
// clamped below at 1.
PreparedState prepare_state(const Vector& v);

// The flattened two-register data state  sum_ij X_ij |i>|j>  (row-major).
PreparedState pair_state(const Dataset& x);

// Exact encoding of X^T X via the reduced density matrix of the pair state.
BlockEncoding gram_encoding(const Dataset& x);

// Exact encoding of mu mu^T where mu is the sample mean.  The construction is
// a Hadamard layer on the sample register of the pair state, then the density
// trick and a 1/m dilution; the simulator computes the value directly and
// charges those costs.  When m is not a power of two the sample register is
// padded with zero rows (disable via allow_padding to get an error instead).
BlockEncoding centroid_encoding(const Dataset& x, bool allow_padding = true);

} // namespace blockenc
