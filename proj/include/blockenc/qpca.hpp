#pragma once

#include <cstdint>
#include <vector>

#include "blockenc/encoding.hpp"
#include "blockenc/random.hpp"
#include "blockenc/stateprep.hpp"

namespace blockenc {

// One extracted principal pair.  `value` is reported in the units of the
// operator the caller handed in (the top-level drivers convert back to
// covariance units); `eps_bound` tracks the accumulated error bound in the
// same units; `ledger` is the cumulative cost of producing the pair.
struct EigenPairEstimate {
    double value = 0.0;
    Vector vector; // unit, phase-fixed
    double eps_bound = 0.0;
    CostLedger ledger;
};

// Parameters of the power-method extraction path.
struct PowerConfig {
    double gap = 0.0;  // spectral gap of the iterated operator; <= 0 means "estimate it"
    double eps = 1e-3; // target accuracy for value and vector overlap
    double beta = 0.0; // success filter strength; <= 0 means "derive from gamma"
    int k = 0;         // iteration power; <= 0 means ceil((1/gap) ln(n/eps))
    std::uint64_t rng_seed = 1;
};

// Parameters of the gradient-descent extraction path.
struct GDConfig {
    double eta = 0.25; // step size, in (0, 1/4]
    int T = 0;         // iteration count; <= 0 means ceil(log2(1/eps))
    double eps = 1e-2;
    std::uint64_t rng_seed = 1;
};

struct PowerIterateResult {
    Vector xk;          // normalized k-step iterate
    double gamma = 0.0; // ||raw iterate||^2 * Re<xk, x0>
    double prob = 1.0;  // post-selection success e^{-2 beta (1 - gamma)}
    CostLedger ledger;
};

// Per-stage diagnostics of the multi-component drivers, for scaling studies.
struct PowerStageInfo {
    int k = 0;
    double gap_used = 0.0;
    double beta = 0.0;
    double eps_stage = 0.0;
    int filter_degree = 0;
    double stage_scale = 1.0; // encoded-units-to-covariance-units factor
};

// Convergence report of a gradient-descent run (surfaced, not asserted).
struct GDDiagnostics {
    int iterations = 0;
    bool converged = false;
    double final_direction_change = 0.0;
};

// Encoding of half the covariance matrix (1/2)((1/m) X^T X - mu mu^T) of an
// ingested dataset, assembled from the Gram and centroid encodings.
BlockEncoding build_covariance(const Dataset& x);

// k-step power iteration through the encoded operator, with a success filter
// of strength beta.  The start must overlap the dominant eigenvector; when an
// rng is supplied a failing start is resampled (up to 16 draws) instead of
// raising.
PowerIterateResult power_iterate(const BlockEncoding& e, Vector x0, int k, double beta,
                                 double eps, Rng* rng = nullptr);

// Rayleigh quotient  Re x^dag (encoded) x  of a unit vector.
double rayleigh_estimate(const BlockEncoding& e, const Vector& x);

// Shot-noise version: binomial sampling of the (clamped) exact value.
double rayleigh_estimate_sampled(const BlockEncoding& e, const Vector& x, long shots, Rng& rng);

// Success-filter algebra: the strength that keeps the post-selection failure
// below eps at overlap gamma, and the resulting success probability.
double filter_beta(double gamma, double eps);
double filter_success_prob(double beta, double gamma);

// Dominant eigenpair of a positive-semidefinite encoded operator.
EigenPairEstimate top_eigenpair_power(const BlockEncoding& e, const PowerConfig& cfg,
                                      PowerStageInfo* info = nullptr);

// Encoding of (1/2)(E - P E P) with P the projector onto pair.vector: the
// deflation step that demotes the extracted component.
BlockEncoding deflate(const BlockEncoding& e, const EigenPairEstimate& pair);

// Top r principal pairs by iterated extract-then-deflate.  Values and bounds
// are reported in covariance units; set descale_values to recover raw-data
// units (multiplies by the squared ingestion scale).
std::vector<EigenPairEstimate> top_r_power(const Dataset& x, std::size_t r,
                                           const PowerConfig& cfg,
                                           std::vector<PowerStageInfo>* stage_info = nullptr,
                                           bool descale_values = false);

// One gradient-descent update on the encoded iterate density: returns the
// encoding of (I - eta G) rho (I - eta G) with G = 2I - C, amplified back to
// unit bookkeeping scale.
BlockEncoding gd_iterate(const BlockEncoding& ec, const BlockEncoding& rho, double eta);

// Dominant eigenpair via the gradient-descent path.  `scale` converts the
// encoded operator's units to reporting units (2 for a half-covariance).
EigenPairEstimate gd_top_eigenpair_encoded(const BlockEncoding& ec, const GDConfig& cfg,
                                           double scale, GDDiagnostics* diag = nullptr);
EigenPairEstimate gd_top_eigenpair(const Dataset& x, const GDConfig& cfg,
                                   GDDiagnostics* diag = nullptr);

// Deflation for the gradient path; `first` must be in covariance units.
BlockEncoding gd_deflate(const Dataset& x, const EigenPairEstimate& first);

std::vector<EigenPairEstimate> top_r_gd(const Dataset& x, std::size_t r, const GDConfig& cfg,
                                        std::vector<GDDiagnostics>* diags = nullptr,
                                        bool descale_values = false);

// Spectral-gap probe: two short deflated power runs through the encoding.
// Heuristic by construction; used when a config leaves the gap unset.
double estimate_gap(const BlockEncoding& e, Rng& rng, CostLedger* probe_cost = nullptr);

} // namespace blockenc
