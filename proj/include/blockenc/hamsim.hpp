#pragma once

#include <vector>

#include "blockenc/encoding.hpp"
#include "blockenc/polytransform.hpp"
#include "blockenc/qlsa.hpp"

namespace blockenc {

// A simulation task: evolve psi0 under H (or a step-sampled sequence H_k) for
// time t to accuracy eps.  Ingestion pulls the spectrum into [-1, 1] and
// stretches t by the same factor, so the requested unitary is unchanged.
struct SimProblem {
    Matrix h;
    std::vector<Matrix> h_sequence; // nonempty only for the time-dependent case
    double t = 0.0;
    Vector psi0;
    double eps = 1e-3;
    int k_order = 1;                // multistep half-width K
    double hamiltonian_scale = 1.0; // stored H = scale * original H
    double max_entry = 0.0;         // largest |H_ij| of the original input
};

SimProblem make_problem(const Matrix& h, double t, const Vector& psi0, double eps,
                        int k_order = 1);

// Time-dependent variant: hs[k] samples the Hamiltonian at step k; the
// builders require exactly steps+1 samples.
SimProblem make_time_dependent_problem(const std::vector<Matrix>& hs, double t,
                                       const Vector& psi0, double eps, int k_order = 1);

// H/2 built through the solver's shift chain (Gram of (I+H)/2, square root,
// subtract I/4, amplify the resulting H/8 by 4).  Inputs whose spectrum
// sticks out of [-1, 1] are rescaled; the factor lands in *scale_out.
BlockEncoding encode_hamiltonian(const Matrix& h, double eps = 1e-6, bool strict = false,
                                 double* scale_out = nullptr);

struct DirectSimInfo {
    double prob = 1.0;      // post-selection probability of the polynomial image
    double eps_bound = 0.0; // tracked slack (operator bound over sqrt(prob))
    int degree = 0;         // truncation degree actually used
    CostLedger ledger;
    StageTrace stages;
};

// One-shot simulation: the wave-operator expansion of exp(-i x 2t) applied to
// the H/2 encoding, then renormalized without phase fixing (the global phase
// is physical here and the tests compare against it).
Vector simulate_direct(const SimProblem& p, DirectSimInfo* info = nullptr);

// N = ceil(t^{1+1/K} / eps^{1/K}), at least 2.
int choose_steps(double t, double eps, int k_order);

// A discretized Schrodinger equation as a solvable system.  `l` is the square
// one-sided operator on the stacked trajectory (psi_0..psi_N): the equation
// rows exactly as printed in banded block form, closed by a final boundary
// row pinning psi_0.  `dilated` wraps [[0, L], [L^dag, 0]] (scaled to spectral
// radius 1/2) for the Hermitian solver; the solution sits in its second half.
struct DiscretizedSystem {
    Matrix l;
    Vector rhs;             // (psi0, 0, ..., 0, psi0)
    LinearSystem dilated;
    double dilation_scale = 1.0;
    int steps = 0;          // N
    double delta = 0.0;     // t / N
};

DiscretizedSystem build_central_difference_system(const SimProblem& p, int steps);

// General explicit-multistep discretization: central-difference startup rows
// below the method's reach, the banded multistep rows in the bulk, and
// central-difference closing rows where the stencil would overrun step N.
// Requires 2K+1 coefficients with sum(alphas) = 0.
DiscretizedSystem build_multistep_system(const SimProblem& p, int steps,
                                         const std::vector<double>& alphas,
                                         const std::vector<double>& betas);

// Same structure with the sampled H_k in place of H, per block row and column.
DiscretizedSystem build_time_dependent_system(const SimProblem& p, int steps,
                                              const std::vector<double>& alphas,
                                              const std::vector<double>& betas);

// Shipped coefficient presets (the method order is the caller's choice; these
// are the two tables the CLI exposes).
struct MultistepScheme {
    int k_order;
    std::vector<double> alphas;
    std::vector<double> betas;
};
MultistepScheme leapfrog_scheme();        // K=1, the central-difference table
MultistepScheme central_fourth_scheme();  // K=2, symmetric fourth-order table

enum class Discretization { central, multistep, time_dependent };

struct TrajectoryResult {
    std::vector<Vector> states;    // psi_k, k = 0..N, each normalized
    std::vector<double> raw_norms; // block norms before normalization (drift ~ delta^2)
    int steps = 0;
    double delta = 0.0;
    double kappa_system = 1.0;     // condition number of the solved system
    double eps_bound = 0.0;
    CostLedger ledger;
    StageTrace stages;
};

// Build the chosen discretization, solve it through the shift-path solver,
// and read the trajectory out of the solution blocks (rescaled so block 0
// matches psi0).  steps = 0 defers to choose_steps; null coefficient tables
// fall back to the preset for p.k_order (K = 1 or 2).
TrajectoryResult simulate_via_solver(const SimProblem& p, Discretization method,
                                     int steps = 0,
                                     const std::vector<double>* alphas = nullptr,
                                     const std::vector<double>* betas = nullptr,
                                     const SolveOptions& opts = {});

} // namespace blockenc
