#include "blockenc/hamsim.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "blockenc/error.hpp"

namespace blockenc {

namespace {

struct Extremes {
    double lam_min;
    double lam_max;
    double radius;
};

Extremes extremes(const Matrix& h) {
    EigenDecomposition eig = hermitian_eig(h);
    return {eig.values.back(), eig.values.front(),
            std::max(std::abs(eig.values.back()), std::abs(eig.values.front()))};
}

// Same pull-in rule as the solver's ingestion: shrink when the spectrum
// leaves [-1, 1], and nudge an exact -1 eigenvalue off the shift singularity.
double ingestion_scale(const Extremes& ext) {
    if (ext.radius > 1.0) return (1.0 - 1e-6) / ext.radius;
    if (ext.lam_min <= -1.0 + 1e-12) return 1.0 - 1e-6;
    return 1.0;
}

void validate_common(double t, const Vector& psi0, double eps, int k_order) {
    if (t < 0.0) throw validation_error("evolution time must be nonnegative");
    if (!(eps > 0.0) || eps >= 1.0) throw validation_error("accuracy must lie in (0, 1)");
    if (k_order < 1) throw validation_error("multistep order must be at least 1");
    if (norm(psi0) < 1e-300) throw validation_error("initial state must be nonzero");
}

void snapshot(StageTrace& trace, const std::string& stage, const CostLedger& led, double eps) {
    trace.push_back({stage, led.queries, led.depth_proxy, eps});
}

} // namespace

SimProblem make_problem(const Matrix& h, double t, const Vector& psi0, double eps,
                        int k_order) {
    if (!h.is_hermitian(1e-10)) throw symmetry_error("Hamiltonian must be Hermitian");
    if (h.rows() != psi0.size()) throw shape_error("initial state length must match H");
    validate_common(t, psi0, eps, k_order);

    SimProblem p;
    const double scale = ingestion_scale(extremes(h));
    p.h = (scale == 1.0) ? h : h * cplx(scale, 0.0);
    p.t = t / scale; // exp(-i (sH) (t/s)) is the requested unitary
    p.psi0 = normalized(psi0);
    p.eps = eps;
    p.k_order = k_order;
    p.hamiltonian_scale = scale;
    p.max_entry = h.max_abs();
    return p;
}

SimProblem make_time_dependent_problem(const std::vector<Matrix>& hs, double t,
                                       const Vector& psi0, double eps, int k_order) {
    if (hs.empty()) throw validation_error("need at least one Hamiltonian sample");
    validate_common(t, psi0, eps, k_order);
    double scale = 1.0;
    double max_entry = 0.0;
    for (const Matrix& hk : hs) {
        if (!hk.is_hermitian(1e-10)) throw symmetry_error("every sample must be Hermitian");
        if (hk.rows() != psi0.size()) throw shape_error("sample size must match the state");
        scale = std::min(scale, ingestion_scale(extremes(hk)));
        max_entry = std::max(max_entry, hk.max_abs());
    }

    SimProblem p;
    p.h_sequence.reserve(hs.size());
    for (const Matrix& hk : hs)
        p.h_sequence.push_back(scale == 1.0 ? hk : hk * cplx(scale, 0.0));
    p.h = p.h_sequence.front();
    p.t = t / scale;
    p.psi0 = normalized(psi0);
    p.eps = eps;
    p.k_order = k_order;
    p.hamiltonian_scale = scale;
    p.max_entry = max_entry;
    return p;
}

BlockEncoding encode_hamiltonian(const Matrix& h, double eps, bool strict, double* scale_out) {
    if (!h.is_hermitian(1e-10)) throw symmetry_error("Hamiltonian must be Hermitian");
    if (!(eps > 0.0) || eps >= 1.0) throw validation_error("accuracy must lie in (0, 1)");
    const double scale = ingestion_scale(extremes(h));
    const Matrix hs = (scale == 1.0) ? h : h * cplx(scale, 0.0);
    if (scale_out) *scale_out = scale;

    SolveOptions opts;
    opts.strict_polynomials = strict;
    BlockEncoding eighth = shifted_eighth_encoding(hs, eps / 2.0, opts);
    // Fourfold amplification lands on H/2; the block tops out at 4/8, so a
    // 0.45 headroom always fits.
    return amplify(eighth, 4.0, 0.45, std::min(0.49, eps / 2.0));
}

Vector simulate_direct(const SimProblem& p, DirectSimInfo* info) {
    if (!p.h_sequence.empty())
        throw validation_error("direct simulation requires a time-independent Hamiltonian");
    if (p.t == 0.0) {
        if (info) *info = DirectSimInfo{};
        return p.psi0;
    }

    StageTrace trace;
    BlockEncoding enc = encode_hamiltonian(p.h, std::min(p.eps / 4.0, 1e-6), false);
    snapshot(trace, "hamiltonian-encoding", enc.ledger(), enc.eps());

    // The block holds H/2, so ask for exp(-i x 2t) at x = lambda/2.
    PolySpec wave = jacobi_anger_poly(2.0 * p.t, p.eps / 2.0);
    BlockEncoding applied = apply_poly(enc, wave);
    snapshot(trace, "wave-expansion", applied.ledger(), applied.eps());

    ApplyOutcome out = apply_to_state(applied, p.psi0);
    if (out.success_prob < 1e-300)
        throw zero_probability_error("simulation image vanished");
    // Renormalize by hand: routed through post-selection the global phase
    // would be fixed away, and here it is physical output.
    const Vector state = normalized(out.state);
    CostLedger led = applied.ledger();
    led.scale(std::max(1.0, wave.cap_scale * wave.cap_scale / out.success_prob));
    led.count("post-selection");
    snapshot(trace, "post-select", led, applied.eps());

    if (info) {
        info->prob = out.success_prob;
        info->degree = wave.degree;
        info->eps_bound = 2.0 * applied.eps() / std::sqrt(out.success_prob);
        info->ledger = led;
        info->stages = std::move(trace);
    }
    return state;
}

int choose_steps(double t, double eps, int k_order) {
    if (!(t > 0.0)) throw validation_error("time must be positive");
    if (!(eps > 0.0) || eps > 1.0) throw validation_error("accuracy must lie in (0, 1]");
    if (k_order < 1) throw validation_error("multistep order must be at least 1");
    const double raw =
        std::pow(t, 1.0 + 1.0 / double(k_order)) / std::pow(eps, 1.0 / double(k_order));
    if (raw > 1e9) throw validation_error("step count overflows; relax eps or shorten t");
    const long n = std::lround(std::ceil(raw - 1e-12));
    return int(std::max(2L, n));
}

namespace {

// Shared assembly of the discretized trajectory system.  Rows, in order: the
// forward-Euler start, central-difference startup rows up to the stencil
// half-width, the banded multistep bulk, central-difference closing rows, and
// the boundary row pinning psi_0.  One code path serves the static and
// time-dependent cases so equal inputs yield bit-identical systems.
DiscretizedSystem assemble(const SimProblem& p, int steps, const std::vector<double>& alphas,
                           const std::vector<double>& betas, bool time_dependent) {
    const std::size_t n = p.psi0.size();
    if (n == 0) throw validation_error("empty problem");
    if (steps < 2) throw validation_error("need at least two time steps");
    if (alphas.size() != betas.size() || alphas.size() % 2 == 0 || alphas.size() < 3)
        throw validation_error("coefficient tables must share an odd length of at least 3");
    const int k_width = int(alphas.size() / 2);
    double alpha_sum = 0.0;
    for (double a : alphas) alpha_sum += a;
    if (std::abs(alpha_sum) > 1e-12)
        throw validation_error("alpha coefficients must sum to zero");
    if (steps < 2 * k_width)
        throw validation_error("step count below the multistep stencil width");
    if (time_dependent) {
        if (p.h_sequence.size() != std::size_t(steps) + 1)
            throw validation_error("need exactly steps+1 Hamiltonian samples");
    } else {
        if (!p.h_sequence.empty())
            throw validation_error("use the time-dependent builder for sampled Hamiltonians");
        if (p.h.rows() != n) throw shape_error("Hamiltonian size must match the state");
    }

    const double delta = p.t / double(steps);
    const cplx idelta(0.0, delta);
    const std::size_t m = n * std::size_t(steps + 1);
    Matrix l(m, m);
    const auto h_at = [&](int k) -> const Matrix& {
        return time_dependent ? p.h_sequence[std::size_t(k)] : p.h;
    };
    const auto put_block = [&](int row, int col, const Matrix& blk, cplx factor) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                l(std::size_t(row) * n + i, std::size_t(col) * n + j) += factor * blk(i, j);
    };
    const auto put_identity = [&](int row, int col, double coeff) {
        for (std::size_t i = 0; i < n; ++i)
            l(std::size_t(row) * n + i, std::size_t(col) * n + i) += coeff;
    };
    const auto central_row = [&](int row, int k) {
        put_identity(row, k - 1, -1.0);
        put_block(row, k, h_at(k), 2.0 * idelta);
        put_identity(row, k + 1, 1.0);
    };

    put_block(0, 0, h_at(0), idelta); // i delta H psi_0 + psi_1 = psi_0
    put_identity(0, 1, 1.0);
    int row = 1;
    for (int k = 1; k < k_width; ++k) central_row(row++, k);
    for (int k = k_width; k <= steps - k_width; ++k, ++row) {
        for (int off = -k_width; off <= k_width; ++off) {
            const double a = alphas[std::size_t(off + k_width)];
            const double b = betas[std::size_t(off + k_width)];
            if (a != 0.0) put_identity(row, k + off, a);
            if (b != 0.0) put_block(row, k + off, h_at(k + off), idelta * b);
        }
    }
    for (int k = steps - k_width + 1; k <= steps - 1; ++k) central_row(row++, k);
    put_identity(row, 0, 1.0); // boundary: psi_0 is the given data

    Vector rhs(m);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = p.psi0[i];
        rhs[std::size_t(steps) * n + i] = p.psi0[i];
    }

    DiscretizedSystem sys;
    sys.steps = steps;
    sys.delta = delta;
    sys.l = std::move(l);
    sys.rhs = std::move(rhs);

    // Hermitian dilation, pre-scaled so its spectral radius sits near 1/2.
    const double top = std::max(spectral_norm_estimate(sys.l), 1e-300);
    sys.dilation_scale = 0.5 / top;
    Matrix dil(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const cplx v = sys.l(i, j) * sys.dilation_scale;
            dil(i, m + j) = v;
            dil(m + j, i) = std::conj(v);
        }
    Vector bd(2 * m);
    for (std::size_t i = 0; i < m; ++i) bd[i] = sys.rhs[i];
    sys.dilated = ingest_system(dil, bd);
    return sys;
}

} // namespace

MultistepScheme leapfrog_scheme() { return {1, {-1.0, 0.0, 1.0}, {0.0, 2.0, 0.0}}; }

MultistepScheme central_fourth_scheme() {
    return {2, {1.0, -8.0, 0.0, 8.0, -1.0}, {0.0, 0.0, 12.0, 0.0, 0.0}};
}

DiscretizedSystem build_central_difference_system(const SimProblem& p, int steps) {
    const MultistepScheme s = leapfrog_scheme();
    return assemble(p, steps, s.alphas, s.betas, false);
}

DiscretizedSystem build_multistep_system(const SimProblem& p, int steps,
                                         const std::vector<double>& alphas,
                                         const std::vector<double>& betas) {
    return assemble(p, steps, alphas, betas, false);
}

DiscretizedSystem build_time_dependent_system(const SimProblem& p, int steps,
                                              const std::vector<double>& alphas,
                                              const std::vector<double>& betas) {
    return assemble(p, steps, alphas, betas, true);
}

TrajectoryResult simulate_via_solver(const SimProblem& p, Discretization method, int steps,
                                     const std::vector<double>* alphas,
                                     const std::vector<double>* betas,
                                     const SolveOptions& opts) {
    int n_steps = steps;
    if (n_steps <= 0) n_steps = (p.t > 0.0) ? choose_steps(p.t, p.eps, p.k_order) : 2;

    MultistepScheme scheme = leapfrog_scheme();
    if (method != Discretization::central) {
        if (alphas && betas) {
            scheme = {int(alphas->size() / 2), *alphas, *betas};
        } else if (p.k_order == 1) {
            scheme = leapfrog_scheme();
        } else if (p.k_order == 2) {
            scheme = central_fourth_scheme();
        } else {
            throw config_error("no preset coefficients for this order; supply tables");
        }
    }

    DiscretizedSystem built;
    switch (method) {
    case Discretization::central:
        built = build_central_difference_system(p, n_steps);
        break;
    case Discretization::multistep:
        built = build_multistep_system(p, n_steps, scheme.alphas, scheme.betas);
        break;
    case Discretization::time_dependent:
        built = build_time_dependent_system(p, n_steps, scheme.alphas, scheme.betas);
        break;
    }

    const double solver_eps = std::clamp(p.eps / 4.0, 1e-9, 0.24);
    SolveResult sol = solve_general(built.dilated, solver_eps, opts);

    // The trajectory lives in the second half of the dilation solution; pick
    // the complex scale that matches block 0 back onto psi_0.
    const std::size_t n = p.psi0.size();
    const std::size_t m = n * std::size_t(n_steps + 1);
    Vector first(n);
    for (std::size_t i = 0; i < n; ++i) first[i] = sol.state[m + i];
    const double f2 = dot(first, first).real();
    if (f2 < 1e-280) throw Error("internal", "trajectory initial block vanished");
    const cplx match = dot(first, p.psi0) / f2;

    TrajectoryResult res;
    res.steps = n_steps;
    res.delta = built.delta;
    res.kappa_system = sol.kappa;
    res.eps_bound = sol.eps_bound;
    res.ledger = std::move(sol.ledger);
    res.stages = std::move(sol.stages);
    res.states.reserve(std::size_t(n_steps) + 1);
    res.raw_norms.reserve(std::size_t(n_steps) + 1);
    for (int k = 0; k <= n_steps; ++k) {
        Vector block(n);
        for (std::size_t i = 0; i < n; ++i) block[i] = match * sol.state[m + std::size_t(k) * n + i];
        const double bn = norm(block);
        if (bn < 1e-280) throw Error("internal", "trajectory block vanished");
        res.raw_norms.push_back(bn);
        res.states.push_back(normalized(block));
    }
    return res;
}

} // namespace blockenc
