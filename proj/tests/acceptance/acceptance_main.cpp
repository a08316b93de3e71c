// Release gate for the simulator.  Each numbered check pins one behavioural
// claim end to end and prints a single [PASS]/[FAIL] verdict line; supporting
// measurements print indented above it so a red run is diagnosable from the
// log alone.  The binary exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blockenc/cli.hpp"
#include "blockenc/eig.hpp"
#include "blockenc/encoding.hpp"
#include "blockenc/hamsim.hpp"
#include "blockenc/io.hpp"
#include "blockenc/polytransform.hpp"
#include "blockenc/qlsa.hpp"
#include "blockenc/qpca.hpp"
#include "blockenc/random.hpp"
#include "blockenc/stateprep.hpp"
#include "support/oracles.hpp"

using namespace blockenc;
using testsupport::covariance_oracle;
using testsupport::kron_oracle;
using testsupport::matmul_oracle;
using testsupport::max_abs_diff;
using testsupport::mean_oracle;
using testsupport::overlap;
using testsupport::partial_trace_oracle;

namespace {

void note(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::cout << "    " << buf << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

BlockEncoding random_block(std::size_t n, double cap, Rng& rng, double alpha = 1.0) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
    m *= cplx(cap / spectral_norm(m), 0.0);
    return BlockEncoding(std::move(m), alpha, 1, 0.0, CostLedger{1.0, 1.0, {}});
}

Matrix random_hermitian_block(std::size_t n, double cap, Rng& rng) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
    Matrix h = (g + g.adjoint()) * cplx(0.5, 0.0);
    h *= cplx(cap / spectral_norm(h), 0.0);
    return h;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<double> sixteen_dim_spectrum() {
    std::vector<double> lambda = {1.0, 0.75};
    for (int j = 0; j < 14; ++j) lambda.push_back(0.45 * std::pow(0.05 / 0.45, j / 13.0));
    return lambda;
}

// ---------------------------------------------------------------------------
// 1. Every combinator's effective block agrees with a brute-force oracle.

bool combinators_match_oracles() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    const int cases = 100;
    for (int seed = 1; seed <= cases; ++seed) {
        Rng rng(seed);
        const std::size_t n = 2 + std::size_t(seed % 15); // 2..16

        const BlockEncoding e1 = random_block(n, 0.8, rng, 1.0 + rng.uniform(0.0, 2.0));
        const BlockEncoding e2 = random_block(n, 0.7, rng, 1.0 + rng.uniform(0.0, 1.0));
        const BlockEncoding e3 = random_block(n, 0.9, rng);

        worst = std::max(worst, max_abs_diff(product(e1, e2).encoded(),
                                             matmul_oracle(e1.encoded(), e2.encoded())));

        const Matrix want_sum =
            (e1.encoded() - e2.encoded() + e3.encoded()) * cplx(1.0 / 3.0, 0.0);
        worst = std::max(worst, max_abs_diff(lcu({e1, e2, e3}, {1, -1, 1}).encoded(), want_sum));

        worst = std::max(worst, max_abs_diff(scale_down(e1, 2.5).encoded(),
                                             e1.encoded() * cplx(1.0 / 2.5, 0.0)));

        const BlockEncoding f1 = random_block(4, 0.9, rng);
        const BlockEncoding f2 = random_block(4, 0.9, rng);
        worst = std::max(worst, max_abs_diff(tensor({f1, f2}).encoded(),
                                             kron_oracle(f1.encoded(), f2.encoded())));

        const std::size_t split = (seed % 2 == 0) ? 2 : 4;
        const std::size_t d = 2 + std::size_t(seed % 3); // 2..4 -> psi dim <= 16
        const Vector psi = random_unit_vector(split * d, rng);
        worst = std::max(worst, max_abs_diff(density_from_state(psi, split).encoded(),
                                             partial_trace_oracle(psi, split)));

        const std::size_t m = 2 + std::size_t(seed % 6);
        const std::size_t nf = 2 + std::size_t(seed % 4);
        Matrix raw(m, nf);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < nf; ++j) raw(i, j) = cplx(rng.gaussian(), 0.0);
        const Dataset ds = ingest_dataset(raw);
        const Vector mu = mean_oracle(ds.rows);
        worst = std::max(worst, max_abs_diff(centroid_encoding(ds).encoded(),
                                             Matrix::outer(mu, mu)));

        const BlockEncoding small = random_block(n, 0.45, rng);
        worst = std::max(worst, max_abs_diff(amplify(small, 1.6, 0.2, 0.01).encoded(),
                                             small.encoded() * cplx(1.6, 0.0)));
    }
    const double elapsed = seconds_since(t0);
    note("%d seeded cases per combinator, worst block deviation %.3e (budget 1e-10), %.2fs",
         cases, worst, elapsed);
    return worst <= 1e-10 && elapsed < 10.0;
}

// ---------------------------------------------------------------------------
// 2. The assembled covariance encoding equals (1/m) X^T X - mu mu^T.

bool covariance_assembly_matches() {
    double worst = 0.0;
    for (int seed = 1; seed <= 100; ++seed) {
        Rng rng(200 + seed);
        const std::size_t m = 2 + std::size_t(seed % 7);       // 2..8
        const std::size_t n = 2 + std::size_t((seed / 7) % 7); // 2..8
        Matrix raw(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) raw(i, j) = cplx(rng.gaussian(), 0.0);
        const Dataset d = ingest_dataset(raw);
        const Matrix got = build_covariance(d).encoded() * cplx(2.0, 0.0);
        worst = std::max(worst, max_abs_diff(got, covariance_oracle(d.rows)));
    }

    // Hand case: a +-1/8 sign-pattern dataset whose covariance is dyadic.
    // Rows are the 4x4 Hadamard pattern over 8; ingestion rescales to +-1/4,
    // the Gram term becomes I/16 and the centroid term e1 e1^T / 16.
    const Matrix pattern{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    const Dataset hand = ingest_dataset(pattern * cplx(0.125, 0.0));
    Matrix want(4, 4);
    want(1, 1) = want(2, 2) = want(3, 3) = cplx(0.0625, 0.0);
    const double hand_diff =
        max_abs_diff(build_covariance(hand).encoded() * cplx(2.0, 0.0), want);

    // A single sample has no spread: the encoding must be exactly zero.
    Matrix one_row(1, 4);
    one_row(0, 0) = cplx(0.3, 0.0);
    one_row(0, 1) = cplx(-0.1, 0.0);
    one_row(0, 2) = cplx(0.7, 0.0);
    one_row(0, 3) = cplx(0.2, 0.0);
    const double single = build_covariance(ingest_dataset(one_row)).encoded().max_abs();

    note("worst random-dataset deviation %.3e, hand case %.3e, single-sample block %.3e",
         worst, hand_diff, single);
    return worst <= 1e-10 && hand_diff <= 1e-12 && single <= 1e-12;
}

// ---------------------------------------------------------------------------
// 3. Power-method extraction on 16-feature datasets with a planted 0.25 gap.

bool power_extraction_planted_gap() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> lambda = sixteen_dim_spectrum();
    int successes = 0;
    double worst_value = 0.0, worst_overlap = 1.0;
    for (int seed = 1; seed <= 100; ++seed) {
        Rng rng(300 + seed);
        const auto planted = testsupport::planted_covariance_dataset(24, 16, lambda, rng);
        const Dataset data = ingest_dataset(planted.x);
        const double gs2 = data.global_scale * data.global_scale;

        PowerConfig cfg;
        cfg.eps = 1e-3;
        cfg.gap = (lambda[0] - lambda[1]) / gs2;
        cfg.rng_seed = std::uint64_t(seed);
        const auto pairs = top_r_power(data, 2, cfg, nullptr, true);

        bool ok = true;
        for (std::size_t i = 0; i < 2; ++i) {
            Vector axis(16);
            for (std::size_t k = 0; k < 16; ++k) axis[k] = planted.q(k, i);
            const double dv = std::abs(pairs[i].value - lambda[i]);
            const double ov = overlap(pairs[i].vector, axis);
            worst_value = std::max(worst_value, dv);
            worst_overlap = std::min(worst_overlap, ov);
            ok = ok && dv <= 1e-3 && ov >= 0.999;
        }
        // The second pair comes out of the deflated operator; its error must
        // also sit inside twice its own tracked bound.
        ok = ok && std::abs(pairs[1].value - lambda[1]) <= 2.0 * pairs[1].eps_bound;
        if (ok) ++successes;
    }
    note("%d/100 seeds recovered both pairs; worst value error %.3e, worst overlap %.6f, %.1fs",
         successes, worst_value, worst_overlap, seconds_since(t0));
    return successes >= 95;
}

// ---------------------------------------------------------------------------
// 4. Gradient-descent path: update algebra, and convergence measured against
//    the T = ceil(log2(1/eps)) recurrence prediction.

struct GDRow {
    int seed;
    double start_overlap;
    double contraction;
    double measured;
    int iterations;
    bool direction_stable;
};

// Reproduces the driver's start draw: first unit real vector from the seeded
// engine with nonzero overlap against the dominant eigenvector.
Vector reproduce_start(const EigenDecomposition& eig, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Vector x0;
    do {
        x0 = random_real_unit_vector(n, rng);
    } while (std::abs(dot(eig.vectors[0], x0)) <= 1e-6);
    return x0;
}

bool gradient_descent_report() {
    // (a) One update is exactly (I - eta G) rho (I - eta G) with G = 2I - C.
    double worst_alg = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Rng rng(500 + trial);
        const double eta = (trial % 2 == 0) ? 0.25 : 0.15;
        const Matrix b = random_hermitian_block(8, 0.3, rng);
        const BlockEncoding ec(b, 2.0, 1, 0.0, CostLedger{1.0, 1.0, {}});
        const BlockEncoding rho = density_from_state(random_unit_vector(16, rng), 2);
        Matrix s = Matrix::identity(8) * cplx(1.0 - 2.0 * eta, 0.0) + b * cplx(2.0 * eta, 0.0);
        const Matrix want = matmul_oracle(matmul_oracle(s, rho.encoded()), s);
        worst_alg = std::max(worst_alg,
                             max_abs_diff(gd_iterate(ec, rho, eta).encoded(), want));
    }
    const bool ok_alg = worst_alg <= 1e-10;
    note("update algebra worst deviation %.3e (budget 1e-10)", worst_alg);

    const double tan_budget = 0.1; // tan(theta) after T steps that still clears 0.99
    const int T = int(std::ceil(std::log2(1.0 / 1e-2)));

    // (b) Well-conditioned encodings where the recurrence predicts success.
    int predicted_hits = 0;
    bool ok_predicted = true;
    for (int seed = 1; seed <= 20; ++seed) {
        Rng rng(600 + seed);
        const Matrix h = planted_hermitian({0.5, 0.05, 0.02, 0.01}, rng);
        const BlockEncoding ec(h, 2.0, 1, 0.0, CostLedger{1.0, 1.0, {}});
        const EigenDecomposition eig = hermitian_eig(h);
        const Vector x0 = reproduce_start(eig, 4, std::uint64_t(seed));
        const double ov0 = overlap(x0, eig.vectors[0]);
        const double rho_c = (1.0 + eig.values[1]) / (1.0 + eig.values[0]);
        const double tan_t = std::sqrt(std::max(0.0, 1.0 - ov0 * ov0)) / ov0 * std::pow(rho_c, T);
        if (tan_t > tan_budget) continue;

        GDConfig cfg;
        cfg.eta = 0.25;
        cfg.eps = 1e-2;
        cfg.rng_seed = std::uint64_t(seed);
        GDDiagnostics diag;
        const EigenPairEstimate pair = gd_top_eigenpair_encoded(ec, cfg, 2.0, &diag);
        const double measured = overlap(pair.vector, eig.vectors[0]);
        ++predicted_hits;
        ok_predicted = ok_predicted && measured >= 0.99 &&
                       std::abs(pair.value - 2.0 * eig.values[0]) <= 0.05;
    }
    note("synthetic encodings: %d/20 predicted convergent, all measured >= 0.99: %s",
         predicted_hits, ok_predicted ? "yes" : "NO");

    // (c) Ingested datasets: the same prediction at the operator's actual
    //     (sub-normalized) spectrum, with a discrepancy table for the rest.
    std::vector<GDRow> table;
    int dataset_predicted = 0;
    bool ok_dataset = true;
    for (int seed = 1; seed <= 30; ++seed) {
        Rng rng(700 + seed);
        const auto planted = testsupport::planted_covariance_dataset(
            12, 8, {1.0, 0.55, 0.3, 0.18, 0.1, 0.06, 0.035, 0.02}, rng);
        const Dataset data = ingest_dataset(planted.x);
        const BlockEncoding ec = build_covariance(data);
        const EigenDecomposition eig = hermitian_eig(ec.encoded());
        const Vector x0 = reproduce_start(eig, 8, std::uint64_t(seed));
        const double ov0 = overlap(x0, eig.vectors[0]);
        const double rho_c = (1.0 + eig.values[1]) / (1.0 + eig.values[0]);
        const double tan_t = std::sqrt(std::max(0.0, 1.0 - ov0 * ov0)) / ov0 * std::pow(rho_c, T);

        GDConfig cfg;
        cfg.eta = 0.25;
        cfg.eps = 1e-2;
        cfg.rng_seed = std::uint64_t(seed);
        GDDiagnostics diag;
        const EigenPairEstimate pair = gd_top_eigenpair(data, cfg, &diag);
        const double measured = overlap(pair.vector, eig.vectors[0]);
        if (tan_t <= tan_budget) {
            ++dataset_predicted;
            ok_dataset = ok_dataset && measured >= 0.99;
        } else {
            table.push_back({seed, ov0, rho_c, measured, diag.iterations, diag.converged});
        }
    }
    note("dataset instances: %d/30 predicted convergent under the 7-step budget", dataset_predicted);
    if (!table.empty()) {
        note("%zu instances below the prediction threshold (ingestion shrinks the operator", table.size());
        note("gap, so the fixed step budget stalls); first rows:");
        for (std::size_t i = 0; i < table.size() && i < 8; ++i)
            note("  seed=%2d start-overlap=%.3f contraction=%.5f measured-overlap=%.3f "
                 "iters=%d direction-stable=%s",
                 table[i].seed, table[i].start_overlap, table[i].contraction, table[i].measured,
                 table[i].iterations, table[i].direction_stable ? "yes" : "no");
        if (table.size() > 8) note("  ... and %zu more", table.size() - 8);
    }
    return ok_alg && ok_predicted && ok_dataset && predicted_hits >= 1;
}

// ---------------------------------------------------------------------------
// 5. Success-filter algebra: derived strength meets the failure budget.

bool filter_bound_holds() {
    bool formula_ok = true;
    double worst_excess = -1.0;
    for (int g = -9; g <= 9; g += 2) {
        const double gamma = g / 10.0;
        for (const double eps : {1e-1, 1e-2, 1e-3}) {
            const double beta = filter_beta(gamma, eps);
            const double direct = std::log(1.0 / (1.0 - eps)) / (2.0 * (1.0 - gamma));
            formula_ok = formula_ok && std::abs(beta - direct) <= 1e-12 * std::max(1.0, direct);
            const double failure = 1.0 - filter_success_prob(beta, gamma);
            worst_excess = std::max(worst_excess, failure - eps);
        }
    }
    note("30 (gamma, eps) grid points; worst failure minus budget %.3e (allowed 1e-12)",
         worst_excess);
    return formula_ok && worst_excess <= 1e-12;
}

// ---------------------------------------------------------------------------
// 6. Linear solver: fidelity, predicted/measured probabilities, path agreement.

bool solver_fidelity_and_probability() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_fid = 1.0, worst_prob = 0.0, worst_agree = 0.0;
    for (int i = 0; i < 50; ++i) {
        Rng rng(4000 + i);
        const double kappa = rng.uniform(2.0, 16.0);
        const bool indefinite = (i % 2 == 1);
        const LinearSystem sys = planted_system(16, kappa, indefinite, rng);
        const double want_prob = success_probability(sys);

        const SolveResult rg = solve_general(sys, 1e-2);
        worst_fid = std::min(worst_fid, rg.fidelity);
        worst_prob = std::max({worst_prob, std::abs(rg.success_prob - want_prob),
                               std::abs(rg.measured_prob - rg.success_prob)});
        if (!indefinite) {
            const SolveResult rp = solve_psd(sys, 1e-2);
            worst_fid = std::min(worst_fid, rp.fidelity);
            worst_prob = std::max({worst_prob, std::abs(rp.success_prob - want_prob),
                                   std::abs(rp.measured_prob - rp.success_prob)});
            worst_agree = std::max(worst_agree, norm(rp.state - rg.state));
        }
    }

    // Dyadic hand system: diag(1, 1/2) against the uniform state has success
    // probability exactly 5/32.
    const LinearSystem hand =
        ingest_system(Matrix{{1.0, 0.0}, {0.0, 0.5}},
                      {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0)});
    const double hand_prob = success_probability(hand);
    const SolveResult hand_res = solve_psd(hand, 1e-2);
    const bool hand_ok = std::abs(hand_prob - 5.0 / 32.0) <= 1e-12 &&
                         std::abs(hand_res.success_prob - 5.0 / 32.0) <= 1e-9 &&
                         hand_res.fidelity >= 1.0 - 1e-10;

    const double elapsed = seconds_since(t0);
    note("50 systems (kappa in [2,16], half indefinite): min fidelity %.6f,", worst_fid);
    note("worst probability deviation %.3e, worst psd/shift state gap %.3e, %.1fs",
         worst_prob, worst_agree, elapsed);
    note("hand system: success probability %.10f (5/32 = %.10f)", hand_prob, 5.0 / 32.0);
    return worst_fid >= 0.99 && worst_prob <= 1e-9 && worst_agree <= 2e-2 && hand_ok &&
           elapsed < 30.0;
}

// ---------------------------------------------------------------------------
// 7. Polynomial builders certify their grid error within a 4x escalation.

bool polynomial_certification() {
    bool ok = true;
    const std::vector<double> eps_grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    for (const double beta : {0.5, 1.0, 2.0, 4.0}) {
        std::string line;
        for (const double eps : eps_grid) {
            const PolySpec p = exp_filter_poly(beta, eps);
            ok = ok && p.sup_error <= eps && p.escalation <= 4.0 + 1e-12;
            char cell[64];
            std::snprintf(cell, sizeof cell, " d=%d x%.2f", p.degree, p.escalation);
            line += cell;
        }
        note("decay filter beta=%.1f:%s", beta, line.c_str());
    }
    for (const double t : {1.0, 2.0, 4.0, 8.0}) {
        std::string line;
        for (const double eps : eps_grid) {
            const PolySpec p = jacobi_anger_poly(t, eps);
            ok = ok && p.sup_error <= eps && p.escalation <= 4.0 + 1e-12;
            char cell[64];
            std::snprintf(cell, sizeof cell, " d=%d x%.2f", p.degree, p.escalation);
            line += cell;
        }
        note("wave expansion t=%.0f:%s", t, line.c_str());
    }
    note("all certified sup errors within budget, escalation factors above");
    return ok;
}

// ---------------------------------------------------------------------------
// 8. Direct simulation tracks the evolution oracle including global phase.

bool direct_simulation_accuracy() {
    double worst_diff = 0.0, worst_norm = 0.0;
    for (int seed = 1; seed <= 5; ++seed)
        for (const double t : {1.0, 2.5, 5.0}) {
            Rng rng(800 + 10 * seed + int(t));
            const double cap = (seed == 5) ? 1.3 : 0.9; // one over-norm case exercises rescaling
            const Matrix h = random_hermitian_block(8, cap, rng);
            const Vector psi0 = random_unit_vector(8, rng);
            const SimProblem p = make_problem(h, t, psi0, 1e-6);
            const Vector got = simulate_direct(p);
            const Vector want = expm_oracle(h, t) * psi0;
            worst_diff = std::max(worst_diff, norm(got - want));
            worst_norm = std::max(worst_norm, std::abs(norm(got) - 1.0));
        }
    note("15 cases (8x8, t up to 5, eps 1e-6): worst state error %.3e (budget 1e-5),",
         worst_diff);
    note("worst norm drift %.3e (budget 1e-6)", worst_norm);
    return worst_diff <= 1e-5 && worst_norm <= 1e-6;
}

// ---------------------------------------------------------------------------
// 9. Discretized evolution: convergence order, system conditioning, and the
//    sampled-coefficient builder's bit-identity on constant input.

bool discretization_order_and_conditioning() {
    const Matrix h{{0.6, 0.35}, {0.35, -0.4}};
    const Vector psi0 = {cplx(0.8, 0.0), cplx(0.6, 0.0)};
    const double t = 1.0;
    const SimProblem p = make_problem(h, t, psi0, 1e-2);
    const Vector want = expm_oracle(h, t) * psi0;

    std::vector<double> ln_delta, ln_err;
    for (const int n : {16, 32, 64, 128}) {
        const DiscretizedSystem d = build_central_difference_system(p, n);
        const Vector x = inverse_oracle(d.l) * d.rhs;
        Vector last(2);
        for (std::size_t i = 0; i < 2; ++i) last[i] = x[std::size_t(n) * 2 + i];
        ln_delta.push_back(std::log(t / n));
        ln_err.push_back(std::log(norm(last - want)));
    }
    const double slope = fitted_slope(ln_delta, ln_err);
    note("final-state error slope vs step size: %.3f (want 2 +- 0.3)", slope);

    const int n_auto = choose_steps(t, 1e-2, 1);
    const DiscretizedSystem da = build_central_difference_system(p, n_auto);
    const Vector xa = inverse_oracle(da.l) * da.rhs;
    Vector last(2);
    for (std::size_t i = 0; i < 2; ++i) last[i] = xa[std::size_t(n_auto) * 2 + i];
    const double err_auto = norm(last - want);
    note("at the chosen step count N=%d: error %.3e, error/eps = %.4f (informational)",
         n_auto, err_auto, err_auto / 1e-2);

    std::vector<double> ln_n, ln_k;
    for (const int n : {8, 16, 32, 64}) {
        const DiscretizedSystem d = build_central_difference_system(p, n);
        ln_n.push_back(std::log(double(n)));
        ln_k.push_back(std::log(cond_number(d.l)));
    }
    const double kappa_exp = fitted_slope(ln_n, ln_k);
    note("system condition number grows like N^%.3f (budget exponent 1.2)", kappa_exp);

    const MultistepScheme scheme = leapfrog_scheme();
    const DiscretizedSystem ds_static = build_central_difference_system(p, 24);
    const DiscretizedSystem ds_multi = build_multistep_system(p, 24, scheme.alphas, scheme.betas);
    const SimProblem ptd =
        make_time_dependent_problem(std::vector<Matrix>(25, h), t, psi0, 1e-2, 1);
    const DiscretizedSystem ds_td =
        build_time_dependent_system(ptd, 24, scheme.alphas, scheme.betas);
    const bool identical = ds_static.l.data() == ds_multi.l.data() &&
                           ds_static.l.data() == ds_td.l.data() &&
                           ds_static.rhs == ds_multi.rhs && ds_static.rhs == ds_td.rhs;
    note("constant-coefficient sampled builder bit-identical to the static one: %s",
         identical ? "yes" : "NO");

    return std::abs(slope - 2.0) <= 0.3 && kappa_exp <= 1.2 && identical;
}

// ---------------------------------------------------------------------------
// 10. Query-cost scaling trends: kappa^2 for the solver, additive-log state
//     preparation depth, and the extract-then-deflate recursion.

bool cost_scaling_trends() {
    bool ok = true;

    double base = 0.0;
    note("condition-number sweep (shift path, eps 1e-2):");
    for (const double kappa : {2.0, 4.0, 8.0, 16.0}) {
        Rng rng(900 + int(kappa));
        const LinearSystem sys = planted_system(16, kappa, false, rng, true);
        const SolveResult res = solve_general(sys, 1e-2);
        const double per_k2 = res.ledger.queries / (kappa * kappa);
        if (base == 0.0) base = per_k2;
        const double ratio = per_k2 / base;
        note("  kappa=%4.0f queries=%.3e queries/kappa^2 (normalized) = %.3f", kappa,
             res.ledger.queries, ratio);
        ok = ok && ratio >= 0.25 && ratio <= 4.0;
    }

    std::vector<double> depths;
    for (const std::size_t n : {8, 16, 32, 64}) {
        Rng rng(950 + int(n));
        depths.push_back(encode_system(planted_system(n, 4.0, false, rng, true))
                             .ledger()
                             .depth_proxy);
    }
    const double inc0 = depths[1] - depths[0];
    bool additive = inc0 > 0.0;
    for (std::size_t i = 1; i + 1 < depths.size(); ++i)
        additive = additive && std::abs((depths[i + 1] - depths[i]) - inc0) <= 1e-9;
    note("state-prep depth at n=8,16,32,64: %.1f %.1f %.1f %.1f (uniform +%.1f per doubling: %s)",
         depths[0], depths[1], depths[2], depths[3], inc0, additive ? "yes" : "NO");
    ok = ok && additive;

    Rng rng(970);
    const auto planted = testsupport::planted_covariance_dataset(
        12, 8, {1.0, 0.6, 0.3, 0.15, 0.08, 0.04, 0.02, 0.01}, rng);
    const Dataset data = ingest_dataset(planted.x);
    PowerConfig cfg;
    cfg.eps = 1e-2;
    cfg.gap = 0.4 / (data.global_scale * data.global_scale);
    cfg.rng_seed = 42;
    std::vector<PowerStageInfo> info1, info2;
    const auto one = top_r_power(data, 1, cfg, &info1, false);
    const auto two = top_r_power(data, 2, cfg, &info2, false);
    double q1 = 0.0, q2 = 0.0;
    for (const auto& pr : one) q1 += pr.ledger.queries;
    for (const auto& pr : two) q2 += pr.ledger.queries;
    const double measured = q2 / q1;
    const double predicted =
        1.0 + double(info2[1].k) * double(std::max(1, info2[1].filter_degree));
    const double rel = measured / predicted;
    note("two-component extraction: measured cost ratio %.1f, recursion prediction %.1f,",
         measured, predicted);
    note("measured/predicted = %.3f (budget [0.25, 4])", rel);
    ok = ok && rel >= 0.25 && rel <= 4.0;
    return ok;
}

// ---------------------------------------------------------------------------
// 11. Identical config and seed reproduce byte-identical artifacts.

bool deterministic_artifacts() {
    // Deterministic input files, written with round-trip-exact literals.
    {
        Rng rng(77);
        const auto planted =
            testsupport::planted_covariance_dataset(6, 4, {1.0, 0.4, 0.15, 0.05}, rng);
        std::ofstream out("acc_pca_input.csv", std::ios::binary);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 4; ++j)
                out << (j ? "," : "") << format_real(planted.x(i, j).real());
            out << "\n";
        }
    }
    {
        std::ofstream out("acc_sim_h.csv", std::ios::binary);
        out << "0.55,0.2\n0.2,-0.35\n";
    }

    ExperimentConfig pca;
    pca.command = "pca";
    pca.input_path = "acc_pca_input.csv";
    pca.eps = 1e-3;
    pca.seed = 21;

    ExperimentConfig solve;
    solve.command = "solve";
    solve.planted_kappa = 3.0;
    solve.n = 8;
    solve.eps = 1e-2;
    solve.seed = 7;

    ExperimentConfig sim;
    sim.command = "simulate";
    sim.input_path = "acc_sim_h.csv";
    sim.t = 1.0;
    sim.eps = 1e-4;
    sim.seed = 3;

    ExperimentConfig bench;
    bench.command = "bench";
    bench.sweep = "kappa=2,4";
    bench.n = 6;
    bench.eps = 1e-2;
    bench.seed = 11;

    bool ok = true;
    for (const ExperimentConfig* cfg : {&pca, &solve, &sim, &bench}) {
        const std::string a = render_json(execute(*cfg).result);
        const std::string b = render_json(execute(*cfg).result);
        ok = ok && !a.empty() && a == b;
        note("%s: repeated in-process runs byte-identical: %s", cfg->command.c_str(),
             (a == b) ? "yes" : "NO");
    }

    ExperimentConfig filed = solve;
    filed.output_path = "acc_out.json";
    filed.ledger_path = "acc_out_stages.csv";
    ok = ok && run(filed) == 0;
    const std::string json_a = slurp("acc_out.json");
    const std::string csv_a = slurp("acc_out_stages.csv");
    ok = ok && run(filed) == 0;
    const bool files_same = json_a == slurp("acc_out.json") && csv_a == slurp("acc_out_stages.csv");
    note("written artifacts byte-identical across runs: %s", files_same ? "yes" : "NO");
    ok = ok && files_same && !json_a.empty() && !csv_a.empty();

    for (const char* f : {"acc_pca_input.csv", "acc_sim_h.csv", "acc_out.json",
                          "acc_out_stages.csv"})
        std::remove(f);
    return ok;
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<bool()> fn;
    };
    const std::vector<Criterion> checks = {
        {"combinator blocks match the dense linear-algebra oracles", combinators_match_oracles},
        {"covariance assembly equals (1/m) X^T X - mu mu^T", covariance_assembly_matches},
        {"power method recovers planted top-2 pairs on >= 95/100 seeds",
         power_extraction_planted_gap},
        {"gradient-descent update algebra and convergence-vs-prediction report",
         gradient_descent_report},
        {"success-filter strength meets its failure budget", filter_bound_holds},
        {"linear solver fidelity, probabilities, and path agreement",
         solver_fidelity_and_probability},
        {"polynomial builders certify within a 4x degree escalation", polynomial_certification},
        {"direct simulation matches the evolution oracle", direct_simulation_accuracy},
        {"discretized evolution order, conditioning, and builder identity",
         discretization_order_and_conditioning},
        {"query-cost scaling trends (condition number, size, recursion)", cost_scaling_trends},
        {"identical config and seed give byte-identical artifacts", deterministic_artifacts},
    };

    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        bool ok = false;
        std::string thrown;
        try {
            ok = checks[i].fn();
        } catch (const std::exception& e) {
            thrown = e.what();
        }
        if (!thrown.empty()) std::cout << "    unexpected exception: " << thrown << "\n";
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
                  << checks[i].label << "\n";
        if (!ok) ++failed;
    }
    if (failed != 0) std::cout << failed << " criterion(s) failed\n";
    return failed == 0 ? 0 : 1;
}
