#include "blockenc/qpca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockenc/eig.hpp"
#include "blockenc/polytransform.hpp"

namespace blockenc {

namespace {

// Tolerated negative dip of a "positive semidefinite" encoded block: the
// encoding's own tracked error, since deflation leaves a residual of exactly
// that size on the removed component.
double psd_floor(const BlockEncoding& e) { return e.eps() + 1e-8; }

Vector matvec_affine(const BlockEncoding& ec, const Vector& x, double eta) {
    // (I - eta G) x  with  G = 2I - C  and  ec holding C/2:
    // (1 - 2 eta) x + 2 eta (C/2) x.
    Vector cx = ec.encoded() * x;
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (1.0 - 2.0 * eta) * x[i] + 2.0 * eta * cx[i];
    return out;
}

} // namespace

BlockEncoding build_covariance(const Dataset& x) {
    x.check();
    BlockEncoding gram = gram_encoding(x);
    BlockEncoding mean = centroid_encoding(x);
    // (1/m) X^T X; a single sample needs no dilution.
    BlockEncoding scaled =
        x.m > 1 ? scale_down(gram, double(x.m)) : std::move(gram);
    BlockEncoding out = lcu({std::move(scaled), std::move(mean)}, {+1, -1});
    CostLedger ledger = out.ledger();
    ledger.count("covariance");
    return BlockEncoding(out.encoded(), out.alpha(), out.ancillas(), out.eps(),
                         std::move(ledger));
}

double filter_beta(double gamma, double eps) {
    if (!(eps > 0.0) || eps >= 1.0) throw domain_error("filter accuracy must lie in (0, 1)");
    if (1.0 - gamma < 1e-12) return 0.0; // iterate already aligned; no filter needed
    return std::log(1.0 / (1.0 - eps)) / (2.0 * (1.0 - gamma));
}

double filter_success_prob(double beta, double gamma) {
    return std::exp(-2.0 * beta * (1.0 - gamma));
}

PowerIterateResult power_iterate(const BlockEncoding& e, Vector x0, int k, double beta,
                                 double eps, Rng* rng) {
    if (k < 1) throw domain_error("power iteration needs k >= 1");
    if (beta < 0.0) throw domain_error("filter strength must be nonnegative");
    if (x0.size() != e.dim()) throw shape_error("start vector dimension mismatch");
    if (std::abs(norm(x0) - 1.0) > 1e-9)
        throw validation_error("power iteration requires a unit start vector");
    if (!e.encoded().is_hermitian(1e-10))
        throw symmetry_error("power iteration requires a Hermitian block");

    EigenDecomposition eig = hermitian_eig(e.encoded());
    if (eig.values.back() < -psd_floor(e))
        throw spectrum_error("power iteration requires a positive-semidefinite block "
                             "(min eigenvalue " + std::to_string(eig.values.back()) + ")");

    int draws = 0;
    while (std::abs(dot(eig.vectors[0], x0)) <= 1e-6) {
        if (rng == nullptr || ++draws > 16)
            throw degenerate_start_error("start vector has no overlap with the dominant "
                                         "eigenvector after 16 draws");
        x0 = random_unit_vector(e.dim(), *rng);
    }

    // Iterate with per-step renormalization; the k-step magnitude ||A^k x0||
    // is reassembled from the step norms (log-summed so tiny factors cannot
    // underflow before the product is formed).
    Vector y = x0;
    double logmag = 0.0;
    for (int step = 0; step < k; ++step) {
        Vector next = e.encoded() * y;
        const double ny = norm(next);
        if (ny < 1e-280) { // start annihilated: keep the last direction
            logmag = -std::numeric_limits<double>::infinity();
            break;
        }
        logmag += std::log(ny);
        y = normalized(next);
    }
    const double raw_norm = std::isfinite(logmag) ? std::exp(logmag) : 0.0;

    PowerIterateResult out;
    out.xk = std::move(y);
    out.gamma = raw_norm * raw_norm * dot(out.xk, x0).real();
    out.prob = filter_success_prob(beta, out.gamma);
    out.ledger = e.ledger();
    out.ledger.scale(double(k));
    out.ledger.count("power-iterate");
    if (beta > 0.0) {
        const PolySpec filter = exp_filter_poly(beta, eps);
        out.ledger.scale(std::max(1.0, double(filter.degree)));
        out.ledger.count("exponential-filter");
    }
    return out;
}

double rayleigh_estimate(const BlockEncoding& e, const Vector& x) {
    if (x.size() != e.dim()) throw shape_error("vector dimension mismatch");
    if (std::abs(norm(x) - 1.0) > 1e-9)
        throw validation_error("Rayleigh quotient requires a unit vector");
    return dot(x, e.encoded() * x).real();
}

double rayleigh_estimate_sampled(const BlockEncoding& e, const Vector& x, long shots, Rng& rng) {
    if (shots < 1) throw domain_error("sampled estimation needs at least one shot");
    const double exact = rayleigh_estimate(e, x);
    const double p = std::clamp(exact, 0.0, 1.0);
    return double(rng.binomial(shots, p)) / double(shots);
}

double estimate_gap(const BlockEncoding& e, Rng& rng, CostLedger* probe_cost) {
    const Matrix& a = e.encoded();
    const std::size_t n = e.dim();
    constexpr int kProbe = 24;

    Vector x = random_unit_vector(n, rng);
    for (int i = 0; i < kProbe; ++i) {
        Vector xn = a * x;
        if (norm(xn) < 1e-14) break;
        x = normalized(xn);
    }
    const double lam1 = dot(x, a * x).real();

    Vector y = random_unit_vector(n, rng);
    y = y - dot(x, y) * x;
    if (norm(y) < 1e-10) y = random_unit_vector(n, rng); // pathological draw
    y = normalized(y);
    for (int i = 0; i < kProbe; ++i) {
        Vector yn = a * y;
        yn = yn - dot(x, yn) * x;
        if (norm(yn) < 1e-14) break;
        y = normalized(yn);
    }
    const double lam2 = dot(y, a * y).real();

    if (probe_cost != nullptr) {
        *probe_cost = e.ledger();
        probe_cost->scale(2.0 * kProbe);
        probe_cost->count("gap-probe");
    }
    return std::max(lam1 - lam2, 0.0);
}

EigenPairEstimate top_eigenpair_power(const BlockEncoding& e, const PowerConfig& cfg,
                                      PowerStageInfo* info) {
    if (!(cfg.eps > 0.0) || cfg.eps >= 1.0)
        throw config_error("power-path accuracy must lie in (0, 1)");
    Rng rng(cfg.rng_seed);

    CostLedger probe;
    double gap = cfg.gap;
    if (gap <= 0.0) gap = estimate_gap(e, rng, &probe);
    if (gap < 1e-6)
        throw gap_error("spectral gap " + std::to_string(gap) +
                        " too small to separate components");

    const std::size_t n = e.dim();
    int k = cfg.k;
    if (k <= 0) k = int(std::ceil(std::log(double(n) / cfg.eps) / gap));
    k = std::max(k, 1);

    Vector x0 = random_unit_vector(n, rng);
    PowerIterateResult it = power_iterate(e, std::move(x0), k, 0.0, cfg.eps, &rng);

    // Success filter: strength from the measured overlap unless pinned by the
    // caller, in which case it must respect the probability budget.
    const double beta_cap = filter_beta(it.gamma, cfg.eps);
    double beta = cfg.beta;
    if (beta <= 0.0) {
        beta = beta_cap;
    } else if (beta_cap > 0.0 && beta > beta_cap + 1e-12) {
        throw config_error("filter strength exceeds the success-probability budget");
    }
    int filter_degree = 0;
    if (beta > 0.0) {
        const PolySpec filter = exp_filter_poly(beta, cfg.eps);
        filter_degree = filter.degree;
        it.ledger.scale(std::max(1.0, double(filter.degree)));
        it.ledger.count("exponential-filter");
        it.prob = filter_success_prob(beta, it.gamma);
    }

    EigenPairEstimate pair;
    pair.vector = phase_fixed(it.xk);
    pair.value = rayleigh_estimate(e, pair.vector);
    pair.eps_bound = cfg.eps + e.eps();
    pair.ledger = probe;
    pair.ledger += it.ledger;
    pair.ledger.queries += 1.0; // the estimation circuit on top of the iterate
    pair.ledger.count("rayleigh-estimate");

    if (info != nullptr) {
        info->k = k;
        info->gap_used = gap;
        info->beta = beta;
        info->eps_stage = cfg.eps;
        info->filter_degree = filter_degree;
        info->stage_scale = 1.0;
    }
    return pair;
}

BlockEncoding deflate(const BlockEncoding& e, const EigenPairEstimate& pair) {
    if (pair.vector.size() != e.dim()) throw shape_error("component dimension mismatch");
    if (std::abs(norm(pair.vector) - 1.0) > 1e-9)
        throw validation_error("component vector must be unit");

    // Projector onto the extracted component.  Its preparation cost is the
    // cost of producing the component in the first place, so each query to
    // the deflated operator re-pays the extraction.
    CostLedger proj_ledger = pair.ledger;
    proj_ledger.queries += 2.0; // prepare + unprepare around the reflection
    proj_ledger.depth_proxy += 2.0;
    proj_ledger.count("rank-one-projector");
    BlockEncoding proj(Matrix::outer(pair.vector, pair.vector), 1.0, 1, 0.0,
                       std::move(proj_ledger));

    BlockEncoding sandwich = product(product(proj, e), proj);
    BlockEncoding out = lcu({e, std::move(sandwich)}, {+1, -1});
    CostLedger ledger = out.ledger();
    ledger.count("deflation");
    BlockEncoding tagged(out.encoded(), out.alpha(), out.ancillas(), out.eps(),
                         std::move(ledger));
    return tagged.with_extra_eps(2.0 * pair.eps_bound);
}

std::vector<EigenPairEstimate> top_r_power(const Dataset& x, std::size_t r,
                                           const PowerConfig& cfg,
                                           std::vector<PowerStageInfo>* stage_info,
                                           bool descale_values) {
    if (r == 0 || r > x.n) throw config_error("component count must lie in [1, n]");
    const double raw_units = x.global_scale * x.global_scale;

    BlockEncoding op = build_covariance(x);
    double scale = 2.0; // encoded block is C/2; deflation halves again per stage
    std::vector<EigenPairEstimate> out;
    out.reserve(r);
    for (std::size_t stage = 0; stage < r; ++stage) {
        PowerConfig stage_cfg = cfg;
        stage_cfg.eps = cfg.eps / scale;
        // A caller-supplied gap is the minimum covariance-units gap between
        // requested components; convert it to this stage's operator units.
        stage_cfg.gap = cfg.gap > 0.0 ? cfg.gap / scale : 0.0;
        stage_cfg.rng_seed = cfg.rng_seed + stage;

        PowerStageInfo info;
        EigenPairEstimate pair = top_eigenpair_power(op, stage_cfg, &info);
        info.stage_scale = scale;
        if (stage_info != nullptr) stage_info->push_back(info);

        EigenPairEstimate reported = pair;
        reported.value *= scale;
        reported.eps_bound *= scale;
        if (descale_values) {
            reported.value *= raw_units;
            reported.eps_bound *= raw_units;
        }
        out.push_back(std::move(reported));

        if (stage + 1 < r) {
            op = deflate(op, pair);
            scale *= 2.0;
        }
    }
    return out;
}

BlockEncoding gd_iterate(const BlockEncoding& ec, const BlockEncoding& rho, double eta) {
    if (!(eta > 0.0) || eta > 0.25) throw domain_error("step size must lie in (0, 1/4]");
    if (ec.dim() != rho.dim()) throw shape_error("operator/iterate dimension mismatch");
    if (!rho.encoded().is_hermitian(1e-8))
        throw symmetry_error("iterate density must be Hermitian");

    // Half-step operator (1/2)(I - eta G) = (1/2)((1-2eta) I + 2 eta C/2),
    // realized as a uniform two-term combination of diluted encodings; the
    // sandwich below expands to the four-term update.
    const std::size_t n = ec.dim();
    BlockEncoding ident = identity_encoding(n);
    std::vector<BlockEncoding> terms;
    if (eta < 0.25) {
        terms.push_back(scale_down(ident, 1.0 / (1.0 - 2.0 * eta)));
    } else {
        terms.push_back(scale_down(std::move(ident), 2.0));
    }
    terms.push_back(scale_down(ec, 1.0 / (2.0 * eta)));
    BlockEncoding half = lcu(terms, {+1, +1});

    BlockEncoding quarter = product(product(half, rho), half);
    const double smax = spectral_norm_estimate(quarter.encoded());
    const double delta = std::clamp((1.0 - 4.0 * smax) / 2.0, 1e-6, 0.45);
    BlockEncoding out = amplify(std::move(quarter), 4.0, delta, 0.01);
    CostLedger ledger = out.ledger();
    ledger.count("gradient-step");
    return BlockEncoding(out.encoded(), out.alpha(), out.ancillas(), out.eps(),
                         std::move(ledger));
}

EigenPairEstimate gd_top_eigenpair_encoded(const BlockEncoding& ec, const GDConfig& cfg,
                                           double scale, GDDiagnostics* diag) {
    if (!(cfg.eps > 0.0) || cfg.eps >= 1.0)
        throw config_error("gradient-path accuracy must lie in (0, 1)");
    if (!(cfg.eta > 0.0) || cfg.eta > 0.25)
        throw config_error("step size must lie in (0, 1/4]");
    if (!ec.encoded().is_hermitian(1e-10))
        throw symmetry_error("gradient descent requires a Hermitian operator");

    const std::size_t n = ec.dim();
    Rng rng(cfg.rng_seed);
    EigenDecomposition eig = hermitian_eig(ec.encoded());
    Vector x0;
    int draws = 0;
    do {
        if (++draws > 16)
            throw degenerate_start_error("start vector has no overlap with the dominant "
                                         "eigenvector after 16 draws");
        x0 = random_real_unit_vector(n, rng);
    } while (std::abs(dot(eig.vectors[0], x0)) <= 1e-6);

    const int T = cfg.T > 0 ? cfg.T : int(std::ceil(std::log2(1.0 / cfg.eps)));
    BlockEncoding rho = density_from_state(x0, 1);
    Vector direction = x0;
    double change = 0.0;
    bool converged = false;
    int performed = 0;
    for (int t = 0; t < T; ++t) {
        rho = gd_iterate(ec, rho, cfg.eta);
        Vector next = normalized(matvec_affine(ec, direction, cfg.eta));
        change = norm(next - direction);
        direction = std::move(next);
        performed = t + 1;
        if (change < cfg.eps / 10.0) {
            converged = true;
            break;
        }
    }

    EigenPairEstimate pair;
    pair.vector = phase_fixed(direction);
    pair.value = scale * rayleigh_estimate(ec, pair.vector);
    pair.eps_bound = scale * ec.eps() + cfg.eps;
    pair.ledger = rho.ledger();
    pair.ledger.queries += 1.0;
    pair.ledger.count("rayleigh-estimate");
    if (diag != nullptr) {
        diag->iterations = performed;
        diag->converged = converged;
        diag->final_direction_change = change;
    }
    return pair;
}

EigenPairEstimate gd_top_eigenpair(const Dataset& x, const GDConfig& cfg, GDDiagnostics* diag) {
    return gd_top_eigenpair_encoded(build_covariance(x), cfg, 2.0, diag);
}

BlockEncoding gd_deflate(const Dataset& x, const EigenPairEstimate& first) {
    BlockEncoding ec = build_covariance(x);
    EigenPairEstimate stage = first;
    stage.value /= 2.0; // covariance units -> encoded units
    stage.eps_bound /= 2.0;
    return deflate(ec, stage);
}

std::vector<EigenPairEstimate> top_r_gd(const Dataset& x, std::size_t r, const GDConfig& cfg,
                                        std::vector<GDDiagnostics>* diags,
                                        bool descale_values) {
    if (r == 0 || r > x.n) throw config_error("component count must lie in [1, n]");
    const double raw_units = x.global_scale * x.global_scale;

    BlockEncoding op = build_covariance(x);
    double scale = 2.0;
    std::vector<EigenPairEstimate> out;
    out.reserve(r);
    for (std::size_t stage = 0; stage < r; ++stage) {
        GDConfig stage_cfg = cfg;
        stage_cfg.rng_seed = cfg.rng_seed + stage;

        Rng probe_rng(cfg.rng_seed + 1000 + stage);
        CostLedger probe;
        const double gap = estimate_gap(op, probe_rng, &probe);
        if (gap < 1e-6)
            throw gap_error("spectral gap " + std::to_string(gap) +
                            " too small to separate components");

        GDDiagnostics diag;
        EigenPairEstimate pair = gd_top_eigenpair_encoded(op, stage_cfg, scale, &diag);
        pair.ledger += probe;
        if (diags != nullptr) diags->push_back(diag);

        EigenPairEstimate reported = pair;
        if (descale_values) {
            reported.value *= raw_units;
            reported.eps_bound *= raw_units;
        }
        out.push_back(std::move(reported));

        if (stage + 1 < r) {
            EigenPairEstimate stage_units = pair;
            stage_units.value /= scale;
            stage_units.eps_bound /= scale;
            op = deflate(op, stage_units);
            scale *= 2.0;
        }
    }
    return out;
}

} // namespace blockenc
