#include "blockenc/stateprep.hpp"

#include <cmath>

namespace blockenc {

namespace {

std::size_t next_power_of_two(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

} // namespace

void Dataset::check() const {
    if (m == 0 || n == 0) throw shape_error("dataset must have at least one sample and feature");
    if (rows.rows() != m || rows.cols() != n) throw shape_error("dataset row matrix shape mismatch");
    if (!rows.all_finite()) throw validation_error("dataset has non-finite entries");
    const double f = rows.frobenius_norm();
    if (std::abs(f * f - 1.0) > 1e-10)
        throw validation_error("dataset row norms must square-sum to 1 after ingestion");
}

Dataset ingest_dataset(const Matrix& raw) {
    if (raw.rows() == 0 || raw.cols() == 0) throw shape_error("empty dataset");
    if (!raw.all_finite()) throw validation_error("dataset has non-finite entries");
    const double f = raw.frobenius_norm();
    if (f <= 0.0) throw validation_error("dataset is identically zero");
    Dataset d;
    d.m = raw.rows();
    d.n = raw.cols();
    d.rows = raw;
    d.rows *= cplx(1.0 / f, 0.0);
    d.global_scale = f;
    d.check();
    return d;
}

PreparedState prepare_state(const Vector& v) {
    if (v.empty()) throw shape_error("cannot prepare an empty state");
    if (!all_finite(v)) throw validation_error("state has non-finite entries");
    const double nrm = norm(v);
    if (nrm <= 0.0) throw validation_error("cannot prepare the zero vector");
    PreparedState out;
    out.norm_scale = nrm;
    out.amplitudes = v;
    for (auto& x : out.amplitudes) x /= nrm;
    for (const auto& x : v)
        if (x != cplx(0.0, 0.0)) ++out.sparsity;
    const double s = double(out.sparsity);
    const double logdim = std::log2(std::max<double>(2.0, double(v.size())));
    out.ledger.queries = 1.0;
    out.ledger.depth_proxy = std::max(1.0, std::log2(std::max(2.0, s * logdim)));
    out.ledger.count("state-preparation");
    return out;
}

PreparedState pair_state(const Dataset& x) {
    x.check();
    PreparedState out;
    out.amplitudes.reserve(x.m * x.n);
    for (std::size_t i = 0; i < x.m; ++i)
        for (std::size_t j = 0; j < x.n; ++j) out.amplitudes.push_back(x.rows(i, j));
    out.norm_scale = 1.0; // dataset ingestion already normalized the table
    for (const auto& a : out.amplitudes)
        if (a != cplx(0.0, 0.0)) ++out.sparsity;
    out.ledger.queries = 1.0;
    out.ledger.depth_proxy = std::log2(std::max<double>(2.0, double(x.m * x.n)));
    out.ledger.count("state-preparation");
    return out;
}

BlockEncoding gram_encoding(const Dataset& x) {
    PreparedState phi = pair_state(x);
    BlockEncoding rho = density_from_state(phi.amplitudes, x.m);
    CostLedger ledger = phi.ledger + rho.ledger();
    return BlockEncoding(rho.encoded(), rho.alpha(), rho.ancillas(), rho.eps(), ledger);
}

BlockEncoding centroid_encoding(const Dataset& x, bool allow_padding) {
    x.check();
    const std::size_t m_pad = next_power_of_two(x.m);
    if (m_pad != x.m && !allow_padding)
        throw validation_error("sample count is not a power of two and padding is disabled");

    // Mean over the true sample count; zero-padded rows do not shift it.
    Vector mu(x.n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < x.m; ++i)
        for (std::size_t j = 0; j < x.n; ++j) mu[j] += x.rows(i, j);
    for (auto& c : mu) c /= double(x.m);
    Matrix outer = Matrix::outer(mu, mu);

    // Cost model: pair state over the padded table, a Hadamard layer on the
    // sample register, the density trick, and one dilution rotation.
    CostLedger ledger;
    ledger.queries = 1.0 + 2.0;
    const double lg_m = std::log2(std::max<double>(2.0, double(m_pad)));
    ledger.depth_proxy =
        std::log2(std::max<double>(2.0, double(m_pad * x.n))) + lg_m + 2.0 + 1.0;
    ledger.count("state-preparation");
    ledger.count("density");
    ledger.count("scale");
    const int anc = int(std::ceil(lg_m)) + 1;
    return BlockEncoding(std::move(outer), 1.0, anc, 0.0, ledger);
}

} // namespace blockenc
