#include "blockenc/encoding.hpp"

#include <cmath>
#include <string>

namespace blockenc {

namespace {

double log2_clamped(double x) { return std::log2(std::max(x, 2.0)); }

} // namespace

BlockEncoding::BlockEncoding(Matrix encoded, double alpha, int ancillas, double eps,
                             CostLedger ledger)
    : encoded_(std::move(encoded)), alpha_(alpha), ancillas_(ancillas), eps_(eps),
      ledger_(std::move(ledger)) {
    if (!encoded_.is_square() || encoded_.rows() == 0)
        throw shape_error("encoded block must be square and non-empty");
    if (!encoded_.all_finite()) throw validation_error("encoded block has non-finite entries");
    if (alpha_ < 1.0) throw validation_error("subnormalization alpha must be >= 1");
    if (ancillas_ < 0) throw validation_error("ancilla count must be nonnegative");
    if (eps_ < 0.0) throw validation_error("error bound eps must be nonnegative");
    ledger_.check();
    // Norm safety: no valid encoding can hold a block larger than 1 + eps.
    const double nrm = spectral_norm_estimate(encoded_);
    if (nrm > 1.0 + eps_ + 1e-9)
        throw validation_error("encoded block norm " + std::to_string(nrm) +
                               " exceeds 1 + eps; not a valid block encoding");
}

BlockEncoding BlockEncoding::with_extra_eps(double delta) const {
    if (delta < 0.0) throw validation_error("eps increment must be nonnegative");
    return BlockEncoding(encoded_, alpha_, ancillas_, eps_ + delta, ledger_);
}

BlockEncoding from_unitary(const Matrix& u) {
    if (!u.is_square() || u.rows() == 0) throw shape_error("from_unitary needs a square matrix");
    const Matrix gram = u.adjoint() * u;
    Matrix dev = gram;
    for (std::size_t i = 0; i < dev.rows(); ++i) dev(i, i) -= 1.0;
    if (dev.max_abs() > 1e-9)
        throw validation_error("from_unitary input is not unitary within 1e-9");
    CostLedger ledger;
    ledger.queries = 1.0;
    ledger.depth_proxy = 1.0;
    ledger.count("unitary");
    return BlockEncoding(u, 1.0, 0, 0.0, ledger);
}

BlockEncoding identity_encoding(std::size_t n) {
    if (n == 0) throw shape_error("identity encoding of dimension zero");
    CostLedger ledger;
    ledger.count("identity");
    return BlockEncoding(Matrix::identity(n), 1.0, 1, 0.0, ledger);
}

BlockEncoding projector_encoding(std::size_t j, std::size_t n) {
    if (n == 0) throw shape_error("projector encoding of dimension zero");
    if (j < 1 || j > n) throw validation_error("projector index out of range (1-indexed)");
    Matrix m(n, n);
    m(j - 1, j - 1) = 1.0;
    CostLedger ledger;
    ledger.depth_proxy = log2_clamped(double(n));
    ledger.count("projector");
    return BlockEncoding(m, 1.0, 1, 0.0, ledger);
}

BlockEncoding diagonal_encoding(const Vector& state) {
    if (state.empty()) throw shape_error("diagonal encoding of empty state");
    if (!all_finite(state)) throw validation_error("diagonal encoding state has non-finite entries");
    if (std::abs(norm(state) - 1.0) > 1e-9)
        throw validation_error("diagonal encoding requires a normalized state");
    const double lg = std::ceil(std::log2(std::max<double>(2.0, double(state.size()))));
    CostLedger ledger;
    ledger.queries = 1.0;
    ledger.depth_proxy = lg;
    ledger.count("diagonal");
    return BlockEncoding(Matrix::diagonal(state), 1.0, int(lg) + 3, 0.0, ledger);
}

BlockEncoding density_from_state(const Vector& psi, std::size_t split) {
    if (split == 0 || psi.empty() || psi.size() % split != 0)
        throw shape_error("state dimension is not divisible by the traced register size");
    if (!all_finite(psi)) throw validation_error("density input has non-finite entries");
    if (std::abs(norm(psi) - 1.0) > 1e-9)
        throw validation_error("density_from_state requires a normalized state");
    const std::size_t d = psi.size() / split;
    Matrix rho(d, d);
    // rho = Tr_A |psi><psi| over the leading register: index = a*d + b.
    for (std::size_t a = 0; a < split; ++a) {
        const cplx* blockp = &psi[a * d];
        for (std::size_t i = 0; i < d; ++i) {
            const cplx bi = blockp[i];
            if (bi == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < d; ++j) rho(i, j) += bi * std::conj(blockp[j]);
        }
    }
    CostLedger ledger;
    ledger.queries = 2.0; // the preparation unitary and its inverse, once each
    ledger.depth_proxy = 2.0;
    ledger.count("density");
    const int anc = int(std::ceil(std::log2(std::max<double>(2.0, double(split)))));
    return BlockEncoding(std::move(rho), 1.0, anc, 0.0, ledger);
}

BlockEncoding product(const BlockEncoding& e1, const BlockEncoding& e2) {
    if (e1.dim() != e2.dim()) throw shape_error("product of encodings with different dimensions");
    Matrix m = e1.encoded() * e2.encoded();
    const double alpha = e1.alpha() * e2.alpha();
    const double eps = e1.alpha() * e2.eps() + e2.alpha() * e1.eps();
    CostLedger ledger = e1.ledger() + e2.ledger();
    ledger.count("product");
    return BlockEncoding(std::move(m), alpha, e1.ancillas() + e2.ancillas(), eps, ledger);
}

BlockEncoding lcu(const std::vector<BlockEncoding>& terms, const std::vector<int>& signs) {
    if (terms.empty()) throw validation_error("lcu needs at least one term");
    if (terms.size() != signs.size()) throw shape_error("lcu term/sign count mismatch");
    const std::size_t n = terms[0].dim();
    const double m = double(terms.size());
    Matrix sum(n, n);
    double alpha_max = 0.0;
    double eps_sum = 0.0;
    int anc_max = 0;
    CostLedger ledger;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw validation_error("lcu signs must be +-1");
        if (terms[i].dim() != n) throw shape_error("lcu terms have mismatched dimensions");
        sum += double(signs[i]) * cplx(1.0, 0.0) * terms[i].encoded();
        alpha_max = std::max(alpha_max, terms[i].alpha());
        anc_max = std::max(anc_max, terms[i].ancillas());
        eps_sum += terms[i].eps();
        ledger += terms[i].ledger();
    }
    sum *= cplx(1.0 / m, 0.0);
    ledger.depth_proxy += m;
    ledger.count("lcu");
    const int select_bits = int(std::ceil(std::log2(std::max(2.0, m))));
    return BlockEncoding(std::move(sum), m * alpha_max, anc_max + select_bits, eps_sum / m, ledger);
}

BlockEncoding scale_down(const BlockEncoding& e, double p) {
    if (!(p > 1.0)) throw domain_error("scale_down requires p > 1");
    Matrix m = e.encoded();
    m *= cplx(1.0 / p, 0.0);
    CostLedger ledger = e.ledger();
    ledger.depth_proxy += 1.0; // one controlled rotation
    ledger.count("scale");
    return BlockEncoding(std::move(m), e.alpha(), e.ancillas() + 1, e.eps() / p, ledger);
}

BlockEncoding tensor(const std::vector<BlockEncoding>& terms) {
    if (terms.empty()) throw validation_error("tensor needs at least one term");
    Matrix m = terms[0].encoded();
    double alpha = terms[0].alpha();
    int anc = terms[0].ancillas();
    CostLedger ledger = terms[0].ledger();
    double depth = terms[0].ledger().depth_proxy;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        m = kron(m, terms[i].encoded());
        alpha *= terms[i].alpha();
        anc += terms[i].ancillas();
        ledger.queries += terms[i].ledger().queries;
        for (const auto& [k, v] : terms[i].ledger().lemma_counts) ledger.lemma_counts[k] += v;
        depth = std::max(depth, terms[i].ledger().depth_proxy);
    }
    // Factors act in parallel on disjoint registers, so depth is the max.
    ledger.depth_proxy = depth + 1.0;
    ledger.count("tensor");
    // eps: sum over i of eps_i * prod_{j != i} alpha_j.
    double eps = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double others = 1.0;
        for (std::size_t j = 0; j < terms.size(); ++j)
            if (j != i) others *= terms[j].alpha();
        eps += terms[i].eps() * others;
    }
    return BlockEncoding(std::move(m), alpha, anc, eps, ledger);
}

BlockEncoding amplify(const BlockEncoding& e, double gamma, double delta, double eps_rel) {
    if (!(gamma > 1.0)) throw domain_error("amplify requires gamma > 1");
    if (!(delta > 0.0) || delta > 0.5)
        throw domain_error("amplify requires delta in (0, 1/2]");
    if (!(eps_rel > 0.0) || eps_rel >= 0.5)
        throw domain_error("amplify requires eps_rel in (0, 1/2)");
    const double smax = spectral_norm_estimate(e.encoded());
    if (smax > (1.0 - delta) / gamma + 1e-9)
        throw amplification_error("singular values exceed (1 - delta)/gamma; cannot amplify by " +
                                  std::to_string(gamma));
    Matrix m = e.encoded();
    m *= cplx(gamma, 0.0);
    const double m_reps = std::ceil((gamma / delta) * std::log(gamma / eps_rel));
    CostLedger ledger = e.ledger();
    ledger.scale(std::max(1.0, m_reps));
    ledger.count("amplification");
    // Error grows by the relative guarantee times the amplified norm.
    const double eps = e.eps() + eps_rel * gamma * smax;
    return BlockEncoding(std::move(m), e.alpha(), e.ancillas() + 1, eps, ledger);
}

ApplyOutcome apply_to_state(const BlockEncoding& e, const Vector& phi) {
    if (phi.size() != e.dim()) throw shape_error("state dimension does not match encoding");
    if (std::abs(norm(phi) - 1.0) > 1e-9)
        throw validation_error("apply_to_state requires a normalized input state");
    ApplyOutcome out;
    out.state = e.encoded() * phi;
    const double n = norm(out.state);
    out.success_prob = n * n;
    return out;
}

PostSelectOutcome post_select(const BlockEncoding& e, const Vector& phi,
                              bool amplitude_amplification) {
    ApplyOutcome raw = apply_to_state(e, phi);
    const double n = norm(raw.state);
    if (n <= 1e-12)
        throw zero_probability_error("post-selection amplitude below working precision");
    PostSelectOutcome out;
    out.prob = raw.success_prob;
    out.state = phase_fixed(normalized(raw.state));
    out.ledger = e.ledger();
    const double reps =
        amplitude_amplification ? 1.0 / std::sqrt(out.prob) : 1.0 / out.prob;
    out.ledger.scale(std::max(1.0, reps));
    out.ledger.count(amplitude_amplification ? "amplitude-amplification" : "repetition");
    return out;
}

} // namespace blockenc
