#pragma once

#include "blockenc/eig.hpp"
#include "blockenc/ledger.hpp"
#include "blockenc/matrix.hpp"

namespace blockenc {

// Matrix-level stand-in for a block-encoded operator.
//
// A block encoding embeds a (sub-normalized) matrix in the top-left block of a
// larger unitary.  This simulator stores only the effective block that the
// encoding applies (`encoded`), together with the sub-normalization `alpha`,
// the ancilla count, a tracked operator-norm error bound `eps`, and the cost
// ledger.  Every combinator below composes the block exactly and propagates
// (alpha, ancillas, eps, ledger) by the corresponding composition rule, so the
// artifact can check value-level claims and cost-scaling claims side by side.
class BlockEncoding {
public:
    BlockEncoding(Matrix encoded, double alpha, int ancillas, double eps, CostLedger ledger);

    const Matrix& encoded() const noexcept { return encoded_; }
    double alpha() const noexcept { return alpha_; }
    int ancillas() const noexcept { return ancillas_; }
    double eps() const noexcept { return eps_; }
    const CostLedger& ledger() const noexcept { return ledger_; }
    std::size_t dim() const noexcept { return encoded_.rows(); }

    // Copy with an extra amount added to the tracked error bound (used by
    // pipelines whose value-level shortcut is exact but whose tracked bound
    // must still account for an approximation the hardware would make).
    BlockEncoding with_extra_eps(double delta) const;

private:
    Matrix encoded_;
    double alpha_;
    int ancillas_;
    double eps_;
    CostLedger ledger_;
};

struct ApplyOutcome {
    Vector state;        // possibly unnormalized
    double success_prob; // squared norm of encoded * phi
};

struct PostSelectOutcome {
    Vector state; // normalized, phase-fixed
    double prob;
    CostLedger ledger; // input ledger times the repetition factor
};

// --- constructors ---------------------------------------------------------

// Wrap a unitary (checked to 1e-9) as an exact encoding of itself.
BlockEncoding from_unitary(const Matrix& u);

// Identity with one flagged ancilla; costs no queries.
BlockEncoding identity_encoding(std::size_t n);

// Rank-one projector |j><j| (j is 1-indexed); exact, log2(n) depth.
BlockEncoding projector_encoding(std::size_t j, std::size_t n);

// diag(state) for a unit vector; log2(dim)+3 ancillas, log2(dim) depth.
BlockEncoding diagonal_encoding(const Vector& state);

// Reduced density matrix of |psi><psi| after tracing out the leading register
// of dimension `split` (psi lives on split x (dim/split), row-major).
BlockEncoding density_from_state(const Vector& psi, std::size_t split);

// --- combinators -----------------------------------------------------------

// Product AB: alphas multiply, ancillas add, eps = a1*e2 + a2*e1.
BlockEncoding product(const BlockEncoding& e1, const BlockEncoding& e2);

// Evenly weighted signed sum  (1/m) sum_i s_i M_i  with s_i = +-1.
BlockEncoding lcu(const std::vector<BlockEncoding>& terms, const std::vector<int>& signs);

// Divide the encoded block by p > 1 (single-rotation dilution).
BlockEncoding scale_down(const BlockEncoding& e, double p);

// Kronecker product of all terms, in order.
BlockEncoding tensor(const std::vector<BlockEncoding>& terms);

// Uniform singular-value amplification by gamma > 1.  Requires every singular
// value of the block to sit at or below (1 - delta)/gamma (checked with a 1e-9
// absolute tolerance; several textbook uses sit exactly on the boundary).
// delta in (0, 1/2]; eps_rel in (0, 1/2).  Multiplies the ledger by
// ceil((gamma/delta) * ln(gamma/eps_rel)).
BlockEncoding amplify(const BlockEncoding& e, double gamma, double delta, double eps_rel);

// --- terminal operations ---------------------------------------------------

// Apply the block to a unit state; returns the raw image and its squared norm.
ApplyOutcome apply_to_state(const BlockEncoding& e, const Vector& phi);

// Measurement-conditioned application: normalizes the image and charges the
// repetition factor 1/prob (or 1/sqrt(prob) when amplitude amplification is
// enabled) onto the returned ledger.
PostSelectOutcome post_select(const BlockEncoding& e, const Vector& phi,
                              bool amplitude_amplification = false);

} // namespace blockenc
