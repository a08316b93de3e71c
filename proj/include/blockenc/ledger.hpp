#pragma once

#include <map>
#include <string>
#include <vector>

#include "blockenc/error.hpp"

namespace blockenc {

// Query/depth bookkeeping attached to every block encoding.
//
// `queries` counts uses of base unitaries / state preparations and `depth_proxy`
// accumulates the evaluated depth formulas of the primitives involved.  Both are
// scaling diagnostics, not gate counts: every asymptotic expression is evaluated
// with its implied constant set to 1 and logarithms taken base 2.  Composite
// constructions add ledgers; repetition-style primitives (amplification,
// polynomial application, inverse/fractional powers) multiply them.
struct CostLedger {
    double queries = 0.0;
    double depth_proxy = 0.0;
    std::map<std::string, long> lemma_counts;

    void check() const {
        if (queries < 0.0 || depth_proxy < 0.0)
            throw validation_error("cost ledger fields must be nonnegative");
    }

    CostLedger& operator+=(const CostLedger& o) {
        queries += o.queries;
        depth_proxy += o.depth_proxy;
        for (const auto& [k, v] : o.lemma_counts) lemma_counts[k] += v;
        return *this;
    }

    friend CostLedger operator+(CostLedger a, const CostLedger& b) {
        a += b;
        return a;
    }

    // Multiply the repetition-sensitive fields by a factor (>= 1 for every
    // primitive we model; enforced so ledgers never shrink through composition).
    void scale(double factor) {
        if (factor < 1.0) throw validation_error("ledger scale factor below 1");
        queries *= factor;
        depth_proxy *= factor;
    }

    void count(const std::string& lemma, long times = 1) { lemma_counts[lemma] += times; }
};

// One row of a pipeline trace: the ledger snapshot (plus tracked error bound)
// after a named stage.  Pipelines append these so the CLI can emit a stage CSV.
struct StageRow {
    std::string stage;
    double queries = 0.0;
    double depth_proxy = 0.0;
    double eps = 0.0;
};

using StageTrace = std::vector<StageRow>;

} // namespace blockenc
