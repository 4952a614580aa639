#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvop/mvop_engine.hpp"
#include "mvop/types.hpp"

namespace mvop {

struct EquivalenceOptions {
    double equiv_tol = 1e-8;
    int random_starts = 8;
    int max_iterations = 100;
    double stagnation = 1e-14;
    std::uint64_t seed = 20240607;
};

struct EquivalenceResult {
    double residual = 0.0;           // sqrt(sum |W2 - M W1 M^*|^2 / sum |W2|^2)
    CMatrix best;                    // minimizer found
    std::optional<CMatrix> candidate;  // set when residual < equiv_tol and M invertible
    bool equivalent() const { return candidate.has_value(); }
};

// Search for a constant M with W2(j) = M W1(j) M^* for every j.
EquivalenceResult equivalence_probe(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2,
                                    const EquivalenceOptions& opts = {});

EquivalenceResult equivalence_probe(const MVOPFamily& famA, const MVOPFamily& famB,
                                    const EquivalenceOptions& opts = {});

double equivalence_objective(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2,
                             const CMatrix& M);

// Multiply M by the unit scalar that best aligns it with ref.
CMatrix align_phase(const CMatrix& M, const CMatrix& ref);

}  // namespace mvop
