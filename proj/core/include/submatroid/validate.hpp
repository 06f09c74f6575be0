#ifndef SUBMATROID_VALIDATE_HPP_
#define SUBMATROID_VALIDATE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "submatroid/matroid.hpp"
#include "submatroid/numeric.hpp"
#include "submatroid/valuation.hpp"

namespace submatroid {

/// One violated axiom together with a concrete witness.
struct Violation {
    enum class Axiom {
        EmptySetIndependent,
        Hereditary,
        Augmentation,
        NormalizedAtEmpty, // Z(empty) != 0
        Monotone,
        Submodular,
    };
    Axiom axiom;
    ElementSet s;
    ElementSet t;
    ElementId x = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool exhaustive = true; // false when the ground set forced sampling
    bool passed() const { return violations.empty(); }
    std::string summary() const;
};

struct ValidationLimits {
    int exhaustive_limit = 12; // full check up to this many elements
    int samples = 4000;        // sampled triples beyond the limit
    std::uint64_t seed = 0;
};

/// Checks the matroid axioms and the monotone-submodular axioms, exhaustively
/// for small ground sets and by seeded sampling otherwise. Violations become
/// report entries, never exceptions.
ValidationReport validate_oracles(const Valuation& z, const Matroid& m,
                                  const ValidationLimits& limits = {},
                                  const Tolerance& tol = {});

} // namespace submatroid

#endif
