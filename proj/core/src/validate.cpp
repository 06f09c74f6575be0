#include "submatroid/validate.hpp"

#include <bit>
#include <random>
#include <sstream>

namespace submatroid {

namespace {

std::string set_str(const ElementSet& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (ElementId e : s) {
        if (!first) os << ",";
        os << e;
        first = false;
    }
    os << "}";
    return os.str();
}

struct Checker {
    const Valuation& z;
    const Matroid& m;
    const Tolerance& tol;
    ValidationReport& report;

    void add(Violation::Axiom axiom, ElementSet s, ElementSet t, ElementId x,
             std::string detail) {
        report.violations.push_back(
            {axiom, std::move(s), std::move(t), x, std::move(detail)});
    }

    void check_normalized() {
        const double z0 = z.value(ElementSet{});
        if (!tol.is_zero(z0))
            add(Violation::Axiom::NormalizedAtEmpty, {}, {}, -1,
                "Z(empty) = " + std::to_string(z0));
    }

    void check_empty_independent() {
        if (!m.independent(ElementSet{}))
            add(Violation::Axiom::EmptySetIndependent, {}, {}, -1,
                "empty set is not independent");
    }

    void check_hereditary(const ElementSet& t) {
        if (!m.independent(t)) return;
        for (ElementId e : t) {
            const ElementSet sub = t.without(e);
            if (!m.independent(sub)) {
                add(Violation::Axiom::Hereditary, sub, t, e,
                    "independent set " + set_str(t) + " has dependent subset " + set_str(sub));
                return;
            }
        }
    }

    void check_augmentation(const ElementSet& s, const ElementSet& t) {
        if (t.size() <= s.size()) return;
        if (!m.independent(s) || !m.independent(t)) return;
        for (ElementId e : set_difference(t, s))
            if (m.independent(s.with(e))) return;
        add(Violation::Axiom::Augmentation, s, t, -1,
            "no element of " + set_str(t) + " extends " + set_str(s));
    }

    void check_monotone(const ElementSet& s, ElementId x) {
        if (s.contains(x)) return;
        const double gain = z.value(s.with(x)) - z.value(s);
        if (gain < -tol.margin(z.value(s), z.value(s.with(x))))
            add(Violation::Axiom::Monotone, s, s.with(x), x,
                "negative marginal gain " + std::to_string(gain));
    }

    // Local diminishing-returns check; equivalent to the subset form.
    void check_submodular(const ElementSet& s, ElementId x, ElementId y) {
        if (x == y || s.contains(x) || s.contains(y)) return;
        const double at_s = z.value(s.with(x)) - z.value(s);
        const ElementSet sy = s.with(y);
        const double at_sy = z.value(sy.with(x)) - z.value(sy);
        if (at_sy > at_s + tol.margin(at_s, at_sy))
            add(Violation::Axiom::Submodular, s, sy, x,
                "gain of " + std::to_string(x) + " grows from " + std::to_string(at_s) + " to " +
                    std::to_string(at_sy) + " after adding " + std::to_string(y));
    }
};

} // namespace

std::string ValidationReport::summary() const {
    if (violations.empty())
        return exhaustive ? "pass (exhaustive)" : "pass (sampled)";
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (const auto& v : violations) {
        os << "\n  ";
        switch (v.axiom) {
        case Violation::Axiom::EmptySetIndependent: os << "empty-set"; break;
        case Violation::Axiom::Hereditary: os << "hereditary"; break;
        case Violation::Axiom::Augmentation: os << "augmentation"; break;
        case Violation::Axiom::NormalizedAtEmpty: os << "normalization"; break;
        case Violation::Axiom::Monotone: os << "monotonicity"; break;
        case Violation::Axiom::Submodular: os << "submodularity"; break;
        }
        os << " witness S=" << set_str(v.s) << " T=" << set_str(v.t);
        if (v.x >= 0) os << " x=" << v.x;
        os << ": " << v.detail;
    }
    return os.str();
}

ValidationReport validate_oracles(const Valuation& z, const Matroid& m,
                                  const ValidationLimits& limits, const Tolerance& tol) {
    if (!(z.ground() == m.ground()))
        throw InputError("validate_oracles: oracle ground sets differ in size");
    const int n = z.ground().size();
    ValidationReport report;
    Checker chk{z, m, tol, report};

    chk.check_normalized();
    chk.check_empty_independent();

    if (n <= limits.exhaustive_limit) {
        const std::uint64_t full = std::uint64_t{1} << n;
        std::vector<bool> indep(static_cast<size_t>(full));
        std::vector<double> values(static_cast<size_t>(full));
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            const ElementSet s = ElementSet::from_mask(mask);
            indep[static_cast<size_t>(mask)] = m.independent(s);
            values[static_cast<size_t>(mask)] = z.value(s);
        }

        for (std::uint64_t mask = 0; mask < full; ++mask) {
            if (!indep[static_cast<size_t>(mask)]) continue;
            std::uint64_t rest = mask;
            while (rest != 0) {
                const std::uint64_t bit = rest & (0 - rest);
                if (!indep[static_cast<size_t>(mask & ~bit)]) {
                    chk.add(Violation::Axiom::Hereditary, ElementSet::from_mask(mask & ~bit),
                            ElementSet::from_mask(mask), std::countr_zero(bit),
                            "independent set has a dependent subset");
                    break;
                }
                rest &= rest - 1;
            }
        }
        for (std::uint64_t ms = 0; ms < full; ++ms) {
            if (!indep[static_cast<size_t>(ms)]) continue;
            const int size_s = std::popcount(ms);
            for (std::uint64_t mt = 0; mt < full; ++mt) {
                if (!indep[static_cast<size_t>(mt)] || std::popcount(mt) <= size_s) continue;
                bool extended = false;
                std::uint64_t rest = mt & ~ms;
                while (rest != 0) {
                    const std::uint64_t bit = rest & (0 - rest);
                    if (indep[static_cast<size_t>(ms | bit)]) {
                        extended = true;
                        break;
                    }
                    rest &= rest - 1;
                }
                if (!extended)
                    chk.add(Violation::Axiom::Augmentation, ElementSet::from_mask(ms),
                            ElementSet::from_mask(mt), -1,
                            "no element of the larger set extends the smaller");
            }
        }
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            for (ElementId x = 0; x < n; ++x) {
                const std::uint64_t xbit = std::uint64_t{1} << x;
                if ((mask & xbit) != 0) continue;
                const double gain_at_s =
                    values[static_cast<size_t>(mask | xbit)] - values[static_cast<size_t>(mask)];
                if (gain_at_s < -tol.margin(values[static_cast<size_t>(mask)],
                                            values[static_cast<size_t>(mask | xbit)]))
                    chk.add(Violation::Axiom::Monotone, ElementSet::from_mask(mask),
                            ElementSet::from_mask(mask | xbit), x,
                            "negative marginal gain " + std::to_string(gain_at_s));
                for (ElementId y = 0; y < n; ++y) {
                    const std::uint64_t ybit = std::uint64_t{1} << y;
                    if (y == x || (mask & ybit) != 0) continue;
                    const double gain_at_sy = values[static_cast<size_t>(mask | ybit | xbit)] -
                                              values[static_cast<size_t>(mask | ybit)];
                    if (gain_at_sy > gain_at_s + tol.margin(gain_at_s, gain_at_sy))
                        chk.add(Violation::Axiom::Submodular, ElementSet::from_mask(mask),
                                ElementSet::from_mask(mask | ybit), x,
                                "marginal gain grows after adding " + std::to_string(y));
                }
            }
        }
    } else {
        report.exhaustive = false;
        std::mt19937_64 rng(limits.seed);
        auto random_set = [&] {
            ElementSet s;
            for (ElementId e = 0; e < n; ++e)
                if ((rng() & 1) != 0) s.insert(e);
            return s;
        };
        for (int it = 0; it < limits.samples; ++it) {
            const ElementSet s = random_set();
            const ElementId x = static_cast<ElementId>(rng() % static_cast<std::uint64_t>(n));
            const ElementId y = static_cast<ElementId>(rng() % static_cast<std::uint64_t>(n));
            chk.check_monotone(s, x);
            chk.check_submodular(s, x, y);
            chk.check_hereditary(s);
            chk.check_augmentation(s, random_set());
        }
    }
    return report;
}

} // namespace submatroid
