#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trackalg/report.hpp"
#include "trackalg/rng.hpp"

namespace trackalg {

// One quantifier block of a law: a tuple of objects fixed, a product of
// element spaces to range over. tag lets a single law bundle clauses with
// different shapes.
struct SubSpace {
    int tag = 0;
    std::vector<int> objs;
    std::vector<uint64_t> dims;

    uint64_t total() const {
        uint64_t t = 1;
        for (uint64_t d : dims) {
            if (d == 0) return 0;
            if (t > UINT64_MAX / d) return UINT64_MAX;
            t *= d;
        }
        return t;
    }
};

using CaseFn =
    std::function<std::optional<json>(const SubSpace&, const std::vector<uint64_t>&)>;

// Runs one law over the given case spaces: exhaustively when they fit the
// budget, otherwise on budget-many seeded samples. Stops at the first
// failing case, which becomes the witness.
LawResult run_law(const std::string& name, const std::vector<SubSpace>& spaces,
                  const Budget& budget, Rng& rng, const CaseFn& fn, bool advisory = false);

} // namespace trackalg
