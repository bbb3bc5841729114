#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

namespace trackalg {

using json = nlohmann::ordered_json;

struct Budget {
    uint64_t max_cases = 200000; // per law
    uint64_t seed = 1;

    static Budget from_env();
};

struct LawResult {
    std::string name;
    bool pass = true;
    uint64_t cases = 0;
    bool exhaustive = true;
    json witness; // null when the law passed

    json to_json() const;
};

// Outcome of one verification suite (axiom check, linearity equations, ...).
struct Report {
    std::string subject;
    uint64_t seed = 1;
    uint64_t budget = 0;
    std::vector<LawResult> laws;

    bool ok() const;
    const LawResult* find(const std::string& name) const;
    json to_json() const;
    std::string summary() const;
};

} // namespace trackalg
