#include "trackalg/report.hpp"

#include <sstream>

namespace trackalg {

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("TRACKALG_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_cases = v;
    }
    return b;
}

json LawResult::to_json() const {
    json j;
    j["name"] = name;
    j["pass"] = pass;
    j["cases"] = cases;
    j["exhaustive"] = exhaustive;
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

bool Report::ok() const {
    for (const auto& l : laws)
        if (!l.pass && l.name.rfind("probe: ", 0) != 0) return false;
    return true;
}

const LawResult* Report::find(const std::string& name) const {
    for (const auto& l : laws)
        if (l.name == name) return &l;
    return nullptr;
}

json Report::to_json() const {
    json j;
    j["subject"] = subject;
    j["seed"] = seed;
    j["budget"] = budget;
    j["ok"] = ok();
    j["laws"] = json::array();
    for (const auto& l : laws) j["laws"].push_back(l.to_json());
    return j;
}

std::string Report::summary() const {
    std::ostringstream os;
    size_t passed = 0;
    for (const auto& l : laws)
        if (l.pass) ++passed;
    os << subject << ": " << passed << "/" << laws.size() << " laws passed"
       << " (seed " << seed << ", budget " << budget << ")\n";
    for (const auto& l : laws) {
        os << "  [" << (l.pass ? "pass" : "FAIL") << "] " << l.name << " (" << l.cases
           << (l.exhaustive ? " cases, exhaustive)" : " cases, sampled)");
        if (!l.pass) os << " witness: " << l.witness.dump();
        os << "\n";
    }
    return os.str();
}

} // namespace trackalg
