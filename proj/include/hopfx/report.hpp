#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfx/tensor.hpp"

namespace hopfx {

// One verified identity.  witness is the first failing basis multi-index,
// present exactly when the check failed.
struct CheckResult {
    std::string name;
    bool holds = false;
    std::optional<std::vector<Index>> witness;
    double elapsed_ms = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }

    void add(std::string name, bool holds,
             std::optional<std::vector<Index>> witness = std::nullopt, double elapsed_ms = 0.0) {
        checks.push_back({std::move(name), holds, std::move(witness), elapsed_ms});
    }

    void merge(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

} // namespace hopfx
