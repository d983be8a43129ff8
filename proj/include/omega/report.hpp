#pragma once

#include <string>
#include <utility>
#include <vector>

namespace omega {

struct Witness {
    std::string label;
    std::string value;
};

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus s);

/// Outcome of a machine-checked claim, in a form shared by every check.
struct CheckReport {
    std::string claim;
    CheckStatus status = CheckStatus::fail;
    /// Set when a failing status is the reproduced finding rather than a regression.
    bool expected_violation = false;
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;

    bool passed() const { return status == CheckStatus::pass; }
    /// A failure the caller should surface as an error.
    bool unexpected_failure() const { return status == CheckStatus::fail && !expected_violation; }
    void witness(std::string label, std::string value) { witnesses.push_back({std::move(label), std::move(value)}); }
};

} // namespace omega
