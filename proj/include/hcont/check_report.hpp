#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hcont {

// Verdict of a predicate together with human readable failure witnesses.
// A report is valid iff it carries no witnesses.
struct CheckReport {
    std::string qualifier;
    std::vector<std::string> witnesses;

    [[nodiscard]] bool valid() const noexcept { return witnesses.empty(); }
    explicit operator bool() const noexcept { return valid(); }

    void fail(std::string witness) { witnesses.push_back(std::move(witness)); }
};

} // namespace hcont
