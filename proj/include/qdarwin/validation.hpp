#pragma once

#include "qdarwin/branch_model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdarwin {

struct ValidationOptions {
    std::size_t n_max = 10;
    std::size_t cases = 100;
    std::uint64_t seed = 0;
};

struct ValidationCheck {
    std::string name;
    std::size_t cases = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    std::string first_failure;
};

struct ValidationResult {
    std::vector<ValidationCheck> checks;
    bool passed() const;
};

using QmiFunction = std::function<double(const OverlapVector&, const FractionSelection&)>;

/// Cross-checks every closed form against the statevector oracle on random
/// two-branch states with N ≤ n_max. `qmi` replaces qmi_exact so a harness can
/// confirm a wrong formula is caught.
ValidationResult run_validation(const ValidationOptions& options, const QmiFunction& qmi = {});

void print_validation(std::ostream& os, const ValidationResult& result);

}  // namespace qdarwin
