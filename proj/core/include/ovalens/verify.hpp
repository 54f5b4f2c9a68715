#pragma once

#include <string>
#include <vector>

namespace ovalens::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;   // measured values vs. thresholds
    double seconds = 0.0;
};

/// Runs the full numerical certification suite: Snell-ratio constancy,
/// conserved-quantity drift of both slope fields, perfect-focus ray fans,
/// limiting conics, rotational-symmetry certificates, functional dependence,
/// oracle agreement, and output determinism. Thresholds are fixed in code.
std::vector<CriterionResult> run_all(unsigned seed = 0);

/// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ovalens::verify
