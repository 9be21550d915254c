#pragma once

#include <string>
#include <vector>

namespace fareylab {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // witness on failure, summary stats on success
};

// Runs the acceptance criteria (all of them, or just `only` when 1..11).
// Randomized criteria derive their generators from `seed`.
std::vector<CriterionResult> run_acceptance(unsigned seed, int only = 0);

}  // namespace fareylab
