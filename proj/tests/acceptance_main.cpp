#include <cstdlib>
#include <iostream>

#include "fareylab/acceptance.hpp"

int main() {
    unsigned seed = 0;
    if (const char* env = std::getenv("FAREY_LAB_SEED")) seed = std::strtoul(env, nullptr, 10);

    bool all_passed = true;
    for (const auto& r : fareylab::run_acceptance(seed)) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.index << ". " << r.name << ": "
                  << r.detail << "\n";
        all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 1;
}
