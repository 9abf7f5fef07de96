#ifndef SYZLAB_SUITE_HPP
#define SYZLAB_SUITE_HPP

#include <string>
#include <vector>

namespace syzlab {

struct CriterionResult {
    std::string id;
    std::string desc;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

// Runs the curated verification matrix (all criteria when `which` is empty,
// otherwise the listed numbers). Each criterion checks its values exactly and
// its own wall-clock budget.
std::vector<CriterionResult> run_acceptance_suite(const std::vector<int>& which);

}  // namespace syzlab

#endif
