#pragma once

#include <functional>
#include <string>
#include <vector>

namespace troppt {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

// runtime limits per criterion, in seconds
struct AcceptanceLimits {
    double table = 60;
    double single_point_small = 1;
    double single_point_large = 600;
    double square_example = 1;
    double tau0 = 30;
    double boundary_weight = 1;
    double properties = 300;
};

// log receives discrepancy-report and diagnostic lines
std::vector<CriterionResult> run_acceptance(const std::vector<int>& which = {},
                                            const std::function<void(const std::string&)>& log = {},
                                            const AcceptanceLimits& limits = {});
std::string format_result(const CriterionResult& r);

}  // namespace troppt
