#include <iostream>

#include "troppt/acceptance.hpp"

int main() {
    auto results = troppt::run_acceptance({}, [](const std::string& s) { std::cout << "  " << s << "\n" << std::flush; });
    int failed = 0;
    for (const auto& r : results) {
        std::cout << troppt::format_result(r) << "\n";
        failed += !r.pass;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
