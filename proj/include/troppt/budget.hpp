#pragma once

#include <cstddef>

namespace troppt {

struct Budget {
    size_t max_points = 16;      // guard on |Delta| for chamber enumeration
    size_t max_cones = 200000;   // guard on enumerated cones/types
    bool allow_partial = false;  // return what was found instead of throwing
    unsigned threads = 1;

    // defaults, overridden by TROPPT_BUDGET (max_cones) when set
    static Budget from_env();
};

}  // namespace troppt
