#pragma once
#include <algorithm>
#include <cmath>

#include "chf/numkernel.hpp"

// |a - b| / max(|b|, floor)
inline double rel(chf::cplx a, chf::cplx b, double floor = 1e-300) {
    return std::abs(a - b) / std::max(std::abs(b), floor);
}
