#pragma once

#include <cstddef>

#include "spikehyp/core.hpp"

namespace spikehyp {

enum class Method { contour_i, contour_ii, contour_iii, series, sphere_mc };

const char* method_name(Method method) noexcept;
Method method_for(Route route) noexcept;

struct EvalResult {
    complex value;
    double err_estimate = 0.0;
    Method method = Method::series;
    std::size_t effort = 0; // nodes, series terms or samples
};

} // namespace spikehyp
