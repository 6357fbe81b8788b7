#pragma once

#include <cmath>
#include <random>

#include "spikehyp/contour.hpp"
#include "spikehyp/jack.hpp"

namespace spikehyp::testing {

inline double rel_gap(complex value, complex reference)
{
    return std::abs(value - reference) / std::abs(reference);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Draw {
    ParameterVectors params;
    SpikeArgument spike;
    Spectrum y;
};

inline constexpr KernelCase kClassicalCases[] = {KernelCase::f00, KernelCase::f01, KernelCase::f10, KernelCase::f11,
                                             KernelCase::f21};

inline Spectrum random_spectrum(std::mt19937_64& rng, int r)
{
    Spectrum y;
    for (int j = 0; j < r; ++j)
        y.y.push_back(uniform(rng, 0.1, 2.0));
    return y;
}

// Random admissible parameters for one kernel case; x * max(y) stays below 0.8 when p = q + 1.
inline Draw draw_case(std::mt19937_64& rng, KernelCase tag, double alpha, Spectrum y)
{
    Draw d;
    d.y = std::move(y);
    const double ymax = d.y.max();
    double x = 0.0;
    switch (tag) {
    case KernelCase::f00:
        x = uniform(rng, 0.1, 2.5);
        break;
    case KernelCase::f01:
        d.params.b = {uniform(rng, 0.6, 3.5)};
        x = uniform(rng, 0.1, 3.0);
        break;
    case KernelCase::f10:
        d.params.a = {uniform(rng, 0.3, 3.0)};
        x = uniform(rng, 0.05, 0.8) / ymax;
        break;
    case KernelCase::f11:
        d.params.a = {uniform(rng, 0.2, 3.0)};
        d.params.b = {uniform(rng, 0.6, 4.0)};
        x = uniform(rng, 0.1, 3.0);
        break;
    default:
        d.params.a = {uniform(rng, 0.2, 3.0), uniform(rng, 0.2, 3.0)};
        d.params.b = {uniform(rng, 0.6, 4.0)};
        x = uniform(rng, 0.05, 0.8) / ymax;
        break;
    }
    d.spike = {x, static_cast<int>(d.y.r()), alpha};
    return d;
}

inline Draw draw_case(std::mt19937_64& rng, KernelCase tag, double alpha, int r)
{
    return draw_case(rng, tag, alpha, random_spectrum(rng, r));
}

inline SeriesSettings tight_series() { return {1e-14, 5000}; }

} // namespace spikehyp::testing
