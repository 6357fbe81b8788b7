#pragma once

// Monte Carlo over the unit sphere in R^r (real case, alpha = 2): the rank-one
// sphere average of pFq(a, b; x q'Yq) and the sphere-to-contour identity.

#include <cstdint>
#include <vector>

#include "spikehyp/contour.hpp"

namespace spikehyp {

struct SphereSettings {
    std::size_t samples = 1000000;
    std::uint64_t seed = 1;
    // Stream used for coordinate j is coordinate_order[j] (identity when empty).
    std::vector<std::size_t> coordinate_order;
};

// Sample `index` of the stream: a standard Gaussian vector normalised to unit
// length. Depends only on (seed, index, stream ids), never on chunking.
std::vector<double> sphere_point(std::uint64_t seed, std::uint64_t index, std::size_t r,
                                 const std::vector<std::size_t>& coordinate_order = {});

struct SphereEstimate {
    complex mean;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

// Mean of g(q'Yq) over `settings.samples` sphere points.
SphereEstimate sphere_mean(const std::function<complex(double)>& g, const Spectrum& y, const SphereSettings& settings);

// Sphere average of pFq(a, b; x q'Yq); requires alpha = 2.
EvalResult sphere_average(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                          const SphereSettings& settings);

struct IdentityReport {
    double left = 0.0;        // sphere mean of exp((x/w) q'Yq)
    double left_stderr = 0.0;
    complex right;            // Gamma(r/2) (w/x)^{r/2-1} (1/2 pi i) * integral of e^{(x/w)s} Delta_y(s) ds
    double right_err = 0.0;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    std::size_t nodes = 0;
};

IdentityReport onatski_identity_check(double x, double w, const Spectrum& y, const SphereSettings& settings,
                                      const QuadratureSettings& quadrature = {});

} // namespace spikehyp
