#pragma once

// Single contour-integral evaluation of the rank-one matrix-argument pFq:
// integer route (r/alpha = m + 1), fractional route (r/alpha = m + eps) and
// the half-integer route for alpha = 2.

#include <optional>

#include "spikehyp/eval_result.hpp"
#include "spikehyp/jack.hpp"
#include "spikehyp/quadrature.hpp"
#include "spikehyp/scalar.hpp"

namespace spikehyp {

// exp(-(1/alpha) sum_j Log(s - y_j)) with principal logs. Throws DomainError
// when s sits on a branch cut (or on a pole when 1/alpha is an integer).
complex weight_delta_y(complex s, const Spectrum& y, double alpha);

// Right vertex of the contour: midpoint of (max y, min(1/x, 10 max y)) when
// p = q + 1, otherwise 1.5 max y + 1.
double right_vertex(const Spectrum& y, const SpikeArgument& spike, const ParameterVectors& params);

// Circle centred at max(y)/2 through the right vertex; a keyhole when the
// integrand has a cut that reaches past the circle (half-integer route with
// odd r), a closed circle otherwise. settings.geometry overrides the choice.
ContourSpec build_contour(const Spectrum& y, const SpikeArgument& spike, const ParameterVectors& params,
                          const QuadratureSettings& settings, std::optional<Route> route = std::nullopt);

struct ContourOptions {
    QuadratureSettings quadrature;
    double kernel_tol = kKernelTol;
    // Kernel tag; inferred from (p, q) when absent.
    std::optional<KernelCase> kernel;
};

EvalResult eval_contour_i(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                          const ContourOptions& options = {});
EvalResult eval_contour_ii(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                           const ContourOptions& options = {});
EvalResult eval_contour_iii(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                            const ContourOptions& options = {});

// Dispatch on r/alpha (default_route) or on an explicit route. x = 0 gives 1.
EvalResult eval_contour(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                        const ContourOptions& options = {}, std::optional<Route> route = std::nullopt);

// Routes whose preconditions hold for this spike (parameter conditions not checked).
std::vector<Route> admissible_routes(const SpikeArgument& spike);

// (1 / 2 pi i) times the integral of kernel(x s) * weight(s) over the contour
// the routes use, for callers that assemble their own prefactor.
// `subtract` removes the Taylor terms of degree < subtract on closed circles.
QuadratureResult contour_integral(const ScalarKernel& kernel, double x, const Spectrum& y, double alpha,
                                  const ContourSpec& contour, const ContourOptions& options,
                                  unsigned subtract = 0, std::optional<double> epsilon = std::nullopt,
                                  ContourSpec* used = nullptr);

} // namespace spikehyp
