#include "spikehyp/contour.hpp"

#include <algorithm>
#include <cmath>

namespace spikehyp {

namespace {

bool integral_reciprocal(double alpha)
{
    const double inv = 1.0 / alpha;
    return inv == std::round(inv);
}

Spectrum sorted(const Spectrum& y)
{
    Spectrum out = y;
    std::sort(out.y.begin(), out.y.end());
    return out;
}

void check_inputs(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y)
{
    params.check_denominators();
    y.check();
    spike.check();
    if (static_cast<std::size_t>(spike.r) != y.r())
        throw DomainError("dimension r must equal the number of eigenvalues in y");
    if (params.p() > params.q() + 1)
        throw DomainError("p > q + 1: the rank-one series diverges");
    if (params.p() == params.q() + 1 && !(spike.x * y.max() < 1.0))
        throw DomainError("p = q + 1 requires x * max(y) < 1");
}

EvalResult evaluate(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y_in,
                    const ContourOptions& options, Route route)
{
    check_inputs(params, spike, y_in);
    const Spectrum y = sorted(y_in);
    const SpikeDecomposition d = decompose(spike, route);
    const double m = d.m;
    validate_proposition_conditions(params, m).require();

    const ParameterVectors shifted = shift_parameters(params, m);
    const complex rho_m = rho(shifted, m);
    if (rho_m == complex(0.0))
        throw ValidationError({{'a', 0, "makes rho'_m vanish"}});

    ScalarKernel kernel;
    complex numerator;
    if (route == Route::fractional) {
        ParameterVectors augmented = shifted;
        augmented.a.push_back(1.0);
        augmented.b.push_back(*d.epsilon);
        kernel = ScalarKernel::from(std::move(augmented));
        numerator = rising_factorial(*d.epsilon, static_cast<unsigned>(m));
    } else {
        kernel = options.kernel ? ScalarKernel::with_tag(shifted, *options.kernel) : ScalarKernel::from(shifted);
        numerator = std::exp(std::lgamma(m + 1.0));
    }
    const complex prefactor = numerator / (std::pow(spike.x, m) * rho_m);

    ContourSpec contour = build_contour(y, spike, params, options.quadrature, route);
    const bool whole = m == std::floor(m) && contour.geometry == Geometry::closed_circle;
    const unsigned subtract = whole ? static_cast<unsigned>(m) : 0U;
    const auto q = contour_integral(kernel, spike.x, y, spike.alpha, contour, options, subtract, d.epsilon);
    return {prefactor * q.value, std::abs(prefactor) * q.err_estimate, method_for(route), q.nodes};
}

} // namespace

complex weight_delta_y(complex s, const Spectrum& y, double alpha)
{
    y.check();
    const bool meromorphic = integral_reciprocal(alpha);
    complex log_sum = 0.0;
    for (double v : y.y) {
        const complex d = s - v;
        if (d == complex(0.0))
            throw PoleError("weight evaluated at an eigenvalue of Y");
        if (!meromorphic && d.imag() == 0.0 && d.real() < 0.0)
            throw DomainError("weight evaluated on the branch cut (-inf, y_j]");
        log_sum += std::log(d);
    }
    return std::exp(-log_sum / alpha);
}

double right_vertex(const Spectrum& y, const SpikeArgument& spike, const ParameterVectors& params)
{
    const double ymax = y.max();
    if (params.p() == params.q() + 1) {
        if (!(spike.x * ymax < 1.0))
            throw DomainError("p = q + 1 requires x * max(y) < 1; no admissible right vertex");
        return 0.5 * (ymax + std::min(1.0 / spike.x, 10.0 * ymax));
    }
    return 1.5 * ymax + 1.0;
}

ContourSpec build_contour(const Spectrum& y, const SpikeArgument& spike, const ParameterVectors& params,
                          const QuadratureSettings& settings, std::optional<Route> route)
{
    y.check();
    spike.check();
    const Route chosen = route.value_or(default_route(spike));
    const double ymax = y.max();
    const double vertex = right_vertex(y, spike, params);

    ContourSpec c;
    c.center = 0.5 * ymax;
    c.radius = (vertex - c.center) * settings.radius_scale;
    c.right_vertex = c.center + c.radius;
    if (!(c.radius > c.center))
        throw DomainError("scaled contour no longer encloses 0 and every y_j");
    if (params.p() == params.q() + 1 && !(spike.x * c.right_vertex < 1.0))
        throw DomainError("scaled contour reaches the kernel branch point 1/x");

    const bool cut = chosen == Route::half_integer && spike.r % 2 == 1;
    switch (settings.geometry) {
    case GeometryChoice::automatic:
        c.geometry = cut ? Geometry::keyhole : Geometry::closed_circle;
        break;
    case GeometryChoice::closed_circle:
        if (cut)
            throw DomainError("closed circle cannot enclose the branch cut of an odd-r half-integer route");
        c.geometry = Geometry::closed_circle;
        break;
    case GeometryChoice::keyhole:
        c.geometry = Geometry::keyhole;
        break;
    }
    if (c.geometry == Geometry::keyhole) {
        const double base = std::min(std::max(0.05, 0.01 * y.spread()), 0.2 * c.radius);
        c.leg_height = base * settings.leg_height_scale;
        if (!(c.leg_height < c.radius))
            throw DomainError("leg height must stay below the contour radius");
        if (params.p() == 0 && params.q() == 1) {
            c.tail = LegTail::oscillatory;
            c.frequency = 2.0 * std::sqrt(spike.x);
        }
    }
    return c;
}

QuadratureResult contour_integral(const ScalarKernel& kernel, double x, const Spectrum& y, double alpha,
                                  const ContourSpec& contour, const ContourOptions& options, unsigned subtract,
                                  std::optional<double> epsilon, ContourSpec* used)
{
    const double inv_alpha = 1.0 / alpha;
    const double tol = options.kernel_tol;
    const std::vector<double>& ys = y.y;
    const double eps_power = epsilon ? *epsilon - 1.0 : 0.0;
    const double twice_inv = 2.0 * inv_alpha;
    // 1/alpha a whole or half-whole number: the weight is a product of square roots
    const bool radical = twice_inv == std::round(twice_inv) && twice_inv <= 8.0;
    Integrand f = [&](complex s) {
        complex w;
        if (radical) {
            complex prod = 1.0;
            for (double v : ys)
                prod *= s - v;
            w = principal_power(prod, -std::floor(inv_alpha));
            if (inv_alpha != std::floor(inv_alpha)) {
                // product of the principal roots, not the root of the product
                complex roots = 1.0;
                for (double v : ys)
                    roots *= std::sqrt(s - v);
                w /= roots;
            }
        } else {
            complex log_w = 0.0;
            for (double v : ys)
                log_w += std::log(s - v);
            w = std::exp(-inv_alpha * log_w);
        }
        if (epsilon)
            w *= std::exp(eps_power * std::log(s));
        const complex z = x * s;
        const complex k = subtract ? scalar_pfq_remainder(kernel, z, subtract, tol) : scalar_pfq(kernel, z, tol);
        return k * w;
    };
    ContourSpec work = contour;
    auto result = integrate(work, f, options.quadrature);
    if (used)
        *used = std::move(work);
    return result;
}

std::vector<Route> admissible_routes(const SpikeArgument& spike)
{
    std::vector<Route> routes;
    for (Route r : {Route::integer, Route::fractional, Route::half_integer}) {
        try {
            decompose(spike, r);
            routes.push_back(r);
        } catch (const DomainError&) {
        }
    }
    return routes;
}

EvalResult eval_contour_i(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                          const ContourOptions& options)
{
    return evaluate(params, spike, y, options, Route::integer);
}

EvalResult eval_contour_ii(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                           const ContourOptions& options)
{
    return evaluate(params, spike, y, options, Route::fractional);
}

EvalResult eval_contour_iii(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                            const ContourOptions& options)
{
    return evaluate(params, spike, y, options, Route::half_integer);
}

EvalResult eval_contour(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                        const ContourOptions& options, std::optional<Route> route)
{
    if (spike.x == 0.0) {
        params.check_denominators();
        y.check();
        const Route chosen = route.value_or(spike.r >= 1 && spike.alpha > 0 ? default_route(spike) : Route::integer);
        return {1.0, 0.0, method_for(chosen), 0};
    }
    spike.check();
    return evaluate(params, spike, y, options, route.value_or(default_route(spike)));
}

} // namespace spikehyp
