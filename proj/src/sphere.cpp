#include "spikehyp/sphere.hpp"

#include <cmath>
#include <numbers>

namespace spikehyp {

namespace {

constexpr std::size_t kChunk = 1u << 16;

std::uint64_t mix(std::uint64_t z)
{
    // splitmix64 finaliser
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// uniform on (0, 1]
double unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53; }

} // namespace

std::vector<double> sphere_point(std::uint64_t seed, std::uint64_t index, std::size_t r,
                                 const std::vector<std::size_t>& coordinate_order)
{
    const std::uint64_t key = mix(mix(seed) ^ index);
    std::vector<double> q(r);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        const std::uint64_t stream = coordinate_order.empty() ? j : coordinate_order[j];
        const double u1 = unit(mix(key + 2 * stream + 1));
        const double u2 = unit(mix(key + 2 * stream + 2));
        q[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        norm2 += q[j] * q[j];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : q)
        v *= inv;
    return q;
}

SphereEstimate sphere_mean(const std::function<complex(double)>& g, const Spectrum& y, const SphereSettings& settings)
{
    y.check();
    if (settings.samples < 2)
        throw DomainError("sphere average needs at least two samples");
    if (!settings.coordinate_order.empty() && settings.coordinate_order.size() != y.r())
        throw DomainError("coordinate order must have one entry per eigenvalue");
    const std::size_t r = y.r();
    const std::size_t n = settings.samples;
    // Shifted sums about the first sample keep the variance stable.
    const auto q0 = sphere_point(settings.seed, 0, r, settings.coordinate_order);
    double form0 = 0.0;
    for (std::size_t j = 0; j < r; ++j)
        form0 += y.y[j] * q0[j] * q0[j];
    const complex shift = g(form0);
    complex sum;
    double sum_sq = 0.0;
    for (std::size_t start = 0; start < n; start += kChunk) {
        complex chunk_sum;
        double chunk_sq = 0.0;
        const std::size_t stop = std::min(n, start + kChunk);
        for (std::size_t i = start; i < stop; ++i) {
            const auto q = sphere_point(settings.seed, i, r, settings.coordinate_order);
            double form = 0.0;
            for (std::size_t j = 0; j < r; ++j)
                form += y.y[j] * q[j] * q[j];
            const complex d = g(form) - shift;
            chunk_sum += d;
            chunk_sq += std::norm(d);
        }
        sum += chunk_sum;
        sum_sq += chunk_sq;
    }
    const double dn = static_cast<double>(n);
    const complex mean_d = sum / dn;
    const double var = std::max(0.0, (sum_sq - dn * std::norm(mean_d)) / (dn - 1.0));
    return {shift + mean_d, std::sqrt(var / dn), n};
}

EvalResult sphere_average(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                          const SphereSettings& settings)
{
    params.check_denominators();
    y.check();
    if (spike.alpha != 2.0)
        throw DomainError("sphere average is the real case; alpha must be 2");
    if (static_cast<std::size_t>(spike.r) != y.r())
        throw DomainError("dimension r must equal the number of eigenvalues in y");
    if (!(spike.x >= 0.0))
        throw DomainError("spike eigenvalue x must be nonnegative");
    if (params.p() > params.q() + 1)
        throw DomainError("p > q + 1: the kernel series diverges");
    if (params.p() == params.q() + 1 && !(spike.x * y.max() < 1.0))
        throw DomainError("p = q + 1 requires x * max(y) < 1");
    const ScalarKernel kernel = ScalarKernel::from(params);
    const double x = spike.x;
    const auto est = sphere_mean([&](double form) { return scalar_pfq(kernel, x * form); }, y, settings);
    return {est.mean, est.standard_error, Method::sphere_mc, est.samples};
}

IdentityReport onatski_identity_check(double x, double w, const Spectrum& y, const SphereSettings& settings,
                                      const QuadratureSettings& quadrature)
{
    if (!(x > 0.0) || !(w > 0.0))
        throw DomainError("x and w must be positive");
    y.check();
    const double kappa = x / w;
    const auto r = static_cast<int>(y.r());
    IdentityReport report;
    const auto est = sphere_mean([&](double form) { return complex(std::exp(kappa * form)); }, y, settings);
    report.left = est.mean.real();
    report.left_stderr = est.standard_error;

    const ParameterVectors none;
    const SpikeArgument spike{kappa, r, 2.0};
    QuadratureSettings forced = quadrature;
    forced.geometry = GeometryChoice::keyhole;
    ContourOptions options;
    options.quadrature = forced;
    const ContourSpec contour = build_contour(y, spike, none, forced, Route::half_integer);
    const auto q = contour_integral(ScalarKernel::from(none), kappa, y, 2.0, contour, options);
    const double m = r / 2.0 - 1.0;
    const double prefactor = std::exp(std::lgamma(r / 2.0) - m * std::log(kappa));
    report.right = prefactor * q.value;
    report.right_err = prefactor * q.err_estimate;
    report.nodes = q.nodes;
    report.abs_gap = std::abs(report.right - report.left);
    report.rel_gap = report.abs_gap / std::abs(report.right);
    return report;
}

} // namespace spikehyp
