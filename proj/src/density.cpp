#include "spikehyp/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spikehyp {

namespace {

double log_gamma_real(double a)
{
    if (!(a > 0.0))
        throw PoleError("gamma argument must be positive here");
    return std::lgamma(a);
}

Route route_for_dimension(int p) { return p % 2 == 0 ? Route::integer : Route::half_integer; }

// (1 / 2 pi i) * integral of kernel(x s) Delta_y(s) ds on the contour of the
// route picked by the parity of r, with Taylor subtraction on closed circles.
QuadratureResult spiked_integral(const ParameterVectors& params, double x, const Spectrum& y,
                                 const ContourOptions& options)
{
    const SpikeArgument spike{x, static_cast<int>(y.r()), 2.0};
    const Route route = route_for_dimension(spike.r);
    const double m = spike.r / 2.0 - 1.0;
    const ParameterVectors shifted = shift_parameters(params, m);
    const ContourSpec contour = build_contour(y, spike, params, options.quadrature, route);
    const bool whole = m >= 0.0 && m == std::floor(m) && contour.geometry == Geometry::closed_circle;
    return contour_integral(ScalarKernel::from(shifted), x, y, 2.0, contour, options,
                            whole ? static_cast<unsigned>(m) : 0U);
}

void check_unit_interval(double v, const char* what)
{
    if (!(v > 0.0 && v < 1.0))
        throw DomainError(std::string(what) + " must lie in (0, 1)");
}

} // namespace

void TwoSampleDesign::check() const
{
    if (p < 1)
        throw DomainError("dimension p must be at least 1");
    if (n1 < p || n2 < p)
        throw DomainError("sample sizes must satisfy n1, n2 >= p");
}

SpikeAlternative SpikeAlternative::from_h(double h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw DomainError("spike size h must be positive");
    return SpikeAlternative{h};
}

void EigenvalueConfig::check() const
{
    if (f.empty())
        throw DomainError("eigenvalue configuration is empty");
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!(f[j] > 0.0) || !std::isfinite(f[j]))
            throw DomainError("eigenvalues f must be positive and finite");
        if (j > 0 && !(f[j] < f[j - 1]))
            throw DomainError("eigenvalues f must be strictly decreasing");
    }
}

std::vector<double> EigenvalueConfig::lambda() const
{
    std::vector<double> out;
    out.reserve(f.size());
    for (double v : f)
        out.push_back(v / (1.0 + v));
    return out;
}

double multivariate_gamma_log(int p, double a)
{
    if (p < 1)
        throw DomainError("multivariate gamma needs p >= 1");
    double value = p * (p - 1) / 4.0 * std::log(std::numbers::pi);
    for (int i = 1; i <= p; ++i)
        value += log_gamma_real(a - (i - 1) / 2.0);
    return value;
}

double constant_c(const TwoSampleDesign& design)
{
    design.check();
    const double p = design.p;
    return p * p / 2.0 * std::log(std::numbers::pi) + multivariate_gamma_log(design.p, design.n() / 2.0) -
           multivariate_gamma_log(design.p, p / 2.0) - multivariate_gamma_log(design.p, design.n1 / 2.0) -
           multivariate_gamma_log(design.p, design.n2 / 2.0);
}

double vandermonde(const std::vector<double>& f)
{
    double v = 1.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t k = j + 1; k < f.size(); ++k)
            v *= f[j] - f[k];
    return v;
}

EvalResult joint_density(const EigenvalueConfig& f, const std::optional<SpikeAlternative>& alternative,
                         const TwoSampleDesign& design, const ContourOptions& options)
{
    design.check();
    f.check();
    if (f.f.size() != static_cast<std::size_t>(design.p))
        throw DomainError("need exactly p eigenvalues");
    const double n = design.n();
    double log_value = constant_c(design);
    for (double v : f.f)
        log_value += 0.5 * (design.n1 - design.p - 1) * std::log(v) - 0.5 * n * std::log1p(v);
    log_value += std::log(vandermonde(f.f));
    if (!alternative)
        return {std::exp(log_value), 0.0, Method::series, 0};

    const double h = SpikeAlternative::from_h(alternative->h).h;
    const double tau = alternative->tau();
    log_value -= 0.5 * design.n1 * std::log1p(h);
    const ParameterVectors params{{0.5 * n}, {}};
    const SpikeArgument spike{tau, design.p, 2.0};
    const EvalResult factor = eval_contour(params, spike, Spectrum{f.lambda()}, options,
                                           route_for_dimension(design.p));
    const double scale = std::exp(log_value);
    return {scale * factor.value, scale * factor.err_estimate, factor.method, factor.effort};
}

EvalResult lr_contour(double tau, const std::vector<double>& lambda, const TwoSampleDesign& design,
                      const ContourOptions& options)
{
    design.check();
    check_unit_interval(tau, "tau");
    if (lambda.size() != static_cast<std::size_t>(design.p))
        throw DomainError("need exactly p values of lambda");
    for (double v : lambda)
        check_unit_interval(v, "lambda_j");
    std::vector<double> sorted = lambda;
    std::sort(sorted.begin(), sorted.end());

    const double n = design.n();
    const double p = design.p;
    const double log_beta = std::lgamma(p / 2.0) + std::lgamma((n - p) / 2.0) - std::lgamma(n / 2.0);
    const double log_prefactor = std::log((n - p) / 2.0) + log_beta + 0.5 * design.n1 * std::log1p(-tau) -
                                 (p / 2.0 - 1.0) * std::log(tau);
    const ParameterVectors params{{0.5 * n}, {}};
    const auto q = spiked_integral(params, tau, Spectrum{sorted}, options);
    const double prefactor = std::exp(log_prefactor);
    return {prefactor * q.value, prefactor * q.err_estimate, method_for(route_for_dimension(design.p)), q.nodes};
}

EvalResult lr_limit(double tau, const std::vector<double>& mu, int p, int n1, const ContourOptions& options)
{
    if (p < 1 || n1 < 1)
        throw DomainError("p and n1 must be positive");
    check_unit_interval(tau, "tau");
    if (mu.size() != static_cast<std::size_t>(p))
        throw DomainError("need exactly p values of mu");
    std::vector<double> sorted = mu;
    std::sort(sorted.begin(), sorted.end());
    const double half = p / 2.0 - 1.0;
    const double log_prefactor = std::lgamma(p / 2.0) + half * std::log(2.0 / n1) + 0.5 * n1 * std::log1p(-tau) -
                                 half * std::log(tau);
    const auto q = spiked_integral(ParameterVectors{}, 0.5 * n1 * tau, Spectrum{sorted}, options);
    const double prefactor = std::exp(log_prefactor);
    return {prefactor * q.value, prefactor * q.err_estimate, method_for(route_for_dimension(p)), q.nodes};
}

} // namespace spikehyp
