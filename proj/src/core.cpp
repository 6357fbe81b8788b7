#include "spikehyp/core.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace spikehyp {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0)
        os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

std::string join_reasons(const std::vector<Violation>& violations)
{
    std::string msg = "parameter conditions violated:";
    for (const auto& v : violations)
        msg += std::string(" ") + v.vector + "[" + std::to_string(v.index) + "] " + v.reason + ";";
    return msg;
}

bool is_integer(double v) noexcept { return std::isfinite(v) && v == std::floor(v); }

// Lanczos approximation, g = 671/128, 14 terms; valid for Re z >= 0.5.
complex log_gamma_lanczos(complex z)
{
    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
        -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
        .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
        -.261908384015814087e-4, .368991826595316234e-5};
    complex ser = 0.999999999999997092;
    complex denom = z;
    for (double c : cof) {
        denom += 1.0;
        ser += c / denom;
    }
    const complex t = z + 5.24218750000000000;
    return (z + 0.5) * std::log(t) - t + std::log(2.5066282746310005 * ser) - std::log(z);
}

// sin(pi x) and cos(pi x) for real x with exact zeros at integers.
double sinpi(double x)
{
    const double r = x - 2.0 * std::round(0.5 * x); // r in [-1, 1]
    if (r == 0.0 || std::fabs(r) == 1.0)
        return 0.0;
    if (std::fabs(r) == 0.5)
        return r > 0 ? 1.0 : -1.0;
    return std::sin(kPi * r);
}

double cospi(double x)
{
    const double r = x - 2.0 * std::round(0.5 * x);
    if (std::fabs(r) == 0.5)
        return 0.0;
    return std::cos(kPi * r);
}

// Principal value of log(sin(pi z)); stable for large |Im z|.
complex log_sinpi(complex z)
{
    const double x = z.real();
    const double y = z.imag();
    if (std::fabs(y) <= 20.0) {
        const complex s(sinpi(x) * std::cosh(kPi * y), cospi(x) * std::sinh(kPi * y));
        return std::log(s);
    }
    if (y < 0.0)
        return std::conj(log_sinpi(std::conj(z)));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
    const complex e2 = std::exp(complex(0.0, 2.0 * kPi) * z);
    complex v = complex(kPi * y + std::log(0.5), kPi / 2.0 - kPi * x) + std::log(1.0 - e2);
    const double k = std::round(v.imag() / (2.0 * kPi));
    return {v.real(), v.imag() - 2.0 * kPi * k};
}

} // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : DomainError(join_reasons(violations)), violations_(std::move(violations))
{
}

bool is_nonpositive_integer(complex z) noexcept
{
    return z.imag() == 0.0 && z.real() <= 0.0 && is_integer(z.real());
}

void ParameterVectors::check_denominators() const
{
    for (std::size_t l = 0; l < b.size(); ++l)
        if (is_nonpositive_integer(b[l]))
            throw DomainError("denominator parameter b[" + std::to_string(l) + "] = " + describe(b[l]) +
                              " is a nonpositive integer");
}

void SpikeArgument::check() const
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("spike eigenvalue x must be positive and finite");
    if (r < 1)
        throw DomainError("dimension r must be at least 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("family index alpha must be positive");
}

const char* route_name(Route route) noexcept
{
    switch (route) {
    case Route::integer:
        return "contour-i";
    case Route::fractional:
        return "contour-ii";
    case Route::half_integer:
        return "contour-iii";
    }
    return "?";
}

namespace {

// r/alpha rounded when it is within a few ulps of a whole number.
std::optional<double> integral_ratio(const SpikeArgument& spike)
{
    const double ratio = spike.r / spike.alpha;
    const double nearest = std::round(ratio);
    if (nearest >= 1.0 && std::fabs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio))
        return nearest;
    return std::nullopt;
}

} // namespace

Route default_route(const SpikeArgument& spike)
{
    if (integral_ratio(spike))
        return Route::integer;
    if (spike.alpha == 2.0 && spike.r % 2 == 1)
        return Route::half_integer;
    return Route::fractional;
}

SpikeDecomposition decompose(const SpikeArgument& spike, Route route)
{
    spike.check();
    SpikeDecomposition d;
    d.route = route;
    switch (route) {
    case Route::integer: {
        const auto ratio = integral_ratio(spike);
        if (!ratio)
            throw DomainError("r/alpha is not a positive integer; integer route does not apply");
        d.m = *ratio - 1.0;
        return d;
    }
    case Route::fractional: {
        const double ratio = spike.r / spike.alpha;
        const double m = std::floor(ratio);
        const double eps = ratio - m;
        if (integral_ratio(spike) || !(eps > 0.0 && eps < 1.0))
            throw DomainError("r/alpha is an integer; fractional route does not apply");
        d.m = m;
        d.epsilon = eps;
        return d;
    }
    case Route::half_integer:
        if (spike.alpha != 2.0)
            throw DomainError("half-integer route requires alpha = 2");
        d.m = spike.r / 2.0 - 1.0;
        return d;
    }
    throw DomainError("unknown route");
}

complex log_gamma_complex(complex z)
{
    if (is_nonpositive_integer(z))
        throw PoleError("log-gamma pole at " + describe(z));
    if (z == complex(1.0) || z == complex(2.0))
        return 0.0;
    if (z.real() >= 0.5)
        return log_gamma_lanczos(z);
    // Reflection with the branch correction that keeps the principal branch.
    const double correction = std::copysign(2.0 * kPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
    return complex(std::log(kPi), correction) - log_sinpi(z) - log_gamma_lanczos(1.0 - z);
}

complex rising_factorial(complex a, unsigned k) noexcept
{
    complex result = 1.0;
    for (unsigned j = 0; j < k; ++j)
        result *= a + static_cast<double>(j);
    return result;
}

complex principal_power(complex base, complex exponent)
{
    if (exponent.imag() == 0.0) {
        const double e = exponent.real();
        if (std::fabs(e) <= 64.0 && 2.0 * e == static_cast<double>(static_cast<long>(2.0 * e))) {
            const long twice = static_cast<long>(2.0 * e);
            const bool half = twice % 2 != 0;
            const long k = (twice - (half ? 1 : 0)) / 2;
            complex result = half ? std::sqrt(base) : complex(1.0);
            complex factor = k >= 0 ? base : 1.0 / base;
            for (unsigned long n = static_cast<unsigned long>(k >= 0 ? k : -k); n; n >>= 1) {
                if (n & 1UL)
                    result *= factor;
                factor *= factor;
            }
            return result;
        }
    }
    if (base == complex(0.0))
        return exponent.real() > 0.0 ? complex(0.0) : complex(INFINITY);
    return std::exp(exponent * std::log(base));
}

complex rising_factorial_gamma(complex a, double m)
{
    if (is_nonpositive_integer(a) || is_nonpositive_integer(a + m))
        throw PoleError("Pochhammer (" + describe(a) + ")_" + describe(m) + " hits a gamma pole");
    if (m == 0.0)
        return 1.0;
    return std::exp(log_gamma_complex(a + m) - log_gamma_complex(a));
}

complex rho(const ParameterVectors& params, double k_or_m)
{
    if (k_or_m < 0.0 && is_integer(k_or_m))
        throw DomainError("rho: negative integer order");
    const bool integral = is_integer(k_or_m) && k_or_m < 4.0e9;
    complex num = 1.0;
    complex den = 1.0;
    for (const auto& a : params.a)
        num *= integral ? rising_factorial(a, static_cast<unsigned>(k_or_m)) : rising_factorial_gamma(a, k_or_m);
    for (const auto& b : params.b)
        den *= integral ? rising_factorial(b, static_cast<unsigned>(k_or_m)) : rising_factorial_gamma(b, k_or_m);
    return num / den;
}

ParameterVectors shift_parameters(const ParameterVectors& params, complex m)
{
    ParameterVectors out = params;
    for (auto& a : out.a)
        a -= m;
    for (auto& b : out.b)
        b -= m;
    return out;
}

void ValidationReport::require() const
{
    if (!ok())
        throw ValidationError(violations);
}

ValidationReport validate_proposition_conditions(const ParameterVectors& params, double m)
{
    ValidationReport report;
    auto flag = [&](char which, std::size_t index, std::string reason) {
        report.violations.push_back({which, index, std::move(reason)});
    };
    for (std::size_t l = 0; l < params.b.size(); ++l)
        if (is_nonpositive_integer(params.b[l]))
            flag('b', l, "is a nonpositive integer");

    if (is_integer(m)) {
        for (std::size_t l = 0; l < params.a.size(); ++l) {
            const complex a = params.a[l];
            if (a.imag() == 0.0 && is_integer(a.real()) && a.real() >= 1.0 && a.real() <= m)
                flag('a', l, "= " + describe(a) + " lies in {1, ..., m}");
        }
        for (std::size_t l = 0; l < params.b.size(); ++l) {
            const complex b = params.b[l];
            if (b.imag() == 0.0 && is_integer(b.real()) && b.real() <= m && b.real() > 0.0)
                flag('b', l, "= " + describe(b) + " lies in {m, m-1, ...}");
        }
        return report;
    }
    for (std::size_t l = 0; l < params.a.size(); ++l) {
        const complex a = params.a[l];
        if (is_nonpositive_integer(a) || is_nonpositive_integer(a - m))
            flag('a', l, "= " + describe(a) + " puts a gamma pole in rho'_m");
    }
    for (std::size_t l = 0; l < params.b.size(); ++l) {
        const complex b = params.b[l];
        if (!is_nonpositive_integer(b) && is_nonpositive_integer(b - m))
            flag('b', l, "= " + describe(b) + " puts a gamma pole in rho'_m");
    }
    return report;
}

} // namespace spikehyp
