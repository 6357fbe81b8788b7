#include "spikehyp/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace spikehyp {

namespace {

constexpr double kPi = std::numbers::pi;

// Minimal complex arithmetic over an arbitrary real type; std::complex is
// only specified for the standard floating types.
template <class R>
struct XComplex {
    R re{};
    R im{};

    XComplex() = default;
    XComplex(R r, R i = R(0)) : re(r), im(i) {}
    explicit XComplex(complex z) : re(static_cast<R>(z.real())), im(static_cast<R>(z.imag())) {}

    XComplex operator+(const XComplex& o) const { return {re + o.re, im + o.im}; }
    XComplex operator*(const XComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    XComplex operator/(const XComplex& o) const
    {
        // Smith's algorithm
        const R abs_re = o.re < 0 ? -o.re : o.re;
        const R abs_im = o.im < 0 ? -o.im : o.im;
        if (abs_re >= abs_im) {
            const R t = o.im / o.re;
            const R d = o.re + o.im * t;
            return {(re + im * t) / d, (im - re * t) / d};
        }
        const R t = o.re / o.im;
        const R d = o.re * t + o.im;
        return {(re * t + im) / d, (im * t - re) / d};
    }
    XComplex& operator+=(const XComplex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool is_zero() const { return re == R(0) && im == R(0); }
    // max-norm; adequate for tolerance tests and cheap in binary128
    R magnitude() const
    {
        const R a = re < 0 ? -re : re;
        const R b = im < 0 ? -im : im;
        return a > b ? a : b;
    }
    complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

template <class R>
struct RawSeries {
    XComplex<R> sum;
    R abs_sum{};
    unsigned terms = 0;
};

template <class R>
RawSeries<R> series_core(const ParameterVectors& params, complex z, double tol, unsigned lmin)
{
    std::vector<XComplex<R>> a;
    std::vector<XComplex<R>> b;
    for (const auto& v : params.a)
        a.emplace_back(v);
    for (const auto& v : params.b)
        b.emplace_back(v);
    const XComplex<R> zz(z);
    const double zabs = std::abs(z);

    RawSeries<R> out;
    XComplex<R> term(R(1));
    if (lmin == 0) {
        out.sum = term;
        out.abs_sum = R(1);
    }
    const R rtol = static_cast<R>(tol);
    int small_run = 0;
    for (unsigned k = 0; k < kMaxSeriesTerms; ++k) {
        XComplex<R> num = zz;
        XComplex<R> den(static_cast<R>(k + 1));
        double ratio = zabs / (k + 1.0);
        const R kk = static_cast<R>(k);
        for (std::size_t l = 0; l < a.size(); ++l) {
            const XComplex<R> f = a[l] + XComplex<R>(kk);
            num = num * f;
            ratio *= std::abs(params.a[l] + static_cast<double>(k));
        }
        for (std::size_t l = 0; l < b.size(); ++l) {
            const XComplex<R> f = b[l] + XComplex<R>(kk);
            den = den * f;
            ratio /= std::abs(params.b[l] + static_cast<double>(k));
        }
        term = term * num / den;
        const unsigned order = k + 1;
        out.terms = order + 1;
        if (term.is_zero())
            return out; // terminating series
        if (order < lmin)
            continue;
        out.sum += term;
        out.abs_sum += term.magnitude();
        // geometric tail bound |term| / (1 - ratio)
        const bool small = ratio < 1.0 && term.magnitude() <= rtol * R(1.0 - ratio) * out.sum.magnitude();
        if (small) {
            if (++small_run >= 3)
                return out;
        } else {
            small_run = 0;
        }
    }
    throw ConvergenceError("pFq series did not converge within " + std::to_string(kMaxSeriesTerms) + " terms");
}

bool is_real_at_least_one(complex z) { return z.imag() == 0.0 && z.real() >= 1.0; }

// Product of gammas in `num` over product in `den`; a pole in the
// denominator gives zero, a pole in the numerator gives nullopt.
std::optional<complex> gamma_ratio(std::initializer_list<complex> num, std::initializer_list<complex> den)
{
    complex log_value = 0.0;
    for (const auto& d : den) {
        if (is_nonpositive_integer(d))
            return complex(0.0);
        log_value -= log_gamma_complex(d);
    }
    for (const auto& n : num) {
        if (is_nonpositive_integer(n))
            return std::nullopt;
        log_value += log_gamma_complex(n);
    }
    return std::exp(log_value);
}

// Distance of d from the nearest integer; huge when d is far off the real axis.
double integer_distance(complex d) { return std::hypot(d.real() - std::round(d.real()), d.imag()); }

constexpr double kDegenerateGap = 1e-2;
constexpr double kPoleGap = 1e-9;

complex series_value(std::initializer_list<complex> a, std::initializer_list<complex> b, complex z, double tol)
{
    ParameterVectors p{std::vector<complex>(a), std::vector<complex>(b)};
    return pfq_series(p, z, tol).sum;
}

// DLMF 10.17.3 Hankel expansion of J_nu(w); nullopt if the terms start
// growing before reaching the tolerance.
std::optional<complex> bessel_j_asymptotic(complex nu, complex w, double tol)
{
    const complex mu = 4.0 * nu * nu;
    complex p = 1.0;
    complex q = 0.0;
    complex t = 1.0;
    double previous = 1.0;
    bool converged = false;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        t *= (mu - odd * odd) / (8.0 * k * w);
        const double mag = std::abs(t);
        if (mag > previous && k > 2)
            break;
        previous = mag;
        // a_k(nu) / w^k enters P with sign (-1)^{k/2} (k even), Q with (-1)^{(k-1)/2} (k odd)
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p += sign * t;
        else
            q += sign * t;
        if (mag <= tol * (std::abs(p) + std::abs(q))) {
            converged = true;
            break;
        }
    }
    if (!converged)
        return std::nullopt;
    const complex chi = w - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * w)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Asymptotic series sum_s c_s x^{-s} with c_s from the given Pochhammer pairs;
// truncated at the smallest term. nullopt when the tolerance is not reached.
std::optional<complex> asymptotic_sum(complex p1, complex p2, complex inv, double tol)
{
    complex sum = 1.0;
    complex term = 1.0;
    double previous = 1.0;
    for (int s = 0; s < 500; ++s) {
        term *= (p1 + static_cast<double>(s)) * (p2 + static_cast<double>(s)) / static_cast<double>(s + 1) * inv;
        const double mag = std::abs(term);
        if (mag == 0.0)
            return sum;
        if (mag > previous && s > 0)
            return std::nullopt;
        previous = mag;
        sum += term;
        if (mag <= tol * std::abs(sum))
            return sum;
    }
    return std::nullopt;
}

// DLMF 13.7.2 for large |z|.
std::optional<complex> hyp1f1_asymptotic(complex a, complex b, complex z, double tol)
{
    const complex log_z = std::log(z);
    const complex lg_b = log_gamma_complex(b);
    complex total = 0.0;
    double scale = 0.0;
    std::optional<complex> algebraic;
    std::optional<complex> exponential;
    complex log_alg{};
    complex log_exp{};
    if (!is_nonpositive_integer(b - a)) {
        const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
        log_alg = lg_b - log_gamma_complex(b - a) + complex(0.0, sign * kPi) * a - a * log_z;
        algebraic = asymptotic_sum(a, a - b + 1.0, -1.0 / z, tol);
        scale = std::max(scale, std::exp(log_alg.real()));
    }
    if (!is_nonpositive_integer(a)) {
        log_exp = lg_b - log_gamma_complex(a) + z + (a - b) * log_z;
        exponential = asymptotic_sum(1.0 - a, b - a, 1.0 / z, tol);
        scale = std::max(scale, std::exp(log_exp.real()));
    }
    if (scale == 0.0 || !std::isfinite(scale))
        return std::nullopt;
    // A part whose series failed may be dropped only if it is negligible.
    if (!is_nonpositive_integer(b - a)) {
        if (algebraic)
            total += std::exp(log_alg) * *algebraic;
        else if (std::exp(log_alg.real()) > tol * 1e-3 * scale)
            return std::nullopt;
    }
    if (!is_nonpositive_integer(a)) {
        if (exponential)
            total += std::exp(log_exp) * *exponential;
        else if (std::exp(log_exp.real()) > tol * 1e-3 * scale)
            return std::nullopt;
    }
    return total;
}

// Series arguments closer to the unit circle converge too slowly to be useful.
constexpr double kLadderRadius = 0.8;

// Continue 2F1 along the segment [z0, z] by re-expanding the hypergeometric
// equation z(1-z) f'' + (c - (a+b+1) z) f' - ab f = 0 around each step centre.
std::optional<complex> gauss2f1_ode(complex a, complex b, complex c, complex z, double tol)
{
    const double start_radius = 0.5;
    complex z0 = std::abs(z) <= start_radius ? z : z * (start_radius / std::abs(z));
    complex f;
    complex df;
    try {
        f = series_value({a, b}, {c}, z0, tol);
        df = a * b / c * series_value({a + 1.0, b + 1.0}, {c + 1.0}, z0, tol);
    } catch (const ConvergenceError&) {
        return std::nullopt;
    }
    const complex q1 = -(a + b + 1.0);
    const complex rr = -a * b;
    for (int step = 0; step < 2000; ++step) {
        const complex remaining = z - z0;
        if (std::abs(remaining) == 0.0)
            return f;
        const double reach = 0.5 * std::min(std::abs(z0), std::abs(1.0 - z0));
        const complex w = std::abs(remaining) <= reach ? remaining : remaining * (reach / std::abs(remaining));
        const complex p0 = z0 * (1.0 - z0);
        const complex p1 = 1.0 - 2.0 * z0;
        const complex q0 = c + q1 * z0;
        complex t_prev = f;
        complex t_cur = df;
        complex wp = w;
        complex value = f + df * w;
        complex deriv = df;
        bool converged = false;
        int small_run = 0;
        for (int n = 0; n < 400; ++n) {
            const double nn = n;
            const complex t_next =
                -((p1 * nn + q0) * (nn + 1.0) * t_cur + (-nn * (nn - 1.0) + q1 * nn + rr) * t_prev) /
                (p0 * (nn + 2.0) * (nn + 1.0));
            deriv += (nn + 2.0) * t_next * wp;
            wp *= w;
            const complex contribution = t_next * wp;
            value += contribution;
            t_prev = t_cur;
            t_cur = t_next;
            if (std::abs(contribution) <= 0.1 * tol * std::abs(value) &&
                std::abs(contribution) <= 0.1 * tol * std::abs(deriv * w)) {
                if (++small_run >= 3) {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        if (!converged)
            return std::nullopt;
        z0 += w;
        f = value;
        df = deriv;
    }
    return std::nullopt;
}

} // namespace

const char* kernel_case_name(KernelCase tag) noexcept
{
    switch (tag) {
    case KernelCase::f00:
        return "0F0";
    case KernelCase::f01:
        return "0F1";
    case KernelCase::f10:
        return "1F0";
    case KernelCase::f11:
        return "1F1";
    case KernelCase::f21:
        return "2F1";
    case KernelCase::generic:
        return "generic";
    }
    return "?";
}

std::optional<KernelCase> parse_kernel_case(std::string_view name) noexcept
{
    for (auto tag : {KernelCase::f00, KernelCase::f01, KernelCase::f10, KernelCase::f11, KernelCase::f21})
        if (name == kernel_case_name(tag))
            return tag;
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> kernel_case_order(KernelCase tag) noexcept
{
    switch (tag) {
    case KernelCase::f00:
        return std::pair<std::size_t, std::size_t>{0, 0};
    case KernelCase::f01:
        return std::pair<std::size_t, std::size_t>{0, 1};
    case KernelCase::f10:
        return std::pair<std::size_t, std::size_t>{1, 0};
    case KernelCase::f11:
        return std::pair<std::size_t, std::size_t>{1, 1};
    case KernelCase::f21:
        return std::pair<std::size_t, std::size_t>{2, 1};
    case KernelCase::generic:
        break;
    }
    return std::nullopt;
}

ScalarKernel ScalarKernel::from(ParameterVectors params)
{
    KernelCase tag = KernelCase::generic;
    for (auto t : {KernelCase::f00, KernelCase::f01, KernelCase::f10, KernelCase::f11, KernelCase::f21})
        if (kernel_case_order(t) == std::pair{params.p(), params.q()})
            tag = t;
    return with_tag(std::move(params), tag);
}

ScalarKernel ScalarKernel::with_tag(ParameterVectors params, KernelCase tag)
{
    params.check_denominators();
    if (auto order = kernel_case_order(tag); order && *order != std::pair{params.p(), params.q()})
        throw DomainError(std::string("kernel tag ") + kernel_case_name(tag) + " does not match (p, q) = (" +
                          std::to_string(params.p()) + ", " + std::to_string(params.q()) + ")");
    return ScalarKernel{std::move(params), tag};
}

SeriesResult pfq_series(const ParameterVectors& params, complex z, double tol, unsigned lmin)
{
    const auto fast = series_core<double>(params, z, tol, lmin);
    SeriesResult out{fast.sum.to_complex(), fast.abs_sum, fast.terms, false};
    const double mag = fast.sum.magnitude();
    if (std::isfinite(out.abs_sum) && out.abs_sum <= 1e3 * mag)
        return out;
    if (!std::isfinite(out.abs_sum))
        throw ConvergenceError("pFq series overflowed");
    const auto wide = series_core<__float128>(params, z, tol, lmin);
    return {wide.sum.to_complex(), static_cast<double>(wide.abs_sum), wide.terms, true};
}

complex kummer_stabilize(complex a, complex b, complex z, double tol)
{
    if (is_nonpositive_integer(b))
        throw PoleError("1F1 denominator parameter is a nonpositive integer");
    if (a == b)
        return std::exp(z);
    if (z.real() < 0.0 && !is_nonpositive_integer(a))
        return std::exp(z) * series_value({b - a}, {b}, -z, tol);
    return series_value({a}, {b}, z, tol);
}

complex hyp1f1(complex a, complex b, complex z, double tol)
{
    if (is_nonpositive_integer(b))
        throw PoleError("1F1 denominator parameter is a nonpositive integer");
    if (a == b)
        return std::exp(z);
    const double threshold = std::max(40.0, 2.0 * (std::norm(a) + std::norm(b)));
    if (std::abs(z) >= threshold && !is_nonpositive_integer(a)) {
        if (auto v = hyp1f1_asymptotic(a, b, z, tol))
            return *v;
    }
    return kummer_stabilize(a, b, z, tol);
}

complex hyp0f1(complex b, complex z, double tol)
{
    if (is_nonpositive_integer(b))
        throw PoleError("0F1 denominator parameter is a nonpositive integer");
    if (z.real() < 0.0 && std::abs(z) >= 100.0) {
        const complex w = 2.0 * std::sqrt(-z);
        if (auto j = bessel_j_asymptotic(b - 1.0, w, tol))
            return std::exp(log_gamma_complex(b) + (1.0 - b) * std::log(0.5 * w)) * *j;
    }
    return series_value({}, {b}, z, tol);
}

const char* gauss2f1_route_name(Gauss2F1Route route) noexcept
{
    switch (route) {
    case Gauss2F1Route::direct:
        return "z";
    case Gauss2F1Route::pfaff:
        return "z/(z-1)";
    case Gauss2F1Route::one_minus_z:
        return "1-z";
    case Gauss2F1Route::inverse_z:
        return "1/z";
    case Gauss2F1Route::inverse_one_minus:
        return "1/(1-z)";
    case Gauss2F1Route::one_minus_inverse:
        return "1-1/z";
    }
    return "?";
}

complex gauss2f1_route_argument(Gauss2F1Route route, complex z) noexcept
{
    switch (route) {
    case Gauss2F1Route::direct:
        return z;
    case Gauss2F1Route::pfaff:
        return z / (z - 1.0);
    case Gauss2F1Route::one_minus_z:
        return 1.0 - z;
    case Gauss2F1Route::inverse_z:
        return 1.0 / z;
    case Gauss2F1Route::inverse_one_minus:
        return 1.0 / (1.0 - z);
    case Gauss2F1Route::one_minus_inverse:
        return 1.0 - 1.0 / z;
    }
    return z;
}

namespace {

// connection formulas lose about eps / gap^2 next to integer parameter gaps
std::optional<complex> route_value(complex a, complex b, complex c, complex z, Gauss2F1Route route, double tol,
                                   double gap)
{
    if (is_nonpositive_integer(c))
        throw PoleError("2F1 denominator parameter c is a nonpositive integer");
    if (is_real_at_least_one(z))
        return std::nullopt;
    const complex zeta = gauss2f1_route_argument(route, z);
    if (!(std::abs(zeta) < 1.0))
        return std::nullopt;
    try {
        switch (route) {
        case Gauss2F1Route::direct:
            return series_value({a, b}, {c}, z, tol);
        case Gauss2F1Route::pfaff:
            return std::exp(-a * std::log(1.0 - z)) * series_value({a, c - b}, {c}, zeta, tol);
        case Gauss2F1Route::one_minus_z:
        case Gauss2F1Route::one_minus_inverse: {
            const complex d = c - a - b;
            if (integer_distance(d) < gap)
                return std::nullopt;
            const auto g1 = gamma_ratio({c, d}, {c - a, c - b});
            const auto g2 = gamma_ratio({c, -d}, {a, b});
            if (!g1 || !g2)
                return std::nullopt;
            if (route == Gauss2F1Route::one_minus_z) {
                const complex t1 = *g1 * series_value({a, b}, {1.0 - d}, zeta, tol);
                const complex t2 = *g2 * std::exp(d * std::log(1.0 - z)) *
                                   series_value({c - a, c - b}, {d + 1.0}, zeta, tol);
                return t1 + t2;
            }
            const complex t1 = *g1 * std::exp(-a * std::log(z)) * series_value({a, a - c + 1.0}, {1.0 - d}, zeta, tol);
            const complex t2 = *g2 * std::exp(d * std::log(1.0 - z) + (a - c) * std::log(z)) *
                               series_value({c - a, 1.0 - a}, {d + 1.0}, zeta, tol);
            return t1 + t2;
        }
        case Gauss2F1Route::inverse_z:
        case Gauss2F1Route::inverse_one_minus: {
            const complex d = b - a;
            if (integer_distance(d) < gap)
                return std::nullopt;
            const auto g1 = gamma_ratio({c, d}, {b, c - a});
            const auto g2 = gamma_ratio({c, -d}, {a, c - b});
            if (!g1 || !g2)
                return std::nullopt;
            if (route == Gauss2F1Route::inverse_z) {
                const complex log_mz = std::log(-z);
                const complex t1 = *g1 * std::exp(-a * log_mz) * series_value({a, 1.0 - c + a}, {1.0 - d}, zeta, tol);
                const complex t2 = *g2 * std::exp(-b * log_mz) * series_value({b, 1.0 - c + b}, {1.0 + d}, zeta, tol);
                return t1 + t2;
            }
            const complex log_1mz = std::log(1.0 - z);
            const complex t1 = *g1 * std::exp(-a * log_1mz) * series_value({a, c - b}, {1.0 - d}, zeta, tol);
            const complex t2 = *g2 * std::exp(-b * log_1mz) * series_value({b, c - a}, {1.0 + d}, zeta, tol);
            return t1 + t2;
        }
        }
    } catch (const ConvergenceError&) {
        return std::nullopt;
    } catch (const PoleError&) {
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace

std::optional<complex> gauss2f1_route(complex a, complex b, complex c, complex z, Gauss2F1Route route, double tol)
{
    return route_value(a, b, c, z, route, tol, kDegenerateGap);
}

complex gauss2f1_continued(complex a, complex b, complex c, complex z, double tol)
{
    if (is_nonpositive_integer(c))
        throw PoleError("2F1 denominator parameter c is a nonpositive integer");
    if (is_real_at_least_one(z))
        throw DomainError("2F1 argument lies on the branch cut [1, inf)");
    if (z == complex(0.0))
        return 1.0;
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return series_value({a, b}, {c}, z, tol); // polynomial

    std::vector<std::pair<double, Gauss2F1Route>> order;
    for (auto route : kAllGauss2F1Routes)
        order.emplace_back(std::abs(gauss2f1_route_argument(route, z)), route);
    std::stable_sort(order.begin(), order.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [modulus, route] : order) {
        if (!(modulus < kLadderRadius))
            break;
        if (auto v = gauss2f1_route(a, b, c, z, route, tol))
            return *v;
    }
    if (auto v = gauss2f1_ode(a, b, c, z, tol))
        return *v;
    for (const auto& [modulus, route] : order) {
        if (!(modulus < kLadderRadius))
            break;
        if (auto v = route_value(a, b, c, z, route, tol, kPoleGap))
            return *v;
    }
    throw ConvergenceError("2F1 transformation ladder failed at z = (" + std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ")");
}

complex scalar_pfq(const ScalarKernel& kernel, complex z, double tol)
{
    const auto& P = kernel.params;
    switch (kernel.tag) {
    case KernelCase::f00:
        return std::exp(z);
    case KernelCase::f10:
        if (is_real_at_least_one(z))
            throw DomainError("1F0 argument lies on the branch cut [1, inf)");
        return principal_power(1.0 - z, -P.a[0]);
    case KernelCase::f01:
        return hyp0f1(P.b[0], z, tol);
    case KernelCase::f11:
        return hyp1f1(P.a[0], P.b[0], z, tol);
    case KernelCase::f21:
        return gauss2f1_continued(P.a[0], P.a[1], P.b[0], z, tol);
    case KernelCase::generic:
        break;
    }
    if (P.p() > P.q() + 1)
        throw DomainError("pFq with p > q + 1 diverges");
    if (P.p() == P.q() + 1) {
        if (is_real_at_least_one(z))
            throw DomainError("pFq argument lies on the branch cut [1, inf)");
        if (!(std::abs(z) < 1.0))
            throw DomainError("generic pFq with p = q + 1 is only summed inside the unit disk");
    }
    return pfq_series(P, z, tol).sum;
}

complex scalar_pfq_remainder(const ScalarKernel& kernel, complex z, unsigned lmin, double tol)
{
    if (lmin == 0)
        return scalar_pfq(kernel, z, tol);
    const auto& P = kernel.params;
    const double zabs = std::abs(z);
    const bool inside = (P.p() <= P.q()) ? zabs <= 1.0 : zabs <= 0.95;
    if (inside)
        return pfq_series(P, z, tol, lmin).sum;
    complex value = scalar_pfq(kernel, z, tol);
    complex term = 1.0;
    for (unsigned l = 0; l < lmin; ++l) {
        value -= term;
        complex ratio = z / static_cast<double>(l + 1);
        for (const auto& a : P.a)
            ratio *= a + static_cast<double>(l);
        for (const auto& b : P.b)
            ratio /= b + static_cast<double>(l);
        term *= ratio;
    }
    return value;
}

} // namespace spikehyp
