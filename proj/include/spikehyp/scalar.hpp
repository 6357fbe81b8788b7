#pragma once

// Scalar generalized hypergeometric kernels pFq(a, b; z) at complex z for the
// five classical cases (0F0, 0F1, 1F0, 1F1, 2F1) plus a plain series path for
// other (p, q).

#include <optional>
#include <string_view>

#include "spikehyp/core.hpp"

namespace spikehyp {

enum class KernelCase { f00, f01, f10, f11, f21, generic };

const char* kernel_case_name(KernelCase tag) noexcept;
std::optional<KernelCase> parse_kernel_case(std::string_view name) noexcept;
// (p, q) of a classical case; generic has none.
std::optional<std::pair<std::size_t, std::size_t>> kernel_case_order(KernelCase tag) noexcept;

struct ScalarKernel {
    ParameterVectors params;
    KernelCase tag = KernelCase::generic;

    // Tag inferred from (p, q).
    static ScalarKernel from(ParameterVectors params);
    // Throws DomainError if the tag does not match (p, q) or a denominator is
    // a nonpositive integer.
    static ScalarKernel with_tag(ParameterVectors params, KernelCase tag);
};

inline constexpr double kKernelTol = 1e-12;
inline constexpr unsigned kMaxSeriesTerms = 10000;

struct SeriesResult {
    complex sum;
    double abs_sum = 0.0; // sum of |terms|, a cancellation indicator
    unsigned terms = 0;
    bool extended = false; // recomputed in binary128 because of cancellation
};

// Direct power series sum_{l >= lmin} rho_l(a, b) z^l / l!.
// Stops after three consecutive terms below tol * |partial sum| while the
// terms are shrinking; falls back to binary128 arithmetic when the double
// sum has lost more than three digits to cancellation.
SeriesResult pfq_series(const ParameterVectors& params, complex z, double tol = kKernelTol, unsigned lmin = 0);

// pFq(a, b; z); for p = q + 1 the principal branch off [1, inf).
complex scalar_pfq(const ScalarKernel& kernel, complex z, double tol = kKernelTol);

// pFq(a, b; z) minus its Taylor polynomial of degree < lmin.
complex scalar_pfq_remainder(const ScalarKernel& kernel, complex z, unsigned lmin, double tol = kKernelTol);

// 1F1(a; b; z), evaluated as e^z 1F1(b-a; b; -z) when Re z < 0.
complex kummer_stabilize(complex a, complex b, complex z, double tol = kKernelTol);

// 1F1 with a large-|z| asymptotic path in front of kummer_stabilize.
complex hyp1f1(complex a, complex b, complex z, double tol = kKernelTol);

// 0F1(; b; z) with a Bessel-asymptotic path for large |z| in the left half plane.
complex hyp0f1(complex b, complex z, double tol = kKernelTol);

enum class Gauss2F1Route {
    direct,             // z
    pfaff,              // z / (z - 1)
    one_minus_z,        // 1 - z
    inverse_z,          // 1 / z
    inverse_one_minus,  // 1 / (1 - z)
    one_minus_inverse,  // 1 - 1/z
};

inline constexpr Gauss2F1Route kAllGauss2F1Routes[] = {
    Gauss2F1Route::direct,    Gauss2F1Route::pfaff,             Gauss2F1Route::one_minus_z,
    Gauss2F1Route::inverse_z, Gauss2F1Route::inverse_one_minus, Gauss2F1Route::one_minus_inverse};

const char* gauss2f1_route_name(Gauss2F1Route route) noexcept;

// Series argument used by `route` at z.
complex gauss2f1_route_argument(Gauss2F1Route route, complex z) noexcept;

// 2F1 through one transformation; nullopt when the route is not usable here
// (series argument outside the unit disk, degenerate parameters, or series
// failure).
std::optional<complex> gauss2f1_route(complex a, complex b, complex c, complex z, Gauss2F1Route route,
                                      double tol = kKernelTol);

// 2F1(a, b; c; z) for z off [1, inf): tries routes in order of increasing
// series-argument modulus.
complex gauss2f1_continued(complex a, complex b, complex c, complex z, double tol = kKernelTol);

} // namespace spikehyp
