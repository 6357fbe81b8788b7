#pragma once

// Parameter algebra shared by every evaluator: Pochhammer symbols, the
// coefficient ratio rho_k(a, b), complex log-gamma and the admissibility
// gate for the contour representation.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "spikehyp/errors.hpp"

namespace spikehyp {

using complex = std::complex<double>;

// Numerator parameters a (length p) and denominator parameters b (length q).
struct ParameterVectors {
    std::vector<complex> a;
    std::vector<complex> b;

    std::size_t p() const noexcept { return a.size(); }
    std::size_t q() const noexcept { return b.size(); }

    // Throws DomainError when some b_l is a nonpositive integer.
    void check_denominators() const;
};

// Rank-one X summarised by its nonzero eigenvalue, the matrix dimension and
// the Jack family index (2 = real, 1 = complex).
struct SpikeArgument {
    double x = 0.0;
    int r = 1;
    double alpha = 2.0;

    // Throws DomainError unless x > 0, r >= 1 and alpha > 0.
    void check() const;
};

enum class Route {
    integer,      // r/alpha = m + 1 a positive integer
    fractional,   // r/alpha = m + eps, eps in (0, 1)
    half_integer, // alpha = 2, r odd, m = r/2 - 1
};

const char* route_name(Route route) noexcept;

struct SpikeDecomposition {
    Route route = Route::integer;
    double m = 0.0;
    std::optional<double> epsilon;
};

// Route picked when the caller does not ask for one: integer when r/alpha
// is a whole number, half-integer for alpha = 2 with odd r, fractional
// otherwise.
Route default_route(const SpikeArgument& spike);

// Split r/alpha according to `route`. Throws DomainError when the route does
// not apply to this (r, alpha).
SpikeDecomposition decompose(const SpikeArgument& spike, Route route);

bool is_nonpositive_integer(complex z) noexcept;

// Principal branch of log Gamma(z) (cut along the negative real axis).
complex log_gamma_complex(complex z);

// (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1.
complex rising_factorial(complex a, unsigned k) noexcept;

// Principal value of base^exponent; exact products for integer and
// half-integer real exponents.
complex principal_power(complex base, complex exponent);

// Gamma(a+m)/Gamma(a) for real m via log-gamma.
complex rising_factorial_gamma(complex a, double m);

// prod (a_l)_k / prod (b_l)_k; non-integer orders go through the gamma ratio.
complex rho(const ParameterVectors& params, double k_or_m);

// Subtract m from every entry of a and b.
ParameterVectors shift_parameters(const ParameterVectors& params, complex m);

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    // Throws ValidationError when not ok().
    void require() const;
};

// For integer m: a_l not in {1..m} and b_l not in {m, m-1, ...}.
// For non-integer m only exact gamma poles of rho_m(a-m, b-m) are rejected.
ValidationReport validate_proposition_conditions(const ParameterVectors& params, double m);

} // namespace spikehyp
