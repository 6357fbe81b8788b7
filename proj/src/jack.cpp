#include "spikehyp/jack.hpp"

#include <algorithm>
#include <cmath>

namespace spikehyp {

const char* method_name(Method method) noexcept
{
    switch (method) {
    case Method::contour_i:
        return "contour-i";
    case Method::contour_ii:
        return "contour-ii";
    case Method::contour_iii:
        return "contour-iii";
    case Method::series:
        return "series";
    case Method::sphere_mc:
        return "sphere-mc";
    }
    return "?";
}

Method method_for(Route route) noexcept
{
    switch (route) {
    case Route::integer:
        return Method::contour_i;
    case Route::fractional:
        return Method::contour_ii;
    case Route::half_integer:
        return Method::contour_iii;
    }
    return Method::contour_i;
}

double Spectrum::max() const
{
    check();
    return *std::max_element(y.begin(), y.end());
}

double Spectrum::spread() const
{
    check();
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    return *hi - *lo;
}

void Spectrum::check() const
{
    if (y.empty())
        throw DomainError("spectrum is empty");
    for (std::size_t j = 0; j < y.size(); ++j)
        if (!(y[j] > 0.0) || !std::isfinite(y[j]))
            throw DomainError("spectrum entry y[" + std::to_string(j) + "] must be positive and finite");
}

SingleRowGenerator::SingleRowGenerator(const Spectrum& y, double alpha) : alpha_(alpha)
{
    if (!(alpha > 0.0))
        throw DomainError("family index alpha must be positive");
    scale_ = y.max();
    for (double v : y.y)
        y_.push_back(v / scale_);
    partial_.assign(y_.size(), {});
    extend(16);
}

void SingleRowGenerator::extend(std::size_t count)
{
    const std::size_t old = partial_.back().size();
    if (count <= old)
        return;
    const double e = 1.0 / alpha_;
    binomial_.reserve(count);
    for (std::size_t n = binomial_.size(); n < count; ++n)
        binomial_.push_back(n == 0 ? 1.0 : binomial_[n - 1] * (e + static_cast<double>(n) - 1.0) / static_cast<double>(n));

    for (std::size_t j = 0; j < y_.size(); ++j) {
        auto& cur = partial_[j];
        cur.resize(count);
        for (std::size_t k = old; k < count; ++k) {
            // coefficient k of (previous product) * sum_n binomial_n (y_j z)^n
            double acc = 0.0;
            double power = 1.0;
            for (std::size_t n = 0; n <= k; ++n) {
                const double prev = j == 0 ? (k - n == 0 ? 1.0 : 0.0) : partial_[j - 1][k - n];
                acc += binomial_[n] * power * prev;
                power *= y_[j];
            }
            cur[k] = acc;
        }
    }
}

double SingleRowGenerator::scaled(std::size_t k)
{
    if (k >= size())
        extend(std::max(k + 1, 2 * size()));
    return partial_.back()[k];
}

JackTable jack_single_row(const Spectrum& y, double alpha, std::size_t K)
{
    SingleRowGenerator gen(y, alpha);
    JackTable table{alpha, {}};
    table.values.reserve(K + 1);
    // C_k = k! c_k / (1/alpha)_k
    double ratio = 1.0;
    double power = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
        if (k > 0) {
            ratio *= static_cast<double>(k) / (1.0 / alpha + static_cast<double>(k) - 1.0);
            power *= gen.scale();
        }
        table.values.push_back(ratio * gen.scaled(k) * power);
    }
    return table;
}

EvalResult series_eval(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                       const SeriesSettings& settings)
{
    params.check_denominators();
    y.check();
    if (spike.r < 1 || static_cast<std::size_t>(spike.r) != y.r())
        throw DomainError("dimension r must equal the number of eigenvalues in y");
    if (spike.x == 0.0)
        return {1.0, 0.0, Method::series, 1};
    spike.check();
    if (params.p() > params.q() + 1)
        throw DomainError("series diverges for p > q + 1");
    SingleRowGenerator gen(y, spike.alpha);
    const double theta = spike.x * gen.scale();
    const bool bounded_radius = params.p() == params.q() + 1;
    if (bounded_radius && !(theta < 1.0))
        throw DomainError("series diverges: p = q + 1 requires x * max(y) < 1");

    // term_k = rho_k (x s)^k c_k / (r/alpha)_k, s the spectrum scale
    const double ra = spike.r / spike.alpha;
    const double tail_factor = bounded_radius ? 1.0 / (1.0 - theta) : 1.0;
    complex weight = 1.0;
    complex sum = 1.0;
    double block = 0.0;
    int small_run = 0;
    for (std::size_t k = 1; k <= settings.kmax; ++k) {
        const double km = static_cast<double>(k) - 1.0;
        complex factor = theta / (ra + km);
        for (const auto& a : params.a)
            factor *= a + km;
        for (const auto& b : params.b)
            factor /= b + km;
        weight *= factor;
        const complex term = weight * gen.scaled(k);
        if (weight == complex(0.0))
            return {sum, 0.0, Method::series, k};
        sum += term;
        const double mag = std::abs(term);
        if (mag * tail_factor <= settings.tol * std::abs(sum)) {
            block += mag;
            if (++small_run >= 3)
                return {sum, block * tail_factor, Method::series, k + 1};
        } else {
            small_run = 0;
            block = 0.0;
        }
    }
    throw ConvergenceError("rank-one series did not reach tolerance within kmax = " + std::to_string(settings.kmax) +
                           " terms");
}

} // namespace spikehyp
