#pragma once

// Single-row Jack polynomials C_k^alpha(Y) from the generating function
// prod_j (1 - z y_j)^{-1/alpha}, and the rank-one series built on them.

#include <vector>

#include "spikehyp/eval_result.hpp"

namespace spikehyp {

struct Spectrum {
    std::vector<double> y;

    std::size_t r() const noexcept { return y.size(); }
    double max() const;
    double spread() const;
    // Throws DomainError unless y is nonempty with every entry positive and finite.
    void check() const;
};

struct JackTable {
    double alpha = 2.0;
    std::vector<double> values; // values[k] = C_k^alpha(Y)
};

// Coefficients c_k of prod_j (1 - z y_j)^{-1/alpha} for y scaled by max(y),
// extended on demand. c_k(Y) = scaled(k) * max(y)^k.
class SingleRowGenerator {
public:
    SingleRowGenerator(const Spectrum& y, double alpha);

    double scale() const noexcept { return scale_; }
    double alpha() const noexcept { return alpha_; }
    // c_k of the scaled spectrum; grows the table as needed.
    double scaled(std::size_t k);
    std::size_t size() const noexcept { return partial_.back().size(); }

private:
    void extend(std::size_t count);

    std::vector<double> y_; // y / scale
    double alpha_;
    double scale_;
    std::vector<double> binomial_;             // (1/alpha)_n / n!
    std::vector<std::vector<double>> partial_; // partial_[j] = product over the first j+1 factors
};

JackTable jack_single_row(const Spectrum& y, double alpha, std::size_t K);

struct SeriesSettings {
    double tol = 1e-12;
    std::size_t kmax = 5000;
};

// Rank-one series sum_k rho_k (1/alpha)_k / (r/alpha)_k x^k C_k^alpha(Y) / k!.
// r is taken from spike.r and must equal y.r(). x = 0 gives exactly 1.
EvalResult series_eval(const ParameterVectors& params, const SpikeArgument& spike, const Spectrum& y,
                       const SeriesSettings& settings = {});

} // namespace spikehyp
