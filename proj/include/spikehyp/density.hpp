#pragma once

// Two-sample covariance test under a rank-one spike: joint density of the
// eigenvalues of A1 A2^{-1}, its normalising constant, the likelihood ratio
// in contour form and its n2 -> infinity limit.

#include <optional>
#include <vector>

#include "spikehyp/contour.hpp"

namespace spikehyp {

struct TwoSampleDesign {
    int p = 1;
    int n1 = 1;
    int n2 = 1;

    int n() const noexcept { return n1 + n2; }
    // Throws DomainError unless p >= 1 and n1, n2 >= p.
    void check() const;
};

struct SpikeAlternative {
    double h = 0.0;

    // Throws DomainError unless h > 0 and finite.
    static SpikeAlternative from_h(double h);
    double tau() const noexcept { return h / (1.0 + h); }
};

struct EigenvalueConfig {
    std::vector<double> f;

    // Throws DomainError unless f is strictly decreasing and positive.
    void check() const;
    std::vector<double> lambda() const;
};

// log Gamma_p(a) = p(p-1)/4 log pi + sum_i log Gamma(a - (i-1)/2).
double multivariate_gamma_log(int p, double a);

// log c_{p,n1,n2}.
double constant_c(const TwoSampleDesign& design);

// prod_{j<j'} (f_j - f_j').
double vandermonde(const std::vector<double>& f);

// Joint density at f; a null alternative means Delta = I.
EvalResult joint_density(const EigenvalueConfig& f, const std::optional<SpikeAlternative>& alternative,
                         const TwoSampleDesign& design, const ContourOptions& options = {});

// Likelihood ratio L(tau; Lambda) through its contour form; lambda is sorted internally.
EvalResult lr_contour(double tau, const std::vector<double>& lambda, const TwoSampleDesign& design,
                      const ContourOptions& options = {});

// n2 -> infinity limit of the likelihood ratio with mu_j = (n2/n1) f_j.
EvalResult lr_limit(double tau, const std::vector<double>& mu, int p, int n1, const ContourOptions& options = {});

} // namespace spikehyp
