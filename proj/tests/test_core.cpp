#include <gtest/gtest.h>

#include "spikehyp/core.hpp"
#include "support.hpp"

using namespace spikehyp;
using spikehyp::testing::rel_gap;
using spikehyp::testing::uniform;

namespace {

complex random_complex(std::mt19937_64& rng, double lo, double hi)
{
    return {uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

ParameterVectors random_params(std::mt19937_64& rng, std::size_t p, std::size_t q)
{
    ParameterVectors v;
    for (std::size_t i = 0; i < p; ++i)
        v.a.push_back(random_complex(rng, -3.0, 3.0));
    for (std::size_t i = 0; i < q; ++i)
        v.b.push_back(random_complex(rng, -3.0, 3.0));
    return v;
}

} // namespace

TEST(RisingFactorial, GammaFormMatchesProductForIntegerOrders)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const complex a = random_complex(rng, -6.0, 6.0);
        for (unsigned m = 0; m <= 10; ++m)
            EXPECT_LT(rel_gap(rising_factorial_gamma(a, m), rising_factorial(a, m)), 1e-13) << a << " m=" << m;
    }
}

TEST(RisingFactorial, EmptyProductIsOne)
{
    EXPECT_EQ(rising_factorial(0.37, 0), complex(1.0));
    EXPECT_EQ(rising_factorial(complex(-2.0, 0.0), 0), complex(1.0));
    EXPECT_EQ(rising_factorial(complex(-2.0, 0.0), 3), complex(0.0));
    EXPECT_LT(rel_gap(rising_factorial_gamma(0.5, 1.5), complex(std::tgamma(2.0) / std::tgamma(0.5))), 1e-14);
}

TEST(Rho, ShiftedRatioIdentity)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const ParameterVectors v = random_params(rng, 2, 1);
        for (unsigned l = 0; l <= 8; ++l) {
            for (unsigned m = 0; m <= l; ++m) {
                const ParameterVectors s = shift_parameters(v, static_cast<double>(m));
                const complex expect = rho(s, l) / rho(s, m);
                EXPECT_LT(rel_gap(rho(v, l - m), expect), 1e-12) << "l=" << l << " m=" << m;
            }
        }
    }
}

TEST(Rho, EmptyVectorsGiveOne)
{
    EXPECT_EQ(rho(ParameterVectors{}, 7), complex(1.0));
}

TEST(ShiftParameters, NegatedShiftIsInverse)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const ParameterVectors v = random_params(rng, 3, 2);
        const complex m = random_complex(rng, -4.0, 4.0);
        const ParameterVectors back = shift_parameters(shift_parameters(v, m), -m);
        for (std::size_t i = 0; i < v.a.size(); ++i)
            EXPECT_LT(std::abs(back.a[i] - v.a[i]), 1e-14);
        for (std::size_t i = 0; i < v.b.size(); ++i)
            EXPECT_LT(std::abs(back.b[i] - v.b[i]), 1e-14);
    }
}

TEST(LogGamma, RecurrenceOnRandomGrid)
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 400; ++trial) {
        const complex z = random_complex(rng, -8.0, 8.0);
        if (std::abs(z.imag()) < 1e-3)
            continue;
        const complex lhs = log_gamma_complex(z + 1.0);
        const complex rhs = log_gamma_complex(z) + std::log(z);
        // equal modulo 2 pi i; the principal branch keeps them equal off the negative axis
        const complex d = lhs - rhs;
        const double turns = std::round(d.imag() / (2.0 * M_PI));
        EXPECT_LT(std::abs(d - complex(0.0, 2.0 * M_PI * turns)), 1e-12 * std::max(1.0, std::abs(lhs))) << z;
    }
}

TEST(LogGamma, ReferenceValues)
{
    // mpmath loggamma, 40 digits
    EXPECT_LT(std::abs(log_gamma_complex({3.0, 4.0}) - complex(-1.7566267846037841105, 4.7426644380346579282)),
              1e-13);
    EXPECT_LT(std::abs(log_gamma_complex({-2.5, 0.1}) - complex(-0.10314924404281920289, -9.314444268359838115)),
              1e-12);
    EXPECT_LT(std::abs(log_gamma_complex(10.0) - std::log(362880.0)), 1e-13);
    EXPECT_THROW(log_gamma_complex(-3.0), PoleError);
    EXPECT_THROW(log_gamma_complex(0.0), PoleError);
}

TEST(PrincipalPower, FastPathsMatchExpLog)
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const complex base = random_complex(rng, -3.0, 3.0);
        const double e = std::round(uniform(rng, -20.0, 20.0)) / 2.0;
        const complex ref = std::exp(e * std::log(base));
        EXPECT_LT(rel_gap(principal_power(base, e), ref), 1e-13) << base << "^" << e;
    }
    EXPECT_LT(rel_gap(principal_power({-4.0, 0.0}, 0.5), complex(0.0, 2.0)), 1e-15);
    EXPECT_LT(rel_gap(principal_power({2.0, 1.0}, {0.3, 0.2}), std::exp(complex(0.3, 0.2) * std::log(complex(2.0, 1.0)))),
              1e-14);
}

TEST(Denominators, NonpositiveIntegersRejected)
{
    EXPECT_THROW((ParameterVectors{{1.0}, {-2.0}}.check_denominators()), DomainError);
    EXPECT_THROW((ParameterVectors{{1.0}, {0.0}}.check_denominators()), DomainError);
    EXPECT_NO_THROW((ParameterVectors{{-2.0}, {-2.5}}.check_denominators()));
    EXPECT_NO_THROW((ParameterVectors{{}, {complex(-2.0, 1e-3)}}.check_denominators()));
}

TEST(Spike, Validation)
{
    EXPECT_THROW((SpikeArgument{0.0, 2, 2.0}.check()), DomainError);
    EXPECT_THROW((SpikeArgument{-1.0, 2, 2.0}.check()), DomainError);
    EXPECT_THROW((SpikeArgument{1.0, 0, 2.0}.check()), DomainError);
    EXPECT_THROW((SpikeArgument{1.0, 2, 0.0}.check()), DomainError);
    EXPECT_NO_THROW((SpikeArgument{1.0, 2, 2.0}.check()));
}

TEST(Decompose, RoutesFollowRatio)
{
    EXPECT_EQ(default_route({1.0, 4, 2.0}), Route::integer);
    EXPECT_EQ(default_route({1.0, 3, 2.0}), Route::half_integer);
    EXPECT_EQ(default_route({1.0, 2, 3.0}), Route::fractional);
    EXPECT_EQ(default_route({1.0, 3, 1.0}), Route::integer);

    const auto d = decompose({1.0, 5, 2.0}, Route::fractional);
    EXPECT_EQ(d.m, 2.0);
    ASSERT_TRUE(d.epsilon.has_value());
    EXPECT_DOUBLE_EQ(*d.epsilon, 0.5);

    const auto h = decompose({1.0, 1, 2.0}, Route::half_integer);
    EXPECT_EQ(h.m, -0.5);
    EXPECT_FALSE(h.epsilon.has_value());

    EXPECT_EQ(decompose({1.0, 6, 2.0}, Route::integer).m, 2.0);
    EXPECT_THROW(decompose({1.0, 3, 2.0}, Route::integer), DomainError);
    EXPECT_THROW(decompose({1.0, 4, 2.0}, Route::fractional), DomainError);
    EXPECT_THROW(decompose({1.0, 3, 1.0}, Route::half_integer), DomainError);
    const auto third = decompose({1.0, 1, 3.0}, Route::fractional);
    EXPECT_EQ(third.m, 0.0);
    EXPECT_NEAR(*third.epsilon, 1.0 / 3.0, 1e-15);
}

TEST(Validation, IntegerShiftConditions)
{
    const ParameterVectors bad_a{{2.0}, {3.5}};
    const auto report = validate_proposition_conditions(bad_a, 3.0);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.violations.front().vector, 'a');
    EXPECT_THROW(report.require(), ValidationError);

    const ParameterVectors bad_b{{0.5}, {1.0}};
    EXPECT_FALSE(validate_proposition_conditions(bad_b, 2.0).ok());

    const ParameterVectors good{{4.5, 0.5}, {2.5}};
    EXPECT_TRUE(validate_proposition_conditions(good, 2.0).ok());
    EXPECT_TRUE(validate_proposition_conditions(good, 0.0).ok());
    EXPECT_TRUE(validate_proposition_conditions({{4.2, 0.7}, {2.5}}, 0.5).ok());
    // a - m = 0 makes rho'_m vanish
    EXPECT_FALSE(validate_proposition_conditions(good, 0.5).ok());
    EXPECT_FALSE(validate_proposition_conditions({{1.0}, {0.5}}, 0.5).ok());

    try {
        validate_proposition_conditions(ParameterVectors{{1.0, 2.0}, {}}, 2.0).require();
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.violations().size(), 2u);
    }
}
