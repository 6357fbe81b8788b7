#include <gtest/gtest.h>

#include "spikehyp/scalar.hpp"
#include "support.hpp"

using namespace spikehyp;
using namespace spikehyp::testing;

namespace {

ParameterVectors random_case_params(std::mt19937_64& rng, KernelCase tag)
{
    ParameterVectors v;
    const auto order = *kernel_case_order(tag);
    for (std::size_t i = 0; i < order.first; ++i)
        v.a.push_back({uniform(rng, -2.0, 3.0), uniform(rng, -1.0, 1.0)});
    for (std::size_t i = 0; i < order.second; ++i)
        v.b.push_back({uniform(rng, 0.3, 4.0), uniform(rng, -1.0, 1.0)});
    return v;
}

complex random_point(std::mt19937_64& rng, KernelCase tag)
{
    const bool bounded = tag == KernelCase::f10 || tag == KernelCase::f21;
    const double radius = bounded ? 0.7 : 4.0;
    const double rho = uniform(rng, 0.05, radius);
    const double theta = uniform(rng, -3.0, 3.0);
    return std::polar(rho, theta);
}

} // namespace

TEST(Kernel, CaseNamesRoundTrip)
{
    for (KernelCase tag : kClassicalCases) {
        const auto parsed = parse_kernel_case(kernel_case_name(tag));
        ASSERT_TRUE(parsed.has_value());
        EXPECT_EQ(*parsed, tag);
    }
    EXPECT_FALSE(parse_kernel_case("3F2").has_value());
    EXPECT_EQ(ScalarKernel::from({{1.0}, {2.0}}).tag, KernelCase::f11);
    EXPECT_EQ(ScalarKernel::from({{1.0, 2.0, 3.0}, {2.0, 4.0}}).tag, KernelCase::generic);
    EXPECT_THROW(ScalarKernel::with_tag({{1.0}, {2.0}}, KernelCase::f21), DomainError);
    EXPECT_THROW(ScalarKernel::with_tag({{1.0}, {-1.0}}, KernelCase::f11), DomainError);
}

TEST(Kernel, ZeroArgumentIsExactlyOne)
{
    std::mt19937_64 rng(31);
    for (KernelCase tag : kClassicalCases) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto kernel = ScalarKernel::with_tag(random_case_params(rng, tag), tag);
            EXPECT_EQ(scalar_pfq(kernel, 0.0), complex(1.0));
        }
    }
}

TEST(Kernel, ReferenceValues)
{
    // mpmath at 40 digits
    struct Case {
        ParameterVectors params;
        complex z;
        complex expect;
    };
    const Case cases[] = {
        {{{0.5}, {1.5}}, -1.0, 0.7468241328124270254},
        {{{0.5, 0.5}, {1.5}}, -8.0, 0.62322524014023051339},
        {{{0.7}, {1.9}}, {-40.0, 5.0}, {0.078197457426339626508, 0.0067889423431524473656}},
        {{{}, {1.5}}, -300.0, -0.0024075499243821939103},
        {{{}, {2.5}}, {-150.0, 20.0}, {-0.01194859190316351123, 0.0047300327295351751246}},
        {{{1.0, 1.5}, {2.3}}, {0.5, 0.8660254037844386}, {0.8148514974207083399, 0.66342778471926014204}},
        {{{1.0, 1.5}, {2.3}}, {-3.0, 4.0}, {0.23524715510515979747, 0.1702386497311292857}},
        {{{1.5}, {}}, {0.3, 0.2}, {1.4716317318187622244, 0.65269349594810584538}},
        {{{1.0, 1.0}, {2.0}}, 0.99, 4.6516870565536276445},
        {{{1.0, 2.0, 0.5}, {3.0, 1.5}}, 0.4, 1.1098746740843030063},
    };
    for (const auto& c : cases)
        EXPECT_LT(rel_gap(scalar_pfq(ScalarKernel::from(c.params), c.z), c.expect), 1e-12) << c.z;
    EXPECT_LT(rel_gap(kummer_stabilize(0.5, 1.5, -1.0), complex(0.7468241328124270254)), 1e-13);
    EXPECT_LT(rel_gap(hyp1f1(0.7, 1.9, {-40.0, 5.0}), {0.078197457426339626508, 0.0067889423431524473656}), 1e-12);
    EXPECT_LT(rel_gap(hyp0f1(1.5, -300.0), complex(-0.0024075499243821939103)), 1e-12);
}

TEST(Kernel, ClosedFormOneFZeroMatchesSeries)
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const complex a{uniform(rng, -3.0, 3.0), uniform(rng, -1.0, 1.0)};
        const complex z = std::polar(uniform(rng, 0.0, 0.5), uniform(rng, -M_PI, M_PI));
        const ParameterVectors v{{a}, {}};
        EXPECT_LT(std::abs(scalar_pfq(ScalarKernel::from(v), z) - pfq_series(v, z, 1e-15).sum), 1e-12);
    }
}

TEST(Kernel, ContinuationRoutesAgreeNearUnitCircle)
{
    std::mt19937_64 rng(33);
    int compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const complex a{uniform(rng, 0.1, 2.0), 0.0};
        const complex b{uniform(rng, 0.1, 2.0), 0.0};
        const complex c{uniform(rng, 0.6, 3.0), 0.0};
        complex z;
        do {
            z = std::polar(uniform(rng, 0.9, 1.1), uniform(rng, -M_PI, M_PI));
        } while (!(z.real() < 0.9));
        std::vector<complex> values;
        for (Gauss2F1Route route : kAllGauss2F1Routes)
            if (auto v = gauss2f1_route(a, b, c, z, route, 1e-14))
                values.push_back(*v);
        const complex reference = gauss2f1_continued(a, b, c, z);
        for (const complex& v : values) {
            EXPECT_LT(rel_gap(v, reference), 1e-9) << a << b << c << z;
            ++compared;
        }
    }
    EXPECT_GT(compared, 100);
}

TEST(Kernel, DerivativeRaisesParameters)
{
    std::mt19937_64 rng(34);
    const double h = 1e-6;
    for (KernelCase tag : kClassicalCases) {
        for (int trial = 0; trial < 10; ++trial) {
            const ParameterVectors v = random_case_params(rng, tag);
            const complex z = random_point(rng, tag);
            const auto kernel = ScalarKernel::with_tag(v, tag);
            const complex numeric = (scalar_pfq(kernel, z + h) - scalar_pfq(kernel, z - h)) / (2.0 * h);
            complex factor = 1.0;
            ParameterVectors raised = v;
            for (complex& a : raised.a) {
                factor *= a;
                a += 1.0;
            }
            for (complex& b : raised.b) {
                factor /= b;
                b += 1.0;
            }
            const complex exact = factor * scalar_pfq(ScalarKernel::with_tag(raised, tag), z);
            EXPECT_LT(std::abs(numeric - exact), 1e-5 * std::max(std::abs(exact), 1e-3))
                << kernel_case_name(tag) << " z=" << z;
        }
    }
}

TEST(Kernel, RemainderDropsLeadingTerms)
{
    const ParameterVectors v{{0.7}, {1.9}};
    const auto kernel = ScalarKernel::from(v);
    const complex z{1.3, -0.4};
    complex taylor = 0.0;
    complex term = 1.0;
    for (unsigned l = 0; l < 3; ++l) {
        taylor += term;
        term *= (v.a[0] + double(l)) / (v.b[0] + double(l)) * z / double(l + 1);
    }
    EXPECT_LT(std::abs(scalar_pfq_remainder(kernel, z, 3) - (scalar_pfq(kernel, z) - taylor)), 1e-14);
    EXPECT_LT(std::abs(scalar_pfq_remainder(kernel, z, 0) - scalar_pfq(kernel, z)), 1e-15);
}

TEST(Kernel, BranchCutAndDivergence)
{
    EXPECT_THROW(scalar_pfq(ScalarKernel::from({{0.5}, {}}), 2.0), DomainError);
    EXPECT_THROW(scalar_pfq(ScalarKernel::from({{0.5, 1.0}, {1.5}}), 1.5), DomainError);
    EXPECT_THROW(scalar_pfq(ScalarKernel::from({{0.5, 1.0}, {}}), 0.1), DomainError);
}

TEST(Kernel, SeriesFallsBackOnCancellation)
{
    const auto r = pfq_series({{}, {}}, -20.0, 1e-14);
    EXPECT_TRUE(r.extended);
    EXPECT_LT(rel_gap(r.sum, complex(std::exp(-20.0))), 1e-12);
}
