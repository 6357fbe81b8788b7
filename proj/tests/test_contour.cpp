#include <algorithm>

#include <gtest/gtest.h>

#include "spikehyp/scalar.hpp"
#include "support.hpp"

using namespace spikehyp;
using namespace spikehyp::testing;

namespace {

std::string describe(const Draw& d)
{
    std::string s = "alpha=" + std::to_string(d.spike.alpha) + " r=" + std::to_string(d.spike.r) +
                    " x=" + std::to_string(d.spike.x) + " a=";
    for (auto v : d.params.a)
        s += std::to_string(v.real()) + " ";
    s += "b=";
    for (auto v : d.params.b)
        s += std::to_string(v.real()) + " ";
    s += "y=";
    for (auto v : d.y.y)
        s += std::to_string(v) + " ";
    return s;
}

} // namespace

TEST(Weight, ProductOfPrincipalPowers)
{
    const Spectrum y{{0.5, 1.0, 2.0}};
    const complex s{0.7, 0.4};
    complex expect = 1.0;
    for (double v : y.y)
        expect *= std::pow(s - v, -0.5);
    EXPECT_LT(rel_gap(weight_delta_y(s, y, 2.0), expect), 1e-14);
    EXPECT_LT(rel_gap(weight_delta_y(s, y, 1.0), expect * expect), 1e-14);
    EXPECT_THROW(weight_delta_y(-1.0, y, 2.0), DomainError);
    EXPECT_THROW(weight_delta_y(1.0, y, 1.0), PoleError);
    EXPECT_NO_THROW(weight_delta_y(0.2, y, 1.0));
}

TEST(Geometry, VertexAndShape)
{
    const Spectrum y{{0.5, 2.0}};
    EXPECT_DOUBLE_EQ(right_vertex(y, {0.1, 2, 2.0}, {}), 4.0);
    EXPECT_DOUBLE_EQ(right_vertex(y, {0.4, 2, 2.0}, {{1.0}, {}}), 0.5 * (2.0 + 2.5));
    EXPECT_DOUBLE_EQ(right_vertex(y, {0.01, 2, 2.0}, {{1.0}, {}}), 0.5 * (2.0 + 20.0));
    EXPECT_THROW(right_vertex(y, {0.5, 2, 2.0}, {{1.0}, {}}), DomainError);

    const Spectrum y3{{0.5, 1.0, 2.0}};
    const auto odd = build_contour(y3, {1.0, 3, 2.0}, {}, {}, Route::half_integer);
    EXPECT_EQ(odd.geometry, Geometry::keyhole);
    EXPECT_DOUBLE_EQ(odd.leg_height, 0.05);
    EXPECT_EQ(build_contour(y3, {1.0, 3, 2.0}, {}, {}, Route::fractional).geometry, Geometry::closed_circle);
    EXPECT_EQ(build_contour(y3, {1.0, 3, 2.0}, {{}, {1.5}}, {}, Route::half_integer).tail, LegTail::oscillatory);

    QuadratureSettings forced;
    forced.geometry = GeometryChoice::closed_circle;
    EXPECT_THROW(build_contour(y3, {1.0, 3, 2.0}, {}, forced, Route::half_integer), DomainError);
    forced.geometry = GeometryChoice::keyhole;
    EXPECT_EQ(build_contour(y3, {1.0, 4, 2.0}, {}, forced).geometry, Geometry::keyhole);

    QuadratureSettings shrunk;
    shrunk.radius_scale = 0.3;
    EXPECT_THROW(build_contour(y3, {1.0, 4, 2.0}, {}, shrunk), DomainError);
    QuadratureSettings grown;
    grown.radius_scale = 3.0;
    EXPECT_THROW(build_contour(y3, {0.4, 4, 2.0}, {{1.0}, {}}, grown), DomainError);
}

TEST(Contour, ReferenceValues)
{
    // averages of pFq(x q'Yq) over Dirichlet(1/alpha) weights, mpmath quadrature at 25 digits
    struct Case {
        ParameterVectors params;
        SpikeArgument spike;
        Spectrum y;
        double expect;
    };
    const Case cases[] = {
        {{}, {0.3, 2, 2.0}, {{0.5, 1.5}}, 1.357462447638541},
        {{{0.7}, {1.9}}, {0.6, 3, 2.0}, {{0.3, 0.8, 1.2}}, 1.1978812962631963},
        {{{0.5, 1.2}, {2.1}}, {0.4, 2, 2.0}, {{0.5, 1.5}}, 1.1560176635948808},
        {{{}, {1.7}}, {2.0, 3, 2.0}, {{0.4, 1.0, 2.0}}, 3.1607155672504485},
        {{{0.8}, {}}, {0.5, 3, 1.0}, {{0.3, 0.7, 1.2}}, 1.4644292005949818},
        {{{0.7}, {1.9}}, {1.5, 2, 3.0}, {{0.5, 1.0}}, 1.6162442031483977},
        {{}, {4.0, 3, 2.0}, {{0.5, 1.0, 2.0}}, 354.35093293435309},
        {{{-1.3}, {2.4}}, {3.0, 2, 1.0}, {{0.6, 1.1}}, -0.19205481096874337},
    };
    for (const auto& c : cases) {
        for (Route route : admissible_routes(c.spike)) {
            const auto r = eval_contour(c.params, c.spike, c.y, {}, route);
            EXPECT_LT(rel_gap(r.value, complex(c.expect)), 1e-11) << route_name(route) << " " << c.expect;
            EXPECT_EQ(r.method, method_for(route));
        }
    }
}

TEST(Contour, OracleEquivalence)
{
    std::mt19937_64 rng(41);
    for (double alpha : {1.0, 2.0}) {
        for (int r : {2, 3, 4, 6}) {
            for (KernelCase tag : kClassicalCases) {
                for (int trial = 0; trial < 20; ++trial) {
                    const Draw d = draw_case(rng, tag, alpha, r);
                    const auto c = eval_contour(d.params, d.spike, d.y);
                    const auto s = series_eval(d.params, d.spike, d.y, tight_series());
                    ASSERT_LT(rel_gap(c.value, s.value), 1e-7) << describe(d);
                    // realness for real inputs
                    EXPECT_LE(std::abs(c.value.imag()), c.err_estimate + 1e-15 * std::abs(c.value)) << describe(d);
                }
            }
        }
    }
}

TEST(Contour, FractionalAndHalfIntegerRoutesAgree)
{
    std::mt19937_64 rng(42);
    for (int r : {3, 5}) {
        for (KernelCase tag : kClassicalCases) {
            for (int trial = 0; trial < 20; ++trial) {
                const Draw d = draw_case(rng, tag, 2.0, r);
                const auto ii = eval_contour_ii(d.params, d.spike, d.y);
                const auto iii = eval_contour_iii(d.params, d.spike, d.y);
                ASSERT_LT(rel_gap(ii.value, iii.value), 1e-7) << describe(d);
                EXPECT_EQ(iii.method, Method::contour_iii);
            }
        }
    }
}

TEST(Contour, RadiusIndependence)
{
    std::mt19937_64 rng(43);
    QuadratureSettings wide;
    wide.radius_scale = 1.3;
    for (KernelCase tag : kClassicalCases) {
        for (double alpha : {1.0, 2.0}) {
            Draw d = draw_case(rng, tag, alpha, 4);
            if (tag == KernelCase::f10 || tag == KernelCase::f21)
                d.spike.x = 0.5 / d.y.max();
            const auto base = eval_contour(d.params, d.spike, d.y);
            const auto scaled = eval_contour(d.params, d.spike, d.y, {wide});
            EXPECT_LT(rel_gap(scaled.value, base.value), 1e-10) << describe(d);
        }
    }
}

TEST(Contour, ScalarReduction)
{
    std::mt19937_64 rng(44);
    for (KernelCase tag : kClassicalCases) {
        for (auto [alpha, r] : {std::pair{1.0, 3}, {2.0, 2}, {2.0, 3}, {2.0, 5}, {3.0, 2}}) {
            Draw d = draw_case(rng, tag, alpha, r);
            const double level = d.y.y.front();
            d.y.y.assign(r, level);
            const complex expect = scalar_pfq(ScalarKernel::from(d.params), d.spike.x * level);
            for (Route route : admissible_routes(d.spike))
                EXPECT_LT(rel_gap(eval_contour(d.params, d.spike, d.y, {}, route).value, expect), 1e-9)
                    << describe(d) << route_name(route);
        }
    }
}

TEST(Contour, PermutationInvariance)
{
    std::mt19937_64 rng(45);
    for (KernelCase tag : kClassicalCases) {
        for (auto [alpha, r] : {std::pair{1.0, 4}, {2.0, 3}, {2.0, 4}, {3.0, 4}}) {
            Draw d = draw_case(rng, tag, alpha, r);
            const auto base = eval_contour(d.params, d.spike, d.y).value;
            std::shuffle(d.y.y.begin(), d.y.y.end(), rng);
            EXPECT_LT(rel_gap(eval_contour(d.params, d.spike, d.y).value, base), 1e-12) << describe(d);
        }
    }
}

TEST(Contour, ZeroArgumentAndErrors)
{
    const Spectrum y{{0.5, 1.5}};
    EXPECT_EQ(eval_contour({{0.5}, {1.5}}, {0.0, 2, 2.0}, y).value, complex(1.0));
    EXPECT_THROW(eval_contour({{0.5, 1.0}, {}}, {0.1, 2, 2.0}, y), DomainError);
    EXPECT_THROW(eval_contour({{0.5}, {}}, {0.8, 2, 2.0}, y), DomainError);
    EXPECT_THROW(eval_contour({}, {0.5, 3, 2.0}, y), DomainError);
    EXPECT_THROW(eval_contour({}, {0.5, 2, 2.0}, y, {}, Route::fractional), DomainError);
    EXPECT_THROW(eval_contour({{}, {-1.0}}, {0.5, 2, 2.0}, y), DomainError);
    // a = 2 lies in {1, ..., m} for m = 2
    EXPECT_THROW(eval_contour({{2.0}, {3.5}}, {0.5, 3, 1.0}, Spectrum{{0.5, 1.0, 1.5}}), ValidationError);
    EXPECT_EQ(admissible_routes({1.0, 3, 2.0}).size(), 2u);
    EXPECT_EQ(admissible_routes({1.0, 4, 2.0}).size(), 2u);
    EXPECT_EQ(admissible_routes({1.0, 4, 1.0}).size(), 1u);
}

TEST(Contour, RepeatedEigenvalues)
{
    std::mt19937_64 rng(46);
    for (KernelCase tag : kClassicalCases) {
        for (double alpha : {1.0, 2.0}) {
            for (int r : {3, 4, 6}) {
                Spectrum y = random_spectrum(rng, r);
                y.y[1] = y.y[2] = y.y[0];
                const Draw d = draw_case(rng, tag, alpha, y);
                const auto c = eval_contour(d.params, d.spike, d.y);
                const auto s = series_eval(d.params, d.spike, d.y, tight_series());
                EXPECT_LT(rel_gap(c.value, s.value), 1e-7) << describe(d);
            }
        }
    }
}

TEST(Contour, ExplicitKernelTag)
{
    ContourOptions o;
    o.kernel = KernelCase::f11;
    const Spectrum y{{0.5, 1.5}};
    EXPECT_NO_THROW(eval_contour({{0.5}, {1.5}}, {0.5, 2, 2.0}, y, o));
    EXPECT_THROW(eval_contour({{0.5}, {}}, {0.5, 2, 2.0}, y, o), DomainError);
}
