#include "spikehyp/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace spikehyp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kCircleStart = 32;
constexpr std::size_t kArcPanels = 8;
constexpr double kLegPanelWidth = 0.5;
constexpr double kLegMaxW = 690.0;
constexpr std::size_t kMaxOscillations = 800;
// Nested trapezoid grids start a non-dyadic fraction of a turn in, so no node
// ever lands on the real axis.
constexpr double kCircleOffset = 2.0 * kPi / 96.0;

constexpr std::size_t kGaussPoints = 15;

struct GaussRule {
    std::array<double, kGaussPoints> x{};
    std::array<double, kGaussPoints> w{};
};

const GaussRule& gauss_rule()
{
    static const GaussRule rule = [] {
        using G = boost::math::quadrature::gauss<double, kGaussPoints>;
        const auto& xa = G::abscissa();
        const auto& wa = G::weights();
        GaussRule r;
        std::size_t idx = 0;
        // boost stores the nonnegative half; mirror it in ascending order
        for (std::size_t i = xa.size(); i-- > 1;) {
            r.x[idx] = -xa[i];
            r.w[idx++] = wa[i];
        }
        for (std::size_t i = 0; i < xa.size(); ++i) {
            r.x[idx] = xa[i];
            r.w[idx++] = wa[i];
        }
        return r;
    }();
    return rule;
}

struct Accumulator {
    complex sum;
    double l1 = 0.0;
    std::size_t nodes = 0;
};

class Keyhole {
public:
    Keyhole(ContourSpec& spec, const Integrand& f, std::vector<ContourNode>* record)
        : spec_(spec), f_(f), record_(record)
    {
        eta_ = spec.leg_height;
        const double delta = std::asin(eta_ / spec.radius);
        theta_max_ = kPi - delta;
        xj_ = spec.center - spec.radius * std::cos(delta);
        tau_ = spec.radius;
    }

    // (1 / 2 pi) * integral over theta of f(s) (s - c)
    Accumulator arc(std::size_t level) const
    {
        const auto& g = gauss_rule();
        const std::size_t panels = kArcPanels << level;
        const double width = 2.0 * theta_max_ / static_cast<double>(panels);
        Accumulator acc;
        for (std::size_t p = 0; p < panels; ++p) {
            const double mid = -theta_max_ + (static_cast<double>(p) + 0.5) * width;
            for (std::size_t i = 0; i < kGaussPoints; ++i) {
                const double theta = mid + 0.5 * width * g.x[i];
                const complex e = std::polar(1.0, theta);
                const complex s = spec_.center + spec_.radius * e;
                const double w = 0.5 * width * g.w[i] / (2.0 * kPi);
                const complex value = f_(s) * (s - spec_.center);
                acc.sum += value * w;
                acc.l1 += std::abs(value) * w;
                if (record_)
                    record_->push_back({s, complex(0.0, 2.0 * kPi * w) * (s - spec_.center)});
            }
        }
        acc.nodes = panels * kGaussPoints;
        return acc;
    }

    // Leg difference f(xJ - t - i eta) - f(xJ - t + i eta) integrated over a
    // t-interval given through a map on [lo, hi]; result already divided by 2 pi i.
    template <class Map>
    Accumulator leg_panel(double lo, double hi, std::size_t pieces, Map map) const
    {
        const auto& g = gauss_rule();
        Accumulator acc;
        const double width = (hi - lo) / static_cast<double>(pieces);
        const complex to_contour = 1.0 / complex(0.0, 2.0 * kPi);
        for (std::size_t p = 0; p < pieces; ++p) {
            const double mid = lo + (static_cast<double>(p) + 0.5) * width;
            for (std::size_t i = 0; i < kGaussPoints; ++i) {
                const auto [t, dt] = map(mid + 0.5 * width * g.x[i]);
                const double w = 0.5 * width * g.w[i] * dt;
                const complex lower(xj_ - t, -eta_);
                const complex upper(xj_ - t, eta_);
                const complex fl = f_(lower);
                const complex fu = f_(upper);
                acc.sum += (fl - fu) * w * to_contour;
                acc.l1 += (std::abs(fl) + std::abs(fu)) * w / (2.0 * kPi);
                if (record_) {
                    record_->push_back({lower, w});
                    record_->push_back({upper, -w});
                }
            }
        }
        acc.nodes = 2 * pieces * kGaussPoints;
        return acc;
    }

    Accumulator exp_panel(std::size_t k, std::size_t pieces) const
    {
        const double lo = kLegPanelWidth * static_cast<double>(k);
        return leg_panel(lo, lo + kLegPanelWidth, pieces, [this](double w) {
            const double e = std::exp(w);
            return std::pair{tau_ * (e - 1.0), tau_ * e};
        });
    }

    Accumulator sqrt_panel(std::size_t k, std::size_t pieces, double half_period) const
    {
        const double lo = half_period * static_cast<double>(k);
        return leg_panel(lo, lo + half_period, pieces, [](double u) { return std::pair{u * u, 2.0 * u}; });
    }

    double xj() const noexcept { return xj_; }
    double tau() const noexcept { return tau_; }

private:
    ContourSpec& spec_;
    const Integrand& f_;
    std::vector<ContourNode>* record_;
    double eta_ = 0.0;
    double theta_max_ = 0.0;
    double xj_ = 0.0;
    double tau_ = 1.0;
};

struct LegPlan {
    std::size_t panels = 0;
    std::size_t pieces = 1; // level-0 subdivisions per panel
    double half_period = 0.0;
};

struct LegValue {
    Accumulator acc;
    double tail = 0.0;
};

LegValue monotone_leg(const Keyhole& k, const LegPlan& plan, std::size_t level)
{
    LegValue out;
    double previous = 0.0;
    double last = 0.0;
    for (std::size_t p = 0; p < plan.panels; ++p) {
        const auto piece = k.exp_panel(p, plan.pieces << level);
        out.acc.sum += piece.sum;
        out.acc.l1 += piece.l1;
        out.acc.nodes += piece.nodes;
        previous = last;
        last = std::abs(piece.sum);
    }
    if (previous > 0.0 && last < previous) {
        const double q = last / previous;
        out.tail = last * q / (1.0 - q);
    } else {
        out.tail = last;
    }
    return out;
}

LegValue oscillatory_leg(const Keyhole& k, const LegPlan& plan, std::size_t level)
{
    LegValue out;
    std::vector<complex> partial;
    complex running;
    for (std::size_t p = 0; p < plan.panels; ++p) {
        const auto piece = k.sqrt_panel(p, plan.pieces << level, plan.half_period);
        running += piece.sum;
        partial.push_back(running);
        out.acc.l1 += piece.l1;
        out.acc.nodes += piece.nodes;
    }
    const auto [estimate, gap] = wynn_epsilon(partial);
    out.acc.sum = estimate;
    out.tail = gap;
    return out;
}

LegPlan plan_monotone(const Keyhole& k, const complex& arc_value, double arc_l1, double tol)
{
    LegPlan plan;
    complex running = arc_value;
    double l1 = arc_l1;
    int quiet = 0;
    for (std::size_t p = 0; kLegPanelWidth * static_cast<double>(p + 1) <= kLegMaxW; ++p) {
        const auto piece = k.exp_panel(p, 1);
        running += piece.sum;
        l1 += piece.l1;
        plan.panels = p + 1;
        const double scale = std::max(std::abs(running), 1e3 * kEps * l1);
        if (std::abs(piece.sum) <= 1e-2 * tol * scale && piece.l1 <= 1e-2 * tol * std::max(scale, l1)) {
            if (++quiet >= 3)
                break;
        } else {
            quiet = 0;
        }
    }
    return plan;
}

LegPlan plan_oscillatory(const Keyhole& k, const ContourSpec& spec, const complex& arc_value, double arc_l1,
                         double tol)
{
    LegPlan plan;
    plan.half_period = kPi / spec.frequency;
    plan.pieces = static_cast<std::size_t>(
        std::clamp(std::ceil(plan.half_period / std::sqrt(k.tau())), 1.0, 64.0));
    std::vector<complex> partial;
    complex running;
    double l1 = arc_l1;
    complex previous_estimate;
    int quiet = 0;
    for (std::size_t p = 0; p < kMaxOscillations; ++p) {
        const auto piece = k.sqrt_panel(p, plan.pieces, plan.half_period);
        running += piece.sum;
        l1 += piece.l1;
        partial.push_back(running);
        plan.panels = p + 1;
        if (partial.size() < 6)
            continue;
        const auto [estimate, gap] = wynn_epsilon(partial);
        const double scale = std::max(std::abs(arc_value + estimate), 1e3 * kEps * l1);
        const bool settled = std::abs(estimate - previous_estimate) <= 1e-2 * tol * scale && gap <= tol * scale;
        previous_estimate = estimate;
        if (settled) {
            if (++quiet >= 2)
                break;
        } else {
            quiet = 0;
        }
    }
    return plan;
}

// e^{i theta_k} on the finest trapezoid grid requested so far in this thread;
// coarser grids are strided views of it.
const complex* unit_roots(std::size_t n)
{
    thread_local std::vector<complex> table;
    if (table.size() < n || table.size() % n != 0) {
        table.resize(std::max(n, table.size()));
        const std::size_t size = table.size();
        for (std::size_t k = 0; k < size; ++k)
            table[k] = std::polar(1.0, kCircleOffset + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(size));
    }
    return table.data();
}

double magnitude(complex v) { return std::sqrt(std::norm(v)); }

QuadratureResult integrate_circle(ContourSpec& c, const Integrand& f, const QuadratureSettings& settings)
{
    auto node = [&](std::size_t k, std::size_t n) {
        const std::size_t finest = std::max<std::size_t>(n, kCircleStart << 6);
        const complex* roots = unit_roots(finest);
        const std::size_t stride = finest / n;
        return c.center + c.radius * roots[k * stride];
    };
    std::size_t n = kCircleStart;
    complex sum;
    double l1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const complex s = node(k, n);
        const complex v = f(s) * (s - c.center);
        sum += v;
        l1 += magnitude(v);
    }
    complex current = sum / static_cast<double>(n);
    std::size_t used = n;
    while (true) {
        const std::size_t n2 = 2 * n;
        if (used + n > settings.max_nodes)
            throw ConvergenceError("circle quadrature exceeded the node budget of " +
                                   std::to_string(settings.max_nodes));
        for (std::size_t k = 1; k < n2; k += 2) {
            const complex s = node(k, n2);
            const complex v = f(s) * (s - c.center);
            sum += v;
            l1 += magnitude(v);
        }
        used += n;
        n = n2;
        const complex next = sum / static_cast<double>(n);
        const double diff = std::abs(next - current);
        const double floor = 64.0 * kEps * l1 / static_cast<double>(n);
        current = next;
        if (diff <= settings.tol * std::abs(next) || diff <= 16.0 * floor) {
            c.nodes.clear();
            c.nodes.reserve(n);
            for (std::size_t k = 0; k < n; ++k) {
                const complex s = node(k, n);
                c.nodes.push_back({s, complex(0.0, 2.0 * kPi / static_cast<double>(n)) * (s - c.center)});
            }
            return {next, diff + floor, l1 / static_cast<double>(n), used};
        }
    }
}

QuadratureResult integrate_keyhole(ContourSpec& c, const Integrand& f, const QuadratureSettings& settings)
{
    if (!(c.leg_height > 0.0 && c.leg_height < c.radius))
        throw DomainError("keyhole leg height must lie in (0, radius)");
    const Keyhole probe(c, f, nullptr);
    const auto arc0 = probe.arc(0);
    const LegPlan plan = c.tail == LegTail::oscillatory ? plan_oscillatory(probe, c, arc0.sum, arc0.l1, settings.tol)
                                                        : plan_monotone(probe, arc0.sum, arc0.l1, settings.tol);
    auto leg = [&](const Keyhole& k, std::size_t level) {
        return c.tail == LegTail::oscillatory ? oscillatory_leg(k, plan, level) : monotone_leg(k, plan, level);
    };
    const double t_end = c.tail == LegTail::oscillatory
                             ? std::pow(plan.half_period * static_cast<double>(plan.panels), 2)
                             : probe.tau() * std::expm1(kLegPanelWidth * static_cast<double>(plan.panels));
    c.truncation_abscissa = probe.xj() - t_end;

    std::size_t used = arc0.nodes;
    auto first_leg = leg(probe, 0);
    used += first_leg.acc.nodes;
    complex current = arc0.sum + first_leg.acc.sum;
    for (std::size_t level = 1;; ++level) {
        const std::size_t estimate = (arc0.nodes + first_leg.acc.nodes) << level;
        if (used + estimate > settings.max_nodes)
            throw ConvergenceError("keyhole quadrature exceeded the node budget of " +
                                   std::to_string(settings.max_nodes));
        std::vector<ContourNode> record;
        const Keyhole k(c, f, &record);
        const auto arc = k.arc(level);
        const auto legs = leg(k, level);
        used += arc.nodes + legs.acc.nodes;
        const complex next = arc.sum + legs.acc.sum;
        const double l1 = arc.l1 + legs.acc.l1;
        const double diff = std::abs(next - current);
        const double floor = 64.0 * kEps * l1;
        current = next;
        if (diff <= settings.tol * std::abs(next) || diff <= 16.0 * floor) {
            c.nodes = std::move(record);
            return {next, diff + legs.tail + floor, l1, used};
        }
    }
}

} // namespace

const char* geometry_name(Geometry geometry) noexcept
{
    return geometry == Geometry::closed_circle ? "closed-circle" : "keyhole";
}

double ContourSpec::junction() const
{
    if (geometry == Geometry::closed_circle)
        return center - radius;
    return center - radius * std::cos(std::asin(leg_height / radius));
}

QuadratureResult integrate(ContourSpec& contour, const Integrand& f, const QuadratureSettings& settings)
{
    if (!(contour.radius > 0.0))
        throw DomainError("contour radius must be positive");
    if (contour.geometry == Geometry::closed_circle)
        return integrate_circle(contour, f, settings);
    if (contour.tail == LegTail::oscillatory && !(contour.frequency > 0.0))
        throw DomainError("oscillatory legs need a positive frequency");
    return integrate_keyhole(contour, f, settings);
}

std::pair<complex, double> wynn_epsilon(const std::vector<complex>& partial_sums)
{
    const std::size_t n = partial_sums.size();
    if (n == 0)
        return {0.0, 0.0};
    if (n < 3)
        return {partial_sums.back(), n == 2 ? std::abs(partial_sums[1] - partial_sums[0]) : 0.0};
    std::vector<complex> before(n + 1, 0.0); // column j - 1
    std::vector<complex> column = partial_sums;
    complex best = partial_sums.back();
    complex previous_best = partial_sums[n - 2];
    for (std::size_t j = 0; column.size() > 1; ++j) {
        std::vector<complex> next(column.size() - 1);
        for (std::size_t k = 0; k + 1 < column.size(); ++k) {
            const complex d = column[k + 1] - column[k];
            if (d == complex(0.0))
                return {column[k + 1], std::abs(best - previous_best)};
            next[k] = before[k + 1] + 1.0 / d;
        }
        before = std::move(column);
        column = std::move(next);
        if (j % 2 == 1) {
            if (!std::isfinite(column.back().real()) || !std::isfinite(column.back().imag()))
                break;
            previous_best = best;
            best = column.back();
        }
    }
    return {best, std::abs(best - previous_best)};
}

} // namespace spikehyp
