#pragma once

// Contour geometry and quadrature: periodic trapezoid on a closed circle,
// composite Gauss-Legendre on a keyhole (arc plus two legs to -infinity).

#include <functional>
#include <vector>

#include "spikehyp/core.hpp"

namespace spikehyp {

enum class Geometry { closed_circle, keyhole };
enum class GeometryChoice { automatic, closed_circle, keyhole };
enum class LegTail { monotone, oscillatory };

const char* geometry_name(Geometry geometry) noexcept;

struct QuadratureSettings {
    double tol = 1e-11;            // relative target for successive refinements
    std::size_t max_nodes = 1u << 20;
    double radius_scale = 1.0;     // multiplies the circle radius about its centre
    double leg_height_scale = 1.0; // multiplies the default keyhole leg height
    GeometryChoice geometry = GeometryChoice::automatic;
};

struct ContourNode {
    complex s;
    complex ds;
};

struct ContourSpec {
    Geometry geometry = Geometry::closed_circle;
    double center = 0.0;
    double radius = 1.0;
    double right_vertex = 1.0;
    double leg_height = 0.0;          // keyhole only
    double truncation_abscissa = 0.0; // keyhole only; real part where the legs stop
    LegTail tail = LegTail::monotone;
    double frequency = 0.0;           // oscillatory legs: integrand ~ cos(frequency * sqrt(-s))
    std::vector<ContourNode> nodes;   // nodes of the finest level used

    // Real part of the points where the legs meet the arc.
    double junction() const;
};

struct QuadratureResult {
    complex value;        // (1 / 2 pi i) * integral of f along the contour
    double err_estimate = 0.0;
    double l1_norm = 0.0; // (1 / 2 pi) * integral of |f| |ds|
    std::size_t nodes = 0;
};

using Integrand = std::function<complex(complex)>;

// Evaluates (1/2 pi i) times the integral of f along `contour`, refining until
// two successive levels agree to settings.tol or reach the rounding floor.
// Fills contour.nodes and, for keyholes, contour.truncation_abscissa.
// Throws ConvergenceError when the node budget runs out first.
QuadratureResult integrate(ContourSpec& contour, const Integrand& f, const QuadratureSettings& settings);

// Wynn epsilon extrapolation of a sequence of partial sums; returns the last
// diagonal estimate and the gap to the previous one.
std::pair<complex, double> wynn_epsilon(const std::vector<complex>& partial_sums);

} // namespace spikehyp
