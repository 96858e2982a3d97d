#include "holo/pulse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "holo/error.hpp"

namespace holo {

std::string_view to_string(PulseShape shape) {
    switch (shape) {
        case PulseShape::square: return "square";
        case PulseShape::sin2: return "sin2";
        case PulseShape::gauss_truncated: return "gauss_truncated";
    }
    return "square";
}

PulseShape parse_pulse_shape(std::string_view name) {
    if (name == "square") return PulseShape::square;
    if (name == "sin2") return PulseShape::sin2;
    if (name == "gauss" || name == "gauss_truncated") return PulseShape::gauss_truncated;
    throw Error(ErrorKind::InvalidInput, "unknown pulse shape '" + std::string(name) + "'");
}

Pulse::Pulse(PulseShape shape, double tau, double area) : shape_(shape), tau_(tau), area_(area) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorKind::InvalidInput, "pulse duration must be > 0");
    if (!(area > 0.0) || !std::isfinite(area)) throw Error(ErrorKind::InvalidInput, "pulse area must be > 0");
}

double Pulse::omega_at(double t) const {
    if (t < 0.0 || t > tau_) return 0.0;
    using std::numbers::pi;
    switch (shape_) {
        case PulseShape::square:
            return area_ / tau_;
        case PulseShape::sin2: {
            const double s = std::sin(pi * t / tau_);
            return 2.0 * area_ / tau_ * s * s;
        }
        case PulseShape::gauss_truncated: {
            const double sigma = tau_ / 6.0;
            const double x = (t - 0.5 * tau_) / sigma;
            // integral of exp(-x^2/2) over [-3, 3] in units of sigma
            const double norm = sigma * std::sqrt(2.0 * pi) * std::erf(3.0 / std::numbers::sqrt2);
            return area_ / norm * std::exp(-0.5 * x * x);
        }
    }
    return 0.0;
}

}  // namespace holo
