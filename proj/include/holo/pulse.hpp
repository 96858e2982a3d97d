#pragma once

#include <string_view>

namespace holo {

enum class PulseShape { square, sin2, gauss_truncated };

std::string_view to_string(PulseShape shape);
/// Accepts "square", "sin2", "gauss" and "gauss_truncated". Throws InvalidInput.
PulseShape parse_pulse_shape(std::string_view name);

/// Scaling function Omega(t) that switches the block Hamiltonian on and off.
/// Omega is non-negative on [0, tau], zero outside, and integrates to `area`.
/// The truncated Gaussian is centred at tau/2 with sigma = tau/6.
class Pulse {
  public:
    Pulse(PulseShape shape, double tau, double area);

    PulseShape shape() const { return shape_; }
    double tau() const { return tau_; }
    double area() const { return area_; }

    double omega_at(double t) const;

    friend bool operator==(const Pulse &, const Pulse &) = default;

  private:
    PulseShape shape_;
    double tau_;
    double area_;
};

}  // namespace holo
