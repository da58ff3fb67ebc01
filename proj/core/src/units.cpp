#include "ndwp/units.hpp"

#include <cmath>

#include "ndwp/errors.hpp"

namespace ndwp::units {

ScaledParams scaled_from_physical(double F, double omega, double I) {
    if (!(omega > 0.0)) throw DomainError("scaled_from_physical: omega must be positive");
    if (!(I > 0.0)) throw DomainError("scaled_from_physical: action must be positive");
    if (F < 0.0) throw DomainError("scaled_from_physical: field amplitude must be non-negative");
    const double I2 = I * I;
    return ScaledParams{F * I2 * I2, omega * I2 * I, I, F, omega};
}

ScaledParams physical_from_scaled(double F0, double omega0, double n0) {
    if (!(omega0 > 0.0)) throw DomainError("physical_from_scaled: omega0 must be positive");
    if (!(n0 > 0.0)) throw DomainError("physical_from_scaled: n0 must be positive");
    if (F0 < 0.0) throw DomainError("physical_from_scaled: F0 must be non-negative");
    const double n2 = n0 * n0;
    return ScaledParams{F0, omega0, n0, F0 / (n2 * n2), omega0 / (n2 * n0)};
}

ScaledPoint scale_transform(const PhaseSpacePoint& point, Drive drive, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("scale_transform: alpha must be positive");
    if (point.q.size() != point.p.size())
        throw DomainError("scale_transform: position and momentum dimensions differ");
    const double sa = std::sqrt(alpha);
    ScaledPoint out;
    out.point.q.reserve(point.q.size());
    out.point.p.reserve(point.p.size());
    for (double x : point.q) out.point.q.push_back(x / alpha);
    for (double v : point.p) out.point.p.push_back(v * sa);
    out.point.t = point.t / (alpha * sa);
    out.drive.F = drive.F * alpha * alpha;
    out.drive.omega = drive.omega * alpha * sa;
    return out;
}

double scale_energy(double energy, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("scale_energy: alpha must be positive");
    return energy * alpha;
}

double scale_action(double action, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("scale_action: alpha must be positive");
    return action / std::sqrt(alpha);
}

double resonant_action_hydrogen(double omega, int s) {
    if (!(omega > 0.0)) throw DomainError("resonant_action_hydrogen: omega must be positive");
    if (s < 1) throw DomainError("resonant_action_hydrogen: s must be >= 1");
    return std::cbrt(static_cast<double>(s) / omega);
}

bool is_optimal_resonance(double n0, double tol) {
    return std::abs(n0 - std::round(n0)) <= tol;
}

double field_to_volt_per_cm(double F_au) { return F_au * kAtomicFieldVoltPerCm; }
double frequency_to_ghz(double omega_au) { return omega_au * kAtomicFrequencyHz * 1e-9; }
double ghz_to_frequency(double ghz) { return ghz * 1e9 / kAtomicFrequencyHz; }

}  // namespace ndwp::units
