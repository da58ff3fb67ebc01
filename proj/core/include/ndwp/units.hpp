#pragma once

#include <vector>

namespace ndwp {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFineStructure = 1.0 / 137.035999084;
inline constexpr double kAtomicTimeSeconds = 2.4188843265857e-17;
inline constexpr double kAtomicFieldVoltPerCm = 5.14220674763e9;
inline constexpr double kAtomicFrequencyHz = 1.0 / (kTwoPi * kAtomicTimeSeconds);

namespace units {

struct ScaledParams {
    double F0 = 0.0;
    double omega0 = 0.0;
    double n0 = 0.0;
    double F = 0.0;
    double omega = 0.0;
};

struct PhaseSpacePoint {
    std::vector<double> q;
    std::vector<double> p;
    double t = 0.0;

    std::size_t dim() const noexcept { return q.size(); }
};

struct Drive {
    double F = 0.0;
    double omega = 0.0;
};

ScaledParams scaled_from_physical(double F, double omega, double I);
ScaledParams physical_from_scaled(double F0, double omega0, double n0);

struct ScaledPoint {
    PhaseSpacePoint point;
    Drive drive;
};

// r -> r/alpha, p -> p sqrt(alpha), t -> t alpha^{-3/2}, F -> F alpha^2,
// omega -> omega alpha^{3/2}.  Energies pick up a factor alpha.
ScaledPoint scale_transform(const PhaseSpacePoint& point, Drive drive, double alpha);
double scale_energy(double energy, double alpha);
double scale_action(double action, double alpha);

double resonant_action_hydrogen(double omega, int s);
bool is_optimal_resonance(double n0, double tol = 1e-9);

// Conversion helpers for the command-line boundary.
double field_to_volt_per_cm(double F_au);
double frequency_to_ghz(double omega_au);
double ghz_to_frequency(double ghz);

}  // namespace units
}  // namespace ndwp
