#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ndwp/units.hpp"

namespace ndwp::classical {

using Vec3 = std::array<double, 3>;

enum class Polarization { LP, CP, EP };

struct DriveSpec {
    Polarization polarization = Polarization::LP;
    double alpha = 0.0;  // ellipticity, EP only
    double F = 0.0;
    double omega = 1.0;
    double phase0 = 0.0;
    double Fs = 0.0;       // static field along z
    double omega_c = 0.0;  // cyclotron frequency, magnetic field along z

    // Oscillating field vector at time t (LP along z, CP/EP in the x-y plane).
    Vec3 field(double t) const;
    double phase(double t) const { return omega * t + phase0; }
    void validate() const;
};

struct IntegratorOptions {
    double tol = 1e-10;
    double escape_factor = 1e4;
    std::uint64_t max_steps = 200'000'000;
};

// Regularised propagator of the driven Coulomb problem.  One spatial
// dimension uses z = Q^2, dt = z ds; two and three dimensions use the
// Kustaanheimo-Stiefel map.  advance_to lands exactly on the requested time.
class Propagator {
public:
    Propagator(const units::PhaseSpacePoint& initial, const DriveSpec& drive,
               const IntegratorOptions& options = {});
    ~Propagator();
    Propagator(Propagator&&) noexcept;
    Propagator& operator=(Propagator&&) noexcept;

    void advance_to(double t);

    units::PhaseSpacePoint point() const;
    double time() const;
    // Unperturbed Kepler energy v^2/2 - 1/r.
    double kepler_energy() const;
    double action() const;
    // 1D: unwrapped mean anomaly.  2D/3D: unwrapped polar angle in the x-y plane.
    double tracked_angle() const;
    bool escaped() const;
    std::uint64_t steps() const;

    // Starts recording the extent of tracked_angle - (omega t + phase0)/s.
    void track_phase_window(int s);
    double phase_window() const;
    int dim() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> p;
    std::vector<double> energy;
    bool escaped = false;
    double escape_time = 0.0;
};

// Samples the trajectory at the requested times (ascending).
Trajectory integrate_driven(const units::PhaseSpacePoint& initial, const DriveSpec& drive,
                            const std::vector<double>& sample_times,
                            const IntegratorOptions& options = {});

struct Seed1D {
    double I;
    double theta;
};

struct SectionPoint {
    std::size_t seed_id = 0;
    double t = 0.0;
    double I = 0.0;
    double theta = 0.0;
};

struct SeedSummary {
    bool escaped = false;
    bool librational = false;
    double window = 0.0;  // extent of theta - (omega t + phase0)/s
};

struct SurfaceOfSection {
    std::vector<SectionPoint> points;
    std::vector<SeedSummary> seeds;
    double phase = 0.0;
    int s = 1;
    DriveSpec params;

    bool librational(const SectionPoint& pt) const { return seeds[pt.seed_id].librational; }
};

// Stroboscopic section of the 1D LP problem.  Seeds are (I, theta) at the
// first time where the drive phase equals `phase`.
SurfaceOfSection poincare_sos(const DriveSpec& drive, double phase, const std::vector<Seed1D>& seeds,
                              int n_periods, int s = 1, const IntegratorOptions& options = {});

// Seeds on a vertical line theta = theta0, I in [I_lo, I_hi].
std::vector<Seed1D> seed_line(double theta0, double I_lo, double I_hi, int count);
std::vector<Seed1D> seed_grid(double I_lo, double I_hi, int nI, int ntheta);

// I-extent of the outermost librational curve near theta_cut.
double island_width_measure(const SurfaceOfSection& sos, double theta_cut, double window = 0.25);

struct Swarm {
    std::vector<units::PhaseSpacePoint> samples;
    std::vector<double> weights;
};

struct SwarmStatistics {
    double mean_I = 0.0;
    double mean_angle = 0.0;
    std::array<double, 3> cov{};  // (var I, cov I-angle, var angle)
    double bound_weight = 0.0;
    double escaped_weight = 0.0;
    double trapped_weight = 0.0;
};

struct SwarmResult {
    Swarm swarm;
    std::vector<bool> escaped;
    std::vector<bool> trapped;
    std::vector<double> action;
    std::vector<double> angle;  // unwrapped tracked angle
    SwarmStatistics stats;
};

// Gaussian swarm of planar circular orbits (action I0 +- sigma_I, longitude
// theta0 +- sigma_theta), equal weights.
Swarm circular_swarm(double I0, double theta0, double sigma_I, double sigma_theta, std::size_t count,
                     std::uint64_t seed);

SwarmResult propagate_swarm(const Swarm& swarm, const DriveSpec& drive, double t, int s = 1,
                            const IntegratorOptions& options = {});

std::string to_string(Polarization p);
Polarization polarization_from_string(const std::string& s);

}  // namespace ndwp::classical
