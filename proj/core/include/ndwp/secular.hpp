#pragma once

#include <string>
#include <vector>

namespace ndwp::secular {

struct ChiValue {
    double chi = 0.0;
    double delta = 0.0;
};

ChiValue chi1_lp(double I, double L, double M, double psi);
ChiValue chi1_cp(double I, double L, double M, double psi);
// Planar atom with elliptic drive F (x cos wt + alpha y sin wt); M < 0 is
// contra-rotating with respect to the drive.
ChiValue chi1_ep(double I, double M, double phi, double alpha);
ChiValue chi2_lp(double I, double L, double psi);

enum class SurfaceKind { LP1, CP1, EP1, LP2 };

// A slow-variable coupling surface over (x, angle): x = L for LP/CP surfaces
// at fixed M, x = M with angle phi for the planar elliptic case.
struct ChiSurface {
    SurfaceKind kind = SurfaceKind::LP1;
    double alpha = 0.0;
    double M = 0.0;

    ChiValue operator()(double I, double x, double angle) const;
    double x_lo(double I) const;
    double x_hi(double I) const;
    int resonance_order() const { return kind == SurfaceKind::LP2 ? 2 : 1; }
    std::string name() const;
};

ChiSurface lp1_surface();
ChiSurface cp1_surface(double M);
ChiSurface ep1_surface(double alpha);
ChiSurface lp2_surface();

struct QuantizedLoop {
    int p = 0;
    double chi = 0.0;
    double action = 0.0;
    bool rotational = false;
};

struct AngularQuantization {
    int n0 = 0;
    double I = 0.0;
    double chi_separatrix = 0.0;
    double chi_min = 0.0;
    double chi_max = 0.0;
    double total_action = 0.0;
    std::vector<QuantizedLoop> loops;
};

struct AngularOptions {
    int n_angle = 512;
    int n_x = 512;
};

// Action enclosed below the level chi0, (1/2 pi) times the phase-space area
// of {chi < chi0}.
double sublevel_action(const ChiSurface& s, double I, double chi0, const AngularOptions& opt = {});

// Levels with sublevel action p + 1/2 for p = 0 .. n_levels - 1, where
// n_levels = n0 for (L, psi) surfaces and 2 n0 for the planar (M, phi) case.
AngularQuantization quantize_angular(const ChiSurface& s, double I, int n0, const AngularOptions& opt = {});

struct ManifoldLevel {
    int p = 0;
    double chi = 0.0;
    double quasienergy = 0.0;
    bool outside_island = false;
};

std::vector<ManifoldLevel> manifold_energies(const ChiSurface& s, int n0, double F0, int N,
                                             const AngularOptions& opt = {});
std::vector<ManifoldLevel> manifold_energies(const AngularQuantization& q, int s_order, double F0, int N);

// H_eff(L, psi) for the static plus LP drive problem at M = 0, with F and Fs
// in atomic units.
double static_field_effective(double I, double L, double psi, double F, double Fs);
// Scaled critical static field F_s0 above which the maximum moves to L = 0.
double critical_static_field(double I, double F0);

struct HeffMaximum {
    double L = 0.0;
    double psi = 0.0;
    double value = 0.0;
};
HeffMaximum heff_maximum(double I, double F, double Fs, int n_grid = 256);

struct SurfaceGrid {
    std::vector<double> x;
    std::vector<double> angle;
    std::vector<double> values;  // row-major, angle index fastest
};
SurfaceGrid chi_grid(const ChiSurface& s, double I, int nx, int nangle);
SurfaceGrid heff_grid(double I, double F, double Fs, int nx, int nangle);

}  // namespace ndwp::secular
