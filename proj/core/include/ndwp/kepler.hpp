#pragma once

#include <array>
#include <vector>

namespace ndwp::kepler {

using Vec3 = std::array<double, 3>;

struct KeplerElements {
    double I = 1.0;
    double theta = 0.0;
    double L = 0.0;
    double psi = 0.0;
    double M = 0.0;
    double phi = 0.0;
    int dim = 3;

    double eccentricity() const;
    // Inclination from cos(beta) = M/L.
    double beta() const;
};

struct DipoleFourier {
    int m = 0;
    double Xm = 0.0;
    double Ym = 0.0;
    double Vm_1d = 0.0;
};

struct ActionAngle1D {
    double I;
    double theta;
};

struct Cartesian1D {
    double z;
    double p;
};

double kepler_energy(double I, int dim = 3);
double quantized_energy(int n, int dim);
double kepler_frequency(double I);

// Eccentric anomaly E solving theta = E - e sin E.
double eccentric_anomaly(double theta, double e);

ActionAngle1D aa_from_cartesian_1d(double z, double p, double E);
Cartesian1D cartesian_from_aa_1d(double I, double theta);

double fourier_dipole_1d(double I, int m);
// (X_m, Y_m) for m != 0; X_{-m} = X_m and Y_{-m} = -Y_m.
std::array<double, 2> fourier_dipole_orbit(double I, double L, int m);
double dipole_X0(double I, double L);
inline double dipole_Y0(double, double) { return 0.0; }
DipoleFourier dipole_coefficients(double I, double L, int m);

// Position along the orbit from Fourier synthesis truncated at |m| <= mmax.
double synthesize_1d(double I, double theta, int mmax);
std::array<double, 2> synthesize_orbit(double I, double L, double theta, int mmax);
// Exact in-plane orbit coordinates (x', y') at mean anomaly theta.
std::array<double, 2> orbit_local(double I, double L, double theta);

Vec3 euler_to_lab(const Vec3& local, double phi, double beta, double psi);
std::array<std::array<double, 3>, 3> euler_matrix(double phi, double beta, double psi);

struct Cartesian3D {
    Vec3 r;
    Vec3 p;
};

Cartesian3D cartesian_from_elements(const KeplerElements& el);
KeplerElements elements_from_cartesian(const Vec3& r, const Vec3& p);

}  // namespace ndwp::kepler
