#include "ndwp/kepler.hpp"

#include <algorithm>
#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/special.hpp"
#include "ndwp/units.hpp"

namespace ndwp::kepler {
namespace {

double wrap_2pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

double ecc_from(double I, double L) {
    if (!(I > 0.0)) throw DomainError("kepler: action must be positive");
    if (L < 0.0 || L > I * (1.0 + 1e-14)) throw DomainError("kepler: need 0 <= L <= I");
    const double r = L / I;
    return std::sqrt(std::max(0.0, 1.0 - r * r));
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double KeplerElements::eccentricity() const { return ecc_from(I, L); }

double KeplerElements::beta() const {
    if (L <= 0.0) return 0.0;
    return std::acos(std::clamp(M / L, -1.0, 1.0));
}

double kepler_energy(double I, int dim) {
    if (dim < 1 || dim > 3) throw DomainError("kepler_energy: dim must be 1, 2 or 3");
    if (!(I > 0.0)) throw DomainError("kepler_energy: action must be positive");
    return -0.5 / (I * I);
}

double quantized_energy(int n, int dim) {
    switch (dim) {
        case 1:
        case 3:
            if (n < 1) throw DomainError("quantized_energy: n must be >= 1");
            return -0.5 / (static_cast<double>(n) * n);
        case 2: {
            if (n < 0) throw DomainError("quantized_energy: n must be >= 0 in 2D");
            const double nh = n + 0.5;
            return -0.5 / (nh * nh);
        }
        default:
            throw DomainError("quantized_energy: dim must be 1, 2 or 3");
    }
}

double kepler_frequency(double I) {
    if (!(I > 0.0)) throw DomainError("kepler_frequency: action must be positive");
    return 1.0 / (I * I * I);
}

double eccentric_anomaly(double theta, double e) {
    if (e < 0.0 || e > 1.0) throw DomainError("eccentric_anomaly: e outside [0,1]");
    const double t = wrap_2pi(theta);
    // Bracket [0, 2pi] with f monotone; safeguarded Newton.
    double lo = 0.0;
    double hi = kTwoPi;
    double E = (e > 0.8) ? kPi : t;
    for (int it = 0; it < 100; ++it) {
        const double f = E - e * std::sin(E) - t;
        if (f > 0.0) hi = E; else lo = E;
        const double df = 1.0 - e * std::cos(E);
        double next = E - f / df;
        if (!(next > lo && next < hi) || df <= 1e-300) next = 0.5 * (lo + hi);
        if (std::abs(next - E) < 1e-15) {
            E = next;
            break;
        }
        E = next;
    }
    return E;
}

ActionAngle1D aa_from_cartesian_1d(double z, double p, double E) {
    if (!(E < 0.0)) throw DomainError("aa_from_cartesian_1d: energy must be negative");
    const double a = -1.0 / E;
    if (!(z > 0.0) || z > a * (1.0 + 1e-12))
        throw DomainError("aa_from_cartesian_1d: need 0 < z <= -1/E");
    const double I = std::sqrt(0.5 * a);
    const double eta0 = 2.0 * std::asin(std::sqrt(std::min(1.0, z / a)));
    const double eta = (p >= 0.0) ? eta0 : kTwoPi - eta0;
    return {I, wrap_2pi(eta - std::sin(eta))};
}

Cartesian1D cartesian_from_aa_1d(double I, double theta) {
    if (!(I > 0.0)) throw DomainError("cartesian_from_aa_1d: action must be positive");
    const double eta = eccentric_anomaly(theta, 1.0);
    const double c = std::cos(eta);
    const double z = I * I * (1.0 - c);
    const double p = std::sin(eta) / (I * (1.0 - c));
    return {z, p};
}

double fourier_dipole_1d(double I, int m) {
    if (!(I > 0.0)) throw DomainError("fourier_dipole_1d: action must be positive");
    const int am = std::abs(m);
    if (am == 0) return 1.5 * I * I;
    return -I * I * special::bessel_jp(am, am) / am;
}

std::array<double, 2> fourier_dipole_orbit(double I, double L, int m) {
    if (m == 0) throw DomainError("fourier_dipole_orbit: use dipole_X0/dipole_Y0 for m = 0");
    const double e = ecc_from(I, L);
    const double I2 = I * I;
    const double x = m * e;
    const double X = I2 * special::bessel_jp(m, x) / m;
    // sqrt(1-e^2) J_m(me)/(me) with J_m(me)/(me) evaluated as a regular function.
    const double Y = I2 * (L / I) * special::bessel_j_over_x(m, x);
    return {X, Y};
}

double dipole_X0(double I, double L) { return -1.5 * ecc_from(I, L) * I * I; }

DipoleFourier dipole_coefficients(double I, double L, int m) {
    DipoleFourier d;
    d.m = m;
    if (m == 0) {
        d.Xm = dipole_X0(I, L);
        d.Ym = 0.0;
    } else {
        const auto xy = fourier_dipole_orbit(I, L, m);
        d.Xm = xy[0];
        d.Ym = xy[1];
    }
    d.Vm_1d = fourier_dipole_1d(I, m);
    return d;
}

double synthesize_1d(double I, double theta, int mmax) {
    double z = fourier_dipole_1d(I, 0);
    for (int m = 1; m <= mmax; ++m) z += 2.0 * fourier_dipole_1d(I, m) * std::cos(m * theta);
    return z;
}

std::array<double, 2> synthesize_orbit(double I, double L, double theta, int mmax) {
    double x = dipole_X0(I, L);
    double y = 0.0;
    for (int m = 1; m <= mmax; ++m) {
        const auto xy = fourier_dipole_orbit(I, L, m);
        x += 2.0 * xy[0] * std::cos(m * theta);
        y += 2.0 * xy[1] * std::sin(m * theta);
    }
    return {x, y};
}

std::array<double, 2> orbit_local(double I, double L, double theta) {
    const double e = ecc_from(I, L);
    const double E = eccentric_anomaly(theta, e);
    const double a = I * I;
    return {a * (std::cos(E) - e), a * (L / I) * std::sin(E)};
}

std::array<std::array<double, 3>, 3> euler_matrix(double phi, double beta, double psi) {
    const double cf = std::cos(phi), sf = std::sin(phi);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    return {{{cf * cb * cp - sf * sp, -cf * cb * sp - sf * cp, cf * sb},
             {sf * cb * cp + cf * sp, -sf * cb * sp + cf * cp, sf * sb},
             {-sb * cp, sb * sp, cb}}};
}

Vec3 euler_to_lab(const Vec3& local, double phi, double beta, double psi) {
    const auto R = euler_matrix(phi, beta, psi);
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = R[i][0] * local[0] + R[i][1] * local[1] + R[i][2] * local[2];
    return out;
}

Cartesian3D cartesian_from_elements(const KeplerElements& el) {
    const double e = el.eccentricity();
    const double E = eccentric_anomaly(el.theta, e);
    const double a = el.I * el.I;
    const double b = a * (el.L / el.I);
    const double Edot = 1.0 / (el.I * el.I * el.I * (1.0 - e * std::cos(E)));
    const Vec3 rl{a * (std::cos(E) - e), b * std::sin(E), 0.0};
    const Vec3 vl{-a * std::sin(E) * Edot, b * std::cos(E) * Edot, 0.0};
    const double beta = el.beta();
    return {euler_to_lab(rl, el.phi, beta, el.psi), euler_to_lab(vl, el.phi, beta, el.psi)};
}

KeplerElements elements_from_cartesian(const Vec3& r, const Vec3& p) {
    const double rn = norm(r);
    if (!(rn > 0.0)) throw DomainError("elements_from_cartesian: position at the nucleus");
    const double E = 0.5 * dot(p, p) - 1.0 / rn;
    if (!(E < 0.0)) throw DomainError("elements_from_cartesian: unbound orbit");
    KeplerElements el;
    el.dim = 3;
    el.I = 1.0 / std::sqrt(-2.0 * E);
    const Vec3 Lv = cross(r, p);
    el.L = std::min(norm(Lv), el.I);
    el.M = Lv[2];
    if (!(el.L > 0.0)) throw DomainError("elements_from_cartesian: degenerate straight-line orbit");
    const double cb = std::clamp(Lv[2] / el.L, -1.0, 1.0);
    const double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
    el.phi = (sb > 1e-14) ? wrap_2pi(std::atan2(Lv[1], Lv[0])) : 0.0;
    const double cf = std::cos(el.phi), sf = std::sin(el.phi);
    const Vec3 xpp{cf * cb, sf * cb, -sb};
    const Vec3 ypp{-sf, cf, 0.0};
    const double a = el.I * el.I;
    const double e = el.eccentricity();
    if (e < 1e-10) {
        // Circular orbit: perihelion undefined, measure the mean longitude.
        el.psi = 0.0;
        el.theta = wrap_2pi(std::atan2(dot(r, ypp), dot(r, xpp)));
        return el;
    }
    const Vec3 pxL = cross(p, Lv);
    const Vec3 A{pxL[0] - r[0] / rn, pxL[1] - r[1] / rn, pxL[2] - r[2] / rn};
    el.psi = wrap_2pi(std::atan2(dot(A, ypp), dot(A, xpp)));
    const double cE = (1.0 - rn / a) / e;
    const double sE = dot(r, p) / (e * std::sqrt(a));
    const double Ean = std::atan2(sE, cE);
    el.theta = wrap_2pi(Ean - e * std::sin(Ean));
    return el;
}

}  // namespace ndwp::kepler
