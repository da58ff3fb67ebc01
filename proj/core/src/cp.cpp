#include "ndwp/cp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "ndwp/errors.hpp"

namespace ndwp::cp {
namespace {

template <class F>
double root(F f, double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 300;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

CpFixedPoint make_point(double x, double F, double omega, double omega_c) {
    const double K = omega * (omega - omega_c);
    const double y = std::abs(x);
    CpFixedPoint fp;
    fp.x_eq = x;
    fp.q = 1.0 / (K * y * y * y);
    fp.F = F;
    fp.omega = omega;
    fp.omega_c = omega_c;
    fp.E_eq = -0.5 * K * x * x - 1.0 / y + F * x;
    fp.stable = oscillator_stability(stability_params(fp)).stable;
    return fp;
}

}  // namespace

std::vector<CpFixedPoint> cp_fixed_points(double F, double omega, double omega_c) {
    if (!(omega > 0.0)) throw DomainError("cp_fixed_points: omega must be positive");
    if (omega == omega_c) throw DomainError("cp_fixed_points: omega equals the cyclotron frequency");
    if (F < 0.0) throw DomainError("cp_fixed_points: F must be non-negative");
    const double K = omega * (omega - omega_c);
    std::vector<CpFixedPoint> out;
    // K y - 1/y^2 = sigma F on y = |x| > 0.
    for (int sigma : {+1, -1}) {
        auto g = [&](double y) { return K * y - 1.0 / (y * y) - sigma * F; };
        if (K > 0.0) {
            double lo = 1e-6 * std::cbrt(1.0 / K), hi = std::cbrt(1.0 / K);
            while (g(lo) > 0.0) lo *= 0.5;
            while (g(hi) < 0.0) hi *= 2.0;
            out.push_back(make_point(sigma * root(g, lo, hi), F, omega, omega_c));
        } else if (sigma < 0) {
            // |K| y + 1/y^2 = F has two roots around its minimum.
            const double aK = -K;
            const double ymin = std::cbrt(2.0 / aK);
            const double gmin = aK * ymin + 1.0 / (ymin * ymin);
            if (F < gmin) continue;
            auto h = [&](double y) { return aK * y + 1.0 / (y * y) - F; };
            if (F == gmin) {
                out.push_back(make_point(-ymin, F, omega, omega_c));
                continue;
            }
            double lo = ymin;
            while (h(lo) < 0.0) lo *= 0.5;
            out.push_back(make_point(-root(h, lo, ymin), F, omega, omega_c));
            double hi = ymin;
            while (h(hi) < 0.0) hi *= 2.0;
            out.push_back(make_point(-root(h, ymin, hi), F, omega, omega_c));
        }
    }
    return out;
}

double scaled_field_from_q(double q) {
    if (!(q > 0.0)) throw DomainError("scaled_field_from_q: q must be positive");
    return (1.0 - q) / std::cbrt(q);
}

double q_from_scaled_field(double F0) {
    if (F0 < 0.0) throw DomainError("q_from_scaled_field: F0 must be non-negative");
    if (F0 == 0.0) return 1.0;
    return root([&](double q) { return scaled_field_from_q(q) - F0; }, 1e-12, 1.0);
}

double field_from_q(double q, double omega, double omega_c) {
    const double K = omega * (omega - omega_c);
    return std::pow(K * K, 1.0 / 3.0) * (1.0 - q) / std::cbrt(q);
}

double energy_from_q(double q, double omega, double omega_c) {
    const double K = omega * (omega - omega_c);
    return std::cbrt(K) * (1.0 - 4.0 * q) / (2.0 * std::pow(q * q, 1.0 / 3.0));
}

StabilityParams stability_params(const CpFixedPoint& fp) {
    const double wt = fp.omega - 0.5 * fp.omega_c;
    const double y3 = std::pow(std::abs(fp.x_eq), 3);
    const double wc2 = 0.25 * fp.omega_c * fp.omega_c;
    return {(wc2 - 2.0 / y3) / (wt * wt), (wc2 + 1.0 / y3) / (wt * wt), wt};
}

StabilityVerdict oscillator_stability(const StabilityParams& p) {
    const double a = p.a, b = p.b;
    if (a >= 1.0 && b >= 1.0) return {true, 1};
    if (a >= -3.0 && a <= 1.0 && b >= -3.0 && b <= 1.0 && (a - b) * (a - b) + 8.0 * (a + b) >= 0.0)
        return {true, 2};
    return {false, 0};
}

bool linearized_stable(const StabilityParams& p, double tol) {
    // Units with omega_tilde = 1; state (x, y, px, py).
    Eigen::Matrix4d J;
    J << 0, 1, 1, 0,
        -1, 0, 0, 1,
        -p.a, 0, 0, 1,
        0, -p.b, -1, 0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(J);
    for (int i = 0; i < 4; ++i)
        if (std::abs(es.eigenvalues()(i).real()) > tol) return false;
    return true;
}

NormalModes normal_modes(double q, double omega) {
    const double disc = 9.0 * q * q - 8.0 * q;
    if (disc < 0.0)
        throw DomainError("normal_modes: unstable (q < 8/9), imaginary part " + std::to_string(std::sqrt(-disc)));
    NormalModes m;
    m.Q = std::sqrt(disc);
    m.omega_plus = omega * std::sqrt(std::max(0.0, 0.5 * (2.0 - q + m.Q)));
    m.omega_minus = omega * std::sqrt(std::max(0.0, 0.5 * (2.0 - q - m.Q)));
    m.omega_z = omega * std::sqrt(q);
    return m;
}

double harmonic_energies_cp(int n_plus, int n_minus, int n_z, const CpFixedPoint& fp, int dim) {
    if (!fp.stable) throw DomainError("harmonic_energies_cp: fixed point is unstable");
    if (dim != 2 && dim != 3) throw DomainError("harmonic_energies_cp: dim must be 2 or 3");
    const auto m = normal_modes(fp.q, fp.omega);
    double E = fp.E_eq + (n_plus + 0.5) * m.omega_plus - (n_minus + 0.5) * m.omega_minus;
    if (dim == 3) E += (n_z + 0.5) * m.omega_z;
    return E;
}

double ionization_threshold_magnetic(double F, double omega, double omega_c) {
    if (!(omega_c > omega)) throw DomainError("ionization_threshold_magnetic: no threshold for omega_c <= omega");
    return F * F / (2.0 * omega * (omega - omega_c));
}

double one_two_resonance_q() { return (41.0 + std::sqrt(3625.0)) / 108.0; }

ZvsReport zero_velocity_demo(double q, double omega) {
    const double x = std::cbrt(1.0 / (q * omega * omega));
    // ZVS: -omega^2 r^2/2 - 1/r + F x; Hessian at (x, 0).
    const double hxx = -omega * omega - 2.0 / (x * x * x);
    const double hyy = -omega * omega + 1.0 / (x * x * x);
    ZvsReport r;
    r.zvs_maximum = hxx < 0.0 && hyy < 0.0;
    r.stable = oscillator_stability({-2.0 * q, q, omega}).stable;
    return r;
}

pendulum::PendulumParams cp_pendulum(double n0, double F0, int dim) {
    if (dim != 2 && dim != 3) throw DomainError("cp_pendulum: dim must be 2 or 3");
    pendulum::PendulumParams p;
    // The planar atom has actions shifted by 1/2 (Maslov index 2).
    p.maslov_mu = dim == 2 ? 2.0 : 0.0;
    p.I_s = n0 + 0.25 * p.maslov_mu;
    const double I = p.I_s;
    const double I2 = I * I;
    p.Vs = I2;
    p.H0pp = -3.0 / (I2 * I2);
    p.H0 = -0.5 / I2;
    p.lambda = F0 / (I2 * I2);
    p.omega = 1.0 / (I2 * I);
    p.s = 1;
    return p;
}

std::vector<StabilityCell> stability_diagram(const std::vector<double>& F0_grid,
                                             const std::vector<double>& omega_c_ratio_grid, double n0) {
    const double omega = 1.0 / (n0 * n0 * n0);
    std::vector<StabilityCell> out;
    for (double r : omega_c_ratio_grid)
        for (double F0 : F0_grid) {
            StabilityCell c;
            c.F0 = F0;
            c.omega_c_ratio = r;
            if (r == 1.0) {
                out.push_back(c);
                continue;
            }
            const double F = F0 / (n0 * n0 * n0 * n0);
            const auto fps = cp_fixed_points(F, omega, r * omega);
            // Report the most stable equilibrium (stable first, then largest |x|).
            const CpFixedPoint* best = nullptr;
            for (const auto& fp : fps)
                if (!best || (fp.stable && !best->stable)) best = &fp;
            if (best) {
                const auto sp = stability_params(*best);
                c.exists = true;
                c.q = best->q;
                c.a = sp.a;
                c.b = sp.b;
                c.region = oscillator_stability(sp).region;
            }
            out.push_back(c);
        }
    return out;
}

}  // namespace ndwp::cp
