#include "ndwp/secular.hpp"

#include <algorithm>
#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/kepler.hpp"
#include "ndwp/mathieu.hpp"
#include "ndwp/parallel.hpp"
#include "ndwp/pendulum.hpp"
#include "ndwp/special.hpp"
#include "ndwp/units.hpp"

namespace ndwp::secular {
namespace {

double inclination_factor(double L, double M) {
    if (M == 0.0) return 1.0;
    if (L <= 0.0) return 0.0;
    const double r = M / L;
    return std::sqrt(std::max(0.0, 1.0 - r * r));
}

void check_LM(double I, double L, double M) {
    const double tol = 1e-12 * std::max(1.0, I);
    if (!(I > 0.0) || L < -tol || L > I + tol || std::abs(M) > L + tol)
        throw DomainError("secular: require 0 <= |M| <= L <= I");
}

double clampL(double I, double L) { return std::clamp(L, 0.0, I); }

}  // namespace

ChiValue chi1_lp(double I, double L, double M, double psi) {
    check_LM(I, L, M);
    L = clampL(I, L);
    const auto xy = kepler::fourier_dipole_orbit(I, L, 1);
    const double f = inclination_factor(L, M);
    const double c = std::cos(psi), s = std::sin(psi);
    return {f * std::hypot(xy[0] * c, xy[1] * s), std::atan2(xy[1] * s, xy[0] * c)};
}

ChiValue chi1_cp(double I, double L, double M, double psi) {
    check_LM(I, L, M);
    L = clampL(I, L);
    const auto xy = kepler::fourier_dipole_orbit(I, L, 1);
    const double r = L > 0.0 ? M / L : 0.0;
    const double V = std::cos(psi) * (xy[1] + r * xy[0]);
    const double U = std::sin(psi) * (xy[0] + r * xy[1]);
    return {std::hypot(V, U), std::atan2(U, V)};
}

ChiValue chi1_ep(double I, double M, double phi, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw DomainError("chi1_ep: alpha must lie in [0, 1]");
    if (!(I > 0.0) || std::abs(M) > I * (1.0 + 1e-12)) throw DomainError("chi1_ep: require |M| <= I");
    const double L = std::min(std::abs(M), I);
    auto xy = kepler::fourier_dipole_orbit(I, L, 1);
    if (M < 0.0) xy[1] = -xy[1];
    const double V = std::cos(phi) * (xy[0] + alpha * xy[1]);
    const double U = std::sin(phi) * (xy[1] + alpha * xy[0]);
    return {std::hypot(V, U), std::atan2(U, V)};
}

ChiValue chi2_lp(double I, double L, double psi) {
    check_LM(I, L, 0.0);
    L = clampL(I, L);
    const auto xy = kepler::fourier_dipole_orbit(I, L, 2);
    const double c = std::cos(psi), s = std::sin(psi);
    return {std::hypot(xy[0] * c, xy[1] * s), std::atan2(xy[1] * s, xy[0] * c)};
}

ChiValue ChiSurface::operator()(double I, double x, double angle) const {
    switch (kind) {
        case SurfaceKind::LP1: return chi1_lp(I, x, M, angle);
        case SurfaceKind::CP1: return chi1_cp(I, x, M, angle);
        case SurfaceKind::EP1: return chi1_ep(I, x, angle, alpha);
        case SurfaceKind::LP2: return chi2_lp(I, x, angle);
    }
    return {};
}

double ChiSurface::x_lo(double I) const { return kind == SurfaceKind::EP1 ? -I : std::abs(M); }
double ChiSurface::x_hi(double I) const { return I; }

std::string ChiSurface::name() const {
    switch (kind) {
        case SurfaceKind::LP1: return "LP1";
        case SurfaceKind::CP1: return "CP1";
        case SurfaceKind::EP1: return "EP1";
        case SurfaceKind::LP2: return "LP2";
    }
    return "?";
}

ChiSurface lp1_surface() { return {SurfaceKind::LP1, 0.0, 0.0}; }
ChiSurface cp1_surface(double M) { return {SurfaceKind::CP1, 0.0, M}; }
ChiSurface ep1_surface(double alpha) { return {SurfaceKind::EP1, alpha, 0.0}; }
ChiSurface lp2_surface() { return {SurfaceKind::LP2, 0.0, 0.0}; }

namespace {

// chi sampled on x nodes (inclusive ends) and angle midpoints.
struct SampledSurface {
    double x_lo = 0.0, x_hi = 0.0;
    int nx = 0, na = 0;
    std::vector<double> v;  // [a * nx + i]

    double row_measure(int a, double chi0) const {
        const double h = (x_hi - x_lo) / (nx - 1);
        const double* r = &v[static_cast<std::size_t>(a) * nx];
        double m = 0.0;
        for (int i = 0; i + 1 < nx; ++i) {
            const double f0 = r[i] - chi0, f1 = r[i + 1] - chi0;
            if (f0 < 0.0 && f1 < 0.0) {
                m += h;
            } else if (f0 < 0.0 || f1 < 0.0) {
                const double t = f0 / (f0 - f1);
                m += f0 < 0.0 ? h * t : h * (1.0 - t);
            }
        }
        return m;
    }

    double action(double chi0) const {
        double m = 0.0;
        for (int a = 0; a < na; ++a) m += row_measure(a, chi0);
        return m / na;  // (1/2pi) * sum(row) * (2pi/na)
    }
};

SampledSurface sample(const ChiSurface& s, double I, const AngularOptions& opt) {
    if (opt.n_x < 8 || opt.n_angle < 8) throw DomainError("quantize_angular: grid too small");
    SampledSurface g;
    g.x_lo = s.x_lo(I);
    g.x_hi = s.x_hi(I);
    g.nx = opt.n_x;
    g.na = opt.n_angle;
    g.v.resize(static_cast<std::size_t>(g.nx) * g.na);
    parallel_for(static_cast<std::size_t>(g.na), [&](std::size_t a) {
        const double ang = kTwoPi * (a + 0.5) / g.na;
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_lo + (g.x_hi - g.x_lo) * i / (g.nx - 1);
            g.v[a * g.nx + i] = s(I, x, ang).chi;
        }
    });
    return g;
}

}  // namespace

double sublevel_action(const ChiSurface& s, double I, double chi0, const AngularOptions& opt) {
    return sample(s, I, opt).action(chi0);
}

AngularQuantization quantize_angular(const ChiSurface& s, double I, int n0, const AngularOptions& opt) {
    if (n0 < 1) throw DomainError("quantize_angular: n0 must be >= 1");
    if (!(I > 0.0)) throw DomainError("quantize_angular: I must be positive");
    const auto g = sample(s, I, opt);
    AngularQuantization out;
    out.n0 = n0;
    out.I = I;
    out.chi_min = *std::min_element(g.v.begin(), g.v.end());
    out.chi_max = *std::max_element(g.v.begin(), g.v.end());
    double sep = -1.0;
    for (int a = 0; a < g.na; ++a) {
        const auto b = g.v.begin() + static_cast<std::ptrdiff_t>(a) * g.nx;
        sep = std::max(sep, *std::min_element(b, b + g.nx));
    }
    out.chi_separatrix = sep;
    out.total_action = g.action(out.chi_max * (1.0 + 1e-12) + 1e-300);
    const int n_levels = s.kind == SurfaceKind::EP1 ? 2 * n0 : n0;
    out.loops.resize(n_levels);
    const double span = out.chi_max - out.chi_min;
    parallel_for(static_cast<std::size_t>(n_levels), [&](std::size_t k) {
        const double target = k + 0.5;
        QuantizedLoop lp;
        lp.p = static_cast<int>(k);
        if (target >= out.total_action) {
            lp.chi = out.chi_max;
            lp.action = out.total_action;
        } else {
            double lo = out.chi_min, hi = out.chi_max;
            for (int it = 0; it < 100 && hi - lo > 1e-13 * span; ++it) {
                const double mid = 0.5 * (lo + hi);
                (g.action(mid) < target ? lo : hi) = mid;
            }
            lp.chi = 0.5 * (lo + hi);
            lp.action = g.action(lp.chi);
        }
        lp.rotational = lp.chi > out.chi_separatrix;
        out.loops[k] = lp;
    });
    return out;
}

std::vector<ManifoldLevel> manifold_energies(const AngularQuantization& q, int s_order, double F0, int N) {
    if (N < 0) throw DomainError("manifold_energies: N must be >= 0");
    std::vector<ManifoldLevel> out;
    const double n0 = q.I;
    const double n2 = n0 * n0;
    for (const auto& loop : q.loops) {
        pendulum::PendulumParams pp;
        pp.I_s = n0;
        pp.Vs = loop.chi;
        pp.H0pp = -3.0 / (n2 * n2);
        pp.H0 = -0.5 / n2;
        pp.lambda = F0 / (n2 * n2);
        pp.omega = s_order / (n2 * n0);
        pp.s = s_order;
        ManifoldLevel lv;
        lv.p = loop.p;
        lv.chi = loop.chi;
        const int j = 0;
        if (N < pendulum::island_geometry(pp).n_trapped) {
            lv.quasienergy = mathieu::quasienergy_from_mathieu(pp, N, j);
        } else {
            lv.outside_island = true;
            const double nu = pendulum::mathieu_nu(pp, j);
            // Same replica as the Mathieu branch.
            lv.quasienergy = pendulum::ebk_levels(pp, nu, N + 1).back().quasienergy - 0.5 * nu * pp.omega -
                             (pp.n0() - j) * pp.omega / s_order;
        }
        out.push_back(lv);
    }
    return out;
}

std::vector<ManifoldLevel> manifold_energies(const ChiSurface& s, int n0, double F0, int N,
                                             const AngularOptions& opt) {
    return manifold_energies(quantize_angular(s, n0, n0, opt), s.resonance_order(), F0, N);
}

double static_field_effective(double I, double L, double psi, double F, double Fs) {
    if (F < 0.0 || Fs < 0.0) throw DomainError("static_field_effective: fields must be non-negative");
    const double chi = chi1_lp(I, L, 0.0, psi).chi;
    const double I2 = I * I;
    const double Omega = std::sqrt(3.0 * F * chi) / I2;
    return -0.5 * Omega + F * chi + Fs * kepler::dipole_X0(I, clampL(I, L)) * std::cos(psi);
}

double critical_static_field(double I, double F0) {
    if (!(I > 0.0) || F0 < 0.0) throw DomainError("critical_static_field: invalid arguments");
    const double j = special::bessel_jp(1, 1.0);
    return (2.0 / 3.0) * std::abs(F0 * j - std::sqrt(3.0 * F0 * j) / (4.0 * I));
}

HeffMaximum heff_maximum(double I, double F, double Fs, int n_grid) {
    HeffMaximum best{0.0, 0.0, -1e300};
    const int nL = n_grid, nP = 2 * n_grid;
    for (int i = 0; i <= nL; ++i)
        for (int k = 0; k < nP; ++k) {
            const double L = I * i / nL, psi = kTwoPi * k / nP;
            const double h = static_field_effective(I, L, psi, F, Fs);
            if (h > best.value) best = {L, psi, h};
        }
    // Pattern search refinement inside the box.
    double dL = I / nL, dP = kTwoPi / nP;
    for (int it = 0; it < 200 && (dL > 1e-12 * I || dP > 1e-12); ++it) {
        bool moved = false;
        for (auto [a, b] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            const double L = std::clamp(best.L + a * dL, 0.0, I);
            const double psi = best.psi + b * dP;
            const double h = static_field_effective(I, L, psi, F, Fs);
            if (h > best.value) {
                best = {L, psi, h};
                moved = true;
            }
        }
        if (!moved) {
            dL *= 0.5;
            dP *= 0.5;
        }
    }
    best.psi = std::fmod(std::fmod(best.psi, kTwoPi) + kTwoPi, kTwoPi);
    return best;
}

SurfaceGrid chi_grid(const ChiSurface& s, double I, int nx, int nangle) {
    SurfaceGrid g;
    for (int i = 0; i < nx; ++i) g.x.push_back(s.x_lo(I) + (s.x_hi(I) - s.x_lo(I)) * i / (nx - 1));
    for (int k = 0; k < nangle; ++k) g.angle.push_back(kTwoPi * k / nangle);
    for (double x : g.x)
        for (double a : g.angle) g.values.push_back(s(I, x, a).chi);
    return g;
}

SurfaceGrid heff_grid(double I, double F, double Fs, int nx, int nangle) {
    SurfaceGrid g;
    for (int i = 0; i < nx; ++i) g.x.push_back(I * i / (nx - 1));
    for (int k = 0; k < nangle; ++k) g.angle.push_back(kTwoPi * k / nangle);
    for (double x : g.x)
        for (double a : g.angle) g.values.push_back(static_field_effective(I, x, a, F, Fs));
    return g;
}

}  // namespace ndwp::secular
