#include "ndwp/pendulum.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "ndwp/errors.hpp"
#include "ndwp/kepler.hpp"
#include "ndwp/units.hpp"

namespace ndwp::pendulum {
namespace {

double reduce_nu(double nu) {
    double r = std::fmod(nu + 1.0, 2.0);
    if (r < 0.0) r += 2.0;
    return r - 1.0;
}

template <class F>
double bracket_root(F f, double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

double lib_action(double a, double q) {
    // Integral of sqrt(a + 2q cos w) over the allowed interval |w| <= w_t.
    const double c = std::clamp(-a / (2.0 * q), -1.0, 1.0);
    const double wt = std::acos(c);
    if (wt <= 0.0) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double w) { return std::sqrt(std::max(0.0, a + 2.0 * q * std::cos(w))); };
    return 2.0 * ts.integrate(f, 0.0, wt);
}

double rot_action(double a, double q) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double w) { return std::sqrt(std::max(0.0, a + 2.0 * q * std::cos(w))); };
    return ts.integrate(f, 0.0, kPi) / kPi;
}

}  // namespace

ResonantSystem hydrogen_system(int s) {
    if (s < 1) throw DomainError("hydrogen_system: s must be >= 1");
    ResonantSystem sys;
    sys.H0 = [](double I) { return -0.5 / (I * I); };
    sys.H0p = [](double I) { return 1.0 / (I * I * I); };
    sys.H0pp = [](double I) { return -3.0 / (I * I * I * I); };
    sys.Vs = [s](double I) { return kepler::fourier_dipole_1d(I, s); };
    sys.I_lo = 1e-3;
    sys.I_hi = 1e8;
    sys.maslov_mu = 0.0;
    return sys;
}

PendulumParams build_pendulum(const ResonantSystem& system, double omega, int s, double lambda) {
    if (!(omega > 0.0)) throw DomainError("build_pendulum: omega must be positive");
    if (s < 1) throw DomainError("build_pendulum: s must be >= 1");
    const double target = omega / s;
    auto g = [&](double I) { return system.H0p(I) - target; };
    double lo = system.I_lo, hi = system.I_hi;
    const double glo = g(lo), ghi = g(hi);
    if (!(glo * ghi < 0.0)) throw NotFoundError("build_pendulum: resonance not found in the action bracket");
    // Geometric bisection first, since the bracket spans many decades.
    for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-3; ++it) {
        const double mid = std::sqrt(lo * hi);
        if ((g(mid) < 0.0) == (glo < 0.0)) lo = mid; else hi = mid;
    }
    const double Is = bracket_root(g, lo, hi);
    PendulumParams p;
    p.I_s = Is;
    p.Vs = system.Vs(Is);
    p.H0pp = system.H0pp(Is);
    p.H0 = system.H0(Is);
    p.lambda = lambda;
    p.omega = omega;
    p.s = s;
    p.maslov_mu = system.maslov_mu;
    if (p.H0pp == 0.0)
        throw DomainError("build_pendulum: H0'' vanishes at the resonance (harmonic degeneracy)");
    return p;
}

PendulumParams hydrogen_pendulum(double n0, double F0, int s) {
    if (!(n0 > 0.0)) throw DomainError("hydrogen_pendulum: n0 must be positive");
    const double n2 = n0 * n0;
    PendulumParams p;
    p.I_s = n0;
    p.Vs = kepler::fourier_dipole_1d(n0, s);
    p.H0pp = -3.0 / (n2 * n2);
    p.H0 = -0.5 / n2;
    p.lambda = F0 / (n2 * n2);
    p.omega = s / (n2 * n0);
    p.s = s;
    return p;
}

IslandGeometry island_geometry(const PendulumParams& p) {
    IslandGeometry g;
    if (p.lambda == 0.0 || p.Vs == 0.0) return g;
    const double root = std::sqrt(std::abs(p.lambda * p.Vs / p.H0pp));
    g.delta_I = 4.0 * root;
    g.area = 16.0 / p.s * root;
    g.n_trapped_estimate = 8.0 / (kPi * p.s) * root;
    g.n_trapped = static_cast<int>(std::floor(g.n_trapped_estimate));
    g.boundary_case = std::abs(g.n_trapped_estimate - std::round(g.n_trapped_estimate)) < 1e-9;
    return g;
}

bool inside_separatrix(const PendulumParams& p, double I, double theta_hat) {
    const double sg = p.H0pp < 0.0 ? -1.0 : 1.0;
    const double dI = I - p.I_s;
    const double K = 0.5 * std::abs(p.H0pp) * dI * dI + sg * p.lambda * p.Vs * std::cos(p.s * theta_hat);
    return K < std::abs(p.lambda * p.Vs);
}

double predicted_width(const PendulumParams& p) { return island_geometry(p).delta_I; }

double mathieu_q(const PendulumParams& p) {
    return 4.0 * p.lambda * p.Vs / (static_cast<double>(p.s) * p.s * p.H0pp);
}

double mathieu_nu(const PendulumParams& p, int j) { return reduce_nu(-2.0 * (p.n0() - j) / p.s); }

double harmonic_frequency(const PendulumParams& p) {
    return p.s * std::sqrt(std::abs(p.lambda * p.Vs * p.H0pp));
}

double harmonic_levels(const PendulumParams& p, int N, int k) {
    if (N < 0) throw DomainError("harmonic_levels: N must be >= 0");
    const double wh = harmonic_frequency(p);
    const double sgn = p.H0pp > 0.0 ? 1.0 : -1.0;
    return p.H0 - p.omega * p.I_s / p.s + (k + 0.25 * p.maslov_mu) * p.omega / p.s -
           sgn * (std::abs(p.lambda * p.Vs) - (N + 0.5) * wh);
}

double separatrix_area_numeric(const PendulumParams& p) {
    if (p.lambda == 0.0 || p.Vs == 0.0) return 0.0;
    const double root = std::sqrt(std::abs(p.lambda * p.Vs / p.H0pp));
    boost::math::quadrature::tanh_sinh<double> ts;
    // One island spans 2 pi / s in theta_hat; the separatrix half-width is
    // 2 root |sin(s theta_hat / 2)| measured from the unstable point.
    auto f = [&](double th) { return 2.0 * root * std::abs(std::sin(0.5 * p.s * th)); };
    return 2.0 * ts.integrate(f, 0.0, kTwoPi / p.s);
}

EbkValue ebk_char_value(double nu, double q, int kappa) {
    if (kappa < 0) throw DomainError("ebk_char_value: kappa must be >= 0");
    nu = reduce_nu(nu);
    const double aq = std::abs(q);
    EbkValue out;
    const double lib_count = 4.0 * std::sqrt(aq) / kPi;
    if (aq > 0.0 && kappa + 0.5 < lib_count) {
        const double target = kTwoPi * (kappa + 0.5);
        out.a = bracket_root([&](double a) { return lib_action(a, aq) - target; }, -2.0 * aq, 2.0 * aq);
        out.librational = true;
        out.quantum_number = kappa;
        return out;
    }
    // Rotational: kappa-th smallest |2m + nu|.
    std::vector<double> ks;
    for (int m = -kappa - 2; m <= kappa + 2; ++m) ks.push_back(std::abs(2.0 * m + nu));
    std::sort(ks.begin(), ks.end());
    const double k = ks[static_cast<std::size_t>(kappa)];
    out.quantum_number = kappa;
    if (aq == 0.0) {
        out.a = k * k;
        return out;
    }
    if (k <= lib_count) {
        out.near_separatrix = true;
        out.a = 2.0 * aq;
        return out;
    }
    double hi = std::max(k * k + 2.0 * aq, 2.0 * aq + 1.0);
    while (rot_action(hi, aq) < k) hi *= 2.0;
    out.a = bracket_root([&](double a) { return rot_action(a, aq) - k; }, 2.0 * aq, hi);
    out.near_separatrix = (out.a - 2.0 * aq) < 0.05 * (2.0 * aq);
    return out;
}

std::vector<EbkLevel> ebk_levels(const PendulumParams& p, double boundary_exponent, int count) {
    if (count < 1) throw DomainError("ebk_levels: count must be >= 1");
    const double q = mathieu_q(p);
    const double nu = reduce_nu(boundary_exponent);
    const double scale = p.s * p.s / 8.0 * p.H0pp;
    std::vector<EbkLevel> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int kappa = 0; kappa < count; ++kappa) {
        const auto v = ebk_char_value(nu, q, kappa);
        EbkLevel lvl;
        lvl.kappa = kappa;
        lvl.a = v.a;
        lvl.librational = v.librational;
        lvl.quasienergy = p.H0 + 0.5 * nu * p.omega + scale * v.a;
        if (v.near_separatrix) lvl.warning = "separatrix proximity: EBK estimate unreliable";
        out.push_back(lvl);
    }
    return out;
}

}  // namespace ndwp::pendulum
