#include "ndwp/bouncer.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "ndwp/errors.hpp"
#include "ndwp/mathieu.hpp"
#include "ndwp/parallel.hpp"
#include "ndwp/units.hpp"

namespace ndwp::bouncer {

void BouncerParams::validate() const {
    if (lambda < 0.0 || !(omega > 0.0) || s < 1) throw DomainError("BouncerParams: invalid parameters");
}

BouncerH0 bouncer_h0(double I) {
    if (!(I > 0.0)) throw DomainError("bouncer_h0: I must be positive");
    BouncerH0 h;
    h.energy = 0.5 * std::pow(3.0 * kPi * I, 2.0 / 3.0);
    h.frequency = std::pow(kPi, 2.0 / 3.0) / std::cbrt(3.0 * I);
    h.curvature = -h.frequency / (3.0 * I);
    return h;
}

BouncerResonance bouncer_resonance(int s, double n0) {
    if (s < 1 || n0 < 0.0) throw DomainError("bouncer_resonance: require s >= 1, n0 >= 0");
    BouncerResonance r;
    r.I_s = n0 + 0.75;
    r.omega = std::cbrt(kPi * kPi * s * s * s / (3.0 * r.I_s));
    return r;
}

double bouncer_vs(double I, int s) {
    if (!(I > 0.0) || s < 1) throw DomainError("bouncer_vs: require I > 0, s >= 1");
    return std::pow(3.0 * I, 2.0 / 3.0) / (s * s * std::pow(kPi, 4.0 / 3.0));
}

pendulum::PendulumParams bouncer_pendulum(double n0, double lambda, int s) {
    const auto r = bouncer_resonance(s, n0);
    const auto h = bouncer_h0(r.I_s);
    pendulum::PendulumParams p;
    p.I_s = r.I_s;
    p.maslov_mu = 3.0;
    p.Vs = -bouncer_vs(r.I_s, s);
    p.H0pp = h.curvature;
    p.H0 = h.energy;
    p.lambda = lambda;
    p.omega = r.omega;
    p.s = s;
    return p;
}

double tunneling_splitting(double lambda, double omega) {
    if (!(lambda > 0.0) || !(omega > 0.0)) throw DomainError("tunneling_splitting: require lambda, omega > 0");
    return 8.0 * std::sqrt(2.0) * std::pow(lambda, 0.75) / (kPi * std::sqrt(omega)) *
           std::exp(-16.0 * kPi * std::sqrt(lambda) / (omega * omega * omega));
}

double mathieu_splitting(double lambda, double n0) {
    const auto p = bouncer_pendulum(n0, lambda, 2);
    const double q = pendulum::mathieu_q(p);
    const double a0 = mathieu::mathieu_a(0.0, q, 0);
    const double a1 = mathieu::mathieu_a(1.0, q, 0);
    return 0.5 * std::abs(p.H0pp) * std::abs(a0 - a1);
}

SlopeFit splitting_slope(double omega, const std::vector<double>& lambdas) {
    if (lambdas.size() < 2) throw DomainError("splitting_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lambdas.size());
    for (double l : lambdas) {
        const double x = std::sqrt(l), y = std::log(tunneling_splitting(l, omega));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    f.analytic = -16.0 * kPi / (omega * omega * omega);
    return f;
}

BounceState bounce_map(const BounceState& st, double lambda, double omega) {
    if (!(st.p > 0.0)) throw DomainError("bounce_map: degenerate bounce (p <= 0)");
    const double ph = st.phase, c0 = std::cos(ph), s0 = std::sin(ph);
    const double k = lambda / (omega * omega);
    // z(tau)/tau, positive right after the bounce.
    auto g = [&](double tau) {
        const double wt = omega * tau;
        const double osc = std::abs(wt) < 1e-4
                               ? (-0.5 * s0 * wt * wt - c0 * wt * wt * wt / 6.0) / tau
                               : (std::sin(ph + wt) - s0 - wt * c0) / tau;
        return st.p - 0.5 * tau - k * osc;
    };
    const double step = std::min(kTwoPi / omega / 64.0, std::max(st.p, 1e-3) / 16.0);
    double a = 0.0, b = step;
    const double limit = 4.0 * st.p + 64.0 * kTwoPi / omega + 10.0;
    while (g(b) > 0.0) {
        a = b;
        b += step;
        if (b > limit) throw DomainError("bounce_map: no landing found (sticking orbit)");
    }
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(g, a, b, tol, it);
    const double tau = 0.5 * (r.first + r.second);
    const double v = st.p - tau - (lambda / omega) * (std::cos(ph + omega * tau) - c0);
    if (!(v < 0.0)) throw DomainError("bounce_map: degenerate bounce (grazing landing)");
    return {-v, ph + omega * tau};
}

double wall_momentum(const BounceState& st, double lambda, double omega) {
    return st.p - (lambda / omega) * std::cos(st.phase);
}

BounceState standard_map(const BounceState& st, double lambda, double omega) {
    const double p = st.p - 2.0 * (lambda / omega) * std::cos(st.phase);
    return {p, st.phase + 2.0 * omega * p};
}

BounceOrbit bounce_orbit(const BounceState& start, double lambda, double omega, int n_bounces, int k) {
    BounceOrbit o;
    o.points.reserve(n_bounces + 1);
    o.points.push_back(start);
    BounceState st = start;
    double lo = start.phase, hi = start.phase;
    for (int i = 1; i <= n_bounces; ++i) {
        st = bounce_map(st, lambda, omega);
        o.points.push_back(st);
        const double rel = st.phase - kTwoPi * k * i;
        lo = std::min(lo, rel);
        hi = std::max(hi, rel);
    }
    o.librational = hi - lo < kTwoPi;
    o.I_min = 1e300;
    o.I_max = -1e300;
    for (const auto& p : o.points) {
        const double I = action_at_bounce(p.p);
        o.I_min = std::min(o.I_min, I);
        o.I_max = std::max(o.I_max, I);
    }
    return o;
}

BounceIsland bounce_island_width(double n0, double lambda, int n_seeds, int n_bounces) {
    const auto pp = bouncer_pendulum(n0, lambda, 1);
    BounceIsland out;
    out.predicted_width_I = pendulum::predicted_width(pp);
    const double omega = pp.omega;
    const double p_res = kPi / omega;
    const double dI = out.predicted_width_I;
    // dp = dI * pi / p^2 near resonance.
    const double dp = 1.5 * dI * kPi / (p_res * p_res);
    std::vector<BounceOrbit> orbits(n_seeds);
    parallel_for(static_cast<std::size_t>(n_seeds), [&](std::size_t i) {
        const double p = p_res - dp + 2.0 * dp * i / (n_seeds - 1);
        try {
            orbits[i] = bounce_orbit({p, 0.5 * kPi}, lambda, omega, n_bounces, 1);
        } catch (const DomainError&) {
            orbits[i].librational = false;
        }
    });
    double lo = 1e300, hi = -1e300;
    for (const auto& o : orbits)
        if (o.librational) {
            ++out.librational_seeds;
            lo = std::min(lo, o.I_min);
            hi = std::max(hi, o.I_max);
        }
    if (out.librational_seeds == 0) throw NotFoundError("bounce_island_width: no librational orbit");
    out.width_I = hi - lo;
    return out;
}

}  // namespace ndwp::bouncer
