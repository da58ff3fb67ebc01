#include "ndwp/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/numeric/odeint.hpp>

#include "ndwp/errors.hpp"
#include "ndwp/kepler.hpp"
#include "ndwp/parallel.hpp"

namespace ndwp::classical {
namespace odeint = boost::numeric::odeint;

Vec3 DriveSpec::field(double t) const {
    const double ph = phase(t);
    switch (polarization) {
        case Polarization::LP:
            return {0.0, 0.0, F * std::cos(ph)};
        case Polarization::CP:
            return {F * std::cos(ph), F * std::sin(ph), 0.0};
        case Polarization::EP:
            return {F * std::cos(ph), alpha * F * std::sin(ph), 0.0};
    }
    return {0.0, 0.0, 0.0};
}

void DriveSpec::validate() const {
    if (F < 0.0) throw DomainError("DriveSpec: F must be non-negative");
    if (!(omega > 0.0)) throw DomainError("DriveSpec: omega must be positive");
    if (polarization == Polarization::EP && (alpha < 0.0 || alpha > 1.0))
        throw DomainError("DriveSpec: EP ellipticity must lie in [0,1]");
}

std::string to_string(Polarization p) {
    switch (p) {
        case Polarization::LP: return "LP";
        case Polarization::CP: return "CP";
        case Polarization::EP: return "EP";
    }
    return "?";
}

Polarization polarization_from_string(const std::string& s) {
    if (s == "LP" || s == "lp") return Polarization::LP;
    if (s == "CP" || s == "cp") return Polarization::CP;
    if (s == "EP" || s == "ep") return Polarization::EP;
    throw DomainError("unknown polarization '" + s + "'");
}

namespace {

double wrap_pi(double a) {
    a = std::fmod(a + kPi, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a - kPi;
}

// State layouts (s is the regularised time):
//   1D : Q, Q', h, t
//   KS : u1..u4, u1'..u4', h, t
using State1 = std::array<double, 4>;
using StateKS = std::array<double, 10>;

struct System1D {
    const DriveSpec* drive;
    void operator()(const State1& x, State1& dx, double) const {
        const double Q = x[0], Qp = x[1], h = x[2], t = x[3];
        const double acc = -(drive->field(t)[2] + drive->Fs);
        const double Q2 = Q * Q;
        dx[0] = Qp;
        dx[1] = 0.5 * h * Q + 0.5 * Q2 * Q * acc;
        dx[2] = 2.0 * Q * Qp * acc;
        dx[3] = Q2;
    }
};

inline std::array<double, 3> ks_position(const StateKS& x) {
    const double u1 = x[0], u2 = x[1], u3 = x[2], u4 = x[3];
    return {u1 * u1 - u2 * u2 - u3 * u3 + u4 * u4, 2.0 * (u1 * u2 - u3 * u4), 2.0 * (u1 * u3 + u2 * u4)};
}

// L(u) v for the first three rows.
inline std::array<double, 3> ks_L(const StateKS& x, const double* v) {
    const double u1 = x[0], u2 = x[1], u3 = x[2], u4 = x[3];
    return {u1 * v[0] - u2 * v[1] - u3 * v[2] + u4 * v[3], u2 * v[0] + u1 * v[1] - u4 * v[2] - u3 * v[3],
            u3 * v[0] + u4 * v[1] + u1 * v[2] + u2 * v[3]};
}

// L(u)^T (P, 0).
inline std::array<double, 4> ks_LT(const StateKS& x, const std::array<double, 3>& P) {
    const double u1 = x[0], u2 = x[1], u3 = x[2], u4 = x[3];
    return {u1 * P[0] + u2 * P[1] + u3 * P[2], -u2 * P[0] + u1 * P[1] + u4 * P[2],
            -u3 * P[0] - u4 * P[1] + u1 * P[2], u4 * P[0] - u3 * P[1] + u2 * P[2]};
}

inline std::array<double, 3> ks_velocity(const StateKS& x) {
    const double r = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    const auto Lu = ks_L(x, &x[4]);
    return {2.0 * Lu[0] / r, 2.0 * Lu[1] / r, 2.0 * Lu[2] / r};
}

struct SystemKS {
    const DriveSpec* drive;
    void operator()(const StateKS& x, StateKS& dx, double) const {
        const double r = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        const double h = x[8], t = x[9];
        const auto Fv = drive->field(t);
        std::array<double, 3> P{-Fv[0], -Fv[1], -Fv[2] - drive->Fs};
        if (drive->omega_c != 0.0 && r > 0.0) {
            const auto v = ks_velocity(x);
            P[0] += -drive->omega_c * v[1];
            P[1] += drive->omega_c * v[0];
        }
        const auto LtP = ks_LT(x, P);
        for (int i = 0; i < 4; ++i) {
            dx[i] = x[4 + i];
            dx[4 + i] = 0.5 * h * x[i] + 0.5 * r * LtP[i];
        }
        dx[8] = 2.0 * (x[4] * LtP[0] + x[5] * LtP[1] + x[6] * LtP[2] + x[7] * LtP[3]);
        dx[9] = r;
    }
};

}  // namespace

struct Propagator::Impl {
    DriveSpec drive;
    IntegratorOptions opt;
    int dimension = 1;
    double I_init = 1.0;
    bool is_escaped = false;
    std::uint64_t n_steps = 0;
    double s = 0.0;
    double ds = 0.0;
    State1 x1{};
    StateKS xk{};
    double angle = 0.0;
    bool angle_valid = false;

    int window_s = 0;
    double win_min = 0.0;
    double win_max = 0.0;

    double t() const { return dimension == 1 ? x1[3] : xk[9]; }
    double h() const { return dimension == 1 ? x1[2] : xk[8]; }
    double radius() const {
        if (dimension == 1) return x1[0] * x1[0];
        return xk[0] * xk[0] + xk[1] * xk[1] + xk[2] * xk[2] + xk[3] * xk[3];
    }

    double raw_angle(bool& ok) const {
        ok = true;
        if (dimension == 1) {
            const double hh = x1[2];
            const double z = x1[0] * x1[0];
            if (!(hh < 0.0) || !(z > 0.0)) {
                ok = false;
                return 0.0;
            }
            const double a = -1.0 / hh;
            const double eta0 = 2.0 * std::asin(std::sqrt(std::min(1.0, z / a)));
            // Q' has the sign of p for Q > 0; p = 2Q'/Q.
            const double p_sign = x1[1] * x1[0];
            const double eta = p_sign >= 0.0 ? eta0 : kTwoPi - eta0;
            return eta - std::sin(eta);
        }
        const auto r = ks_position(xk);
        return std::atan2(r[1], r[0]);
    }

    void update_angle() {
        bool ok = false;
        const double a = raw_angle(ok);
        if (!ok) return;
        if (!angle_valid) {
            angle = a;
            angle_valid = true;
        } else {
            angle += wrap_pi(a - angle);
        }
        if (window_s > 0) {
            const double v = angle - drive.phase(t()) / window_s;
            win_min = std::min(win_min, v);
            win_max = std::max(win_max, v);
        }
    }

    double ds_max() const {
        const double hh = h();
        const double I = hh < 0.0 ? 1.0 / std::sqrt(-2.0 * hh) : I_init;
        return 0.5 * I;
    }

    template <class State, class Sys>
    void advance(State& x, const Sys& sys, double t_target, int ti) {
        auto stepper = odeint::make_controlled(opt.tol, opt.tol, odeint::runge_kutta_fehlberg78<State>());
        odeint::runge_kutta_fehlberg78<State> fixed;
        while (!is_escaped && x[ti] < t_target) {
            if (++n_steps > opt.max_steps)
                throw AccuracyError("Propagator: step budget exhausted", t());
            const State x_old = x;
            const double s_old = s;
            ds = std::min(ds, ds_max());
            int tries = 0;
            while (stepper.try_step(sys, x, s, ds) == odeint::fail) {
                if (++tries > 200) throw AccuracyError("Propagator: step size underflow", ds);
            }
            if (x[ti] >= t_target) {
                const double span = s - s_old;
                double lo = 0.0, hi = span;
                double d = span * (t_target - x_old[ti]) / (x[ti] - x_old[ti]);
                State xd = x_old;
                for (int it = 0; it < 60; ++it) {
                    xd = x_old;
                    fixed.do_step(sys, xd, s_old, d);
                    const double g = xd[ti] - t_target;
                    if (g > 0.0) hi = d; else lo = d;
                    State dxd;
                    sys(xd, dxd, s_old + d);
                    double next = d - g / dxd[ti];
                    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
                    if (std::abs(g) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(t_target) ||
                        std::abs(next - d) <= 1e-15 * span)
                        break;
                    d = next;
                }
                x = xd;
                x[ti] = t_target;
                s = s_old + d;
            }
            update_angle();
            const double rr = radius();
            if (rr > opt.escape_factor * I_init * I_init && h() > 0.0) is_escaped = true;
        }
    }
};

Propagator::Propagator(const units::PhaseSpacePoint& initial, const DriveSpec& drive,
                       const IntegratorOptions& options)
    : impl_(std::make_unique<Impl>()) {
    drive.validate();
    if (!(options.tol > 0.0)) throw DomainError("Propagator: tolerance must be positive");
    if (initial.q.size() != initial.p.size() || initial.q.empty() || initial.q.size() > 3)
        throw DomainError("Propagator: initial point must have matching 1, 2 or 3 dimensional q and p");
    auto& m = *impl_;
    m.drive = drive;
    m.opt = options;
    m.dimension = static_cast<int>(initial.q.size());
    if (m.dimension == 1) {
        if (drive.polarization != Polarization::LP)
            throw DomainError("Propagator: the 1D model supports linear polarization only");
        const double z = initial.q[0];
        if (!(z > 0.0)) throw DomainError("Propagator: 1D position must be positive");
        const double p = initial.p[0];
        const double Q = std::sqrt(z);
        m.x1 = {Q, 0.5 * p * Q, 0.5 * p * p - 1.0 / z, initial.t};
    } else {
        std::array<double, 3> r{0.0, 0.0, 0.0}, v{0.0, 0.0, 0.0};
        for (int i = 0; i < m.dimension; ++i) {
            r[i] = initial.q[i];
            v[i] = initial.p[i];
        }
        const double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        if (!(rn > 0.0)) throw DomainError("Propagator: initial point at the Coulomb singularity");
        StateKS& x = m.xk;
        if (r[0] >= 0.0) {
            x[0] = std::sqrt(0.5 * (rn + r[0]));
            x[1] = r[1] * x[0] / (rn + r[0]);
            x[2] = r[2] * x[0] / (rn + r[0]);
            x[3] = 0.0;
        } else {
            x[1] = std::sqrt(0.5 * (rn - r[0]));
            x[0] = r[1] * x[1] / (rn - r[0]);
            x[3] = r[2] * x[1] / (rn - r[0]);
            x[2] = 0.0;
        }
        const auto up = ks_LT(x, v);
        for (int i = 0; i < 4; ++i) x[4 + i] = 0.5 * up[i];
        x[8] = 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) - 1.0 / rn;
        x[9] = initial.t;
    }
    const double h = m.h();
    m.I_init = h < 0.0 ? 1.0 / std::sqrt(-2.0 * h) : std::sqrt(m.radius());
    m.ds = 0.05 * m.ds_max();
    m.update_angle();
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

void Propagator::advance_to(double t) {
    auto& m = *impl_;
    if (m.dimension == 1) {
        System1D sys{&m.drive};
        m.advance(m.x1, sys, t, 3);
    } else {
        SystemKS sys{&m.drive};
        m.advance(m.xk, sys, t, 9);
    }
}

units::PhaseSpacePoint Propagator::point() const {
    const auto& m = *impl_;
    units::PhaseSpacePoint pt;
    if (m.dimension == 1) {
        const double Q = m.x1[0];
        pt.q = {Q * Q};
        pt.p = {2.0 * m.x1[1] / Q};
        pt.t = m.x1[3];
        return pt;
    }
    const auto r = ks_position(m.xk);
    const auto v = ks_velocity(m.xk);
    pt.q.assign(r.begin(), r.begin() + m.dimension);
    pt.p.assign(v.begin(), v.begin() + m.dimension);
    pt.t = m.xk[9];
    return pt;
}

double Propagator::time() const { return impl_->t(); }
double Propagator::kepler_energy() const { return impl_->h(); }
double Propagator::action() const {
    const double h = impl_->h();
    return h < 0.0 ? 1.0 / std::sqrt(-2.0 * h) : std::numeric_limits<double>::infinity();
}
double Propagator::tracked_angle() const { return impl_->angle; }
bool Propagator::escaped() const { return impl_->is_escaped; }
std::uint64_t Propagator::steps() const { return impl_->n_steps; }
int Propagator::dim() const { return impl_->dimension; }

void Propagator::track_phase_window(int s) {
    if (s < 1) throw DomainError("track_phase_window: s must be >= 1");
    auto& m = *impl_;
    m.window_s = s;
    const double v = m.angle - m.drive.phase(m.t()) / s;
    m.win_min = m.win_max = v;
}

double Propagator::phase_window() const { return impl_->win_max - impl_->win_min; }

Trajectory integrate_driven(const units::PhaseSpacePoint& initial, const DriveSpec& drive,
                            const std::vector<double>& sample_times, const IntegratorOptions& options) {
    Propagator prop(initial, drive, options);
    Trajectory tr;
    for (double ts : sample_times) {
        if (ts < prop.time()) throw DomainError("integrate_driven: sample times must be ascending");
        prop.advance_to(ts);
        if (prop.escaped()) {
            tr.escaped = true;
            tr.escape_time = prop.time();
            break;
        }
        const auto pt = prop.point();
        tr.t.push_back(pt.t);
        tr.q.push_back(pt.q);
        tr.p.push_back(pt.p);
        tr.energy.push_back(prop.kepler_energy());
    }
    return tr;
}

}  // namespace ndwp::classical

namespace ndwp::classical {
namespace {

double wrap_2pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

}  // namespace

std::vector<Seed1D> seed_line(double theta0, double I_lo, double I_hi, int count) {
    if (count < 1) throw DomainError("seed_line: count must be >= 1");
    std::vector<Seed1D> seeds;
    seeds.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
        seeds.push_back({I_lo + f * (I_hi - I_lo), theta0});
    }
    return seeds;
}

std::vector<Seed1D> seed_grid(double I_lo, double I_hi, int nI, int ntheta) {
    if (nI < 1 || ntheta < 1) throw DomainError("seed_grid: counts must be >= 1");
    std::vector<Seed1D> seeds;
    for (int j = 0; j < ntheta; ++j) {
        const double th = kTwoPi * (j + 0.5) / ntheta;
        for (const auto& sd : seed_line(th, I_lo, I_hi, nI)) seeds.push_back(sd);
    }
    return seeds;
}

SurfaceOfSection poincare_sos(const DriveSpec& drive, double phase, const std::vector<Seed1D>& seeds,
                              int n_periods, int s, const IntegratorOptions& options) {
    drive.validate();
    if (n_periods < 1) throw DomainError("poincare_sos: n_periods must be >= 1");
    if (s < 1) throw DomainError("poincare_sos: s must be >= 1");
    SurfaceOfSection sos;
    sos.phase = phase;
    sos.s = s;
    sos.params = drive;
    sos.seeds.resize(seeds.size());
    const double period = kTwoPi / drive.omega;
    const double t0 = wrap_2pi(phase - drive.phase0) / drive.omega;
    std::vector<std::vector<SectionPoint>> per_seed(seeds.size());

    parallel_for(seeds.size(), [&](std::size_t i) {
        const auto c = kepler::cartesian_from_aa_1d(seeds[i].I, seeds[i].theta);
        units::PhaseSpacePoint init;
        init.q = {c.z};
        init.p = {c.p};
        init.t = t0;
        Propagator prop(init, drive, options);
        prop.track_phase_window(s);
        auto& pts = per_seed[i];
        pts.push_back({i, t0, seeds[i].I, wrap_2pi(seeds[i].theta)});
        for (int k = 1; k <= n_periods; ++k) {
            prop.advance_to(t0 + k * period);
            if (prop.escaped()) {
                sos.seeds[i].escaped = true;
                break;
            }
            const double I = prop.action();
            if (!std::isfinite(I)) continue;
            pts.push_back({i, prop.time(), I, wrap_2pi(prop.tracked_angle())});
        }
        sos.seeds[i].window = prop.phase_window();
        sos.seeds[i].librational = !sos.seeds[i].escaped && sos.seeds[i].window < kTwoPi;
    });
    for (auto& v : per_seed)
        for (auto& pt : v) sos.points.push_back(pt);
    return sos;
}

double island_width_measure(const SurfaceOfSection& sos, double theta_cut, double window) {
    bool any_lib = false;
    for (const auto& sd : sos.seeds) any_lib = any_lib || sd.librational;
    if (!any_lib) throw NotFoundError("island_width_measure: island unresolved (no librational orbits)");
    for (double w = window; w <= kPi + 1e-12; w *= 2.0) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& pt : sos.points) {
            if (!sos.librational(pt)) continue;
            if (std::abs(wrap_pi(pt.theta - theta_cut)) > w) continue;
            lo = std::min(lo, pt.I);
            hi = std::max(hi, pt.I);
        }
        if (hi >= lo) return hi - lo;
    }
    throw NotFoundError("island_width_measure: no librational points near the cut");
}

Swarm circular_swarm(double I0, double theta0, double sigma_I, double sigma_theta, std::size_t count,
                     std::uint64_t seed) {
    if (!(I0 > 0.0)) throw DomainError("circular_swarm: I0 must be positive");
    if (count == 0) throw DomainError("circular_swarm: count must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Swarm sw;
    sw.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double I = I0 + sigma_I * gauss(rng);
        if (I <= 0.1 * I0) I = 0.1 * I0;
        const double a = theta0 + sigma_theta * gauss(rng);
        units::PhaseSpacePoint pt;
        pt.q = {I * I * std::cos(a), I * I * std::sin(a), 0.0};
        pt.p = {-std::sin(a) / I, std::cos(a) / I, 0.0};
        sw.samples.push_back(pt);
    }
    sw.weights.assign(count, 1.0 / static_cast<double>(count));
    return sw;
}

SwarmResult propagate_swarm(const Swarm& swarm, const DriveSpec& drive, double t, int s,
                            const IntegratorOptions& options) {
    if (swarm.samples.size() != swarm.weights.size())
        throw DomainError("propagate_swarm: samples and weights differ in length");
    double wsum = 0.0;
    for (double w : swarm.weights) {
        if (w < 0.0) throw DomainError("propagate_swarm: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12) throw DomainError("propagate_swarm: weights must sum to 1");
    const std::size_t n = swarm.samples.size();
    SwarmResult res;
    res.swarm.weights = swarm.weights;
    res.swarm.samples.resize(n);
    res.escaped.assign(n, false);
    res.trapped.assign(n, false);
    res.action.assign(n, 0.0);
    res.angle.assign(n, 0.0);
    std::vector<char> esc(n, 0), trap(n, 0);
    parallel_for(n, [&](std::size_t i) {
        const auto& init = swarm.samples[i];
        if (t == init.t) {
            Propagator prop(init, drive, options);
            res.swarm.samples[i] = init;
            res.action[i] = prop.action();
            res.angle[i] = prop.tracked_angle();
            trap[i] = 1;
            return;
        }
        Propagator prop(init, drive, options);
        prop.track_phase_window(s);
        prop.advance_to(t);
        res.swarm.samples[i] = prop.point();
        esc[i] = prop.escaped() ? 1 : 0;
        trap[i] = (!prop.escaped() && prop.phase_window() < kTwoPi) ? 1 : 0;
        res.action[i] = prop.action();
        res.angle[i] = prop.tracked_angle();
    });
    auto& st = res.stats;
    for (std::size_t i = 0; i < n; ++i) {
        res.escaped[i] = esc[i] != 0;
        res.trapped[i] = trap[i] != 0;
        const double w = swarm.weights[i];
        if (res.escaped[i] || !std::isfinite(res.action[i])) {
            st.escaped_weight += w;
            continue;
        }
        st.bound_weight += w;
        if (res.trapped[i]) st.trapped_weight += w;
        st.mean_I += w * res.action[i];
        st.mean_angle += w * res.angle[i];
    }
    if (st.bound_weight > 0.0) {
        st.mean_I /= st.bound_weight;
        st.mean_angle /= st.bound_weight;
        for (std::size_t i = 0; i < n; ++i) {
            if (res.escaped[i] || !std::isfinite(res.action[i])) continue;
            const double w = swarm.weights[i] / st.bound_weight;
            const double dI = res.action[i] - st.mean_I;
            const double da = res.angle[i] - st.mean_angle;
            st.cov[0] += w * dI * dI;
            st.cov[1] += w * dI * da;
            st.cov[2] += w * da * da;
        }
    }
    return res;
}

}  // namespace ndwp::classical
