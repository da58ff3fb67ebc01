#include "ndwp/pulse.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ndwp/errors.hpp"
#include "ndwp/parallel.hpp"
#include "ndwp/units.hpp"

namespace ndwp::pulse {

void PulseProfile::validate() const {
    if (F_max < 0.0 || T_switch < 0.0) throw DomainError("PulseProfile: F_max and T_switch must be non-negative");
}

double pulse_amplitude(const PulseProfile& profile, double t) {
    profile.validate();
    if (t >= profile.T_switch) return profile.F_max;
    if (t <= 0.0) return 0.0;
    const double x = t / profile.T_switch;
    if (profile.shape == PulseShape::Linear) return profile.F_max * x;
    const double s = std::sin(0.5 * kPi * x);
    return profile.F_max * s * s;
}

SwitchingTimescales switching_timescales(double n0, int n_plus, int n_minus) {
    if (n0 < 1.0) throw DomainError("switching_timescales: n0 must be >= 1");
    return {1.0 / (n0 * n0), n0, std::pow(n0, n_plus + n_minus - 2)};
}

PulseTarget make_pulse_target(int initial_n, double F_max, double omega, const PulseBasis& basis,
                              const PulseOptions& opt) {
    if (initial_n < basis.n_min || initial_n > basis.n_max)
        throw DomainError("make_pulse_target: initial_n outside the basis");
    PulseTarget t;
    if (F_max == 0.0) {
        t.bare = true;
        t.n_bare = initial_n;
        return t;
    }
    const double n_res = std::cbrt(1.0 / omega);
    const double F0 = F_max * std::pow(n_res, 4);
    const auto pred = floquet::predict_wavepacket(n_res, F0, 0);
    floquet::FloquetBasis fb{basis.n_min, basis.n_max, basis.k_min, basis.k_max};
    floquet::SolveOptions so;
    so.mode = opt.mode;
    so.count = 10;
    const auto states = floquet::floquet_states(fb, F_max, omega, pred.quasienergy, so);
    floquet::IdentifyOptions io;
    io.predicted_slope = pred.slope;
    io.omega_harm = pred.omega_harm;
    io.band = std::make_pair(pred.n_center, pred.half_width);
    t.identification = floquet::identify_wavepacket(states, pred.quasienergy, F_max, omega, io);
    t.state = t.identification.state;
    return t;
}

namespace {

std::vector<std::complex<double>> target_at(const PulseTarget& tg, const PulseBasis& b, double t) {
    if (!tg.bare) return tg.state.amplitudes_at(t);
    std::vector<std::complex<double>> v(static_cast<std::size_t>(b.n_max - b.n_min + 1), 0.0);
    v[static_cast<std::size_t>(tg.n_bare - b.n_min)] = 1.0;
    return v;
}

double overlap(const std::vector<std::complex<double>>& a, const Eigen::VectorXcd& b) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b(static_cast<Eigen::Index>(i));
    return std::norm(s);
}

}  // namespace

PulseResult propagate_pulse_1d(int initial_n, const PulseProfile& profile, double omega, const PulseBasis& basis,
                               const PulseTarget& target, const PulseOptions& opt) {
    profile.validate();
    if (!(omega > 0.0)) throw DomainError("propagate_pulse_1d: omega must be positive");
    if (initial_n < basis.n_min || initial_n > basis.n_max)
        throw DomainError("propagate_pulse_1d: initial_n outside the basis");
    if (opt.steps_per_period < 4) throw DomainError("propagate_pulse_1d: steps_per_period must be >= 4");
    const int Nn = basis.n_max - basis.n_min + 1;
    const auto ztab = floquet::dipole_table(basis.n_min, basis.n_max, opt.mode);
    Eigen::MatrixXd Z(Nn, Nn);
    Eigen::VectorXd E(Nn);
    for (int i = 0; i < Nn; ++i) {
        const double n = basis.n_min + i;
        E(i) = -0.5 / (n * n);
        for (int j = 0; j < Nn; ++j) Z(i, j) = ztab[i][j];
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Nn);
    psi(initial_n - basis.n_min) = 1.0;

    PulseResult r;
    r.static_overlap = overlap(target_at(target, basis, 0.0), psi);
    const double period = kTwoPi / omega;
    const double T_end = profile.T_switch * period;
    const int steps = profile.T_switch > 0.0
                          ? static_cast<int>(std::ceil(profile.T_switch * opt.steps_per_period))
                          : 0;
    const double dt = steps > 0 ? T_end / steps : 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    for (int s = 0; s < steps; ++s) {
        const double tm = (s + 0.5) * dt;
        const double f = pulse_amplitude(profile, tm / period) * std::cos(omega * tm);
        Eigen::MatrixXd H = f * Z;
        H.diagonal() += E;
        es.compute(H);
        const Eigen::MatrixXd& U = es.eigenvectors();
        Eigen::VectorXcd c = U.transpose() * psi;
        for (int i = 0; i < Nn; ++i) c(i) *= std::exp(std::complex<double>(0.0, -es.eigenvalues()(i) * dt));
        psi = U * c;
        const double err = std::abs(psi.norm() - 1.0);
        r.norm_error = std::max(r.norm_error, err);
        if (err > opt.norm_tolerance)
            throw AccuracyError("propagate_pulse_1d: norm drift exceeds tolerance; reduce the step", err);
    }
    r.steps = steps;
    r.final_time = T_end;
    r.overlap = overlap(target_at(target, basis, T_end), psi);
    r.final_state.assign(psi.data(), psi.data() + Nn);
    return r;
}

PulseResult propagate_pulse_1d(int initial_n, const PulseProfile& profile, double omega, const PulseBasis& basis,
                               const PulseOptions& opt) {
    const auto tg = make_pulse_target(initial_n, profile.F_max, omega, basis, opt);
    return propagate_pulse_1d(initial_n, profile, omega, basis, tg, opt);
}

std::vector<ScanPoint> switching_scan(int initial_n, double F_max, double omega, const PulseBasis& basis,
                                      const std::vector<double>& T_switch_list, const PulseOptions& opt) {
    const auto tg = make_pulse_target(initial_n, F_max, omega, basis, opt);
    std::vector<ScanPoint> out(T_switch_list.size());
    parallel_for(out.size(), [&](std::size_t i) {
        PulseProfile prof{F_max, T_switch_list[i], PulseShape::Sin2};
        const auto r = propagate_pulse_1d(initial_n, prof, omega, basis, tg, opt);
        out[i] = {T_switch_list[i], r.overlap, r.norm_error};
    });
    return out;
}

double survival_probability(const std::vector<double>& weights, const std::vector<double>& widths, double t) {
    if (weights.size() != widths.size()) throw DomainError("survival_probability: size mismatch");
    double P = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (widths[i] < 0.0) throw DomainError("survival_probability: widths must be non-negative");
        P += weights[i] * std::exp(-widths[i] * t);
    }
    return P;
}

ExponentialityCheck mono_exponential_check(const std::vector<double>& weights, const std::vector<double>& widths,
                                           const std::vector<double>& times) {
    if (times.size() < 3) throw DomainError("mono_exponential_check: need at least three times");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(times.size());
    std::vector<double> y;
    for (double t : times) y.push_back(std::log(survival_probability(weights, widths, t)));
    for (std::size_t i = 0; i < times.size(); ++i) {
        sx += times[i];
        sy += y[i];
        sxx += times[i] * times[i];
        sxy += times[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    double r = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double d = y[i] - icpt - slope * times[i];
        r += d * d;
    }
    return {-slope, std::sqrt(r / n)};
}

}  // namespace ndwp::pulse
