#include "ndwp/wavepacket.hpp"

#include <algorithm>
#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/special.hpp"
#include "ndwp/units.hpp"

namespace ndwp::wavepacket {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

WavePacketSuperposition gaussian_superposition(double n0, double delta_n, double cutoff) {
    if (!(n0 > 0.0) || !(delta_n > 0.0)) throw DomainError("gaussian_superposition: n0 and delta_n must be positive");
    WavePacketSuperposition wp;
    wp.n0 = n0;
    wp.delta_n = delta_n;
    const int lo = std::max(1, static_cast<int>(std::floor(n0 - cutoff * delta_n)));
    const int hi = static_cast<int>(std::ceil(n0 + cutoff * delta_n));
    double norm = 0.0;
    for (int n = lo; n <= hi; ++n) {
        const double x = (n - n0) / delta_n;
        const double w = std::exp(-0.25 * x * x);
        wp.n.push_back(n);
        wp.coeffs.emplace_back(w, 0.0);
        norm += w * w;
    }
    const double s = 1.0 / std::sqrt(norm);
    for (auto& c : wp.coeffs) c *= s;
    return wp;
}

RevivalTimes revival_times(double n0, double delta_n) {
    if (!(n0 > 0.0) || !(delta_n > 0.0)) throw DomainError("revival_times: n0 and delta_n must be positive");
    RevivalTimes r;
    r.T_rec = kTwoPi * n0 * n0 * n0;
    r.T_col = 2.0 * n0 * n0 * n0 * n0 / (3.0 * delta_n * delta_n);
    r.T_rev = kTwoPi * n0 * n0 * n0 * n0 / 3.0;
    return r;
}

cvec propagate_superposition(const WavePacketSuperposition& wp, double t) {
    cvec out(wp.coeffs.size());
    for (std::size_t i = 0; i < wp.n.size(); ++i) {
        const double E = -0.5 / (static_cast<double>(wp.n[i]) * wp.n[i]);
        out[i] = wp.coeffs[i] * std::polar(1.0, -E * t);
    }
    return out;
}

std::complex<double> autocorrelation(const WavePacketSuperposition& wp, double t) {
    std::complex<double> a = 0.0;
    for (std::size_t i = 0; i < wp.n.size(); ++i) {
        const double E = -0.5 / (static_cast<double>(wp.n[i]) * wp.n[i]);
        a += std::norm(wp.coeffs[i]) * std::polar(1.0, -E * t);
    }
    return a;
}

Trace autocorrelation_trace(const WavePacketSuperposition& wp, double t_end, std::size_t samples) {
    if (samples < 2) throw DomainError("autocorrelation_trace: need at least two samples");
    Trace tr;
    tr.t = linspace(0.0, t_end, samples);
    tr.value.reserve(samples);
    for (double t : tr.t) tr.value.push_back(std::abs(autocorrelation(wp, t)));
    return tr;
}

double measured_collapse_time(const WavePacketSuperposition& wp, double threshold, double t_end,
                              std::size_t samples_per_period) {
    const double T = kTwoPi * wp.n0 * wp.n0 * wp.n0;
    const double dt = T / static_cast<double>(samples_per_period);
    const std::size_t n = static_cast<std::size_t>(std::ceil((t_end + T) / dt)) + 1;
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(autocorrelation(wp, i * dt));
    // Sliding maximum over one period.
    const std::size_t w = samples_per_period;
    for (std::size_t i = 0; i + w < n && i * dt <= t_end; ++i) {
        const double m = *std::max_element(a.begin() + static_cast<std::ptrdiff_t>(i),
                                           a.begin() + static_cast<std::ptrdiff_t>(i + w));
        if (m < threshold) return i * dt;
    }
    return -1.0;
}

double measured_revival_time(const WavePacketSuperposition& wp, double t_lo, double t_hi,
                             std::size_t samples_per_period) {
    const double T = kTwoPi * wp.n0 * wp.n0 * wp.n0;
    const double dt = T / static_cast<double>(samples_per_period);
    double best_t = t_lo, best = -1.0;
    for (double t = t_lo; t <= t_hi; t += dt) {
        const double v = std::abs(autocorrelation(wp, t));
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    // Golden-section polish around the sampled peak.
    double a = best_t - dt, b = best_t + dt;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
        const double c = b - g * (b - a), d = a + g * (b - a);
        if (std::abs(autocorrelation(wp, c)) > std::abs(autocorrelation(wp, d))) b = d; else a = c;
    }
    return 0.5 * (a + b);
}

cvec wavefunction_on_grid(const std::vector<int>& n, const cvec& amplitudes, const std::vector<double>& z) {
    if (n.size() != amplitudes.size()) throw DomainError("wavefunction_on_grid: size mismatch");
    cvec psi(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < n.size(); ++k) acc += amplitudes[k] * special::hydrogen_u(n[k], z[i]);
        psi[i] = acc;
    }
    return psi;
}

Uncertainty grid_uncertainty(const cvec& psi, const std::vector<double>& z) {
    const std::size_t n = z.size();
    if (n < 3 || psi.size() != n) throw DomainError("grid_uncertainty: need matching grids of size >= 3");
    const double dz = z[1] - z[0];
    double norm = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::norm(psi[i]);
        norm += w;
        m1 += w * z[i];
        m2 += w * z[i] * z[i];
    }
    m1 /= norm;
    m2 /= norm;
    // <p> = Im int psi* psi' dz and <p^2> = int |psi'|^2 dz, central differences.
    std::complex<double> p1 = 0.0;
    double p2 = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::complex<double> d = (psi[i + 1] - psi[i - 1]) / (2.0 * dz);
        p1 += std::conj(psi[i]) * d;
        p2 += std::norm(d);
    }
    const double pm = p1.imag() / norm;
    const double pp = p2 / norm;
    return {std::sqrt(std::max(0.0, m2 - m1 * m1)), std::sqrt(std::max(0.0, pp - pm * pm))};
}

FreeSpread free_gaussian_spread(double sigma, double t) {
    if (!(sigma > 0.0)) throw DomainError("free_gaussian_spread: sigma must be positive");
    const double s2 = sigma * sigma;
    return {sigma / std::sqrt(2.0) * std::sqrt(1.0 + t * t / (s2 * s2)), 1.0 / (sigma * std::sqrt(2.0))};
}

cvec coherent_state(const std::vector<double>& z, double z0, double p0, double sigma) {
    const double pref = std::pow(kPi * sigma * sigma, -0.25);
    cvec out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double d = (z[i] - z0) / sigma;
        out[i] = pref * std::exp(-0.5 * d * d) * std::polar(1.0, p0 * z[i]);
    }
    return out;
}

double HusimiGrid::total_mass() const {
    return mass_where([](double, double) { return true; });
}

double HusimiGrid::mass_where(const std::function<bool(double, double)>& inside) const {
    if (z.size() < 2 || p.size() < 2) return 0.0;
    const double dz = (z.back() - z.front()) / static_cast<double>(z.size() - 1);
    const double dp = (p.back() - p.front()) / static_cast<double>(p.size() - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (inside(z[i], p[j])) s += at(i, j);
    return 0.5 * s * dz * dp;
}

HusimiGrid husimi(const cvec& psi, const std::vector<double>& z, const std::vector<double>& zc,
                  const std::vector<double>& pc, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("husimi: sigma must be positive");
    if (psi.size() != z.size() || z.size() < 2) throw DomainError("husimi: psi and grid sizes differ");
    const double dz = z[1] - z[0];
    if (dz > sigma / 3.0) throw DomainError("husimi: grid too coarse for the coherent-state width");
    double pmax = 0.0;
    for (double p : pc) pmax = std::max(pmax, std::abs(p));
    if (pmax * dz > kPi / 2.0) throw DomainError("husimi: grid too coarse for the momentum range");
    HusimiGrid g;
    g.z = zc;
    g.p = pc;
    g.sigma = sigma;
    g.values.assign(zc.size() * pc.size(), 0.0);
    const double pref = std::pow(kPi * sigma * sigma, -0.25);
    const double z0 = z.front();
    const double reach = 7.0 * sigma;
    for (std::size_t i = 0; i < zc.size(); ++i) {
        const auto lo = static_cast<std::size_t>(std::max(0.0, std::floor((zc[i] - reach - z0) / dz)));
        const auto hi = std::min(z.size() - 1, static_cast<std::size_t>(std::max(0.0, std::ceil((zc[i] + reach - z0) / dz))));
        if (lo > hi) continue;
        // Gaussian-weighted samples reused for every momentum.
        std::vector<std::complex<double>> w;
        std::vector<double> zz;
        w.reserve(hi - lo + 1);
        for (std::size_t m = lo; m <= hi; ++m) {
            const double d = (z[m] - zc[i]) / sigma;
            w.push_back(pref * std::exp(-0.5 * d * d) * psi[m] * dz);
            zz.push_back(z[m]);
        }
        for (std::size_t j = 0; j < pc.size(); ++j) {
            std::complex<double> acc = 0.0;
            const std::complex<double> step = std::polar(1.0, -pc[j] * dz);
            std::complex<double> ph = std::polar(1.0, -pc[j] * zz.front());
            for (std::size_t m = 0; m < w.size(); ++m) {
                acc += w[m] * ph;
                ph *= step;
            }
            g.values[i * pc.size() + j] = std::norm(acc) / kPi;
        }
    }
    return g;
}

}  // namespace ndwp::wavepacket
