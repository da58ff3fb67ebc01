#include "ndwp/open_system.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ndwp/errors.hpp"
#include "ndwp/parallel.hpp"
#include "ndwp/units.hpp"

namespace ndwp::open_system {

void RmtModel::validate() const {
    if (sigma < 0.0 || gamma < 0.0) throw DomainError("RmtModel: sigma and gamma must be non-negative");
    if (!(delta > 0.0)) throw DomainError("RmtModel: delta must be positive");
    if (n_chaotic < 10) throw DomainError("RmtModel: n_chaotic must be >= 10");
}

namespace {

struct Sample {
    double shift = 0.0;
    double width = 0.0;
    bool flagged = false;
};

Sample one_sample(const RmtModel& m, std::uint64_t index) {
    if (m.sigma == 0.0) return {};
    std::seed_seq seq{static_cast<std::uint32_t>(m.seed), static_cast<std::uint32_t>(m.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int N = m.n_chaotic;
    // Off-diagonal variance v^2 gives mean spacing pi v / sqrt(N) at the band centre.
    const double v = m.delta * std::sqrt(static_cast<double>(N)) / kPi;
    Eigen::MatrixXd H(N, N);
    for (int i = 0; i < N; ++i) {
        H(i, i) = std::sqrt(2.0) * v * normal(rng);
        for (int j = 0; j < i; ++j) H(i, j) = H(j, i) = v * normal(rng);
    }
    const Eigen::VectorXd E = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H, Eigen::EigenvaluesOnly).eigenvalues();
    Eigen::VectorXd V(N);
    for (int i = 0; i < N; ++i) V(i) = m.sigma * normal(rng);

    using cd = std::complex<double>;
    std::vector<cd> eps(N);
    for (int i = 0; i < N; ++i) eps[i] = cd(E(i), -0.5 * m.gamma);

    // Secular equation z = sum V_i^2 / (z - eps_i) of the arrowhead matrix,
    // solved from the unperturbed level z = 0.
    cd z = 0.0;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        cd g = 0.0, dg = 0.0;
        for (int i = 0; i < N; ++i) {
            const cd r = 1.0 / (z - eps[i]);
            g += V(i) * V(i) * r;
            dg += V(i) * V(i) * r * r;
        }
        const cd step = (z - g) / (1.0 + dg);
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
            converged = true;
            break;
        }
    }
    auto weight = [&](cd root) {
        double tail = 0.0;
        for (int i = 0; i < N; ++i) tail += V(i) * V(i) / std::norm(root - eps[i]);
        return 1.0 / (1.0 + tail);
    };

    Sample s;
    double w = converged ? weight(z) : 0.0;
    if (w <= 0.5) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N + 1, N + 1);
        for (int i = 0; i < N; ++i) {
            A(i + 1, i + 1) = eps[i];
            A(i + 1, 0) = A(0, i + 1) = V(i);
        }
        const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(A, false).eigenvalues();
        w = -1.0;
        for (Eigen::Index k = 0; k <= N; ++k) {
            const double wk = weight(ev(k));
            if (wk > w) {
                w = wk;
                z = ev(k);
            }
        }
    }
    s.shift = z.real();
    s.width = m.gamma == 0.0 ? 0.0 : std::max(0.0, -2.0 * z.imag());
    s.flagged = w < 0.5;
    return s;
}

}  // namespace

DecayEnsemble sample_rmt(const RmtModel& model, int n_samples) {
    model.validate();
    if (n_samples < 0) throw DomainError("sample_rmt: n_samples must be >= 0");
    std::vector<Sample> out(static_cast<std::size_t>(n_samples));
    parallel_for(out.size(), [&](std::size_t i) { out[i] = one_sample(model, i); });
    DecayEnsemble e;
    for (const auto& s : out) {
        if (s.flagged) {
            ++e.flagged;
            continue;
        }
        e.shifts.push_back(s.shift);
        e.widths.push_back(s.width);
    }
    return e;
}

CauchyFit fit_cauchy(const std::vector<double>& x) {
    if (x.size() < 3) throw DomainError("fit_cauchy: need at least three samples");
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    auto quant = [&](double p) {
        const double pos = p * (s.size() - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double f = pos - i;
        return i + 1 < s.size() ? s[i] * (1 - f) + s[i + 1] * f : s[i];
    };
    CauchyFit f{quant(0.5), 0.5 * (quant(0.75) - quant(0.25))};
    if (!(f.scale > 0.0)) throw AccuracyError("fit_cauchy: degenerate sample", 0.0);
    // Newton iterations on the likelihood equations in (location, log scale).
    for (int it = 0; it < 100; ++it) {
        double g1 = 0, g2 = 0, h11 = 0, h12 = 0, h22 = 0;
        const double g = f.scale, g2s = g * g;
        for (double xi : x) {
            const double d = xi - f.location, D = d * d + g2s;
            g1 += 2 * d / D;
            g2 += 1.0 / g - 2 * g / D;
            h11 += 2 * (d * d - g2s) / (D * D);
            h12 += -4 * d * g / (D * D);
            h22 += -1.0 / g2s - 2 * (d * d - g2s) / (D * D);
        }
        Eigen::Matrix2d Hm;
        Hm << h11, h12, h12, h22;
        const Eigen::Vector2d step = Hm.ldlt().solve(Eigen::Vector2d(g1, g2));
        double mu = f.location - step(0), sc = f.scale - step(1);
        if (!(sc > 0.0) || !std::isfinite(mu)) {
            mu = f.location + 0.1 * g * (g1 > 0 ? 1 : -1);
            sc = f.scale * (g2 > 0 ? 1.1 : 0.9);
        }
        const double change = std::abs(mu - f.location) + std::abs(sc - f.scale);
        f = {mu, sc};
        if (change < 1e-13 * f.scale) break;
    }
    return f;
}

double cauchy_cdf(double x, const CauchyFit& f) { return 0.5 + std::atan((x - f.location) / f.scale) / kPi; }

double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_test_cauchy(const std::vector<double>& x, const CauchyFit& f) {
    if (x.empty()) throw DomainError("ks_test_cauchy: empty sample");
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double D = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double c = cauchy_cdf(s[i], f);
        D = std::max({D, (i + 1) / n - c, c - i / n});
    }
    const double sn = std::sqrt(n);
    return {D, kolmogorov_q((sn + 0.12 + 0.11 / sn) * D)};
}

TailDiagnostics tail_diagnostics(const std::vector<double>& x, const CauchyFit& f) {
    TailDiagnostics t;
    std::vector<double> a;
    for (double v : x) a.push_back(std::abs(v - f.location) / f.scale);
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    // Survival S(r) on log-spaced radii; local slope of log S vs log r.
    double first = -1.0, last = -1.0;
    for (double lr = 0.0; lr < 8.0; lr += 0.25) {
        const double r0 = std::pow(10.0, lr), r1 = std::pow(10.0, lr + 0.25);
        const double s0 = (a.end() - std::upper_bound(a.begin(), a.end(), r0)) / n;
        const double s1 = (a.end() - std::upper_bound(a.begin(), a.end(), r1)) / n;
        if (s1 * n < 10.0) break;
        const double slope = (std::log(s1) - std::log(s0)) / (std::log(r1) - std::log(r0));
        if (slope > -1.5 && slope < -0.5) {
            if (first < 0.0) first = lr;
            last = lr + 0.25;
        } else if (first >= 0.0 && slope <= -1.5) {
            t.cutoff_detected = true;
            t.cutoff_scale = r0 * f.scale;
            break;
        }
    }
    t.algebraic_decades = first >= 0.0 ? last - first : 0.0;
    return t;
}

DistributionSummary distribution_summary(const DecayEnsemble& e) {
    if (e.shifts.size() < 1000) throw DomainError("distribution_summary: need at least 1000 samples");
    const bool all_zero = std::all_of(e.shifts.begin(), e.shifts.end(), [](double v) { return v == 0.0; });
    if (all_zero) throw AccuracyError("distribution_summary: degenerate ensemble", 0.0);
    DistributionSummary d;
    d.samples = e.shifts.size();
    d.shifts = fit_cauchy(e.shifts);
    d.shift_tail = tail_diagnostics(e.shifts, d.shifts);
    std::vector<double> r;
    for (double w : e.widths) r.push_back(std::sqrt(w));
    std::sort(r.begin(), r.end());
    // Median of a half-Cauchy equals its scale.
    d.sqrt_width_scale = r[r.size() / 2];
    d.mean_width = std::accumulate(e.widths.begin(), e.widths.end(), 0.0) / e.widths.size();
    return d;
}

std::vector<double> probe_cross_section(const std::vector<ProbeLine>& lines, double E0,
                                        const std::vector<double>& omega_grid) {
    std::vector<double> out(omega_grid.size(), 0.0);
    for (const auto& l : lines)
        if (!(l.width > 0.0)) throw DomainError("probe_cross_section: widths must be positive");
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const double w = omega_grid[i];
        double s = 0.0;
        for (const auto& l : lines) {
            const double d = l.energy - E0 - w, hg = 0.5 * l.width;
            s += l.dipole * l.dipole * hg / (d * d + hg * hg);
        }
        out[i] = w * s;
    }
    return out;
}

std::vector<ProbeLine> probe_lines(const std::vector<floquet::FloquetState>& states, int n_initial,
                                   const std::vector<double>& widths, floquet::DipoleMode mode) {
    if (widths.size() != states.size()) throw DomainError("probe_lines: one width per state required");
    std::vector<ProbeLine> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& st = states[i];
        if (0 < st.basis.k_min || 0 > st.basis.k_max) throw DomainError("probe_lines: basis lacks k = 0");
        double d = 0.0;
        for (int n = st.basis.n_min; n <= st.basis.n_max; ++n)
            d += st.coeff(n, 0) * floquet::dipole_matrix_1d(n, n_initial, mode);
        out.push_back({st.energy, d, widths[i]});
    }
    return out;
}

double spontaneous_rate(double Ei, double Ef, double dipole) {
    if (!(Ei > Ef)) throw DomainError("spontaneous_rate: no decay channel (Ei <= Ef)");
    const double a3 = kFineStructure * kFineStructure * kFineStructure;
    const double dE = Ei - Ef;
    return 4.0 * a3 / 3.0 * dE * dE * dE * dipole * dipole;
}

ElasticRate cp_elastic_rate(double omega, double q) {
    if (!(omega > 0.0)) throw DomainError("cp_elastic_rate: omega must be positive");
    if (!(q >= 8.0 / 9.0 && q <= 1.0)) throw DomainError("cp_elastic_rate: q outside the stable range [8/9, 1]");
    const double a3 = kFineStructure * kFineStructure * kFineStructure;
    ElasticRate r;
    r.rate = 2.0 * a3 * std::pow(omega, 5.0 / 3.0) * std::pow(q, -2.0 / 3.0) / 3.0;
    r.energy_loss = r.rate * omega;
    const double x_eq = std::cbrt(1.0 / (q * omega * omega));
    r.energy_loss_classical = 2.0 * a3 * std::pow(omega, 4) * x_eq * x_eq / 3.0;
    return r;
}

namespace {

void check_fit_input(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_n) {
    if (x.size() != y.size() || x.size() < min_n) throw DomainError("fit: mismatched or too few points");
    for (double v : y)
        if (!(v > 0.0)) throw DomainError("fit: values must be positive");
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    check_fit_input(x, y, 2);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    PowerLawFit f;
    f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.prefactor = std::exp((sy - f.exponent * sx) / n);
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = std::log(y[i]) - std::log(f.prefactor) - f.exponent * std::log(x[i]);
        r += d * d;
    }
    f.rms_log_residual = std::sqrt(r / n);
    return f;
}

PowerLawFit fit_power_law_fixed(const std::vector<double>& x, const std::vector<double>& y, double exponent) {
    check_fit_input(x, y, 1);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::log(y[i]) - exponent * std::log(x[i]);
    PowerLawFit f;
    f.exponent = exponent;
    f.prefactor = std::exp(s / x.size());
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = std::log(y[i]) - std::log(f.prefactor) - exponent * std::log(x[i]);
        r += d * d;
    }
    f.rms_log_residual = std::sqrt(r / x.size());
    return f;
}

ExponentialFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y) {
    check_fit_input(x, y, 2);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ly = std::log(y[i]);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
    }
    ExponentialFit f;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.rate = -slope;
    f.prefactor = std::exp((sy - slope * sx) / n);
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = std::log(y[i]) - std::log(f.prefactor) + f.rate * x[i];
        r += d * d;
    }
    f.rms_log_residual = std::sqrt(r / n);
    return f;
}

}  // namespace ndwp::open_system
