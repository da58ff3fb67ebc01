#include "ndwp/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ndwp/errors.hpp"
#include "ndwp/kepler.hpp"
#include "ndwp/mathieu.hpp"
#include "ndwp/pendulum.hpp"
#include "ndwp/special.hpp"
#include "ndwp/units.hpp"

namespace ndwp::floquet {

std::string to_string(DipoleMode m) { return m == DipoleMode::Exact ? "exact" : "semiclassical"; }

DipoleMode dipole_mode_from_string(const std::string& s) {
    if (s == "exact") return DipoleMode::Exact;
    if (s == "semiclassical") return DipoleMode::Semiclassical;
    throw DomainError("unknown dipole mode '" + s + "'");
}

double dipole_matrix_1d(int n, int n_prime, DipoleMode mode) {
    if (n < 1 || n_prime < 1) throw DomainError("dipole_matrix_1d: quantum numbers must be >= 1");
    if (mode == DipoleMode::Semiclassical)
        return kepler::fourier_dipole_1d(0.5 * (n + n_prime), std::abs(n - n_prime));
    if (n == n_prime) return 1.5 * static_cast<double>(n) * n;
    const int nmax = std::max(n, n_prime);
    const double zmax = 4.0 * nmax * nmax + 60.0 * nmax;
    auto f = [&](double z) { return special::hydrogen_u(n, z) * z * special::hydrogen_u(n_prime, z); };
    // Panels of about one local wavelength keep the adaptive rule well conditioned.
    const int panels = 4 * nmax;
    double total = 0.0;
    double err_total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = zmax * std::pow(static_cast<double>(i) / panels, 2.0);
        const double b = zmax * std::pow(static_cast<double>(i + 1) / panels, 2.0);
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-12, &err);
        err_total += err;
    }
    if (err_total > 1e-6 * std::max(1.0, std::abs(total)))
        throw AccuracyError("dipole_matrix_1d: quadrature did not converge", err_total);
    return total;
}

void FloquetBasis::validate() const {
    if (n_min < 1 || n_max < n_min) throw DomainError("FloquetBasis: invalid n range");
    if (k_max < k_min) throw DomainError("FloquetBasis: invalid k range");
}

std::vector<std::vector<double>> dipole_table(int n_min, int n_max, DipoleMode mode) {
    const int Nn = n_max - n_min + 1;
    std::vector<std::vector<double>> z(static_cast<std::size_t>(Nn), std::vector<double>(static_cast<std::size_t>(Nn)));
    for (int i = 0; i < Nn; ++i)
        for (int j = i; j < Nn; ++j) {
            const double v = dipole_matrix_1d(n_min + i, n_min + j, mode);
            z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            z[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    return z;
}

namespace {

linalg::SymmetricBanded assemble(const FloquetBasis& b, double F, double omega,
                                 const std::vector<std::vector<double>>& z) {
    const int Nn = b.Nn();
    const int kd = (F == 0.0 || b.Nk() == 1) ? 0 : 2 * Nn - 1;
    linalg::SymmetricBanded A(b.size(), kd);
    for (int k = b.k_min; k <= b.k_max; ++k)
        for (int n = b.n_min; n <= b.n_max; ++n) {
            const int i = b.index(n, k);
            A.set(i, i, -0.5 / (static_cast<double>(n) * n) - k * omega);
        }
    if (kd == 0) return A;
    for (int k = b.k_min; k < b.k_max; ++k)
        for (int n = 0; n < Nn; ++n)
            for (int np = 0; np < Nn; ++np)
                A.set(b.index(b.n_min + n, k), b.index(b.n_min + np, k + 1),
                      0.5 * F * z[static_cast<std::size_t>(n)][static_cast<std::size_t>(np)]);
    return A;
}

double hf_slope(const FloquetBasis& b, const std::vector<double>& c, const std::vector<std::vector<double>>& z) {
    const int Nn = b.Nn();
    double s = 0.0;
    for (int k = b.k_min; k < b.k_max; ++k) {
        const double* lo = &c[static_cast<std::size_t>(b.index(b.n_min, k))];
        const double* hi = &c[static_cast<std::size_t>(b.index(b.n_min, k + 1))];
        for (int n = 0; n < Nn; ++n) {
            double acc = 0.0;
            for (int np = 0; np < Nn; ++np) acc += z[static_cast<std::size_t>(n)][static_cast<std::size_t>(np)] * hi[np];
            s += lo[n] * acc;
        }
    }
    // Two symmetric off-diagonal blocks, each carrying F/2.
    return s;
}

FloquetState make_state(const FloquetBasis& b, double omega, double value, std::vector<double> vec,
                        const std::vector<std::vector<double>>& z) {
    FloquetState st;
    st.basis = b;
    st.omega = omega;
    st.energy = value;
    st.quasienergy = reduce_quasienergy(value, omega);
    // Deterministic sign: largest component positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < vec.size(); ++i)
        if (std::abs(vec[i]) > std::abs(vec[imax])) imax = i;
    if (vec[imax] < 0.0)
        for (double& x : vec) x = -x;
    st.coeffs = std::move(vec);
    st.slope = hf_slope(b, st.coeffs, z);
    return st;
}

}  // namespace

linalg::SymmetricBanded build_floquet_matrix(const FloquetBasis& basis, double F, double omega, DipoleMode mode) {
    basis.validate();
    if (F < 0.0) throw DomainError("build_floquet_matrix: F must be non-negative");
    if (!(omega > 0.0)) throw DomainError("build_floquet_matrix: omega must be positive");
    return assemble(basis, F, omega, dipole_table(basis.n_min, basis.n_max, mode));
}

double reduce_quasienergy(double energy, double omega) {
    double r = energy - omega * std::floor(energy / omega);
    if (r >= omega) r -= omega;
    if (r < 0.0) r = 0.0;
    return r;
}

std::vector<double> FloquetState::n_distribution() const {
    std::vector<double> w(static_cast<std::size_t>(basis.Nn()), 0.0);
    for (int k = basis.k_min; k <= basis.k_max; ++k)
        for (int n = basis.n_min; n <= basis.n_max; ++n) {
            const double c = coeff(n, k);
            w[static_cast<std::size_t>(n - basis.n_min)] += c * c;
        }
    return w;
}

double FloquetState::island_weight(double n_center, double half_width) const {
    const auto w = n_distribution();
    double s = 0.0;
    for (int n = basis.n_min; n <= basis.n_max; ++n)
        if (std::abs(n - n_center) <= half_width) s += w[static_cast<std::size_t>(n - basis.n_min)];
    return s;
}

double FloquetState::mean_k() const {
    double s = 0.0;
    for (int k = basis.k_min; k <= basis.k_max; ++k)
        for (int n = basis.n_min; n <= basis.n_max; ++n) {
            const double c = coeff(n, k);
            s += k * c * c;
        }
    return s;
}

double FloquetState::norm() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return std::sqrt(s);
}

std::vector<std::complex<double>> FloquetState::amplitudes_at(double t) const {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(basis.Nn()));
    for (int k = basis.k_min; k <= basis.k_max; ++k) {
        const std::complex<double> ph = std::polar(1.0, -k * omega * t);
        for (int n = basis.n_min; n <= basis.n_max; ++n) a[static_cast<std::size_t>(n - basis.n_min)] += coeff(n, k) * ph;
    }
    return a;
}

std::vector<FloquetState> floquet_states_all(const FloquetBasis& basis, double F, double omega, DipoleMode mode) {
    basis.validate();
    const auto z = dipole_table(basis.n_min, basis.n_max, mode);
    const auto A = assemble(basis, F, omega, z);
    auto ep = linalg::eig_dense(A);
    std::vector<FloquetState> out;
    out.reserve(ep.values.size());
    for (std::size_t i = 0; i < ep.values.size(); ++i)
        out.push_back(make_state(basis, omega, ep.values[i], std::move(ep.vectors[i]), z));
    return out;
}

std::vector<FloquetState> floquet_states(const FloquetBasis& basis, double F, double omega, double target,
                                         const SolveOptions& opt) {
    basis.validate();
    if (opt.count < 1) throw DomainError("floquet_states: count must be >= 1");
    const auto z = dipole_table(basis.n_min, basis.n_max, opt.mode);
    const auto A = assemble(basis, F, omega, z);
    linalg::EigenPairs ep;
    if (basis.size() <= opt.dense_limit) {
        ep = linalg::eig_dense(A);
    } else {
        // Nudge the shift off any exact diagonal value.
        double sigma = target;
        if (F == 0.0) sigma += 1e-9 * omega;
        ep = linalg::eig_near(A, sigma, opt.count);
    }
    std::vector<std::size_t> idx(ep.values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(ep.values[a] - target) < std::abs(ep.values[b] - target);
    });
    std::vector<FloquetState> out;
    for (std::size_t r = 0; r < idx.size() && static_cast<int>(r) < opt.count; ++r)
        out.push_back(make_state(basis, omega, ep.values[idx[r]], std::move(ep.vectors[idx[r]]), z));
    return out;
}

WavepacketPrediction predict_wavepacket(double n0, double F0, int kappa) {
    WavepacketPrediction pr;
    const auto p = pendulum::hydrogen_pendulum(n0, F0, 1);
    const double replica = std::round(n0) * p.omega;
    pr.quasienergy = mathieu::quasienergy_from_mathieu(p, kappa, 0) + replica;
    pr.omega_harm = pendulum::harmonic_frequency(p);
    pr.n_center = n0;
    pr.half_width = 0.5 * pendulum::island_geometry(p).delta_I;
    const double n4 = n0 * n0 * n0 * n0;
    const double dF0 = std::max(1e-6, 1e-3 * F0);
    const double e_hi = mathieu::quasienergy_from_mathieu(pendulum::hydrogen_pendulum(n0, F0 + dF0, 1), kappa, 0);
    if (F0 > dF0) {
        const double e_lo = mathieu::quasienergy_from_mathieu(pendulum::hydrogen_pendulum(n0, F0 - dF0, 1), kappa, 0);
        pr.slope = (e_hi - e_lo) / (2.0 * dF0 / n4);
    } else {
        pr.slope = (e_hi - pr.quasienergy) / (dF0 / n4);
    }
    return pr;
}

namespace {

double zone_distance(double a, double b, double omega) {
    double d = std::fmod(std::abs(a - b), omega);
    return std::min(d, omega - d);
}

double overlap_n_distribution(const FloquetState& a, const FloquetState& b) {
    const auto wa = a.n_distribution();
    const auto wb = b.n_distribution();
    if (wa.size() != wb.size()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < wa.size(); ++i) s += std::sqrt(wa[i] * wb[i]);
    return s;
}

}  // namespace

Identification identify_wavepacket(const std::vector<FloquetState>& states, double prediction, double F,
                                   double omega, const IdentifyOptions& opt) {
    if (states.empty()) throw NotFoundError("identify_wavepacket: no candidate states");
    const double wh = opt.omega_harm > 0.0 ? opt.omega_harm : omega;
    Identification id;
    id.scores.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& st = states[i];
        double score = zone_distance(st.energy, prediction, omega) / wh;
        if (F > 0.0 && opt.predicted_slope != 0.0)
            score += std::abs(st.slope - opt.predicted_slope) / std::abs(opt.predicted_slope);
        if (opt.band) score += 1.0 - st.island_weight(opt.band->first, opt.band->second);
        id.scores[i] = score;
    }
    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (id.scores[a] != id.scores[b]) return id.scores[a] < id.scores[b];
        return std::abs(states[a].mean_k()) < std::abs(states[b].mean_k());
    });
    std::size_t best = order.front();
    // k-shifted replicas of the same state are equivalent; keep the one
    // centred nearest k = 0.
    for (std::size_t r = 1; r < order.size(); ++r) {
        const std::size_t c = order[r];
        if (id.scores[c] > id.scores[best] + opt.ambiguity_margin) break;
        if (overlap_n_distribution(states[c], states[best]) > 0.99) {
            if (std::abs(states[c].mean_k()) < std::abs(states[best].mean_k())) best = c;
            continue;
        }
        id.ambiguous = true;
        id.candidates.push_back(c);
    }
    id.index = best;
    id.state = states[best];
    id.score = id.scores[best];
    id.candidates.insert(id.candidates.begin(), best);
    if (id.ambiguous) {
        id.warning = "avoided crossing: candidates";
        for (std::size_t c : id.candidates) id.warning += " #" + std::to_string(c);
        id.warning += " score within margin";
    }
    return id;
}

std::vector<std::complex<double>> floquet_wavefunction(const FloquetState& st, double t, const std::vector<double>& z) {
    const auto a = st.amplitudes_at(t);
    std::vector<std::complex<double>> psi(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (int n = st.basis.n_min; n <= st.basis.n_max; ++n)
            acc += a[static_cast<std::size_t>(n - st.basis.n_min)] * special::hydrogen_u(n, z[i]);
        psi[i] = acc;
    }
    return psi;
}

}  // namespace ndwp::floquet
