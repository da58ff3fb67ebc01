#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ndwp/bouncer.hpp"
#include "ndwp/classical.hpp"
#include "ndwp/cp.hpp"
#include "ndwp/errors.hpp"
#include "ndwp/floquet.hpp"
#include "ndwp/mathieu.hpp"
#include "ndwp/open_system.hpp"
#include "ndwp/parallel.hpp"
#include "ndwp/pendulum.hpp"
#include "ndwp/pulse.hpp"
#include "ndwp/secular.hpp"
#include "ndwp/units.hpp"
#include "ndwp/wavepacket.hpp"

namespace ndwp::cli {

namespace {

using VT = ValueType;

KeySpec D(std::string n, std::string def, std::string help) { return {std::move(n), VT::Double, std::move(def), std::move(help), {}}; }
KeySpec I(std::string n, std::string def, std::string help) { return {std::move(n), VT::Int, std::move(def), std::move(help), {}}; }
KeySpec L(std::string n, std::string def, std::string help) { return {std::move(n), VT::DoubleList, std::move(def), std::move(help), {}}; }
KeySpec S(std::string n, std::string def, std::string help, std::vector<std::string> choices) {
    return {std::move(n), VT::String, std::move(def), std::move(help), std::move(choices)};
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

int positive_int(const ScenarioConfig& c, const std::string& k) {
    const long long v = c.get_int(k);
    require(v > 0 && v < (1LL << 31), "params." + k + " must be a positive integer");
    return static_cast<int>(v);
}

double positive(const ScenarioConfig& c, const std::string& k) {
    const double v = c.get_double(k);
    require(v > 0.0, "params." + k + " must be positive");
    return v;
}

floquet::DipoleMode dipoles(const ScenarioConfig& c) { return floquet::dipole_mode_from_string(c.get_string("dipoles")); }

std::vector<double> grid(double lo, double hi, int n) {
    require(n >= 2 && hi > lo, "grid needs at least two points and hi > lo");
    return wavepacket::linspace(lo, hi, static_cast<std::size_t>(n));
}

nlohmann::json physical_units(double n0, double F0) {
    const auto ph = units::physical_from_scaled(F0, 1.0, n0);
    return {{"omega_GHz", units::frequency_to_ghz(ph.omega)}, {"F_V_per_cm", units::field_to_volt_per_cm(ph.F)}};
}

// ---------------------------------------------------------------- sos
void run_sos(const ScenarioConfig& c, RunRecorder& rec) {
    const double n0 = positive(c, "n0"), F0 = c.get_double("F0");
    const int s = positive_int(c, "s"), periods = positive_int(c, "periods");
    require(F0 >= 0.0, "params.F0 must be non-negative");
    classical::DriveSpec d;
    d.F = F0 / std::pow(n0, 4);
    d.omega = s / (n0 * n0 * n0);
    std::vector<classical::Seed1D> seeds;
    const std::string& text = c.get_string("seeds");
    if (text == "auto" || text == "grid") {
        const double half = F0 > 0.0 ? std::max(0.5 * pendulum::predicted_width(pendulum::hydrogen_pendulum(n0, F0, s)), 1.0) : 1.0;
        const double span = positive(c, "seed_span") * half;
        const int count = positive_int(c, "seed_count");
        seeds = text == "auto" ? classical::seed_line(c.get_double("seed_theta"), n0 - span, n0 + span, count)
                               : classical::seed_grid(n0 - span, n0 + span, count, positive_int(c, "seed_angles"));
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ';')) {
            const auto colon = item.find(':');
            require(colon != std::string::npos, "params.seeds: expected I:theta;I:theta;...");
            const KeySpec num_spec{"seeds", VT::Double, "", "", {}};
            try {
                seeds.push_back({std::get<double>(parse_value(num_spec, item.substr(0, colon))),
                                 std::get<double>(parse_value(num_spec, item.substr(colon + 1)))});
            } catch (const ConfigError&) {
                throw ConfigError("params.seeds: cannot read '" + item + "'");
            }
        }
    }
    const auto sos = classical::poincare_sos(d, c.get_double("phase"), seeds, periods, s);
    Csv pts({"seed", "t_periods", "I", "theta", "librational"});
    const double T = kTwoPi / d.omega * s;
    for (const auto& pt : sos.points)
        pts.row({static_cast<double>(pt.seed_id), pt.t / T, pt.I, pt.theta, sos.librational(pt) ? 1.0 : 0.0});
    Csv sd({"seed", "I0", "theta0", "librational", "escaped", "phase_window"});
    for (std::size_t i = 0; i < seeds.size(); ++i)
        sd.row({static_cast<double>(i), seeds[i].I, seeds[i].theta, sos.seeds[i].librational ? 1.0 : 0.0,
                sos.seeds[i].escaped ? 1.0 : 0.0, sos.seeds[i].window});
    rec.write("section.csv", pts.str());
    rec.write("seeds.csv", sd.str());
    if (F0 > 0.0) {
        const double predicted = pendulum::predicted_width(pendulum::hydrogen_pendulum(n0, F0, s));
        rec.note("predicted_island_width", predicted);
        try {
            rec.note("measured_island_width", classical::island_width_measure(sos, kPi));
        } catch (const NotFoundError& e) {
            rec.note("measured_island_width", e.what());
        }
    }
    rec.note("physical_units", physical_units(n0, F0));
    if (c.svg) {
        Series lib{"librational", {}, {}, true}, rot{"rotational", {}, {}, true};
        for (const auto& pt : sos.points) {
            auto& se = sos.librational(pt) ? lib : rot;
            se.x.push_back(pt.theta);
            se.y.push_back(pt.I);
        }
        rec.write("section.svg", svg_plot({"Stroboscopic section", "theta", "I", {lib, rot}, {}, {}}));
    }
}

// ---------------------------------------------------------------- spectrum
void run_spectrum(const ScenarioConfig& c, RunRecorder& rec) {
    const double n0 = positive(c, "n0");
    const auto F0s = c.get_list("F0");
    floquet::FloquetBasis basis{static_cast<int>(c.get_int("n_min")), static_cast<int>(c.get_int("n_max")),
                                static_cast<int>(c.get_int("k_min")), static_cast<int>(c.get_int("k_max"))};
    basis.validate();
    require(basis.n_min <= n0 && n0 <= basis.n_max, "params.n0 must lie inside [n_min, n_max]");
    const double omega = 1.0 / (n0 * n0 * n0);
    floquet::SolveOptions so;
    so.mode = dipoles(c);
    so.count = positive_int(c, "count");
    struct Point {
        std::vector<floquet::FloquetState> states;
        floquet::Identification id;
        floquet::WavepacketPrediction pred;
    };
    std::vector<Point> pts(F0s.size());
    parallel_for(F0s.size(), [&](std::size_t i) {
        require(F0s[i] > 0.0, "params.F0 entries must be positive");
        const double F = F0s[i] / std::pow(n0, 4);
        pts[i].pred = floquet::predict_wavepacket(n0, F0s[i], 0);
        pts[i].states = floquet::floquet_states(basis, F, omega, pts[i].pred.quasienergy, so);
        floquet::IdentifyOptions io;
        io.predicted_slope = pts[i].pred.slope;
        io.omega_harm = pts[i].pred.omega_harm;
        io.band = std::make_pair(pts[i].pred.n_center, pts[i].pred.half_width);
        pts[i].id = floquet::identify_wavepacket(pts[i].states, pts[i].pred.quasienergy, F, omega, io);
    });
    Csv st({"F0", "index", "energy", "quasienergy_over_omega", "slope", "island_weight", "mean_k", "wavepacket"});
    Csv wp({"F0", "energy", "predicted", "delta_over_omega_harm", "island_weight", "ambiguous"});
    Series all{"states", {}, {}, true}, sel{"wave packet", {}, {}, true};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        for (std::size_t k = 0; k < p.states.size(); ++k) {
            const auto& s = p.states[k];
            const double w = s.island_weight(p.pred.n_center, p.pred.half_width);
            st.row({F0s[i], static_cast<double>(k), s.energy, s.quasienergy / omega, s.slope, w, s.mean_k(),
                    k == p.id.index ? 1.0 : 0.0});
            all.x.push_back(F0s[i]);
            all.y.push_back(s.quasienergy / omega);
        }
        const auto& s = p.id.state;
        double dq = std::fmod(std::abs(s.energy - p.pred.quasienergy), omega);
        dq = std::min(dq, omega - dq);
        wp.row({F0s[i], s.energy, p.pred.quasienergy, dq / p.pred.omega_harm,
                s.island_weight(p.pred.n_center, p.pred.half_width), p.id.ambiguous ? 1.0 : 0.0});
        sel.x.push_back(F0s[i]);
        sel.y.push_back(s.quasienergy / omega);
    }
    rec.write("states.csv", st.str());
    rec.write("wavepacket.csv", wp.str());
    if (c.svg)
        rec.write("quasienergies.svg",
                  svg_plot({"Floquet quasienergies near the wave-packet state", "F0", "quasienergy / omega", {all, sel}, {}, {}}));
}

// ---------------------------------------------------------------- mathieu
void run_mathieu(const ScenarioConfig& c, RunRecorder& rec) {
    const int count = positive_int(c, "count");
    const auto qs = grid(c.get_double("q_min"), c.get_double("q_max"), positive_int(c, "q_points"));
    const double nu = c.get_double("nu");
    std::vector<std::vector<double>> vals(qs.size());
    parallel_for(qs.size(), [&](std::size_t i) { vals[i] = mathieu::mathieu_char_values(nu, qs[i], count).values; });
    std::vector<std::string> head{"q"};
    for (int k = 0; k < count; ++k) head.push_back("a" + std::to_string(k));
    Csv t(head);
    std::vector<Series> ser(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < qs.size(); ++i) {
        std::vector<double> r{qs[i]};
        for (int k = 0; k < count; ++k) {
            r.push_back(vals[i][k]);
            ser[k].x.push_back(qs[i]);
            ser[k].y.push_back(vals[i][k]);
        }
        t.row(r);
    }
    for (int k = 0; k < count; ++k) ser[k].label = "kappa=" + std::to_string(k);
    rec.write("characteristic_values.csv", t.str());
    if (c.svg) rec.write("characteristic_values.svg", svg_plot({"Mathieu characteristic values, nu = " + num(nu), "q", "a", ser, {}, {}}));
}

// ---------------------------------------------------------------- wavepacket
void run_wavepacket(const ScenarioConfig& c, RunRecorder& rec) {
    const double n0 = positive(c, "n0"), dn = positive(c, "delta_n"), t_end = positive(c, "t_end");
    const int spp = positive_int(c, "samples_per_period");
    const auto wp = wavepacket::gaussian_superposition(n0, dn);
    const auto times = wavepacket::revival_times(n0, dn);
    const double Tk = times.T_rec;
    const auto tr = wavepacket::autocorrelation_trace(wp, t_end * Tk, static_cast<std::size_t>(t_end * spp) + 1);
    Csv a({"t_over_Trec", "abs_autocorrelation"});
    Series s{"|A(t)|", {}, {}, false};
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        a.row({tr.t[i] / Tk, tr.value[i]});
        s.x.push_back(tr.t[i] / Tk);
        s.y.push_back(tr.value[i]);
    }
    const double col = wavepacket::measured_collapse_time(wp, c.get_double("threshold"), t_end * Tk, spp);
    const double rev_hi = std::min(1.5 * times.T_rev, t_end * Tk);
    const double rev = rev_hi > 0.5 * times.T_rev ? wavepacket::measured_revival_time(wp, 0.5 * times.T_rev, rev_hi, spp) : -1.0;
    Csv m({"marker", "predicted_over_Trec", "measured_over_Trec"});
    m.row(std::vector<std::string>{"collapse", num(times.T_col / Tk), col < 0 ? "none" : num(col / Tk)});
    m.row(std::vector<std::string>{"revival", num(times.T_rev / Tk), rev < 0 ? "none" : num(rev / Tk)});
    rec.write("autocorrelation.csv", a.str());
    rec.write("markers.csv", m.str());
    if (c.svg)
        rec.write("autocorrelation.svg",
                  svg_plot({"Autocorrelation", "t / T_rec", "|A|", {s}, {times.T_col / Tk, times.T_rev / Tk}, {"collapse", "revival"}}));
}

// ---------------------------------------------------------------- cp
void run_cp(const ScenarioConfig& c, RunRecorder& rec) {
    const double n0 = positive(c, "n0"), omega = 1.0 / (n0 * n0 * n0);
    const double wc = c.get_double("omega_c_ratio") * omega;
    const auto qs = grid(c.get_double("q_min"), c.get_double("q_max"), positive_int(c, "q_points"));
    Csv t({"q", "F0", "x_eq", "E_eq", "a", "b", "region", "omega_plus", "omega_minus", "omega_z"});
    Series sp{"omega_plus/omega", {}, {}, false}, sm{"omega_minus/omega", {}, {}, false};
    const double K = omega * (omega - wc);
    require(K > 0.0, "params.omega_c_ratio must be below 1 for the q parametrisation");
    for (double q : qs) {
        require(q > 0.0 && q <= 1.0, "params.q_min/q_max must lie in (0, 1]");
        const double F = cp::field_from_q(q, omega, wc);
        const auto fps = cp::cp_fixed_points(F, omega, wc);
        if (fps.empty()) continue;
        const auto& fp = fps.front();
        const auto sp_ = cp::stability_params(fp);
        const auto v = cp::oscillator_stability(sp_);
        double wp = NAN, wm = NAN, wz = NAN;
        if (wc == 0.0 && q >= 8.0 / 9.0) {
            const auto m = cp::normal_modes(q, omega);
            wp = m.omega_plus / omega;
            wm = m.omega_minus / omega;
            wz = m.omega_z / omega;
            sp.x.push_back(q);
            sp.y.push_back(wp);
            sm.x.push_back(q);
            sm.y.push_back(wm);
        }
        t.row({q, F * std::pow(n0, 4), fp.x_eq, fp.E_eq, sp_.a, sp_.b, static_cast<double>(v.region), wp, wm, wz});
    }
    rec.write("fixed_points.csv", t.str());
    rec.note("one_two_resonance_q", cp::one_two_resonance_q());

    const auto F0g = grid(c.get_double("diagram_F0_min"), c.get_double("diagram_F0_max"), positive_int(c, "diagram_points"));
    const auto rg = grid(c.get_double("diagram_ratio_min"), c.get_double("diagram_ratio_max"), positive_int(c, "diagram_points"));
    const auto cells = cp::stability_diagram(F0g, rg, n0);
    Csv dg({"F0", "omega_c_ratio", "q", "a", "b", "region", "exists"});
    HeatmapData hm{F0g, rg, std::vector<double>(F0g.size() * rg.size(), 0.0)};
    for (const auto& cell : cells) {
        dg.row({cell.F0, cell.omega_c_ratio, cell.q, cell.a, cell.b, static_cast<double>(cell.region), cell.exists ? 1.0 : 0.0});
        const auto ix = static_cast<std::size_t>(std::lower_bound(F0g.begin(), F0g.end(), cell.F0 - 1e-15) - F0g.begin());
        const auto iy = static_cast<std::size_t>(std::lower_bound(rg.begin(), rg.end(), cell.omega_c_ratio - 1e-15) - rg.begin());
        if (ix < F0g.size() && iy < rg.size()) hm.values[iy * F0g.size() + ix] = cell.exists ? cell.region : -1.0;
    }
    rec.write("stability_diagram.csv", dg.str());
    if (c.svg) {
        rec.write("normal_modes.svg", svg_plot({"Normal modes at the CP equilibrium", "q", "frequency / omega", {sp, sm}, {8.0 / 9.0}, {"q = 8/9"}}));
        rec.write("stability_diagram.svg", svg_heatmap("Stability region (-1 none, 0 unstable, 1, 2)", "F0", "omega_c / omega", hm));
    }
}

// ---------------------------------------------------------------- secular
void run_secular(const ScenarioConfig& c, RunRecorder& rec) {
    const int n0 = positive_int(c, "n0");
    const double F0 = positive(c, "F0");
    const std::string& kind = c.get_string("surface");
    secular::ChiSurface surf = kind == "lp1"   ? secular::lp1_surface()
                               : kind == "cp1" ? secular::cp1_surface(c.get_double("M"))
                               : kind == "ep1" ? secular::ep1_surface(c.get_double("alpha"))
                                               : secular::lp2_surface();
    secular::AngularOptions opt;
    opt.n_x = opt.n_angle = positive_int(c, "grid");
    const auto q = secular::quantize_angular(surf, n0, n0, opt);
    const auto lv = secular::manifold_energies(q, surf.resonance_order(), F0, static_cast<int>(c.get_int("N")));
    Csv t({"p", "chi", "action", "rotational", "quasienergy", "outside_island"});
    for (std::size_t i = 0; i < lv.size(); ++i)
        t.row({static_cast<double>(lv[i].p), lv[i].chi, q.loops[i].action, q.loops[i].rotational ? 1.0 : 0.0,
               lv[i].quasienergy, lv[i].outside_island ? 1.0 : 0.0});
    rec.write("levels.csv", t.str());
    rec.note("chi_separatrix", q.chi_separatrix);
    const int ng = std::min(opt.n_x, 128);
    const auto g = secular::chi_grid(surf, n0, ng, ng);
    Csv sg({"x", "angle", "chi"});
    for (std::size_t i = 0; i < g.x.size(); ++i)
        for (std::size_t j = 0; j < g.angle.size(); ++j) sg.row({g.x[i], g.angle[j], g.values[i * g.angle.size() + j]});
    rec.write("surface.csv", sg.str());
    const double fs_ratio = c.get_double("Fs0_ratio");
    if (fs_ratio != 0.0) {
        require(surf.kind == secular::SurfaceKind::LP1, "static field requires surface = lp1");
        const double F = F0 / std::pow(n0, 4), Fs = fs_ratio * F;
        const auto mx = secular::heff_maximum(n0, F, Fs);
        rec.note("heff_maximum", {{"L_over_n0", mx.L / n0}, {"psi", mx.psi}, {"value", mx.value}});
        rec.note("critical_Fs0_over_F0", secular::critical_static_field(n0, F0) / F0);
    }
    if (c.svg) {
        HeatmapData hm{g.angle, g.x, g.values};
        rec.write("surface.svg", svg_heatmap("chi over (" + std::string(kind == "ep1" ? "M, phi" : "L, psi") + ")",
                                             "angle", kind == "ep1" ? "M" : "L", hm));
        Series s{"N = " + std::to_string(c.get_int("N")), {}, {}, true};
        for (const auto& l : lv) {
            s.x.push_back(l.p);
            s.y.push_back(l.quasienergy);
        }
        rec.write("levels.svg", svg_plot({"Manifold quasienergies", "p", "quasienergy", {s}, {}, {}}));
    }
}

// ---------------------------------------------------------------- bouncer
void run_bouncer(const ScenarioConfig& c, RunRecorder& rec) {
    const double n0 = positive(c, "n0"), lambda = positive(c, "lambda");
    const int s = positive_int(c, "s"), nb = positive_int(c, "bounces"), ns = positive_int(c, "seeds");
    const auto res = bouncer::bouncer_resonance(s, n0);
    rec.note("resonance", {{"omega", res.omega}, {"I_s", res.I_s}});
    const auto pp = bouncer::bouncer_pendulum(n0, lambda, s);
    const double dI = pendulum::predicted_width(pp);
    const double p_res = std::cbrt(3.0 * kPi * res.I_s);
    const double dp = 1.5 * dI * kPi / (p_res * p_res);
    std::vector<bouncer::BounceOrbit> orbits(static_cast<std::size_t>(ns));
    parallel_for(orbits.size(), [&](std::size_t i) {
        const double p = ns == 1 ? p_res : p_res - dp + 2.0 * dp * i / (ns - 1);
        try {
            orbits[i] = bouncer::bounce_orbit({p, 0.5 * kPi}, lambda, res.omega, nb, s);
        } catch (const DomainError&) {
            orbits[i] = {};
        }
    });
    Csv sec({"seed", "bounce", "phase_mod_2pi", "p", "I", "librational"});
    Series lib{"librational", {}, {}, true}, rot{"other", {}, {}, true};
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t k = 0; k < orbits[i].points.size(); ++k) {
            const auto& b = orbits[i].points[k];
            const double ph = b.phase - kTwoPi * std::floor(b.phase / kTwoPi);
            const double I = bouncer::action_at_bounce(b.p);
            sec.row({static_cast<double>(i), static_cast<double>(k), ph, b.p, I, orbits[i].librational ? 1.0 : 0.0});
            auto& se = orbits[i].librational ? lib : rot;
            se.x.push_back(ph);
            se.y.push_back(I);
        }
    rec.write("bounce_section.csv", sec.str());
    Csv sp({"lambda", "splitting_formula", "splitting_mathieu"});
    const double omega2 = bouncer::bouncer_resonance(2, n0).omega;
    for (double l : c.get_list("lambda_list")) {
        require(l > 0.0, "params.lambda_list entries must be positive");
        sp.row({l, bouncer::tunneling_splitting(l, omega2), bouncer::mathieu_splitting(l, n0)});
    }
    rec.write("splitting.csv", sp.str());
    if (c.svg) rec.write("bounce_section.svg", svg_plot({"Bounce map section", "phase mod 2pi", "I", {lib, rot}, {}, {}}));
}

// ---------------------------------------------------------------- rmt
void run_rmt(const ScenarioConfig& c, RunRecorder& rec) {
    open_system::RmtModel m;
    m.sigma = c.get_double("sigma");
    m.gamma = c.get_double("gamma");
    m.delta = c.get_double("delta");
    m.n_chaotic = positive_int(c, "n_chaotic");
    m.seed = c.seed.value_or(1);
    const auto e = open_system::sample_rmt(m, positive_int(c, "samples"));
    Csv t({"index", "shift", "width"});
    for (std::size_t i = 0; i < e.shifts.size(); ++i) t.row({static_cast<double>(i), e.shifts[i], e.widths[i]});
    rec.write("samples.csv", t.str());
    rec.note("flagged", e.flagged);
    if (m.sigma == 0.0 || e.shifts.size() < 1000) return;
    const auto sum = open_system::distribution_summary(e);
    const auto ks = open_system::ks_test_cauchy(e.shifts, sum.shifts);
    Csv s({"cauchy_location", "cauchy_scale", "ks_statistic", "ks_p_value", "sqrt_width_scale", "mean_width",
           "tail_algebraic_decades", "tail_cutoff"});
    s.row({sum.shifts.location, sum.shifts.scale, ks.statistic, ks.p_value, sum.sqrt_width_scale, sum.mean_width,
           sum.shift_tail.algebraic_decades, sum.shift_tail.cutoff_detected ? sum.shift_tail.cutoff_scale : NAN});
    rec.write("summary.csv", s.str());
    if (c.svg) {
        const double g = sum.shifts.scale, x0 = sum.shifts.location;
        const int nb = 81;
        const double lo = x0 - 10 * g, hi = x0 + 10 * g, w = (hi - lo) / nb;
        Series h{"histogram", {}, {}, false}, f{"Cauchy fit", {}, {}, false};
        std::vector<double> cnt(nb, 0.0);
        for (double x : e.shifts)
            if (x >= lo && x < hi) cnt[static_cast<std::size_t>((x - lo) / w)] += 1.0;
        for (int i = 0; i < nb; ++i) {
            const double xc = lo + (i + 0.5) * w;
            h.x.push_back(xc);
            h.y.push_back(cnt[i] / (e.shifts.size() * w));
            f.x.push_back(xc);
            f.y.push_back(g / (kPi * ((xc - x0) * (xc - x0) + g * g)));
        }
        rec.write("shifts.svg", svg_plot({"Shift distribution", "shift", "density", {h, f}, {}, {}}));
    }
}

// ---------------------------------------------------------------- pulse
void run_pulse(const ScenarioConfig& c, RunRecorder& rec) {
    const int n0 = positive_int(c, "n0");
    const double F0 = positive(c, "F0_max");
    const double omega = 1.0 / (static_cast<double>(n0) * n0 * n0), F = F0 / std::pow(n0, 4);
    pulse::PulseBasis b{static_cast<int>(c.get_int("n_min")), static_cast<int>(c.get_int("n_max")),
                        static_cast<int>(c.get_int("k_min")), static_cast<int>(c.get_int("k_max"))};
    pulse::PulseOptions o;
    o.steps_per_period = positive_int(c, "steps_per_period");
    o.mode = dipoles(c);
    const auto Ts = c.get_list("T_switch");
    const auto shape = c.get_string("shape") == "linear" ? pulse::PulseShape::Linear : pulse::PulseShape::Sin2;
    const auto tg = pulse::make_pulse_target(n0, F, omega, b, o);
    std::vector<pulse::ScanPoint> scan(Ts.size());
    parallel_for(Ts.size(), [&](std::size_t i) {
        const auto r = pulse::propagate_pulse_1d(n0, {F, Ts[i], shape}, omega, b, tg, o);
        scan[i] = {Ts[i], r.overlap, r.norm_error};
    });
    Csv t({"T_switch", "F0_max", "overlap"});
    Series s{"overlap", {}, {}, false};
    for (const auto& p : scan) {
        t.row({p.T_switch, F0, p.overlap});
        s.x.push_back(std::log10(std::max(p.T_switch, 1e-3)));
        s.y.push_back(p.overlap);
    }
    rec.write("scan.csv", t.str());
    const double Tmax = *std::max_element(Ts.begin(), Ts.end());
    Csv pr({"t_periods", "F0"});
    for (int i = 0; i <= 400; ++i) {
        const double tt = 1.25 * Tmax * i / 400.0;
        pr.row({tt, pulse::pulse_amplitude({F0, Tmax, shape}, tt)});
    }
    rec.write("profile.csv", pr.str());
    const auto ts = pulse::switching_timescales(n0, static_cast<int>(c.get_int("n_plus")), static_cast<int>(c.get_int("n_minus")));
    rec.note("timescales", {{"F0_trapping", ts.F0_trapping}, {"tau_trapping_periods", ts.tau_trapping},
                            {"tau_unharmonic_periods", ts.tau_unharmonic}});
    rec.note("target_warning", tg.identification.warning);
    if (c.svg) rec.write("scan.svg", svg_plot({"Target overlap after switching", "log10 T_switch (periods)", "overlap", {s}, {}, {}}));
}

// ---------------------------------------------------------------- radiative
void run_radiative(const ScenarioConfig& c, RunRecorder& rec) {
    const int n0 = positive_int(c, "n0");
    const double omega = 1.0 / (static_cast<double>(n0) * n0 * n0);
    const auto qs = grid(c.get_double("q_min"), c.get_double("q_max"), positive_int(c, "q_points"));
    Csv t({"q", "rate", "energy_loss", "energy_loss_classical"});
    Series s{"rate", {}, {}, false};
    for (double q : qs) {
        const auto r = open_system::cp_elastic_rate(omega, q);
        t.row({q, r.rate, r.energy_loss, r.energy_loss_classical});
        s.x.push_back(q);
        s.y.push_back(r.rate);
    }
    rec.write("cp_elastic.csv", t.str());
    Csv sp({"n_final", "transition_energy", "dipole", "rate"});
    const auto mode = dipoles(c);
    for (int nf = 1; nf < n0; ++nf) {
        const double Ei = -0.5 / (static_cast<double>(n0) * n0), Ef = -0.5 / (static_cast<double>(nf) * nf);
        const double d = floquet::dipole_matrix_1d(n0, nf, mode);
        sp.row({static_cast<double>(nf), Ei - Ef, d, open_system::spontaneous_rate(Ei, Ef, d)});
    }
    rec.write("spontaneous.csv", sp.str());
    if (c.svg) rec.write("cp_elastic.svg", svg_plot({"Elastic scattering rate at the CP equilibrium", "q", "rate (a.u.)", {s}, {}, {}}));
}

std::map<std::string, Command> build() {
    std::map<std::string, Command> m;
    const std::vector<std::string> modes{"exact", "semiclassical"};
    m["sos"] = {{"sos",
                 {D("n0", "60", "resonant action"), D("F0", "0.01", "scaled field"), I("s", "1", "resonance order"),
                  I("periods", "150", "drive periods per seed"), D("phase", "0", "section drive phase"),
                  S("seeds", "auto", "auto (line), grid, or I:theta;I:theta;...", {}), I("seed_count", "27", "seeds along I"),
                  I("seed_angles", "8", "angles per action for seeds = grid"),
                  D("seed_theta", "3.141592653589793", "angle of the auto seed line"),
                  D("seed_span", "1.3", "auto line half-length in island half widths")}},
                "stroboscopic section of the driven 1D atom", false, run_sos};
    m["spectrum"] = {{"spectrum",
                      {D("n0", "60", "resonant level"), L("F0", "0.01,0.02,0.03,0.04", "scaled fields"),
                       I("n_min", "30", "basis"), I("n_max", "90", "basis"), I("k_min", "-40", "photon blocks"),
                       I("k_max", "40", "photon blocks"), I("count", "10", "states per field"),
                       S("dipoles", "exact", "dipole matrix elements", modes)}},
                     "1D Floquet spectrum and wave-packet identification", true, run_spectrum};
    m["mathieu"] = {{"mathieu",
                     {D("nu", "0", "characteristic exponent"), D("q_min", "0", "grid"), D("q_max", "20", "grid"),
                      I("q_points", "201", "grid"), I("count", "6", "values per q")}},
                    "Mathieu characteristic values", false, run_mathieu};
    m["wavepacket"] = {{"wavepacket",
                        {D("n0", "60", "centre"), D("delta_n", "1.8", "width"), D("t_end", "25", "duration in T_rec"),
                         I("samples_per_period", "400", "trace resolution"), D("threshold", "0.2", "collapse level")}},
                       "autocorrelation of a Rydberg wave packet", false, run_wavepacket};
    m["cp"] = {{"cp",
                {D("n0", "60", "resonant level"), D("q_min", "0.85", "grid"), D("q_max", "1", "grid"),
                 I("q_points", "151", "grid"), D("omega_c_ratio", "0", "cyclotron frequency / omega"),
                 D("diagram_F0_min", "0.001", "diagram"), D("diagram_F0_max", "0.1", "diagram"),
                 D("diagram_ratio_min", "-1", "diagram"), D("diagram_ratio_max", "1.5", "diagram"),
                 I("diagram_points", "60", "diagram")}},
               "circular-polarisation equilibria, modes and stability", false, run_cp};
    m["secular"] = {{"secular",
                     {S("surface", "lp1", "coupling surface", {"lp1", "cp1", "ep1", "lp2"}), I("n0", "21", "manifold"),
                      D("F0", "0.03", "scaled field"), D("M", "0", "cp1 projection"), D("alpha", "0.5", "ep1 ellipticity"),
                      I("N", "0", "pendulum quantum number"), I("grid", "256", "quantisation grid"),
                      D("Fs0_ratio", "0", "static field / F0 (lp1)")}},
                    "angular quantisation of the secular surfaces", false, run_secular};
    m["bouncer"] = {{"bouncer",
                     {D("n0", "20", "resonant level"), I("s", "1", "resonance order"), D("lambda", "0.01", "drive"),
                      I("bounces", "400", "bounces per seed"), I("seeds", "41", "seeds across the island"),
                      L("lambda_list", "0.002,0.005,0.01,0.015,0.02", "s = 2 doublet splitting table")}},
                    "driven gravitational bouncer", false, run_bouncer};
    m["rmt"] = {{"rmt",
                 {D("sigma", "0.05", "coupling rms"), D("gamma", "0.05", "chaotic widths"), D("delta", "1", "spacing"),
                  I("n_chaotic", "100", "GOE size"), I("samples", "10000", "ensemble size")}},
                "random-matrix shift and width statistics", false, run_rmt};
    m["pulse"] = {{"pulse",
                   {I("n0", "60", "initial level"), D("F0_max", "0.03", "final scaled field"),
                    L("T_switch", "1,5,25,100,400,1600", "rise times in periods"),
                    S("shape", "sin2", "envelope", {"sin2", "linear"}), I("n_min", "35", "basis"), I("n_max", "85", "basis"),
                    I("k_min", "-40", "target photon blocks"), I("k_max", "40", "target photon blocks"),
                    I("steps_per_period", "60", "propagation steps"), S("dipoles", "semiclassical", "dipole matrix elements", modes),
                    I("n_plus", "1", "CP mode quanta for the timescale estimate"),
                    I("n_minus", "4", "CP mode quanta for the timescale estimate")}},
                  "switch-on scan of the 1D atom", true, run_pulse};
    m["radiative"] = {{"radiative",
                       {I("n0", "60", "level"), D("q_min", "0.9", "grid"), D("q_max", "1", "grid"), I("q_points", "21", "grid"),
                        S("dipoles", "exact", "dipole matrix elements", modes)}},
                      "radiative rates", false, run_radiative};
    return m;
}

}  // namespace

const std::map<std::string, Command>& commands() {
    static const auto m = build();
    return m;
}

}  // namespace ndwp::cli
