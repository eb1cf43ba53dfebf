#include "jcfb/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "jcfb/analysis.hpp"
#include "jcfb/validation.hpp"

namespace jcfb::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SharedFlags {
    std::optional<double> gamma, kappa, kappa1, tau, phi, t_max, kappa_tau;
    std::optional<int> steps_per_delay, modes;
    std::string out;
    std::string preset;
};

struct Scenario {
    std::string name;
    FeedbackParams params;
    double t_max;
    int steps_per_delay;
    int modes;
    std::vector<ModelKind> models;
};

std::string preset_list() {
    std::string names;
    for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
    return names;
}

Scenario resolve(const SharedFlags& f, bool need_t_max) {
    const Preset* preset = nullptr;
    if (!f.preset.empty()) {
        preset = find_preset(f.preset);
        if (!preset) throw UsageError("unknown preset '" + f.preset + "'; available: " + preset_list());
    }
    auto pick = [&](const std::optional<double>& flag, std::optional<double> fallback, const char* name) {
        if (flag) return *flag;
        if (fallback) return *fallback;
        throw UsageError(std::string("missing --") + name + " (or use --preset)");
    };

    const double kappa = pick(f.kappa, preset ? std::optional(preset->kappa) : std::nullopt, "kappa");
    if (preset && preset->needs_kappa_tau && !f.kappa_tau && !f.tau) {
        throw UsageError("preset '" + preset->name + "' needs --kappa-tau (no default delay)");
    }
    double tau;
    if (f.tau) {
        tau = *f.tau;
    } else if (f.kappa_tau) {
        tau = *f.kappa_tau / kappa;
    } else if (preset) {
        tau = preset->tau;
    } else {
        throw UsageError("missing --tau (or --kappa-tau, or use --preset)");
    }

    const double gamma = pick(f.gamma, preset ? std::optional(preset->gamma) : std::nullopt, "gamma");
    const double kappa1 = pick(f.kappa1, preset ? preset->kappa1 : 0.0, "kappa1");
    const double phi = pick(f.phi, preset ? std::optional(preset->phi) : std::nullopt, "phi");

    std::optional<double> preset_t_max;
    if (preset) preset_t_max = preset->needs_kappa_tau ? 10.0 * tau : preset->t_max;
    const double t_max = need_t_max ? pick(f.t_max, preset_t_max, "tmax") : f.t_max.value_or(tau);

    Scenario s{preset ? preset->name : "run", make_params(gamma, kappa, kappa1, tau, phi), t_max,
               f.steps_per_delay.value_or(preset ? preset->steps_per_delay : kDefaultStepsPerDelay),
               f.modes.value_or(preset ? preset->modes : 0), {}};
    if (preset) s.models = preset->models;
    return s;
}

// Opens --out, or hands back `fallback` when no path was given.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path.empty()) return;
        const auto parent = std::filesystem::path(path).parent_path();
        std::error_code ec;
        if (!parent.empty()) std::filesystem::create_directories(parent, ec);
        file_.open(path);
        if (!file_) throw UsageError("cannot write output file '" + path + "'");
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void print_regime(std::ostream& out, const FeedbackParams& p) {
    const auto label = regime_label(p);
    out << "regime: " << to_string(label.delay) << " (kappa*tau=" << format_number(label.delay_parameter)
        << "), " << to_string(label.coupling) << " (gamma/kappa=" << format_number(label.coupling_parameter)
        << ")\n";
}

int cmd_simulate(const SharedFlags& f, const std::vector<std::string>& model_names, std::ostream& out,
                 std::ostream& err) {
    Scenario s = resolve(f, true);
    if (!model_names.empty()) {
        s.models.clear();
        for (const auto& m : model_names) s.models.push_back(parse_model_kind(m));
    }
    if (s.models.empty()) {
        s.models = {ModelKind::NoFeedback, ModelKind::ContinuousMode, ModelKind::DiscreteModeDelay};
    }

    const std::filesystem::path dir = f.out.empty() ? std::filesystem::path(".") : std::filesystem::path(f.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory '" + dir.string() + "': " + ec.message());

    out << "params: " << s.params.describe() << "\n";
    print_regime(out, s.params);
    for (ModelKind kind : s.models) {
        Trajectory tr;
        if (kind == ModelKind::DiscreteModeSum) {
            auto result = simulate_dm_modesum(s.params, s.t_max, s.steps_per_delay, {s.modes, 0});
            for (const auto& w : result.warnings) err << "warning: " << w << "\n";
            tr = std::move(result.trajectory);
        } else {
            tr = simulate(kind, s.params, s.t_max, s.steps_per_delay);
        }
        const auto path = dir / (s.name + "_" + to_string(kind) + ".csv");
        std::ofstream file(path);
        if (!file) throw UsageError("cannot write output file '" + path.string() + "'");
        write_trajectory_csv(file, s.params, kind, tr);
        if (!file) throw UsageError("write failed for '" + path.string() + "'");
        out << "wrote " << path.string() << " (" << tr.size() << " rows)\n";
    }
    const bool discrete = std::any_of(s.models.begin(), s.models.end(), [](ModelKind k) {
        return k == ModelKind::DiscreteModeDelay || k == ModelKind::DiscreteModeSum;
    });
    if (discrete && is_odd_pi_phase(s.params.phi())) {
        out << "steady_state: |c_e(inf)| = " << format_number(std::abs(steady_state_dm(s.params)))
            << " (1/(1+eta), eta=" << format_number(s.params.eta()) << ")\n";
    }
    return kSuccess;
}

int cmd_spectrum(const SharedFlags& f, const std::string& model, bool all, std::optional<double> omega_max,
                 std::size_t points, std::ostream& out) {
    const Scenario s = resolve(f, false);
    const auto& p = s.params;
    const double limit = omega_max.value_or(10.0 * std::max({p.gamma(), p.kappa(), 2.0 * kPi / p.tau()}));
    const auto grid = symmetric_grid(limit, points);

    // evaluate everything before touching the output, so a rejected request emits nothing
    std::vector<std::vector<double>> columns;
    if (all) {
        for (auto kind : {ModelKind::NoFeedback, ModelKind::ContinuousMode, ModelKind::DiscreteModeDelay}) {
            columns.push_back(spectrum(p, kind, grid).values);
        }
    } else {
        columns.push_back(spectrum(p, parse_model_kind(model), grid).values);
    }

    Output o(f.out, out);
    auto& os = o.stream();
    os << "# params: " << p.describe() << "\n";
    os << (all ? "omega,S_nofb,S_cm,S_dm\n" : "omega,S\n");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_number(grid[i]);
        for (const auto& c : columns) os << ',' << format_number(c[i]);
        os << '\n';
    }
    return kSuccess;
}

struct PoleFlags {
    std::string model = "cm";
    std::optional<int> interval;
    std::optional<double> re_min, re_max, im_min, im_max;
    int grid = 40;
    bool check_rabi = false;
};

int cmd_poles(const SharedFlags& f, const PoleFlags& pf, std::ostream& out) {
    const Scenario s = resolve(f, false);
    const auto& p = s.params;
    CharacteristicFunction cf = CharacteristicFunction::continuous(p);
    if (pf.model == "cm") {
        cf = CharacteristicFunction::continuous(p, pf.interval.value_or(1));
    } else if (pf.model == "dm") {
        cf = CharacteristicFunction::discrete(p, pf.interval.value_or(CharacteristicFunction::kInfinite));
    } else {
        throw UsageError("--model must be cm or dm for poles");
    }
    const double height = 3.0 * std::max(p.gamma(), p.kappa());
    const SearchBox box{pf.re_min.value_or(-2.0 * (p.kappa() + p.kappa1())), pf.re_max.value_or(p.kappa()),
                        pf.im_min.value_or(-height), pf.im_max.value_or(height)};
    if (!(box.re_min < box.re_max && box.im_min < box.im_max)) throw UsageError("empty search box");
    if (pf.grid < 1) throw UsageError("--grid must be >= 1");

    const auto roots = find_poles(cf, box, pf.grid);
    Output o(f.out, out);
    auto& os = o.stream();
    os << "# params: " << p.describe() << "\n";
    os << "re_s,im_s,abs_D,flag\n";
    for (const auto& r : roots) {
        std::string flag;
        if (std::abs(r.s.real()) < 1e-8) flag = "marginal";
        if (r.multiplicity > 1) flag += flag.empty() ? "double" : ";double";
        os << format_number(r.s.real()) << ',' << format_number(r.s.imag()) << ',' << format_number(r.abs_d)
           << ',' << flag << '\n';
    }
    if (pf.check_rabi) {
        const double winding = (p.delta0() + p.gamma()) * p.tau();
        double residue = std::fmod(winding, 2.0 * kPi);
        if (residue < 0.0) residue += 2.0 * kPi;
        const double distance = std::min(residue, 2.0 * kPi - residue);
        const long m = std::lround(winding / (2.0 * kPi));
        out << "# rabi_condition: (delta0+gamma)*tau = " << format_number(winding) << ", distance to 2*pi*m = "
            << format_number(distance) << (distance < 1e-9 ? " -> satisfied" : " -> not satisfied")
            << " (m=" << m << ")\n";
        if (distance < 1e-9 && p.gamma() > 0.0 && m > 0) {
            out << "# predicted_amplitude: 1/(1+kappa*m*pi/gamma) = "
                << format_number(1.0 / (1.0 + p.kappa() * static_cast<double>(m) * kPi / p.gamma())) << "\n";
        }
    }
    return kSuccess;
}

int cmd_steady_state(const SharedFlags& f, std::ostream& out) {
    const Scenario s = resolve(f, false);
    const auto& p = s.params;
    const cplx ce = steady_state_dm(p);
    out << "params: " << p.describe() << "\n";
    out << "eta = " << format_number(p.eta()) << "\n";
    out << "odd_pi_phase = " << (is_odd_pi_phase(p.phi()) ? "true" : "false") << "\n";
    out << "steady_state_dm |c_e| = " << format_number(std::abs(ce)) << "\n";
    out << "steady_state_dm |c_e|^2 = " << format_number(std::norm(ce)) << "\n";
    out << "steady_state_cm |c_e| = 0\n";
    return kSuccess;
}

int cmd_normal_modes(const SharedFlags& f, std::optional<double> big_g, std::ostream& out) {
    double gamma, g;
    if (big_g) {
        if (!f.gamma) throw UsageError("missing --gamma");
        gamma = *f.gamma;
        g = *big_g;
    } else {
        const Scenario s = resolve(f, false);
        gamma = s.params.gamma();
        g = s.params.mode_coupling();
    }
    const auto set = normal_modes(gamma, g);
    out << "gamma = " << format_number(gamma) << "\nG = " << format_number(g) << "\n";
    out << "xi = " << format_number(set.xi) << "\n";
    const char* names[3] = {"B+", "B-", "D"};
    for (std::size_t k = 0; k < set.modes.size(); ++k) {
        out << names[k] << ": energy=" << format_number(set.energies[k]) << " (A, C1, C2) = ("
            << format_number(set.modes[k][0]) << ", " << format_number(set.modes[k][1]) << ", "
            << format_number(set.modes[k][2]) << ")\n";
    }
    out << "dark_overlap = " << format_number(set.dark_overlap) << "\n";
    return kSuccess;
}

int cmd_series(const SharedFlags& f, const std::string& kind, int m_max, int p_max, std::size_t samples,
               std::ostream& out) {
    const Scenario s = resolve(f, true);
    if (kind != "cm" && kind != "dm") throw UsageError("--kind must be cm or dm");
    if (samples < 2) throw UsageError("--samples must be >= 2");
    std::vector<double> times(samples);
    std::vector<cplx> values(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        times[i] = s.t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        values[i] = kind == "cm" ? series_cm(s.params, times[i], m_max)
                                 : series_dm(s.params, times[i], m_max, p_max);
    }
    Output o(f.out, out);
    auto& os = o.stream();
    os << "# params: " << s.params.describe() << "\n";
    os << "t,re_cg,im_cg,abs2_cg\n";
    for (std::size_t i = 0; i < samples; ++i) {
        os << format_number(times[i]) << ',' << format_number(values[i].real()) << ','
           << format_number(values[i].imag()) << ',' << format_number(std::norm(values[i])) << '\n';
    }
    return kSuccess;
}

int cmd_validate(bool full, const std::vector<std::string>& only, bool serial, std::ostream& out) {
    const auto level = full ? validation::Level::Full : validation::Level::Fast;
    const auto results = validation::run_checks(level, only, !serial);
    std::size_t passed = 0;
    for (const auto& r : results) {
        validation::print(out, r);
        if (r.passed()) ++passed;
    }
    out << passed << "/" << results.size() << " checks passed (" << (full ? "full" : "fast") << ")\n";
    return passed == results.size() ? kSuccess : kCheckFailure;
}

}  // namespace

const std::vector<Preset>& presets() {
    using enum ModelKind;
    static const std::vector<Preset> all{
        {"fig-shortdelay-a", "10 kappa tau = gamma tau = 0.1, phi = 2 pi", 10.0, 1.0, 0.0, 0.01, 2.0 * kPi, 5.0,
         1000, 0, {NoFeedback, ContinuousMode, DiscreteModeDelay}},
        {"fig-shortdelay-b", "10 kappa tau = gamma tau = 0.1, phi = pi", 10.0, 1.0, 0.0, 0.01, kPi, 5.0, 1000, 0,
         {NoFeedback, ContinuousMode, DiscreteModeDelay}},
        {"fig-longdelay", "kappa tau = gamma tau = 100 pi, phi = 2 pi", 1.0, 1.0, 0.0, 100.0 * kPi, 2.0 * kPi,
         400.0 * kPi, 20000, 0, {NoFeedback, ContinuousMode, DiscreteModeDelay}},
        {"fig-3tau", "kappa tau = 0.5 gamma tau = 5 pi, phi = pi", 2.0, 1.0, 0.0, 5.0 * kPi, kPi, 15.0 * kPi,
         1000, 0, {NoFeedback, ContinuousMode, DiscreteModeDelay}},
        {"fig-trapped", "kappa tau = gamma tau = pi/3, 2 kappa1 = kappa, phi = pi", 1.0, 1.0, 0.5, kPi / 3.0,
         kPi, 200.0, 1000, 0, {NoFeedback, ContinuousMode, DiscreteModeDelay}},
        {"fig-rabi-cm", "kappa tau = gamma tau = pi, kappa1 = 0, (delta0 + gamma) tau = 2 pi", 1.0, 1.0, 0.0,
         kPi, kPi, 60.0 * kPi, 1000, 0, {ContinuousMode, DiscreteModeDelay}},
        {"fig-comparison", "kappa tau = gamma tau = pi/3, phi = pi, N = 400", 1.0, 1.0, 0.0, kPi / 3.0, kPi,
         10.0 * kPi / 3.0, 1000, 400, {DiscreteModeDelay, DiscreteModeSum}},
        {"fig-spectrum-short", "kappa1 = kappa/2, gamma = kappa, phi = pi; short delay", 1.0, 1.0, 0.5, 0.0, kPi,
         0.0, 1000, 0, {NoFeedback, ContinuousMode, DiscreteModeDelay}, true},
        {"fig-spectrum-long", "kappa1 = kappa/2, gamma = kappa, phi = pi; longer delay", 1.0, 1.0, 0.5, 0.0, kPi,
         0.0, 1000, 0, {NoFeedback, ContinuousMode, DiscreteModeDelay}, true},
    };
    return all;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const FeedbackParams& params, ModelKind kind,
                          const Trajectory& tr) {
    os << "# params: " << params.describe() << " model=" << to_string(kind) << "\n";
    os << "t,re_ce,im_ce,abs2_ce,re_cg,im_cg,abs2_cg,t_over_tau\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const cplx e = tr.c_e[i], g = tr.c_g[i];
        os << format_number(tr.times[i]) << ',' << format_number(e.real()) << ',' << format_number(e.imag())
           << ',' << format_number(std::norm(e)) << ',' << format_number(g.real()) << ','
           << format_number(g.imag()) << ',' << format_number(std::norm(g)) << ','
           << format_number(tr.times[i] / params.tau()) << '\n';
    }
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            table.comments.push_back(line.substr(1));
            continue;
        }
        if (table.header.empty()) {
            table.header = split(line);
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : split(line)) {
            std::size_t used = 0;
            row.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument("non-numeric CSV cell '" + cell + "'");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-delayed coherent feedback for the single-excitation Jaynes-Cummings model", "jcfb"};
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::ignore);
    app.set_config("--config", "", "flat key=value file with any of the shared flags");

    SharedFlags f;
    app.add_option("--gamma", f.gamma, "atom-cavity coupling gamma");
    app.add_option("--kappa", f.kappa, "feedback-channel decay rate kappa (> 0)");
    app.add_option("--kappa1", f.kappa1, "loss-channel decay rate kappa1 (default 0)");
    app.add_option("--tau", f.tau, "roundtrip delay tau");
    app.add_option("--phi", f.phi, "feedback phase phi [rad]");
    app.add_option("--kappa-tau", f.kappa_tau, "delay as kappa*tau (alternative to --tau)");
    app.add_option("--tmax", f.t_max, "simulated time span");
    app.add_option("--steps-per-delay", f.steps_per_delay, "grid steps per delay, M >= 100");
    app.add_option("--modes", f.modes, "mode-sum truncation N (modes -N..N)");
    app.add_option("--out", f.out, "output file (directory for simulate)");
    app.add_option("--preset", f.preset, "named scenario");

    std::vector<std::string> models;
    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the dynamics and write one CSV per model");
    simulate_cmd->add_option("--models", models, "comma-separated subset of nofb,cm,dm,modesum")->delimiter(',');

    std::string spectrum_model = "dm";
    bool all = false;
    std::optional<double> omega_max;
    std::size_t points = 2001;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "closed-form emission spectrum as CSV omega,S");
    spectrum_cmd->add_option("--model", spectrum_model, "nofb, cm or dm")->capture_default_str();
    spectrum_cmd->add_flag("--all", all, "all three kinds side by side");
    spectrum_cmd->add_option("--omega-max", omega_max, "grid half-width (default 10*max(gamma, kappa, 2pi/tau))");
    spectrum_cmd->add_option("--points", points, "grid points")->capture_default_str();

    bool full = false, fast = false, serial = false;
    std::vector<std::string> only;
    auto* validate_cmd = app.add_subcommand("validate", "run the acceptance checks");
    auto* full_flag = validate_cmd->add_flag("--full", full, "reference resolution and runtime limits");
    validate_cmd->add_flag("--fast", fast, "reduced M and N (default)")->excludes(full_flag);
    validate_cmd->add_option("--only", only, "check ids or tags, comma-separated")->delimiter(',');
    validate_cmd->add_flag("--serial", serial, "run checks one after another");

    PoleFlags pf;
    auto* poles_cmd = app.add_subcommand("poles", "roots of the characteristic function as CSV re_s,im_s,abs_D");
    poles_cmd->add_option("--model", pf.model, "cm or dm")->capture_default_str();
    poles_cmd->add_option("--interval", pf.interval, "kernel interval n (cm default 1, dm default infinite)");
    poles_cmd->add_option("--re-min", pf.re_min);
    poles_cmd->add_option("--re-max", pf.re_max);
    poles_cmd->add_option("--im-min", pf.im_min);
    poles_cmd->add_option("--im-max", pf.im_max);
    poles_cmd->add_option("--grid", pf.grid, "seed mesh size per axis")->capture_default_str();
    poles_cmd->add_flag("--check-rabi", pf.check_rabi, "report the stabilization condition");

    auto* steady_cmd = app.add_subcommand("steady-state", "trapped excitation in the long-time limit");

    std::optional<double> big_g;
    auto* normal_cmd = app.add_subcommand("normal-modes", "atom plus two coupled cavities");
    normal_cmd->add_option("--G", big_g, "cavity-cavity coupling (default 2*sqrt(kappa/tau))");

    std::string series_kind = "cm";
    int m_max = 8, p_max = 8;
    std::size_t samples = 201;
    auto* series_cmd = app.add_subcommand("series", "gamma == kappa series solution as CSV t,re_cg,im_cg,abs2_cg");
    series_cmd->add_option("--kind", series_kind, "cm or dm")->capture_default_str();
    series_cmd->add_option("--m-max", m_max)->capture_default_str();
    series_cmd->add_option("--p-max", p_max)->capture_default_str();
    series_cmd->add_option("--samples", samples)->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*simulate_cmd) return cmd_simulate(f, models, out, err);
        if (*spectrum_cmd) return cmd_spectrum(f, spectrum_model, all, omega_max, points, out);
        if (*validate_cmd) return cmd_validate(full, only, serial, out);
        if (*poles_cmd) return cmd_poles(f, pf, out);
        if (*steady_cmd) return cmd_steady_state(f, out);
        if (*normal_cmd) return cmd_normal_modes(f, big_g, out);
        if (*series_cmd) return cmd_series(f, series_kind, m_max, p_max, samples, out);
    } catch (const NumericalError& e) {
        err << "error: numerical failure at t=" << format_number(e.time()) << ": " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace jcfb::cli
