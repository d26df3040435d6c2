// Command-line front end: visibility sweeps, propagator cross-checks,
// seeded collapse sampling, packet classification, and the decoherence
// discrimination protocol. Emits CSV or JSON; exit codes are scriptable:
//   0 success / RelativeDecoherence   1 tolerance failure
//   2 usage or precondition           3 Fock cutoff too small
//   4 interference gate               5 AbsoluteDecoherence
//   6 Inconclusive

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mirrorsim/mirror_model.hpp"
#include "mirrorsim/propagator.hpp"

using json = nlohmann::ordered_json;
using namespace mirrorsim;

namespace {

namespace exit_code {
constexpr int ok = 0;
constexpr int tolerance = 1;
constexpr int usage = 2;
constexpr int cutoff = 3;
constexpr int interference = 4;
constexpr int absolute = 5;
constexpr int inconclusive = 6;
} // namespace exit_code

struct RunConfig {
    double k = 1.0;
    double omega_m = 1.0;
    double omega_p = 0.0;
    Index n_max = 0; // 0 selects the default cutoff rule
    double gamma = 0.0;
    bool gamma_absolute = false;

    double t_start = 0.0;
    double periods = 1.0;
    std::optional<double> t_end_raw;
    std::size_t samples = 512;

    double t_over_tm = 0.5;
    std::optional<double> t_raw;

    std::uint64_t seed = 42;
    std::size_t draws = 100000;
    double overlap_tol = default_overlap_tol;

    std::string alpha_text = "0";
    std::optional<double> cat;
    double threshold = default_packet_threshold;

    double revival_tol = 0.01;
    double suppression_tol = 0.2;
    double tolerance = 1e-6;

    std::string format = "csv";
    std::string output = "-";
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// "1.5", "-2i", "1+2i", "3e-1-0.5i" -> complex; nullopt on malformed input
std::optional<Complex> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        return std::nullopt;

    auto to_double = [](const std::string& part) -> std::optional<double> {
        if (part.empty() || part == "+")
            return 1.0;
        if (part == "-")
            return -1.0;
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (end != part.c_str() + part.size())
            return std::nullopt;
        return v;
    };

    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // split off a real part if a sign separates two components
        for (std::size_t pos = body.size(); pos-- > 1;) {
            if ((body[pos] == '+' || body[pos] == '-') && body[pos - 1] != 'e' &&
                body[pos - 1] != 'E') {
                const auto re = to_double(body.substr(0, pos));
                const auto im = to_double(body.substr(pos));
                if (!re || !im)
                    return std::nullopt;
                return Complex(*re, *im);
            }
        }
        const auto im = to_double(body);
        if (!im)
            return std::nullopt;
        return Complex(0.0, *im);
    }
    const auto re = to_double(s);
    if (!re)
        return std::nullopt;
    return Complex(*re, 0.0);
}

ModelParams model_params(const RunConfig& cfg) {
    ModelParams p{cfg.k, cfg.omega_m, cfg.omega_p, cfg.n_max, 0.0};
    p.gamma = cfg.gamma_absolute ? cfg.gamma : cfg.gamma / p.period();
    return p;
}

json config_echo(const RunConfig& cfg, const ModelParams& params, const std::string& command) {
    json j;
    j["command"] = command;
    j["k"] = params.k;
    j["omega_m"] = params.omega_m;
    j["omega_p"] = params.omega_p;
    j["n_max"] = params.fock_cutoff();
    j["gamma"] = params.gamma; // absolute rate
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    return j;
}

int write_output(const RunConfig& cfg, const std::string& content) {
    if (cfg.output == "-") {
        std::cout << content;
        return exit_code::ok;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output file " << cfg.output << "\n";
        return exit_code::usage;
    }
    file << content;
    return exit_code::ok;
}

std::vector<StateVector> arm_basis() {
    return {StateVector::basis({2}, 0), StateVector::basis({2}, 1)};
}

int run_visibility(const RunConfig& cfg) {
    const ModelParams params = model_params(cfg);
    const double t_end = cfg.t_end_raw ? *cfg.t_end_raw : cfg.periods * params.period();
    const VisibilityCurve curve = visibility_curve(params, cfg.t_start, t_end, cfg.samples);

    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "t,visibility,phase,mirror_purity,overlap_re,overlap_im\n";
        for (std::size_t i = 0; i < curve.times.size(); ++i)
            out << fmt(curve.times[i]) << ',' << fmt(curve.visibility[i]) << ','
                << fmt(curve.phase[i]) << ',' << fmt(curve.mirror_purity[i]) << ','
                << fmt(curve.overlap[i].real()) << ',' << fmt(curve.overlap[i].imag()) << '\n';
    } else {
        json j;
        j["config"] = config_echo(cfg, params, "visibility");
        j["config"]["t_start"] = cfg.t_start;
        j["config"]["t_end"] = t_end;
        j["config"]["samples"] = cfg.samples;
        j["t"] = curve.times;
        j["visibility"] = curve.visibility;
        j["phase"] = curve.phase;
        j["mirror_purity"] = curve.mirror_purity;
        json ov_re = json::array(), ov_im = json::array();
        for (const Complex& c : curve.overlap) {
            ov_re.push_back(c.real());
            ov_im.push_back(c.imag());
        }
        j["overlap_re"] = ov_re;
        j["overlap_im"] = ov_im;
        out << j.dump(2) << '\n';
    }
    return write_output(cfg, out.str());
}

int run_evolve_check(const RunConfig& cfg) {
    const ModelParams params = model_params(cfg);
    params.validate();
    const double t_end = cfg.t_end_raw ? *cfg.t_end_raw : cfg.periods * params.period();
    const HamiltonianSpec spec{params.omega_p, params.omega_m, params.k, params.fock_cutoff()};
    const Operator h = build_hamiltonian(spec);
    const StateVector psi0 = initial_state(params);

    double defect = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const double t =
            cfg.t_start + (t_end - cfg.t_start) * static_cast<double>(i) /
                              static_cast<double>(cfg.samples - 1);
        defect = std::max(defect, 1.0 - fidelity(evolve(h, t, psi0), joint_state(params, t)));
    }

    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "defect," << fmt(defect) << "\ntolerance," << fmt(cfg.tolerance) << '\n';
    } else {
        json j;
        j["config"] = config_echo(cfg, params, "evolve-check");
        j["config"]["samples"] = cfg.samples;
        j["defect"] = defect;
        j["tolerance"] = cfg.tolerance;
        out << j.dump(2) << '\n';
    }
    const int file_status = write_output(cfg, out.str());
    if (file_status != exit_code::ok)
        return file_status;
    if (defect > cfg.tolerance) {
        std::cerr << "error: propagator defect " << fmt(defect) << " exceeds tolerance "
                  << fmt(cfg.tolerance) << "\n";
        return exit_code::tolerance;
    }
    return exit_code::ok;
}

int run_collapse(const RunConfig& cfg) {
    const ModelParams params = model_params(cfg);
    const double t = cfg.t_raw ? *cfg.t_raw : cfg.t_over_tm * params.period();
    const StateVector correlated = joint_state(params, t);
    const PointerBasis pointers = pointer_set(params, t);
    const std::vector<StateVector> basis = arm_basis();
    const std::vector<double> weights = born_weights(correlated, basis);

    std::vector<std::size_t> counts(weights.size(), 0);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        const BranchOutcome out = selfdecohere(correlated, basis, pointers, cfg.overlap_tol,
                                               cfg.seed + static_cast<std::uint64_t>(i));
        ++counts[static_cast<std::size_t>(out.index)];
    }

    std::vector<double> frequencies(weights.size());
    double chi_square = 0.0;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        frequencies[n] = static_cast<double>(counts[n]) / static_cast<double>(cfg.draws);
        const double expected = weights[n] * static_cast<double>(cfg.draws);
        if (weights[n] > 0.0)
            chi_square += std::pow(static_cast<double>(counts[n]) - expected, 2) / expected;
    }

    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "branch,weight,count,frequency\n";
        for (std::size_t n = 0; n < weights.size(); ++n)
            out << n << ',' << fmt(weights[n]) << ',' << counts[n] << ','
                << fmt(frequencies[n]) << '\n';
        out << "chi_square," << fmt(chi_square) << ",,\n";
    } else {
        json j;
        j["config"] = config_echo(cfg, params, "collapse");
        j["config"]["t"] = t;
        j["config"]["draws"] = cfg.draws;
        j["config"]["overlap_tol"] = cfg.overlap_tol;
        j["weights"] = weights;
        j["counts"] = counts;
        j["frequencies"] = frequencies;
        j["chi_square"] = chi_square;
        out << j.dump(2) << '\n';
    }
    return write_output(cfg, out.str());
}

int run_packet_check(const RunConfig& cfg) {
    Complex alpha;
    bool cat = false;
    if (cfg.cat) {
        alpha = Complex(*cfg.cat, 0.0);
        cat = true;
    } else {
        const auto parsed = parse_complex(cfg.alpha_text);
        if (!parsed) {
            std::cerr << "error: cannot parse displacement '" << cfg.alpha_text << "'\n";
            return exit_code::usage;
        }
        alpha = *parsed;
    }
    if (!(cfg.threshold > 1.0)) {
        std::cerr << "error: threshold must be > 1\n";
        return exit_code::usage;
    }

    const Index cutoff =
        cfg.n_max > 0 ? cfg.n_max : default_cutoff(std::abs(alpha));
    StateVector state = coherent_state(alpha, cutoff);
    if (cat) {
        const StateVector mirror_image = coherent_state(-alpha, cutoff);
        state = StateVector::normalized({cutoff + 1}, state.amps() + mirror_image.amps());
    }

    const auto [x, p] = quadrature_observables(cutoff);
    const double ratio_x = wave_packet_ratio(state, x);
    const double ratio_p = wave_packet_ratio(state, p);
    const bool verdict = is_wave_packet(state, {x, p}, cfg.threshold);

    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "observable,ratio\nX," << fmt(ratio_x) << "\nP," << fmt(ratio_p)
            << "\nthreshold," << fmt(cfg.threshold) << "\nverdict,"
            << (verdict ? "true" : "false") << '\n';
    } else {
        json j;
        j["config"] = json{{"command", "packet-check"},
                           {"alpha_re", alpha.real()},
                           {"alpha_im", alpha.imag()},
                           {"cat", cat},
                           {"n_max", cutoff},
                           {"threshold", cfg.threshold},
                           {"format", cfg.format}};
        j["ratios"] = json{{"X", ratio_x}, {"P", ratio_p}};
        j["verdict"] = verdict;
        out << j.dump(2) << '\n';
    }
    return write_output(cfg, out.str());
}

int run_discriminate(const RunConfig& cfg) {
    const ModelParams params = model_params(cfg);
    const Verdict verdict = discriminate(params, cfg.revival_tol, cfg.suppression_tol);

    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "verdict," << to_string(verdict.label) << "\nmid_visibility,"
            << fmt(verdict.mid_visibility) << "\nrevival_visibility,"
            << fmt(verdict.revival_visibility) << "\nrevival_tol," << fmt(cfg.revival_tol)
            << "\nsuppression_tol," << fmt(cfg.suppression_tol) << '\n';
    } else {
        json j;
        j["config"] = config_echo(cfg, params, "discriminate");
        j["verdict"] = to_string(verdict.label);
        j["mid_visibility"] = verdict.mid_visibility;
        j["revival_visibility"] = verdict.revival_visibility;
        j["tolerances"] =
            json{{"revival_tol", cfg.revival_tol}, {"suppression_tol", cfg.suppression_tol}};
        out << j.dump(2) << '\n';
    }
    const int file_status = write_output(cfg, out.str());
    if (file_status != exit_code::ok)
        return file_status;
    switch (verdict.label) {
    case VerdictLabel::RelativeDecoherence: return exit_code::ok;
    case VerdictLabel::AbsoluteDecoherence: return exit_code::absolute;
    case VerdictLabel::Inconclusive: return exit_code::inconclusive;
    }
    return exit_code::usage;
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--k", cfg.k, "Dimensionless mirror displacement parameter");
    cmd->add_option("--omega-m", cfg.omega_m, "Mirror angular frequency (rad/time)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--omega-p", cfg.omega_p, "Photon angular frequency (global phase)");
    cmd->add_option("--n-max", cfg.n_max, "Fock cutoff (0 = automatic rule)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--gamma", cfg.gamma,
                    "Dephasing rate, in units of 1/T_m unless --gamma-absolute");
    cmd->add_flag("--gamma-absolute", cfg.gamma_absolute,
                  "Interpret --gamma as an absolute rate (1/time)");
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", cfg.output, "Output path ('-' = stdout)");
    // handled before parsing (see apply_config_file); registered for --help
    cmd->add_option("--config", "Plain key=value config file (flags take precedence)")
        ->type_name("PATH");
}

// Plain key=value config support. Strips --config PATH from the argument
// list, then appends one flag per config entry the user did not set
// explicitly: flags > config entries > built-in defaults.
bool apply_config_file(std::vector<std::string>& args, std::string& error) {
    std::string path;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                error = "--config needs a file path";
                return false;
            }
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    if (path.empty())
        return true;

    std::ifstream file(path);
    if (!file) {
        error = "cannot read config file " + path;
        return false;
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto strip = [](std::string s) {
            const auto begin = s.find_first_not_of(" \t\r");
            const auto end = s.find_last_not_of(" \t\r");
            return begin == std::string::npos ? std::string{} : s.substr(begin, end - begin + 1);
        };
        line = strip(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            error = path + ":" + std::to_string(line_no) + ": expected key=value";
            return false;
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) {
            error = path + ":" + std::to_string(line_no) + ": empty key";
            return false;
        }
        const std::string flag = "--" + key;
        bool given = false;
        for (const std::string& arg : args)
            if (arg == flag || arg.rfind(flag + "=", 0) == 0)
                given = true;
        if (given)
            continue;
        if (value == "true") {
            args.push_back(flag); // boolean switch
        } else if (value == "false") {
            // cleared switch: keep the default
        } else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return true;
}

bool parse_into(const std::string& text, double& value) {
    char* end = nullptr;
    value = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && !text.empty();
}

void add_grid_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--periods", cfg.periods, "Grid end in units of T_m")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--t-start", cfg.t_start, "Grid start (raw time)");
    cmd->add_option("--t-end", [&cfg](const std::vector<std::string>& v) {
            double value = 0.0;
            if (!parse_into(v.front(), value))
                return false;
            cfg.t_end_raw = value;
            return true;
        }, "Grid end (raw time; overrides --periods)")->type_name("FLOAT");
    cmd->add_option("--samples", cfg.samples, "Grid point count")
        ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(1u << 24)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon + movable-mirror interferometer simulator", "mirrorsim"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* visibility_cmd =
        app.add_subcommand("visibility", "Visibility/purity sweep over a time grid");
    add_model_flags(visibility_cmd, cfg);
    add_grid_flags(visibility_cmd, cfg);
    add_output_flags(visibility_cmd, cfg);

    CLI::App* evolve_cmd = app.add_subcommand(
        "evolve-check", "Cross-validate the analytic state against the matrix exponential");
    add_model_flags(evolve_cmd, cfg);
    add_grid_flags(evolve_cmd, cfg);
    add_output_flags(evolve_cmd, cfg);
    evolve_cmd->add_option("--tolerance", cfg.tolerance, "Maximum fidelity defect")
        ->check(CLI::PositiveNumber);
    evolve_cmd->parse_complete_callback([&cfg, evolve_cmd] {
        if (evolve_cmd->count("--samples") == 0)
            cfg.samples = 64;
        if (evolve_cmd->count("--periods") == 0)
            cfg.periods = 2.0;
    });

    CLI::App* collapse_cmd =
        app.add_subcommand("collapse", "Seeded selfdecoherence sampling report");
    add_model_flags(collapse_cmd, cfg);
    add_output_flags(collapse_cmd, cfg);
    collapse_cmd->add_option("--t-over-tm", cfg.t_over_tm, "Sample time in units of T_m");
    collapse_cmd->add_option("--t", [&cfg](const std::vector<std::string>& v) {
            double value = 0.0;
            if (!parse_into(v.front(), value))
                return false;
            cfg.t_raw = value;
            return true;
        }, "Sample time (raw; overrides --t-over-tm)")->type_name("FLOAT");
    collapse_cmd->add_option("--draws", cfg.draws, "Number of seeded draws")
        ->check(CLI::Range(static_cast<std::size_t>(1), static_cast<std::size_t>(100000000)));
    collapse_cmd->add_option("--seed", cfg.seed, "Base seed (draw i uses seed + i)");
    collapse_cmd->add_option("--overlap-tol", cfg.overlap_tol,
                             "Weak-interference overlap bound");

    CLI::App* packet_cmd =
        app.add_subcommand("packet-check", "Wave-packet ratio table for a prepared state");
    add_output_flags(packet_cmd, cfg);
    packet_cmd->add_option("--n-max", cfg.n_max, "Fock cutoff (0 = automatic rule)")
        ->check(CLI::NonNegativeNumber);
    CLI::Option* alpha_opt =
        packet_cmd->add_option("--alpha", cfg.alpha_text, "Coherent displacement (complex)");
    CLI::Option* cat_opt = packet_cmd->add_option(
        "--cat", [&cfg](const std::vector<std::string>& v) {
            double value = 0.0;
            if (!parse_into(v.front(), value))
                return false;
            cfg.cat = value;
            return true;
        }, "Equal superposition of +/- the given real displacement")->type_name("FLOAT");
    alpha_opt->excludes(cat_opt);
    packet_cmd->add_option("--threshold", cfg.threshold, "Classicality threshold (> 1)");

    CLI::App* discriminate_cmd = app.add_subcommand(
        "discriminate", "Absolute-vs-relative decoherence protocol verdict");
    add_model_flags(discriminate_cmd, cfg);
    add_output_flags(discriminate_cmd, cfg);
    discriminate_cmd->add_option("--revival-tol", cfg.revival_tol,
                                 "Revival acceptance band (0, 1)");
    discriminate_cmd->add_option("--suppression-tol", cfg.suppression_tol,
                                 "Mid-period suppression bound (0, 1)");

    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_error;
    if (!apply_config_file(args, config_error)) {
        std::cerr << "error: " << config_error << "\n";
        return exit_code::usage;
    }
    std::reverse(args.begin(), args.end()); // CLI11 consumes reversed argument lists
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // help/version
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (visibility_cmd->parsed())
            return run_visibility(cfg);
        if (evolve_cmd->parsed())
            return run_evolve_check(cfg);
        if (collapse_cmd->parsed())
            return run_collapse(cfg);
        if (packet_cmd->parsed())
            return run_packet_check(cfg);
        if (discriminate_cmd->parsed())
            return run_discriminate(cfg);
    } catch (const CutoffTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::cutoff;
    } catch (const PacketsInterfere& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::interference;
    } catch (const SimulatorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
    return exit_code::usage;
}
