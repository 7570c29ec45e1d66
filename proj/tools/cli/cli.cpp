#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"
#include "majorana/perturbation.hpp"
#include "majorana/rates.hpp"
#include "verify.hpp"

namespace majorana::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError(key + ": '" + text + "' is not a real number", key);
    }
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError(key + ": '" + text + "' is not an integer", key);
    }
    return value;
}

const std::set<std::string> known_keys = {
    "bias_field_gauss", "radial_gradient_gauss_per_cm", "axial_curvature_gauss_per_cm2",
    "g_factor",         "mass_amu",                     "two_f",
    "two_fz"};

void add_common_meta(Report& report) {
    report.meta.emplace_back("tool", tool_name);
    report.meta.emplace_back("version", tool_version());
    report.meta.emplace_back("bohr_magneton_j_per_t", format_double(constants::bohr_magneton));
    report.meta.emplace_back("hbar_j_s", format_double(constants::hbar));
    report.meta.emplace_back("atomic_mass_unit_kg", format_double(constants::atomic_mass_unit));
    report.meta.emplace_back("boltzmann_j_per_k", format_double(constants::boltzmann));
}

void add_trap_meta(Report& report, const TrapConfig& trap, const DerivedParams& derived) {
    report.meta.emplace_back("adiabaticity_warning", derived.adiabaticity_warning ? "true" : "false");
    report.meta.emplace_back("bias_field_gauss", format_double(trap.bias_field_gauss));
    report.meta.emplace_back("radial_gradient_gauss_per_cm",
                             format_double(trap.radial_gradient_gauss_per_cm));
    report.meta.emplace_back("axial_curvature_gauss_per_cm2",
                             format_double(trap.axial_curvature_gauss_per_cm2));
    report.meta.emplace_back("g_factor", format_double(trap.g_factor));
    report.meta.emplace_back("mass_amu", format_double(trap.mass_amu));
    report.meta.emplace_back("two_f", std::to_string(trap.spin.two_f()));
    report.meta.emplace_back("two_fz", std::to_string(trap.spin.two_fz()));
}

const TrapConfig& require_trap(const RunConfig& config) {
    if (!config.trap) {
        throw ValidationError("this command needs --config", "config");
    }
    return *config.trap;
}

Report run_derive(const TrapConfig& trap) {
    const DerivedParams d = derive_params(trap);
    const SurfaceParams s = surface_params(d, trap.spin.two_fz());
    Report report;
    add_common_meta(report);
    add_trap_meta(report, trap, d);
    report.columns = {"omega0_rad_s", "b0_m",         "chi0",  "e0_j",         "omega_prec_rad_s",
                      "mass_kg",      "two_fz",       "omega_i_rad_s", "b_i_m", "energy_i_j",
                      "k_f_per_m"};
    report.rows.push_back({d.omega0, d.b0, d.chi0, d.e0, d.omega_prec, d.mass_kg,
                           static_cast<long long>(s.two_fz), s.omega, s.b, s.energy,
                           final_wavenumber(d, s)});
    return report;
}

Report run_rate(const TrapConfig& trap, std::optional<double> temperature) {
    const DerivedParams d = derive_params(trap);
    const RateBreakdown r =
        temperature ? escape_rate_thermal(trap, *temperature) : escape_rate(trap);
    Report report;
    add_common_meta(report);
    add_trap_meta(report, trap, d);
    if (temperature) {
        report.meta.emplace_back("temperature_k", format_double(*temperature));
    }
    for (std::size_t i = 0; i < r.notes.size(); ++i) {
        report.meta.emplace_back("note_" + std::to_string(i + 1), r.notes[i]);
    }
    report.columns = {"p",           "chi0",        "prefactor_rad_s", "chi_power",
                      "angular_factor", "c_p",      "c_p_squared",     "c_exponent_factor",
                      "exponent",    "density_weight", "k_f_per_m",    "b_i_m",
                      "log_rate",    "rate_per_s"};
    report.rows.push_back({static_cast<long long>(r.p), r.chi0, r.prefactor, r.chi_power, r.angular,
                           to_fraction_string(r.c_p), r.c_p_squared, r.c_exponent_factor, r.exponent,
                           r.density_weight, r.k_f, r.b_i, r.log_rate, r.rate});
    return report;
}

Report run_sweep(const TrapConfig& trap, const SweepSpec& spec) {
    spec.validate();
    Report report;
    add_common_meta(report);
    add_trap_meta(report, trap, derive_params(trap));
    report.columns = {"param_name", "param_value",    "omega0_rad_s", "omega_prec_rad_s",
                      "chi0",       "p",              "angular_factor", "c_p",
                      "c_semiclassical", "exponent",  "rate_per_s"};
    bool any_warning = false;
    for (int i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / (spec.steps - 1);
        const double value = i == spec.steps - 1 ? spec.to : spec.from + t * (spec.to - spec.from);
        TrapConfig point = trap;
        if (spec.parameter == "bias_field") {
            point.bias_field_gauss = value;
        } else if (spec.parameter == "radial_gradient") {
            point.radial_gradient_gauss_per_cm = value;
        } else {
            point.g_factor = value;
        }
        const DerivedParams d = derive_params(point);
        any_warning = any_warning || d.adiabaticity_warning;
        const RateBreakdown r = escape_rate(point);
        report.rows.push_back({spec.parameter, value, d.omega0, d.omega_prec, d.chi0,
                               static_cast<long long>(r.p), r.angular, to_fraction_string(r.c_p),
                               c_semiclassical(point.spin.projection()), r.exponent, r.rate});
    }
    report.meta.emplace_back("sweep_adiabaticity_warning", any_warning ? "true" : "false");
    return report;
}

Report run_table(int pmax) {
    if (pmax < 1 || pmax > max_steps) {
        throw ValidationError("pmax must be in [1, " + std::to_string(max_steps) + "]", "pmax");
    }
    Report report;
    add_common_meta(report);
    report.meta.emplace_back("adiabaticity_warning", "not_applicable");
    report.columns = {"p", "p2", "n_num", "n_den", "c_p_num", "c_p_den"};
    for (int p = 1; p <= pmax; ++p) {
        const std::vector<Rational> n = n_coefficients(p);
        const Rational c = c_factor(p, HalfInt::from_int(p));
        for (std::size_t p2 = 0; p2 < n.size(); ++p2) {
            report.rows.push_back({static_cast<long long>(p), static_cast<long long>(p2),
                                   numerator(n[p2]).str(), denominator(n[p2]).str(),
                                   numerator(c).str(), denominator(c).str()});
        }
    }
    return report;
}

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
                return std::stod(format_double(v));
            } else {
                return v;
            }
        },
        cell);
}

} // namespace

const char* tool_version() { return MAJORANA_VERSION; }

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void SweepSpec::validate() const {
    if (parameter != "bias_field" && parameter != "radial_gradient" && parameter != "g_factor") {
        throw ValidationError("param must be one of bias_field, radial_gradient, g_factor", "param");
    }
    if (steps < 2) {
        throw ValidationError("steps must be >= 2", "steps");
    }
    if (!(from < to)) {
        throw ValidationError("from must be < to", "from");
    }
    if (!(from > 0.0)) {
        throw ValidationError(parameter + " must stay > 0 over the sweep", "from");
    }
    if (!std::isfinite(to)) {
        throw ValidationError("to must be finite", "to");
    }
}

TrapConfig parse_trap_config(std::istream& in) {
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string content = trim(line);
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 'key = value'",
                                  "line " + std::to_string(line_no));
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (!known_keys.count(key)) {
            throw ValidationError("unknown key '" + key + "'", key);
        }
        if (value.empty()) {
            throw ValidationError(key + ": empty value", key);
        }
        if (!values.emplace(key, value).second) {
            throw ValidationError("duplicate key '" + key + "'", key);
        }
    }
    for (const auto& key : known_keys) {
        if (key != "axial_curvature_gauss_per_cm2" && !values.count(key)) {
            throw ValidationError("missing key '" + key + "'", key);
        }
    }

    const int two_f = parse_int("two_f", values.at("two_f"));
    const int two_fz = parse_int("two_fz", values.at("two_fz"));
    if (two_f < 1 || two_f > max_twice_spin) {
        throw ValidationError("two_f must be in [1, " + std::to_string(max_twice_spin) + "]", "two_f");
    }
    if (two_fz <= 0) {
        throw ValidationError("two_fz must be > 0", "two_fz");
    }
    if (two_fz > two_f) {
        throw ValidationError("two_fz must be <= two_f", "two_fz");
    }
    if ((two_f - two_fz) % 2 != 0) {
        throw ValidationError("parity: two_f and two_fz must both be even or both odd", "two_fz");
    }

    TrapConfig cfg;
    cfg.bias_field_gauss = parse_real("bias_field_gauss", values.at("bias_field_gauss"));
    cfg.radial_gradient_gauss_per_cm =
        parse_real("radial_gradient_gauss_per_cm", values.at("radial_gradient_gauss_per_cm"));
    if (auto it = values.find("axial_curvature_gauss_per_cm2"); it != values.end()) {
        cfg.axial_curvature_gauss_per_cm2 = parse_real(it->first, it->second);
    }
    cfg.g_factor = parse_real("g_factor", values.at("g_factor"));
    cfg.mass_amu = parse_real("mass_amu", values.at("mass_amu"));
    cfg.spin = SpinQuantum::make(two_f, two_fz);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    RunConfig config;
    config.trap = parse_trap_config(in);
    return config;
}

Report run(const RunConfig& config) {
    switch (config.command) {
    case Command::derive:
        return run_derive(require_trap(config));
    case Command::rate:
        return run_rate(require_trap(config), config.temperature_kelvin);
    case Command::sweep:
        if (!config.sweep) {
            throw ValidationError("sweep needs --param, --from, --to and --steps", "param");
        }
        return run_sweep(require_trap(config), *config.sweep);
    case Command::table:
        return run_table(config.pmax);
    case Command::verify: {
        Report report = run_verification(config.fast);
        Report head;
        add_common_meta(head);
        head.meta.emplace_back("adiabaticity_warning", "not_applicable");
        head.meta.insert(head.meta.end(), report.meta.begin(), report.meta.end());
        report.meta = std::move(head.meta);
        return report;
    }
    }
    throw DispatchError("unknown command");
}

void write_output(const Report& report, std::ostream& out, Format format) {
    if (format == Format::csv) {
        for (const auto& [key, value] : report.meta) {
            out << "# " << key << ": " << value << '\n';
        }
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            out << (i ? "," : "") << report.columns[i];
        }
        out << '\n';
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << cell_text(row[i]);
            }
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.meta) {
        doc["meta"][key] = value;
    }
    doc["columns"] = report.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[report.columns[i]] = cell_json(row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

void write_output(const Report& report, const std::filesystem::path& path, Format format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_output(report, out, format);
    out.flush();
    if (!out) {
        throw IoError("write to " + path.string() + " failed");
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Majorana spin-flip escape rates of magnetically trapped atoms", tool_name};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_name;
    SweepSpec sweep;
    RunConfig config;
    double temperature = 0.0;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write the report to this file instead of stdout");
        sub->add_option("--format", format_name, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* derive = app.add_subcommand("derive", "Trap frequencies, lengths and chi0");
    derive->add_option("--config", config_path, "Trap config file")->required();
    add_output(derive);

    auto* rate = app.add_subcommand("rate", "Escape rate with every factor broken out");
    rate->add_option("--config", config_path, "Trap config file")->required();
    auto* temp_opt = rate->add_option("--temperature", temperature,
                                      "Use a thermal momentum distribution at this temperature (K)");
    add_output(rate);

    auto* sweep_cmd = app.add_subcommand("sweep", "Escape rate over a parameter grid");
    sweep_cmd->add_option("--config", config_path, "Trap config file")->required();
    sweep_cmd->add_option("--param", sweep.parameter, "bias_field, radial_gradient or g_factor")
        ->required();
    sweep_cmd->add_option("--from", sweep.from)->required();
    sweep_cmd->add_option("--to", sweep.to)->required();
    sweep_cmd->add_option("--steps", sweep.steps)->required();
    add_output(sweep_cmd);

    auto* table = app.add_subcommand("table", "Path coefficients N_{p,p2} and C_p as exact rationals");
    table->add_option("--pmax", config.pmax, "Largest p (default 8)");
    add_output(table);

    auto* verify = app.add_subcommand("verify", "Run the brute-force oracles");
    verify->add_flag("--fast", config.fast, "Skip the explicit second-order sum");
    add_output(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            RunConfig loaded = load_config(config_path);
            config.trap = std::move(loaded.trap);
        }
        if (derive->parsed()) {
            config.command = Command::derive;
        } else if (rate->parsed()) {
            config.command = Command::rate;
            if (temp_opt->count() > 0) {
                config.temperature_kelvin = temperature;
            }
        } else if (sweep_cmd->parsed()) {
            config.command = Command::sweep;
            config.sweep = sweep;
        } else if (table->parsed()) {
            config.command = Command::table;
        } else {
            config.command = Command::verify;
        }
        if (format_name.empty()) {
            config.format = config.command == Command::verify ? Format::json : Format::csv;
        } else {
            config.format = format_name == "json" ? Format::json : Format::csv;
        }
        if (!out_path.empty()) {
            config.output_path = out_path;
        }

        const Report report = run(config);
        if (config.command == Command::verify) {
            std::cout << report.text;
            if (config.output_path) {
                write_output(report, *config.output_path, config.format);
            }
        } else if (config.output_path) {
            write_output(report, *config.output_path, config.format);
        } else {
            write_output(report, std::cout, config.format);
        }
        return report.failed ? 2 : 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace majorana::cli
