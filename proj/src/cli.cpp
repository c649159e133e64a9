// SPDX-License-Identifier: Apache-2.0
#include "qzeno/cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qzeno/errors.hpp"
#include "qzeno/format.hpp"
#include "qzeno/verify.hpp"
#include "qzeno/zeno.hpp"

namespace qzeno::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommandInfo {
    const char* name;
    Command command;
    std::set<std::string> allowed_params; // numeric keys accepted for this command
    bool allows_landau_peierls;
    bool allows_allow_flags;
};

const std::vector<CommandInfo>& command_table()
{
    static const std::vector<CommandInfo> table = {
        {"classical", Command::Classical, {"tau-E", "T", "points"}, false, false},
        {"zeno-gaussian", Command::ZenoGaussian, {"tau-z", "T", "N", "points"}, false, false},
        {"response-first", Command::ResponseFirst, {"E", "sigma", "delta-tau", "T", "points"}, false, false},
        {"response-second", Command::ResponseSecond, {"E", "a", "delta-tau", "epsilon"}, false, false},
        {"zeno-curve", Command::ZenoCurve, {"E", "a", "sigma", "T", "N", "points"}, true, false},
        {"verify", Command::Verify, {"tol"}, false, true},
    };
    return table;
}

// flag spelling -> params-map key
const std::map<std::string, std::string>& param_key_table()
{
    static const std::map<std::string, std::string> table = {
        {"E", "E"},           {"a", "a"},           {"sigma", "sigma"},
        {"tau-E", "tau_E"},   {"tau-z", "tau_z"},   {"T", "T"},
        {"N", "N"},           {"delta-tau", "delta_tau"}, {"epsilon", "epsilon"},
        {"tol", "tol"},       {"points", "points"},
    };
    return table;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty()) throw usage_error("missing value for --" + key);
    if (key == "N" && (t == "inf" || t == "infinity"))
        return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
        throw usage_error("malformed number for --" + key + ": '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw usage_error("malformed boolean for " + key + ": '" + text + "'");
}

struct RawSettings {
    std::map<std::string, std::string> values; // keyed by flag spelling
    std::set<std::string> bools;               // landau-peierls, allow-flags
};

void apply_config_file(const std::string& path, RawSettings& cfg)
{
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = trim(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw usage_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key == "landau-peierls" || key == "allow-flags") {
            if (parse_bool(key, value)) cfg.bools.insert(key);
            continue;
        }
        if (key == "format" || key == "output" || param_key_table().count(key)) {
            cfg.values.emplace(key, value); // does not overwrite command-line settings
            continue;
        }
        throw usage_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

const CommandInfo& find_command(const std::string& name)
{
    for (const auto& c : command_table())
        if (name == c.name) return c;
    throw usage_error("unknown command '" + name + "'");
}

double require(const RunConfig& cfg, const std::string& key, const char* flag)
{
    const auto it = cfg.params.find(key);
    if (it == cfg.params.end()) throw usage_error(std::string("missing required parameter ") + flag);
    return it->second;
}

bool use_color(const std::ostream& diag)
{
    return &diag == &std::cerr && isatty(2) != 0 && std::getenv("NO_COLOR") == nullptr;
}

} // namespace

std::string usage_text()
{
    return
        "qzeno - survival laws for a continuously observed two-level system\n"
        "\n"
        "usage: qzeno <command> [flags]\n"
        "\n"
        "commands:\n"
        "  classical        exponential decay curve          (--tau-E --T --points)\n"
        "  zeno-gaussian    Gaussian product-law curve       (--tau-z --T --N --points)\n"
        "  response-first   first-window response breakdown  (--E --delta-tau [--sigma])\n"
        "                   or survival curve                (--E --sigma --T --points)\n"
        "  response-second  flat-band response breakdown     (--E --a --delta-tau [--epsilon])\n"
        "  zeno-curve       N-measurement survival curve     (--E --a --sigma --T --N --points)\n"
        "                   --N inf gives the continuous-observation exponential\n"
        "  verify           closed forms vs quadrature oracle ([--tol])\n"
        "\n"
        "common flags:\n"
        "  --format csv|json   output format (default csv)\n"
        "  --output PATH       write to PATH instead of standard output\n"
        "  --config PATH       key = value defaults, '#' comments; flags win\n"
        "  --landau-peierls    cap N at the time-energy bound (zeno-curve)\n"
        "  --allow-flags       verify: exit 0 even when entries are flagged\n"
        "  --help              this text\n"
        "\n"
        "exit status: 0 success, 1 operational failure, 2 verification flags\n"
        "present without --allow-flags, 64 usage error.\n";
}

RunConfig parse_config(const std::vector<std::string>& args)
{
    if (args.empty()) throw usage_error("missing command");
    if (args[0] == "--help" || args[0] == "-h") throw help_requested(usage_text());
    const CommandInfo& info = find_command(args[0]);

    RawSettings cmdline;
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string arg = args[i];
        if (arg == "--help" || arg == "-h") throw help_requested(usage_text());
        if (arg.rfind("--", 0) != 0) throw usage_error("unexpected argument '" + arg + "'");
        arg.erase(0, 2);

        std::string value;
        bool has_value = false;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            value = arg.substr(eq + 1);
            arg.erase(eq);
            has_value = true;
        }

        if (arg == "landau-peierls" || arg == "allow-flags") {
            if (has_value) throw usage_error("--" + arg + " takes no value");
            cmdline.bools.insert(arg);
            continue;
        }
        const bool known = arg == "format" || arg == "output" || arg == "config"
                           || param_key_table().count(arg) > 0;
        if (!known) throw usage_error("unknown flag '--" + arg + "'");
        if (!has_value) {
            if (i + 1 >= args.size()) throw usage_error("missing value for --" + arg);
            value = args[++i];
        }
        if (arg == "config") {
            config_path = value;
        } else if (!cmdline.values.emplace(arg, value).second) {
            throw usage_error("duplicate flag --" + arg);
        }
    }

    RawSettings merged = cmdline;
    if (!config_path.empty()) apply_config_file(config_path, merged); // emplace keeps cmdline values

    RunConfig cfg;
    cfg.command = info.command;
    cfg.landau_peierls = merged.bools.count("landau-peierls") > 0;
    cfg.allow_flags = merged.bools.count("allow-flags") > 0;
    if (cfg.landau_peierls && !info.allows_landau_peierls)
        throw usage_error(std::string("--landau-peierls is not valid for ") + info.name);
    if (cfg.allow_flags && !info.allows_allow_flags)
        throw usage_error(std::string("--allow-flags is not valid for ") + info.name);

    for (const auto& [flag, text] : merged.values) {
        if (flag == "format") {
            if (text != "csv" && text != "json") throw usage_error("--format must be csv or json");
            cfg.format = text;
            continue;
        }
        if (flag == "output") {
            cfg.output = text;
            continue;
        }
        if (!info.allowed_params.count(flag))
            throw usage_error("flag --" + flag + " is not valid for " + info.name);
        cfg.params[param_key_table().at(flag)] = parse_number(flag, text);
    }

    // Per-command requirements and invariants.
    auto check_positive = [&cfg](const char* key, const char* flag) {
        const auto it = cfg.params.find(key);
        if (it != cfg.params.end() && !(it->second > 0.0))
            throw usage_error(std::string(flag) + " must be positive");
    };
    auto check_points = [&cfg]() {
        const double p = require(cfg, "points", "--points");
        if (!(p >= 2.0 && p == std::floor(p) && p <= 1e7))
            throw usage_error("--points must be an integer >= 2");
    };
    auto check_N = [&cfg](bool allow_inf) {
        const double n = require(cfg, "N", "--N");
        if (std::isinf(n)) {
            if (!allow_inf) throw usage_error("--N inf is not valid for this command");
            return;
        }
        if (!(n >= 1.0 && n == std::floor(n) && n <= 9e15))
            throw usage_error("--N must be an integer >= 1 (or inf)");
    };
    check_positive("tol", "--tol");
    check_positive("epsilon", "--epsilon");

    switch (info.command) {
        case Command::Classical:
            require(cfg, "tau_E", "--tau-E");
            check_positive("tau_E", "--tau-E");
            require(cfg, "T", "--T");
            check_positive("T", "--T");
            check_points();
            break;
        case Command::ZenoGaussian:
            require(cfg, "tau_z", "--tau-z");
            check_positive("tau_z", "--tau-z");
            require(cfg, "T", "--T");
            check_positive("T", "--T");
            check_N(false);
            check_points();
            break;
        case Command::ResponseFirst: {
            const double E = require(cfg, "E", "--E");
            if (E == 0.0) throw usage_error("--E must be nonzero");
            if (cfg.params.count("points")) {
                require(cfg, "T", "--T");
                check_positive("T", "--T");
                require(cfg, "sigma", "--sigma");
                check_points();
            } else {
                const double dt = require(cfg, "delta_tau", "--delta-tau");
                if (!(dt >= 0.0)) throw usage_error("--delta-tau must be >= 0");
                if (!cfg.params.count("sigma")) cfg.params["sigma"] = 0.0;
            }
            if (cfg.params.count("sigma") && !(cfg.params["sigma"] >= 0.0))
                throw usage_error("--sigma must be >= 0");
            break;
        }
        case Command::ResponseSecond: {
            const double E = require(cfg, "E", "--E");
            if (E == 0.0) throw usage_error("--E must be nonzero");
            require(cfg, "a", "--a");
            check_positive("a", "--a");
            const double dt = require(cfg, "delta_tau", "--delta-tau");
            if (!(dt > 0.0)) throw usage_error("--delta-tau must be positive");
            if (!cfg.params.count("epsilon")) cfg.params["epsilon"] = 1e-3 * dt;
            break;
        }
        case Command::ZenoCurve: {
            const double E = require(cfg, "E", "--E");
            if (E == 0.0) throw usage_error("--E must be nonzero");
            require(cfg, "a", "--a");
            check_positive("a", "--a");
            const double sigma = require(cfg, "sigma", "--sigma");
            if (!(sigma >= 0.0)) throw usage_error("--sigma must be >= 0");
            require(cfg, "T", "--T");
            check_positive("T", "--T");
            check_N(true);
            check_points();
            break;
        }
        case Command::Verify:
            break;
    }
    return cfg;
}

namespace {

const char* command_name(Command c)
{
    for (const auto& info : command_table())
        if (info.command == c) return info.name;
    return "?";
}

ordered_json meta_json(const RunConfig& cfg)
{
    ordered_json meta;
    meta["command"] = command_name(cfg.command);
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : cfg.params) {
        if (std::isinf(v))
            params[k] = "inf";
        else
            params[k] = v;
    }
    meta["params"] = params;
    meta["format"] = cfg.format;
    meta["output"] = cfg.output.empty() ? "-" : cfg.output;
    meta["landau_peierls"] = cfg.landau_peierls;
    meta["allow_flags"] = cfg.allow_flags;
    return meta;
}

std::string curve_csv(const zeno::SurvivalCurve& curve)
{
    std::ostringstream os;
    os << "time,survival\n";
    for (const auto& [t, s] : curve.points) os << format_double(t) << ',' << format_double(s) << '\n';
    return os.str();
}

std::string curve_json(const RunConfig& cfg, const zeno::SurvivalCurve& curve,
                       const std::map<std::string, double>& extra_meta)
{
    ordered_json root;
    root["meta"] = meta_json(cfg);
    for (const auto& [k, v] : extra_meta) root["meta"][k] = v;
    ordered_json data = ordered_json::array();
    for (const auto& [t, s] : curve.points) {
        ordered_json row;
        row["time"] = t;
        row["survival"] = s;
        data.push_back(std::move(row));
    }
    root["data"] = data;
    return root.dump(2) + "\n";
}

std::string record_csv(const std::vector<std::pair<std::string, double>>& fields)
{
    std::ostringstream header, row;
    bool first = true;
    for (const auto& [k, v] : fields) {
        if (!first) {
            header << ',';
            row << ',';
        }
        header << k;
        row << format_double(v);
        first = false;
    }
    return header.str() + "\n" + row.str() + "\n";
}

std::string record_json(const RunConfig& cfg, const std::vector<std::pair<std::string, double>>& fields)
{
    ordered_json root;
    root["meta"] = meta_json(cfg);
    ordered_json rec;
    for (const auto& [k, v] : fields) rec[k] = v;
    root["data"] = ordered_json::array({rec});
    return root.dump(2) + "\n";
}

std::string report_csv(const verify::VerificationReport& report)
{
    std::ostringstream os;
    os << "formula_id,paper_anchor,closed_form,oracle,abs_diff,tolerance,verdict\n";
    for (const auto& e : report.entries) {
        os << e.formula_id << ",\"" << e.anchor << "\"," << format_double(e.closed_form) << ','
           << format_double(e.oracle) << ',' << format_double(e.abs_diff) << ','
           << format_double(e.tolerance) << ',' << verify::to_string(e.verdict) << '\n';
    }
    return os.str();
}

std::string report_json(const RunConfig& cfg, const verify::VerificationReport& report)
{
    ordered_json root;
    root["meta"] = meta_json(cfg);
    ordered_json data = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json row;
        row["formula_id"] = e.formula_id;
        row["paper_anchor"] = e.anchor;
        row["closed_form"] = e.closed_form;
        row["oracle"] = e.oracle;
        row["abs_diff"] = e.abs_diff;
        row["tolerance"] = e.tolerance;
        row["verdict"] = verify::to_string(e.verdict);
        data.push_back(std::move(row));
    }
    root["data"] = data;
    return root.dump(2) + "\n";
}

int emit(const RunConfig& cfg, const std::string& body, std::ostream& out, std::ostream& diag)
{
    if (cfg.output.empty()) {
        out << body;
        return out ? 0 : 1;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        diag << "error: cannot open output file '" << cfg.output << "'\n";
        return 1;
    }
    file << body;
    if (!file) {
        diag << "error: failed writing '" << cfg.output << "'\n";
        return 1;
    }
    return 0;
}

zeno::CurveSpec curve_spec_from(const RunConfig& cfg, zeno::LawTag law)
{
    zeno::CurveSpec spec;
    spec.law = law;
    spec.num_points = static_cast<std::size_t>(cfg.params.count("points") ? cfg.params.at("points") : 2);
    if (cfg.params.count("T")) spec.T = cfg.params.at("T");
    if (cfg.params.count("tau_E")) spec.tau_E = cfg.params.at("tau_E");
    if (cfg.params.count("tau_z")) spec.tau_z = cfg.params.at("tau_z");
    if (cfg.params.count("E")) spec.E = cfg.params.at("E");
    if (cfg.params.count("sigma")) spec.sigma = cfg.params.at("sigma");
    if (cfg.params.count("a")) spec.a = cfg.params.at("a");
    if (cfg.params.count("N")) {
        const double n = cfg.params.at("N");
        spec.N = std::isinf(n) ? zeno::ObservationCount::infinity()
                               : zeno::ObservationCount::finite(static_cast<std::uint64_t>(n));
    }
    spec.landau_peierls = cfg.landau_peierls;
    return spec;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag)
{
    try {
        switch (cfg.command) {
            case Command::Classical: {
                const auto curve = zeno::make_survival_curve(curve_spec_from(cfg, zeno::LawTag::Classical));
                return emit(cfg, cfg.format == "csv" ? curve_csv(curve) : curve_json(cfg, curve, {}), out, diag);
            }
            case Command::ZenoGaussian: {
                const auto curve = zeno::make_survival_curve(curve_spec_from(cfg, zeno::LawTag::GaussianZeno));
                return emit(cfg, cfg.format == "csv" ? curve_csv(curve) : curve_json(cfg, curve, {}), out, diag);
            }
            case Command::ResponseFirst: {
                if (cfg.params.count("points")) {
                    const auto curve =
                        zeno::make_survival_curve(curve_spec_from(cfg, zeno::LawTag::FirstOrderVacuum));
                    return emit(cfg, cfg.format == "csv" ? curve_csv(curve) : curve_json(cfg, curve, {}),
                                out, diag);
                }
                const double E = cfg.params.at("E");
                const double dt = cfg.params.at("delta_tau");
                const double sigma = cfg.params.at("sigma");
                const auto breakdown = response::response_renormalized(E, dt);
                const response::QubitFieldParams qp(E, sigma);
                const auto prob = response::decay_probability_first(qp, dt);
                const std::vector<std::pair<std::string, double>> fields = {
                    {"E", E},
                    {"delta_tau", dt},
                    {"sigma", sigma},
                    {"piece1", breakdown.piece1},
                    {"piece2", breakdown.piece2},
                    {"renormalized", breakdown.renormalized},
                    {"linear_coeff", breakdown.linear_coeff},
                    {"quadratic_coeff", breakdown.quadratic_coeff},
                    {"p_ren", prob.value},
                    {"p_still", 1.0 - prob.value},
                    {"validity_warning", prob.validity_warning ? 1.0 : 0.0},
                };
                return emit(cfg, cfg.format == "csv" ? record_csv(fields) : record_json(cfg, fields), out,
                            diag);
            }
            case Command::ResponseSecond: {
                const double E = cfg.params.at("E");
                const double a = cfg.params.at("a");
                const double dt = cfg.params.at("delta_tau");
                const double eps = cfg.params.at("epsilon");
                const auto state = flatband::FieldState::flat_band(a);
                const auto breakdown = flatband::response_second_total(E, state, dt, eps);
                const auto small = flatband::response_second_small_time(E, a, dt);
                const std::vector<std::pair<std::string, double>> fields = {
                    {"E", E},
                    {"a", a},
                    {"delta_tau", dt},
                    {"epsilon", eps},
                    {"base_vacuum", breakdown.base_vacuum},
                    {"vacuum_part", breakdown.vacuum_part},
                    {"shifted_plus", breakdown.shifted_plus},
                    {"shifted_minus", breakdown.shifted_minus},
                    {"pv_part", breakdown.pv_part},
                    {"total", breakdown.total},
                    {"small_time_p", flatband::small_time_coeff_p(E, a)},
                    {"small_time_q", flatband::small_time_coeff_q(E, a)},
                    {"small_time_value", small.value},
                    {"small_time_warning", small.validity_warning ? 1.0 : 0.0},
                };
                return emit(cfg, cfg.format == "csv" ? record_csv(fields) : record_json(cfg, fields), out,
                            diag);
            }
            case Command::ZenoCurve: {
                const bool infinite = std::isinf(cfg.params.at("N"));
                const auto law = infinite ? zeno::LawTag::ContinuousLimit : zeno::LawTag::FlatBandSequence;
                zeno::CurveSpec spec = curve_spec_from(cfg, law);
                if (cfg.landau_peierls && !infinite) {
                    const auto comparison = zeno::landau_peierls_comparison(spec);
                    diag << "landau-peierls cap active: max |capped - exponential| = "
                         << format_double(comparison.max_abs_diff) << "\n";
                    return emit(cfg,
                                cfg.format == "csv"
                                    ? curve_csv(comparison.capped)
                                    : curve_json(cfg, comparison.capped,
                                                 {{"max_abs_diff_vs_exponential", comparison.max_abs_diff}}),
                                out, diag);
                }
                const auto curve = zeno::make_survival_curve(spec);
                return emit(cfg, cfg.format == "csv" ? curve_csv(curve) : curve_json(cfg, curve, {}), out,
                            diag);
            }
            case Command::Verify: {
                verify::VerifyOptions options;
                if (cfg.params.count("tol")) options.tol_override = cfg.params.at("tol");
                const auto report = verify::run_verification(options);
                const int status = emit(
                    cfg, cfg.format == "csv" ? report_csv(report) : report_json(cfg, report), out, diag);
                if (status != 0) return status;
                const std::size_t flags = report.flag_count();
                if (flags > 0) {
                    const bool color = use_color(diag);
                    diag << "verification: " << flags << " of " << report.entries.size() << " entries "
                         << (color ? "\x1b[31mFLAG\x1b[0m" : "FLAG") << "ged\n";
                    if (!cfg.allow_flags) return 2;
                } else {
                    diag << "verification: all " << report.entries.size() << " entries PASS\n";
                }
                return 0;
            }
        }
        diag << "error: unhandled command\n";
        return 1;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const RunConfig cfg = parse_config(args);
        return run(cfg, std::cout, std::cerr);
    } catch (const help_requested& h) {
        std::cout << h.what();
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << usage_text();
        return 64;
    }
}

} // namespace qzeno::cli
