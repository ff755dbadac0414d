#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "natanzon/errors.hpp"
#include "natanzon/green.hpp"
#include "natanzon/potential.hpp"
#include "natanzon/spectrum.hpp"
#include "natanzon/verify.hpp"

namespace natanzon::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double g1 = 0.0, g2 = 0.0, sigma1 = 0.0, sigma2 = 0.0, c0 = 0.0, eta = 0.0;
    double anchor_h = kUnset;
    double anchor_r = kUnset;
    std::string format = "csv";
    std::string config_path;

    int n_max = 5;
    double epsilon = kUnset;
    std::vector<double> r;
    std::vector<double> r_prime;
    double r_min = kUnset;
    double r_max = kUnset;
    int points = 11;

    double tolerance_scale = 1.0;
    double bch_a_scale = 1.0;
    std::uint64_t seed = verify::Options{}.seed;
    int random_sets = verify::Options{}.random_sets;
};

// Registers each setting once, as a command-line flag and as a config-file
// key. File values apply only where the flag was not given.
class Binder {
public:
    explicit Binder(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* bind(const std::string& key, T& target, const std::string& help) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        CLI::Option* opt = app_->add_option(flag, target, help);
        setters_[key] = [&target, opt](const json& value) {
            if (opt->count() == 0) target = value.get<T>();
        };
        return opt;
    }

    void apply(const json& config) const {
        if (!config.is_object()) throw UsageError("config file must hold a JSON object");
        for (const auto& [key, value] : config.items()) {
            const auto it = setters_.find(key);
            if (it == setters_.end()) throw UsageError("unknown config key '" + key + "'");
            try {
                it->second(value);
            } catch (const json::exception&) {
                throw UsageError("config key '" + key + "' has the wrong type");
            }
        }
    }

private:
    CLI::App* app_;
    std::map<std::string, std::function<void(const json&)>> setters_;
};

void bind_common(Binder& b, CLI::App* app, RunConfig& c) {
    b.bind("g1", c.g1, "potential parameter g1");
    b.bind("g2", c.g2, "potential parameter g2");
    b.bind("sigma1", c.sigma1, "R(h) coefficient sigma1");
    b.bind("sigma2", c.sigma2, "R(h) coefficient sigma2");
    b.bind("c0", c.c0, "R(h) coefficient c0");
    b.bind("eta", c.eta, "potential parameter eta");
    b.bind("anchor_h", c.anchor_h, "map anchor h0 (0 = the limit h -> 0+)");
    b.bind("anchor_r", c.anchor_r, "map anchor r0");
    b.bind("format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--config", c.config_path, "JSON file with any of the settings above; flags take precedence");
}

NatanzonParams params_of(const RunConfig& c) { return NatanzonParams(c.g1, c.g2, c.sigma1, c.sigma2, c.c0, c.eta); }

CoordinateMap map_of(const RunConfig& c, const NatanzonParams& params) {
    MapConfig mc;
    if (!std::isnan(c.anchor_h) || !std::isnan(c.anchor_r)) {
        Anchor anchor;
        if (!std::isnan(c.anchor_h)) anchor.h = c.anchor_h;
        if (!std::isnan(c.anchor_r)) anchor.r = c.anchor_r;
        mc.anchor = anchor;
    }
    return build_change_of_variable(params, mc);
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::set<std::size_t> integer_columns;
    std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& out, const std::string& format, const std::string& command, const Table& t) {
    if (format == "json") {
        json doc;
        doc["command"] = command;
        doc["columns"] = t.columns;
        json rows = json::array();
        for (const auto& row : t.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                if (t.integer_columns.count(i))
                    obj[t.columns[i]] = static_cast<long long>(row[i]);
                else
                    obj[t.columns[i]] = row[i];
            }
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
        out << '\n';
    }
}

std::vector<double> sample_points(const RunConfig& c) {
    if (!c.r.empty()) return c.r;
    if (std::isnan(c.r_min) || std::isnan(c.r_max))
        throw UsageError("give --r values or both --r-min and --r-max");
    if (c.points < 1) throw UsageError("--points must be >= 1");
    if (c.points == 1) return {c.r_min};
    std::vector<double> out(static_cast<std::size_t>(c.points));
    for (int i = 0; i < c.points; ++i) out[i] = c.r_min + (c.r_max - c.r_min) * i / (c.points - 1);
    return out;
}

int cmd_potential(const RunConfig& c, std::ostream& out) {
    const NatanzonParams params = params_of(c);
    const CoordinateMap map = map_of(c, params);
    const std::vector<double> r = sample_points(c);
    std::vector<double> v(r.size());
    potential_of_r(map, r, v);
    Table t{{"r", "h", "V"}, {}, {}};
    for (std::size_t i = 0; i < r.size(); ++i) t.rows.push_back({r[i], map.h_of_r(r[i]), v[i]});
    write_table(out, c.format, "potential", t);
    return kOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    if (c.n_max < 0) throw UsageError("--n-max must be >= 0");
    const NatanzonParams params = params_of(c);
    Table t{{"n", "epsilon", "residual", "threshold_flag"}, {0, 3}, {}};
    for (const EnergyLevel& level : spectrum(params, c.n_max))
        t.rows.push_back({static_cast<double>(level.n), level.epsilon, level.residual, level.threshold ? 1.0 : 0.0});
    write_table(out, c.format, "spectrum", t);
    return kOk;
}

int cmd_green(const RunConfig& c, std::ostream& out) {
    if (std::isnan(c.epsilon)) throw UsageError("--epsilon is required");
    if (c.r.empty() || c.r_prime.empty()) throw UsageError("--r and --r-prime are required");
    const NatanzonParams params = params_of(c);
    const CoordinateMap map = map_of(c, params);
    Table t{{"r", "r_prime", "epsilon", "re", "im"}, {}, {}};
    for (double r : c.r)
        for (double rp : c.r_prime) {
            const GreensValue g = green_function(params, map, r, rp, c.epsilon);
            t.rows.push_back({r, rp, c.epsilon, g.value.real(), g.value.imag()});
        }
    write_table(out, c.format, "green", t);
    return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    verify::Options options;
    options.tolerance_scale = c.tolerance_scale;
    options.bch_a_scale = c.bch_a_scale;
    options.seed = c.seed;
    options.random_sets = c.random_sets;
    if (!(options.tolerance_scale > 0.0)) throw UsageError("--tolerance-scale must be > 0");
    if (options.random_sets < 1) throw UsageError("--random-sets must be >= 1");

    const verify::Report report = verify::run_all(options);
    json doc;
    doc["passed"] = report.passed();
    doc["options"] = {{"tolerance_scale", options.tolerance_scale},
                      {"bch_a_scale", options.bch_a_scale},
                      {"seed", options.seed},
                      {"random_sets", options.random_sets}};
    json criteria = json::array();
    for (const auto& cr : report.criteria) {
        err << (cr.passed ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << ": " << cr.detail << '\n';
        json item = {{"id", cr.id}, {"name", cr.name}, {"passed", cr.passed}};
        // Non-finite metrics (a check that threw) have no JSON number form.
        item["metric"] = std::isfinite(cr.metric) ? json(cr.metric) : json(nullptr);
        item["threshold"] = cr.threshold;
        item["detail"] = cr.detail;
        criteria.push_back(std::move(item));
    }
    doc["criteria"] = std::move(criteria);
    out << doc.dump(2) << '\n';
    return report.passed() ? kOk : kNumerical;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Confluent Natanzon potentials: map, spectrum, Green's function and verification", "natanzon"};
    app.require_subcommand(1);

    RunConfig config;
    CLI::App* potential = app.add_subcommand("potential", "tabulate r, h(r), V(r)");
    CLI::App* spectrum = app.add_subcommand("spectrum", "bound-state levels n = 0..n_max");
    CLI::App* green = app.add_subcommand("green", "closed-form Green's function on an (r, r') grid");
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite, print a JSON summary");

    Binder b_potential(potential), b_spectrum(spectrum), b_green(green), b_verify(verify_cmd);
    bind_common(b_potential, potential, config);
    b_potential.bind("r", config.r, "explicit r values");
    b_potential.bind("r_min", config.r_min, "first r of an evenly spaced range");
    b_potential.bind("r_max", config.r_max, "last r of the range");
    b_potential.bind("points", config.points, "number of points in the range");

    bind_common(b_spectrum, spectrum, config);
    b_spectrum.bind("n_max", config.n_max, "highest quantum number");

    bind_common(b_green, green, config);
    b_green.bind("epsilon", config.epsilon, "energy");
    b_green.bind("r", config.r, "r values");
    b_green.bind("r_prime", config.r_prime, "r' values");

    b_verify.bind("tolerance_scale", config.tolerance_scale, "multiply every pass threshold");
    b_verify.bind("bch_a_scale", config.bch_a_scale, "perturb the BCH coefficient a (negative control)");
    b_verify.bind("seed", config.seed, "seed of the randomized checks");
    b_verify.bind("random_sets", config.random_sets, "number of random General parameter sets");
    verify_cmd->add_option("--config", config.config_path, "JSON file with any of the settings above");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const std::pair<CLI::App*, Binder*> commands[] = {
            {potential, &b_potential}, {spectrum, &b_spectrum}, {green, &b_green}, {verify_cmd, &b_verify}};
        for (const auto& [cmd, binder] : commands)
            if (cmd->parsed() && !config.config_path.empty()) binder->apply(load_config(config.config_path));
        if (config.format != "csv" && config.format != "json") throw UsageError("format must be csv or json");

        if (potential->parsed()) return cmd_potential(config, out);
        if (spectrum->parsed()) return cmd_spectrum(config, out);
        if (green->parsed()) return cmd_green(config, out);
        return cmd_verify(config, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

} // namespace natanzon::cli
