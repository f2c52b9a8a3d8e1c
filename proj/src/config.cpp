#include "lagns/config.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lagns {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array known_keys = {
    "problem",      "R",           "c_v",          "mu_bar",        "kappa_bar",
    "gamma",        "beta",        "L",            "n_cells",       "dt_init",
    "dt_min",       "dt_max",      "safety",       "picard_tol",    "picard_max",
    "growth_factor", "growth_streak", "family",    "a_v",           "a_u",
    "a_theta",      "width",       "core_radius",  "t_end",         "report_every",
    "snapshot_every", "output_dir", "energy_residual_tol",
};

bool is_known(const std::string& key) {
    for (const char* known : known_keys) {
        if (key == known) return true;
    }
    return false;
}

double get_number(const json& doc, const std::string& key, double fallback) {
    if (!doc.contains(key)) return fallback;
    const json& value = doc.at(key);
    if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return value.get<double>();
}

long get_integer(const json& doc, const std::string& key, long fallback) {
    if (!doc.contains(key)) return fallback;
    const json& value = doc.at(key);
    if (!value.is_number_integer()) {
        throw ConfigError("config key '" + key + "' must be an integer");
    }
    return value.get<long>();
}

std::string get_string(const json& doc, const std::string& key, const std::string& fallback) {
    if (!doc.contains(key)) return fallback;
    const json& value = doc.at(key);
    if (!value.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return value.get<std::string>();
}

void require(bool condition, const std::string& key, const std::string& rule) {
    if (!condition) throw ConfigError("config key '" + key + "' " + rule);
}

DomainKind parse_problem(const std::string& name) {
    if (name == "cauchy") return DomainKind::Cauchy;
    if (name == "halfline_neumann") return DomainKind::HalfLineNeumann;
    if (name == "halfline_dirichlet") return DomainKind::HalfLineDirichlet;
    throw ConfigError("config key 'problem' must be one of cauchy, halfline_neumann, "
                      "halfline_dirichlet (got '" + name + "')");
}

InitialFamily parse_family(const std::string& name) {
    if (name == "constant") return InitialFamily::Constant;
    if (name == "gaussian_bump") return InitialFamily::GaussianBump;
    if (name == "compact_perturbation") return InitialFamily::CompactPerturbation;
    throw ConfigError("config key 'family' must be one of constant, gaussian_bump, "
                      "compact_perturbation (got '" + name + "')");
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError("config parse failure at line " +
                          std::to_string(line_of_byte(text, err.byte)) + ": " + err.what());
    }
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");

    for (const auto& item : doc.items()) {
        if (!is_known(item.key())) {
            throw ConfigError("unknown config key '" + item.key() + "'");
        }
    }
    for (const char* key : {"problem", "beta", "L", "n_cells", "t_end"}) {
        if (!doc.contains(key)) {
            throw ConfigError(std::string("missing required config key '") + key + "'");
        }
    }

    RunConfig config;
    config.problem = parse_problem(get_string(doc, "problem", "cauchy"));

    config.gas.R = get_number(doc, "R", 1.0);
    config.gas.c_v = get_number(doc, "c_v", 1.0);
    config.gas.mu_bar = get_number(doc, "mu_bar", 1.0);
    config.gas.kappa_bar = get_number(doc, "kappa_bar", 1.0);
    config.gas.gamma = get_number(doc, "gamma", 0.0);
    config.gas.beta = get_number(doc, "beta", 1.0);
    require(config.gas.R > 0.0, "R", "must be > 0");
    require(config.gas.c_v > 0.0, "c_v", "must be > 0");
    require(config.gas.mu_bar > 0.0, "mu_bar", "must be > 0");
    require(config.gas.kappa_bar > 0.0, "kappa_bar", "must be > 0");
    require(config.gas.gamma >= 0.0, "gamma", "must be >= 0");
    require(config.gas.beta >= 0.0, "beta", "must be >= 0");

    config.L = get_number(doc, "L", 8.0);
    require(config.L > 0.0 && std::isfinite(config.L), "L", "must be > 0");
    const long n_cells = get_integer(doc, "n_cells", 256);
    require(n_cells >= 4, "n_cells", "must be >= 4");
    config.n_cells = static_cast<std::size_t>(n_cells);

    StepControls defaults;
    config.controls.dt_init = get_number(doc, "dt_init", defaults.dt_init);
    config.controls.dt_min = get_number(doc, "dt_min", defaults.dt_min);
    config.controls.dt_max = get_number(doc, "dt_max", defaults.dt_max);
    config.controls.safety = get_number(doc, "safety", defaults.safety);
    config.controls.picard_tol = get_number(doc, "picard_tol", defaults.picard_tol);
    config.controls.picard_max =
        static_cast<int>(get_integer(doc, "picard_max", defaults.picard_max));
    config.controls.growth_factor = get_number(doc, "growth_factor", defaults.growth_factor);
    config.controls.growth_streak =
        static_cast<int>(get_integer(doc, "growth_streak", defaults.growth_streak));
    try {
        config.controls.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }

    config.initial.family = parse_family(get_string(doc, "family", "constant"));
    config.initial.a_v = get_number(doc, "a_v", 0.0);
    config.initial.a_u = get_number(doc, "a_u", 0.0);
    config.initial.a_theta = get_number(doc, "a_theta", 0.0);
    config.initial.width = get_number(doc, "width", 1.0);
    config.initial.core_radius = get_number(doc, "core_radius", 2.0);
    require(std::abs(config.initial.a_v) < 1.0, "a_v", "must satisfy |a_v| < 1");
    require(std::abs(config.initial.a_theta) < 1.0, "a_theta", "must satisfy |a_theta| < 1");
    require(config.initial.width > 0.0, "width", "must be > 0");
    require(config.initial.core_radius > 0.0, "core_radius", "must be > 0");

    config.t_end = get_number(doc, "t_end", 1.0);
    require(config.t_end > 0.0 && std::isfinite(config.t_end), "t_end", "must be > 0");
    config.report_every = get_number(doc, "report_every", config.t_end / 20.0);
    require(config.report_every > 0.0, "report_every", "must be > 0");
    config.snapshot_every = get_number(doc, "snapshot_every", config.t_end / 4.0);
    require(config.snapshot_every > 0.0, "snapshot_every", "must be > 0");

    config.output_dir = get_string(doc, "output_dir", "out");
    config.energy_residual_tol = get_number(doc, "energy_residual_tol", 0.0);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string render_config(const RunConfig& config) {
    json doc;
    doc["problem"] = to_string(config.problem);
    doc["R"] = config.gas.R;
    doc["c_v"] = config.gas.c_v;
    doc["mu_bar"] = config.gas.mu_bar;
    doc["kappa_bar"] = config.gas.kappa_bar;
    doc["gamma"] = config.gas.gamma;
    doc["beta"] = config.gas.beta;
    doc["L"] = config.L;
    doc["n_cells"] = config.n_cells;
    doc["dt_init"] = config.controls.dt_init;
    doc["dt_min"] = config.controls.dt_min;
    doc["dt_max"] = config.controls.dt_max;
    doc["safety"] = config.controls.safety;
    doc["picard_tol"] = config.controls.picard_tol;
    doc["picard_max"] = config.controls.picard_max;
    doc["growth_factor"] = config.controls.growth_factor;
    doc["growth_streak"] = config.controls.growth_streak;
    doc["family"] = to_string(config.initial.family);
    doc["a_v"] = config.initial.a_v;
    doc["a_u"] = config.initial.a_u;
    doc["a_theta"] = config.initial.a_theta;
    doc["width"] = config.initial.width;
    doc["core_radius"] = config.initial.core_radius;
    doc["t_end"] = config.t_end;
    doc["report_every"] = config.report_every;
    doc["snapshot_every"] = config.snapshot_every;
    doc["output_dir"] = config.output_dir;
    doc["energy_residual_tol"] = config.energy_residual_tol;
    return doc.dump(2) + "\n";
}

std::string config_hash(const RunConfig& config) {
    const std::string text = render_config(config);
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace lagns
