#include "alemesh_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include <alemesh/errors.hpp>

namespace alemesh::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

void check_known(const std::string& key, std::string_view origin) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError(fmt::format("{}: unknown key '{}'", origin, key));
    }
}

double parse_double(const std::string& key, std::string_view text) {
    const auto t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
        throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, text));
    }
    return value;
}

long parse_long(const std::string& key, std::string_view text) {
    const auto t = trim(text);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
    }
    return value;
}

std::vector<double> parse_list(const std::string& key, std::string_view text) {
    std::vector<double> out;
    std::string_view rest = trim(text);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(parse_double(key, rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

void require(bool ok, std::string_view message) {
    if (!ok) throw ConfigError(std::string(message));
}

}  // namespace

const std::vector<std::string_view>& known_keys() {
    static const std::vector<std::string_view> keys = {
        "surface.name",
        "mesh.source",
        "init.scale", "init.perturb", "init.seed", "init.prerelax_steps", "init.project_tol",
        "force.k", "force.p", "force.k_alpha", "force.alpha_tol_deg",
        "dae.stages", "dae.tau", "dae.newton_tol", "dae.newton_max_iter",
        "run.method", "run.t0", "run.T", "run.tau", "run.substeps", "run.snapshot_times", "run.skew_threshold",
        "relax.steps", "relax.window", "relax.substeps",
        "projection.tol", "projection.max_iter",
    };
    return keys;
}

Config Config::parse(std::string_view text, std::string_view origin) {
    Config config;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("{}:{}: expected 'section.key = value'", origin, lineno));
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        const auto where = fmt::format("{}:{}", origin, lineno);
        check_known(key, where);
        if (value.empty()) throw ConfigError(fmt::format("{}: empty value for '{}'", where, key));
        if (!config.values_.emplace(key, value).second) {
            throw ConfigError(fmt::format("{}: duplicate key '{}'", where, key));
        }
    }
    return config;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("config file not found: {}", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path.string());
}

void Config::set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(fmt::format("--set expects key=value, got '{}'", assignment));
    }
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void Config::set(const std::string& key, const std::string& value) {
    check_known(key, "--set");
    if (value.empty()) throw ConfigError(fmt::format("--set: empty value for '{}'", key));
    values_[key] = value;
}

std::optional<std::string> Config::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = raw(key);
    return v ? parse_double(key, *v) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    const long value = parse_long(key, *v);
    if (value < -2147483647L || value > 2147483647L) throw ConfigError(fmt::format("{}: {} out of range", key, value));
    return static_cast<int>(value);
}

std::vector<double> Config::get_doubles(const std::string& key, std::vector<double> fallback) const {
    const auto v = raw(key);
    return v ? parse_list(key, *v) : std::move(fallback);
}

RunConfig RunConfig::from(const Config& config) {
    RunConfig run;
    run.surface_name = config.get_string("surface.name", run.surface_name);

    auto& init = run.init;
    init.source = config.get_string("mesh.source", init.source);
    const auto scale = config.get_doubles("init.scale", {1.0, 1.0, 1.0});
    require(scale.size() == 3, "init.scale needs three comma-separated factors");
    init.scale = Vec3(scale[0], scale[1], scale[2]);
    require(init.scale.minCoeff() > 0.0, "init.scale factors must be positive");
    init.perturb = config.get_double("init.perturb", init.perturb);
    require(init.perturb >= 0.0, "init.perturb must be >= 0");
    const long seed = parse_long("init.seed", config.get_string("init.seed", "1"));
    require(seed >= 0, "init.seed must be >= 0");
    init.seed = static_cast<std::uint64_t>(seed);
    init.prerelax_steps = config.get_int("init.prerelax_steps", init.prerelax_steps);
    require(init.prerelax_steps >= 0, "init.prerelax_steps must be >= 0");
    init.project_tol = config.get_double("init.project_tol", init.project_tol);
    require(init.project_tol > 0.0, "init.project_tol must be positive");

    auto& m = run.method;
    m.tag = method_from_string(config.get_string("run.method", "splitting"));
    m.tau = config.get_double("run.tau", m.tau);
    if (m.tag == Method::radau) m.tau = config.get_double("dae.tau", m.tau);
    m.substeps = config.get_int("run.substeps", m.substeps);
    m.skew_threshold = config.get_double("run.skew_threshold", m.skew_threshold);
    m.snapshot_times = config.get_doubles("run.snapshot_times", {});
    m.forces.k = config.get_double("force.k", m.forces.k);
    m.forces.p = config.get_double("force.p", m.forces.p);
    m.forces.k_alpha = config.get_double("force.k_alpha", m.forces.k_alpha);
    m.forces.alpha_tol_deg = config.get_double("force.alpha_tol_deg", m.forces.alpha_tol_deg);
    m.stages = config.get_int("dae.stages", m.stages);
    m.newton.tol = config.get_double("dae.newton_tol", m.newton.tol);
    m.newton.max_iter = config.get_int("dae.newton_max_iter", m.newton.max_iter);
    m.projection.tol = config.get_double("projection.tol", m.projection.tol);
    m.projection.max_iter = config.get_int("projection.max_iter", m.projection.max_iter);

    run.t0 = config.get_double("run.t0", run.t0);
    run.T = config.get_double("run.T", run.T);
    run.relax.steps = config.get_int("relax.steps", run.relax.steps);
    run.relax.window = config.get_double("relax.window", run.relax.window);
    run.relax.substeps = config.get_int("relax.substeps", run.relax.substeps);
    m.relax_window = run.relax.window;

    // Ranges, checked before anything is computed.
    m.forces.validate();
    require(m.tau > 0.0, "run.tau (dae.tau for radau) must be positive");
    require(m.substeps >= 1, "run.substeps must be >= 1");
    require(m.skew_threshold >= 0.0 && m.skew_threshold <= 1.0, "run.skew_threshold must lie in [0, 1]");
    require(m.stages >= 1 && m.stages <= 3, "dae.stages must be 1, 2 or 3");
    require(m.newton.tol > 0.0, "dae.newton_tol must be positive");
    require(m.newton.max_iter >= 1, "dae.newton_max_iter must be >= 1");
    require(m.projection.tol > 0.0, "projection.tol must be positive");
    require(m.projection.max_iter >= 1, "projection.max_iter must be >= 1");
    require(run.T > run.t0, "run.T must exceed run.t0");
    require(run.relax.steps >= 0, "relax.steps must be >= 0");
    require(run.relax.window > 0.0, "relax.window must be positive");
    require(run.relax.substeps >= 1, "relax.substeps must be >= 1");
    for (double s : m.snapshot_times) {
        if (s < run.t0 - 1e-12 || s > run.T + 1e-12) {
            throw ConfigError(fmt::format("snapshot time {} lies outside [{}, {}]", s, run.t0, run.T));
        }
    }

    // Surface and mesh source are resolved here so typos fail early.
    const auto surface = surface_from_name(run.surface_name);
    if (m.tag == Method::literature && !surface.literature_map()) {
        throw ConfigError(fmt::format("surface '{}' has no literature ALE map", run.surface_name));
    }
    const auto& src = init.source;
    const bool generated = src.starts_with("icosphere:") || src.starts_with("torus_grid:") ||
                           src.starts_with("torus_rings:") || src.starts_with("revolution:");
    if (!generated && !std::filesystem::exists(src)) {
        throw ConfigError(fmt::format("mesh file not found: {}", src));
    }
    return run;
}

}  // namespace alemesh::cli
