#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <alemesh/evolve.hpp>
#include <alemesh/forces.hpp>
#include <alemesh/surface.hpp>

namespace alemesh::cli {

/// Flat `section.key = value` settings.
///
/// Grammar, one entry per line:
///
///     # comment            (also after a value: `run.T = 0.6  # end time`)
///     section.key = value
///
/// Blank lines are ignored. Keys must be known (see known_keys()); a repeated
/// key in one file is an error, while set() overrides earlier values.
class Config {
public:
    static Config parse(std::string_view text, std::string_view origin = "<string>");
    static Config load(const std::filesystem::path& path);

    /// Applies a `key=value` override (the `--set` form).
    void set(std::string_view assignment);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return values_.contains(key); }
    std::optional<std::string> raw(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

const std::vector<std::string_view>& known_keys();

/// How the starting mesh is produced before evolution.
struct InitSettings {
    std::string source = "icosphere:3";  ///< OBJ path | icosphere:n | torus_grid:nu:nv | torus_rings:n | revolution:n
    Vec3 scale = Vec3::Ones();           ///< applied to generated vertices before projection
    double perturb = 0.0;                ///< uniform vertex jitter before projection
    std::uint64_t seed = 1;
    int prerelax_steps = 0;              ///< relax_static steps, angle force off
    double project_tol = 1e-14;
};

struct RelaxConfig {
    int steps = 25;
    double window = 0.01;
    int substeps = 25;
};

/// Fully validated run description.
struct RunConfig {
    std::string surface_name = "sphere";
    InitSettings init;
    EvolutionMethod method;
    double t0 = 0.0;
    double T = 1.0;
    RelaxConfig relax;

    /// Reads every key with defaults, then validates ranges and the existence
    /// of referenced files. Throws ConfigError.
    static RunConfig from(const Config& config);
};

}  // namespace alemesh::cli
