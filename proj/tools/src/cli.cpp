#include "latsym/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "latsym/csv.hpp"
#include "latsym/error.hpp"
#include "latsym/latsym.hpp"
#include "latsym/random.hpp"

namespace latsym::cli {
namespace {

struct KeySpec {
    const char* name;
    const char* help;
    bool flag = false;
};

struct CommandSpec {
    const char* name;
    const char* description;
    std::vector<KeySpec> keys;
};

const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs{
        {"simulate",
         "Run the explicit FKPP scheme from a step-exponential initial condition and track the front",
         {{"dx", "grid spacing (default 0.05)"},
          {"dt", "time step, or 'auto' for 0.4 dx^2 (default auto)"},
          {"k0", "initial decay rate (default 1)"},
          {"k1", "initial offset (default 0)"},
          {"xmin", "left edge of the domain (default -20)"},
          {"xmax", "right edge of the domain (default 120)"},
          {"tend", "final time (default 40)"},
          {"level", "tracked level (default 0.5)"},
          {"stride", "steps between recorded front positions (default 10)"},
          {"fit-window", "trailing fraction of records used for the speed fit (default 0.5)"},
          {"shift", "shift of the initial data in cells (default 0)"},
          {"allow-unstable", "skip the dt <= 0.4 dx^2 guard", true},
          {"out", "CSV output path (default run.csv)"}}},
        {"dispersion",
         "Roots of the tail dispersion relation alpha^2 - (v + dx) alpha + 1 = 0",
         {{"dx", "grid spacing (required)"}, {"v", "front speed (required)"}}},
        {"front-bvp",
         "Solve the reduced travelling-wave equation as a boundary-value problem",
         {{"dx", "grid spacing (default 0.1)"},
          {"k", "lattice shift per time step (default 1)"},
          {"v", "front speed (default 2 - dx)"},
          {"M", "half-width of the window in cells (default 200)"},
          {"max-iter", "Newton iteration limit (default 200)"},
          {"out", "CSV output path (default profile.csv)"}}},
        {"check-symmetry",
         "Test a lattice transformation against a difference equation on random fields",
         {{"equation", "heat, fkpp or fkpp_moving_frame (default fkpp)"},
          {"transform", "Tx, Tt, Bx, Bt, R or Sq (required)"},
          {"q1", "Sq spatial factor (default 2)"},
          {"q2", "Sq temporal factor (default 2)"},
          {"trials", "number of random fields (default 32)"},
          {"seed", "random seed (default 42, or LATTICE_ASYM_SEED)"},
          {"dx", "grid spacing (default 0.1)"},
          {"dt", "time step (default 0.4 dx^2)"},
          {"k", "moving-frame shift (default 1)"},
          {"threshold", "largest residual difference still called symmetric (default 1e-10)"},
          {"out", "optional CSV with the witness"}}},
        {"reduce-check",
         "Check the moving-frame rewrite, the reduced equation and the ansatz bracket",
         {{"dx", "grid spacing (default 0.1)"},
          {"v", "front speed (default 1.9)"},
          {"k", "lattice shift per time step (default 1)"},
          {"fields", "number of random fields (default 32)"},
          {"seed", "random seed (default 42, or LATTICE_ASYM_SEED)"},
          {"alpha", "ansatz decay rate (default 1)"},
          {"A0", "ansatz amplitude (default 1)"},
          {"mu-min", "first bracket site (default 3)"},
          {"mu-max", "last bracket site (default 30)"},
          {"out", "optional CSV with the bracket comparison"}}},
        {"w-residual",
         "Symmetry defect W of the reduced equation along the exponential ansatz",
         {{"alpha", "ansatz decay rate (default 1)"},
          {"dx", "grid spacing (default 0.1)"},
          {"A0", "ansatz amplitude (default 1)"},
          {"v", "front speed (default 2 - dx)"},
          {"mu-max", "last site (default 50)"},
          {"generator", "scaling, forward, backward or central (default scaling)"},
          {"psi", "scaling factor for the scaling generator (default 1)"},
          {"out", "CSV output path (default w.csv)"}}},
    };
    return specs;
}

const CommandSpec& find_spec(const std::string& name) {
    for (const CommandSpec& spec : command_specs()) {
        if (name == spec.name) return spec;
    }
    throw UsageError("unknown command '" + name + "'");
}

/// Typed access to merged key=value parameters; every lookup records the
/// resolved value so the manifest lists defaults too.
class Params {
public:
    explicit Params(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

    [[nodiscard]] bool has(const std::string& key) const { return raw_.count(key) != 0; }

    double real(const std::string& key, std::optional<double> fallback) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) {
            if (!fallback) throw UsageError("missing required flag --" + key);
            return record(key, *fallback);
        }
        double value = 0.0;
        const std::string& text = it->second;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
            throw UsageError("type mismatch for --" + key + ": expected a number, got '" + text + "'");
        }
        return record(key, value);
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) {
            resolved_[key] = std::to_string(fallback);
            return fallback;
        }
        std::int64_t value = 0;
        const std::string& text = it->second;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
            throw UsageError("type mismatch for --" + key + ": expected an integer, got '" + text + "'");
        }
        resolved_[key] = std::to_string(value);
        return value;
    }

    std::uint64_t seed(const std::string& key, std::uint64_t fallback) {
        const std::int64_t value = integer(key, static_cast<std::int64_t>(fallback));
        if (value < 0) throw UsageError("--" + key + " must be non-negative");
        return static_cast<std::uint64_t>(value);
    }

    std::string text(const std::string& key, std::optional<std::string> fallback) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) {
            if (!fallback) throw UsageError("missing required flag --" + key);
            resolved_[key] = *fallback;
            return *fallback;
        }
        resolved_[key] = it->second;
        return it->second;
    }

    std::optional<std::string> optional_text(const std::string& key) {
        const auto it = raw_.find(key);
        if (it == raw_.end()) return std::nullopt;
        resolved_[key] = it->second;
        return it->second;
    }

    bool flag(const std::string& key) {
        const auto it = raw_.find(key);
        bool value = false;
        if (it != raw_.end()) {
            const std::string& t = it->second;
            if (t == "true" || t == "1" || t == "yes" || t == "on") {
                value = true;
            } else if (!(t == "false" || t == "0" || t == "no" || t == "off")) {
                throw UsageError("type mismatch for --" + key + ": expected true or false, got '" + t + "'");
            }
        }
        resolved_[key] = value ? "true" : "false";
        return value;
    }

    double record(const std::string& key, double value) {
        resolved_[key] = format_double(value);
        return value;
    }

    [[nodiscard]] std::map<std::string, std::string> resolved() const { return resolved_; }

private:
    std::map<std::string, std::string> raw_;
    std::map<std::string, std::string> resolved_;
};

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) throw UsageError(std::string(name) + " must be positive");
}

void require_at_least(std::int64_t value, std::int64_t lo, const char* name) {
    if (value < lo) throw UsageError(std::string(name) + " must be >= " + std::to_string(lo));
}

SimulateCmd build_simulate(Params& p) {
    SimulateCmd cmd;
    SimConfig& cfg = cmd.cfg;
    cfg.dx = p.real("dx", 0.05);
    require_positive(cfg.dx, "dx");
    const std::string dt = p.has("dt") ? p.text("dt", std::nullopt) : std::string("auto");
    cfg.dt = dt == "auto" ? stable_dt(cfg.dx) : p.real("dt", std::nullopt);
    p.record("dt", cfg.dt);
    require_positive(cfg.dt, "dt");
    cfg.ic.k0 = p.real("k0", 1.0);
    cfg.ic.k1 = p.real("k1", 0.0);
    cfg.x_min = p.real("xmin", -20.0);
    cfg.x_max = p.real("xmax", 120.0);
    cfg.t_end = p.real("tend", 40.0);
    cfg.track_level = p.real("level", 0.5);
    cfg.record_stride = p.integer("stride", 10);
    cfg.fit_window = p.real("fit-window", 0.5);
    cfg.shift_cells = p.integer("shift", 0);
    cfg.allow_unstable_dt = p.flag("allow-unstable");
    cmd.out = p.text("out", std::string("run.csv"));
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return cmd;
}

DispersionCmd build_dispersion(Params& p) {
    DispersionCmd cmd;
    cmd.dx = p.real("dx", std::nullopt);
    require_positive(cmd.dx, "dx");
    cmd.v = p.real("v", std::nullopt);
    return cmd;
}

FrontBvpCmd build_front_bvp(Params& p) {
    FrontBvpCmd cmd;
    cmd.dx = p.real("dx", 0.1);
    require_positive(cmd.dx, "dx");
    if (!(cmd.dx < 2.0)) throw UsageError("dx must be below 2");
    cmd.k = p.integer("k", 1);
    require_at_least(cmd.k, 1, "k");
    cmd.v = p.real("v", 2.0 - cmd.dx);
    cmd.M = p.integer("M", 200);
    require_at_least(cmd.M, 50, "M");
    cmd.max_iter = static_cast<int>(p.integer("max-iter", 200));
    require_at_least(cmd.max_iter, 1, "max-iter");
    cmd.out = p.text("out", std::string("profile.csv"));
    return cmd;
}

CheckSymmetryCmd build_check_symmetry(Params& p, std::uint64_t default_seed) {
    CheckSymmetryCmd cmd;
    cmd.equation = p.text("equation", std::string("fkpp"));
    if (cmd.equation != "heat" && cmd.equation != "fkpp" && cmd.equation != "fkpp_moving_frame") {
        throw UsageError("--equation must be heat, fkpp or fkpp_moving_frame, got '" + cmd.equation + "'");
    }
    cmd.transform = p.text("transform", std::nullopt);
    cmd.q1 = p.integer("q1", 2);
    cmd.q2 = p.integer("q2", 2);
    const std::int64_t trials = p.integer("trials", 32);
    require_at_least(trials, 1, "trials");
    cmd.trials = static_cast<std::size_t>(trials);
    cmd.seed = p.seed("seed", default_seed);
    cmd.dx = p.real("dx", 0.1);
    require_positive(cmd.dx, "dx");
    cmd.dt = p.real("dt", stable_dt(cmd.dx));
    require_positive(cmd.dt, "dt");
    cmd.k = p.integer("k", 1);
    require_at_least(cmd.k, 1, "k");
    cmd.threshold = p.real("threshold", 1e-10);
    require_positive(cmd.threshold, "threshold");
    cmd.out = p.optional_text("out");
    return cmd;
}

ReduceCheckCmd build_reduce_check(Params& p, std::uint64_t default_seed) {
    ReduceCheckCmd cmd;
    cmd.dx = p.real("dx", 0.1);
    require_positive(cmd.dx, "dx");
    cmd.v = p.real("v", 1.9);
    require_positive(cmd.v, "v");
    cmd.k = p.integer("k", 1);
    require_at_least(cmd.k, 1, "k");
    const std::int64_t fields = p.integer("fields", 32);
    require_at_least(fields, 1, "fields");
    cmd.fields = static_cast<std::size_t>(fields);
    cmd.seed = p.seed("seed", default_seed);
    cmd.alpha = p.real("alpha", 1.0);
    cmd.A0 = p.real("A0", 1.0);
    cmd.mu_min = p.integer("mu-min", 3);
    cmd.mu_max = p.integer("mu-max", 30);
    if (cmd.mu_max < cmd.mu_min) throw UsageError("mu-max must be >= mu-min");
    cmd.out = p.optional_text("out");
    return cmd;
}

WResidualCmd build_w_residual(Params& p) {
    WResidualCmd cmd;
    cmd.alpha = p.real("alpha", 1.0);
    cmd.dx = p.real("dx", 0.1);
    require_positive(cmd.dx, "dx");
    cmd.A0 = p.real("A0", 1.0);
    cmd.v = p.real("v", 2.0 - cmd.dx);
    cmd.mu_max = p.integer("mu-max", 50);
    require_at_least(cmd.mu_max, 1, "mu-max");
    const std::string gen = p.text("generator", std::string("scaling"));
    if (gen == "scaling") {
        cmd.generator = GeneratorKind::scaling;
    } else if (gen == "forward") {
        cmd.generator = GeneratorKind::forward;
    } else if (gen == "backward") {
        cmd.generator = GeneratorKind::backward;
    } else if (gen == "central") {
        cmd.generator = GeneratorKind::central;
    } else {
        throw UsageError("--generator must be scaling, forward, backward or central, got '" + gen + "'");
    }
    cmd.psi = p.real("psi", 1.0);
    cmd.out = p.text("out", std::string("w.csv"));
    return cmd;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string command_name(const Command& cmd) {
    struct Visitor {
        std::string operator()(const SimulateCmd&) const { return "simulate"; }
        std::string operator()(const DispersionCmd&) const { return "dispersion"; }
        std::string operator()(const FrontBvpCmd&) const { return "front-bvp"; }
        std::string operator()(const CheckSymmetryCmd&) const { return "check-symmetry"; }
        std::string operator()(const ReduceCheckCmd&) const { return "reduce-check"; }
        std::string operator()(const WResidualCmd&) const { return "w-residual"; }
    };
    return std::visit(Visitor{}, cmd);
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::map<std::string, std::string> values;
    if (trim(text).rfind('{', 0) == 0) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("invalid manifest " + path + ": " + e.what());
        }
        if (!doc.contains("parameters") || !doc["parameters"].is_object()) {
            throw UsageError("manifest " + path + " has no parameters object");
        }
        for (const auto& [key, value] : doc["parameters"].items()) {
            if (!value.is_string()) throw UsageError("manifest parameter " + key + " is not a string");
            values[key] = value.get<std::string>();
        }
        return values;
    }

    std::istringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty()) throw UsageError(path + ":" + std::to_string(number) + ": empty key");
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

Command parse_args(const std::vector<std::string>& args, std::optional<std::string> env_seed) {
    CLI::App app("Discrete FKPP lattice toolkit: fronts, symmetries and simulations", "latsym_cli");
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(kVersion));

    struct Bound {
        std::map<std::string, std::string> values;
        std::map<std::string, bool> flags;
        std::map<std::string, CLI::Option*> options;
        std::string config;
        std::string manifest;
        CLI::Option* config_opt = nullptr;
        CLI::Option* manifest_opt = nullptr;
    };
    std::map<std::string, Bound> bound;
    for (const CommandSpec& spec : command_specs()) {
        Bound& b = bound[spec.name];
        CLI::App* sub = app.add_subcommand(spec.name, spec.description);
        for (const KeySpec& key : spec.keys) {
            const std::string flag = std::string("--") + key.name;
            if (key.flag) {
                b.options[key.name] = sub->add_flag(flag, b.flags[key.name], key.help);
            } else {
                b.options[key.name] = sub->add_option(flag, b.values[key.name], key.help);
            }
        }
        b.config_opt = sub->add_option("--config", b.config, "flat key = value file or a run manifest");
        b.manifest_opt = sub->add_option("--manifest", b.manifest, "path of the JSON run manifest");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested(std::string(kVersion) + "\n");
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const CommandSpec& spec = find_spec(chosen->get_name());
    Bound& b = bound.at(spec.name);

    std::map<std::string, std::string> merged;
    if (b.config_opt->count() > 0) {
        for (const auto& [key, value] : read_config(b.config)) {
            const bool known = std::any_of(spec.keys.begin(), spec.keys.end(),
                                           [&key](const KeySpec& k) { return key == k.name; });
            if (!known) throw UsageError("unknown key '" + key + "' in " + b.config + " for " + spec.name);
            merged[key] = value;
        }
    }
    for (const KeySpec& key : spec.keys) {
        if (b.options.at(key.name)->count() == 0) continue;
        merged[key.name] = key.flag ? (b.flags.at(key.name) ? "true" : "false") : b.values.at(key.name);
    }

    std::uint64_t default_seed = kDefaultSeed;
    if (env_seed && !env_seed->empty()) {
        std::uint64_t value = 0;
        const auto res = std::from_chars(env_seed->data(), env_seed->data() + env_seed->size(), value);
        if (res.ec != std::errc() || res.ptr != env_seed->data() + env_seed->size()) {
            throw UsageError(std::string(kSeedEnvVar) + " must be a non-negative integer, got '" + *env_seed + "'");
        }
        default_seed = value;
    }

    Params p(std::move(merged));
    Command cmd = [&]() -> Command {
        const std::string name = spec.name;
        if (name == "simulate") return build_simulate(p);
        if (name == "dispersion") return build_dispersion(p);
        if (name == "front-bvp") return build_front_bvp(p);
        if (name == "check-symmetry") return build_check_symmetry(p, default_seed);
        if (name == "reduce-check") return build_reduce_check(p, default_seed);
        return build_w_residual(p);
    }();
    std::visit(
        [&](auto& c) {
            c.common.params = p.resolved();
            if (b.manifest_opt->count() > 0) c.common.manifest_path = b.manifest;
        },
        cmd);
    return cmd;
}

std::string manifest_json(const Command& cmd, const std::vector<std::string>& outputs) {
    nlohmann::json doc;
    doc["command"] = command_name(cmd);
    doc["version"] = kVersion;
    const auto& params = std::visit([](const auto& c) -> const auto& { return c.common.params; }, cmd);
    doc["parameters"] = params;
    if (const auto it = params.find("seed"); it != params.end()) doc["seed"] = std::stoull(it->second);
    doc["outputs"] = outputs;
    return doc.dump(2) + "\n";
}

}  // namespace latsym::cli
