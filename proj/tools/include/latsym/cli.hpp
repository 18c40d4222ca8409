#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "latsym/simulator.hpp"

namespace latsym::cli {

/// Bad command line or config file; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitFailure = 2,    ///< simulate: instability; front-bvp: no front
    kExitNoCrossing = 3,
};

inline constexpr const char* kSeedEnvVar = "LATTICE_ASYM_SEED";

/// Fields shared by every command.
struct CommonOptions {
    /// Resolved parameters in canonical text form, as written to the manifest.
    std::map<std::string, std::string> params;
    std::optional<std::string> manifest_path;
};

struct SimulateCmd {
    CommonOptions common;
    SimConfig cfg;
    std::string out = "run.csv";
};

struct DispersionCmd {
    CommonOptions common;
    double dx = 0.0;
    double v = 0.0;
};

struct FrontBvpCmd {
    CommonOptions common;
    double dx = 0.1;
    std::int64_t k = 1;
    double v = 1.9;
    std::int64_t M = 200;
    int max_iter = 200;
    std::string out = "profile.csv";
};

struct CheckSymmetryCmd {
    CommonOptions common;
    std::string equation = "fkpp";
    std::string transform;
    std::int64_t q1 = 2;
    std::int64_t q2 = 2;
    std::size_t trials = 32;
    std::uint64_t seed = 42;
    double dx = 0.1;
    double dt = 0.004;
    std::int64_t k = 1;
    double threshold = 1e-10;
    std::optional<std::string> out;
};

struct ReduceCheckCmd {
    CommonOptions common;
    double dx = 0.1;
    double v = 1.9;
    std::int64_t k = 1;
    std::size_t fields = 32;
    std::uint64_t seed = 42;
    double alpha = 1.0;
    double A0 = 1.0;
    std::int64_t mu_min = 3;
    std::int64_t mu_max = 30;
    std::optional<std::string> out;
};

enum class GeneratorKind { scaling, forward, backward, central };

struct WResidualCmd {
    CommonOptions common;
    double alpha = 1.0;
    double dx = 0.1;
    double A0 = 1.0;
    double v = 1.9;
    std::int64_t mu_max = 50;
    GeneratorKind generator = GeneratorKind::scaling;
    double psi = 1.0;
    std::string out = "w.csv";
};

using Command = std::variant<SimulateCmd, DispersionCmd, FrontBvpCmd, CheckSymmetryCmd, ReduceCheckCmd, WResidualCmd>;

[[nodiscard]] std::string command_name(const Command& cmd);

/// Parses `args` (without the program name). `env_seed` stands in for the
/// LATTICE_ASYM_SEED variable; precedence is flag, config file, env, default.
/// `--help` is reported by throwing HelpRequested with the rendered text.
[[nodiscard]] Command parse_args(const std::vector<std::string>& args,
                                 std::optional<std::string> env_seed = std::nullopt);

/// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key=value lines; '#' starts a comment. A JSON run manifest is also
/// accepted, in which case its "parameters" object is used.
[[nodiscard]] std::map<std::string, std::string> read_config(const std::string& path);

/// Manifest document (JSON text) for the command and its outputs.
[[nodiscard]] std::string manifest_json(const Command& cmd, const std::vector<std::string>& outputs);

/// Runs the command, writing summaries to `out` and errors to `err`.
[[nodiscard]] int run_manifest(const Command& cmd, std::ostream& out, std::ostream& err);

}  // namespace latsym::cli
