#include <cstdlib>
#include <iostream>

#include "latsym/cli.hpp"

int main(int argc, char** argv) {
    using namespace latsym::cli;
    std::optional<std::string> env_seed;
    if (const char* value = std::getenv(kSeedEnvVar)) env_seed = value;
    try {
        const Command cmd = parse_args(std::vector<std::string>(argv + 1, argv + argc), env_seed);
        return run_manifest(cmd, std::cout, std::cerr);
    } catch (const HelpRequested& help) {
        std::cout << help.what();
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
        return kExitUsage;
    }
}
