#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "latsym/cli.hpp"
#include "latsym/csv.hpp"
#include "latsym/equations.hpp"
#include "latsym/error.hpp"
#include "latsym/front.hpp"
#include "latsym/random.hpp"
#include "latsym/symmetry.hpp"

namespace latsym::cli {
namespace {

std::string fmt(double value) { return format_double(value); }

std::string fmt(std::complex<double> z) {
    if (z.imag() == 0.0) return fmt(z.real());
    return fmt(z.real()) + (z.imag() < 0.0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

/// Writes the manifest next to the first output unless --manifest was given.
void write_manifest(const Command& cmd, const CommonOptions& common, const std::vector<std::string>& outputs,
                    std::ostream& out) {
    std::filesystem::path path;
    if (common.manifest_path) {
        path = *common.manifest_path;
    } else if (!outputs.empty()) {
        path = std::filesystem::path(outputs.front()).replace_extension(".manifest.json");
    } else {
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << manifest_json(cmd, outputs);
    if (!file) throw std::runtime_error("failed writing " + path.string());
    out << "manifest: " << path.string() << "\n";
}

int run_simulate(const Command& whole, const SimulateCmd& cmd, std::ostream& out, std::ostream& err) {
    SimResult result;
    try {
        result = run(cmd.cfg);
    } catch (const InstabilityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const NoCrossingError& e) {
        err << "error: front lost: " << e.what() << "\n";
        return kExitNoCrossing;
    }

    std::vector<CsvRow> rows;
    rows.reserve(result.steps.size());
    for (std::size_t i = 0; i < result.steps.size(); ++i) {
        rows.push_back({result.steps[i], result.times[i], result.front_positions[i]});
    }
    const std::vector<std::string> header{"step", "time", "front_position"};
    const std::vector<std::string> footer{"# fitted_speed=" + fmt(result.fitted_speed)};
    write_csv(cmd.out, header, rows, footer);

    out << "steps: " << cmd.cfg.num_steps() << " (dx = " << fmt(cmd.cfg.dx) << ", dt = " << fmt(cmd.cfg.dt)
        << ")\n";
    out << "final front position: " << fmt(result.front_positions.back()) << "\n";
    out << "fitted speed: " << fmt(result.fitted_speed) << " from the last " << result.fit_count << " records\n";
    out << "selected speed 2 - dx: " << fmt(2.0 - cmd.cfg.dx) << "\n";
    if (result.near_right_boundary) out << "warning: front ended within 10% of xmax\n";
    out << "wrote " << cmd.out << "\n";
    write_manifest(whole, cmd.common, {cmd.out}, out);
    return kExitOk;
}

int run_dispersion(const Command& whole, const DispersionCmd& cmd, std::ostream& out) {
    const DispersionRoots r = dispersion_roots(cmd.v, cmd.dx);
    out << "v + dx = " << fmt(cmd.v + cmd.dx) << "\n";
    out << "roots: " << fmt(r.roots[0]) << ", " << fmt(r.roots[1]) << "\n";
    if (r.real && r.roots[0] == r.roots[1]) {
        out << "double root " << fmt(r.roots[0].real()) << " (marginal speed)\n";
    } else {
        out << (r.real ? "real roots: monotone tails\n" : "complex roots: oscillatory tails\n");
    }
    write_manifest(whole, cmd.common, {}, out);
    return kExitOk;
}

int run_front_bvp(const Command& whole, const FrontBvpCmd& cmd, std::ostream& out, std::ostream& err) {
    BvpOptions opts;
    opts.max_iter = cmd.max_iter;
    const FrontSolution sol = solve_front_bvp(cmd.dx, cmd.k, cmd.v, cmd.M, opts);

    std::vector<CsvRow> rows;
    rows.reserve(static_cast<std::size_t>(2 * cmd.M + 1));
    for (std::int64_t mu = -cmd.M; mu <= cmd.M; ++mu) {
        rows.push_back({mu, static_cast<double>(mu) * cmd.dx, sol.profile.at(mu)});
    }
    const std::vector<std::string> header{"mu", "zeta", "A"};
    write_csv(cmd.out, header, rows);

    out << "status: " << to_string(sol.status) << " after " << sol.iterations << " Newton iterations\n";
    out << "residual norm: " << fmt(sol.residual_norm) << "\n";
    out << "closure alpha: " << fmt(sol.closure_alpha) << " (ratio " << fmt(1.0 - sol.closure_alpha * cmd.dx)
        << ")\n";
    out << "tail sign changes: " << sol.tail_sign_changes << "\n";
    out << "wrote " << cmd.out << "\n";
    write_manifest(whole, cmd.common, {cmd.out}, out);
    if (!sol.is_front()) {
        err << "no front: " << sol.diagnostic << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int run_check_symmetry(const Command& whole, const CheckSymmetryCmd& cmd, std::ostream& out, std::ostream& err) {
    EquationParams params;
    params.dx = cmd.dx;
    params.dt = cmd.dt;
    params.k = cmd.k;
    const auto eq_variant = make_equation(parse_equation_kind(cmd.equation), params);
    const StencilEquation& eq = std::get<StencilEquation>(eq_variant);
    const TransformSpec tr = transforms::by_name(cmd.transform, cmd.q1, cmd.q2);

    const LatticeSpec lattice(cmd.dx, cmd.dt);
    out << "lattice: into " << (lattice_invariance(tr, lattice, InvarianceMode::into) ? "yes" : "no") << ", onto "
        << (lattice_invariance(tr, lattice, InvarianceMode::onto) ? "yes" : "no") << "\n";
    if (!tr.invertible()) {
        err << "error: " << tr.name() << " is not a bijection of the lattice; equation invariance is undefined\n";
        return kExitUsage;
    }

    const InvarianceVerdict verdict = equation_invariance(tr, eq, cmd.trials, cmd.seed, cmd.threshold);
    out << "equation: " << eq.name() << ", transform: " << tr.name() << ", trials: " << cmd.trials
        << ", seed: " << cmd.seed << "\n";
    out << "verdict: " << (verdict.symmetric ? "symmetric" : "broken") << "\n";
    out << "max residual difference: " << fmt(verdict.max_difference) << "\n";

    std::vector<CsvRow> rows;
    if (verdict.witness) {
        const SymmetryWitness& w = *verdict.witness;
        const IndexPoint q = tr.apply(w.point);
        out << "witness: trial " << w.trial << ", site (" << w.point.m << ", " << w.point.n << ") -> (" << q.m
            << ", " << q.n << "), difference " << fmt(w.difference) << "\n";
        rows.push_back({static_cast<std::int64_t>(w.trial), w.point.m, w.point.n, q.m, q.n, w.difference});
    }
    std::vector<std::string> outputs;
    if (cmd.out) {
        const std::vector<std::string> header{"trial", "m", "n", "m_image", "n_image", "difference"};
        write_csv(*cmd.out, header, rows);
        out << "wrote " << *cmd.out << "\n";
        outputs.push_back(*cmd.out);
    }
    write_manifest(whole, cmd.common, outputs, out);
    return kExitOk;
}

int run_reduce_check(const Command& whole, const ReduceCheckCmd& cmd, std::ostream& out) {
    const double dt = static_cast<double>(cmd.k) / cmd.v * cmd.dx;
    EquationParams params;
    params.dx = cmd.dx;
    params.dt = dt;
    params.k = cmd.k;
    params.form = MovingFrameForm::scaled;
    const StencilEquation scaled = make_fkpp_moving_frame(params);
    const ReducedEquation reduced = make_fkpp_reduced(cmd.dx, cmd.v, cmd.k);

    const IndexRange m_range{-12 - 3 * cmd.k, 12 + 3 * cmd.k};
    double frame_gap = 0.0;
    double reduced_gap = 0.0;
    for (std::size_t i = 0; i < cmd.fields; ++i) {
        const std::uint64_t seed = mix_seed(cmd.seed, i);
        frame_gap = std::max(frame_gap, moving_frame_equivalence(random_field(m_range, {0, 6}, seed), cmd.k,
                                                                 cmd.dx, dt));
        const Profile1D a = random_profile(m_range, seed);
        const Field2D w = Field2D::generate(m_range, {0, 1}, [&a](IndexPoint p) { return a.at(p.m); });
        for (std::int64_t mu = m_range.lo + cmd.k; mu < m_range.hi; ++mu) {
            reduced_gap = std::max(reduced_gap, std::abs(residual_at(scaled, w, {mu, 0}) - reduced.residual(a, mu)));
        }
    }
    out << "moving-frame rewrite: max residual gap " << fmt(frame_gap) << " over " << cmd.fields << " fields\n";
    out << "reduced equation vs scaled moving frame: max gap " << fmt(reduced_gap) << "\n";

    const Ansatz ansatz{cmd.alpha, cmd.A0, cmd.dx};
    std::vector<CsvRow> rows;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::int64_t mu = cmd.mu_min; mu <= cmd.mu_max; ++mu) {
        const BracketComparison c = reduced_residual_vs_bracket(ansatz, cmd.v, mu);
        rows.push_back({mu, c.bracket, c.direct, c.prefactor, c.ratio});
        lo = std::min(lo, c.ratio);
        hi = std::max(hi, c.ratio);
    }
    out << "ansatz ratio direct / (dx^2 bracket A_mu): [" << fmt(lo) << ", " << fmt(hi) << "], 1 / (1 - alpha dx) = "
        << fmt(1.0 / ansatz.ratio()) << "\n";

    std::vector<std::string> outputs;
    if (cmd.out) {
        const std::vector<std::string> header{"mu", "bracket", "direct", "prefactor", "ratio"};
        write_csv(*cmd.out, header, rows);
        out << "wrote " << *cmd.out << "\n";
        outputs.push_back(*cmd.out);
    }
    write_manifest(whole, cmd.common, outputs, out);
    return kExitOk;
}

GeneratorSpec make_generator(const WResidualCmd& cmd) {
    switch (cmd.generator) {
        case GeneratorKind::scaling: return GeneratorSpec::scaling(cmd.psi);
        case GeneratorKind::forward: return GeneratorSpec::ansatz(cmd.alpha, DiffOp::forward(cmd.dx));
        case GeneratorKind::backward: return GeneratorSpec::ansatz(cmd.alpha, DiffOp::backward(cmd.dx));
        case GeneratorKind::central: return GeneratorSpec::ansatz(cmd.alpha, DiffOp::centered(cmd.dx));
    }
    throw DomainError("unknown generator");
}

int run_w_residual(const Command& whole, const WResidualCmd& cmd, std::ostream& out) {
    const Ansatz ansatz{cmd.alpha, cmd.A0, cmd.dx};
    const ReducedEquation eq = make_fkpp_reduced(cmd.dx, cmd.v, 1);
    const GeneratorSpec gen = make_generator(cmd);
    const Profile1D a = ansatz_profile(ansatz, {-3, cmd.mu_max + 3});

    std::vector<CsvRow> rows;
    std::vector<double> operational;
    for (std::int64_t mu = 0; mu <= cmd.mu_max; ++mu) {
        const double w = asymmetry_residual(gen, eq, a, mu);
        rows.push_back({mu, printed_W(ansatz, mu), w});
        operational.push_back(w);
    }
    const std::vector<std::string> header{"mu", "W_printed", "W_operational"};
    write_csv(cmd.out, header, rows);

    const auto last = static_cast<std::size_t>(cmd.mu_max);
    out << "generator: " << gen.name() << "\n";
    out << "W at mu = " << cmd.mu_max << ": printed " << fmt(printed_W(ansatz, cmd.mu_max)) << ", operational "
        << fmt(operational[last]) << "\n";
    if (operational[last - 1] != 0.0) {
        out << "operational decay ratio: " << fmt(operational[last] / operational[last - 1])
            << ", (1 - alpha dx)^2 = " << fmt(ansatz.ratio() * ansatz.ratio()) << "\n";
    }
    out << "wrote " << cmd.out << "\n";
    write_manifest(whole, cmd.common, {cmd.out}, out);
    return kExitOk;
}

}  // namespace

int run_manifest(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (const auto* c = std::get_if<SimulateCmd>(&cmd)) return run_simulate(cmd, *c, out, err);
        if (const auto* c = std::get_if<DispersionCmd>(&cmd)) return run_dispersion(cmd, *c, out);
        if (const auto* c = std::get_if<FrontBvpCmd>(&cmd)) return run_front_bvp(cmd, *c, out, err);
        if (const auto* c = std::get_if<CheckSymmetryCmd>(&cmd)) return run_check_symmetry(cmd, *c, out, err);
        if (const auto* c = std::get_if<ReduceCheckCmd>(&cmd)) return run_reduce_check(cmd, *c, out);
        return run_w_residual(cmd, std::get<WResidualCmd>(cmd), out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace latsym::cli
