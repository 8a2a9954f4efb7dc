#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "olmesh/olmesh.hpp"

using namespace olmesh;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kParse = 4 };

struct UsageError : Error {
    using Error::Error;
};

std::string input_text(const std::string& path) {
    if (path.empty() || path == "-") return io::read_text(std::cin);
    return io::read_file(path);
}

io::json input_json(const std::string& path) { return io::parse_json(input_text(path)); }

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        io::write_file(path, text);
    }
}

void emit_json(const std::string& path, const io::json& j) { emit(path, io::dump(j)); }

// Diagnostics go to stderr so stdout stays a clean data stream.
template <class... Args>
void report(const char* fmt, Args... args) {
    std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
}

ComplexMatrix load_unitary(const std::string& path) {
    auto m = io::matrix_from_json(input_json(path));
    require_square(m, "input");
    const double dev = unitarity_deviation(m);
    if (dev > kUnitarityTol) throw UnitarityError("input is not unitary", dev);
    return m;
}

struct Common {
    std::string in;
    std::string out;
};

void add_in(CLI::App* cmd, Common& c, bool required) {
    auto* opt = cmd->add_option("--in", c.in, "input file ('-' for stdin)");
    if (required) opt->required();
}

void add_out(CLI::App* cmd, Common& c) { cmd->add_option("--out", c.out, "output file (default stdout)"); }

InfidelityMetric parse_metric(const std::string& s) {
    if (s == "overlap") return InfidelityMetric::Overlap;
    if (s == "per-mode") return InfidelityMetric::PerMode;
    throw UsageError("--metric must be 'overlap' or 'per-mode'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"olmesh: unitary compilation, noise analysis and rearrangement for optical-lattice meshes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common c;
    std::size_t n = 0, l = 0, samples = 0, states = 30, noise_instances = 30, site = 0;
    std::uint64_t seed = 0;
    bool shifted = false, exhaustive = false;
    double tau = 0.0, t_nn = 1.0, t_nnn = 0.0, sigma1 = 0.0, epsilon1 = 0.0;
    std::vector<std::size_t> ns;
    std::vector<double> sigmas, epsilons;
    std::string target = "dft", metric = "overlap", state_path, trace_path, crosstalk = "noisy";

    auto* dft = app.add_subcommand("dft", "write the discrete Fourier unitary");
    dft->add_option("--n", n, "dimension")->required()->check(CLI::PositiveNumber);
    dft->add_flag("--shifted", shifted, "center zero momentum");
    add_out(dft, c);

    auto* haar = app.add_subcommand("haar", "write a Haar-random unitary");
    haar->add_option("--n", n, "dimension")->required()->check(CLI::PositiveNumber);
    haar->add_option("--seed", seed, "RNG seed")->required();
    add_out(haar, c);

    auto* decomp = app.add_subcommand("decompose", "factor a unitary into nearest-neighbour two-mode gates");
    add_in(decomp, c, true);
    add_out(decomp, c);

    auto* recon = app.add_subcommand("reconstruct", "multiply a gate circuit back into a unitary");
    add_in(recon, c, true);
    add_out(recon, c);

    auto* compile = app.add_subcommand("compile", "turn a gate circuit into a native pulse schedule");
    add_in(compile, c, true);
    add_out(compile, c);

    auto* evolve = app.add_subcommand("evolve", "time-evolution unitary exp(-i H tau)");
    add_in(evolve, c, false);
    evolve->add_option("--n", n, "chain length for the built-in Hamiltonian");
    evolve->add_option("--t-nn", t_nn, "nearest-neighbour hopping (default 1)");
    evolve->add_option("--t-nnn", t_nnn, "next-nearest-neighbour hopping (default 0)");
    evolve->add_option("--tau", tau, "evolution time (hbar = 1, units of 1/t_nn)")->required();
    add_out(evolve, c);

    auto* simulate = app.add_subcommand("simulate", "run a pulse schedule on a state");
    add_in(simulate, c, true);
    auto* state_opt = simulate->add_option("--state", state_path, "input state file");
    simulate->add_option("--site", site, "start from a single occupied site")->excludes(state_opt);
    simulate->add_option("--sigma", sigma1, "relative phase noise");
    simulate->add_option("--epsilon", epsilon1, "nearest-neighbour crosstalk");
    simulate->add_option("--seed", seed, "RNG seed (required when noisy)");
    simulate->add_option("--trace", trace_path, "write per-layer site probabilities here");
    add_out(simulate, c);

    auto* rearrange = app.add_subcommand("rearrange", "plan an HVH rearrangement of an atom grid");
    add_in(rearrange, c, true);
    rearrange->add_option("--l", l, "expected grid size");
    add_out(rearrange, c);

    auto* bstats = app.add_subcommand("buffer-stats", "buffer column statistics over random bijections");
    bstats->add_option("--l", l, "grid size")->required()->check(CLI::PositiveNumber);
    bstats->add_option("--samples", samples, "number of random target configurations");
    bstats->add_option("--seed", seed, "RNG seed");
    bstats->add_flag("--exhaustive", exhaustive, "enumerate every bijection (L <= 3)");
    add_out(bstats, c);

    auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo infidelity sweep");
    sweep_cmd->add_option("--target", target, "dft, permutation or schedule")
        ->check(CLI::IsMember({"dft", "permutation", "schedule"}));
    add_in(sweep_cmd, c, false);
    sweep_cmd->add_option("--n", ns, "mode count (repeatable)");
    sweep_cmd->add_option("--sigma", sigmas, "relative phase noise (repeatable)")->required();
    sweep_cmd->add_option("--epsilon", epsilons, "crosstalk (repeatable, default 0)");
    sweep_cmd->add_option("--states", states, "random input states per cell")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--noise-instances", noise_instances, "noise draws per state")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", seed, "RNG seed")->required();
    sweep_cmd->add_flag("--shifted", shifted, "use the centered DFT");
    sweep_cmd->add_option("--metric", metric, "overlap or per-mode");
    sweep_cmd->add_option("--crosstalk-source", crosstalk, "noisy or ideal")->check(CLI::IsMember({"noisy", "ideal"}));
    add_out(sweep_cmd, c);

    auto* fit = app.add_subcommand("fit", "fit C N^k sigma^b to a sweep CSV (epsilon = 0 rows)");
    add_in(fit, c, true);
    add_out(fit, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (dft->parsed()) {
            emit_json(c.out, io::to_json(dft_matrix(n, shifted)));
        } else if (haar->parsed()) {
            Rng rng(seed, 0);
            emit_json(c.out, io::to_json(haar_unitary(n, rng)));
        } else if (decomp->parsed()) {
            const auto u = load_unitary(c.in);
            const auto circuit = decompose(u);
            report("gates=%zu depth=%zu", circuit.gates.size(), circuit.depth());
            emit_json(c.out, io::to_json(circuit));
        } else if (recon->parsed()) {
            emit_json(c.out, io::to_json(reconstruct(io::circuit_from_json(input_json(c.in)))));
        } else if (compile->parsed()) {
            const auto circuit = io::circuit_from_json(input_json(c.in));
            const auto schedule = absorb_phases(circuit);
            const ComplexMatrix composed = std::polar(1.0, schedule.global_phase) * schedule_to_unitary(schedule);
            report("ops=%zu distance=%.3e", schedule.ops.size(), frobenius_distance(composed, reconstruct(circuit)));
            emit_json(c.out, io::to_json(schedule));
        } else if (evolve->parsed()) {
            const bool from_file = !c.in.empty();
            if (from_file == (n > 0)) throw UsageError("evolve needs exactly one of --in or --n");
            const auto h = from_file ? io::hamiltonian_from_json(input_json(c.in)) : chain_hamiltonian(n, t_nn, t_nnn);
            emit_json(c.out, io::to_json(evolution_unitary(h, tau)));
        } else if (simulate->parsed()) {
            const auto schedule = io::schedule_from_json(input_json(c.in));
            const StateVector psi = state_path.empty() ? StateVector::basis(schedule.dim, site)
                                                       : io::state_from_json(input_json(state_path));
            NoiseModel noise{sigma1, epsilon1, seed};
            noise.validate();
            if (!noise.is_noiseless() && simulate->count("--seed") == 0)
                throw UsageError("--seed is required with --sigma or --epsilon");
            ExecutionOptions opt;
            if (!noise.is_noiseless()) opt.noise = &noise;
            opt.rng = Rng(seed, 0);
            opt.record_trace = !trace_path.empty();
            const auto result = run_schedule(schedule, psi, opt);
            if (opt.record_trace) emit_json(trace_path, io::to_json(result.trace));
            emit_json(c.out, io::to_json(result.state));
        } else if (rearrange->parsed()) {
            const auto targets = io::targets_from_json(input_json(c.in));
            if (rearrange->count("--l") && l != targets.l)
                throw ValidationError("--l " + std::to_string(l) + " does not match targets L=" + std::to_string(targets.l));
            const auto plan = hvh_plan(targets);
            validate_plan(plan, targets);
            const auto nets = plan_to_networks(plan);
            report("L_buffer=%zu depth=%zu swaps=%zu", plan.l_buffer, nets.depth(), nets.swap_count());
            emit_json(c.out, io::to_json(plan));
        } else if (bstats->parsed()) {
            BufferStats stats;
            if (exhaustive) {
                stats = buffer_stats_exhaustive(l);
            } else {
                if (bstats->count("--samples") == 0 || bstats->count("--seed") == 0)
                    throw UsageError("buffer-stats needs --samples and --seed (or --exhaustive)");
                stats = buffer_stats(l, samples, Rng(seed, 0));
            }
            emit(c.out, io::buffer_stats_to_csv(stats));
        } else if (sweep_cmd->parsed()) {
            const auto which = parse_metric(metric);
            std::vector<SweepTarget> targets;
            if (target == "schedule") {
                if (c.in.empty()) throw UsageError("--target schedule needs --in");
                if (!ns.empty()) throw UsageError("--n is taken from the schedule file");
                targets.push_back({"schedule", io::schedule_from_json(input_json(c.in))});
            } else {
                if (ns.empty()) throw UsageError("--target " + target + " needs at least one --n");
                for (std::size_t dim : ns) {
                    if (dim == 0) throw UsageError("--n must be positive");
                    if (target == "dft") {
                        targets.push_back({"dft", absorb_phases(decompose(dft_matrix(dim, shifted)))});
                    } else {
                        // One fixed random permutation per N, keyed on (seed, N).
                        Rng rng(seed, 1'000'000 + dim);
                        const auto p = random_permutation(dim, rng);
                        targets.push_back({"permutation", absorb_phases(network_to_circuit(swap_network_1d(p)))});
                    }
                }
            }
            SweepConfig cfg;
            cfg.sigmas = sigmas;
            cfg.epsilons = epsilons.empty() ? std::vector<double>{0.0} : epsilons;
            cfg.n_states = states;
            cfg.n_noise = noise_instances;
            cfg.seed = seed;
            cfg.crosstalk_source = crosstalk == "ideal" ? CrosstalkSource::Ideal : CrosstalkSource::Noisy;
            emit(c.out, io::sweep_to_csv(sweep(targets, cfg), which));
        } else if (fit->parsed()) {
            const auto rows = io::sweep_from_csv(input_text(c.in));
            emit_json(c.out, io::to_json(fit_power_law(rows)));
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const io::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}
