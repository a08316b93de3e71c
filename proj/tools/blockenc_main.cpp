// Command-line front end: pca / solve / simulate / bench subcommands.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "blockenc/cli.hpp"
#include "blockenc/error.hpp"

namespace {

void add_common(CLI::App* cmd, blockenc::ExperimentConfig& cfg) {
    cmd->add_option("--config", [](const std::vector<std::string>&) { return true; },
                    "JSON config file; flags given on the command line override it");
    cmd->add_option("--input", cfg.input_path, "input CSV");
    cmd->add_option("--output", cfg.output_path, "JSON result path");
    cmd->add_option("--ledger", cfg.ledger_path, "stage-ledger CSV path");
    cmd->add_flag("--no-ledger", [&cfg](std::int64_t) { cfg.ledger_report = false; },
                  "skip the stage-ledger CSV");
    cmd->add_option("--eps", cfg.eps, "target accuracy in (0, 1)");
    cmd->add_option("--seed", cfg.seed, "RNG seed (required where randomness is involved)");
}

} // namespace

int main(int argc, char** argv) {
    blockenc::ExperimentConfig cfg;

    // Apply --config before CLI11 parses so explicit flags win.
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") blockenc::apply_config_file(cfg, argv[i + 1]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"matrix-level simulator for block-encoded linear algebra"};
    app.require_subcommand(1);

    CLI::App* pca = app.add_subcommand("pca", "principal components of a dataset");
    add_common(pca, cfg);
    pca->add_option("--r", cfg.r, "number of components");
    pca->add_option("--method", cfg.method, "power or gd");
    pca->add_option("--gap", cfg.gap, "known eigenvalue gap (0 = probe for it)");
    pca->add_option("--eta", cfg.eta, "gradient step size");
    pca->add_option("--iterations", cfg.iterations, "gradient iteration count (0 = auto)");

    CLI::App* solve = app.add_subcommand("solve", "linear system via block-encoded inversion");
    add_common(solve, cfg);
    solve->add_option("--path", cfg.path, "psd, general, or auto");
    solve->add_option("--planted-kappa", cfg.planted_kappa,
                      "generate a seeded system with this condition number instead of --input");
    solve->add_option("--n", cfg.n, "dimension for planted systems");
    solve->add_flag("--indefinite", cfg.indefinite, "plant an indefinite spectrum");
    solve->add_flag("--amplitude-amplification", cfg.amplitude_amplification,
                    "charge repetitions at the amplitude-amplification rate");
    solve->add_flag("--strict-polynomials", cfg.strict_polynomials,
                    "certify spectral polynomials against interpolants");

    CLI::App* sim = app.add_subcommand("simulate", "Hamiltonian evolution exp(-iHt)");
    add_common(sim, cfg);
    sim->add_option("--t", cfg.t, "evolution time");
    sim->add_option("--K", cfg.k_order, "discretization half-width / order parameter");
    sim->add_option("--discretization", cfg.discretization,
                    "direct, central, multistep, or time-dependent");
    sim->add_option("--steps", cfg.steps, "time steps (0 = choose from t and eps)");
    sim->add_option("--sequence", cfg.sequence_path,
                    "stacked Hamiltonian samples for time-dependent runs");
    sim->add_flag("--amplitude-amplification", cfg.amplitude_amplification,
                  "charge repetitions at the amplitude-amplification rate");
    sim->add_flag("--strict-polynomials", cfg.strict_polynomials,
                  "certify spectral polynomials against interpolants");

    CLI::App* bench = app.add_subcommand("bench", "cost sweeps (kappa=..., n=..., eps=...)");
    add_common(bench, cfg);
    bench->add_option("--sweep", cfg.sweep, "name=v1,v2,... (kappa, n, or eps)");
    bench->add_option("--n", cfg.n, "system dimension for kappa/eps sweeps");
    bench->add_option("--planted-kappa", cfg.planted_kappa, "condition number for n/eps sweeps");
    bench->add_flag("--indefinite", cfg.indefinite, "plant indefinite spectra");

    CLI11_PARSE(app, argc, argv);

    for (CLI::App* sub : {pca, solve, sim, bench})
        if (sub->parsed()) cfg.command = sub->get_name();

    return blockenc::run(cfg);
}
