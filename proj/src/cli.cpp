#include "blockenc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blockenc/error.hpp"
#include "blockenc/hamsim.hpp"
#include "blockenc/io.hpp"
#include "blockenc/qlsa.hpp"
#include "blockenc/qpca.hpp"
#include "blockenc/stateprep.hpp"

namespace blockenc {

namespace {

constexpr const char* kLibraryVersion = "0.1.0";

bool log_enabled() {
    const char* v = std::getenv("BLOCKENC_LOG");
    return v && *v && std::string(v) != "0";
}

void log_line(const std::string& s) {
    if (log_enabled()) std::cerr << "[blockenc] " << s << "\n";
}

nlohmann::json versions_json() {
    return nlohmann::json{{"library", kLibraryVersion}, {"encoding", 1}, {"stateprep", 1},
                          {"polytransform", 1},         {"qpca", 1},     {"qlsa", 1},
                          {"hamsim", 1},                {"cli", 1}};
}

std::string canonical_dump(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "command=" << c.command << ";input=" << c.input_path << ";sequence=" << c.sequence_path
       << ";output=" << c.output_path << ";ledger=" << c.ledger_path
       << ";ledger_report=" << c.ledger_report << ";eps=" << format_real(c.eps)
       << ";seed=" << c.seed << ";r=" << c.r << ";method=" << c.method
       << ";gap=" << format_real(c.gap) << ";eta=" << format_real(c.eta)
       << ";iterations=" << c.iterations << ";path=" << c.path
       << ";planted_kappa=" << format_real(c.planted_kappa) << ";n=" << c.n
       << ";indefinite=" << c.indefinite << ";aa=" << c.amplitude_amplification
       << ";strict=" << c.strict_polynomials << ";t=" << format_real(c.t) << ";K=" << c.k_order
       << ";discretization=" << c.discretization << ";steps=" << c.steps << ";sweep=" << c.sweep;
    return os.str();
}

nlohmann::json component(const Vector& v, bool imaginary) {
    nlohmann::json a = nlohmann::json::array();
    for (const cplx& z : v) a.push_back(imaginary ? z.imag() : z.real());
    return a;
}

void require_seed(const ExperimentConfig& cfg) {
    if (cfg.seed < 0) throw config_error("--seed is required for this command");
}

void require_eps(const ExperimentConfig& cfg) {
    if (!(cfg.eps > 0.0) || cfg.eps >= 1.0) throw config_error("--eps must lie in (0, 1)");
}

std::vector<std::string> ledger_row(const std::string& stage, const CostLedger& led, double eps) {
    return {stage, format_real(led.queries), format_real(led.depth_proxy), format_real(eps)};
}

const std::vector<std::string> kLedgerHeader = {"stage", "queries", "depth_proxy", "eps"};

Matrix real_matrix_from_csv(const std::string& path, const char* what) {
    const Matrix m = matrix_from_cells(read_csv(path));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).imag() != 0.0)
                throw config_error(std::string(what) + " entries must be real");
    return m;
}

// ---- pca -------------------------------------------------------------------

RunArtifacts run_pca(const ExperimentConfig& cfg) {
    require_seed(cfg);
    require_eps(cfg);
    if (cfg.input_path.empty()) throw config_error("--input dataset CSV is required for pca");
    if (cfg.r < 1) throw config_error("--r must be at least 1");

    const Dataset data = ingest_dataset(real_matrix_from_csv(cfg.input_path, "dataset"));
    log_line("pca: " + std::to_string(data.m) + " samples x " + std::to_string(data.n) +
             " features, method=" + cfg.method);

    RunArtifacts art;
    art.ledger_header = kLedgerHeader;
    nlohmann::json pairs = nlohmann::json::array();
    CostLedger total;
    std::vector<EigenPairEstimate> estimates;

    if (cfg.method == "power") {
        PowerConfig pc;
        pc.gap = cfg.gap;
        pc.eps = cfg.eps;
        pc.rng_seed = std::uint64_t(cfg.seed);
        std::vector<PowerStageInfo> info;
        estimates = top_r_power(data, std::size_t(cfg.r), pc, &info, true);
        nlohmann::json stages = nlohmann::json::array();
        for (const PowerStageInfo& s : info)
            stages.push_back({{"k", s.k},
                              {"gap_used", s.gap_used},
                              {"beta", s.beta},
                              {"eps_stage", s.eps_stage},
                              {"filter_degree", s.filter_degree},
                              {"stage_scale", s.stage_scale}});
        art.result["power_stages"] = stages;
    } else if (cfg.method == "gd") {
        GDConfig gc;
        gc.eta = cfg.eta;
        gc.T = cfg.iterations;
        gc.eps = cfg.eps;
        gc.rng_seed = std::uint64_t(cfg.seed);
        std::vector<GDDiagnostics> diags;
        estimates = top_r_gd(data, std::size_t(cfg.r), gc, &diags, true);
        nlohmann::json dj = nlohmann::json::array();
        for (const GDDiagnostics& d : diags)
            dj.push_back({{"iterations", d.iterations},
                          {"converged", d.converged},
                          {"final_direction_change", d.final_direction_change}});
        art.result["gd_diagnostics"] = dj;
    } else {
        throw config_error("--method must be power or gd");
    }

    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const EigenPairEstimate& e = estimates[i];
        pairs.push_back({{"value", e.value},
                         {"eps_bound", e.eps_bound},
                         {"vector_re", component(e.vector, false)},
                         {"vector_im", component(e.vector, true)}});
        art.ledger_rows.push_back(
            ledger_row("pair-" + std::to_string(i + 1), e.ledger, e.eps_bound));
        total += e.ledger;
    }
    art.ledger_rows.push_back(ledger_row("total", total, cfg.eps));

    art.result["pairs"] = pairs;
    art.result["r"] = cfg.r;
    art.result["method"] = cfg.method;
    art.result["samples"] = data.m;
    art.result["features"] = data.n;
    art.result["total_queries"] = total.queries;
    return art;
}

// ---- solve -----------------------------------------------------------------

LinearSystem load_or_plant_system(const ExperimentConfig& cfg, bool eigenbasis_uniform_b) {
    if (cfg.planted_kappa > 0.0) {
        require_seed(cfg);
        if (cfg.n < 1) throw config_error("--n must be positive");
        if (cfg.planted_kappa < 1.0) throw config_error("--planted-kappa must be at least 1");
        Rng rng(std::uint64_t(cfg.seed));
        return planted_system(std::size_t(cfg.n), cfg.planted_kappa, cfg.indefinite, rng,
                              eigenbasis_uniform_b);
    }
    if (cfg.input_path.empty())
        throw config_error("provide --input (matrix rows, then the right-hand side row) "
                           "or --planted-kappa");
    const auto cells = read_csv(cfg.input_path);
    if (cells.size() < 2)
        throw config_error("system CSV needs the matrix rows plus a final right-hand-side row");
    const std::vector<std::vector<cplx>> head(cells.begin(), cells.end() - 1);
    const Matrix a = matrix_from_cells(head);
    if (a.rows() != a.cols())
        throw config_error("system matrix must be square (is the right-hand-side row missing?)");
    const Vector b(cells.back().begin(), cells.back().end());
    return ingest_system(a, b);
}

RunArtifacts run_solve(const ExperimentConfig& cfg) {
    require_eps(cfg);
    const LinearSystem sys = load_or_plant_system(cfg, false);

    SolveOptions opts;
    opts.strict_polynomials = cfg.strict_polynomials;
    opts.amplitude_amplification = cfg.amplitude_amplification;

    std::string path = cfg.path;
    if (path == "auto") {
        const EigenDecomposition eig = hermitian_eig(sys.a);
        path = (eig.values.back() >= -1e-10) ? "psd" : "general";
    }
    if (path != "psd" && path != "general")
        throw config_error("--path must be psd, general, or auto");
    log_line("solve: n=" + std::to_string(sys.a.rows()) + " kappa=" + format_real(sys.kappa) +
             " path=" + path);

    const SolveResult res =
        (path == "psd") ? solve_psd(sys, cfg.eps, opts) : solve_general(sys, cfg.eps, opts);

    RunArtifacts art;
    art.ledger_header = kLedgerHeader;
    for (const StageRow& s : res.stages)
        art.ledger_rows.push_back(ledger_row(s.stage, CostLedger{s.queries, s.depth_proxy, {}}, s.eps));
    art.ledger_rows.push_back(ledger_row("total", res.ledger, res.eps_bound));

    art.result["path"] = (res.path == SolvePath::psd) ? "psd" : "general";
    art.result["n"] = sys.a.rows();
    art.result["kappa"] = res.kappa;
    art.result["sparsity"] = sys.sparsity;
    art.result["spectral_scale"] = res.spectral_scale;
    art.result["fidelity"] = res.fidelity;
    art.result["success_prob"] = res.success_prob;
    art.result["measured_prob"] = res.measured_prob;
    art.result["eps_bound"] = res.eps_bound;
    art.result["final_scale"] = res.final_scale;
    art.result["shift_condition"] = res.shift_condition;
    art.result["state_re"] = component(res.state, false);
    art.result["state_im"] = component(res.state, true);
    art.result["total_queries"] = res.ledger.queries;
    return art;
}

// ---- simulate ---------------------------------------------------------------

Vector first_basis_state(std::size_t n) {
    Vector v(n, cplx(0.0, 0.0));
    v[0] = cplx(1.0, 0.0);
    return v;
}

RunArtifacts run_simulate(const ExperimentConfig& cfg) {
    require_eps(cfg);
    if (cfg.t < 0.0) throw config_error("--t must be nonnegative");
    if (cfg.k_order < 1) throw config_error("--K must be at least 1");

    RunArtifacts art;
    art.ledger_header = kLedgerHeader;
    art.result["t"] = cfg.t;
    art.result["discretization"] = cfg.discretization;

    if (cfg.discretization == "direct") {
        if (cfg.input_path.empty()) throw config_error("--input Hamiltonian CSV is required");
        const Matrix h = matrix_from_cells(read_csv(cfg.input_path));
        const SimProblem p =
            make_problem(h, cfg.t, first_basis_state(h.rows()), cfg.eps, cfg.k_order);
        log_line("simulate: direct, n=" + std::to_string(h.rows()) + " t=" + format_real(cfg.t));
        DirectSimInfo info;
        const Vector state = simulate_direct(p, &info);
        for (const StageRow& s : info.stages)
            art.ledger_rows.push_back(
                ledger_row(s.stage, CostLedger{s.queries, s.depth_proxy, {}}, s.eps));
        art.ledger_rows.push_back(ledger_row("total", info.ledger, info.eps_bound));
        art.result["state_re"] = component(state, false);
        art.result["state_im"] = component(state, true);
        art.result["success_prob"] = info.prob;
        art.result["degree"] = info.degree;
        art.result["eps_bound"] = info.eps_bound;
        art.result["hamiltonian_scale"] = p.hamiltonian_scale;
        art.result["total_queries"] = info.ledger.queries;
        return art;
    }

    Discretization method;
    if (cfg.discretization == "central") method = Discretization::central;
    else if (cfg.discretization == "multistep") method = Discretization::multistep;
    else if (cfg.discretization == "time-dependent") method = Discretization::time_dependent;
    else throw config_error("--discretization must be direct, central, multistep, or time-dependent");

    SimProblem p;
    if (method == Discretization::time_dependent) {
        if (cfg.sequence_path.empty())
            throw config_error("--sequence CSV (stacked Hamiltonian samples) is required");
        if (cfg.steps < 2) throw config_error("--steps (at least 2) is required with a sequence");
        const Matrix stacked = matrix_from_cells(read_csv(cfg.sequence_path));
        const std::size_t n = stacked.cols();
        if (stacked.rows() != n * std::size_t(cfg.steps + 1))
            throw config_error("sequence must stack exactly steps+1 square blocks");
        std::vector<Matrix> hs;
        hs.reserve(std::size_t(cfg.steps) + 1);
        for (int k = 0; k <= cfg.steps; ++k) {
            Matrix hk(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) hk(i, j) = stacked(std::size_t(k) * n + i, j);
            hs.push_back(std::move(hk));
        }
        p = make_time_dependent_problem(hs, cfg.t, first_basis_state(n), cfg.eps, cfg.k_order);
    } else {
        if (cfg.input_path.empty()) throw config_error("--input Hamiltonian CSV is required");
        const Matrix h = matrix_from_cells(read_csv(cfg.input_path));
        p = make_problem(h, cfg.t, first_basis_state(h.rows()), cfg.eps, cfg.k_order);
    }

    SolveOptions opts;
    opts.strict_polynomials = cfg.strict_polynomials;
    opts.amplitude_amplification = cfg.amplitude_amplification;
    log_line("simulate: " + cfg.discretization + ", steps=" + std::to_string(cfg.steps));
    const TrajectoryResult tr =
        simulate_via_solver(p, method, cfg.steps, nullptr, nullptr, opts);

    for (const StageRow& s : tr.stages)
        art.ledger_rows.push_back(
            ledger_row(s.stage, CostLedger{s.queries, s.depth_proxy, {}}, s.eps));
    art.ledger_rows.push_back(ledger_row("total", tr.ledger, tr.eps_bound));

    nlohmann::json states_re = nlohmann::json::array();
    nlohmann::json states_im = nlohmann::json::array();
    for (const Vector& v : tr.states) {
        states_re.push_back(component(v, false));
        states_im.push_back(component(v, true));
    }
    art.result["steps"] = tr.steps;
    art.result["delta"] = tr.delta;
    art.result["kappa_system"] = tr.kappa_system;
    art.result["eps_bound"] = tr.eps_bound;
    art.result["states_re"] = states_re;
    art.result["states_im"] = states_im;
    art.result["raw_norms"] = tr.raw_norms;
    art.result["final_state_re"] = component(tr.states.back(), false);
    art.result["final_state_im"] = component(tr.states.back(), true);
    art.result["total_queries"] = tr.ledger.queries;
    return art;
}

// ---- bench ------------------------------------------------------------------

std::pair<std::string, std::vector<double>> parse_sweep(const std::string& sweep) {
    const std::size_t eq = sweep.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= sweep.size())
        throw config_error("--sweep must look like name=v1,v2,...");
    const std::string name = sweep.substr(0, eq);
    std::vector<double> values;
    std::stringstream ss(sweep.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) values.push_back(parse_cell(tok).real());
    if (values.empty()) throw config_error("--sweep needs at least one value");
    return {name, values};
}

RunArtifacts run_bench(const ExperimentConfig& cfg) {
    require_seed(cfg);
    require_eps(cfg);
    const auto [name, values] = parse_sweep(cfg.sweep);
    log_line("bench: sweeping " + name + " over " + std::to_string(values.size()) + " points");

    RunArtifacts art;
    art.bench_header = {name, "queries", "depth_proxy", "theory", "ratio"};
    // The theory column evaluates the leading law with constant 1; the ratio
    // column divides measured/theory and normalizes it to the first sweep
    // point, so a law-abiding sweep stays near 1 regardless of constants.
    double base_ratio = 0.0;
    std::vector<std::array<double, 4>> rows; // measured queries, depth, theory, ratio

    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        Rng rng(std::uint64_t(cfg.seed) + idx);
        double queries = 0.0, depth = 0.0, theory = 1.0;
        if (name == "kappa") {
            const double kappa = values[idx];
            if (kappa < 1.0) throw config_error("kappa sweep values must be at least 1");
            const LinearSystem sys =
                planted_system(std::size_t(cfg.n), kappa, cfg.indefinite, rng, true);
            const SolveResult res = solve_general(sys, cfg.eps, {});
            queries = res.ledger.queries;
            depth = res.ledger.depth_proxy;
            theory = kappa * kappa;
        } else if (name == "n") {
            const std::size_t dim = std::size_t(values[idx]);
            if (dim < 2) throw config_error("n sweep values must be at least 2");
            const double kappa = cfg.planted_kappa > 0.0 ? cfg.planted_kappa : 4.0;
            const LinearSystem sys = planted_system(dim, kappa, cfg.indefinite, rng, true);
            const BlockEncoding enc = encode_system(sys);
            queries = enc.ledger().queries;
            depth = enc.ledger().depth_proxy;
            theory = std::log2(double(dim));
        } else if (name == "eps") {
            const double eps = values[idx];
            if (!(eps > 0.0) || eps >= 1.0) throw config_error("eps sweep values must lie in (0, 1)");
            const double kappa = cfg.planted_kappa > 0.0 ? cfg.planted_kappa : 8.0;
            const LinearSystem sys =
                planted_system(std::size_t(cfg.n), kappa, cfg.indefinite, rng, true);
            const SolveResult res = solve_general(sys, eps, {});
            queries = res.ledger.queries;
            depth = res.ledger.depth_proxy;
            const double l = std::log2(1.0 / eps);
            theory = l * l;
        } else {
            throw config_error("sweep parameter must be kappa, n, or eps");
        }
        const double raw_ratio = (name == "n" ? depth : queries) / theory;
        if (idx == 0) base_ratio = raw_ratio;
        rows.push_back({queries, depth, theory, raw_ratio / base_ratio});
    }

    nlohmann::json table = nlohmann::json::array();
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        art.bench_rows.push_back({format_real(values[idx]), format_real(rows[idx][0]),
                                  format_real(rows[idx][1]), format_real(rows[idx][2]),
                                  format_real(rows[idx][3])});
        table.push_back({{name, values[idx]},
                         {"queries", rows[idx][0]},
                         {"depth_proxy", rows[idx][1]},
                         {"theory", rows[idx][2]},
                         {"ratio", rows[idx][3]}});
    }
    art.result["sweep"] = name;
    art.result["table"] = table;
    return art;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const std::size_t dot = path.rfind('.');
    const bool has_ext = dot != std::string::npos && path.find('/', dot) == std::string::npos;
    return (has_ext ? path.substr(0, dot) : path) + suffix;
}

} // namespace

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config file is not valid JSON: " + std::string(e.what()));
    }
    for (const auto& [key, val] : j.items()) {
        if (key == "input") cfg.input_path = val.get<std::string>();
        else if (key == "sequence") cfg.sequence_path = val.get<std::string>();
        else if (key == "output") cfg.output_path = val.get<std::string>();
        else if (key == "ledger") cfg.ledger_path = val.get<std::string>();
        else if (key == "ledger_report") cfg.ledger_report = val.get<bool>();
        else if (key == "eps") cfg.eps = val.get<double>();
        else if (key == "seed") cfg.seed = val.get<long long>();
        else if (key == "r") cfg.r = val.get<int>();
        else if (key == "method") cfg.method = val.get<std::string>();
        else if (key == "gap") cfg.gap = val.get<double>();
        else if (key == "eta") cfg.eta = val.get<double>();
        else if (key == "iterations") cfg.iterations = val.get<int>();
        else if (key == "path") cfg.path = val.get<std::string>();
        else if (key == "planted_kappa") cfg.planted_kappa = val.get<double>();
        else if (key == "n") cfg.n = val.get<int>();
        else if (key == "indefinite") cfg.indefinite = val.get<bool>();
        else if (key == "amplitude_amplification") cfg.amplitude_amplification = val.get<bool>();
        else if (key == "strict_polynomials") cfg.strict_polynomials = val.get<bool>();
        else if (key == "t") cfg.t = val.get<double>();
        else if (key == "K") cfg.k_order = val.get<int>();
        else if (key == "discretization") cfg.discretization = val.get<std::string>();
        else if (key == "steps") cfg.steps = val.get<int>();
        else if (key == "sweep") cfg.sweep = val.get<std::string>();
        else throw config_error("unknown config key '" + key + "'");
    }
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : canonical_dump(cfg)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string render_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

RunArtifacts execute(const ExperimentConfig& cfg) {
    RunArtifacts art;
    if (cfg.command == "pca") art = run_pca(cfg);
    else if (cfg.command == "solve") art = run_solve(cfg);
    else if (cfg.command == "simulate") art = run_simulate(cfg);
    else if (cfg.command == "bench") art = run_bench(cfg);
    else throw config_error("unknown command '" + cfg.command + "'");

    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    art.result["command"] = cfg.command;
    art.result["config_hash"] = std::string(hex);
    art.result["seed"] = cfg.seed;
    art.result["eps"] = cfg.eps;
    art.result["versions"] = versions_json();
    return art;
}

int run(const ExperimentConfig& cfg) {
    try {
        const RunArtifacts art = execute(cfg);
        {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) throw io_error("cannot open '" + cfg.output_path + "' for writing");
            out << render_json(art.result);
            if (!out) throw io_error("failed writing '" + cfg.output_path + "'");
        }
        log_line("wrote " + cfg.output_path);
        if (cfg.ledger_report && !art.ledger_rows.empty()) {
            const std::string path = cfg.ledger_path.empty()
                                         ? with_suffix(cfg.output_path, ".stages.csv")
                                         : cfg.ledger_path;
            write_csv(path, art.ledger_header, art.ledger_rows);
            log_line("wrote " + path);
        }
        if (!art.bench_rows.empty()) {
            const std::string path = with_suffix(cfg.output_path, ".sweep.csv");
            write_csv(path, art.bench_header, art.bench_rows);
            log_line("wrote " + path);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace blockenc
