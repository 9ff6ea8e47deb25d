#include "qdnls/runner.hpp"

#include "qdnls/config.hpp"
#include "qdnls/dynamics.hpp"
#include "qdnls/errors.hpp"
#include "qdnls/estimates.hpp"
#include "qdnls/norms.hpp"
#include "qdnls/resonance.hpp"
#include "qdnls/result_table.hpp"
#include "qdnls/rng.hpp"
#include "qdnls/snapshot.hpp"
#include "qdnls/trilinear.hpp"
#include "qdnls/variation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qdnls {

namespace {

struct RunContext {
    Config cfg;
    std::filesystem::path out_dir;
    std::uint64_t seed = 1;
    std::ostream* log = nullptr;
    std::vector<std::pair<std::string, std::string>> outputs;  // file name, content hash
    std::vector<std::string> notes;
};

Provenance provenance_of(const RunContext& ctx) {
    return Provenance{ctx.cfg.hash(), ctx.seed};
}

void save_bytes(RunContext& ctx, const std::string& name, const std::string& bytes) {
    const auto path = ctx.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw ConfigError("failed while writing " + path.string());
    ctx.outputs.emplace_back(name, fnv1a_hex(bytes));
}

void save_table(RunContext& ctx, const std::string& name, const ResultTable& table) {
    save_bytes(ctx, name, table.to_csv());
}

void save_plot(RunContext& ctx, const std::string& name, const PlotSeries& series) {
    std::ostringstream out;
    emit_plot_data(series, out);
    save_bytes(ctx, name, out.str());
    for (const auto& warning : series.warnings) {
        *ctx.log << name << ": " << warning << "\n";
    }
}

std::string timestamp_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// The manifest is the only output that carries a timestamp; the CSV and plot
// files must be byte-identical across reruns of the same config + seed.
void write_manifest(const RunContext& ctx, const std::string& experiment, int exit_code) {
    std::ostringstream m;
    m << "qdnls " << kToolVersion << "\n";
    m << "experiment: " << experiment << "\n";
    m << "config: " << ctx.cfg.origin() << "\n";
    m << "config_hash: " << ctx.cfg.hash() << "\n";
    m << "seed: " << ctx.seed << "\n";
    m << "timestamp: " << timestamp_utc() << "\n";
    m << "exit: " << exit_code << "\n";
    for (const auto& note : ctx.notes) m << "note: " << note << "\n";
    for (const auto& [name, hash] : ctx.outputs) {
        m << "output: " << name << " fnv1a=" << hash << "\n";
    }
    m << "config_echo:\n";
    std::istringstream lines(ctx.cfg.text());
    for (std::string line; std::getline(lines, line);) m << "  " << line << "\n";
    std::ofstream out(ctx.out_dir / "manifest.txt", std::ios::binary);
    if (!out) throw ConfigError("cannot write manifest in " + ctx.out_dir.string());
    out << m.str();
}

std::string mode_string(const Mode& mode, int d) {
    std::string s = "(";
    for (int axis = 0; axis < d; ++axis) {
        if (axis) s += ",";
        s += std::to_string(mode[axis]);
    }
    return s + ")";
}

std::string witness_string(const std::array<Mode, 3>& modes, int d) {
    return "(" + mode_string(modes[0], d) + "," + mode_string(modes[1], d) + "," +
           mode_string(modes[2], d) + ")";
}

int checked_int(const Config& cfg, const std::string& key, std::int64_t lo, std::int64_t hi) {
    const std::int64_t value = cfg.get_int(key);
    if (value < lo || value > hi) {
        throw ConfigError(key + " = " + std::to_string(value) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(value);
}

int checked_int(const Config& cfg, const std::string& key, std::int64_t fallback,
                std::int64_t lo, std::int64_t hi) {
    if (!cfg.has(key)) return static_cast<int>(fallback);
    return checked_int(cfg, key, lo, hi);
}

FieldTriple initial_state(const FrequencyLattice& lattice, const std::string& kind,
                          double amplitude, std::uint64_t seed) {
    FieldTriple state = FieldTriple::zero(lattice);
    if (kind == "zero") return state;
    if (kind != "gaussian") {
        throw ConfigError("data must be 'zero' or 'gaussian', got '" + kind + "'");
    }
    Rng rng = Rng::for_trial(seed, "data", 0);
    SpectralField* fields[3] = {&state.u, &state.v, &state.w};
    for (SpectralField* f : fields) {
        for (int c = 0; c < f->components(); ++c) {
            for (std::size_t idx = 0; idx < lattice.mode_count(); ++idx) {
                f->at(c, idx) = rng.complex_normal();
            }
        }
    }
    const double size = hs_norm(state, critical_index(lattice.dimension()));
    if (size > 0.0) {
        const Complex factor(amplitude / size, 0.0);
        state.u = scaled(state.u, factor);
        state.v = scaled(state.v, factor);
        state.w = scaled(state.w, factor);
    }
    return state;
}

int run_simulate(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys({"d", "K", "alpha", "beta", "gamma", "T", "dt", "data", "amplitude",
                            "seed", "store_stride", "blow_up_factor", "out"});
    const int d = checked_int(cfg, "d", 1, kMaxDimension);
    const int K = checked_int(cfg, "K", 1, 4096);
    const CoefficientTriple coeffs =
        classify(cfg.get_rational("alpha"), cfg.get_rational("beta"), cfg.get_rational("gamma"));
    const double T = cfg.get_double("T");
    const double dt = cfg.get_double("dt");
    StepOptions options;
    options.store_stride = checked_int(cfg, "store_stride", 1, 1, 1'000'000);
    options.blow_up_factor = cfg.get_double("blow_up_factor", 1e6);

    const FrequencyLattice lattice(d, K);
    const FieldTriple state = initial_state(lattice, cfg.get_string("data", "gaussian"),
                                            cfg.get_double("amplitude", 1.0), ctx.seed);

    struct Record {
        int step;
        double t, mass_value, energy_value;
    };
    std::vector<Record> records;
    options.observer = [&](int step, double t, const FieldTriple& st) {
        if (step % options.store_stride == 0) {
            records.push_back({step, t, mass(st), energy(st, coeffs)});
        }
    };
    const TrajectoryTriple traj = step_evolve(state, coeffs, T, dt, options);

    std::vector<double> residuals(records.size(), 0.0);
    if (traj.u.samples() >= 5) residuals = pde_residual_series(traj, coeffs);
    if (residuals.size() != records.size()) {
        throw std::logic_error("stored samples and observer records disagree");
    }

    ResultTable table({"step", "t", "mass", "energy", "residual"}, provenance_of(ctx));
    double mass_drift = 0.0, energy_drift = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Record& r = records[i];
        table.add_row({static_cast<std::int64_t>(r.step), r.t, r.mass_value, r.energy_value,
                       residuals[i]});
        mass_drift = std::max(mass_drift, std::abs(r.mass_value - records.front().mass_value));
        energy_drift =
            std::max(energy_drift, std::abs(r.energy_value - records.front().energy_value));
    }
    save_table(ctx, "conservation.csv", table);
    ctx.notes.push_back("mass_drift=" + format_cell(Cell(mass_drift)));
    ctx.notes.push_back("energy_drift=" + format_cell(Cell(energy_drift)));
    out << "simulate: " << records.size() << " rows, mass drift " << mass_drift
        << ", energy drift " << energy_drift << "\n";
    return 0;
}

int run_picard(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys({"d", "K", "alpha", "beta", "gamma", "T", "tolerance", "max_iter",
                            "samples", "data", "amplitude", "seed", "snapshot", "out"});
    const int d = checked_int(cfg, "d", 1, kMaxDimension);
    const int K = checked_int(cfg, "K", 1, 4096);
    const CoefficientTriple coeffs =
        classify(cfg.get_rational("alpha"), cfg.get_rational("beta"), cfg.get_rational("gamma"));
    const double T = cfg.get_double("T");
    const double tol = cfg.get_double("tolerance");
    const int max_iter = checked_int(cfg, "max_iter", 25, 1, 10'000);
    const int samples = checked_int(cfg, "samples", 257, 2, 1 << 20);

    const FrequencyLattice lattice(d, K);
    const FieldTriple state = initial_state(lattice, cfg.get_string("data", "gaussian"),
                                            cfg.get_double("amplitude", 1.0), ctx.seed);

    PicardReport report;
    TrajectoryTriple traj;
    bool have_solution = false;
    try {
        auto solved = picard_solve(state, coeffs, T, tol, max_iter,
                                   static_cast<std::size_t>(samples));
        traj = std::move(solved.first);
        report = std::move(solved.second);
        have_solution = true;
    } catch (const PicardDivergenceError& e) {
        report = e.report;
        *ctx.log << "picard: " << e.what() << "\n";
    }

    ResultTable table({"iterate", "difference", "ratio"}, provenance_of(ctx));
    for (std::size_t k = 0; k < report.differences.size(); ++k) {
        Cell ratio{std::string{}};
        if (k >= 1 && k - 1 < report.ratios.size()) ratio = Cell(report.ratios[k - 1]);
        table.add_row({static_cast<std::int64_t>(k + 1), report.differences[k], ratio});
    }
    save_table(ctx, "picard.csv", table);
    ctx.notes.push_back(std::string("picard_converged=") + (report.converged ? "1" : "0"));
    ctx.notes.push_back("picard_iterates=" + std::to_string(report.iterates));
    ctx.notes.push_back("picard_final_residual=" + format_cell(Cell(report.final_residual)));

    if (report.converged && have_solution && cfg.get_bool("snapshot", false)) {
        const SpectralField* finals[3] = {&traj.u.fields.back(), &traj.v.fields.back(),
                                          &traj.w.fields.back()};
        const char* names[3] = {"u.qds", "v.qds", "w.qds"};
        for (int i = 0; i < 3; ++i) {
            std::ostringstream bytes;
            write_snapshot(bytes, *finals[i]);
            save_bytes(ctx, names[i], bytes.str());
        }
    }

    if (!report.converged) {
        *ctx.log << "picard: no convergence after " << report.iterates
                 << " iterates (tolerance " << tol << ")\n";
        return 3;
    }
    out << "picard: converged in " << report.iterates << " iterates, final residual "
        << report.final_residual << "\n";
    return 0;
}

int run_resonance_scan(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys(
        {"sigma1", "sigma2", "sigma3", "d", "k_list", "alpha", "beta", "gamma", "seed", "out"});
    const int d = checked_int(cfg, "d", 1, kMaxDimension);
    const std::array<Rational, 3> sigmas{cfg.get_rational("sigma1"), cfg.get_rational("sigma2"),
                                         cfg.get_rational("sigma3")};
    const std::vector<std::int64_t> cutoffs = cfg.get_int_list("k_list");

    ResultTable table({"sigma1", "sigma2", "sigma3", "K", "d", "min_ratio_num", "min_ratio_den",
                       "witness"},
                      provenance_of(ctx));
    for (const std::int64_t K : cutoffs) {
        if (K < 1 || K > 4096) throw ConfigError("k_list entries must lie in [1, 4096]");
        const ScanResult scan = scan_min_ratio(sigmas, static_cast<int>(K), d);
        const std::string witness = witness_string(scan.witness, d);
        table.add_row({to_string(sigmas[0]), to_string(sigmas[1]), to_string(sigmas[2]),
                       static_cast<std::int64_t>(K), static_cast<std::int64_t>(d),
                       scan.min_ratio.num(), scan.min_ratio.den(), witness});
        out << "K=" << K << ": min |h| / max|xi|^2 = " << to_string(scan.min_ratio) << " at "
            << witness << " (" << scan.triples_checked << " triples)\n";
    }
    save_table(ctx, "scan.csv", table);

    const bool any_coeff = cfg.has("alpha") || cfg.has("beta") || cfg.has("gamma");
    if (any_coeff) {
        if (!(cfg.has("alpha") && cfg.has("beta") && cfg.has("gamma"))) {
            throw ConfigError("alpha, beta, gamma must be given together");
        }
        const CoefficientTriple c = classify(cfg.get_rational("alpha"), cfg.get_rational("beta"),
                                             cfg.get_rational("gamma"));
        ResultTable cls({"alpha", "beta", "gamma", "hh_nonresonant", "hl_nonresonant", "m1", "m2",
                         "m3", "sigma_common", "period"},
                        provenance_of(ctx));
        cls.add_row({to_string(c.alpha), to_string(c.beta), to_string(c.gamma),
                     static_cast<std::int64_t>(c.hh_nonresonant ? 1 : 0),
                     static_cast<std::int64_t>(c.hl_nonresonant ? 1 : 0), c.m[0], c.m[1], c.m[2],
                     to_string(c.sigma_common), c.period});
        save_table(ctx, "classification.csv", cls);
        out << "classification: hh_nonresonant=" << (c.hh_nonresonant ? 1 : 0)
            << " hl_nonresonant=" << (c.hl_nonresonant ? 1 : 0) << " period=" << c.period << "\n";
    }
    return 0;
}

// Merges equally-shaped per-parameter tables into one CSV and extracts the
// final running sup of each sweep for the log-log summary plot.
ResultTable merge_tables(const std::vector<ResultTable>& tables, const Provenance& provenance) {
    ResultTable merged(tables.front().schema(), provenance);
    for (const ResultTable& t : tables) {
        for (std::size_t r = 0; r < t.row_count(); ++r) merged.add_row(t.row(r));
    }
    return merged;
}

int run_strichartz(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys({"d", "N_list", "p", "sigma", "trials", "seed", "out"});
    const int d = checked_int(cfg, "d", 1, kMaxDimension);
    const double p = cfg.get_double("p");
    const Rational sigma = cfg.get_rational("sigma");
    const int trials = checked_int(cfg, "trials", 1, 1'000'000);
    const std::vector<std::int64_t> sizes = cfg.get_int_list("N_list");

    std::vector<ResultTable> pieces;
    ResultTable summary({"N", "sup_ratio"}, provenance_of(ctx));
    for (const std::int64_t N : sizes) {
        ResultTable t = strichartz_ratio(N, p, sigma, d, trials, ctx.seed);
        const double sup = t.numeric_at(t.row_count() - 1, "running_sup");
        summary.add_row({N, sup});
        out << "N=" << N << ": sup ratio " << sup << "\n";
        pieces.push_back(std::move(t));
    }
    save_table(ctx, "strichartz.csv", merge_tables(pieces, provenance_of(ctx)));

    const PlotSeries series = plot_series(summary, "N", "sup_ratio", PlotTransform::log_log);
    save_plot(ctx, "strichartz_sup.dat", series);
    if (series.points.size() >= 2) {
        const double slope = fit_slope(series.points);
        ctx.notes.push_back("log_log_slope=" + format_cell(Cell(slope)));
        out << "log-log slope " << slope << "\n";
    }
    return 0;
}

int run_bilinear(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys({"d", "H_list", "L", "case", "sigma1", "sigma2", "trials", "seed", "out"});
    const int d = checked_int(cfg, "d", 1, kMaxDimension);
    const std::int64_t L = cfg.get_int("L");
    const std::string case_name = cfg.get_string("case");
    BilinearCase kind;
    if (case_name == "HL") {
        kind = BilinearCase::HL;
    } else if (case_name == "HHL") {
        kind = BilinearCase::HHL;
    } else {
        throw ConfigError("case must be 'HL' or 'HHL', got '" + case_name + "'");
    }
    const Rational sigma1 = cfg.get_rational("sigma1");
    const Rational sigma2 = cfg.get_rational("sigma2");
    const int trials = checked_int(cfg, "trials", 1, 1'000'000);
    const std::vector<std::int64_t> highs = cfg.get_int_list("H_list");

    std::vector<ResultTable> pieces;
    ResultTable summary({"H", "bound_base", "sup_ratio"}, provenance_of(ctx));
    for (const std::int64_t H : highs) {
        ResultTable t = bilinear_ratio(H, L, kind, sigma1, sigma2, d, trials, ctx.seed);
        const double bound = t.numeric_at(0, "bound_base");
        const double sup = t.numeric_at(t.row_count() - 1, "running_sup");
        summary.add_row({H, bound, sup});
        out << "H=" << H << ": bound base " << bound << ", sup ratio " << sup << "\n";
        pieces.push_back(std::move(t));
    }
    save_table(ctx, "bilinear.csv", merge_tables(pieces, provenance_of(ctx)));
    save_plot(ctx, "bilinear_sup.dat",
              plot_series(summary, "bound_base", "sup_ratio", PlotTransform::log_log));
    return 0;
}

int run_trilinear(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys({"d", "N1", "N2", "N3", "sigma1", "sigma2", "sigma3", "T", "c_split",
                            "trials", "seed", "time_samples", "resonant_demo", "out"});
    const int d = checked_int(cfg, "d", 1, kMaxDimension);
    const std::array<DyadicIndex, 3> shells{cfg.get_int("N1"), cfg.get_int("N2"),
                                            cfg.get_int("N3")};
    const std::array<Rational, 3> sigmas{cfg.get_rational("sigma1"), cfg.get_rational("sigma2"),
                                         cfg.get_rational("sigma3")};
    for (const Rational& s : sigmas) {
        if (s.is_zero()) throw ConfigError("sigma coefficients must be nonzero");
    }

    const Rational common = rational_gcd(rational_gcd(sigmas[0], sigmas[1]), sigmas[2]);
    const double period = 2.0 * M_PI / common.to_double();
    const double T = cfg.get_double("T", period / 2.0);

    double c_split = 0.0;
    if (cfg.has("c_split")) {
        c_split = cfg.get_double("c_split");
    } else {
        const DyadicIndex n_max = std::max({shells[0], shells[1], shells[2]});
        const ScanResult scan = scan_min_ratio(sigmas, static_cast<int>(n_max), d);
        if (scan.min_ratio.is_zero()) {
            throw ConfigError(
                "resonance scan minimum is zero for this coefficient triple; "
                "a modulation split needs an explicit c_split");
        }
        c_split = 3.0 / scan.min_ratio.to_double();
        ctx.notes.push_back("c_split_derived=" + format_cell(Cell(c_split)));
        out << "derived c_split = 3 / (" << to_string(scan.min_ratio) << ") = " << c_split
            << "\n";
    }

    TrilinearOptions options;
    options.time_samples = checked_int(cfg, "time_samples", 1024, 8, 1 << 20);
    options.resonant_demo = cfg.get_bool("resonant_demo", false);
    const int trials = checked_int(cfg, "trials", 1, 1'000'000);

    const ResultTable table =
        trilinear_J(shells, sigmas, d, T, c_split, trials, ctx.seed, options);
    save_table(ctx, "trilinear.csv", table);

    const TrilinearCertificate cert =
        certify_split(sigmas, shells, d, c_split, options.time_samples);
    ctx.notes.push_back("requested_M=" + std::to_string(cert.requested_M));
    ctx.notes.push_back("effective_M=" + std::to_string(cert.effective_M));
    ctx.notes.push_back(std::string("split_certified=") + (cert.certified ? "1" : "0"));

    std::map<std::string, double> sups;
    const std::size_t quantity_col = table.column_index("quantity");
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const auto& name = std::get<std::string>(table.row(r)[quantity_col]);
        sups[name] = table.numeric_at(r, "running_sup");
    }
    out << "split M=" << cert.effective_M << (cert.certified ? " (certified)" : " (heuristic)")
        << "\n";
    for (const auto& [name, sup] : sups) out << name << ": sup " << sup << "\n";
    return 0;
}

int run_vnorm_selftest(RunContext& ctx, std::ostream& out) {
    const Config& cfg = ctx.cfg;
    cfg.require_known_keys({"paths", "length", "seed", "out"});
    const int paths = checked_int(cfg, "paths", 100, 1, 1'000'000);
    const int length = checked_int(cfg, "length", 8, 2, 12);

    ResultTable table({"check", "index", "value", "reference", "pass"}, provenance_of(ctx));
    bool all_pass = true;
    auto record = [&](const std::string& check, std::int64_t index, double value,
                      double reference) {
        const double scale = std::max({1.0, std::abs(value), std::abs(reference)});
        const bool ok = std::abs(value - reference) <= 1e-12 * scale;
        all_pass = all_pass && ok;
        table.add_row({check, index, value, reference, static_cast<std::int64_t>(ok ? 1 : 0)});
    };

    for (int i = 0; i < paths; ++i) {
        Rng rng = Rng::for_trial(ctx.seed, "vnorm", static_cast<std::uint64_t>(i));
        std::vector<Complex> path(static_cast<std::size_t>(length));
        for (Complex& z : path) z = rng.complex_normal();
        const bool append_zero = (i % 2) == 1;
        record("v2_dynamic_vs_exhaustive", i, vp_variation_norm(path, 2.0, append_zero),
               vp_variation_norm_exhaustive(path, 2.0, append_zero));
    }

    {
        const int d = 2, K = 4;
        const FrequencyLattice lattice(d, K);
        SpectralField datum(lattice, 1);
        Rng rng = Rng::for_trial(ctx.seed, "vnorm-free", 0);
        for (std::size_t idx = 0; idx < lattice.mode_count(); ++idx) {
            datum.at(0, idx) = rng.complex_normal();
        }
        const double sigma = 1.0;
        const Trajectory traj = free_trajectory(datum, sigma, M_PI / 32.0, 64);
        record("free_path_y0_equals_datum_l2", 0, ys_norm(traj, sigma, 0.0), hs_norm(datum, 0.0));
    }

    save_table(ctx, "vnorm.csv", table);
    if (!all_pass) {
        *ctx.log << "vnorm selftest found mismatches; see vnorm.csv\n";
        return 1;
    }
    out << "vnorm selftest: " << table.row_count() << " checks passed\n";
    return 0;
}

using Handler = int (*)(RunContext&, std::ostream&);

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"simulate", run_simulate},
        {"picard", run_picard},
        {"resonance-scan", run_resonance_scan},
        {"strichartz", run_strichartz},
        {"bilinear", run_bilinear},
        {"trilinear", run_trilinear},
        {"vnorm-selftest", run_vnorm_selftest},
    };
    return table;
}

}  // namespace

int run_experiment(const std::string& experiment, const std::string& config_path,
                   const std::string& out_dir, std::optional<std::uint64_t> seed_override,
                   std::ostream& out, std::ostream& err) {
    const auto it = handlers().find(experiment);
    if (it == handlers().end()) {
        err << "unknown experiment '" << experiment << "'; expected one of:";
        for (const auto& [name, fn] : handlers()) err << " " << name;
        err << "\n";
        return 2;
    }

    RunContext ctx;
    ctx.log = &err;
    try {
        Config cfg = Config::from_file(config_path);
        if (seed_override) cfg.override_value("seed", std::to_string(*seed_override));
        ctx.cfg = std::move(cfg);
        ctx.seed = ctx.cfg.get_uint("seed", 1);
        const std::string resolved =
            out_dir.empty() ? ctx.cfg.get_string("out", ".") : out_dir;
        ctx.out_dir = std::filesystem::path(resolved);
        std::filesystem::create_directories(ctx.out_dir);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    }

    int code = 0;
    try {
        code = it->second(ctx, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        code = 2;
    } catch (const CostGuardError& e) {
        err << "cost guard: " << e.what() << "\n";
        code = 5;
    } catch (const BlowUpError& e) {
        err << "blow-up guard: " << e.what() << "\n";
        code = 4;
    } catch (const NonConvergenceError& e) {
        err << "non-convergence: " << e.what() << "\n";
        code = 3;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << "\n";
        code = 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        code = 1;
    }

    if (code != 2) {
        try {
            write_manifest(ctx, experiment, code);
        } catch (const std::exception& e) {
            err << "manifest error: " << e.what() << "\n";
            if (code == 0) code = 1;
        }
    }
    return code;
}

}  // namespace qdnls
