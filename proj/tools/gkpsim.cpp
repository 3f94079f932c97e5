// gkpsim: command-line front end for codeword generation, intrinsic-error
// reports, coupling sweeps, homodyne-outcome sampling and feasibility checks.
//
// Exit codes: 0 success, 1 numerical failure (diagnostic JSON on stderr),
// 2 usage error.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkp/error_analysis.hpp"
#include "gkp/io.hpp"
#include "gkp/kernels.hpp"
#include "gkp/lithography.hpp"
#include "gkp/physical_model.hpp"
#include "gkp/spectral.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;

// Options not given on the command line fall back to entries of the --config
// JSON file, keyed by the long flag name without dashes prefix.
struct ConfigBinder {
    struct Entry {
        CLI::Option* opt;
        std::string key;
        std::function<void(const json&)> set;
    };
    std::vector<Entry> entries;

    static std::string key_of(const std::string& flag) {
        std::string longest;
        std::size_t start = 0;
        while (start <= flag.size()) {
            std::size_t comma = flag.find(',', start);
            std::string piece = flag.substr(start, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - start);
            while (!piece.empty() && piece.front() == '-') piece.erase(piece.begin());
            if (piece.size() > longest.size()) longest = piece;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return longest;
    }

    template <typename T>
    CLI::Option* bind(CLI::App* cmd, const std::string& flag, T& var,
                      const std::string& desc) {
        auto* opt = cmd->add_option(flag, var, desc);
        entries.push_back({opt, key_of(flag), [&var](const json& v) { var = v.get<T>(); }});
        return opt;
    }

    void apply(const json& cfg) {
        for (auto& e : entries)
            if (e.opt->count() == 0 && cfg.contains(e.key)) e.set(cfg.at(e.key));
    }
};

struct CommonOpts {
    std::string config_path;
    std::string output_dir = ".";
    std::string convention = "plain";  // or "angular"
    std::string atom;
    std::string species_file;
    double mass = 0.0, lambda0 = 0.0, d12 = 0.0;
    double alpha = -1.0;
    int d = 0;
    double g0 = 0.0;
    double w0 = 20e-6;
};

gkp::phys::CouplingConvention convention_of(const std::string& name) {
    if (name == "plain") return gkp::phys::CouplingConvention::plain_per_second;
    if (name == "angular") return gkp::phys::CouplingConvention::angular;
    throw std::domain_error("unknown coupling convention: " + name);
}

gkp::phys::AtomSpecies resolve_species(const CommonOpts& c) {
    if (!c.species_file.empty()) return gkp::phys::load_species(c.species_file);
    if (c.mass > 0.0 || c.lambda0 > 0.0 || c.d12 > 0.0) {
        if (!(c.mass > 0.0 && c.lambda0 > 0.0 && c.d12 > 0.0))
            throw std::domain_error("custom species needs --mass, --lambda0 and --d12");
        return {c.mass, c.lambda0, c.d12, "custom"};
    }
    const std::string name = c.atom.empty() ? "cs" : c.atom;
    auto p = gkp::phys::preset(name);
    if (!p) throw std::domain_error("unknown atom preset: " + name);
    return *p;
}

// Resolve (alpha, d): either given directly or derived from (atom, g0, w0).
struct Resolved {
    double alpha;
    int d;
    bool physical;
    gkp::phys::PhysicalSetup setup;  // valid when physical
};

Resolved resolve_mode(const CommonOpts& c) {
    const bool direct = c.alpha >= 0.0 || c.d > 0;
    const bool physical = c.g0 > 0.0;
    if (direct == physical)
        throw std::domain_error(
            "choose exactly one input mode: (--alpha, --d) or (--g0 [--atom --w0])");
    Resolved r{};
    if (direct) {
        if (!(c.alpha >= 0.0) || c.d <= 0)
            throw std::domain_error("direct mode needs both --alpha >= 0 and --d > 0");
        r.alpha = c.alpha;
        r.d = c.d;
        r.physical = false;
    } else {
        const auto species = resolve_species(c);
        const double g0 =
            gkp::phys::to_internal_coupling(c.g0, convention_of(c.convention));
        r.setup = gkp::phys::derive_setup(species, c.w0, g0);
        r.alpha = r.setup.alpha;
        r.d = r.setup.half_wave_count;
        r.physical = true;
    }
    return r;
}

// Output-location flags are skipped so that reruns writing to different
// places stay byte-identical.
std::string join_args(int argc, char** argv) {
    static const std::set<std::string> skip{"--output-dir", "--out", "--config"};
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (skip.count(argv[i])) {
            ++i;  // swallow the flag's value too
            continue;
        }
        if (!s.empty()) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string out_path(const CommonOpts& c, const std::string& name) {
    return (std::filesystem::path(c.output_dir) / name).string();
}

void add_common(ConfigBinder& bind, CLI::App* cmd, CommonOpts& c, bool species_opts) {
    cmd->add_option("--config", c.config_path, "JSON config merged under flags");
    cmd->add_option("--output-dir", c.output_dir, "output directory")
        ->envname("GKP_OUTPUT_DIR");
    bind.bind(cmd, "--convention", c.convention,
              "coupling input convention: plain (1/s) or angular (rad/s)");
    if (species_opts) {
        bind.bind(cmd, "--atom", c.atom, "atom preset name (cs)");
        bind.bind(cmd, "--species-file", c.species_file,
                  "JSON species file (mass, lambda0, d12, label)");
        bind.bind(cmd, "--mass", c.mass, "atom mass [kg]");
        bind.bind(cmd, "--lambda0", c.lambda0, "transition wavelength [m]");
        bind.bind(cmd, "--d12", c.d12, "transition dipole moment [C m]");
    }
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open config file: " + path);
    json j;
    in >> j;
    if (!j.is_object()) throw std::domain_error("config file must hold a JSON object");
    return j;
}

int dispatch(int argc, char** argv) {
    using std::numbers::pi;
    CLI::App app{"approximate-codeword generation and intrinsic-error analysis"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    ConfigBinder bind;
    CommonOpts common;
    double x0 = 0.0;
    std::size_t padding = 8;
    std::string prefix = "codeword";
    int n_max = 50;
    std::string report_out = "errors_report.json";
    double g0_min = 1e6, g0_max = 1e9;
    int points = 60;
    std::string sweep_out = "sweep.csv", summary_out = "sweep_summary.json";
    std::size_t n_samples = 1000;
    std::uint64_t seed = 0;
    std::string samples_out = "samples.csv";
    std::string feas_out;

    auto* gen = app.add_subcommand("generate",
                                   "construct a codeword, export wavefunction, "
                                   "spectrum and generation record");
    add_common(bind, gen, common, true);
    bind.bind(gen, "--alpha", common.alpha, "coherent amplitude (direct mode)");
    bind.bind(gen, "--d", common.d, "half-wave count (direct mode)");
    bind.bind(gen, "--g0", common.g0, "coupling (physical mode)");
    bind.bind(gen, "--w0", common.w0, "cavity waist [m]");
    bind.bind(gen, "--x0", x0, "homodyne outcome (default 0)");
    bind.bind(gen, "--padding", padding, "spectral zero-padding factor (power of two)");
    bind.bind(gen, "--prefix", prefix, "output file prefix");

    auto* errors = app.add_subcommand("errors", "intrinsic error probability report");
    add_common(bind, errors, common, true);
    bind.bind(errors, "--alpha", common.alpha, "coherent amplitude (direct mode)");
    bind.bind(errors, "--d", common.d, "half-wave count (direct mode)");
    bind.bind(errors, "--g0", common.g0, "coupling (physical mode)");
    bind.bind(errors, "--w0", common.w0, "cavity waist [m]");
    bind.bind(errors, "--n-max", n_max, "momentum region count");
    bind.bind(errors, "--out", report_out, "report JSON filename");

    auto* sweep = app.add_subcommand("sweep", "error probabilities across a g0 range");
    add_common(bind, sweep, common, true);
    bind.bind(sweep, "--w0", common.w0, "cavity waist [m]");
    bind.bind(sweep, "--g0-min", g0_min, "lower end of the g0 range");
    bind.bind(sweep, "--g0-max", g0_max, "upper end of the g0 range");
    bind.bind(sweep, "--points", points, "number of log-spaced points");
    bind.bind(sweep, "--n-max", n_max, "momentum region count");
    bind.bind(sweep, "--out", sweep_out, "sweep CSV filename");
    bind.bind(sweep, "--summary", summary_out, "summary JSON filename");

    auto* sample = app.add_subcommand("sample", "draw homodyne outcomes");
    add_common(bind, sample, common, false);
    bind.bind(sample, "--alpha", common.alpha, "coherent amplitude");
    bind.bind(sample, "--n", n_samples, "number of draws");
    bind.bind(sample, "--seed", seed, "RNG seed");
    bind.bind(sample, "--out", samples_out, "samples CSV filename");

    auto* feas = app.add_subcommand("feasibility", "timing and geometry constraints");
    add_common(bind, feas, common, true);
    bind.bind(feas, "--g0", common.g0, "coupling");
    bind.bind(feas, "--w0", common.w0, "cavity waist [m]");
    bind.bind(feas, "--out", feas_out, "optional report JSON filename");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    bind.apply(load_config(common.config_path));

    const std::vector<std::string> provenance{std::string("gkpsim ") + kVersion,
                                              "args: " + join_args(argc, argv)};

    if (gen->parsed()) {
        const auto mode = resolve_mode(common);
        const auto g = gkp::lith::conditional_wavefunction(mode.alpha, mode.d, x0);
        const auto spectrum = gkp::spec::momentum_wavefunction(g.wf, padding);
        gkp::io::write_wavefunction_csv(out_path(common, prefix + "_wavefunction.csv"),
                                        g.wf, provenance);
        gkp::io::write_spectrum_csv(out_path(common, prefix + "_spectrum.csv"),
                                    spectrum, provenance);
        gkp::io::write_json(out_path(common, prefix + "_record.json"),
                            gkp::io::record_json(g.record), provenance);
        std::cout << "generated alpha=" << mode.alpha << " d=" << mode.d
                  << " x0=" << x0 << " grid_points=" << g.record.grid_points
                  << " [" << gkp::kern::active_name() << "]\n";
        return 0;
    }
    if (errors->parsed()) {
        const auto mode = resolve_mode(common);
        gkp::err::ReportOptions opts;
        opts.n_max = n_max;
        const auto rep = gkp::err::evaluate_report(mode.alpha, mode.d, opts);
        auto j = gkp::io::report_json(rep);
        j["alpha"] = mode.alpha;
        j["d"] = mode.d;
        gkp::io::write_json(out_path(common, report_out), j, provenance);
        std::cout << "Px=" << gkp::io::format_float(rep.px)
                  << " Pp+=" << gkp::io::format_float(rep.pp_plus)
                  << " Pp-=" << gkp::io::format_float(rep.pp_minus)
                  << " P+=" << gkp::io::format_float(rep.plus_bound)
                  << " P-=" << gkp::io::format_float(rep.minus_bound)
                  << " Pmax=" << gkp::io::format_float(rep.p_max) << "\n";
        return 0;
    }
    if (sweep->parsed()) {
        const auto species = resolve_species(common);
        const auto conv = convention_of(common.convention);
        gkp::err::ReportOptions opts;
        opts.n_max = n_max;
        const auto rows = gkp::err::sweep_g0(
            species, common.w0, gkp::phys::to_internal_coupling(g0_min, conv),
            gkp::phys::to_internal_coupling(g0_max, conv), points, opts);
        gkp::io::write_sweep_csv(out_path(common, sweep_out), rows, provenance);
        json summary;
        try {
            const auto m = gkp::err::find_minimum(rows);
            summary = {{"g0_star", m.g0_star},
                       {"Pmax_star", m.p_max_star},
                       {"index", m.index},
                       {"bracketed", m.bracketed}};
        } catch (const std::domain_error& e) {
            summary = {{"error", e.what()}};
        }
        gkp::io::write_json(out_path(common, summary_out), summary, provenance);
        std::cout << summary.dump() << "\n";
        return 0;
    }
    if (sample->parsed()) {
        if (!(common.alpha >= 0.0)) throw std::domain_error("sample needs --alpha >= 0");
        const auto draws = gkp::lith::sample_outcomes(common.alpha, seed, n_samples);
        gkp::io::write_outcomes_csv(out_path(common, samples_out), draws, provenance);
        double mean = 0.0;
        for (double v : draws) mean += v;
        if (!draws.empty()) mean /= static_cast<double>(draws.size());
        std::cout << "n=" << draws.size() << " mean=" << gkp::io::format_float(mean)
                  << "\n";
        return 0;
    }
    if (feas->parsed()) {
        const auto species = resolve_species(common);
        if (!(common.g0 > 0.0)) throw std::domain_error("feasibility needs --g0 > 0");
        const double g0 =
            gkp::phys::to_internal_coupling(common.g0, convention_of(common.convention));
        json j;
        try {
            const auto setup = gkp::phys::derive_setup(species, common.w0, g0);
            const auto f = gkp::phys::check_feasibility(setup);
            j = gkp::io::feasibility_json(setup, f);
            j["feasible_geometry"] = true;
        } catch (const std::domain_error& e) {
            j = {{"species", species.label}, {"g0", g0}, {"w0", common.w0},
                 {"feasible_geometry", false}, {"error", e.what()}};
        }
        std::cout << j.dump(2) << "\n";
        if (!feas_out.empty())
            gkp::io::write_json(out_path(common, feas_out), j, provenance);
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const std::domain_error& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "usage"}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "numerical"}}.dump()
                  << "\n";
        return 1;
    }
}
