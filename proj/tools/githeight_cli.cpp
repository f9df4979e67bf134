// Command-line front end: stability verdicts, GIT height intervals, basis
// decompositions and duality checks for rational point configurations.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "githeight/json_io.hpp"

namespace {

using namespace githeight;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // I/O, parse or internal error
constexpr int kExitUnstable = 2; // unstable configuration

struct CommonFlags {
    long mc_samples = 1000000;
    unsigned long long seed = 0;
    double tol = 1e-8;
    int depth = 3;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--mc-samples", f.mc_samples, "Monte Carlo samples")->capture_default_str();
    cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
    cmd->add_option("--tol", f.tol, "convergence tolerance")->capture_default_str();
    cmd->add_option("--depth", f.depth, "lattice search depth")->capture_default_str();
    cmd->add_flag("--json", f.json, "emit JSON");
}

HeightOptions merge_options(const ConfigFile& file, const CommonFlags& f, const CLI::App* cmd) {
    HeightOptions o = file.options;
    if (cmd->count("--mc-samples")) o.mc_samples = f.mc_samples;
    if (cmd->count("--seed")) o.seed = f.seed;
    if (cmd->count("--tol")) o.tol = f.tol;
    if (cmd->count("--depth")) o.search_depth = f.depth;
    return o;
}

void print_height_table(const HeightEstimate& est) {
    std::cout << "place   [lower, upper]                    certificate\n";
    for (const auto& pl : est.places) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-6s  [%.10g, %.10g]", pl.place_name().c_str(),
                      pl.lower, pl.upper);
        std::cout << buf << "  " << to_string(pl.certificate);
        if (!pl.note.empty()) std::cout << " (" << pl.note << ")";
        std::cout << "\n";
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "total   [%.10g, %.10g]", est.lower, est.upper);
    std::cout << buf << "\n";
    std::cout << "section: " << est.section_note << "\n";
    std::cout << "seed: " << est.options.seed << ", mc_samples: " << est.options.mc_samples
              << ", tol: " << est.options.tol << ", depth: " << est.options.search_depth
              << "\n";
}

int cmd_stability(const std::string& path, bool json) {
    const ConfigFile file = load_config_file(path);
    const StabilityVerdict verdict = check_stability(file.config);
    if (json) {
        std::cout << verdict_to_json(verdict).dump(2) << "\n";
    } else {
        std::cout << to_string(verdict.status) << "\n";
        if (verdict.witness) std::cout << "witness: " << verdict.witness->describe() << "\n";
    }
    return verdict.semistable() ? kExitOk : kExitUnstable;
}

int cmd_height(const std::string& path, const CommonFlags& f, const CLI::App* cmd) {
    const ConfigFile file = load_config_file(path);
    const HeightOptions options = merge_options(file, f, cmd);
    try {
        const HeightEstimate est = global_height(file.config, options);
        if (f.json) std::cout << height_to_json(est).dump(2) << "\n";
        else print_height_table(est);
    } catch (const UnstableError& e) {
        std::cerr << "unstable: " << e.witness.describe() << "\n";
        return kExitUnstable;
    }
    return kExitOk;
}

int cmd_decompose(const std::string& path, bool json) {
    const ConfigFile file = load_config_file(path);
    try {
        const BasisDecomposition dec = decompose(file.config);
        if (json) {
            std::cout << decomposition_to_json(dec).dump(2) << "\n";
        } else {
            for (const auto& t : dec.terms) {
                std::cout << rat_string(t.coeff) << " * {";
                for (std::size_t i = 0; i < t.basis.size(); ++i) {
                    const auto& v = dec.dictionary[t.basis[i]];
                    std::cout << (i ? ", " : "") << "(";
                    for (std::size_t j = 0; j < v.size(); ++j)
                        std::cout << (j ? "," : "") << rat_string(v[j]);
                    std::cout << ")";
                }
                std::cout << "}\n";
            }
        }
    } catch (const UnstableError& e) {
        std::cerr << "unstable: " << e.witness.describe() << "\n";
        return kExitUnstable;
    }
    return kExitOk;
}

int cmd_dual(const std::string& path, const CommonFlags& f, const CLI::App* cmd) {
    const ConfigFile file = load_config_file(path);
    const HeightOptions options = merge_options(file, f, cmd);
    try {
        const ChowForm primal = chow_form_of_points(file.config);
        const ChowForm dual = dual_chow_form(primal);
        const HeightEstimate est = hyperplane_height(file.config, options);
        if (f.json) {
            Json j;
            j["dual_form"] = {{"blocks", dual.blocks},
                              {"degree_per_block", dual.degree},
                              {"variables_per_block", dual.nvars},
                              {"monomials", dual.coeffs.size()}};
            j["height"] = height_to_json(est);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "dual arrangement form: " << dual.blocks << " blocks, multidegree ("
                      << dual.degree << ",...), " << dual.coeffs.size() << " monomials\n";
            print_height_table(est);
        }
    } catch (const UnstableError& e) {
        std::cerr << "unstable: " << e.witness.describe() << "\n";
        return kExitUnstable;
    }
    return kExitOk;
}

int cmd_dual_constant(int n, const CommonFlags& f) {
    const DualConstant dc = dual_constant(n, f.mc_samples, f.seed);
    if (f.json) {
        std::cout << dual_constant_to_json(dc).dump(2) << "\n";
    } else {
        std::cout << "C'(" << n << ") = " << rat_string(dc.closed_form) << " = "
                  << to_double(dc.closed_form) << "\n";
        std::cout << "monte carlo: " << dc.mc_check.mean << " +- " << dc.mc_check.stderr_
                  << " (" << dc.mc_check.samples << " samples, seed " << dc.mc_check.seed
                  << ")\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, const CommonFlags& f) {
    FamilySpec family = FamilySpec::default_family();
    HeightOptions options;
    options.seed = f.seed;
    options.tol = f.tol;
    options.search_depth = f.depth;
    long dc_samples = 200000;
    int pairs = 6;
    if (suite == "extended") {
        family.max_ambient = 3;
        family.max_points = 6;
        family.count = 120;
        dc_samples = 1000000;
        pairs = 12;
    } else if (suite != "default") {
        std::cerr << "unknown suite '" << suite << "' (expected default|extended)\n";
        return kExitError;
    }

    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    const auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        all = all && pass;
    };

    const SuiteReport rep = positivity_suite(family, options);
    for (const auto& c : rep.checks) {
        std::string detail = std::to_string(c.checked) + " checked";
        if (!c.pass()) detail += ", " + std::to_string(c.failed) + " failed";
        report(c.name, c.pass(), detail);
        for (const auto& ce : c.counterexamples) std::cout << "      counterexample: " << ce << "\n";
    }

    // duality constant against its Monte Carlo oracle
    for (int n = 2; n <= (suite == "extended" ? 4 : 3); ++n) {
        const DualConstant dc = dual_constant(n, dc_samples, options.seed);
        const double gap = std::abs(dc.mc_check.mean - to_double(dc.closed_form));
        report("dual-constant-N" + std::to_string(n), gap <= 3.0 * dc.mc_check.stderr_,
               "closed " + rat_string(dc.closed_form) + ", mc gap " + std::to_string(gap));
    }

    // degree-weighted subadditivity over random semistable pairs
    {
        std::vector<Configuration> semis;
        for (const auto& c : generate_family(family))
            if (check_stability(c).semistable()) semis.push_back(c);
        int done = 0, ok = 0;
        for (std::size_t i = 0; i + 1 < semis.size() && done < pairs; i += 2) {
            if (semis[i].ambient() != semis[i + 1].ambient()) continue;
            const SubadditivityReport sr = subadditivity_check(semis[i], semis[i + 1], options);
            ok += sr.pass ? 1 : 0;
            ++done;
        }
        report("subadditivity-pairs", done > 0 && ok == done,
               std::to_string(ok) + "/" + std::to_string(done));
    }

    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    std::cout << (all ? "ALL PASS" : "FAILURES") << " in " << secs << " s\n";
    return all ? kExitOk : kExitError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GIT heights of point configurations and hyperplane arrangements"};
    app.require_subcommand(1);

    std::string path;
    std::string suite = "default";
    int dual_n = 2;
    CommonFlags flags;

    auto* stab = app.add_subcommand("stability", "decide Chow (semi)stability");
    stab->add_option("config", path, "configuration JSON file")->required();
    stab->add_flag("--json", flags.json, "emit JSON");

    auto* height = app.add_subcommand("height", "global GIT height interval");
    height->add_option("config", path, "configuration JSON file")->required();
    add_common(height, flags);

    auto* dec = app.add_subcommand("decompose", "basis decomposition of a semistable config");
    dec->add_option("config", path, "configuration JSON file")->required();
    dec->add_flag("--json", flags.json, "emit JSON");

    auto* dual = app.add_subcommand("dual", "dual hyperplane arrangement and shifted height");
    dual->add_option("config", path, "configuration JSON file")->required();
    add_common(dual, flags);

    auto* dualc = app.add_subcommand("dual-constant", "duality height shift C'(N)");
    dualc->add_option("N", dual_n, "ambient dimension")->required();
    add_common(dualc, flags);

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--suite", suite, "default|extended")->capture_default_str();
    add_common(verify, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (stab->parsed()) return cmd_stability(path, flags.json);
        if (height->parsed()) return cmd_height(path, flags, height);
        if (dec->parsed()) return cmd_decompose(path, flags.json);
        if (dual->parsed()) return cmd_dual(path, flags, dual);
        if (dualc->parsed()) return cmd_dual_constant(dual_n, flags);
        if (verify->parsed()) return cmd_verify(suite, flags);
    } catch (const githeight::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const githeight::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
