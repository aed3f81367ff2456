// Command-line front end: each subcommand maps onto one or more analyses of
// qwalk::run. Settings come from an optional flat config file, overridden by flags.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwalk/config.hpp"
#include "qwalk/runner.hpp"

namespace {

struct Flag {
    const char* name;  // long flag without dashes
    const char* key;   // config key
    const char* help;
};

constexpr Flag kFlags[] = {
    {"coin", "coin", "identity | sigma_x | hadamard_analog | paper_xy | custom | random"},
    {"theta", "theta", "paper_xy theta (radians; '30deg', 'pi/4' also accepted)"},
    {"phi", "phi", "paper_xy phi"},
    {"rotations", "rotations", "custom coin, first-applied first: 'y:pi/4;x:0.3;0.6,0.8,0:10deg'"},
    {"random-rotations", "random_rotations", "number of rotations for --coin random"},
    {"init", "initial", "up | down | plus | plus_i | re0,im0,re1,im1 | bloch:alpha,beta"},
    {"position", "position", "initial walker site"},
    {"steps", "steps", "number of walk steps"},
    {"every", "stride", "record moments every N steps"},
    {"grid-size", "grid_size", "k samples for the moment integrals"},
    {"weak-grid", "weak_grid", "k samples for the weak-limit histogram"},
    {"bins", "bins", "velocity bins"},
    {"k-samples", "k_samples", "k samples for the dispersion export"},
    {"grid", "gap_grid", "gap scan points per axis"},
    {"tol", "tol", "gap closure tolerance"},
    {"output-dir", "output_dir", "output directory (default $QWALK_OUTPUT_DIR or .)"},
    {"out", "out", "output file name"},
    {"distribution", "distribution_out", "also write the final distribution (t,x,p) to this file"},
    {"gapmap", "gapmap_out", "also write the full gap map CSV"},
    {"seed", "seed", "seed for --coin random"},
    {"outputs", "outputs", "comma-separated analyses (run only)"},
};

struct Subcommand {
    const char* name;
    const char* help;
    std::vector<qwalk::Output> outputs;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time quantum walks with composite SU(2) coins"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qwalk::kVersion);

    const std::vector<Subcommand> subcommands = {
        {"simulate", "exact walk; writes the moment series (and optionally the distribution)", {qwalk::Output::moments}},
        {"moments", "exact moment series t,mean,second,variance", {qwalk::Output::moments}},
        {"dispersion", "quasi-energy band k,omega,nx,ny,nz,v_group", {qwalk::Output::dispersion}},
        {"asymptotics", "long-time moment coefficients and spreading class", {qwalk::Output::asymptotics}},
        {"weak-limit", "limiting density of x/t", {qwalk::Output::weak_limit}},
        {"gapscan", "gap closures of the R_x(phi) R_y(theta) family", {qwalk::Output::gapscan}},
        {"compare", "exact variance against the asymptotic prediction", {qwalk::Output::compare}},
        {"run", "run the analyses listed in 'outputs'", {}},
    };

    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
    std::map<std::string, CLI::App*> apps;
    for (const auto& sc : subcommands) {
        CLI::App* sub = app.add_subcommand(sc.name, sc.help);
        sub->add_option("--config", config_path, "flat key = value config file");
        for (const auto& f : kFlags) {
            options[std::string(sc.name) + "/" + f.key] =
                sub->add_option(std::string("--") + f.name, values[std::string(sc.name) + "/" + f.key], f.help);
        }
        apps[sc.name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qwalk::kExitConfig;
    }

    for (const auto& sc : subcommands) {
        if (!apps[sc.name]->parsed()) continue;
        try {
            qwalk::RunConfig cfg = qwalk::default_config();
            cfg.outputs = sc.outputs;
            if (!config_path.empty()) {
                for (const auto& e : qwalk::read_config_file(config_path)) qwalk::apply_setting(cfg, e.key, e.value, e.where);
            }
            for (const auto& f : kFlags) {
                const std::string id = std::string(sc.name) + "/" + f.key;
                if (options[id]->count() > 0) qwalk::apply_setting(cfg, f.key, values[id], std::string("--") + f.name);
            }
            if (std::string(sc.name) == "simulate" && !cfg.distribution_out.empty()) {
                cfg.outputs = {qwalk::Output::moments, qwalk::Output::distribution};
            }
            return qwalk::run(cfg, std::cout, std::cerr);
        } catch (const qwalk::InvalidInput& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return qwalk::kExitConfig;
        }
    }
    return qwalk::kExitConfig;
}
