#include "qwalk/runner.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "qwalk/csv.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/gap.hpp"
#include "qwalk/momentum.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

const char* default_name(Output o) {
    switch (o) {
        case Output::distribution: return "distribution.csv";
        case Output::moments: return "moments.csv";
        case Output::dispersion: return "dispersion.csv";
        case Output::asymptotics: return "asymptotics.json";
        case Output::weak_limit: return "weak_limit.csv";
        case Output::gapscan: return "closures.json";
        case Output::compare: return "compare.csv";
    }
    return "out";
}

std::filesystem::path resolve(const RunConfig& cfg, const std::string& name) {
    const std::filesystem::path p(name);
    return p.is_absolute() ? p : cfg.output_dir / p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

json manifest(const RunConfig& cfg, Output what, const std::filesystem::path& data_file, json extra) {
    json config = json::object();
    for (const auto& [k, v] : cfg.echo()) config[k] = v;
    json m = {{"schema", "qwalk.manifest/1"},
              {"tool", "qwalk"},
              {"version", kVersion},
              {"analysis", to_string(what)},
              {"data_file", data_file.filename().string()},
              {"config", config},
              {"drift_sign_calibration", io::to_json(drift_sign_calibration())}};
    if (what != Output::gapscan) {
        m["coin"] = io::to_json(build_coin(cfg));
        m["initial"] = io::to_json(build_initial(cfg));
    }
    if (!extra.is_null()) m["result"] = std::move(extra);
    return m;
}

void emit(const RunConfig& cfg, Output what, const std::filesystem::path& path, const std::string& data, json extra) {
    write_file(path, data);
    std::filesystem::path mpath = path;
    mpath += ".manifest.json";
    write_file(mpath, manifest(cfg, what, path, std::move(extra)).dump(2) + "\n");
}

std::string run_one(const RunConfig& cfg, Output what, const std::string& name) {
    const std::filesystem::path path = resolve(cfg, name);
    std::ostringstream data;
    std::ostringstream log;
    json extra;
    switch (what) {
        case Output::distribution: {
            const WalkerState s = evolve(build_initial(cfg), build_coin(cfg), cfg.steps);
            io::write_distribution_csv(data, s.t(), distribution(s));
            log << "distribution at t=" << s.t() << " over " << s.sites() << " sites";
            break;
        }
        case Output::moments: {
            const MomentSeries series = moment_series(build_initial(cfg), build_coin(cfg), cfg.steps, cfg.stride);
            io::write_moment_series_csv(data, series);
            log << "moment series with " << series.size() << " rows";
            break;
        }
        case Output::dispersion: {
            io::write_dispersion_csv(data, dispersion(build_coin(cfg), cfg.k_samples));
            log << "dispersion on " << cfg.k_samples << " k samples";
            break;
        }
        case Output::asymptotics: {
            const AsymptoticMoments m = moment_integrals(build_coin(cfg), build_initial(cfg), cfg.grid_size);
            const Spreading cls = classify_spreading(m);
            json body = io::to_json(m);
            body["classification"] = to_string(cls);
            body["drift_sign_calibration"] = io::to_json(drift_sign_calibration());
            data << body.dump(2) << "\n";
            log << "mean_rate " << io::format_double(m.mean_rate) << " second_coeff "
                << io::format_double(m.second_coeff) << " variance_coeff " << io::format_double(m.variance_coeff)
                << " classification " << to_string(cls);
            break;
        }
        case Output::weak_limit: {
            const VelocityDensity d = weak_limit_density(build_coin(cfg), build_initial(cfg), cfg.weak_grid, cfg.bins);
            io::write_velocity_density_csv(data, d);
            extra = {{"sigma_x_family", d.sigma_x_family}, {"v_max", d.v_max}, {"total_mass", d.total_mass()}};
            log << "weak-limit density, " << cfg.bins << " bins" << (d.sigma_x_family ? " (sigma_x family)" : "");
            break;
        }
        case Output::gapscan: {
            const CoinFamily family = paper_xy_family();
            const ClosureScan scan = enumerate_closures(family, cfg.gap_grid, cfg.tol);
            json body = io::to_json(scan);
            body["no_boundary"] = assert_no_boundary(scan.closures, family, cfg.tol);
            data << body.dump(2) << "\n";
            if (!cfg.gapmap_out.empty()) {
                std::ostringstream map_csv;
                io::write_gap_map_csv(map_csv, gap_map(family, cfg.gap_grid));
                emit(cfg, Output::gapscan, resolve(cfg, cfg.gapmap_out), map_csv.str(), json());
            }
            log << scan.square_points.size() << " closure points (" << scan.torus_points.size()
                << " modulo 2pi), no_boundary=" << (body["no_boundary"].get<bool>() ? "true" : "false");
            break;
        }
        case Output::compare: {
            const CompareReport rep = compare(cfg);
            data << "t,var_exact,var_predicted,abs_err,rel_err\n";
            for (const auto& r : rep.rows) {
                data << r.t << ',' << io::format_double(r.var_exact) << ',' << io::format_double(r.var_predicted) << ','
                     << io::format_double(r.abs_err) << ',' << io::format_double(r.rel_err) << '\n';
            }
            extra = {{"asymptotics", io::to_json(rep.asymptotics)},
                     {"loglog_slope", rep.loglog_slope ? json(*rep.loglog_slope) : json(nullptr)}};
            log << rep.rows.size() << " comparison rows, log-log slope "
                << (rep.loglog_slope ? io::format_double(*rep.loglog_slope) : std::string("undefined"));
            break;
        }
    }
    emit(cfg, what, path, data.str(), std::move(extra));
    return std::string(to_string(what)) + ": " + log.str() + " -> " + path.string();
}

}  // namespace

CompareReport compare(const RunConfig& cfg) {
    const CoinSpec coin = build_coin(cfg);
    const InitialCondition init = build_initial(cfg);
    CompareReport rep;
    rep.asymptotics = moment_integrals(coin, init, cfg.grid_size);
    const MomentSeries series = moment_series(init, coin, cfg.steps, cfg.stride);
    std::vector<double> lt, lv;
    for (std::size_t i = 0; i < series.size(); ++i) {
        CompareRow r;
        r.t = series.times[i];
        // Variance is translation invariant, so the start position drops out.
        r.var_exact = series.variance[i];
        const double t = static_cast<double>(r.t);
        r.var_predicted = rep.asymptotics.variance_coeff * t * t;
        r.abs_err = std::abs(r.var_exact - r.var_predicted);
        if (r.var_exact > 0.0) r.rel_err = r.abs_err / r.var_exact;
        else r.rel_err = r.abs_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        rep.rows.push_back(r);
        if (10 * r.t >= cfg.steps && r.var_exact > 1e-12) {
            lt.push_back(std::log(t));
            lv.push_back(std::log(r.var_exact));
        }
    }
    if (lt.size() >= 2) rep.loglog_slope = ls_slope(lt, lv);
    return rep;
}

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    if (cfg.outputs.empty()) {
        err << "error: no outputs requested\n";
        return kExitConfig;
    }
    try {
        // Validate coin and initial state up front so config errors are reported before any work.
        if (cfg.outputs.size() != 1 || cfg.outputs.front() != Output::gapscan) {
            (void)build_coin(cfg);
            (void)build_initial(cfg);
        }
        std::error_code ec;
        std::filesystem::create_directories(cfg.output_dir, ec);
        if (ec) throw IoError("cannot create output directory '" + cfg.output_dir.string() + "': " + ec.message());
        (void)drift_sign_calibration();

        std::vector<std::future<std::string>> jobs;
        for (std::size_t i = 0; i < cfg.outputs.size(); ++i) {
            const Output o = cfg.outputs[i];
            std::string name = default_name(o);
            if (o == Output::distribution && !cfg.distribution_out.empty()) name = cfg.distribution_out;
            else if (i == 0 && !cfg.out.empty()) name = cfg.out;
            jobs.push_back(std::async(std::launch::async, run_one, std::cref(cfg), o, name));
        }
        int status = kExitOk;
        for (auto& job : jobs) {
            try {
                log << job.get() << "\n";
            } catch (const ConfigError& e) {
                err << "config error: " << e.what() << "\n";
                if (status == kExitOk) status = kExitConfig;
            } catch (const InvalidInput& e) {
                err << "invalid input: " << e.what() << "\n";
                if (status == kExitOk) status = kExitConfig;
            } catch (const DegeneratePointError& e) {
                err << "numerical-domain error: " << e.what() << "\n";
                if (status == kExitOk) status = kExitNumerical;
            } catch (const NumericalDomainError& e) {
                err << "numerical-domain error: " << e.what() << "\n";
                if (status == kExitOk) status = kExitNumerical;
            } catch (const IoError& e) {
                err << "i/o error: " << e.what() << "\n";
                if (status == kExitOk) status = kExitIo;
            }
        }
        return status;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace qwalk
