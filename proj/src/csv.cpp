#include "qwalk/csv.hpp"

#include <cstdio>

namespace qwalk::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_distribution_csv(std::ostream& os, std::int64_t t, const Distribution& dist) {
    os << "t,x,p\n";
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        os << t << ',' << dist.first + static_cast<std::int64_t>(i) << ',' << format_double(dist.p[i]) << '\n';
    }
}

void write_moment_series_csv(std::ostream& os, const MomentSeries& series) {
    os << "t,mean,second,variance\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << series.times[i] << ',' << format_double(series.mean[i]) << ',' << format_double(series.second[i]) << ','
           << format_double(series.variance[i]) << '\n';
    }
}

void write_dispersion_csv(std::ostream& os, const DispersionBand& band) {
    os << "k,omega,nx,ny,nz,v_group\n";
    for (const auto& p : band.points) {
        os << format_double(p.k) << ',' << format_double(p.omega);
        if (p.bloch) {
            os << ',' << format_double((*p.bloch)[0]) << ',' << format_double((*p.bloch)[1]) << ','
               << format_double((*p.bloch)[2]) << ',' << format_double(*p.group_velocity);
        } else {
            os << ",,,,";
        }
        os << '\n';
    }
}

void write_velocity_density_csv(std::ostream& os, const VelocityDensity& density) {
    os << "v,density\n";
    for (std::size_t b = 0; b < density.density.size(); ++b) {
        os << format_double(density.v_grid[b]) << ',' << format_double(density.density[b]) << '\n';
    }
}

void write_gap_map_csv(std::ostream& os, const GapMap& map) {
    os << "theta,phi,gap_zero,gap_pi\n";
    const std::size_t n = map.phi_grid.size();
    for (std::size_t i = 0; i < map.theta_grid.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            os << format_double(map.theta_grid[i]) << ',' << format_double(map.phi_grid[j]) << ','
               << format_double(map.min_gap_zero[i * n + j]) << ',' << format_double(map.min_gap_pi[i * n + j])
               << '\n';
        }
    }
}

json to_json(const CoinSpec& coin) {
    json rotations = json::array();
    for (const auto& r : coin.rotations()) {
        rotations.push_back({{"axis", {r.axis().nx(), r.axis().ny(), r.axis().nz()}}, {"angle_rad", r.angle()}});
    }
    json matrix = json::array();
    for (const auto& z : coin.matrix().e) matrix.push_back({z.real(), z.imag()});
    return {{"order", "first-applied first"}, {"rotations", rotations}, {"matrix_row_major", matrix}};
}

json to_json(const InitialCondition& init) {
    return {{"position", init.position},
            {"coin_state",
             {{init.coin_state[0].real(), init.coin_state[0].imag()},
              {init.coin_state[1].real(), init.coin_state[1].imag()}}}};
}

json to_json(const DriftSignCalibration& cal) {
    return {{"sign", cal.sign},
            {"reference", "identity coin, coin state |0>, walker at 0"},
            {"steps", cal.steps},
            {"simulated_mean", cal.simulated_mean},
            {"unsigned_prediction", cal.unsigned_prediction}};
}

json to_json(const AsymptoticMoments& m) {
    return {{"mean_rate", m.mean_rate},
            {"second_coeff", m.second_coeff},
            {"variance_coeff", m.variance_coeff},
            {"grid_size", m.grid_size},
            {"degenerate_samples", m.degenerate_samples},
            {"completeness_error", m.completeness_error},
            {"drift_sign", m.drift_sign}};
}

json to_json(const ClosureScan& scan) {
    json closures = json::array();
    for (const auto& c : scan.closures) {
        closures.push_back({{"theta", c.theta}, {"phi", c.phi}, {"k_star", c.k_star}, {"band", to_string(c.band)}});
    }
    json square = json::array();
    for (const auto& p : scan.square_points) square.push_back({{"theta", p.theta}, {"phi", p.phi}});
    json torus = json::array();
    for (const auto& p : scan.torus_points) torus.push_back({{"theta", p.theta}, {"phi", p.phi}});
    return {{"grid", scan.grid},
            {"tol", scan.tol},
            {"closures", closures},
            {"points", square},
            {"counts",
             {{"points_on_closed_square", scan.square_points.size()},
              {"point_band_pairs", scan.closures.size()},
              {"points_modulo_2pi", scan.torus_points.size()}}},
            {"torus_points", torus},
            {"diagnostics", scan.diagnostics}};
}

}  // namespace qwalk::io
