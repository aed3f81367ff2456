#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "json.hpp"
#include "qwalk/asymptotics.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/gap.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::io {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

void write_distribution_csv(std::ostream& os, std::int64_t t, const Distribution& dist);
void write_moment_series_csv(std::ostream& os, const MomentSeries& series);
void write_dispersion_csv(std::ostream& os, const DispersionBand& band);
void write_velocity_density_csv(std::ostream& os, const VelocityDensity& density);
void write_gap_map_csv(std::ostream& os, const GapMap& map);

nlohmann::json to_json(const CoinSpec& coin);
nlohmann::json to_json(const InitialCondition& init);
nlohmann::json to_json(const DriftSignCalibration& cal);
nlohmann::json to_json(const AsymptoticMoments& m);
/// Closure list plus the point counts under both parameter-space readings.
nlohmann::json to_json(const ClosureScan& scan);

}  // namespace qwalk::io
