#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "QWALK_OUTPUT_DIR";

/// Bad configuration; the message names the offending file line or option.
class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

enum class Output { distribution, moments, dispersion, asymptotics, weak_limit, gapscan, compare };

const char* to_string(Output o);
Output parse_output(std::string_view name);

struct RunConfig {
    std::string coin = "hadamard_analog";  // preset, "custom" or "random"
    double theta = 0.0;
    double phi = 0.0;
    std::string rotations;        // custom coin, e.g. "y:pi/4;x:30deg;0.6,0.8,0:1.2"
    std::size_t random_rotations = 3;
    std::string initial = "up";   // up | down | plus | plus_i | re0,im0,re1,im1 | bloch:alpha,beta
    std::int64_t position = 0;
    std::int64_t steps = 100;
    std::int64_t stride = 1;
    std::vector<Output> outputs;
    std::size_t grid_size = 4096;
    std::size_t weak_grid = 1 << 18;
    std::size_t bins = 64;
    std::size_t k_samples = 512;
    std::size_t gap_grid = 721;
    double tol = 1e-8;
    std::filesystem::path output_dir = ".";
    std::string out;               // file name of the first output; derived from the analysis when empty
    std::string distribution_out;  // t,x,p file name for the distribution output
    std::string gapmap_out;        // gapscan: optional theta,phi,gap_zero,gap_pi file
    std::uint64_t seed = 0;

    /// Ordered key/value echo of every setting, used in manifests.
    std::map<std::string, std::string> echo() const;
};

/// RunConfig with output_dir taken from $QWALK_OUTPUT_DIR when set.
RunConfig default_config();

/// Applies one key=value setting. `where` prefixes error messages (e.g. "run.cfg:4").
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where);

struct ConfigEntry {
    std::string key;
    std::string value;
    std::string where;
};

/// Flat "key = value" file; '#' starts a comment; blank lines ignored.
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);

/// Radians by default. Accepts "0.5", "30deg", "1.2rad", "pi", "-pi/2", "3pi/4", "0.25pi".
double parse_angle(std::string_view text);

CoinSpec build_coin(const RunConfig& cfg);
InitialCondition build_initial(const RunConfig& cfg);

}  // namespace qwalk
