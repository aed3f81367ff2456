#include "qwalk/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "qwalk/csv.hpp"

namespace qwalk {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::optional<double> to_double(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

template <class Int>
Int to_integer(std::string_view value, std::string_view key, const std::string& where) {
    const std::string t = trim(value);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError(where + ": '" + std::string(key) + "' expects an integer, got '" + t + "'");
    }
    return v;
}

std::string normalize_key(std::string_view key) {
    std::string k = trim(key);
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

}  // namespace

const char* to_string(Output o) {
    switch (o) {
        case Output::distribution: return "distribution";
        case Output::moments: return "moments";
        case Output::dispersion: return "dispersion";
        case Output::asymptotics: return "asymptotics";
        case Output::weak_limit: return "weak_limit";
        case Output::gapscan: return "gapscan";
        case Output::compare: return "compare";
    }
    return "?";
}

Output parse_output(std::string_view name) {
    std::string n = normalize_key(name);
    for (Output o : {Output::distribution, Output::moments, Output::dispersion, Output::asymptotics,
                     Output::weak_limit, Output::gapscan, Output::compare}) {
        if (n == to_string(o)) return o;
    }
    throw ConfigError("unknown output '" + std::string(name) + "'");
}

double parse_angle(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw ConfigError("empty angle");
    double scale = 1.0;
    auto strip_suffix = [&](std::string_view suffix) {
        if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
            s = trim(std::string_view(s).substr(0, s.size() - suffix.size()));
            return true;
        }
        return false;
    };
    if (strip_suffix("deg")) scale = kPi / 180.0;
    else strip_suffix("rad");

    if (const auto pi_pos = s.find("pi"); pi_pos != std::string::npos) {
        // [sign][coef]pi[/den]
        std::string coef = trim(std::string_view(s).substr(0, pi_pos));
        std::string rest = trim(std::string_view(s).substr(pi_pos + 2));
        double c = 1.0;
        if (coef == "-") c = -1.0;
        else if (coef == "+" || coef.empty()) c = 1.0;
        else {
            if (coef.back() == '*') coef.pop_back();
            const auto v = to_double(coef);
            if (!v) throw ConfigError("malformed angle '" + std::string(text) + "'");
            c = *v;
        }
        double den = 1.0;
        if (!rest.empty()) {
            if (rest.front() != '/') throw ConfigError("malformed angle '" + std::string(text) + "'");
            const auto v = to_double(rest.substr(1));
            if (!v || *v == 0.0) throw ConfigError("malformed angle '" + std::string(text) + "'");
            den = *v;
        }
        return scale * c * kPi / den;
    }
    const auto v = to_double(s);
    if (!v) throw ConfigError("malformed angle '" + std::string(text) + "'");
    return scale * *v;
}

RunConfig default_config() {
    RunConfig cfg;
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') cfg.output_dir = dir;
    return cfg;
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view raw_value, const std::string& where) {
    const std::string key = normalize_key(raw_key);
    const std::string value = trim(raw_value);
    auto angle = [&] {
        try {
            return parse_angle(value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": '" + key + "': " + e.what());
        }
    };
    auto positive_size = [&](std::size_t min) {
        const auto v = to_integer<std::size_t>(value, key, where);
        if (v < min) throw ConfigError(where + ": '" + key + "' must be at least " + std::to_string(min));
        return v;
    };

    if (key == "coin") {
        static const char* known[] = {"identity", "sigma_x", "hadamard_analog", "paper_xy", "custom", "random"};
        if (std::find(std::begin(known), std::end(known), value) == std::end(known)) {
            throw ConfigError(where + ": unknown coin '" + value + "'");
        }
        cfg.coin = value;
    } else if (key == "theta") {
        cfg.theta = angle();
    } else if (key == "phi") {
        cfg.phi = angle();
    } else if (key == "rotations") {
        cfg.rotations = value;
    } else if (key == "random_rotations") {
        cfg.random_rotations = positive_size(1);
    } else if (key == "initial" || key == "init") {
        cfg.initial = value;
    } else if (key == "position") {
        cfg.position = to_integer<std::int64_t>(value, key, where);
    } else if (key == "steps") {
        cfg.steps = to_integer<std::int64_t>(value, key, where);
        if (cfg.steps < 0) throw ConfigError(where + ": 'steps' must be non-negative");
    } else if (key == "stride" || key == "every") {
        cfg.stride = to_integer<std::int64_t>(value, key, where);
        if (cfg.stride < 1) throw ConfigError(where + ": 'stride' must be positive");
    } else if (key == "outputs") {
        cfg.outputs.clear();
        for (const auto& name : split(value, ',')) {
            try {
                cfg.outputs.push_back(parse_output(name));
            } catch (const ConfigError& e) {
                throw ConfigError(where + ": " + e.what());
            }
        }
    } else if (key == "grid_size") {
        cfg.grid_size = positive_size(64);
    } else if (key == "weak_grid") {
        cfg.weak_grid = positive_size(64);
    } else if (key == "bins") {
        cfg.bins = positive_size(32);
    } else if (key == "k_samples") {
        cfg.k_samples = positive_size(2);
    } else if (key == "gap_grid" || key == "grid") {
        cfg.gap_grid = positive_size(181);
    } else if (key == "tol") {
        const auto v = to_double(value);
        if (!v || *v <= 0.0 || *v > 1e-6) throw ConfigError(where + ": 'tol' must be in (0, 1e-6]");
        cfg.tol = *v;
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "distribution_out" || key == "distribution") {
        cfg.distribution_out = value;
    } else if (key == "gapmap_out" || key == "gapmap") {
        cfg.gapmap_out = value;
    } else if (key == "seed") {
        cfg.seed = to_integer<std::uint64_t>(value, key, where);
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::vector<ConfigEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) throw ConfigError(where + ": empty key");
        entries.push_back({key, trim(std::string_view(t).substr(eq + 1)), where});
    }
    return entries;
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> m;
    m["coin"] = coin;
    m["theta"] = io::format_double(theta);
    m["phi"] = io::format_double(phi);
    m["rotations"] = rotations;
    m["random_rotations"] = std::to_string(random_rotations);
    m["initial"] = initial;
    m["position"] = std::to_string(position);
    m["steps"] = std::to_string(steps);
    m["stride"] = std::to_string(stride);
    std::string outs;
    for (std::size_t i = 0; i < outputs.size(); ++i) outs += (i ? "," : "") + std::string(to_string(outputs[i]));
    m["outputs"] = outs;
    m["grid_size"] = std::to_string(grid_size);
    m["weak_grid"] = std::to_string(weak_grid);
    m["bins"] = std::to_string(bins);
    m["k_samples"] = std::to_string(k_samples);
    m["gap_grid"] = std::to_string(gap_grid);
    m["tol"] = io::format_double(tol);
    m["output_dir"] = output_dir.string();
    m["out"] = out;
    m["distribution_out"] = distribution_out;
    m["gapmap_out"] = gapmap_out;
    m["seed"] = std::to_string(seed);
    return m;
}

namespace {

UnitAxis parse_axis(const std::string& text) {
    if (text == "x") return UnitAxis::x();
    if (text == "y") return UnitAxis::y();
    if (text == "z") return UnitAxis::z();
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw ConfigError("axis must be x, y, z or 'nx,ny,nz', got '" + text + "'");
    double v[3];
    for (int i = 0; i < 3; ++i) {
        const auto d = to_double(parts[static_cast<std::size_t>(i)]);
        if (!d) throw ConfigError("malformed axis component '" + parts[static_cast<std::size_t>(i)] + "'");
        v[i] = *d;
    }
    try {
        return UnitAxis::from(v[0], v[1], v[2]);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("rotations: ") + e.what());
    }
}

CoinSpec random_coin(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<CoinRotation> rots;
    for (std::size_t i = 0; i < count; ++i) {
        double x = normal(rng), y = normal(rng), z = normal(rng);
        const double n = std::sqrt(x * x + y * y + z * z);
        rots.emplace_back(UnitAxis::from(x / n, y / n, z / n), angle(rng));
    }
    return CoinSpec(std::move(rots));
}

}  // namespace

CoinSpec build_coin(const RunConfig& cfg) {
    if (cfg.coin == "custom") {
        if (cfg.rotations.empty()) throw ConfigError("coin 'custom' requires 'rotations'");
        std::vector<CoinRotation> rots;
        for (const auto& item : split(cfg.rotations, ';')) {
            const auto colon = item.rfind(':');
            if (colon == std::string::npos) throw ConfigError("rotation '" + item + "' must be 'axis:angle'");
            rots.emplace_back(parse_axis(trim(std::string_view(item).substr(0, colon))),
                              parse_angle(std::string_view(item).substr(colon + 1)));
        }
        return CoinSpec(std::move(rots));
    }
    if (cfg.coin == "random") return random_coin(cfg.random_rotations, cfg.seed);
    return preset(cfg.coin, cfg.theta, cfg.phi);
}

InitialCondition build_initial(const RunConfig& cfg) {
    const std::string& s = cfg.initial;
    const double r = 1.0 / std::sqrt(2.0);
    if (s == "up") return {cfg.position, {1.0, 0.0}};
    if (s == "down") return {cfg.position, {0.0, 1.0}};
    if (s == "plus") return {cfg.position, {r, r}};
    if (s == "plus_i") return {cfg.position, {r, cplx(0.0, r)}};
    if (s.rfind("bloch:", 0) == 0) {
        const auto parts = split(std::string_view(s).substr(6), ',');
        if (parts.size() != 2) throw ConfigError("initial 'bloch:alpha,beta' needs two angles");
        return InitialCondition::from_bloch(parse_angle(parts[0]), parse_angle(parts[1]), cfg.position);
    }
    const auto parts = split(s, ',');
    if (parts.size() != 4) {
        throw ConfigError("initial must be up, down, plus, plus_i, bloch:alpha,beta or re0,im0,re1,im1; got '" + s + "'");
    }
    double v[4];
    for (int i = 0; i < 4; ++i) {
        const auto d = to_double(parts[static_cast<std::size_t>(i)]);
        if (!d) throw ConfigError("malformed initial component '" + parts[static_cast<std::size_t>(i)] + "'");
        v[i] = *d;
    }
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (n == 0.0) throw ConfigError("initial coin state is zero");
    return {cfg.position, {cplx(v[0] / n, v[1] / n), cplx(v[2] / n, v[3] / n)}};
}

}  // namespace qwalk
