#include "qwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/momentum.hpp"

namespace qwalk {

namespace {

void require_normalized(const InitialCondition& init) {
    const double n = std::norm(init.coin_state[0]) + std::norm(init.coin_state[1]);
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
        throw InvalidInput("initial coin state is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
}

double sigma_z_expectation(const Spinor& v) { return std::norm(v[0]) - std::norm(v[1]); }

double overlap_sq(const Spinor& a, const Spinor& b) {
    return std::norm(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
}

struct Integrand {
    double first = 0.0;   // sum_j |c_kj|^2 <sz>_j
    double second = 0.0;  // sum_j |c_kj|^2 <sz>_j^2
    double weight = 0.0;  // sum_j |c_kj|^2
};

Integrand integrand_at(const CoinSpec& coin, const Spinor& phi0, double k) {
    const Eigensystem es = eigensystem(coin, k);
    const double cp = overlap_sq(es.plus, phi0);
    const double cm = overlap_sq(es.minus, phi0);
    const double sp = sigma_z_expectation(es.plus);
    const double sm = sigma_z_expectation(es.minus);
    return {cp * sp + cm * sm, cp * sp * sp + cm * sm * sm, cp + cm};
}

struct RawIntegrals {
    double first = 0.0;
    double second = 0.0;
    std::size_t degenerate = 0;
    double completeness_error = 0.0;
};

RawIntegrals integrate(const CoinSpec& coin, const InitialCondition& init, std::size_t grid_size) {
    const double h = 2.0 * kPi / static_cast<double>(grid_size);
    std::vector<double> first(grid_size), second(grid_size);
    RawIntegrals out;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double k = -kPi + h * static_cast<double>(j);
        Integrand f;
        if (std::sin(quasi_energy(coin, k)) <= kDegenerateSin) {
            ++out.degenerate;
            const Integrand lo = integrand_at(coin, init.coin_state, k - h / 10.0);
            const Integrand hi = integrand_at(coin, init.coin_state, k + h / 10.0);
            f = {0.5 * (lo.first + hi.first), 0.5 * (lo.second + hi.second), 0.5 * (lo.weight + hi.weight)};
        } else {
            f = integrand_at(coin, init.coin_state, k);
        }
        first[j] = f.first;
        second[j] = f.second;
        out.completeness_error = std::max(out.completeness_error, std::abs(f.weight - 1.0));
    }
    const double n = static_cast<double>(grid_size);
    out.first = pairwise_sum(first) / n;
    out.second = pairwise_sum(second) / n;
    return out;
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (const double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

const DriftSignCalibration& drift_sign_calibration() {
    static const DriftSignCalibration calibration = [] {
        DriftSignCalibration c;
        c.steps = 16;
        const CoinSpec coin = presets::identity();
        const InitialCondition init{0, {1.0, 0.0}};
        c.simulated_mean = moments(evolve(init, coin, c.steps)).mean;
        c.unsigned_prediction = integrate(coin, init, 256).first * static_cast<double>(c.steps);
        c.sign = (c.simulated_mean > 0.0) == (c.unsigned_prediction > 0.0) ? 1 : -1;
        return c;
    }();
    return calibration;
}

AsymptoticMoments moment_integrals(const CoinSpec& coin, const InitialCondition& init, std::size_t grid_size) {
    require_normalized(init);
    if (grid_size < 64) throw InvalidInput("grid_size must be at least 64");
    const RawIntegrals raw = integrate(coin, init, grid_size);
    // Gap closures are isolated for any SU(2) coin; a large degenerate fraction
    // means the cross terms we do not model would dominate.
    if (raw.degenerate * 100 > grid_size) {
        throw NumericalDomainError("U_k is degenerate on " + std::to_string(raw.degenerate) + " of " +
                                   std::to_string(grid_size) + " k samples");
    }
    AsymptoticMoments m;
    m.drift_sign = drift_sign_calibration().sign;
    m.mean_rate = m.drift_sign * raw.first;
    m.second_coeff = raw.second;
    m.variance_coeff = m.second_coeff - m.mean_rate * m.mean_rate;
    m.grid_size = grid_size;
    m.degenerate_samples = raw.degenerate;
    m.completeness_error = raw.completeness_error;
    return m;
}

double VelocityDensity::total_mass() const {
    double s = 0.0;
    for (const double d : density) s += d * bin_width;
    return s;
}

std::size_t velocity_bin(double v, std::size_t bins) {
    const double pos = (v + 1.0) * 0.5 * static_cast<double>(bins);
    if (!(pos > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(pos), bins - 1);
}

namespace {
VelocityDensity empty_density(std::size_t bins) {
    if (bins < 32) throw InvalidInput("bins must be at least 32");
    VelocityDensity d;
    d.bin_width = 2.0 / static_cast<double>(bins);
    d.v_grid.resize(bins);
    d.density.assign(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) d.v_grid[b] = -1.0 + (static_cast<double>(b) + 0.5) * d.bin_width;
    return d;
}
}  // namespace

VelocityDensity weak_limit_density(const CoinSpec& coin, const InitialCondition& init, std::size_t grid_size,
                                   std::size_t bins) {
    require_normalized(init);
    if (grid_size < 64) throw InvalidInput("grid_size must be at least 64");
    VelocityDensity d = empty_density(bins);
    if (distance_from_sigma_x_family(coin.matrix()) <= 1e-9) {
        d.sigma_x_family = true;
        d.density[velocity_bin(0.0, bins)] = 1.0 / d.bin_width;
        return d;
    }
    const Spinor& phi = init.coin_state;
    std::vector<std::vector<double>> mass(bins);
    const double h = 2.0 * kPi / static_cast<double>(grid_size);
    const double w = 1.0 / static_cast<double>(grid_size);
    auto deposit = [&](double k, double weight) {
        const Vec3 n = bloch_vector(coin, k);
        const double v = group_velocity(coin, k);
        const Mat2 ns = pauli::dot(n[0], n[1], n[2]);
        const Spinor nphi = ns.apply(phi);
        const double proj = (std::conj(phi[0]) * nphi[0] + std::conj(phi[1]) * nphi[1]).real();
        mass[velocity_bin(v, bins)].push_back(weight * 0.5 * (1.0 + proj));
        mass[velocity_bin(-v, bins)].push_back(weight * 0.5 * (1.0 - proj));
        d.v_max = std::max(d.v_max, std::abs(v));
    };
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double k = -kPi + h * static_cast<double>(j);
        if (std::sin(quasi_energy(coin, k)) <= kDegenerateSin) {
            deposit(k - h / 10.0, 0.5 * w);
            deposit(k + h / 10.0, 0.5 * w);
        } else {
            deposit(k, w);
        }
    }
    for (std::size_t b = 0; b < bins; ++b) d.density[b] = pairwise_sum(mass[b]) / d.bin_width;
    return d;
}

VelocityDensity empirical_velocity_density(const Distribution& dist, std::int64_t t, std::int64_t origin,
                                           std::size_t bins) {
    VelocityDensity d = empty_density(bins);
    if (t <= 0) throw InvalidInput("empirical velocity density needs t > 0");
    const auto nb = static_cast<std::int64_t>(bins);
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        const std::int64_t dx = dist.first + static_cast<std::int64_t>(i) - origin;
        if (dx < -t || dx > t) continue;
        // Exact integer binning of v = dx / t.
        const std::int64_t b = std::min((dx + t) * nb / (2 * t), nb - 1);
        d.density[static_cast<std::size_t>(b)] += dist.p[i];
        d.v_max = std::max(d.v_max, std::abs(static_cast<double>(dx) / static_cast<double>(t)));
    }
    for (auto& v : d.density) v /= d.bin_width;
    return d;
}

double l1_distance(const VelocityDensity& a, const VelocityDensity& b) {
    if (a.density.size() != b.density.size()) throw InvalidInput("densities use different bin layouts");
    double s = 0.0;
    for (std::size_t i = 0; i < a.density.size(); ++i) s += std::abs(a.density[i] - b.density[i]);
    return s * a.bin_width;
}

const char* to_string(Spreading s) { return s == Spreading::ballistic ? "ballistic" : "non-spreading"; }

Spreading classify_spreading(const AsymptoticMoments& m) {
    return (m.variance_coeff <= 1e-10 && m.second_coeff <= 1e-10) ? Spreading::non_spreading : Spreading::ballistic;
}

Spreading classify_spreading(const CoinSpec& coin, const InitialCondition& init, std::size_t grid_size) {
    return classify_spreading(moment_integrals(coin, init, grid_size));
}

}  // namespace qwalk
