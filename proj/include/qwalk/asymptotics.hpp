#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Orientation of the drift term, fixed by simulating the identity coin from |0>
/// (which must move to +t) and comparing with the unsigned spectral integral.
struct DriftSignCalibration {
    int sign = 1;
    std::int64_t steps = 0;
    double simulated_mean = 0.0;
    double unsigned_prediction = 0.0;
};

/// Computed on first use, then cached for the lifetime of the process.
const DriftSignCalibration& drift_sign_calibration();

/// Long-time coefficients: <x>_t ~ mean_rate t, <x^2>_t ~ second_coeff t^2.
struct AsymptoticMoments {
    double mean_rate = 0.0;
    double second_coeff = 0.0;
    double variance_coeff = 0.0;
    std::size_t grid_size = 0;
    int drift_sign = 1;
    std::size_t degenerate_samples = 0;
    /// max_k |sum_j |c_kj|^2 - 1| over the grid.
    double completeness_error = 0.0;
};

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Periodic trapezoid over k_j = -pi + 2 pi j / grid_size of the diagonal
/// (non-oscillatory) spectral terms. Gap-closed samples are replaced by the
/// average of the integrand at k +- h/10.
AsymptoticMoments moment_integrals(const CoinSpec& coin, const InitialCondition& init,
                                   std::size_t grid_size = kDefaultGridSize);

/// Histogram estimate of the limiting density of x/t on [-1, 1].
struct VelocityDensity {
    std::vector<double> v_grid;   // bin centres
    std::vector<double> density;  // mass / bin width
    double bin_width = 0.0;
    double v_max = 0.0;
    bool sigma_x_family = false;  // all mass placed at v = 0

    double total_mass() const;
};

/// Bin b covers [-1 + b w, -1 + (b+1) w), w = 2 / bins; v = 1 falls in the last bin.
std::size_t velocity_bin(double v, std::size_t bins);

VelocityDensity weak_limit_density(const CoinSpec& coin, const InitialCondition& init,
                                   std::size_t grid_size = 1 << 18, std::size_t bins = 64);

/// Exact p(x, t) rebinned over v = x / t with the same bin layout as weak_limit_density.
VelocityDensity empirical_velocity_density(const Distribution& dist, std::int64_t t, std::int64_t origin,
                                           std::size_t bins);

/// sum_b |a_b - b_b| * w. Both densities must share the bin layout.
double l1_distance(const VelocityDensity& a, const VelocityDensity& b);

enum class Spreading { ballistic, non_spreading };

const char* to_string(Spreading s);

Spreading classify_spreading(const AsymptoticMoments& m);
Spreading classify_spreading(const CoinSpec& coin, const InitialCondition& init,
                             std::size_t grid_size = kDefaultGridSize);

/// Pairwise (cascade) summation; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> values);

}  // namespace qwalk
