#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Maps a point of the (theta, phi) parameter square to a coin.
using CoinFamily = std::function<CoinSpec(double theta, double phi)>;

/// The x/y family: R_x(phi) R_y(theta).
CoinFamily paper_xy_family();

struct MinGap {
    double gap_zero = 0.0;  // min_k w(k)
    double gap_pi = 0.0;    // min_k (pi - w(k))
};

/// Closed form. cos w(k) = |C00| cos(k - arg C00) for an SU(2) coin C, so both
/// gaps equal arccos|C00|, evaluated as atan2(|C01|, |C00|) to stay accurate near 0.
MinGap min_gap(const CoinSpec& coin);
MinGap min_gap(double theta, double phi);

/// Oracle path: samples w(k) on k_samples points, then golden-section refines the
/// best bracket for each band.
MinGap min_gap_sampled(const CoinSpec& coin, std::size_t k_samples = 256);

struct GapMap {
    std::vector<double> theta_grid;
    std::vector<double> phi_grid;
    std::vector<double> min_gap_zero;  // row-major, theta index slowest
    std::vector<double> min_gap_pi;
};

/// Uniform samples of [-pi, pi] inclusive.
std::vector<double> parameter_grid(std::size_t points);

GapMap gap_map(const CoinFamily& family, std::size_t grid);

enum class Band { omega_zero, omega_pi };

const char* to_string(Band b);

struct GapClosure {
    double theta = 0.0;
    double phi = 0.0;
    double k_star = 0.0;  // in [-pi, pi)
    Band band = Band::omega_zero;
};

struct ParameterPoint {
    double theta = 0.0;
    double phi = 0.0;
};

struct ClosureScan {
    std::vector<GapClosure> closures;             // one entry per (point, band)
    std::vector<ParameterPoint> square_points;    // distinct points of the closed square
    std::vector<ParameterPoint> torus_points;     // after identifying angles modulo 2 pi
    std::vector<std::string> diagnostics;
    std::size_t grid = 0;
    double tol = 0.0;
};

/// Grid cells closer than this (Chebyshev distance, in cells) merge into one closure.
inline constexpr int kClusterRadius = 2;

ClosureScan enumerate_closures(const CoinFamily& family, std::size_t grid, double tol);
inline ClosureScan enumerate_closures(std::size_t grid = 721, double tol = 1e-8) {
    return enumerate_closures(paper_xy_family(), grid, tol);
}

/// True iff every closure is isolated: the gap exceeds tol on 16 directions at
/// radii 0.02, 0.05 and 0.1 around it.
bool assert_no_boundary(const std::vector<GapClosure>& closures, const CoinFamily& family, double tol = 1e-8);

}  // namespace qwalk
