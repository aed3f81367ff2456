#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Below this sin(w) the gap counts as closed: n(k), H_k and v_k are undefined.
inline constexpr double kDegenerateSin = 1e-8;
/// Rounding slack tolerated on the arccos argument before it is a domain error.
inline constexpr double kArccosClamp = 1e-12;

using Vec3 = std::array<double, 3>;

// Functions below accept any real k; U_k is 2pi-periodic so no wrapping is applied.

/// U_k = (e^{-ik} P0 + e^{ik} P1) * compose(coin).
Mat2 build_uk(const CoinSpec& coin, double k);

/// Principal quasi-energy w(k) in [0, pi]; U_k has eigenvalues e^{-iw}, e^{+iw}.
double quasi_energy(const CoinSpec& coin, double k);
/// Same for an explicit U_k. Throws NumericalDomainError if |Re tr U / 2| > 1 + kArccosClamp.
double quasi_energy_of(const Mat2& u_k);

/// n(k) with U_k = cos w I - i sin w n.sigma. Throws DegeneratePointError at gap closures.
Vec3 bloch_vector(const CoinSpec& coin, double k);

/// H_k = w(k) n(k).sigma, so that exp(-i H_k) = U_k.
Mat2 effective_hamiltonian(const CoinSpec& coin, double k);

/// v_k = dw/dk from the analytic derivative of cos w(k).
double group_velocity(const CoinSpec& coin, double k);

struct Eigensystem {
    Spinor plus;   // eigenvalue e^{-iw}
    Spinor minus;  // eigenvalue e^{+iw}
    double omega = 0.0;
    bool degenerate = false;
};

/// Orthonormal eigenbasis of U_k. At w in {0, pi} returns the computational basis, flagged.
Eigensystem eigensystem(const CoinSpec& coin, double k);

/// Same as eigensystem() at each grid point, with eigenvector phases carried
/// continuously from one sample to the next.
std::vector<Eigensystem> eigensystem_along(const CoinSpec& coin, std::span<const double> k_grid);

struct MomentumPoint {
    double k = 0.0;
    Mat2 u_k;
    double omega = 0.0;
    Spinor eigvec_plus{};
    Spinor eigvec_minus{};
    bool degenerate = false;
    std::optional<Vec3> bloch;             // empty when degenerate
    std::optional<double> group_velocity;  // empty when degenerate
};

MomentumPoint momentum_point(const CoinSpec& coin, double k);

struct DispersionBand {
    std::vector<double> k_grid;
    std::vector<double> omega_values;
    std::vector<MomentumPoint> points;
};

/// Uniform grid k_j = -pi + 2 pi j / samples, j = 0..samples-1.
std::vector<double> uniform_k_grid(std::size_t samples);

DispersionBand dispersion(const CoinSpec& coin, std::size_t samples);

}  // namespace qwalk
