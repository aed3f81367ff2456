#include "qwalk/coin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

double Mat2::max_abs() const {
    double m = 0.0;
    for (const auto& z : e) m = std::max(m, std::abs(z));
    return m;
}

bool Mat2::all_finite() const {
    return std::all_of(e.begin(), e.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return Mat2{{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
                 a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return Mat2{{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return Mat2{{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
}

Mat2 operator*(cplx s, const Mat2& a) { return Mat2{{s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]}}; }

namespace pauli {
Mat2 x() { return Mat2{{0.0, 1.0, 1.0, 0.0}}; }
Mat2 y() { return Mat2{{0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}}; }
Mat2 z() { return Mat2::diag(1.0, -1.0); }
Mat2 dot(double nx, double ny, double nz) { return Mat2{{nz, cplx(nx, -ny), cplx(nx, ny), -nz}}; }
}  // namespace pauli

UnitAxis UnitAxis::from(double nx, double ny, double nz) {
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) {
        throw InvalidInput("rotation axis is not a unit vector (|n| = " + std::to_string(norm) + ")");
    }
    return UnitAxis(nx / norm, ny / norm, nz / norm);
}

CoinRotation::CoinRotation(UnitAxis axis, double angle) : axis_(axis), angle_(std::remainder(angle, 2.0 * kPi)) {
    if (!std::isfinite(angle)) throw InvalidInput("rotation angle is not finite");
}

Mat2 rotation_matrix(const CoinRotation& rot) {
    const double c = std::cos(rot.angle());
    const double s = std::sin(rot.angle());
    const auto& n = rot.axis();
    const cplx i(0.0, 1.0);
    return Mat2{{c + i * n.nz() * s, (i * n.nx() + n.ny()) * s,
                 (i * n.nx() - n.ny()) * s, c - i * n.nz() * s}};
}

namespace {
Mat2 product(const std::vector<CoinRotation>& rotations) {
    Mat2 m = Mat2::identity();
    for (const auto& r : rotations) m = rotation_matrix(r) * m;
    return m;
}
}  // namespace

CoinSpec::CoinSpec(std::vector<CoinRotation> rotations) : rotations_(std::move(rotations)) {
    if (rotations_.empty()) throw InvalidInput("coin must contain at least one rotation");
    matrix_ = product(rotations_);
}

Mat2 compose(const CoinSpec& spec) { return spec.matrix(); }

bool check_unitary(const Mat2& m, double tol) {
    if (!m.all_finite()) return false;
    return (m.adjoint() * m - Mat2::identity()).max_abs() <= tol;
}

double distance_from_sigma_x_family(const Mat2& coin) {
    const double diag = std::max(std::abs(coin(0, 0)), std::abs(coin(1, 1)));
    auto off = [&](double g) {
        const cplx p = std::polar(1.0, g);
        return std::max(std::abs(coin(0, 1) - p), std::abs(coin(1, 0) - p));
    };
    // Coarse scan, then golden-section refinement around the best sample.
    constexpr int kScan = 720;
    double best_g = -kPi;
    double best = off(best_g);
    for (int j = 1; j < kScan; ++j) {
        const double g = -kPi + 2.0 * kPi * j / kScan;
        if (const double d = off(g); d < best) {
            best = d;
            best_g = g;
        }
    }
    double lo = best_g - 2.0 * kPi / kScan;
    double hi = best_g + 2.0 * kPi / kScan;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double a = hi - ratio * (hi - lo);
        const double b = lo + ratio * (hi - lo);
        if (off(a) < off(b)) hi = b; else lo = a;
    }
    best = std::min(best, off(0.5 * (lo + hi)));
    return std::max(diag, best);
}

namespace presets {
CoinSpec identity() { return CoinSpec({CoinRotation(UnitAxis::z(), 0.0)}); }
CoinSpec sigma_x() { return CoinSpec({CoinRotation(UnitAxis::x(), kPi / 2.0)}); }
CoinSpec hadamard_analog() { return CoinSpec({CoinRotation(UnitAxis::y(), kPi / 4.0)}); }
CoinSpec paper_xy(double theta, double phi) {
    return CoinSpec({CoinRotation(UnitAxis::y(), theta), CoinRotation(UnitAxis::x(), phi)});
}
}  // namespace presets

CoinSpec preset(std::string_view name, double theta, double phi) {
    if (name == "identity") return presets::identity();
    if (name == "sigma_x") return presets::sigma_x();
    if (name == "hadamard_analog") return presets::hadamard_analog();
    if (name == "paper_xy") return presets::paper_xy(theta, phi);
    throw InvalidInput("unknown coin preset '" + std::string(name) + "'");
}

}  // namespace qwalk
