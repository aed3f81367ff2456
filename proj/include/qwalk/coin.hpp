#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Two-component coin spinor, index 0 is |0> (moves right), index 1 is |1>.
using Spinor = std::array<cplx, 2>;

/// Dense complex 2x2 matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> e{};

    constexpr cplx& operator()(int r, int c) { return e[2 * r + c]; }
    constexpr const cplx& operator()(int r, int c) const { return e[2 * r + c]; }

    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
    static Mat2 diag(cplx a, cplx b) { return Mat2{{a, 0.0, 0.0, b}}; }

    Mat2 adjoint() const { return Mat2{{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}}; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
    cplx trace() const { return e[0] + e[3]; }
    /// Largest entry modulus.
    double max_abs() const;
    bool all_finite() const;

    Spinor apply(const Spinor& v) const { return {e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]}; }
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
/// n . sigma for a real 3-vector.
Mat2 dot(double nx, double ny, double nz);
}  // namespace pauli

/// Real unit 3-vector. Inputs within 1e-9 of unit norm are renormalized; others rejected.
class UnitAxis {
public:
    static UnitAxis from(double nx, double ny, double nz);
    static UnitAxis x() { return UnitAxis(1.0, 0.0, 0.0); }
    static UnitAxis y() { return UnitAxis(0.0, 1.0, 0.0); }
    static UnitAxis z() { return UnitAxis(0.0, 0.0, 1.0); }

    double nx() const { return v_[0]; }
    double ny() const { return v_[1]; }
    double nz() const { return v_[2]; }
    const std::array<double, 3>& components() const { return v_; }

private:
    UnitAxis(double nx, double ny, double nz) : v_{nx, ny, nz} {}
    std::array<double, 3> v_;
};

/// exp(i * angle * axis . sigma). The angle is folded into [-pi, pi] at construction.
class CoinRotation {
public:
    CoinRotation(UnitAxis axis, double angle);

    const UnitAxis& axis() const { return axis_; }
    double angle() const { return angle_; }

private:
    UnitAxis axis_;
    double angle_;
};

/// Composite coin. Rotations are stored in application order: rotations()[0] acts
/// first. The two-rotation walk T R_n1(phi) R_n2(theta) is therefore
/// CoinSpec({R_n2(theta), R_n1(phi)}).
class CoinSpec {
public:
    explicit CoinSpec(std::vector<CoinRotation> rotations);

    const std::vector<CoinRotation>& rotations() const { return rotations_; }
    std::size_t size() const { return rotations_.size(); }
    /// Composite matrix, cached at construction.
    const Mat2& matrix() const { return matrix_; }

private:
    std::vector<CoinRotation> rotations_;
    Mat2 matrix_;
};

Mat2 rotation_matrix(const CoinRotation& rot);

/// Ordered product, last-applied rotation leftmost.
Mat2 compose(const CoinSpec& spec);

/// True iff max |(m^dagger m - I)_ij| <= tol.
bool check_unitary(const Mat2& m, double tol);

/// Max-norm distance of the composite coin from the set {e^{i g} sigma_x}.
double distance_from_sigma_x_family(const Mat2& coin);

namespace presets {
CoinSpec identity();
/// R_x(pi/2) = i sigma_x.
CoinSpec sigma_x();
/// R_y(pi/4).
CoinSpec hadamard_analog();
/// R_x(phi) R_y(theta): R_y(theta) acts first.
CoinSpec paper_xy(double theta, double phi);
}  // namespace presets

/// Looks up "identity", "sigma_x", "hadamard_analog" or "paper_xy". Throws InvalidInput otherwise.
CoinSpec preset(std::string_view name, double theta = 0.0, double phi = 0.0);

}  // namespace qwalk
