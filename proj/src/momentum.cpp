#include "qwalk/momentum.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

// U = c I - i s n.sigma, read off symmetrically from the four entries.
struct Decomposition {
    double c;
    Vec3 sn;  // s * n
    double s;
};

Decomposition decompose(const Mat2& u) {
    const cplx i(0.0, 1.0);
    Decomposition d{};
    d.c = 0.5 * (u(0, 0) + u(1, 1)).real();
    d.sn[0] = (0.5 * i * (u(0, 1) + u(1, 0))).real();
    d.sn[1] = (-0.5 * (u(0, 1) - u(1, 0))).real();
    d.sn[2] = ((u(1, 1) - u(0, 0)) / (2.0 * i)).real();
    d.s = std::sqrt(d.sn[0] * d.sn[0] + d.sn[1] * d.sn[1] + d.sn[2] * d.sn[2]);
    return d;
}

Decomposition checked_decompose(const Mat2& u, double k) {
    const Decomposition d = decompose(u);
    if (std::abs(d.c) > 1.0 + kArccosClamp) {
        std::string msg = "cos w = " + std::to_string(d.c) + " outside [-1, 1]";
        if (!std::isnan(k)) msg += " at k = " + std::to_string(k);
        throw NumericalDomainError(msg);
    }
    return d;
}

[[noreturn]] void throw_degenerate(const char* what, double k) {
    throw DegeneratePointError(std::string(what) + ": quasi-energy gap closed at k = " + std::to_string(k), k);
}

void fix_gauge(Spinor& v) {
    const int idx = std::abs(v[1]) > 1e-12 ? 1 : 0;
    const double a = std::abs(v[idx]);
    const cplx phase = std::conj(v[idx]) / a;
    v[0] *= phase;
    v[1] *= phase;
    v[idx] = cplx(v[idx].real(), 0.0);
}

}  // namespace

Mat2 build_uk(const CoinSpec& coin, double k) {
    return Mat2::diag(std::polar(1.0, -k), std::polar(1.0, k)) * coin.matrix();
}

double quasi_energy(const CoinSpec& coin, double k) {
    const Decomposition d = checked_decompose(build_uk(coin, k), k);
    return std::atan2(d.s, d.c);
}

double quasi_energy_of(const Mat2& u_k) {
    const Decomposition d = checked_decompose(u_k, std::nan(""));
    return std::atan2(d.s, d.c);
}

Vec3 bloch_vector(const CoinSpec& coin, double k) {
    const Decomposition d = checked_decompose(build_uk(coin, k), k);
    if (d.s <= kDegenerateSin) throw_degenerate("Bloch vector undefined", k);
    return {d.sn[0] / d.s, d.sn[1] / d.s, d.sn[2] / d.s};
}

Mat2 effective_hamiltonian(const CoinSpec& coin, double k) {
    const Decomposition d = checked_decompose(build_uk(coin, k), k);
    if (d.s <= kDegenerateSin) throw_degenerate("effective Hamiltonian undefined", k);
    const double w = std::atan2(d.s, d.c);
    return cplx(w / d.s) * pauli::dot(d.sn[0], d.sn[1], d.sn[2]);
}

double group_velocity(const CoinSpec& coin, double k) {
    const Mat2 u = build_uk(coin, k);
    const Decomposition d = checked_decompose(u, k);
    if (d.s <= kDegenerateSin) throw_degenerate("group velocity undefined", k);
    // dU_k/dk = -i sigma_z U_k, so d(cos w)/dk = 0.5 Re tr(-i sigma_z U_k).
    const cplx i(0.0, 1.0);
    const double dcos = 0.5 * (-i * (u(0, 0) - u(1, 1))).real();
    return -dcos / d.s;
}

Eigensystem eigensystem(const CoinSpec& coin, double k) {
    const Decomposition d = checked_decompose(build_uk(coin, k), k);
    Eigensystem es;
    es.omega = std::atan2(d.s, d.c);
    if (d.s <= kDegenerateSin) {
        es.plus = {1.0, 0.0};
        es.minus = {0.0, 1.0};
        es.degenerate = true;
        return es;
    }
    const double nx = d.sn[0] / d.s;
    const double ny = d.sn[1] / d.s;
    const double nz = d.sn[2] / d.s;
    // +1 eigenvector of n.sigma: the better-conditioned column of (I + n.sigma)/2.
    Spinor v = nz >= 0.0 ? Spinor{1.0 + nz, cplx(nx, ny)} : Spinor{cplx(nx, -ny), 1.0 - nz};
    const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v[0] /= norm;
    v[1] /= norm;
    fix_gauge(v);
    es.plus = v;
    es.minus = {-std::conj(v[1]), std::conj(v[0])};
    fix_gauge(es.minus);
    return es;
}

std::vector<Eigensystem> eigensystem_along(const CoinSpec& coin, std::span<const double> k_grid) {
    std::vector<Eigensystem> out;
    out.reserve(k_grid.size());
    for (const double k : k_grid) {
        Eigensystem es = eigensystem(coin, k);
        if (!out.empty() && !es.degenerate && !out.back().degenerate) {
            for (auto [cur, prev] : {std::pair{&es.plus, &out.back().plus}, std::pair{&es.minus, &out.back().minus}}) {
                const cplx overlap = std::conj((*prev)[0]) * (*cur)[0] + std::conj((*prev)[1]) * (*cur)[1];
                if (std::abs(overlap) > 1e-12) {
                    const cplx phase = std::conj(overlap) / std::abs(overlap);
                    (*cur)[0] *= phase;
                    (*cur)[1] *= phase;
                }
            }
        }
        out.push_back(es);
    }
    return out;
}

MomentumPoint momentum_point(const CoinSpec& coin, double k) {
    MomentumPoint p;
    p.k = k;
    p.u_k = build_uk(coin, k);
    const Eigensystem es = eigensystem(coin, k);
    p.omega = es.omega;
    p.eigvec_plus = es.plus;
    p.eigvec_minus = es.minus;
    p.degenerate = es.degenerate;
    if (!es.degenerate) {
        p.bloch = bloch_vector(coin, k);
        p.group_velocity = group_velocity(coin, k);
    }
    return p;
}

std::vector<double> uniform_k_grid(std::size_t samples) {
    std::vector<double> grid(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        grid[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples);
    }
    return grid;
}

DispersionBand dispersion(const CoinSpec& coin, std::size_t samples) {
    if (samples < 2) throw InvalidInput("dispersion needs at least 2 k samples");
    DispersionBand band;
    band.k_grid = uniform_k_grid(samples);
    band.omega_values.reserve(samples);
    band.points.reserve(samples);
    for (const double k : band.k_grid) {
        band.points.push_back(momentum_point(coin, k));
        band.omega_values.push_back(band.points.back().omega);
    }
    return band;
}

}  // namespace qwalk
