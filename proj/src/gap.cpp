#include "qwalk/gap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qwalk/errors.hpp"
#include "qwalk/momentum.hpp"

namespace qwalk {

namespace {

double wrap_momentum(double k) {
    double w = std::remainder(k, 2.0 * kPi);
    if (w >= kPi) w -= 2.0 * kPi;
    return w;
}

// Angle folded into (-pi, pi]: the representative used for torus identification.
double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi + 1e-9) w += 2.0 * kPi;
    return w;
}

template <class F>
double golden_min(F&& f, double lo, double hi) {
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - ratio * (hi - lo);
    double b = lo + ratio * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        }
    }
    return std::min({fa, fb, f(0.5 * (lo + hi))});
}

}  // namespace

CoinFamily paper_xy_family() {
    return [](double theta, double phi) { return presets::paper_xy(theta, phi); };
}

MinGap min_gap(const CoinSpec& coin) {
    const Mat2& c = coin.matrix();
    const double g = std::atan2(std::abs(c(0, 1)), std::abs(c(0, 0)));
    return {g, g};
}

MinGap min_gap(double theta, double phi) { return min_gap(presets::paper_xy(theta, phi)); }

MinGap min_gap_sampled(const CoinSpec& coin, std::size_t k_samples) {
    if (k_samples < 256) throw InvalidInput("k_samples must be at least 256");
    const std::vector<double> ks = uniform_k_grid(k_samples);
    const double h = 2.0 * kPi / static_cast<double>(k_samples);
    std::size_t best_zero = 0, best_pi = 0;
    std::vector<double> w(k_samples);
    for (std::size_t j = 0; j < k_samples; ++j) {
        w[j] = quasi_energy(coin, ks[j]);
        if (w[j] < w[best_zero]) best_zero = j;
        if (w[j] > w[best_pi]) best_pi = j;
    }
    MinGap g;
    g.gap_zero = golden_min([&](double k) { return quasi_energy(coin, k); }, ks[best_zero] - h, ks[best_zero] + h);
    g.gap_pi = golden_min([&](double k) { return kPi - quasi_energy(coin, k); }, ks[best_pi] - h, ks[best_pi] + h);
    return g;
}

std::vector<double> parameter_grid(std::size_t points) {
    if (points < 2) throw InvalidInput("parameter grid needs at least 2 points");
    std::vector<double> g(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = -kPi + 2.0 * kPi * static_cast<double>(i) / n;
    g.back() = kPi;
    return g;
}

GapMap gap_map(const CoinFamily& family, std::size_t grid) {
    GapMap map;
    map.theta_grid = parameter_grid(grid);
    map.phi_grid = map.theta_grid;
    map.min_gap_zero.resize(grid * grid);
    map.min_gap_pi.resize(grid * grid);
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            const MinGap g = min_gap(family(map.theta_grid[i], map.phi_grid[j]));
            map.min_gap_zero[i * grid + j] = g.gap_zero;
            map.min_gap_pi[i * grid + j] = g.gap_pi;
        }
    }
    return map;
}

const char* to_string(Band b) { return b == Band::omega_zero ? "omega_zero" : "omega_pi"; }

ClosureScan enumerate_closures(const CoinFamily& family, std::size_t grid, double tol) {
    if (grid < 181) throw InvalidInput("closure scan needs at least 181 points per axis");
    if (!(tol > 0.0) || tol > 1e-6) throw InvalidInput("closure tolerance must lie in (0, 1e-6]");
    const GapMap map = gap_map(family, grid);

    struct Hit {
        int i, j;
        double gap;
    };
    std::vector<Hit> hits;
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            const double g = std::min(map.min_gap_zero[i * grid + j], map.min_gap_pi[i * grid + j]);
            if (g < tol) hits.push_back({static_cast<int>(i), static_cast<int>(j), g});
        }
    }

    // Single-linkage clustering of hits within kClusterRadius cells.
    std::vector<std::size_t> parent(hits.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t a = 0; a < hits.size(); ++a) {
        for (std::size_t b = a + 1; b < hits.size(); ++b) {
            if (hits[b].i - hits[a].i > kClusterRadius) break;  // hits are sorted by i
            if (std::abs(hits[b].j - hits[a].j) <= kClusterRadius) parent[find(a)] = find(b);
        }
    }

    ClosureScan scan;
    scan.grid = grid;
    scan.tol = tol;
    std::vector<std::size_t> roots;
    for (std::size_t a = 0; a < hits.size(); ++a)
        if (find(a) == a) roots.push_back(a);
    for (const std::size_t root : roots) {
        std::size_t best = root;
        int imin = hits[root].i, imax = imin, jmin = hits[root].j, jmax = jmin;
        for (std::size_t a = 0; a < hits.size(); ++a) {
            if (find(a) != root) continue;
            if (hits[a].gap < hits[best].gap) best = a;
            imin = std::min(imin, hits[a].i);
            imax = std::max(imax, hits[a].i);
            jmin = std::min(jmin, hits[a].j);
            jmax = std::max(jmax, hits[a].j);
        }
        const ParameterPoint p{map.theta_grid[static_cast<std::size_t>(hits[best].i)],
                               map.phi_grid[static_cast<std::size_t>(hits[best].j)]};
        if (imax - imin > 2 * kClusterRadius || jmax - jmin > 2 * kClusterRadius) {
            scan.diagnostics.push_back("extended closure cluster around theta=" + std::to_string(p.theta) +
                                       ", phi=" + std::to_string(p.phi) + " spanning " +
                                       std::to_string(imax - imin + 1) + "x" + std::to_string(jmax - jmin + 1) +
                                       " cells: tol too large or closures not isolated");
        }
        scan.square_points.push_back(p);

        const Mat2& c = family(p.theta, p.phi).matrix();
        const double alpha = std::arg(c(0, 0));
        const MinGap g = min_gap(family(p.theta, p.phi));
        if (g.gap_zero < tol) scan.closures.push_back({p.theta, p.phi, wrap_momentum(alpha), Band::omega_zero});
        if (g.gap_pi < tol) scan.closures.push_back({p.theta, p.phi, wrap_momentum(alpha + kPi), Band::omega_pi});
    }

    for (const auto& p : scan.square_points) {
        const ParameterPoint q{wrap_angle(p.theta), wrap_angle(p.phi)};
        const bool seen = std::any_of(scan.torus_points.begin(), scan.torus_points.end(), [&](const ParameterPoint& r) {
            return std::abs(r.theta - q.theta) < 1e-9 && std::abs(r.phi - q.phi) < 1e-9;
        });
        if (!seen) scan.torus_points.push_back(q);
    }
    return scan;
}

bool assert_no_boundary(const std::vector<GapClosure>& closures, const CoinFamily& family, double tol) {
    constexpr double kRadii[] = {0.02, 0.05, 0.1};
    constexpr int kDirections = 16;
    for (const auto& c : closures) {
        for (const double r : kRadii) {
            for (int d = 0; d < kDirections; ++d) {
                const double a = 2.0 * kPi * d / kDirections;
                const MinGap g = min_gap(family(c.theta + r * std::cos(a), c.phi + r * std::sin(a)));
                if (std::min(g.gap_zero, g.gap_pi) <= tol) return false;
            }
        }
    }
    return true;
}

}  // namespace qwalk
