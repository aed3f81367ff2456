// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "qwalk/asymptotics.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/gap.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

bool in_sigma_x_family(const CoinSpec& coin, double radius) { return distance_from_sigma_x_family(coin.matrix()) <= radius; }

CoinSpec random_multi_coin(std::mt19937_64& rng, int lo, int hi) {
    while (true) {
        CoinSpec c = oracle::random_coin(rng, lo, hi);
        if (!in_sigma_x_family(c, 1e-3)) return c;
    }
}

Outcome unitarity() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
        const CoinSpec coin = oracle::random_coin(rng, 2, 5);
        const Mat2 c = coin.matrix();
        WalkerState s(InitialCondition{0, oracle::random_spinor(rng)});
        for (int t = 0; t < 10000; ++t) {
            s.advance(c);
            worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
        }
    }
    return {worst <= 1e-10, fmt("max |norm^2 - 1| over 20 coins x 1e4 steps = %.3g (tol 1e-10)", worst)};
}

Outcome closed_form_dispersion() {
    std::mt19937_64 rng(1002);
    double worst_general = 0.0, worst_xy = 0.0;
    const auto check = [](const Mat2& u, double cos_expected) {
        // Both eigenphases +-w: cos matches the closed form, and they sum to 0 (det = 1).
        const auto ph = oracle::eigenphases(u);
        return std::max({std::abs(std::cos(ph[0]) - cos_expected), std::abs(std::cos(ph[1]) - cos_expected),
                         std::abs(std::remainder(ph[0] + ph[1], 2 * kPi))});
    };
    for (int n = 0; n < 10000; ++n) {
        const auto n1 = oracle::random_axis(rng), n2 = oracle::random_axis(rng);
        const double th = oracle::random_angle(rng), ph = oracle::random_angle(rng), k = oracle::random_angle(rng);
        const CoinSpec coin({oracle::to_rotation(n2, th), oracle::to_rotation(n1, ph)});
        worst_general = std::max(worst_general, check(build_uk(coin, k), oracle::two_rotation_cos_omega(n1, n2, th, ph, k)));
        const double xy = std::cos(k) * std::cos(th) * std::cos(ph) - std::sin(k) * std::sin(th) * std::sin(ph);
        worst_xy = std::max(worst_xy, check(build_uk(presets::paper_xy(th, ph), k), xy));
    }
    const double worst = std::max(worst_general, worst_xy);
    return {worst <= 1e-12, fmt("max eigenphase mismatch general %.3g, x/y %.3g at 1e4 points (tol 1e-12)",
                                worst_general, worst_xy)};
}

Outcome matrix_elements() {
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const auto n1 = oracle::random_axis(rng), n2 = oracle::random_axis(rng);
        const double th = oracle::random_angle(rng), ph = oracle::random_angle(rng), k = oracle::random_angle(rng);
        const CoinSpec coin({oracle::to_rotation(n2, th), oracle::to_rotation(n1, ph)});
        worst = std::max(worst, oracle::max_diff(build_uk(coin, k), oracle::two_rotation_uk(n1, n2, th, ph, k)));
    }
    return {worst <= 1e-13, fmt("max |U_k entry - closed form| at 1e4 points = %.3g (tol 1e-13)", worst)};
}

Outcome hamiltonian_round_trip() {
    std::mt19937_64 rng(1004);
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        const CoinSpec coin = oracle::random_coin(rng, 1, 4);
        const double k = oracle::random_angle(rng);
        const double w = quasi_energy(coin, k);
        if (std::sin(w) <= 1e-6) continue;
        worst = std::max(worst, oracle::max_diff(oracle::expm_minus_i(effective_hamiltonian(coin, k)), build_uk(coin, k)));
        ++done;
    }
    return {worst <= 1e-10, fmt("max |exp(-iH_k) - U_k| at 1e3 gap-open points = %.3g (tol 1e-10)", worst)};
}

Outcome sigma_x_case() {
    const double r = 1.0 / std::sqrt(2.0);
    const MomentSeries s = moment_series(InitialCondition{0, {r, r}}, presets::sigma_x(), 1000);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        worst = std::max(worst, std::abs(s.variance[i] - (s.times[i] % 2 == 1 ? 1.0 : 0.0)));
    }
    double coeff = 0.0;
    std::mt19937_64 rng(1005);
    for (int n = 0; n < 5; ++n) {
        const auto m = moment_integrals(presets::sigma_x(), InitialCondition{0, oracle::random_spinor(rng)});
        coeff = std::max(coeff, std::abs(m.second_coeff));
    }
    const bool ok = s.size() == 1000 && worst <= 1e-12 && coeff <= 1e-14;
    return {ok, fmt("balanced start: max |var - (1 odd, 0 even)| for t<=1000 = %.3g; max |second_coeff| = %.3g",
                    worst, coeff)};
}

Outcome ballistic_law() {
    std::mt19937_64 rng(1006);
    double lo = 1e9, hi = -1e9;
    for (int n = 0; n < 20; ++n) {
        const CoinSpec coin = random_multi_coin(rng, 2, 4);
        const MomentSeries s = moment_series(InitialCondition{0, oracle::random_spinor(rng)}, coin, 1000);
        std::vector<double> lt, lv;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.times[i] < 100) continue;
            lt.push_back(std::log(static_cast<double>(s.times[i])));
            lv.push_back(std::log(s.variance[i]));
        }
        const double slope = ls_slope(lt, lv);
        lo = std::min(lo, slope);
        hi = std::max(hi, slope);
    }
    return {lo >= 1.95 && hi <= 2.05, fmt("log-log variance slope over t in [100,1000], 20 coins: [%.4f, %.4f]", lo, hi)};
}

Outcome reconciliation() {
    std::mt19937_64 rng(1007);
    double worst = 0.0;
    const auto check = [&](const CoinSpec& coin, const InitialCondition& ic) {
        const double var = moments(evolve(ic, coin, 1000)).variance();
        worst = std::max(worst, std::abs(var / 1e6 - moment_integrals(coin, ic).variance_coeff));
    };
    for (int n = 0; n < 10; ++n) check(oracle::random_coin(rng, 2, 2), InitialCondition{0, oracle::random_spinor(rng)});
    const InitialCondition up{0, {1.0, 0.0}};
    check(presets::hadamard_analog(), up);

    const MomentSeries s = moment_series(up, presets::hadamard_analog(), 1000);
    std::vector<double> t, second;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.times[i] < 500) continue;
        t.push_back(static_cast<double>(s.times[i]));
        second.push_back(s.second[i]);
    }
    const double fitted = quadratic_fit(t, second)[0];
    const double coeff = moment_integrals(presets::hadamard_analog(), up).second_coeff;
    const bool ok = worst <= 0.02 && std::abs(coeff - fitted) <= 0.0005;
    return {ok, fmt("max |Var/t^2 - variance_coeff| at t=1000 = %.4f (tol 0.02); hadamard second_coeff %.5f vs fit %.5f",
                    worst, coeff, fitted)};
}

Outcome weak_limit() {
    const InitialCondition up{0, {1.0, 0.0}};
    const auto l1 = [&](const CoinSpec& coin) {
        const VelocityDensity w = weak_limit_density(coin, up, 1 << 18, 64);
        const VelocityDensity e = empirical_velocity_density(distribution(evolve(up, coin, 1000)), 1000, 0, 64);
        return l1_distance(w, e);
    };
    const double a = l1(presets::hadamard_analog());
    const double b = l1(presets::paper_xy(kPi / 4, kPi / 4));
    return {a <= 0.05 && b <= 0.05, fmt("L1 at t=1000: hadamard_analog %.4f, paper_xy(pi/4,pi/4) %.4f (tol 0.05)", a, b)};
}

Outcome gap_enumeration() {
    const ClosureScan s = enumerate_closures(721, 1e-8);
    const double h = kPi / 2;
    const std::vector<std::pair<double, double>> listed = {
        {0, 0},   {kPi, kPi}, {kPi, -kPi}, {-kPi, kPi}, {-kPi, -kPi}, {0, kPi}, {0, -kPi},
        {kPi, 0}, {-kPi, 0},  {h, -h},     {-h, h},     {h, h},       {-h, -h}};
    std::size_t found = 0;
    for (const auto& [t, p] : listed) {
        found += std::any_of(s.square_points.begin(), s.square_points.end(), [&](const ParameterPoint& q) {
            return std::abs(q.theta - t) < 1e-9 && std::abs(q.phi - p) < 1e-9;
        });
    }
    const bool isolated = assert_no_boundary(s.closures, paper_xy_family());
    const bool ok = s.square_points.size() == 13 && found == listed.size() && isolated;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%zu points on the closed square (%zu point-band pairs, %zu modulo 2pi); %zu/13 listed found; "
                  "no boundary: %s",
                  s.square_points.size(), s.closures.size(), s.torus_points.size(), found, isolated ? "yes" : "no");
    return {ok, buf};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(1010);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const CoinSpec coin = oracle::random_coin(rng, 1, 4);
        const InitialCondition ic{0, oracle::random_spinor(rng)};
        const Distribution line = distribution(evolve(ic, coin, 64));
        const Distribution ring = ring_oracle(ic, coin, 64, 131);
        for (std::int64_t x = -65; x <= 65; ++x) worst = std::max(worst, std::abs(line.at(x) - ring.at(x)));
    }
    return {worst <= 1e-12, fmt("max |p_line - p_ring| at t=64 over 50 coins = %.3g (tol 1e-12)", worst)};
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 for none
    std::function<Outcome()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "unitarity/norm", 60, unitarity},
        {2, "closed-form dispersion", 5, closed_form_dispersion},
        {3, "matrix elements", 0, matrix_elements},
        {4, "effective Hamiltonian round trip", 0, hamiltonian_round_trip},
        {5, "sigma_x special case", 0, sigma_x_case},
        {6, "ballistic law", 120, ballistic_law},
        {7, "asymptotics reconciliation", 0, reconciliation},
        {8, "weak limit", 0, weak_limit},
        {9, "gap enumeration", 30, gap_enumeration},
        {10, "oracle equivalence", 0, oracle_equivalence},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && secs > c.time_limit) {
            o.pass = false;
            o.detail += fmt("; exceeded %.0f s limit", c.time_limit);
        }
        std::printf("%s criterion %2d %-34s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
