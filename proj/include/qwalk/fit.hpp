#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace qwalk {

/// Ordinary least-squares slope of y against x.
inline double ls_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ls_slope needs >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

/// Least-squares fit y ~ c2 x^2 + c1 x + c0, returned as {c2, c1, c0}.
/// x is centred and scaled internally so the normal equations stay well conditioned.
inline std::array<double, 3> quadratic_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("quadratic_fit needs >= 3 paired samples");
    double lo = x[0], hi = x[0];
    for (const double v : x) {
        lo = std::fmin(lo, v);
        hi = std::fmax(hi, v);
    }
    const double mid = 0.5 * (lo + hi);
    const double half = hi > lo ? 0.5 * (hi - lo) : 1.0;
    // Normal equations in u = (x - mid) / half.
    double s[5] = {0, 0, 0, 0, 0};
    double r[3] = {0, 0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = (x[i] - mid) / half;
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            s[k] += p;
            if (k < 3) r[k] += p * y[i];
            p *= u;
        }
    }
    double a[3][4] = {{s[0], s[1], s[2], r[0]}, {s[1], s[2], s[3], r[1]}, {s[2], s[3], s[4], r[2]}};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int q = c + 1; q < 3; ++q)
            if (std::fabs(a[q][c]) > std::fabs(a[piv][c])) piv = q;
        for (int k = 0; k < 4; ++k) std::swap(a[c][k], a[piv][k]);
        for (int q = 0; q < 3; ++q) {
            if (q == c) continue;
            const double f = a[q][c] / a[c][c];
            for (int k = c; k < 4; ++k) a[q][k] -= f * a[c][k];
        }
    }
    const double b0 = a[0][3] / a[0][0];
    const double b1 = a[1][3] / a[1][1];
    const double b2 = a[2][3] / a[2][2];
    // y = b2 u^2 + b1 u + b0 with u = (x - mid)/half.
    const double c2 = b2 / (half * half);
    const double c1 = b1 / half - 2.0 * b2 * mid / (half * half);
    const double c0 = b0 - b1 * mid / half + b2 * mid * mid / (half * half);
    return {c2, c1, c0};
}

}  // namespace qwalk
