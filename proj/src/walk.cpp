#include "qwalk/walk.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

InitialCondition InitialCondition::from_vector(Spinor coin_state, std::int64_t position) {
    const double n = std::norm(coin_state[0]) + std::norm(coin_state[1]);
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
        throw InvalidInput("initial coin state is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
    return InitialCondition{position, coin_state};
}

InitialCondition InitialCondition::from_bloch(double alpha, double beta, std::int64_t position) {
    return InitialCondition{position, {std::cos(alpha / 2.0), std::polar(std::sin(alpha / 2.0), beta)}};
}

double Distribution::at(std::int64_t x) const {
    if (x < first || x > last()) return 0.0;
    return p[static_cast<std::size_t>(x - first)];
}

double Distribution::total() const {
    double s = 0.0;
    for (const double v : p) s += v;
    return s;
}

WalkerState::WalkerState(const InitialCondition& init)
    : origin_(init.position), offset_(init.position), amplitudes_{init.coin_state[0], init.coin_state[1]} {}

cplx WalkerState::amplitude(std::int64_t x, int coin) const {
    if (x < offset_ || x >= offset_ + static_cast<std::int64_t>(sites())) return 0.0;
    return amplitudes_[2 * static_cast<std::size_t>(x - offset_) + static_cast<std::size_t>(coin)];
}

double WalkerState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += a.real() * a.real() + a.imag() * a.imag();
    return s;
}

void WalkerState::advance(const Mat2& coin) {
    const std::size_t n = sites();
    scratch_.resize(2 * (n + 2));
    // The loop below writes every slot except these four.
    scratch_[0] = scratch_[2] = scratch_[2 * n + 1] = scratch_[2 * n + 3] = cplx(0.0, 0.0);
    const cplx c00 = coin(0, 0), c01 = coin(0, 1), c10 = coin(1, 0), c11 = coin(1, 1);
    // Plain real arithmetic: operator* on std::complex goes through the Annex G
    // NaN/Inf recovery path. Subnormal results (the far tails of long walks, far
    // below any probability resolution) are flushed to zero; subnormal operands
    // otherwise slow the loop down several times.
    const auto flush = [](double v) { return std::abs(v) < std::numeric_limits<double>::min() ? 0.0 : v; };
    const auto mac = [&](cplx a, cplx x, cplx b, cplx y) {
        return cplx(flush(a.real() * x.real() - a.imag() * x.imag() + b.real() * y.real() - b.imag() * y.imag()),
                    flush(a.real() * x.imag() + a.imag() * x.real() + b.real() * y.imag() + b.imag() * y.real()));
    };
    // Site i of the old array becomes site i + 1 of the new one (offset moves left by 1).
    const cplx* __restrict src = amplitudes_.data();
    cplx* __restrict dst = scratch_.data();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a0 = src[2 * i];
        const cplx a1 = src[2 * i + 1];
        dst[2 * (i + 2)] = mac(c00, a0, c01, a1);
        dst[2 * i + 1] = mac(c10, a0, c11, a1);
    }
    amplitudes_.swap(scratch_);
    --offset_;
    ++t_;
}

WalkerState step(const WalkerState& state, const CoinSpec& coin) {
    WalkerState next = state;
    next.advance(coin.matrix());
    return next;
}

WalkerState evolve(const InitialCondition& init, const CoinSpec& coin, std::int64_t steps) {
    if (steps < 0) throw InvalidInput("steps must be non-negative");
    WalkerState state(init);
    for (std::int64_t s = 0; s < steps; ++s) state.advance(coin.matrix());
    return state;
}

Distribution distribution(const WalkerState& state) {
    Distribution d;
    d.first = state.offset();
    d.p.resize(state.sites());
    const auto& a = state.amplitudes();
    for (std::size_t i = 0; i < d.p.size(); ++i) d.p[i] = std::norm(a[2 * i]) + std::norm(a[2 * i + 1]);
    return d;
}

Moments moments(const Distribution& dist) {
    Moments m;
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        const double x = static_cast<double>(dist.first + static_cast<std::int64_t>(i));
        m.mean += x * dist.p[i];
        m.second += x * x * dist.p[i];
    }
    return m;
}

Moments moments(const WalkerState& state) { return moments(distribution(state)); }

MomentSeries moment_series(const InitialCondition& init, const CoinSpec& coin, std::int64_t steps,
                           std::int64_t stride) {
    if (steps < 0) throw InvalidInput("steps must be non-negative");
    if (stride < 1) throw InvalidInput("stride must be positive");
    MomentSeries series;
    WalkerState state(init);
    for (std::int64_t t = 1; t <= steps; ++t) {
        state.advance(coin.matrix());
        if (t % stride == 0 || t == steps) {
            const Moments m = moments(state);
            series.times.push_back(t);
            series.mean.push_back(m.mean);
            series.second.push_back(m.second);
            series.variance.push_back(m.variance());
        }
    }
    return series;
}

Distribution ring_oracle(const InitialCondition& init, const CoinSpec& coin, std::int64_t steps,
                         std::int64_t ring_size) {
    if (steps < 0) throw InvalidInput("steps must be non-negative");
    if (ring_size <= 2 * steps + 1) {
        throw InvalidInput("ring of " + std::to_string(ring_size) + " sites is too small for " +
                           std::to_string(steps) + " steps");
    }
    const auto m = static_cast<std::size_t>(ring_size);
    const std::size_t dim = 2 * m;
    using Dense = std::vector<cplx>;  // row-major dim x dim
    auto idx = [dim](std::size_t r, std::size_t c) { return r * dim + c; };

    Dense coin_layer(dim * dim, cplx(0.0, 0.0));
    const Mat2& c = coin.matrix();
    for (std::size_t j = 0; j < m; ++j) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) coin_layer[idx(2 * j + a, 2 * j + b)] = c(a, b);
        }
    }
    Dense shift(dim * dim, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        shift[idx(2 * ((j + 1) % m), 2 * j)] = 1.0;
        shift[idx(2 * ((j + m - 1) % m) + 1, 2 * j + 1)] = 1.0;
    }
    Dense unitary(dim * dim, cplx(0.0, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t q = 0; q < dim; ++q) {
            const cplx s = shift[idx(r, q)];
            if (s == cplx(0.0, 0.0)) continue;
            for (std::size_t col = 0; col < dim; ++col) unitary[idx(r, col)] += s * coin_layer[idx(q, col)];
        }
    }

    // Ring site j holds displacement j (j <= (m-1)/2) or j - m from the start.
    std::vector<cplx> psi(dim, cplx(0.0, 0.0));
    psi[0] = init.coin_state[0];
    psi[1] = init.coin_state[1];
    std::vector<cplx> next(dim);
    for (std::int64_t s = 0; s < steps; ++s) {
        for (std::size_t r = 0; r < dim; ++r) {
            cplx acc(0.0, 0.0);
            for (std::size_t col = 0; col < dim; ++col) acc += unitary[idx(r, col)] * psi[col];
            next[r] = acc;
        }
        psi.swap(next);
    }

    const auto half = static_cast<std::int64_t>((m - 1) / 2);
    Distribution d;
    d.first = init.position - (ring_size - 1 - half);
    d.p.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const auto disp = static_cast<std::int64_t>(j) <= half ? static_cast<std::int64_t>(j)
                                                               : static_cast<std::int64_t>(j) - ring_size;
        d.p[static_cast<std::size_t>(init.position + disp - d.first)] = std::norm(psi[2 * j]) + std::norm(psi[2 * j + 1]);
    }
    return d;
}

}  // namespace qwalk
