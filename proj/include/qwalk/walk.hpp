#pragma once

#include <cstdint>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Walker starts on one site with coin state |Phi0>.
struct InitialCondition {
    std::int64_t position = 0;
    Spinor coin_state{1.0, 0.0};

    /// Rejects coin states whose norm differs from 1 by more than 1e-12.
    static InitialCondition from_vector(Spinor coin_state, std::int64_t position = 0);
    /// (cos a/2, e^{ib} sin a/2).
    static InitialCondition from_bloch(double alpha, double beta, std::int64_t position = 0);
};

/// Probabilities on the contiguous site range [first, first + p.size()).
struct Distribution {
    std::int64_t first = 0;
    std::vector<double> p;

    std::int64_t last() const { return first + static_cast<std::int64_t>(p.size()) - 1; }
    /// p(x), zero outside the stored range.
    double at(std::int64_t x) const;
    double total() const;
};

/// Amplitudes over the light cone [x0 - t, x0 + t], coin index fastest.
class WalkerState {
public:
    explicit WalkerState(const InitialCondition& init);

    std::int64_t t() const { return t_; }
    std::int64_t origin() const { return origin_; }
    /// Leftmost stored site.
    std::int64_t offset() const { return offset_; }
    std::size_t sites() const { return amplitudes_.size() / 2; }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }
    cplx amplitude(std::int64_t x, int coin) const;
    double norm_squared() const;

    /// One application of T (I x C) with a precomposed coin matrix.
    void advance(const Mat2& coin);

private:
    std::int64_t t_ = 0;
    std::int64_t origin_ = 0;
    std::int64_t offset_ = 0;
    std::vector<cplx> amplitudes_;
    std::vector<cplx> scratch_;
};

/// Coin at every site, then coin-0 amplitude moves x -> x+1 and coin-1 moves x -> x-1.
WalkerState step(const WalkerState& state, const CoinSpec& coin);

WalkerState evolve(const InitialCondition& init, const CoinSpec& coin, std::int64_t steps);

Distribution distribution(const WalkerState& state);

struct Moments {
    double mean = 0.0;
    double second = 0.0;
    double variance() const { return second - mean * mean; }
};

Moments moments(const WalkerState& state);
Moments moments(const Distribution& dist);

struct MomentSeries {
    std::vector<std::int64_t> times;
    std::vector<double> mean;
    std::vector<double> second;
    std::vector<double> variance;

    std::size_t size() const { return times.size(); }
};

/// Exact moments at t = stride, 2 stride, ... and always at t = steps.
MomentSeries moment_series(const InitialCondition& init, const CoinSpec& coin, std::int64_t steps,
                           std::int64_t stride = 1);

/// Independent check: builds the dense one-step unitary of a ring of ring_size
/// sites and applies it steps times. Requires ring_size > 2 steps + 1.
Distribution ring_oracle(const InitialCondition& init, const CoinSpec& coin, std::int64_t steps,
                         std::int64_t ring_size);

}  // namespace qwalk
