#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// Deterministic rational sampler. mt19937_64 has a pinned-by-standard output
// sequence, and all deriving here is plain modular arithmetic, so a seed
// fixes every draw on every platform (library distributions are not used for
// exactly that reason). Denominators stay below a configurable bound.
class RatRng {
  public:
    explicit RatRng(std::uint64_t seed, long long max_denominator = 97)
        : eng_(seed), qmax_(max_denominator) {
        if (qmax_ < 1) throw std::invalid_argument("denominator bound must be positive");
    }

    std::uint64_t bits() { return eng_(); }

    // Uniform-ish integer in [0, n).
    long long below(long long n) {
        if (n <= 0) throw std::invalid_argument("below: empty range");
        return static_cast<long long>(eng_() % static_cast<std::uint64_t>(n));
    }

    long long in_range(long long lo, long long hi) {  // inclusive
        if (lo > hi) throw std::invalid_argument("in_range: empty range");
        return lo + below(hi - lo + 1);
    }

    bool coin() { return (eng_() & 1u) != 0; }

    // Rational in [0, 1) with denominator <= bound.
    Rat unit() {
        long long q = in_range(1, qmax_);
        return Rat(below(q), q);
    }

    // Rational in the open interval (0, 1).
    Rat unit_open() {
        long long q = in_range(2, qmax_ < 2 ? 2 : qmax_);
        return Rat(in_range(1, q - 1), q);
    }

    // Rational in [0, span), scaled from unit().
    Rat scaled(const Rat& span) { return unit() * span; }

    Rat scaled_open(const Rat& span) { return unit_open() * span; }

    // Rational in (-span, span).
    Rat symmetric(const Rat& span) {
        Rat v = scaled(span);
        return coin() ? v : -v;
    }

  private:
    std::mt19937_64 eng_;
    long long qmax_;
};

inline JacobianPoint random_jac_point(const ChainOfLoops& chain, RatRng& rng) {
    JacobianPoint p = jac_zero(chain);
    for (int i = 1; i <= chain.g(); ++i) {
        p.coords[i - 1] = rng.scaled(chain.circumference(i));
    }
    return jac_normalize(chain, std::move(p));
}

// Reduced divisor with a chip on each loop independently with probability
// 1/2, plus a base pile drawn from [d0_lo, d0_hi].
inline ReducedDivisor random_reduced(const ChainOfLoops& chain, RatRng& rng, long long d0_lo,
                                     long long d0_hi) {
    ReducedDivisor rd;
    rd.d0 = rng.in_range(d0_lo, d0_hi);
    rd.x.assign(static_cast<size_t>(chain.g()), Rat(0));
    for (int i = 1; i <= chain.g(); ++i) {
        if (rng.coin()) {
            rd.x[i - 1] = rng.scaled_open(chain.circumference(i));
        }
    }
    return rd;
}

// Random chip configuration in general position-sum form: `chips` points at
// uniform spots (loops, bridges where present, sometimes v_1), multiplicities
// in [-2, 3] excluding 0 unless `effective_only`.
inline Divisor random_divisor(const ChainOfLoops& chain, RatRng& rng, int chips,
                              bool effective_only = false) {
    Divisor div;
    for (int c = 0; c < chips; ++c) {
        PointOnGamma pt;
        long long roll = rng.below(20);
        int b = chain.g() > 1 ? 1 + static_cast<int>(rng.below(chain.g() - 1)) : 0;
        if (roll == 0) {
            pt = PointOnGamma::basepoint();
        } else if (roll <= 2 && b > 0 && chain.bridge(b) > 0) {
            pt = PointOnGamma::bridge_point(b, rng.scaled_open(chain.bridge(b)));
        } else {
            int i = 1 + static_cast<int>(rng.below(chain.g()));
            pt = PointOnGamma::loop_point(i, rng.scaled(chain.circumference(i)));
        }
        long long mult;
        if (effective_only) {
            mult = rng.in_range(1, 3);
        } else {
            do {
                mult = rng.in_range(-2, 3);
            } while (mult == 0);
        }
        add_chip(div, pt, mult);
    }
    return div;
}

}  // namespace tropbn
