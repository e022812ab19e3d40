#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropbn/errors.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// A chain of g loops joined by bridges. Loop i (1-based) has a top edge of
// length ell[i-1] and a bottom edge of length m[i-1] between its left vertex
// v_i and right vertex w_i; bridge i of length bridges[i-1] joins w_i to
// v_{i+1}. Bridge length 0 means w_i and v_{i+1} coincide.
class ChainOfLoops {
  public:
    ChainOfLoops(int g, std::vector<Rat> ell, std::vector<Rat> m, std::vector<Rat> bridges)
        : g_(g), ell_(std::move(ell)), m_(std::move(m)), bridges_(std::move(bridges)) {
        if (g_ < 1) throw std::invalid_argument("chain needs at least one loop");
        if (ell_.size() != static_cast<size_t>(g_) || m_.size() != static_cast<size_t>(g_)) {
            throw std::invalid_argument("chain needs g top and g bottom edge lengths");
        }
        if (bridges_.size() != static_cast<size_t>(g_ - 1)) {
            throw std::invalid_argument("chain needs g-1 bridge lengths");
        }
        for (int i = 0; i < g_; ++i) {
            if (ell_[i] <= 0 || m_[i] <= 0) {
                throw std::invalid_argument("edge lengths must be positive");
            }
        }
        for (const Rat& b : bridges_) {
            if (b < 0) throw std::invalid_argument("bridge lengths must be nonnegative");
        }
        compute_genericity();
    }

    int g() const { return g_; }
    // Loop indices are 1-based throughout, matching the serialized form.
    const Rat& ell(int i) const { return ell_.at(i - 1); }
    const Rat& m(int i) const { return m_.at(i - 1); }
    const Rat& bridge(int i) const { return bridges_.at(i - 1); }
    const std::vector<Rat>& ells() const { return ell_; }
    const std::vector<Rat>& ms() const { return m_; }
    const std::vector<Rat>& bridges() const { return bridges_; }

    Rat circumference(int i) const { return ell(i) + m(i); }

    // Smallest (a, b) with a*m_i = b*ell_i witnessing a non-generic ratio, if any.
    struct Witness {
        int loop;  // 1-based
        Int a;
        Int b;
    };

    bool is_generic() const { return !witness_.has_value(); }
    const std::optional<Witness>& genericity_witness() const { return witness_; }

    void require_generic() const {
        if (witness_) {
            throw GenericityViolation("loop " + std::to_string(witness_->loop) +
                                      " has ell/m = " + witness_->a.str() + "/" +
                                      witness_->b.str() + " with a+b <= 2g-2");
        }
    }

    bool operator==(const ChainOfLoops& o) const {
        return g_ == o.g_ && ell_ == o.ell_ && m_ == o.m_ && bridges_ == o.bridges_;
    }

  private:
    void compute_genericity() {
        // ell_i/m_i = p/q in lowest terms realizes a*m_i = b*ell_i minimally
        // at (a, b) = (p, q); the chain is generic iff p + q > 2g-2 for all i.
        for (int i = 1; i <= g_; ++i) {
            Rat ratio = ell(i) / m(i);
            Int p = numerator(ratio);
            Int q = denominator(ratio);
            if (p + q <= 2 * g_ - 2) {
                witness_ = Witness{i, p, q};
                return;
            }
        }
    }

    int g_;
    std::vector<Rat> ell_;
    std::vector<Rat> m_;
    std::vector<Rat> bridges_;
    std::optional<Witness> witness_;
};

// Default generic family: ell_i = 2g-2+i, m_i = 1, all bridges length 1
// (or 0 when bridgeless). The ratios (2g-2+i)/1 all exceed 2g-2.
inline ChainOfLoops default_chain(int g, bool bridgeless = false) {
    std::vector<Rat> ell, m, bridges;
    for (int i = 1; i <= g; ++i) {
        ell.emplace_back(2 * g - 2 + i);
        m.emplace_back(1);
    }
    for (int i = 1; i < g; ++i) {
        bridges.emplace_back(bridgeless ? 0 : 1);
    }
    return ChainOfLoops(g, std::move(ell), std::move(m), std::move(bridges));
}

inline Int factorial(long long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    Int r = 1;
    for (long long k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Expected dimension of the rank-r degree-d locus on a genus-g chain.
inline long long rho(long long g, long long r, long long d) {
    if (g < 1) throw std::invalid_argument("rho: g must be positive");
    if (r < 0) throw std::invalid_argument("rho: r must be nonnegative");
    return g - (r + 1) * (g - d + r);
}

// Number of rank-r degree-d classes when rho = 0:
// g! * prod_{i=0}^{r} i!/(g-d+r+i)!.
inline Int lambda_count(long long g, long long r, long long d) {
    if (rho(g, r, d) != 0) {
        throw std::invalid_argument("lambda_count requires rho(g,r,d) == 0");
    }
    Int num = factorial(g);
    Int den = 1;
    const long long s = g - d + r;
    for (long long i = 0; i <= r; ++i) {
        num *= factorial(i);
        den *= factorial(s + i);
    }
    Int q = num / den;
    if (q * den != num) throw std::logic_error("lambda_count: non-integral quotient");
    return q;
}

// psi(r, s) = [(r+1)(s+1)]! * prod_{i=0}^{r} i!/(s+1+i)!. Counts standard
// Young tableaux on the (r+1) x (s+1) rectangle. Degenerate s = -1 gives 1.
inline Int psi(long long r, long long s) {
    if (r < 0 || s < -1) throw std::invalid_argument("psi: requires r >= 0, s >= -1");
    Int num = factorial((r + 1) * (s + 1));
    Int den = 1;
    for (long long i = 0; i <= r; ++i) {
        num *= factorial(i);
        den *= factorial(s + 1 + i);
    }
    Int q = num / den;
    if (q * den != num) throw std::logic_error("psi: non-integral quotient");
    return q;
}

}  // namespace tropbn
