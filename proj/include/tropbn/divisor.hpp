#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// A point of the metric graph. Loop offsets run counterclockwise from v_i,
// so offset 0 is v_i itself and offset m_i is w_i. Bridge offsets run from
// w_i toward v_{i+1}; offset b_i denotes v_{i+1} itself (offset 0 would be
// w_i, which is a loop point, so bridge offsets are taken from (0, b_i]).
struct PointOnGamma {
    enum class Kind { v1, loop, bridge };

    Kind kind = Kind::v1;
    int index = 0;  // loop or bridge number, 1-based; unused for v1
    Rat offset = 0;

    static PointOnGamma basepoint() { return PointOnGamma{}; }

    static PointOnGamma loop_point(int i, Rat x) {
        return PointOnGamma{Kind::loop, i, std::move(x)};
    }

    static PointOnGamma bridge_point(int i, Rat t) {
        return PointOnGamma{Kind::bridge, i, std::move(t)};
    }

    bool operator==(const PointOnGamma& o) const {
        if (kind != o.kind) return false;
        if (kind == Kind::v1) return true;
        return index == o.index && offset == o.offset;
    }
};

inline void validate_point(const ChainOfLoops& chain, const PointOnGamma& p) {
    switch (p.kind) {
        case PointOnGamma::Kind::v1:
            return;
        case PointOnGamma::Kind::loop: {
            if (p.index < 1 || p.index > chain.g()) {
                throw std::invalid_argument("loop index out of range");
            }
            if (p.offset < 0 || p.offset >= chain.circumference(p.index)) {
                throw std::invalid_argument("loop offset outside [0, ell+m)");
            }
            return;
        }
        case PointOnGamma::Kind::bridge: {
            if (p.index < 1 || p.index > chain.g() - 1) {
                throw std::invalid_argument("bridge index out of range");
            }
            if (chain.bridge(p.index) == 0) {
                throw std::invalid_argument("bridge has zero length, no interior points");
            }
            if (p.offset <= 0 || p.offset > chain.bridge(p.index)) {
                throw std::invalid_argument("bridge offset outside (0, b]");
            }
            return;
        }
    }
    throw std::invalid_argument("unknown point kind");
}

// Formal Z-combination of points; multiplicities are nonzero.
struct Divisor {
    std::vector<std::pair<PointOnGamma, long long>> chips;
};

inline void validate_divisor(const ChainOfLoops& chain, const Divisor& div) {
    for (const auto& [pt, mult] : div.chips) {
        validate_point(chain, pt);
        if (mult == 0) throw std::invalid_argument("divisor multiplicities must be nonzero");
    }
}

inline long long degree(const Divisor& div) {
    long long d = 0;
    for (const auto& [pt, mult] : div.chips) d += mult;
    return d;
}

inline void add_chip(Divisor& div, const PointOnGamma& p, long long mult) {
    if (mult == 0) return;
    for (size_t k = 0; k < div.chips.size(); ++k) {
        if (div.chips[k].first == p) {
            div.chips[k].second += mult;
            if (div.chips[k].second == 0) {
                div.chips.erase(div.chips.begin() + static_cast<std::ptrdiff_t>(k));
            }
            return;
        }
    }
    div.chips.emplace_back(p, mult);
}

// The v_1-reduced normal form of a divisor class: d0 chips at v_1 plus at
// most one chip per loop, at counterclockwise offset x[i-1] from v_i.
// x[i-1] == 0 encodes "no chip on loop i".
struct ReducedDivisor {
    long long d0 = 0;
    std::vector<Rat> x;

    bool operator==(const ReducedDivisor& o) const { return d0 == o.d0 && x == o.x; }
};

inline void validate_reduced(const ChainOfLoops& chain, const ReducedDivisor& rd) {
    if (rd.x.size() != static_cast<size_t>(chain.g())) {
        throw std::invalid_argument("reduced divisor needs one offset per loop");
    }
    for (int i = 1; i <= chain.g(); ++i) {
        if (rd.x[i - 1] < 0 || rd.x[i - 1] >= chain.circumference(i)) {
            throw std::invalid_argument("reduced offset outside [0, ell+m)");
        }
    }
}

inline long long chip_count(const ReducedDivisor& rd) {
    long long n = 0;
    for (const Rat& xi : rd.x) {
        if (xi != 0) ++n;
    }
    return n;
}

inline long long degree(const ReducedDivisor& rd) { return rd.d0 + chip_count(rd); }

inline bool effective(const ReducedDivisor& rd) { return rd.d0 >= 0; }

// The reduced form as an explicit chip configuration.
inline Divisor spelled_out(const ChainOfLoops& chain, const ReducedDivisor& rd) {
    validate_reduced(chain, rd);
    Divisor div;
    if (rd.d0 != 0) {
        div.chips.emplace_back(PointOnGamma::basepoint(), rd.d0);
    }
    for (int i = 1; i <= chain.g(); ++i) {
        if (rd.x[i - 1] != 0) {
            div.chips.emplace_back(PointOnGamma::loop_point(i, rd.x[i - 1]), 1);
        }
    }
    return div;
}

}  // namespace tropbn
