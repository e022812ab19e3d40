#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/errors.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// One step of a path in Z^r: all-coordinates-down, +e_j, or stay put.
struct LatticeStep {
    enum class Type { down, basis, linger };

    Type type = Type::linger;
    int basis_index = -1;  // j for basis steps, unused otherwise

    bool operator==(const LatticeStep& o) const {
        return type == o.type && (type != Type::basis || basis_index == o.basis_index);
    }
};

// The walk p_0..p_g associated to a reduced divisor, plus the partition of
// step indices by direction: sets[j] holds the +e_j steps for j < r and
// sets[r] holds the down steps. Lingering steps appear in no set.
struct LatticePath {
    int r = 0;
    std::vector<std::vector<long long>> points;
    std::vector<LatticeStep> steps;
    std::vector<std::vector<int>> direction_sets;  // r+1 sets of 1-based step indices
};

// Open Weyl chamber y_0 > y_1 > ... > y_{r-1} > 0.
inline bool in_weyl_chamber(std::span<const long long> y) {
    for (size_t k = 0; k + 1 < y.size(); ++k) {
        if (y[k] <= y[k + 1]) return false;
    }
    return y.empty() || y.back() > 0;
}

inline std::vector<int> lingering_steps(const LatticePath& path) {
    std::vector<int> out;
    for (size_t i = 0; i < path.steps.size(); ++i) {
        if (path.steps[i].type == LatticeStep::Type::linger) {
            out.push_back(static_cast<int>(i) + 1);
        }
    }
    return out;
}

namespace detail {

// Basis directions whose congruence x_i = (p(j)+1)*m_i matches AND whose move
// stays inside the open chamber. On a generic chain at most one j can match;
// two matches certify a bad length ratio.
inline std::vector<int> matching_basis_steps(const ChainOfLoops& chain, int i,
                                             const std::vector<long long>& p, const Rat& xi) {
    std::vector<int> hits;
    const int r = static_cast<int>(p.size());
    if (!in_weyl_chamber(p)) return hits;
    const Rat period = chain.circumference(i);
    for (int j = 0; j < r; ++j) {
        std::vector<long long> moved = p;
        moved[j] += 1;
        if (!in_weyl_chamber(moved)) continue;
        if (xi == mod_period((p[j] + 1) * chain.m(i), period)) {
            hits.push_back(j);
        }
    }
    if (hits.size() > 1) {
        throw GenericityViolation("two basis directions match at loop " + std::to_string(i) +
                                  "; only a non-generic ratio allows this");
    }
    return hits;
}

}  // namespace detail

// Path through Z^r driven by the reduced divisor: start at
// (d0, d0-1, ..., d0-r+1); loop i contributes a down step when chipless, the
// matching +e_j step when its offset hits the distinguished congruence value
// with chamber-valid endpoints, and lingers otherwise.
inline LatticePath lingering_path(const ChainOfLoops& chain, const ReducedDivisor& rd, int r) {
    chain.require_generic();
    validate_reduced(chain, rd);
    if (r < 1) throw std::invalid_argument("lingering_path requires r >= 1");

    LatticePath path;
    path.r = r;
    path.direction_sets.assign(static_cast<size_t>(r) + 1, {});

    std::vector<long long> p(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) p[j] = rd.d0 - j;
    path.points.push_back(p);

    for (int i = 1; i <= chain.g(); ++i) {
        const Rat& xi = rd.x[i - 1];
        LatticeStep step;
        if (xi == 0) {
            step = LatticeStep{LatticeStep::Type::down, -1};
            for (auto& y : p) y -= 1;
            path.direction_sets[static_cast<size_t>(r)].push_back(i);
        } else {
            auto hits = detail::matching_basis_steps(chain, i, p, xi);
            if (!hits.empty()) {
                step = LatticeStep{LatticeStep::Type::basis, hits.front()};
                p[static_cast<size_t>(hits.front())] += 1;
                path.direction_sets[static_cast<size_t>(hits.front())].push_back(i);
            } else {
                step = LatticeStep{LatticeStep::Type::linger, -1};
            }
        }
        path.steps.push_back(step);
        path.points.push_back(p);
    }
    return path;
}

// rank >= 0 is plain effectivity; rank >= r >= 1 holds iff the whole walk
// stays inside the open chamber.
inline bool rank_at_least(const ChainOfLoops& chain, const ReducedDivisor& rd, int r) {
    if (r < 0) throw std::invalid_argument("rank_at_least: r must be nonnegative");
    if (r == 0) return rd.d0 >= 0;
    LatticePath path = lingering_path(chain, rd, r);
    return std::all_of(path.points.begin(), path.points.end(), [](const auto& p) {
        return in_weyl_chamber(p);
    });
}

// Baker-Norine rank of the class. The candidate range is capped by the
// degree; the step-up search stops at the first failing level (monotonicity
// is cross-checked against the discrete oracle in the tests, not assumed
// blindly).
inline long long rank(const ChainOfLoops& chain, const ReducedDivisor& rd) {
    chain.require_generic();
    if (!rank_at_least(chain, rd, 0)) return -1;
    const long long d = degree(rd);
    long long r = 0;
    while (r < d && rank_at_least(chain, rd, static_cast<int>(r) + 1)) ++r;
    return r;
}

}  // namespace tropbn
