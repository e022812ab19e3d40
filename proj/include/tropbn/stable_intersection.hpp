#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropbn/brill_noether.hpp"
#include "tropbn/chain.hpp"
#include "tropbn/errors.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/sampling.hpp"
#include "tropbn/theta.hpp"

namespace tropbn {

struct JacIntersectionPoint {
    JacobianPoint point;
    long long multiplicity = 1;
};

struct PicIntersectionPoint {
    PicPoint point;
    long long multiplicity = 1;
};

inline bool lex_less(const JacobianPoint& a, const JacobianPoint& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
}

// Stable intersection of g theta translates. In general position each of the
// g! translate-to-coordinate assignments pins a unique point of multiplicity
// one; any shared facet value at a common coordinate is a degeneracy.
inline std::vector<JacIntersectionPoint> intersect_translates(
    const ChainOfLoops& chain, const std::vector<ThetaTranslate>& translates) {
    chain.require_generic();
    const int g = chain.g();
    if (static_cast<int>(translates.size()) != g) {
        throw std::invalid_argument("need exactly g translates");
    }
    std::vector<FacetDescription> descs;
    for (const ThetaTranslate& t : translates) descs.push_back(theta_facets(chain, t));

    for (size_t t = 0; t < descs.size(); ++t) {
        for (size_t u = t + 1; u < descs.size(); ++u) {
            for (int k = 1; k <= g; ++k) {
                if (descs[t].facets[k - 1].value == descs[u].facets[k - 1].value) {
                    throw DegenerateIntersection(
                        "translates " + std::to_string(t) + " and " + std::to_string(u) +
                        " share a facet value at coordinate " + std::to_string(k));
                }
            }
        }
    }

    std::vector<int> perm(static_cast<size_t>(g));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<JacIntersectionPoint> points;
    do {
        JacobianPoint p = jac_zero(chain);
        for (int k = 1; k <= g; ++k) {
            p.coords[k - 1] = descs[static_cast<size_t>(perm[k - 1])].facets[k - 1].value;
        }
        points.push_back({std::move(p), 1});
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return lex_less(a.point, b.point);
    });
    for (size_t k = 0; k + 1 < points.size(); ++k) {
        if (points[k].point == points[k + 1].point) {
            throw DegenerateIntersection("assignment points collide");
        }
    }
    return points;
}

// Stable intersection of the rank locus (as its cells) with rho theta
// translates: per cell, every injective assignment of translates to free
// coordinates pins one point. Collisions anywhere mean the tuple is not in
// general position.
inline std::vector<PicIntersectionPoint> intersect_cells_with_translates(
    const ChainOfLoops& chain, const std::vector<TorusCell>& cells,
    const std::vector<ThetaTranslate>& translates) {
    chain.require_generic();
    std::vector<FacetDescription> descs;
    for (const ThetaTranslate& t : translates) descs.push_back(theta_facets(chain, t));

    std::vector<PicIntersectionPoint> points;
    for (const TorusCell& cell : cells) {
        if (cell.free_loops.size() != translates.size()) {
            throw std::invalid_argument("cell dimension differs from translate count");
        }
        std::vector<int> perm(translates.size());
        std::iota(perm.begin(), perm.end(), 0);
        const long long d = cell_degree(cell);
        do {
            JacobianPoint p = jac_zero(chain);
            for (const auto& [i, v] : cell.fixed) p.coords[i - 1] = v;
            for (size_t k = 0; k < cell.free_loops.size(); ++k) {
                const int coord = cell.free_loops[k];
                p.coords[coord - 1] =
                    descs[static_cast<size_t>(perm[k])].facets[coord - 1].value;
            }
            points.push_back({PicPoint{d, jac_normalize(chain, std::move(p))}, 1});
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        if (a.point.degree != b.point.degree) return a.point.degree < b.point.degree;
        return lex_less(a.point.point, b.point.point);
    });
    for (size_t k = 0; k + 1 < points.size(); ++k) {
        if (points[k].point == points[k + 1].point) {
            throw DegenerateIntersection("assignment points collide across cells");
        }
    }
    return points;
}

// Seeded tuple of count torus shifts whose translates are pairwise
// nondegenerate, redrawing as needed.
inline std::vector<ThetaTranslate> draw_generic_shifts(const ChainOfLoops& chain, int count,
                                                       RatRng& rng, int max_redraws = 16) {
    const int g = chain.g();
    for (int attempt = 0; attempt <= max_redraws; ++attempt) {
        std::vector<ThetaTranslate> translates;
        for (int t = 0; t < count; ++t) {
            translates.push_back(
                ThetaTranslate{PicPoint{0, random_jac_point(chain, rng)}, std::nullopt});
        }
        bool good = true;
        std::vector<FacetDescription> descs;
        for (const ThetaTranslate& t : translates) descs.push_back(theta_facets(chain, t));
        for (size_t t = 0; good && t < descs.size(); ++t) {
            for (size_t u = t + 1; good && u < descs.size(); ++u) {
                for (int k = 1; k <= g; ++k) {
                    if (descs[t].facets[k - 1].value == descs[u].facets[k - 1].value) {
                        good = false;
                        break;
                    }
                }
            }
        }
        if (good) return translates;
    }
    throw DegenerateIntersection("draw_generic_shifts exhausted its redraw budget");
}

}  // namespace tropbn
