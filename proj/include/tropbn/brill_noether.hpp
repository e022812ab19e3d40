#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/errors.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/lattice.hpp"
#include "tropbn/rational.hpp"
#include "tropbn/sampling.hpp"
#include "tropbn/theta.hpp"

namespace tropbn {

// A translated subtorus covering part of the rank-r degree-d locus: the
// lingering steps of `path` leave their loop coordinates free, every other
// coordinate is pinned. d0 is the base pile shared by the divisors inside.
struct TorusCell {
    LatticePath path;
    std::vector<int> free_loops;   // 1-based, ascending
    std::map<int, Rat> fixed;      // loop index -> pinned coordinate
    long long d0 = 0;
};

inline long long cell_degree(const TorusCell& cell) {
    long long chips = 0;
    for (const LatticeStep& s : cell.path.steps) {
        if (s.type != LatticeStep::Type::down) ++chips;
    }
    return cell.d0 + chips;
}

inline long long cell_dimension(const TorusCell& cell) {
    return static_cast<long long>(cell.free_loops.size());
}

namespace detail {

// Pinned coordinate values along a path: a +e_j step at loop i lands the chip
// at (p_{i-1}(j)+1+n_i)*m_i and a down step leaves the bare crossing value
// n_i*m_i, where n_i counts chip-carrying steps beyond i.
inline std::map<int, Rat> fixed_coords_of_path(const ChainOfLoops& chain,
                                               const LatticePath& path) {
    const int g = chain.g();
    std::vector<long long> n(static_cast<size_t>(g) + 1, 0);
    for (int i = g - 1; i >= 0; --i) {
        n[i] = n[i + 1] + (path.steps[i].type != LatticeStep::Type::down ? 1 : 0);
    }
    std::map<int, Rat> fixed;
    for (int i = 1; i <= g; ++i) {
        const LatticeStep& s = path.steps[i - 1];
        if (s.type == LatticeStep::Type::linger) continue;
        long long count = n[i];  // chips strictly beyond loop i
        Rat value;
        if (s.type == LatticeStep::Type::basis) {
            value = (path.points[i - 1][s.basis_index] + 1 + count) * chain.m(i);
        } else {
            value = count * chain.m(i);
        }
        fixed[i] = mod_period(value, chain.circumference(i));
    }
    return fixed;
}

inline TorusCell cell_from_path(const ChainOfLoops& chain, const LatticePath& path,
                                long long d0) {
    TorusCell cell;
    cell.path = path;
    cell.free_loops = lingering_steps(path);
    cell.fixed = fixed_coords_of_path(chain, path);
    cell.d0 = d0;
    return cell;
}

struct CellDfs {
    const ChainOfLoops& chain;
    int r;
    long long down_budget;
    long long linger_budget;
    std::vector<TorusCell>& out;
    LatticePath path;

    void run(long long d0) {
        path.r = r;
        path.points.clear();
        path.steps.clear();
        path.direction_sets.assign(static_cast<size_t>(r) + 1, {});
        std::vector<long long> p0(static_cast<size_t>(r));
        for (int j = 0; j < r; ++j) p0[j] = d0 - j;
        if (!in_weyl_chamber(p0)) return;
        path.points.push_back(p0);
        step(1, down_budget, linger_budget, d0);
    }

    // Chosen +e_j steps must be unambiguous: the offset they pin could not
    // also be read as a different chamber-valid +e_k. Only a bad length
    // ratio can break this.
    void check_basis_unambiguous(int i, const std::vector<long long>& p, int j) const {
        const Rat period = chain.circumference(i);
        const Rat pinned = mod_period((p[static_cast<size_t>(j)] + 1) * chain.m(i), period);
        for (int k = 0; k < r; ++k) {
            if (k == j) continue;
            std::vector<long long> moved = p;
            moved[static_cast<size_t>(k)] += 1;
            if (!in_weyl_chamber(moved)) continue;
            if (mod_period((p[static_cast<size_t>(k)] + 1) * chain.m(i), period) == pinned) {
                throw GenericityViolation(
                    "ambiguous basis step at loop " + std::to_string(i) +
                    "; only a non-generic ratio allows this");
            }
        }
    }

    void step(int i, long long down_left, long long linger_left, long long d0) {
        const int g = chain.g();
        if (i > g) {
            if (down_left == 0 && linger_left == 0) {
                out.push_back(cell_from_path(chain, path, d0));
            }
            return;
        }
        const long long remaining = g - i + 1;
        if (down_left + linger_left > remaining) return;
        // Copy: pushing the next point may reallocate the vector.
        const std::vector<long long> p = path.points.back();

        // Label order: down, +e_0 .. +e_{r-1}, linger. The DFS therefore
        // emits cells sorted lexicographically by step labels.
        if (down_left > 0) {
            std::vector<long long> moved = p;
            for (auto& y : moved) y -= 1;
            if (in_weyl_chamber(moved)) {
                path.steps.push_back({LatticeStep::Type::down, -1});
                path.direction_sets[static_cast<size_t>(r)].push_back(i);
                path.points.push_back(std::move(moved));
                step(i + 1, down_left - 1, linger_left, d0);
                path.points.pop_back();
                path.direction_sets[static_cast<size_t>(r)].pop_back();
                path.steps.pop_back();
            }
        }
        const long long basis_left = remaining - down_left - linger_left;
        if (basis_left > 0) {
            for (int j = 0; j < r; ++j) {
                std::vector<long long> moved = p;
                moved[static_cast<size_t>(j)] += 1;
                if (!in_weyl_chamber(moved)) continue;
                check_basis_unambiguous(i, p, j);
                path.steps.push_back({LatticeStep::Type::basis, j});
                path.direction_sets[static_cast<size_t>(j)].push_back(i);
                path.points.push_back(std::move(moved));
                step(i + 1, down_left, linger_left, d0);
                path.points.pop_back();
                path.direction_sets[static_cast<size_t>(j)].pop_back();
                path.steps.pop_back();
            }
        }
        if (linger_left > 0) {
            path.steps.push_back({LatticeStep::Type::linger, -1});
            path.points.push_back(p);
            step(i + 1, down_left, linger_left - 1, d0);
            path.points.pop_back();
            path.steps.pop_back();
        }
    }
};

}  // namespace detail

// All maximal cells of the rank-r degree-d locus: chamber-confined walks with
// exactly rho lingering steps. Empty when rho < 0 (or when the budgets cannot
// fit, e.g. rho > g).
inline std::vector<TorusCell> enumerate_cells(const ChainOfLoops& chain, int r, long long d) {
    chain.require_generic();
    if (r < 1) throw std::invalid_argument("enumerate_cells requires r >= 1");
    const int g = chain.g();
    const long long rho_gd = rho(g, r, d);
    std::vector<TorusCell> cells;
    if (rho_gd < 0 || rho_gd > g) return cells;

    // d0 is forced to r by the direction-count bookkeeping, but enumerating
    // every consistent start keeps this routine an independent check of that
    // fact rather than a consumer of it.
    const long long d0_lo = std::max<long long>(r, d - g);
    for (long long d0 = d0_lo; d0 <= d; ++d0) {
        const long long chips = d - d0;
        const long long downs = g - chips;
        if (downs < 0 || rho_gd > chips) continue;
        detail::CellDfs dfs{chain, r, downs, rho_gd, cells, {}};
        dfs.run(d0);
    }
    return cells;
}

// Cells of the effective locus at rank 0: pick which d loops carry a chip.
// There is no Z^0 walk to speak of; steps are recorded as linger on the
// chip-carrying loops and down elsewhere, consistent with the r >= 1 shape.
inline std::vector<TorusCell> w0_cells(const ChainOfLoops& chain, long long d) {
    chain.require_generic();
    const int g = chain.g();
    if (d < 0 || d > g) return {};
    std::vector<TorusCell> cells;
    std::vector<int> subset;
    auto emit = [&]() {
        TorusCell cell;
        cell.path.r = 0;
        cell.path.direction_sets.assign(1, {});
        cell.path.points.assign(static_cast<size_t>(g) + 1, {});
        std::vector<bool> has_chip(static_cast<size_t>(g) + 1, false);
        for (int i : subset) has_chip[static_cast<size_t>(i)] = true;
        for (int i = 1; i <= g; ++i) {
            if (has_chip[static_cast<size_t>(i)]) {
                cell.path.steps.push_back({LatticeStep::Type::linger, -1});
            } else {
                cell.path.steps.push_back({LatticeStep::Type::down, -1});
                cell.path.direction_sets[0].push_back(i);
            }
        }
        cell.free_loops = subset;
        cell.fixed = detail::fixed_coords_of_path(chain, cell.path);
        cell.d0 = 0;
        cells.push_back(std::move(cell));
    };
    // Subsets in lexicographic order for deterministic output.
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<long long>(subset.size()) == d) {
            emit();
            return;
        }
        for (int i = next; i <= g; ++i) {
            if (g - i + 1 < d - static_cast<long long>(subset.size())) break;
            subset.push_back(i);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    rec(rec, 1);
    return cells;
}

// The cell through a divisor whose walk has exactly rho lingering steps.
inline TorusCell cell_of(const ChainOfLoops& chain, const ReducedDivisor& rd, int r) {
    LatticePath path = lingering_path(chain, rd, r);
    return detail::cell_from_path(chain, path, rd.d0);
}

// The torus point with the cell's pinned coordinates and the given values at
// the free ones (in free_loops order).
inline PicPoint cell_point(const ChainOfLoops& chain, const TorusCell& cell,
                           const std::vector<Rat>& free_values) {
    if (free_values.size() != cell.free_loops.size()) {
        throw std::invalid_argument("need one value per free coordinate");
    }
    JacobianPoint p = jac_zero(chain);
    for (const auto& [i, v] : cell.fixed) p.coords[i - 1] = v;
    for (size_t k = 0; k < cell.free_loops.size(); ++k) {
        p.coords[cell.free_loops[k] - 1] = free_values[k];
    }
    return PicPoint{cell_degree(cell), jac_normalize(chain, std::move(p))};
}

inline PicPoint sample_cell_point(const ChainOfLoops& chain, const TorusCell& cell,
                                  RatRng& rng) {
    // Open draws keep the point inside the cell: a zero free offset would
    // drop its chip and land on a neighboring cell's walk.
    std::vector<Rat> values;
    for (int i : cell.free_loops) values.push_back(rng.scaled_open(chain.circumference(i)));
    return cell_point(chain, cell, values);
}

// Vertex avoidance: the walk lingers exactly rho times, no chip sits at any
// w_i, and no chip offset hits a p_{i-1}(j)*m_i congruence value.
inline bool is_vertex_avoiding(const ChainOfLoops& chain, const ReducedDivisor& rd, int r) {
    if (r < 1) throw std::invalid_argument("is_vertex_avoiding requires r >= 1");
    if (!rank_at_least(chain, rd, r)) {
        throw std::invalid_argument("is_vertex_avoiding requires rank_at_least(divisor, r)");
    }
    const int g = chain.g();
    const long long rho_gd = rho(g, r, degree(rd));
    LatticePath path = lingering_path(chain, rd, r);
    if (static_cast<long long>(lingering_steps(path).size()) != rho_gd) return false;
    for (int i = 1; i <= g; ++i) {
        const Rat& xi = rd.x[i - 1];
        if (xi == chain.m(i)) return false;
        for (int j = 0; j < r; ++j) {
            const long long pj = path.points[i - 1][static_cast<size_t>(j)];
            if (xi == mod_period(pj * chain.m(i), chain.circumference(i))) return false;
        }
    }
    return true;
}

// Rejection-samples a vertex-avoiding class from a uniformly chosen maximal
// cell. integer_offsets restricts free coordinates to whole numbers (handy
// when a discrete cross-check must keep the subdivision scale at 1).
inline ReducedDivisor sample_vertex_avoiding(const ChainOfLoops& chain, int r, long long d,
                                             RatRng& rng, bool integer_offsets = false,
                                             int max_tries = 256) {
    std::vector<TorusCell> cells = enumerate_cells(chain, r, d);
    if (cells.empty()) {
        throw std::invalid_argument("no cells: rank locus is empty at these parameters");
    }
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        const TorusCell& cell = cells[static_cast<size_t>(rng.below(
            static_cast<long long>(cells.size())))];
        std::vector<Rat> values;
        for (int i : cell.free_loops) {
            if (integer_offsets && is_integer(chain.circumference(i))) {
                // Whole offset in [1, c-1], keeping any later discretization
                // at subdivision scale 1.
                long long c = numerator(chain.circumference(i)).convert_to<long long>();
                values.emplace_back(1 + rng.below(c - 1));
            } else {
                values.push_back(rng.scaled(chain.circumference(i)));
            }
        }
        PicPoint p = cell_point(chain, cell, values);
        ReducedDivisor rd = jacobi_invert(chain, p);
        if (rank_at_least(chain, rd, r) && is_vertex_avoiding(chain, rd, r)) {
            return rd;
        }
    }
    throw std::runtime_error("vertex-avoiding sampling exhausted its retry budget");
}

// Distinguished representative with j chips at v_1 and r-j at w_g: reduce
// the class shifted by those chips, then add them back.
inline Divisor compute_Dj(const ChainOfLoops& chain, const ReducedDivisor& rd, int r, int j) {
    chain.require_generic();
    if (j < 0 || j > r) throw std::invalid_argument("compute_Dj requires 0 <= j <= r");
    if (!is_vertex_avoiding(chain, rd, r)) {
        throw std::invalid_argument("compute_Dj requires a vertex-avoiding class");
    }
    const int g = chain.g();
    const long long d = degree(rd);
    const PointOnGamma wg = PointOnGamma::loop_point(g, chain.m(g));

    PicPoint target = abel_jacobi(chain, rd);
    // v_1 maps to 0, so only the w_g chips shift the torus point.
    target.point = jac_sub(chain, target.point,
                           jac_scale(chain, r - j, abel_jacobi_point(chain, wg)));
    target.degree = d - r;
    ReducedDivisor rest = jacobi_invert(chain, target);

    // The remainder must be effective and keep clear of every w_i; its
    // chipless loops must reproduce the walk's direction set A_j. A failure
    // here means the input was not vertex avoiding after all (or a fault).
    if (rest.d0 < 0) {
        throw std::logic_error("compute_Dj: remainder is not effective");
    }
    for (int i = 1; i <= g; ++i) {
        if (rest.x[i - 1] == chain.m(i)) {
            throw std::logic_error("compute_Dj: remainder touches a right vertex");
        }
    }
    LatticePath path = lingering_path(chain, rd, r);
    const std::vector<int>& a_j = path.direction_sets[static_cast<size_t>(j)];
    for (int i = 1; i <= g; ++i) {
        const bool missing =
            rest.x[i - 1] == 0 && (i < g || r == j);  // w_g chips cover loop g when j < r
        const bool expected = std::binary_search(a_j.begin(), a_j.end(), i);
        if (missing != expected) {
            throw std::logic_error("compute_Dj: chipless loops do not match direction set");
        }
    }

    Divisor out = spelled_out(chain, rest);
    add_chip(out, PointOnGamma::basepoint(), j);
    add_chip(out, wg, r - j);
    return out;
}

// Neighborhood data for the local theta description: interior basepoints
// (midpoint of each top edge) and a box radius epsilon. The radius must stay
// strictly below half the basepoint-to-vertex distance; the design value
// min(ell, m)/4 is halved as needed when some m_i >= ell_i ties it.
struct NeighborhoodSpec {
    std::vector<PointOnGamma> basepoints;  // one per loop
    Rat epsilon;
};

inline NeighborhoodSpec default_neighborhood(const ChainOfLoops& chain) {
    NeighborhoodSpec spec;
    Rat eps;
    Rat guard;  // half the min distance from a basepoint to its loop vertices
    for (int i = 1; i <= chain.g(); ++i) {
        spec.basepoints.push_back(
            PointOnGamma::loop_point(i, chain.m(i) + chain.ell(i) / 2));
        Rat e = std::min(chain.ell(i), chain.m(i)) / 4;
        Rat h = chain.ell(i) / 4;
        if (i == 1 || e < eps) eps = e;
        if (i == 1 || h < guard) guard = h;
    }
    while (eps >= guard) eps /= 2;
    spec.epsilon = eps;
    return spec;
}

inline void validate_neighborhood(const ChainOfLoops& chain, const NeighborhoodSpec& spec) {
    if (spec.basepoints.size() != static_cast<size_t>(chain.g())) {
        throw std::invalid_argument("neighborhood needs one basepoint per loop");
    }
    if (spec.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    for (int i = 1; i <= chain.g(); ++i) {
        const PointOnGamma& p = spec.basepoints[i - 1];
        if (p.kind != PointOnGamma::Kind::loop || p.index != i) {
            throw std::invalid_argument("basepoint " + std::to_string(i) +
                                        " must sit on loop " + std::to_string(i));
        }
        validate_point(chain, p);
        if (p.offset == 0 || p.offset == chain.m(i)) {
            throw std::invalid_argument("basepoints must avoid the loop vertices");
        }
        // Distance to {v_i, w_i} on the circle.
        Rat c = chain.circumference(i);
        Rat around_v = c - p.offset;
        Rat dv = std::min(p.offset, around_v);
        Rat to_w = p.offset > chain.m(i) ? Rat(p.offset - chain.m(i))
                                         : Rat(chain.m(i) - p.offset);
        Rat around_w = c - to_w;
        Rat dw = std::min(to_w, around_w);
        if (2 * spec.epsilon >= std::min(dv, dw)) {
            throw std::invalid_argument("epsilon too large for basepoint " + std::to_string(i));
        }
    }
}

// One local equation per (direction class i, step j in A_i): the theta
// translate by [D - E_i + E'_{i,j}], remembered through its chip data
// E_i = i*v_1 + (r-i)*w_g and E'_{i,j} = sum of basepoints at A_i minus j.
struct LocalThetaPair {
    int direction = 0;  // i
    int step = 0;       // j, a 1-based loop index in A_i
    Divisor e;
    Divisor e_prime;
};

inline std::vector<LocalThetaPair> local_theta_equations(const ChainOfLoops& chain,
                                                         const ReducedDivisor& rd, int r,
                                                         const NeighborhoodSpec& spec) {
    chain.require_generic();
    validate_neighborhood(chain, spec);
    if (!is_vertex_avoiding(chain, rd, r)) {
        throw std::invalid_argument("local_theta_equations requires a vertex-avoiding class");
    }
    const int g = chain.g();
    const long long d = degree(rd);
    const long long s = g - d + r;
    LatticePath path = lingering_path(chain, rd, r);

    std::vector<LocalThetaPair> pairs;
    for (int i = 0; i <= r; ++i) {
        const std::vector<int>& a_i = path.direction_sets[static_cast<size_t>(i)];
        if (static_cast<long long>(a_i.size()) != s) {
            throw std::logic_error("direction class size violates degree bookkeeping");
        }
        for (int j : a_i) {
            LocalThetaPair pair;
            pair.direction = i;
            pair.step = j;
            add_chip(pair.e, PointOnGamma::basepoint(), i);
            add_chip(pair.e, PointOnGamma::loop_point(g, chain.m(g)), r - i);
            for (int k : a_i) {
                if (k != j) add_chip(pair.e_prime, spec.basepoints[k - 1], 1);
            }
            pairs.push_back(std::move(pair));
        }
    }
    return pairs;
}

// The translate a local pair tests membership against: theta shifted by
// [E - E'], so a degree-d class [D'] lies on it iff [D' - E + E'] is
// effective at degree g-1.
inline ThetaTranslate local_pair_translate(const ChainOfLoops& chain,
                                           const LocalThetaPair& pair) {
    PicPoint e = abel_jacobi(chain, pair.e);
    PicPoint ep = abel_jacobi(chain, pair.e_prime);
    return ThetaTranslate{pic_sub(chain, e, ep), std::make_pair(pair.e, pair.e_prime)};
}

// Translates that contain [D] and cut its cell transversally: one per
// lingering step a, shifted by [D - E] where E places a random point on
// every loop except gamma_a. The shift leaves facet a passing exactly
// through [D]. Draw quality is certified, with redraws on failure.
inline std::vector<ThetaTranslate> containing_translates(const ChainOfLoops& chain,
                                                         const ReducedDivisor& rd, int r,
                                                         RatRng& rng, int max_redraws = 16) {
    chain.require_generic();
    if (!is_vertex_avoiding(chain, rd, r)) {
        throw std::invalid_argument("containing_translates requires a vertex-avoiding class");
    }
    const int g = chain.g();
    LatticePath path = lingering_path(chain, rd, r);
    std::vector<int> free = lingering_steps(path);
    PicPoint aj_d = abel_jacobi(chain, rd);

    for (int attempt = 0; attempt <= max_redraws; ++attempt) {
        std::vector<ThetaTranslate> translates;
        for (int a : free) {
            Divisor e;
            for (int k = 1; k <= g; ++k) {
                if (k == a) continue;
                add_chip(e, PointOnGamma::loop_point(k, rng.scaled_open(chain.circumference(k))),
                         1);
            }
            PicPoint shift = pic_sub(chain, aj_d, abel_jacobi(chain, e));
            translates.push_back(ThetaTranslate{shift, std::make_pair(e, Divisor{})});
        }

        bool good = true;
        std::vector<FacetDescription> descs;
        for (const ThetaTranslate& t : translates) {
            if (!theta_contains(chain, t, aj_d)) {
                throw std::logic_error("containing translate misses its defining class");
            }
            descs.push_back(theta_facets(chain, t));
        }
        // Facet through [D] at the designated free coordinate, by construction.
        for (size_t t = 0; t < translates.size(); ++t) {
            if (descs[t].facets[static_cast<size_t>(free[t]) - 1].value !=
                aj_d.point.coords[static_cast<size_t>(free[t]) - 1]) {
                throw std::logic_error("containing translate facet misses the class offset");
            }
        }
        // Transversality certificate: distinct tuples must never share a
        // facet value at any coordinate, else assignments can collide.
        for (size_t t = 0; good && t < translates.size(); ++t) {
            for (size_t u = t + 1; good && u < translates.size(); ++u) {
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
    throw DegenerateIntersection("containing_translates exhausted its redraw budget");
}

}  // namespace tropbn
