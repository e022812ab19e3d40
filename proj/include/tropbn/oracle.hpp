#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/errors.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/lattice.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// Unit subdivision of the chain at a given scale: every edge of length L
// becomes scale*L unit edges. Multigraph (two-vertex loops have a double
// edge), no self-loops. Vertex ids are assigned loop by loop, then bridge by
// bridge, so layouts are deterministic.
struct DiscreteGraph {
    long long scale = 1;
    int base = 0;  // v_1
    std::vector<std::vector<int>> adj;  // parallel edges repeat entries

    std::vector<int> v_id;              // id of v_i (= w_{i-1} across a zero bridge)
    std::vector<int> first_interior;    // id of loop i's offset-1 vertex
    std::vector<long long> loop_size;   // scale*(ell_i+m_i)
    std::vector<int> bridge_start;      // id of first interior bridge vertex, -1 if none
    std::vector<long long> bridge_size; // scale*b_i

    int vertex_count() const { return static_cast<int>(adj.size()); }

    long long edge_count() const {
        long long twice = 0;
        for (const auto& nbrs : adj) twice += static_cast<long long>(nbrs.size());
        return twice / 2;
    }

    // id of (loop i, unit offset u), u in [0, loop_size). Interior ids are
    // contiguous from first_interior whether or not v_i was aliased.
    int loop_vertex(int i, long long u) const {
        if (u == 0) return v_id[static_cast<size_t>(i) - 1];
        return first_interior[static_cast<size_t>(i) - 1] + static_cast<int>(u) - 1;
    }
};

using DiscreteDivisor = std::vector<long long>;

namespace detail {

inline long long scaled_units(const Rat& length, long long scale, const char* what) {
    Rat units = length * scale;
    if (!is_integer(units)) {
        throw std::invalid_argument(std::string(what) + " is not integral at this scale");
    }
    return numerator(units).convert_to<long long>();
}

}  // namespace detail

// Smallest scale making every edge length a whole number of units.
inline long long minimal_scale(const ChainOfLoops& chain) {
    Int l = 1;
    for (int i = 1; i <= chain.g(); ++i) {
        l = int_lcm(l, denominator(chain.ell(i)));
        l = int_lcm(l, denominator(chain.m(i)));
    }
    for (int i = 1; i < chain.g(); ++i) {
        l = int_lcm(l, denominator(chain.bridge(i)));
    }
    return l.convert_to<long long>();
}

inline DiscreteGraph discretize(const ChainOfLoops& chain, long long scale) {
    if (scale < 1) throw std::invalid_argument("scale must be a positive integer");
    const int g = chain.g();
    DiscreteGraph graph;
    graph.scale = scale;
    graph.v_id.resize(static_cast<size_t>(g));
    graph.first_interior.resize(static_cast<size_t>(g));
    graph.loop_size.resize(static_cast<size_t>(g));
    graph.bridge_start.assign(static_cast<size_t>(std::max(0, g - 1)), -1);
    graph.bridge_size.assign(static_cast<size_t>(std::max(0, g - 1)), 0);

    // Id layout, loop by loop. A zero-length bridge identifies v_{i+1} with
    // w_i, so that loop reuses the earlier id for offset 0.
    std::vector<long long> msize(static_cast<size_t>(g));
    int next_id = 0;
    for (int i = 1; i <= g; ++i) {
        graph.loop_size[i - 1] =
            detail::scaled_units(chain.circumference(i), scale, "loop circumference");
        msize[i - 1] = detail::scaled_units(chain.m(i), scale, "bottom edge length");
        detail::scaled_units(chain.ell(i), scale, "top edge length");
        const bool aliased = i > 1 && chain.bridge(i - 1) == 0;
        if (aliased) {
            // w_{i-1} sits at offset msize on loop i-1.
            graph.v_id[i - 1] = graph.loop_vertex(i - 1, msize[i - 2]);
        } else {
            graph.v_id[i - 1] = next_id++;
        }
        graph.first_interior[i - 1] = next_id;
        next_id += static_cast<int>(graph.loop_size[i - 1]) - 1;
        if (i < g) {
            graph.bridge_size[i - 1] =
                detail::scaled_units(chain.bridge(i), scale, "bridge length");
            if (graph.bridge_size[i - 1] > 1) {
                graph.bridge_start[i - 1] = next_id;
                next_id += static_cast<int>(graph.bridge_size[i - 1]) - 1;
            }
        }
    }
    graph.adj.assign(static_cast<size_t>(next_id), {});

    auto add_edge = [&](int a, int b) {
        graph.adj[static_cast<size_t>(a)].push_back(b);
        graph.adj[static_cast<size_t>(b)].push_back(a);
    };

    for (int i = 1; i <= g; ++i) {
        const long long c = graph.loop_size[i - 1];
        for (long long u = 0; u < c; ++u) {
            add_edge(graph.loop_vertex(i, u), graph.loop_vertex(i, (u + 1) % c));
        }
        if (i < g && graph.bridge_size[i - 1] > 0) {
            const long long b = graph.bridge_size[i - 1];
            int prev = graph.loop_vertex(i, msize[i - 1]);  // w_i
            for (long long u = 1; u < b; ++u) {
                int cur = graph.bridge_start[i - 1] + static_cast<int>(u) - 1;
                add_edge(prev, cur);
                prev = cur;
            }
            add_edge(prev, graph.v_id[static_cast<size_t>(i)]);  // v_{i+1}
        }
    }
    graph.base = graph.v_id[0];
    return graph;
}

// Vertex holding a given point; the point's offset must be a whole number of
// units at the graph's scale.
inline int vertex_of_point(const ChainOfLoops& chain, const DiscreteGraph& graph,
                           const PointOnGamma& p) {
    validate_point(chain, p);
    switch (p.kind) {
        case PointOnGamma::Kind::v1:
            return graph.base;
        case PointOnGamma::Kind::loop: {
            long long u = detail::scaled_units(p.offset, graph.scale, "loop offset");
            return graph.loop_vertex(p.index, u);
        }
        case PointOnGamma::Kind::bridge: {
            long long u = detail::scaled_units(p.offset, graph.scale, "bridge offset");
            long long b = graph.bridge_size[static_cast<size_t>(p.index) - 1];
            if (u == b) {
                return graph.v_id[static_cast<size_t>(p.index)];  // v_{i+1}
            }
            return graph.bridge_start[static_cast<size_t>(p.index) - 1] +
                   static_cast<int>(u) - 1;
        }
    }
    throw std::invalid_argument("unknown point kind");
}

inline DiscreteDivisor to_discrete(const ChainOfLoops& chain, const DiscreteGraph& graph,
                                   const Divisor& div) {
    validate_divisor(chain, div);
    DiscreteDivisor d(static_cast<size_t>(graph.vertex_count()), 0);
    for (const auto& [pt, mult] : div.chips) {
        d[static_cast<size_t>(vertex_of_point(chain, graph, pt))] += mult;
    }
    return d;
}

inline long long degree(const DiscreteDivisor& d) {
    long long sum = 0;
    for (long long v : d) sum += v;
    return sum;
}

// Base-vertex reduced form via Dhar's burning algorithm, in two phases.
// Phase one clears debt: walking breadth-first layers from the base outward,
// firing the ball inside layer k feeds every layer-k vertex through its BFS
// edges, so enough firings make the layer nonnegative without disturbing the
// layers already cleared (ball boundaries only cross one layer). Phase two
// runs the standard burning loop, firing the whole unburnt set as many times
// as all its members can afford at once.
inline DiscreteDivisor dhar_reduce(const DiscreteGraph& graph, DiscreteDivisor chips) {
    const int V = graph.vertex_count();
    if (static_cast<int>(chips.size()) != V) {
        throw std::invalid_argument("divisor size differs from vertex count");
    }
    const int base = graph.base;

    // BFS layers.
    std::vector<int> layer(static_cast<size_t>(V), -1);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(V));
    layer[static_cast<size_t>(base)] = 0;
    order.push_back(base);
    for (size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        for (int v : graph.adj[static_cast<size_t>(u)]) {
            if (layer[static_cast<size_t>(v)] < 0) {
                layer[static_cast<size_t>(v)] = layer[static_cast<size_t>(u)] + 1;
                order.push_back(v);
            }
        }
    }
    int max_layer = 0;
    for (int v = 0; v < V; ++v) max_layer = std::max(max_layer, layer[static_cast<size_t>(v)]);

    // Phase 1: collect debt at the base, outermost layer first.
    for (int k = max_layer; k >= 1; --k) {
        long long fires = 0;
        for (int v = 0; v < V; ++v) {
            if (layer[static_cast<size_t>(v)] != k || chips[static_cast<size_t>(v)] >= 0) {
                continue;
            }
            long long feed = 0;  // edges from v into layer k-1
            for (int u : graph.adj[static_cast<size_t>(v)]) {
                if (layer[static_cast<size_t>(u)] == k - 1) ++feed;
            }
            long long need = (-chips[static_cast<size_t>(v)] + feed - 1) / feed;
            fires = std::max(fires, need);
        }
        if (fires == 0) continue;
        for (int v = 0; v < V; ++v) {
            if (layer[static_cast<size_t>(v)] > k) continue;
            for (int u : graph.adj[static_cast<size_t>(v)]) {
                // Ball = layers < k; boundary edges go layer k-1 -> layer k.
                if (layer[static_cast<size_t>(v)] == k - 1 &&
                    layer[static_cast<size_t>(u)] == k) {
                    chips[static_cast<size_t>(v)] -= fires;
                    chips[static_cast<size_t>(u)] += fires;
                }
            }
        }
    }

    // Phase 2: burn from the base; fire the surviving set en masse.
    std::vector<long long> burn_count(static_cast<size_t>(V));
    std::vector<bool> burnt(static_cast<size_t>(V));
    std::vector<int> queue;
    while (true) {
        std::fill(burn_count.begin(), burn_count.end(), 0);
        std::fill(burnt.begin(), burnt.end(), false);
        queue.clear();
        burnt[static_cast<size_t>(base)] = true;
        queue.push_back(base);
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int v : graph.adj[static_cast<size_t>(u)]) {
                if (burnt[static_cast<size_t>(v)]) continue;
                if (++burn_count[static_cast<size_t>(v)] > chips[static_cast<size_t>(v)]) {
                    burnt[static_cast<size_t>(v)] = true;
                    queue.push_back(v);
                }
            }
        }
        if (static_cast<int>(queue.size()) == V) return chips;

        long long t = -1;
        for (int v = 0; v < V; ++v) {
            if (burnt[static_cast<size_t>(v)] || burn_count[static_cast<size_t>(v)] == 0) {
                continue;
            }
            long long afford = chips[static_cast<size_t>(v)] / burn_count[static_cast<size_t>(v)];
            t = t < 0 ? afford : std::min(t, afford);
        }
        // Unburnt vertices keep burn_count <= chips, so every boundary vertex
        // affords at least one firing; t < 1 would mean a broken invariant.
        if (t < 1) throw std::logic_error("burning fixpoint with no affordable firing");
        for (int v = 0; v < V; ++v) {
            if (burnt[static_cast<size_t>(v)]) continue;
            for (int u : graph.adj[static_cast<size_t>(v)]) {
                if (burnt[static_cast<size_t>(u)]) {
                    chips[static_cast<size_t>(v)] -= t;
                    chips[static_cast<size_t>(u)] += t;
                }
            }
        }
    }
}

struct OracleCaps {
    int max_vertices = 600;
    long long max_enumeration = 5'000'000;  // bound on (V multichoose r) per level
};

namespace detail {

inline Int multichoose(long long n, long long k) { return binomial(n + k - 1, k); }

// Visits every size-k multiset of {0..n-1} in lexicographic order until the
// callback returns false.
template <typename Fn>
inline void for_each_multiset(int n, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<size_t>(k), 0);
    if (k == 0) {
        fn(idx);
        return;
    }
    while (true) {
        if (!fn(idx)) return;
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - 1) --pos;
        if (pos < 0) return;
        int next = idx[static_cast<size_t>(pos)] + 1;
        for (int q = pos; q < k; ++q) idx[static_cast<size_t>(q)] = next;
    }
}

inline void check_caps(const DiscreteGraph& graph, long long level, const OracleCaps& caps) {
    if (graph.vertex_count() > caps.max_vertices) {
        throw ComplexityCapExceeded("discrete model has " +
                                    std::to_string(graph.vertex_count()) +
                                    " vertices, cap is " + std::to_string(caps.max_vertices));
    }
    Int combos = multichoose(graph.vertex_count(), level);
    if (combos > caps.max_enumeration) {
        throw ComplexityCapExceeded("level-" + std::to_string(level) + " sweep needs " +
                                    combos.str() + " candidates, cap is " +
                                    std::to_string(caps.max_enumeration));
    }
}

}  // namespace detail

// Baker-Norine rank by brute force: rank >= r iff subtracting every degree-r
// effective divisor leaves an effective class. Level sweeps stop at the first
// failing witness, which certifies the final value.
inline long long discrete_rank(const DiscreteGraph& graph, const DiscreteDivisor& divisor,
                               const OracleCaps& caps = OracleCaps{}) {
    if (degree(divisor) < 0) return -1;
    const int V = graph.vertex_count();
    DiscreteDivisor reduced = dhar_reduce(graph, divisor);
    if (reduced[static_cast<size_t>(graph.base)] < 0) return -1;

    long long r = 0;
    while (true) {
        const long long level = r + 1;
        detail::check_caps(graph, level, caps);
        bool all_pass = true;
        detail::for_each_multiset(V, static_cast<int>(level), [&](const std::vector<int>& idx) {
            DiscreteDivisor probe = reduced;
            for (int v : idx) --probe[static_cast<size_t>(v)];
            DiscreteDivisor out = dhar_reduce(graph, std::move(probe));
            if (out[static_cast<size_t>(graph.base)] < 0) {
                all_pass = false;
                return false;
            }
            return true;
        });
        if (!all_pass) return r;
        ++r;
    }
}

// Number of effective divisors in the class of `divisor` (degree d), by
// sweeping every effective degree-d configuration and comparing reduced
// forms.
inline long long count_effective_reps(const DiscreteGraph& graph,
                                      const DiscreteDivisor& divisor,
                                      const OracleCaps& caps = OracleCaps{}) {
    const long long d = degree(divisor);
    if (d < 0) return 0;
    const int V = graph.vertex_count();
    detail::check_caps(graph, d, caps);
    DiscreteDivisor target = dhar_reduce(graph, divisor);
    long long count = 0;
    detail::for_each_multiset(V, static_cast<int>(d), [&](const std::vector<int>& idx) {
        DiscreteDivisor probe(static_cast<size_t>(V), 0);
        for (int v : idx) ++probe[static_cast<size_t>(v)];
        if (dhar_reduce(graph, std::move(probe)) == target) ++count;
        return true;
    });
    return count;
}

struct CrossCheckReport {
    std::optional<long long> rank_lattice;  // empty when genericity failed
    long long rank_oracle = 0;
    bool reduce_match = false;
    long long scale = 1;
    int vertices = 0;
    bool genericity_violation = false;

    bool agrees() const {
        return !genericity_violation && rank_lattice.has_value() &&
               *rank_lattice == rank_oracle && reduce_match;
    }
};

// Runs both pipelines on one divisor: exact reduced-form + walk rank against
// discretized Dhar + brute-force rank. The subdivision scale is the smallest
// one resolving the chain and every chip offset, times scale_multiplier for
// subdivision-invariance checks.
inline CrossCheckReport cross_check(const ChainOfLoops& chain, const Divisor& divisor,
                                    const OracleCaps& caps = OracleCaps{},
                                    long long scale_multiplier = 1) {
    validate_divisor(chain, divisor);
    if (scale_multiplier < 1) throw std::invalid_argument("scale multiplier must be >= 1");
    CrossCheckReport report;

    Int scale = minimal_scale(chain);
    for (const auto& [pt, mult] : divisor.chips) {
        if (pt.kind != PointOnGamma::Kind::v1) {
            scale = int_lcm(scale, denominator(pt.offset));
        }
    }
    scale *= scale_multiplier;
    report.scale = scale.convert_to<long long>();

    DiscreteGraph graph = discretize(chain, report.scale);
    report.vertices = graph.vertex_count();
    DiscreteDivisor dd = to_discrete(chain, graph, divisor);
    report.rank_oracle = discrete_rank(graph, dd, caps);
    DiscreteDivisor dhar = dhar_reduce(graph, dd);

    try {
        ReducedDivisor rd = canonicalize(chain, divisor);
        report.rank_lattice = rank(chain, rd);
        report.reduce_match = to_discrete(chain, graph, spelled_out(chain, rd)) == dhar;
    } catch (const GenericityViolation&) {
        report.genericity_violation = true;
    }
    return report;
}

}  // namespace tropbn
