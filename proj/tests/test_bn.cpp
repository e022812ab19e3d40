#include <gtest/gtest.h>

#include <algorithm>

#include "tropbn/brill_noether.hpp"
#include "tropbn/sampling.hpp"
#include "tropbn/theta.hpp"

using namespace tropbn;

namespace {

ChainOfLoops g2_chain() { return ChainOfLoops(2, {3, 5}, {1, 1}, {1}); }

std::vector<std::string> step_names(const TorusCell& cell) {
    std::vector<std::string> out;
    for (const LatticeStep& s : cell.path.steps) {
        switch (s.type) {
            case LatticeStep::Type::down: out.push_back("down"); break;
            case LatticeStep::Type::linger: out.push_back("linger"); break;
            case LatticeStep::Type::basis:
                out.push_back("e" + std::to_string(s.basis_index));
                break;
        }
    }
    return out;
}

// Chips sorted by position, for order-insensitive divisor comparison.
std::vector<std::pair<PointOnGamma, long long>> sorted_chips(const Divisor& d) {
    auto chips = d.chips;
    std::sort(chips.begin(), chips.end(), [](const auto& a, const auto& b) {
        auto key = [](const PointOnGamma& p) {
            return std::make_tuple(static_cast<int>(p.kind), p.index, p.offset);
        };
        return key(a.first) < key(b.first);
    });
    return chips;
}

}  // namespace

TEST(Cells, UniqueCellAtGenusTwo) {
    std::vector<TorusCell> cells = enumerate_cells(g2_chain(), 1, 2);
    ASSERT_EQ(cells.size(), 1u);
    const TorusCell& c = cells[0];
    EXPECT_EQ(c.d0, 1);
    EXPECT_EQ(cell_degree(c), 2);
    EXPECT_EQ(cell_dimension(c), 0);
    EXPECT_TRUE(c.free_loops.empty());
    EXPECT_EQ(step_names(c), (std::vector<std::string>{"e0", "down"}));
    EXPECT_EQ(c.fixed.at(1), Rat(2));
    EXPECT_EQ(c.fixed.at(2), Rat(0));
}

TEST(Cells, TwoWalksAtGenusFour) {
    ChainOfLoops chain = default_chain(4);
    std::vector<TorusCell> cells = enumerate_cells(chain, 1, 3);
    ASSERT_EQ(cells.size(), 2u);
    // Lexicographic by step labels, down before e0.
    EXPECT_EQ(step_names(cells[0]), (std::vector<std::string>{"e0", "down", "e0", "down"}));
    EXPECT_EQ(step_names(cells[1]), (std::vector<std::string>{"e0", "e0", "down", "down"}));
    for (const TorusCell& c : cells) {
        EXPECT_EQ(c.d0, 1);
        EXPECT_EQ(cell_degree(c), 3);
        EXPECT_EQ(cell_dimension(c), 0);
    }
    EXPECT_EQ(cells[0].fixed.at(1), Rat(3));
    EXPECT_EQ(cells[0].fixed.at(2), Rat(1));
    EXPECT_EQ(cells[0].fixed.at(3), Rat(2));
    EXPECT_EQ(cells[0].fixed.at(4), Rat(0));
    EXPECT_EQ(cells[1].fixed.at(1), Rat(3));
    EXPECT_EQ(cells[1].fixed.at(2), Rat(3));
    EXPECT_EQ(cells[1].fixed.at(3), Rat(0));
    EXPECT_EQ(cells[1].fixed.at(4), Rat(0));
}

TEST(Cells, CountsMatchTheCensus) {
    struct Case {
        int g, r;
        long long d, expect;
    };
    // binomial(g, rho) * psi(r, g-d+r-1) with rho = g-(r+1)(g-d+r).
    const Case cases[] = {
        {2, 1, 2, 1}, {4, 1, 3, 2}, {6, 1, 4, 5}, {6, 2, 6, 5},
        {3, 1, 3, 3}, {4, 1, 4, 6}, {5, 1, 4, 10}, {5, 2, 6, 10},
    };
    for (const Case& c : cases) {
        ChainOfLoops chain = default_chain(c.g);
        std::vector<TorusCell> cells = enumerate_cells(chain, c.r, c.d);
        EXPECT_EQ(static_cast<long long>(cells.size()), c.expect)
            << "g=" << c.g << " r=" << c.r << " d=" << c.d;
        const long long rho_v = rho(c.g, c.r, c.d);
        for (const TorusCell& cell : cells) {
            EXPECT_EQ(cell_dimension(cell), rho_v);
            EXPECT_EQ(cell_degree(cell), c.d);
        }
    }
    // Negative rho: the locus is empty.
    EXPECT_TRUE(enumerate_cells(default_chain(2), 2, 2).empty());
    EXPECT_THROW(enumerate_cells(default_chain(2), 0, 2), std::invalid_argument);
}

TEST(Cells, ChipSubsetsAtRankZero) {
    ChainOfLoops chain = g2_chain();
    std::vector<TorusCell> cells = w0_cells(chain, 1);
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0].free_loops, (std::vector<int>{1}));
    EXPECT_EQ(cells[0].fixed.at(2), Rat(0));
    EXPECT_EQ(cells[1].free_loops, (std::vector<int>{2}));
    EXPECT_EQ(cells[1].fixed.at(1), Rat(1));

    ChainOfLoops chain3 = ChainOfLoops(3, {4, 7, 9}, {1, 1, 1}, {1, 1});
    std::vector<TorusCell> cells3 = w0_cells(chain3, 2);
    ASSERT_EQ(cells3.size(), 3u);
    // Subsets in lexicographic order: {1,2}, {1,3}, {2,3}.
    EXPECT_EQ(cells3[0].fixed.at(3), Rat(0));
    EXPECT_EQ(cells3[1].fixed.at(2), Rat(1));
    EXPECT_EQ(cells3[2].fixed.at(1), Rat(2));

    EXPECT_EQ(w0_cells(chain, 0).size(), 1u);
    EXPECT_TRUE(w0_cells(chain, 0)[0].free_loops.empty());
    EXPECT_TRUE(w0_cells(chain, 3).empty());
    EXPECT_TRUE(w0_cells(chain, -1).empty());
}

TEST(Cells, SampledPointsHaveTheRank) {
    ChainOfLoops chain = default_chain(5);
    std::vector<TorusCell> cells = enumerate_cells(chain, 1, 4);
    RatRng rng(909);
    for (const TorusCell& cell : cells) {
        PicPoint p = sample_cell_point(chain, cell, rng);
        ReducedDivisor rd = jacobi_invert(chain, p);
        EXPECT_TRUE(rank_at_least(chain, rd, 1));
        TorusCell back = cell_of(chain, rd, 1);
        EXPECT_EQ(step_names(back), step_names(cell));
        EXPECT_EQ(back.d0, cell.d0);
        EXPECT_EQ(back.fixed, cell.fixed);
    }
}

TEST(VertexAvoiding, HandVerdicts) {
    ChainOfLoops chain = g2_chain();
    // The unique rank-1 degree-2 class keeps clear of every vertex.
    EXPECT_TRUE(is_vertex_avoiding(chain, ReducedDivisor{1, {Rat(2), Rat(0)}}, 1));
    // Degree 3 has rho = 2 but a chip-positioned walk lingers zero times.
    EXPECT_FALSE(is_vertex_avoiding(chain, ReducedDivisor{1, {Rat(2), Rat(3)}}, 1));
    // Rank too small is a precondition failure, not a verdict.
    EXPECT_THROW(is_vertex_avoiding(chain, ReducedDivisor{1, {Rat(1), Rat(0)}}, 1),
                 std::invalid_argument);
    EXPECT_THROW(is_vertex_avoiding(chain, ReducedDivisor{1, {Rat(0), Rat(0)}}, 0),
                 std::invalid_argument);
}

TEST(VertexAvoiding, ChipAtRightVertexRejected) {
    ChainOfLoops chain = default_chain(5);
    std::vector<TorusCell> cells = enumerate_cells(chain, 1, 4);
    for (const TorusCell& cell : cells) {
        ASSERT_EQ(cell.free_loops.size(), 1u);
        const int a = cell.free_loops[0];
        PicPoint p = cell_point(chain, cell, {chain.m(a)});
        ReducedDivisor rd = jacobi_invert(chain, p);
        ASSERT_TRUE(rank_at_least(chain, rd, 1));
        if (rd.x[static_cast<size_t>(a) - 1] == chain.m(a)) {
            EXPECT_FALSE(is_vertex_avoiding(chain, rd, 1));
        }
    }
}

TEST(VertexAvoiding, SamplerProducesWitnesses) {
    RatRng rng(321);
    ChainOfLoops c4 = default_chain(4);
    for (int trial = 0; trial < 10; ++trial) {
        ReducedDivisor rd = sample_vertex_avoiding(c4, 1, 3, rng);
        EXPECT_EQ(degree(rd), 3);
        EXPECT_TRUE(is_vertex_avoiding(c4, rd, 1));
    }
    ChainOfLoops c5 = default_chain(5);
    for (int trial = 0; trial < 10; ++trial) {
        ReducedDivisor rd = sample_vertex_avoiding(c5, 1, 4, rng, /*integer_offsets=*/true);
        EXPECT_TRUE(is_vertex_avoiding(c5, rd, 1));
        for (const Rat& x : rd.x) EXPECT_TRUE(is_integer(x));
    }
}

TEST(DistinguishedReps, GenusTwoHandCase) {
    ChainOfLoops chain = g2_chain();
    ReducedDivisor rd{1, {Rat(2), Rat(0)}};

    Divisor d1 = compute_Dj(chain, rd, 1, 1);
    Divisor want1;
    add_chip(want1, PointOnGamma::basepoint(), 1);
    add_chip(want1, PointOnGamma::loop_point(1, Rat(2)), 1);
    EXPECT_EQ(sorted_chips(d1), sorted_chips(want1));

    Divisor d0 = compute_Dj(chain, rd, 1, 0);
    Divisor want0;
    add_chip(want0, PointOnGamma::loop_point(2, Rat(5)), 1);
    add_chip(want0, PointOnGamma::loop_point(2, Rat(1)), 1);
    EXPECT_EQ(sorted_chips(d0), sorted_chips(want0));

    EXPECT_THROW(compute_Dj(chain, rd, 1, 2), std::invalid_argument);
    EXPECT_THROW(compute_Dj(chain, rd, 1, -1), std::invalid_argument);
}

TEST(DistinguishedReps, StayInTheClassWithForcedChips) {
    ChainOfLoops chain = default_chain(5);
    RatRng rng(515);
    for (int trial = 0; trial < 8; ++trial) {
        ReducedDivisor rd = sample_vertex_avoiding(chain, 1, 4, rng);
        for (int j = 0; j <= 1; ++j) {
            Divisor dj = compute_Dj(chain, rd, 1, j);
            EXPECT_EQ(degree(dj), 4);
            EXPECT_EQ(canonicalize(chain, dj), rd);
            long long at_base = 0, at_end = 0;
            for (const auto& [pt, mult] : dj.chips) {
                EXPECT_GT(mult, 0);
                if (pt.kind == PointOnGamma::Kind::v1) at_base += mult;
                if (pt.kind == PointOnGamma::Kind::loop && pt.index == 5 &&
                    pt.offset == chain.m(5)) {
                    at_end += mult;
                }
            }
            EXPECT_GE(at_base, j);
            EXPECT_GE(at_end, 1 - j);
        }
    }
}

TEST(LocalEquations, NeighborhoodDefaultsAreValid) {
    for (int g = 1; g <= 5; ++g) {
        ChainOfLoops chain = default_chain(g);
        NeighborhoodSpec spec = default_neighborhood(chain);
        EXPECT_NO_THROW(validate_neighborhood(chain, spec));
    }
    ChainOfLoops chain = g2_chain();
    NeighborhoodSpec bad = default_neighborhood(chain);
    bad.epsilon = Rat(2);
    EXPECT_THROW(validate_neighborhood(chain, bad), std::invalid_argument);
    bad = default_neighborhood(chain);
    bad.basepoints[0] = PointOnGamma::loop_point(1, Rat(0));
    EXPECT_THROW(validate_neighborhood(chain, bad), std::invalid_argument);
}

TEST(LocalEquations, GenusTwoHandCase) {
    ChainOfLoops chain = g2_chain();
    ReducedDivisor rd{1, {Rat(2), Rat(0)}};
    NeighborhoodSpec spec = default_neighborhood(chain);
    std::vector<LocalThetaPair> pairs = local_theta_equations(chain, rd, 1, spec);
    ASSERT_EQ(pairs.size(), 2u);

    // Direction class 0 covers loop 1, direction class 1 covers loop 2.
    EXPECT_EQ(pairs[0].direction, 0);
    EXPECT_EQ(pairs[0].step, 1);
    EXPECT_EQ(degree(pairs[0].e), 1);
    EXPECT_TRUE(pairs[0].e_prime.chips.empty());
    ASSERT_EQ(pairs[0].e.chips.size(), 1u);
    EXPECT_EQ(pairs[0].e.chips[0].first, PointOnGamma::loop_point(2, Rat(1)));

    EXPECT_EQ(pairs[1].direction, 1);
    EXPECT_EQ(pairs[1].step, 2);
    ASSERT_EQ(pairs[1].e.chips.size(), 1u);
    EXPECT_EQ(pairs[1].e.chips[0].first, PointOnGamma::basepoint());

    // [D] lies on each pair's translate.
    PicPoint aj_d = abel_jacobi(chain, rd);
    for (const LocalThetaPair& pair : pairs) {
        ThetaTranslate t = local_pair_translate(chain, pair);
        EXPECT_TRUE(theta_contains(chain, t, aj_d));
    }
}

TEST(LocalEquations, PairCountAndMembership) {
    ChainOfLoops chain = default_chain(4);
    RatRng rng(222);
    NeighborhoodSpec spec = default_neighborhood(chain);
    for (int trial = 0; trial < 6; ++trial) {
        ReducedDivisor rd = sample_vertex_avoiding(chain, 1, 3, rng);
        std::vector<LocalThetaPair> pairs = local_theta_equations(chain, rd, 1, spec);
        const long long rho_v = rho(4, 1, 3);
        EXPECT_EQ(static_cast<long long>(pairs.size()), 4 - rho_v);
        PicPoint aj_d = abel_jacobi(chain, rd);
        for (const LocalThetaPair& pair : pairs) {
            EXPECT_EQ(degree(pair.e), 1);
            EXPECT_EQ(degree(pair.e_prime), 4 - 3 + 1 - 1);
            ThetaTranslate t = local_pair_translate(chain, pair);
            EXPECT_TRUE(theta_contains(chain, t, aj_d));
        }
    }
}

TEST(ContainingTranslates, PassThroughTheClass) {
    RatRng rng(31);
    struct Case {
        int g, r;
        long long d;
    };
    for (const Case& c : {Case{5, 1, 4}, Case{4, 1, 4}}) {
        ChainOfLoops chain = default_chain(c.g);
        const long long rho_v = rho(c.g, c.r, c.d);
        for (int trial = 0; trial < 5; ++trial) {
            ReducedDivisor rd = sample_vertex_avoiding(chain, c.r, c.d, rng);
            std::vector<ThetaTranslate> ts = containing_translates(chain, rd, c.r, rng);
            EXPECT_EQ(static_cast<long long>(ts.size()), rho_v);
            PicPoint aj_d = abel_jacobi(chain, rd);
            LatticePath path = lingering_path(chain, rd, c.r);
            std::vector<int> free = lingering_steps(path);
            for (size_t k = 0; k < ts.size(); ++k) {
                EXPECT_TRUE(theta_contains(chain, ts[k], aj_d));
                FacetDescription desc = theta_facets(chain, ts[k]);
                const int a = free[k];
                EXPECT_EQ(desc.facets[static_cast<size_t>(a) - 1].value,
                          aj_d.point.coords[static_cast<size_t>(a) - 1]);
            }
        }
    }
}
