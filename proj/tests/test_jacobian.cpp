#include <gtest/gtest.h>

#include "tropbn/divisor.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/sampling.hpp"

using namespace tropbn;

namespace {

ChainOfLoops g2_chain() { return ChainOfLoops(2, {3, 5}, {1, 1}, {1}); }

}  // namespace

TEST(Divisor, PointValidation) {
    ChainOfLoops chain = g2_chain();
    EXPECT_NO_THROW(validate_point(chain, PointOnGamma::basepoint()));
    EXPECT_NO_THROW(validate_point(chain, PointOnGamma::loop_point(1, Rat(7, 2))));
    EXPECT_NO_THROW(validate_point(chain, PointOnGamma::bridge_point(1, Rat(1))));
    // Loop offsets live in [0, circumference).
    EXPECT_THROW(validate_point(chain, PointOnGamma::loop_point(1, Rat(4))), std::invalid_argument);
    EXPECT_THROW(validate_point(chain, PointOnGamma::loop_point(1, Rat(-1))), std::invalid_argument);
    EXPECT_THROW(validate_point(chain, PointOnGamma::loop_point(3, Rat(0))), std::invalid_argument);
    // Bridge offsets live in (0, length]; t=0 is the left vertex's loop.
    EXPECT_THROW(validate_point(chain, PointOnGamma::bridge_point(1, Rat(0))), std::invalid_argument);
    EXPECT_THROW(validate_point(chain, PointOnGamma::bridge_point(1, Rat(2))), std::invalid_argument);
    ChainOfLoops merged(2, {3, 5}, {1, 1}, {0});
    EXPECT_THROW(validate_point(merged, PointOnGamma::bridge_point(1, Rat(1, 2))),
                 std::invalid_argument);
}

TEST(Divisor, ReducedValidation) {
    ChainOfLoops chain = g2_chain();
    ReducedDivisor rd{1, {Rat(2), Rat(0)}};
    EXPECT_NO_THROW(validate_reduced(chain, rd));
    EXPECT_EQ(degree(rd), 2);
    EXPECT_EQ(chip_count(rd), 1);
    EXPECT_TRUE(effective(rd));
    EXPECT_FALSE(effective(ReducedDivisor{-1, {Rat(0), Rat(0)}}));
    EXPECT_THROW(validate_reduced(chain, ReducedDivisor{0, {Rat(2)}}), std::invalid_argument);
    EXPECT_THROW(validate_reduced(chain, ReducedDivisor{0, {Rat(4), Rat(0)}}),
                 std::invalid_argument);
}

TEST(Divisor, AddChipMerges) {
    Divisor d;
    add_chip(d, PointOnGamma::basepoint(), 2);
    add_chip(d, PointOnGamma::loop_point(2, Rat(1)), 1);
    add_chip(d, PointOnGamma::basepoint(), -2);
    EXPECT_EQ(d.chips.size(), 1u);
    EXPECT_EQ(degree(d), 1);
    add_chip(d, PointOnGamma::loop_point(2, Rat(1)), -3);
    EXPECT_EQ(degree(d), -2);
}

TEST(AbelJacobi, PointImages) {
    ChainOfLoops chain = g2_chain();
    // The basepoint maps to zero.
    EXPECT_EQ(abel_jacobi_point(chain, PointOnGamma::basepoint()).coords,
              (std::vector<Rat>{Rat(0), Rat(0)}));
    // w_2 sits at offset m on its loop and beyond both loops.
    EXPECT_EQ(abel_jacobi_point(chain, PointOnGamma::loop_point(2, Rat(1))).coords,
              (std::vector<Rat>{Rat(1), Rat(1)}));
    // A bridge-1 point has cleared loop 1 only.
    EXPECT_EQ(abel_jacobi_point(chain, PointOnGamma::bridge_point(1, Rat(1, 2))).coords,
              (std::vector<Rat>{Rat(1), Rat(0)}));
    // Loop offset 0 is the left vertex, same class as the previous bridge end.
    EXPECT_EQ(abel_jacobi_point(chain, PointOnGamma::loop_point(2, Rat(0))).coords,
              (std::vector<Rat>{Rat(1), Rat(0)}));
    EXPECT_EQ(abel_jacobi_point(chain, PointOnGamma::loop_point(1, Rat(7, 2))).coords,
              (std::vector<Rat>{Rat(7, 2), Rat(0)}));
}

TEST(AbelJacobi, ReducedClosedFormMatchesSpelledOut) {
    ChainOfLoops chain(3, {4, 7, 9}, {1, 1, 1}, {1, 1});
    RatRng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        ReducedDivisor rd = random_reduced(chain, rng, -2, 4);
        PicPoint direct = abel_jacobi(chain, rd);
        PicPoint via_divisor = abel_jacobi(chain, spelled_out(chain, rd));
        EXPECT_EQ(direct, via_divisor);
    }
}

TEST(AbelJacobi, Homomorphism) {
    ChainOfLoops chain = g2_chain();
    RatRng rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        Divisor a = random_divisor(chain, rng, 3);
        Divisor b = random_divisor(chain, rng, 2);
        Divisor sum = a;
        for (const auto& [pt, mult] : b.chips) add_chip(sum, pt, mult);
        PicPoint expect = pic_add(chain, abel_jacobi(chain, a), abel_jacobi(chain, b));
        EXPECT_EQ(abel_jacobi(chain, sum), expect);
    }
}

TEST(Invert, HandValues) {
    ChainOfLoops chain = g2_chain();
    // Zero target at degree d puts everything on v_1.
    ReducedDivisor zero = jacobi_invert(chain, jac_zero(chain), 3);
    EXPECT_EQ(zero.d0, 3);
    EXPECT_EQ(zero.x, (std::vector<Rat>{Rat(0), Rat(0)}));

    // Target (2m_1, 0) at degree 2: one chip on loop 1 at offset 2, rest on v_1.
    ReducedDivisor a = jacobi_invert(chain, JacobianPoint{{Rat(2), Rat(0)}}, 2);
    EXPECT_EQ(a.d0, 1);
    EXPECT_EQ(a.x, (std::vector<Rat>{Rat(2), Rat(0)}));

    // Target (m_1, ell_2) at degree 1: the loop-2 chip contributes m_1 upstream.
    ReducedDivisor b = jacobi_invert(chain, JacobianPoint{{Rat(1), Rat(5)}}, 1);
    EXPECT_EQ(b.d0, 0);
    EXPECT_EQ(b.x, (std::vector<Rat>{Rat(0), Rat(5)}));
}

TEST(Invert, RoundTrip) {
    ChainOfLoops chain(4, {7, 9, 11, 13}, {1, 1, 1, 1}, {1, 1, 1});
    RatRng rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        ReducedDivisor rd = random_reduced(chain, rng, -3, 6);
        ReducedDivisor back = jacobi_invert(chain, abel_jacobi(chain, rd));
        EXPECT_EQ(back, rd);
    }
}

TEST(Invert, InjectivityAtFixedDegree) {
    // Distinct reduced divisors of equal degree map to distinct classes.
    ChainOfLoops chain = g2_chain();
    RatRng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        ReducedDivisor a = random_reduced(chain, rng, 0, 3);
        ReducedDivisor b = random_reduced(chain, rng, 0, 3);
        if (degree(a) != degree(b) || a == b) continue;
        EXPECT_NE(abel_jacobi(chain, a), abel_jacobi(chain, b));
    }
}

TEST(Invert, RequiresGenericChain) {
    ChainOfLoops bad(2, {1, 5}, {1, 1}, {1});
    EXPECT_THROW(jacobi_invert(bad, JacobianPoint{{Rat(0), Rat(0)}}, 1), GenericityViolation);
}

TEST(Canonicalize, HandValues) {
    ChainOfLoops chain = g2_chain();
    // A chip on the middle of bridge 1 is equivalent to a chip at w_1.
    Divisor bridge_chip;
    add_chip(bridge_chip, PointOnGamma::bridge_point(1, Rat(1, 2)), 1);
    ReducedDivisor r1 = canonicalize(chain, bridge_chip);
    EXPECT_EQ(r1.d0, 0);
    EXPECT_EQ(r1.x, (std::vector<Rat>{Rat(1), Rat(0)}));

    // A chip already at v_1 stays there.
    Divisor base_chip;
    add_chip(base_chip, PointOnGamma::basepoint(), 1);
    ReducedDivisor r2 = canonicalize(chain, base_chip);
    EXPECT_EQ(r2.d0, 1);
    EXPECT_EQ(r2.x, (std::vector<Rat>{Rat(0), Rat(0)}));
}

TEST(Canonicalize, PreservesDegreeAndClassAndIsIdempotent) {
    ChainOfLoops chain(3, {4, 7, 9}, {1, 2, 4}, {1, 0});
    RatRng rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        Divisor d = random_divisor(chain, rng, 4);
        ReducedDivisor rd = canonicalize(chain, d);
        EXPECT_EQ(degree(rd), degree(d));
        EXPECT_EQ(abel_jacobi(chain, rd), abel_jacobi(chain, d));
        EXPECT_EQ(canonicalize(chain, spelled_out(chain, rd)), rd);
    }
}

TEST(Pic, Arithmetic) {
    ChainOfLoops chain = g2_chain();
    PicPoint a{2, JacobianPoint{{Rat(1), Rat(2)}}};
    PicPoint b{1, JacobianPoint{{Rat(3), Rat(4)}}};
    PicPoint sum = pic_add(chain, a, b);
    EXPECT_EQ(sum.degree, 3);
    EXPECT_EQ(sum.point.coords, (std::vector<Rat>{Rat(0), Rat(0)}));
    PicPoint diff = pic_sub(chain, a, b);
    EXPECT_EQ(diff.degree, 1);
    EXPECT_EQ(diff.point.coords, (std::vector<Rat>{Rat(2), Rat(4)}));
}

TEST(Pic, EffectiveClasses) {
    ChainOfLoops chain = g2_chain();
    EXPECT_TRUE(is_effective_class(chain, PicPoint{0, jac_zero(chain)}));
    EXPECT_FALSE(is_effective_class(chain, PicPoint{-1, jac_zero(chain)}));
    // Degree 0 with a nonzero twist is not effective.
    EXPECT_FALSE(is_effective_class(chain, PicPoint{0, JacobianPoint{{Rat(1), Rat(0)}}}));
    // Degree >= g is always effective.
    RatRng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        PicPoint p{2, random_jac_point(chain, rng)};
        EXPECT_TRUE(is_effective_class(chain, p));
    }
}
