#pragma once

#include <stdexcept>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// Point of the g-torus prod_i R/(ell_i+m_i)Z, coordinates normalized into
// [0, circumference). Coordinate i integrates the 1-form supported on loop i.
struct JacobianPoint {
    std::vector<Rat> coords;

    bool operator==(const JacobianPoint& o) const { return coords == o.coords; }
};

// A degree-d class: the torus point plus the degree it lives at.
struct PicPoint {
    long long degree = 0;
    JacobianPoint point;

    bool operator==(const PicPoint& o) const {
        return degree == o.degree && point == o.point;
    }
};

inline void validate_jac_point(const ChainOfLoops& chain, const JacobianPoint& p) {
    if (p.coords.size() != static_cast<size_t>(chain.g())) {
        throw std::invalid_argument("torus point needs one coordinate per loop");
    }
}

inline JacobianPoint jac_zero(const ChainOfLoops& chain) {
    return JacobianPoint{std::vector<Rat>(static_cast<size_t>(chain.g()), Rat(0))};
}

inline JacobianPoint jac_normalize(const ChainOfLoops& chain, JacobianPoint p) {
    validate_jac_point(chain, p);
    for (int i = 1; i <= chain.g(); ++i) {
        p.coords[i - 1] = mod_period(p.coords[i - 1], chain.circumference(i));
    }
    return p;
}

inline JacobianPoint jac_add(const ChainOfLoops& chain, const JacobianPoint& a,
                             const JacobianPoint& b) {
    validate_jac_point(chain, a);
    validate_jac_point(chain, b);
    JacobianPoint r = a;
    for (int i = 0; i < chain.g(); ++i) r.coords[i] += b.coords[i];
    return jac_normalize(chain, std::move(r));
}

inline JacobianPoint jac_sub(const ChainOfLoops& chain, const JacobianPoint& a,
                             const JacobianPoint& b) {
    validate_jac_point(chain, a);
    validate_jac_point(chain, b);
    JacobianPoint r = a;
    for (int i = 0; i < chain.g(); ++i) r.coords[i] -= b.coords[i];
    return jac_normalize(chain, std::move(r));
}

inline JacobianPoint jac_scale(const ChainOfLoops& chain, long long k,
                               const JacobianPoint& a) {
    validate_jac_point(chain, a);
    JacobianPoint r = a;
    for (int i = 0; i < chain.g(); ++i) r.coords[i] *= k;
    return jac_normalize(chain, std::move(r));
}

// Image of a single point under the base-point-at-v_1 Abel-Jacobi map.
// Walking from v_1 to a point on loop j crosses each earlier loop along its
// bottom edge (contributing m_k) and ends at arc-offset x on loop j.
inline JacobianPoint abel_jacobi_point(const ChainOfLoops& chain, const PointOnGamma& p) {
    validate_point(chain, p);
    JacobianPoint r = jac_zero(chain);
    switch (p.kind) {
        case PointOnGamma::Kind::v1:
            break;
        case PointOnGamma::Kind::loop:
            for (int k = 1; k < p.index; ++k) r.coords[k - 1] = chain.m(k);
            r.coords[p.index - 1] = p.offset;
            break;
        case PointOnGamma::Kind::bridge:
            // Everywhere on bridge j the crossed loops are exactly 1..j.
            for (int k = 1; k <= p.index; ++k) r.coords[k - 1] = chain.m(k);
            break;
    }
    return jac_normalize(chain, std::move(r));
}

inline PicPoint abel_jacobi(const ChainOfLoops& chain, const Divisor& div) {
    validate_divisor(chain, div);
    JacobianPoint sum = jac_zero(chain);
    for (const auto& [pt, mult] : div.chips) {
        sum = jac_add(chain, sum, jac_scale(chain, mult, abel_jacobi_point(chain, pt)));
    }
    return PicPoint{degree(div), std::move(sum)};
}

// Closed form for reduced divisors: coordinate i is n_i*m_i + x_i, where n_i
// counts the loops beyond i that carry a chip (each is crossed via its bottom
// edge on the way out).
inline PicPoint abel_jacobi(const ChainOfLoops& chain, const ReducedDivisor& rd) {
    validate_reduced(chain, rd);
    JacobianPoint r = jac_zero(chain);
    long long n = 0;
    for (int i = chain.g(); i >= 1; --i) {
        r.coords[i - 1] = n * chain.m(i) + rd.x[i - 1];
        if (rd.x[i - 1] != 0) ++n;
    }
    return PicPoint{degree(rd), jac_normalize(chain, std::move(r))};
}

// Unique v_1-reduced divisor of degree d with the given torus coordinates.
// Solved right to left: loop g has no loops beyond it, so its coordinate is
// its offset outright; each solved loop feeds the chip count n_i below it.
inline ReducedDivisor jacobi_invert(const ChainOfLoops& chain, const JacobianPoint& target,
                                    long long d) {
    chain.require_generic();
    validate_jac_point(chain, target);
    ReducedDivisor rd;
    rd.x.assign(static_cast<size_t>(chain.g()), Rat(0));
    long long n = 0;
    for (int i = chain.g(); i >= 1; --i) {
        rd.x[i - 1] =
            mod_period(target.coords[i - 1] - Rat(n) * chain.m(i), chain.circumference(i));
        if (rd.x[i - 1] != 0) ++n;
    }
    rd.d0 = d - n;
    return rd;
}

inline ReducedDivisor jacobi_invert(const ChainOfLoops& chain, const PicPoint& p) {
    return jacobi_invert(chain, p.point, p.degree);
}

// A degree-d class contains an effective divisor iff its reduced form keeps a
// nonnegative pile at the base vertex.
inline bool is_effective_class(const ChainOfLoops& chain, const PicPoint& p) {
    return jacobi_invert(chain, p).d0 >= 0;
}

inline ReducedDivisor canonicalize(const ChainOfLoops& chain, const Divisor& div) {
    return jacobi_invert(chain, abel_jacobi(chain, div));
}

inline PicPoint pic_add(const ChainOfLoops& chain, const PicPoint& a, const PicPoint& b) {
    return PicPoint{a.degree + b.degree, jac_add(chain, a.point, b.point)};
}

inline PicPoint pic_sub(const ChainOfLoops& chain, const PicPoint& a, const PicPoint& b) {
    return PicPoint{a.degree - b.degree, jac_sub(chain, a.point, b.point)};
}

}  // namespace tropbn
