#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/rational.hpp"

namespace tropbn {

// The effective-degree-(g-1) locus shifted by a class. `shift` has the
// degree needed to move the ambient degree: testing degree-d points needs
// shift degree d-(g-1). Provenance remembers the chip data a shift was built
// from, when there is any.
struct ThetaTranslate {
    PicPoint shift;
    std::optional<std::pair<Divisor, Divisor>> provenance;  // (E, E')
};

inline ThetaTranslate theta_divisor(const ChainOfLoops& chain) {
    return ThetaTranslate{PicPoint{0, jac_zero(chain)}, std::nullopt};
}

struct ThetaFacet {
    int coordinate = 0;  // 1-based loop index
    Rat value;
    long long multiplicity = 1;
};

// Union of g coordinate subtori: one facet per loop k, fixing coordinate k.
struct FacetDescription {
    std::vector<ThetaFacet> facets;
};

// Unshifted facet value at coordinate k: a degree-(g-1) class is effective
// iff its reduced form leaves some loop k chipless with every later loop
// carrying a chip, which pins coordinate k to (g-k)*m_k. One facet per loop,
// each with multiplicity 1.
inline Rat theta_facet_base_value(const ChainOfLoops& chain, int k) {
    if (k < 1 || k > chain.g()) throw std::invalid_argument("facet coordinate out of range");
    return mod_period((chain.g() - k) * chain.m(k), chain.circumference(k));
}

inline FacetDescription theta_facets(const ChainOfLoops& chain, const ThetaTranslate& t) {
    chain.require_generic();
    validate_jac_point(chain, t.shift.point);
    FacetDescription desc;
    for (int k = 1; k <= chain.g(); ++k) {
        Rat v = mod_period(theta_facet_base_value(chain, k) + t.shift.point.coords[k - 1],
                           chain.circumference(k));
        desc.facets.push_back(ThetaFacet{k, std::move(v), 1});
    }
    return desc;
}

// Membership via effectivity of the shifted class. The degrees must line up:
// p.degree - shift.degree is the ambient degree and has to equal g-1.
inline bool theta_contains(const ChainOfLoops& chain, const ThetaTranslate& t,
                           const PicPoint& p) {
    chain.require_generic();
    if (p.degree - t.shift.degree != chain.g() - 1) {
        throw std::invalid_argument("degree mismatch: translate tests classes of degree " +
                                    std::to_string(t.shift.degree + chain.g() - 1));
    }
    return is_effective_class(chain, pic_sub(chain, p, t.shift));
}

// Same membership via the facet description; agreement of the two routes is
// a test invariant.
inline bool theta_contains_by_facets(const ChainOfLoops& chain, const ThetaTranslate& t,
                                     const PicPoint& p) {
    if (p.degree - t.shift.degree != chain.g() - 1) {
        throw std::invalid_argument("degree mismatch: translate tests classes of degree " +
                                    std::to_string(t.shift.degree + chain.g() - 1));
    }
    JacobianPoint q = jac_normalize(chain, p.point);
    FacetDescription desc = theta_facets(chain, t);
    for (const ThetaFacet& f : desc.facets) {
        if (q.coords[f.coordinate - 1] == f.value) return true;
    }
    return false;
}

}  // namespace tropbn
