#pragma once

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

#include "tropbn/brill_noether.hpp"
#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/lattice.hpp"
#include "tropbn/oracle.hpp"
#include "tropbn/rational.hpp"
#include "tropbn/stable_intersection.hpp"
#include "tropbn/theta.hpp"

// Wire formats. Rationals travel as lowest-terms "p/q" strings; plain
// integer literals are accepted on input. Loop and bridge indices are
// 1-based on the wire, as everywhere else.

namespace tropbn {

using json = nlohmann::json;

inline json rat_to_json(const Rat& x) { return rational_string(x); }

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected a rational as \"p/q\" or integer");
}

inline json rat_vector_to_json(const std::vector<Rat>& xs) {
    json arr = json::array();
    for (const Rat& x : xs) arr.push_back(rat_to_json(x));
    return arr;
}

inline std::vector<Rat> rat_vector_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
    std::vector<Rat> xs;
    for (const auto& e : j) xs.push_back(rat_from_json(e));
    return xs;
}

inline json to_json(const ChainOfLoops& chain) {
    return json{{"g", chain.g()},
                {"ell", rat_vector_to_json(chain.ells())},
                {"m", rat_vector_to_json(chain.ms())},
                {"bridges", rat_vector_to_json(chain.bridges())}};
}

inline ChainOfLoops chain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("g")) throw std::invalid_argument("not a chain document");
    return ChainOfLoops(j.at("g").get<int>(), rat_vector_from_json(j.at("ell")),
                        rat_vector_from_json(j.at("m")),
                        rat_vector_from_json(j.at("bridges")));
}

inline json to_json(const PointOnGamma& p) {
    switch (p.kind) {
        case PointOnGamma::Kind::v1:
            return json{{"kind", "v1"}};
        case PointOnGamma::Kind::loop:
            return json{{"kind", "loop"}, {"i", p.index}, {"offset", rat_to_json(p.offset)}};
        case PointOnGamma::Kind::bridge:
            return json{{"kind", "bridge"}, {"i", p.index}, {"offset", rat_to_json(p.offset)}};
    }
    throw std::invalid_argument("unknown point kind");
}

inline PointOnGamma point_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "v1") return PointOnGamma::basepoint();
    if (kind == "loop") {
        return PointOnGamma::loop_point(j.at("i").get<int>(), rat_from_json(j.at("offset")));
    }
    if (kind == "bridge") {
        return PointOnGamma::bridge_point(j.at("i").get<int>(), rat_from_json(j.at("offset")));
    }
    throw std::invalid_argument("unknown point kind: '" + kind + "'");
}

inline json to_json(const Divisor& div) {
    json arr = json::array();
    for (const auto& [pt, mult] : div.chips) arr.push_back(json::array({to_json(pt), mult}));
    return arr;
}

inline Divisor divisor_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("divisor must be a list of [point, mult]");
    Divisor div;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("divisor entries are [point, mult] pairs");
        }
        add_chip(div, point_from_json(e.at(0)), e.at(1).get<long long>());
    }
    return div;
}

inline json to_json(const ReducedDivisor& rd) {
    return json{{"d0", rd.d0}, {"x", rat_vector_to_json(rd.x)}};
}

inline ReducedDivisor reduced_from_json(const json& j) {
    ReducedDivisor rd;
    rd.d0 = j.at("d0").get<long long>();
    rd.x = rat_vector_from_json(j.at("x"));
    return rd;
}

inline json to_json(const JacobianPoint& p) {
    return json{{"coords", rat_vector_to_json(p.coords)}};
}

inline JacobianPoint jac_point_from_json(const json& j) {
    return JacobianPoint{rat_vector_from_json(j.at("coords"))};
}

inline json to_json(const PicPoint& p) {
    return json{{"degree", p.degree}, {"coords", rat_vector_to_json(p.point.coords)}};
}

inline PicPoint pic_point_from_json(const json& j) {
    return PicPoint{j.at("degree").get<long long>(),
                    JacobianPoint{rat_vector_from_json(j.at("coords"))}};
}

inline std::string step_label(const LatticeStep& s) {
    switch (s.type) {
        case LatticeStep::Type::down:
            return "down";
        case LatticeStep::Type::linger:
            return "linger";
        case LatticeStep::Type::basis:
            return "e" + std::to_string(s.basis_index);
    }
    throw std::invalid_argument("unknown step type");
}

inline LatticeStep step_from_label(const std::string& label) {
    if (label == "down") return {LatticeStep::Type::down, -1};
    if (label == "linger") return {LatticeStep::Type::linger, -1};
    if (label.size() >= 2 && label[0] == 'e') {
        return {LatticeStep::Type::basis, std::stoi(label.substr(1))};
    }
    throw std::invalid_argument("unknown step label: '" + label + "'");
}

inline json to_json(const LatticePath& path) {
    json points = json::array();
    for (const auto& p : path.points) {
        json row = json::array();
        for (long long y : p) row.push_back(y);
        points.push_back(row);
    }
    json steps = json::array();
    for (const LatticeStep& s : path.steps) steps.push_back(step_label(s));
    return json{{"r", path.r}, {"points", points}, {"steps", steps}};
}

inline json to_json(const TorusCell& cell) {
    json steps = json::array();
    for (const LatticeStep& s : cell.path.steps) steps.push_back(step_label(s));
    json fixed = json::object();
    for (const auto& [i, v] : cell.fixed) fixed[std::to_string(i)] = rat_to_json(v);
    return json{{"steps", steps}, {"free", cell.free_loops}, {"fixed", fixed},
                {"d0", cell.d0}};
}

inline json to_json(const FacetDescription& desc) {
    json arr = json::array();
    for (const ThetaFacet& f : desc.facets) {
        arr.push_back(json{{"coordinate", f.coordinate},
                           {"value", rat_to_json(f.value)},
                           {"mult", f.multiplicity}});
    }
    return json{{"facets", arr}};
}

inline json to_json(const std::vector<JacIntersectionPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) {
        arr.push_back(json{{"point", json{{"coords", rat_vector_to_json(p.point.coords)}}},
                           {"mult", p.multiplicity}});
    }
    return arr;
}

inline json to_json(const std::vector<PicIntersectionPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) {
        arr.push_back(
            json{{"point", json{{"degree", p.point.degree},
                                {"coords", rat_vector_to_json(p.point.point.coords)}}},
                 {"mult", p.multiplicity}});
    }
    return arr;
}

inline json to_json(const CrossCheckReport& report) {
    json j{{"rank_oracle", report.rank_oracle},
           {"reduce_match", report.reduce_match},
           {"scale", report.scale},
           {"vertices", report.vertices}};
    if (report.rank_lattice) {
        j["rank_lattice"] = *report.rank_lattice;
    } else {
        j["rank_lattice"] = nullptr;
    }
    if (report.genericity_violation) j["genericity_violation"] = true;
    return j;
}

}  // namespace tropbn
