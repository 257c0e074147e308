#pragma once

#include <json.hpp>

#include "troppt/euler.hpp"
#include "troppt/intersection.hpp"

namespace troppt {

using Json = nlohmann::json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rationals as "p/q" strings; integers also accepted on input
Json rat_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json polytope_json(const LatticePolytope& P);
LatticePolytope polytope_from_json(const Json& j);
QVec lift_from_json(const Json& j, size_t npoints);
Json subdivision_json(const Subdivision& S);

Json fan_json(const Fan& F);
Fan fan_from_json(const Json& j);
// fan envelope plus "codim" and "entries" keyed by cone index
Json weight_json(const MinkowskiWeight& w);
Json cycle_json(const ChowCycle& c);

Json secondary_json(const LatticePolytope& P, const SecondaryFan& sec);
Json curve_json(const TropicalCurve& g);
Json pt0_json(const PT0Fan& f);

struct SvgOptions {
    double half_width = 0;  // bounding box [-w, w]^2 around the origin; 0 picks one from the vertices
    int pixels = 480;
};
// one polyline per edge and per ray, rays clipped to the box
std::string curve_svg(const TropicalCurve& g, const SvgOptions& opt = {});

Json euler_json(unsigned d, unsigned n, const EulerResult& r);
std::string euler_csv(const EulerResult& r);

// file path or inline JSON text
Json read_json_arg(const std::string& arg);

}  // namespace troppt
