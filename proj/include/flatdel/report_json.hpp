#pragma once

#include "flatdel/audit.hpp"
#include "flatdel/fdc.hpp"
#include "flatdel/perturb.hpp"
#include "flatdel/verify.hpp"

#include <json.hpp>

namespace flatdel::report {

using Json = nlohmann::ordered_json;

// Non-finite values become the strings "inf", "-inf", "nan".
Json number(double x);
double to_double(const Json& j);

Json to_json(const Vec& v);
Json to_json(const Simplex& s);
Json to_json(const SimplexSet& k);
Json to_json(const DegeneracyReport& r);
Json to_json(const QualityReport& q);
Json to_json(const Check& c);
Json to_json(const TheoremVerdict& v);
Json to_json(const BadEvent& e);
Json to_json(const PerturbTrace& t);
Json to_json(const TunedParams& t);
Json to_json(const VerificationReport& r);

// Simplices, scale, dimension, model name and per-simplex metadata; the points travel as CSV.
Json complex_to_json(const FlatDelComplex& k);
// Rebuilds simplices, rho and d over the given points; metadata is not restored.
FlatDelComplex complex_from_json(const Json& j, const PointCloud& points, ModelPtr model);

}  // namespace flatdel::report
