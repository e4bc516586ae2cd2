#include "flatdel/report_json.hpp"

#include <cmath>

namespace flatdel::report {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw Error("expected a number");
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Json to_json(const Simplex& s) { return Json(s.vertices()); }

Json to_json(const SimplexSet& k) {
  Json a = Json::array();
  for (const auto& s : k) a.push_back(to_json(s));
  return a;
}

Json to_json(const DegeneracyReport& r) {
  Json a = Json::array();
  for (const auto& g : r.cospherical) a.push_back(g);
  return {{"cospherical_groups", a}, {"degenerate", !r.empty()}};
}

Json to_json(const QualityReport& q) {
  return {{"rho", number(q.rho)},
          {"d", q.d},
          {"epsilon_estimate", number(q.epsilon_estimate)},
          {"epsilon_bound", number(q.epsilon_bound)},
          {"delta_estimate", number(q.delta_estimate)},
          {"witness_count", q.witness_count},
          {"separation", number(q.separation)},
          {"height", number(q.height)},
          {"theta_sampled", number(q.theta.sampled)},
          {"theta_bound", number(q.theta.bound)},
          {"theta_bound_out_of_regime", q.theta.bound_out_of_regime},
          {"protection", number(q.protection)},
          {"protection_3rho", number(q.protection_3rho)},
          {"rho_small_simplices", q.rho_small_simplices},
          {"notes", q.notes}};
}

Json to_json(const Check& c) {
  Json j{{"name", c.name},           {"pass", c.pass},     {"value", number(c.value)},
         {"threshold", number(c.threshold)}, {"margin", number(c.margin)}, {"vacuous", c.vacuous}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const TheoremVerdict& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(to_json(c));
  Json params = Json::object();
  for (const auto& [k, x] : v.params) params[k] = number(x);
  return {{"theorem", v.theorem}, {"pass", v.pass()}, {"params", params}, {"checks", checks}, {"notes", v.notes}};
}

Json to_json(const BadEvent& e) {
  Json j{{"kind", e.kind == BadEvent::Kind::height ? "height" : "protection"},
         {"sigma", to_json(e.sigma)},
         {"correlated", e.correlated},
         {"value", number(e.value)},
         {"threshold", number(e.threshold)}};
  if (e.point) j["point"] = *e.point;
  return j;
}

Json to_json(const PerturbTrace& t) {
  Json ev = Json::array();
  for (const auto& e : t.events) ev.push_back(to_json(e));
  return {{"rounds", t.rounds},
          {"height_events", t.height_events},
          {"protection_events", t.protection_events},
          {"resets", t.resets},
          {"warnings", t.warnings},
          {"events", ev}};
}

Json to_json(const TunedParams& t) {
  return {{"rho", number(t.params.rho)},
          {"r_pert", number(t.params.r_pert)},
          {"height_min", number(t.params.height_min)},
          {"protection_min", number(t.params.protection_min)},
          {"seed", t.params.seed},
          {"max_rounds", t.params.max_rounds},
          {"epsilon", number(t.epsilon)},
          {"eta", number(t.eta)},
          {"reach", number(t.reach)},
          {"c_ste", number(t.c_ste)},
          {"delta", number(t.delta)},
          {"epsilon_prime", number(t.epsilon_prime)},
          {"delta_prime", number(t.delta_prime)},
          {"warnings", t.warnings}};
}

namespace {

template <class T>
Json simplex_list(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

}  // namespace

Json to_json(const VerificationReport& r) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes)
    outcomes.push_back({{"name", o.name},
                        {"pass", o.pass},
                        {"skipped", o.skipped},
                        {"summary", o.summary},
                        {"seconds", o.seconds}});
  Json j{{"pass", r.pass()}, {"seconds", r.seconds}, {"checks", outcomes}};
  Json detail = Json::object();
  if (r.closure && !r.closure->pass)
    detail["closure"] = {{"simplex", to_json(*r.closure->simplex)}, {"missing", to_json(*r.closure->missing)}};
  if (r.embedding) {
    Json e{{"pass", r.embedding->pass}, {"tolerance", number(r.embedding->tolerance)},
           {"pairs_tested", r.embedding->pairs_tested}};
    if (r.embedding->degenerate) e["degenerate"] = to_json(*r.embedding->degenerate);
    if (r.embedding->pair) {
      e["pair"] = {to_json(r.embedding->pair->first), to_json(r.embedding->pair->second)};
      e["point"] = to_json(*r.embedding->point);
      e["distance"] = number(r.embedding->distance);
    }
    detail["embedding"] = e;
  }
  if (r.closeness) {
    Json c{{"pass", r.closeness->pass}, {"r", number(r.closeness->r)},
           {"max_distance", number(r.closeness->max_distance)}, {"samples", r.closeness->samples}};
    if (r.closeness->point) {
      c["simplex"] = to_json(*r.closeness->simplex);
      c["point"] = to_json(*r.closeness->point);
    }
    detail["closeness"] = c;
  }
  if (r.manifold) {
    Json m{{"pass", r.manifold->pass},       {"supported", r.manifold->supported},
           {"euler", r.manifold->euler},     {"f_vector", r.manifold->f_vector},
           {"components", r.manifold->components}, {"diagnosis", r.manifold->diagnosis}};
    if (r.manifold->witness) m["witness"] = to_json(*r.manifold->witness);
    detail["manifold"] = m;
  }
  if (r.homeomorphism) {
    const auto& h = *r.homeomorphism;
    Json m{{"injective", h.injective},
           {"surjective", h.surjective},
           {"prestar_formula", h.prestar_formula},
           {"prestar_checked", h.prestar_checked},
           {"tol_inj", number(h.tol_inj)},
           {"tol_surj", number(h.tol_surj)},
           {"max_surjectivity_gap", number(h.max_surjectivity_gap)},
           {"samples", h.samples},
           {"witnesses", h.witnesses}};
    if (h.injectivity_pair) m["injectivity_pair"] = {to_json(h.injectivity_pair->first), to_json(h.injectivity_pair->second)};
    if (h.injectivity_point) m["injectivity_point"] = to_json(*h.injectivity_point);
    if (h.surjectivity_witness) m["surjectivity_witness"] = to_json(*h.surjectivity_witness);
    if (h.prestar_witness) m["prestar_witness"] = to_json(*h.prestar_witness);
    detail["homeomorphism"] = m;
  }
  if (r.circumradii) {
    Json c{{"pass", r.circumradii->pass}, {"vacuous", r.circumradii->vacuous},
           {"max_radius", number(r.circumradii->max_radius)}, {"epsilon", number(r.circumradii->epsilon)}};
    if (r.circumradii->witness) c["witness"] = to_json(*r.circumradii->witness);
    detail["circumradii"] = c;
  }
  if (r.delloc)
    detail["delloc"] = {{"pass", r.delloc->pass},
                        {"only_in_complex", simplex_list(r.delloc->only_in_complex)},
                        {"only_delloc", simplex_list(r.delloc->only_delloc)}};
  if (r.gabriel)
    detail["gabriel"] = {{"pass", r.gabriel->pass},
                         {"tested", r.gabriel->tested},
                         {"not_gabriel", simplex_list(r.gabriel->not_gabriel)},
                         {"not_delaunay", simplex_list(r.gabriel->not_delaunay)}};
  if (r.star_consistency) {
    Json s{{"pass", r.star_consistency->pass}};
    if (r.star_consistency->simplex) {
      s["simplex"] = to_json(*r.star_consistency->simplex);
      s["vertex"] = *r.star_consistency->vertex;
    }
    detail["star_consistency"] = s;
  }
  j["detail"] = detail;
  return j;
}

Json complex_to_json(const FlatDelComplex& k) {
  Json meta = Json::array();
  for (const auto& [s, m] : k.meta) {
    if (s.dim() != static_cast<int>(k.d)) continue;
    meta.push_back({{"simplex", to_json(s)},
                    {"circumradius", number(m.circumradius)},
                    {"seb_radius", number(m.seb_radius)},
                    {"height", number(m.height)},
                    {"delloc", m.delloc},
                    {"gabriel", m.gabriel}});
  }
  Json hits = Json::array();
  for (const auto& s : k.boundary_hits) hits.push_back(to_json(s));
  Json vertices = Json::array();
  for (const auto& s : skeleton(k.simplices, 0)) vertices.push_back(s[0]);
  return {{"model", k.model ? k.model->name() : std::string("none")},
          {"rho", number(k.rho)},
          {"d", k.d},
          {"points", k.points.size()},
          {"vertices", vertices},
          {"closed", k.closed},
          {"simplices", to_json(k.simplices)},
          {"degeneracy", to_json(k.degeneracy)},
          {"boundary_hits", hits},
          {"top_simplices", meta}};
}

FlatDelComplex complex_from_json(const Json& j, const PointCloud& points, ModelPtr model) {
  FlatDelComplex k;
  k.points = points;
  k.model = std::move(model);
  k.rho = to_double(j.at("rho"));
  k.d = j.at("d").get<std::size_t>();
  if (j.contains("points") && j.at("points").get<std::size_t>() != points.size())
    throw DimensionMismatch("complex refers to a different point count");
  for (const auto& s : j.at("simplices")) {
    std::vector<Index> v = s.get<std::vector<Index>>();
    for (Index i : v)
      if (i >= points.size()) throw Error("simplex index out of range");
    k.simplices.insert(Simplex(std::move(v)));
  }
  k.closed = closure(k.simplices) == k.simplices;
  return k;
}

}  // namespace flatdel::report
