#include "flatdel/verify.hpp"

#include "flatdel/lp.hpp"
#include "flatdel/parallel.hpp"
#include "flatdel/simd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace flatdel {

namespace {

std::vector<Simplex> maximal_simplices(const SimplexSet& k) {
  SimplexSet faces;
  for (const auto& s : k)
    if (s.size() > 1)
      for (const auto& f : s.facets()) faces.insert(f);
  std::vector<Simplex> out;
  for (const auto& s : k)
    if (!faces.count(s)) out.push_back(s);
  return out;
}

std::vector<Index> vertex_list(const SimplexSet& k) {
  std::set<Index> v;
  for (const auto& s : k)
    for (Index i : s) v.insert(i);
  return {v.begin(), v.end()};
}

std::map<Index, std::vector<Index>> adjacency(const SimplexSet& k) {
  std::map<Index, std::vector<Index>> adj;
  for (const auto& s : k) {
    if (s.size() == 1) adj[s[0]];
    if (s.size() != 2) continue;
    adj[s[0]].push_back(s[1]);
    adj[s[1]].push_back(s[0]);
  }
  for (auto& [v, n] : adj) std::sort(n.begin(), n.end());
  return adj;
}

struct UnionFind {
  std::map<Index, Index> parent;
  Index find(Index x) {
    auto it = parent.find(x);
    if (it == parent.end()) return parent[x] = x;
    if (it->second == x) return x;
    return it->second = find(it->second);
  }
  void join(Index a, Index b) { parent[find(a)] = find(b); }
};

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ClosureReport check_complex_closure(const SimplexSet& k) {
  ClosureReport r;
  for (const auto& s : k) {
    if (s.size() < 2) continue;
    for (const auto& f : s.facets())
      if (!k.count(f)) {
        r.pass = false;
        r.simplex = s;
        r.missing = f;
        return r;
      }
  }
  return r;
}

std::optional<Vec> embedding_violation(const PointCloud& cloud, const Simplex& a, const Simplex& b, double tolerance,
                                       double* distance) {
  if (a.is_face_of(b) || b.is_face_of(a)) return std::nullopt;
  const Simplex g = a.intersect(b);
  const auto pa = gather(cloud, a);
  const auto pb = gather(cloud, b);
  std::vector<Vec> all = pa;
  all.insert(all.end(), pb.begin(), pb.end());
  Vec c = Vec::Zero(static_cast<Eigen::Index>(cloud.dim()));
  for (const auto& p : all) c += p;
  c /= static_cast<double>(all.size());
  const double scale = std::max(diameter(all), 1e-300);
  const auto na = static_cast<Eigen::Index>(pa.size());
  const auto nb = static_cast<Eigen::Index>(pb.size());
  const auto dim = static_cast<Eigen::Index>(cloud.dim());
  Mat m = Mat::Zero(dim + 2, na + nb);
  Vec rhs = Vec::Zero(dim + 2);
  std::vector<lp::Relation> rel(static_cast<std::size_t>(dim + 2), lp::Relation::eq);
  for (Eigen::Index i = 0; i < na; ++i) {
    m.block(0, i, dim, 1) = (pa[static_cast<std::size_t>(i)] - c) / scale;
    m(dim, i) = 1.0;
  }
  for (Eigen::Index j = 0; j < nb; ++j) {
    m.block(0, na + j, dim, 1) = -(pb[static_cast<std::size_t>(j)] - c) / scale;
    m(dim + 1, na + j) = 1.0;
  }
  rhs[dim] = 1.0;
  rhs[dim + 1] = 1.0;
  // Weight on the vertices of a outside a cap b: zero exactly when the common point lies in Conv(a cap b).
  Vec obj = Vec::Zero(na + nb);
  for (Eigen::Index i = 0; i < na; ++i)
    if (!g.contains(a[static_cast<std::size_t>(i)])) obj[i] = 1.0;
  const lp::Result res = lp::maximize(obj, m, rel, rhs);
  if (res.status != lp::Status::optimal) return std::nullopt;
  Vec x = Vec::Zero(dim);
  for (Eigen::Index i = 0; i < na; ++i) x += res.x[i] * pa[static_cast<std::size_t>(i)];
  const double dist = g.size() == 0 ? kInf : (closest_point_in_hull(gather(cloud, g), x) - x).norm();
  if (distance) *distance = dist;
  if (!(dist > tolerance)) return std::nullopt;
  return x;
}

EmbeddingReport check_embedding(const PointCloud& cloud, const SimplexSet& k, const Tolerance& tol) {
  EmbeddingReport r;
  const auto verts = vertex_list(k);
  std::vector<Vec> vp;
  for (Index v : verts) vp.push_back(cloud.point(v));
  r.tolerance = tol.embed * std::max(diameter(vp), 1e-300);
  std::vector<Simplex> list(k.begin(), k.end());
  std::vector<char> degenerate(list.size(), 0);
  parallel_for(list.size(), [&](std::size_t i) {
    if (list[i].size() > 1 && is_degenerate(gather(cloud, list[i]), tol)) degenerate[i] = 1;
  });
  for (std::size_t i = 0; i < list.size(); ++i)
    if (degenerate[i]) {
      r.pass = false;
      r.degenerate = list[i];
      return r;
    }
  const auto top = maximal_simplices(k);
  if (top.size() < 2) return r;
  const auto dim = cloud.dim();
  PointCloud centers(dim);
  std::vector<double> radius(top.size(), 0.0);
  for (std::size_t i = 0; i < top.size(); ++i) {
    const auto pts = gather(cloud, top[i]);
    Vec c = Vec::Zero(static_cast<Eigen::Index>(dim));
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    for (const auto& p : pts) radius[i] = std::max(radius[i], (p - c).norm());
    centers.push_back(c);
  }
  const double rmax = *std::max_element(radius.begin(), radius.end());
  struct Found {
    std::size_t j = 0;
    Vec x;
    double dist = 0.0;
    std::size_t tested = 0;
    bool hit = false;
  };
  std::vector<Found> found(top.size());
  parallel_for(top.size(), [&](std::size_t i) {
    const Vec ci = centers.point(i);
    for (Index j : simd::ball_query(centers, ci, radius[i] + rmax + r.tolerance)) {
      if (j <= i) continue;
      if ((centers.point(j) - ci).norm() > radius[i] + radius[j] + r.tolerance) continue;
      ++found[i].tested;
      double dist = 0.0;
      if (auto x = embedding_violation(cloud, top[i], top[j], r.tolerance, &dist)) {
        found[i] = {j, *x, dist, found[i].tested, true};
        return;
      }
    }
  });
  for (std::size_t i = 0; i < top.size(); ++i) r.pairs_tested += found[i].tested;
  for (std::size_t i = 0; i < top.size(); ++i)
    if (found[i].hit) {
      r.pass = false;
      r.pair = std::make_pair(top[i], top[found[i].j]);
      r.point = found[i].x;
      r.distance = found[i].dist;
      break;
    }
  return r;
}

ClosenessReport check_closeness(const PointCloud& cloud, const SimplexSet& k, const ManifoldModel& model, double r,
                                std::size_t grid_k) {
  if (!(r >= 0.0) || r >= model.reach()) throw OutOfRegime("closeness radius must satisfy 0 <= r < reach");
  ClosenessReport out;
  out.r = r;
  const auto top = maximal_simplices(k);
  std::vector<double> worst(top.size(), -1.0);
  std::vector<Vec> where(top.size());
  std::vector<std::size_t> count(top.size(), 0);
  parallel_for(top.size(), [&](std::size_t i) {
    for (const auto& x : barycentric_grid(gather(cloud, top[i]), grid_k)) {
      ++count[i];
      double dist = 0.0;
      try {
        dist = model.distance(x);
      } catch (const ProjectionUndefined&) {
        dist = model.reach();
      }
      if (dist > worst[i]) {
        worst[i] = dist;
        where[i] = x;
      }
    }
  });
  for (std::size_t i = 0; i < top.size(); ++i) {
    out.samples += count[i];
    if (worst[i] > out.max_distance || !out.simplex) {
      out.max_distance = std::max(out.max_distance, worst[i]);
      out.simplex = top[i];
      out.point = where[i];
    }
  }
  out.pass = out.max_distance <= r;
  if (out.pass) {
    out.simplex.reset();
    out.point.reset();
  }
  return out;
}

long euler_characteristic(const SimplexSet& k) {
  long chi = 0;
  for (const auto& s : k) chi += (s.dim() % 2 == 0) ? 1 : -1;
  return chi;
}

std::size_t connected_components(const SimplexSet& k) {
  UnionFind uf;
  for (const auto& s : k) {
    uf.find(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) uf.join(s[0], s[i]);
  }
  std::set<Index> roots;
  for (const auto& [v, p] : uf.parent) roots.insert(uf.find(v));
  return roots.size();
}

ManifoldReport check_closed_manifold(const SimplexSet& k, std::size_t d) {
  ManifoldReport r;
  r.euler = euler_characteristic(k);
  r.components = connected_components(k);
  const int top = max_dimension(k);
  r.f_vector.assign(static_cast<std::size_t>(std::max(top, 0) + 1), 0);
  for (const auto& s : k) ++r.f_vector[static_cast<std::size_t>(s.dim())];
  if (d == 0 || d > 2) {
    r.supported = false;
    r.pass = false;
    r.diagnosis = "closed-manifold check implemented for d = 1 and d = 2 only";
    return r;
  }
  if (k.empty()) {
    r.pass = false;
    r.diagnosis = "empty complex";
    return r;
  }
  for (const auto& s : k)
    if (s.dim() > static_cast<int>(d)) {
      r.pass = false;
      r.witness = s;
      r.diagnosis = "simplex of dimension above d";
      return r;
    }
  if (d == 1) {
    std::map<Index, int> degree;
    for (const auto& s : k) {
      if (s.size() == 1) degree[s[0]];
      if (s.size() == 2) {
        ++degree[s[0]];
        ++degree[s[1]];
      }
    }
    for (const auto& [v, deg] : degree)
      if (deg != 2) {
        r.pass = false;
        r.witness = Simplex{v};
        r.diagnosis = "vertex in " + std::to_string(deg) + " edges";
        return r;
      }
    return r;
  }
  std::map<Simplex, int> edge_count;
  std::map<Index, std::vector<Simplex>> link;  // opposite edges of the triangles at a vertex
  for (const auto& s : k) {
    if (s.size() == 2) edge_count[s];
    if (s.size() == 1) link[s[0]];
    if (s.size() != 3) continue;
    for (std::size_t i = 0; i < 3; ++i) {
      ++edge_count[s.without(i)];
      link[s[i]].push_back(s.without(i));
    }
  }
  for (const auto& [e, c] : edge_count)
    if (c != 2) {
      r.pass = false;
      r.witness = e;
      r.diagnosis = "edge in " + std::to_string(c) + " triangles";
      return r;
    }
  for (const auto& [v, edges] : link) {
    SimplexSet lk;
    for (const auto& e : edges) {
      lk.insert(e);
      lk.insert(Simplex{e[0]});
      lk.insert(Simplex{e[1]});
    }
    std::map<Index, int> deg;
    for (const auto& e : edges) {
      ++deg[e[0]];
      ++deg[e[1]];
    }
    const bool cycle = !edges.empty() &&
                       std::all_of(deg.begin(), deg.end(), [](const auto& kv) { return kv.second == 2; }) &&
                       connected_components(lk) == 1;
    if (!cycle) {
      r.pass = false;
      r.witness = Simplex{v};
      r.diagnosis = edges.empty() ? "vertex in no triangle" : "vertex link is not a single cycle";
      return r;
    }
  }
  return r;
}

PrestarFormula prestar_formula_at(const FlatDelComplex& k, const Vec& m, const Tolerance& tol) {
  if (!k.model) throw Error("prestar formula needs a manifold model");
  PrestarFormula out;
  out.prestar = prestar_at(m, k.points, k.rho, *k.model, tol).simplices;
  out.covering = covering_simplices(k, m, tol);
  out.equal = out.prestar == out.covering;
  return out;
}

HomeoReport check_homeomorphism_proxy(const FlatDelComplex& k, const ManifoldModel& model, const HomeoOptions& opt,
                                      const Tolerance& tol) {
  HomeoReport r;
  const auto top = maximal_simplices(k.simplices);
  if (top.empty()) {
    r.surjective = false;
    return r;
  }
  const std::size_t gk = std::max<std::size_t>(opt.grid_k, 1);
  double min_edge = kInf, max_diam = 0.0;
  for (const auto& s : k.simplices) {
    if (s.size() == 2) min_edge = std::min(min_edge, (k.points.point(s[0]) - k.points.point(s[1])).norm());
  }
  for (const auto& s : top) max_diam = std::max(max_diam, diameter(gather(k.points, s)));
  if (!std::isfinite(min_edge)) min_edge = std::max(max_diam, 1e-12);
  r.tol_inj = opt.tol_inj > 0.0 ? opt.tol_inj : min_edge / (2.0 * static_cast<double>(gk));
  r.tol_surj = opt.tol_surj > 0.0 ? opt.tol_surj : 1.5 * std::max(max_diam, min_edge) / static_cast<double>(gk);

  // Projected samples of |K|, tagged by their maximal simplex.
  PointCloud samples(model.ambient_dim());
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < top.size(); ++i)
    for (const auto& x : barycentric_grid(gather(k.points, top[i]), gk)) {
      try {
        samples.push_back(model.project(x));
        owner.push_back(i);
      } catch (const ProjectionUndefined&) {
        r.injective = false;
        r.injectivity_point = x;
      }
    }
  r.samples = samples.size();

  // (a) two samples from simplices with disjoint closed vertex stars must not collide.
  const auto adj = adjacency(k.simplices);
  std::vector<std::vector<Index>> star(top.size());
  for (std::size_t i = 0; i < top.size(); ++i) {
    std::set<Index> s(top[i].begin(), top[i].end());
    for (Index v : top[i]) {
      auto it = adj.find(v);
      if (it != adj.end()) s.insert(it->second.begin(), it->second.end());
    }
    star[i].assign(s.begin(), s.end());
  }
  auto disjoint = [&](std::size_t a, std::size_t b) {
    const auto& x = star[a];
    const auto& y = star[b];
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return false;
      if (x[i] < y[j]) ++i; else ++j;
    }
    return true;
  };
  std::vector<std::optional<std::size_t>> hit(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    for (Index j : simd::ball_query(samples, samples.point(i), r.tol_inj)) {
      if (j <= i || owner[j] == owner[i]) continue;
      if (disjoint(owner[i], owner[j])) {
        hit[i] = j;
        return;
      }
    }
  });
  for (std::size_t i = 0; i < samples.size() && r.injective; ++i)
    if (hit[i]) {
      r.injective = false;
      r.injectivity_pair = std::make_pair(top[owner[i]], top[owner[*hit[i]]]);
      r.injectivity_point = samples.point(i);
    }

  // (b) every manifold witness has a sampled preimage nearby.
  if (model.closed()) {
    // Spacing tol_surj: an uncovered region wider than about 3 tol_surj holds a witness farther than
    // tol_surj from every sample.
    const double spacing = opt.witness_spacing > 0.0 ? opt.witness_spacing : r.tol_surj;
    const auto witnesses = model.witness_grid(spacing);
    r.witnesses = witnesses.size();
    std::vector<double> gap(witnesses.size(), kInf);
    parallel_for(witnesses.size(), [&](std::size_t w) {
      std::vector<double> d2;
      simd::squared_distances(samples, witnesses[w], d2);
      if (!d2.empty()) gap[w] = std::sqrt(*std::min_element(d2.begin(), d2.end()));
    });
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      r.max_surjectivity_gap = std::max(r.max_surjectivity_gap, gap[w]);
      if (r.surjective && gap[w] > r.tol_surj) {
        r.surjective = false;
        r.surjectivity_witness = witnesses[w];
      }
    }
  }

  // (c) prestar formula at random manifold points.
  if (k.model && k.rho > 0.0 && opt.prestar_samples > 0) {
    r.prestar_checked = true;
    Rng rng(opt.seed);
    std::vector<Vec> ms;
    for (std::size_t i = 0; i < opt.prestar_samples; ++i) ms.push_back(k.model->random_surface_point(rng));
    std::vector<char> ok(ms.size(), 1);
    parallel_for(ms.size(), [&](std::size_t i) {
      try {
        ok[i] = prestar_formula_at(k, ms[i], tol).equal ? 1 : 0;
      } catch (const Error&) {
        ok[i] = 0;
      }
    });
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (!ok[i]) {
        r.prestar_formula = false;
        r.prestar_witness = ms[i];
        break;
      }
  }
  return r;
}

CircumradiusReport check_circumradii(const PointCloud& cloud, const SimplexSet& k, std::size_t d, double epsilon,
                                     double slack, const Tolerance& tol) {
  CircumradiusReport r;
  r.epsilon = epsilon;
  const auto dsk = skeleton(k, static_cast<int>(d));
  if (dsk.empty()) {
    r.vacuous = true;
    return r;
  }
  for (const auto& s : dsk) {
    double rad = kInf;
    try {
      rad = min_circumsphere(cloud, s, tol).radius;
    } catch (const DegenerateSimplex&) {
    }
    if (rad > r.max_radius || !r.witness) {
      r.max_radius = std::max(r.max_radius, rad);
      r.witness = s;
    }
  }
  r.pass = r.max_radius <= epsilon + slack;
  if (r.pass) r.witness.reset();
  return r;
}

DellocReport check_delloc_equivalence(const SimplexSet& k, const PointCloud& cloud, double rho, std::size_t d,
                                      const Tolerance& tol) {
  DellocReport r;
  const auto a = skeleton(k, static_cast<int>(d));
  const auto b = enumerate_delloc(cloud, rho, d, tol);
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.only_in_complex));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(r.only_delloc));
  r.pass = r.only_in_complex.empty() && r.only_delloc.empty();
  return r;
}

GabrielReport check_gabriel(const PointCloud& cloud, const SimplexSet& k, std::size_t d, const Tolerance& tol) {
  GabrielReport r;
  const auto dsk = skeleton(k, static_cast<int>(d));
  std::vector<Simplex> list(dsk.begin(), dsk.end());
  std::vector<char> gab(list.size(), 0), del(list.size(), 0);
  parallel_for(list.size(), [&](std::size_t i) {
    gab[i] = is_gabriel(cloud, list[i], tol) ? 1 : 0;
    del[i] = empty_sphere(cloud, list[i], tol).admits ? 1 : 0;
  });
  r.tested = list.size();
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!gab[i]) r.not_gabriel.push_back(list[i]);
    if (!del[i]) r.not_delaunay.push_back(list[i]);
  }
  r.pass = r.not_gabriel.empty() && r.not_delaunay.empty();
  return r;
}

StarConsistencyReport check_star_consistency(const FlatDelComplex& k, const Tolerance& tol) {
  if (!k.model) throw Error("star consistency needs a manifold model");
  StarConsistencyReport r;
  const auto verts = vertex_list(k.simplices);
  std::vector<std::optional<SimplexSet>> stars(verts.size());
  parallel_for(verts.size(), [&](std::size_t i) {
    try {
      stars[i] = closure(prestar_at(k.points.point(verts[i]), k.points, k.rho, *k.model, tol).simplices);
    } catch (const Error&) {
    }
  });
  std::map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = i;
  for (const auto& s : k.simplices)
    for (Index v : s) {
      const auto& st = stars[pos[v]];
      if (!st || !st->count(s)) {
        r.pass = false;
        r.simplex = s;
        r.vertex = v;
        return r;
      }
    }
  return r;
}

const std::vector<std::string>& verification_check_names() {
  static const std::vector<std::string> names{"closure",     "embedding", "closeness", "manifold",        "homeomorphism",
                                              "circumradii", "delloc",    "gabriel",   "star_consistency"};
  return names;
}

bool VerificationReport::pass() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.skipped || o.pass; });
}

VerificationReport verify_complex(const FlatDelComplex& k, const VerifyOptions& opt, const Tolerance& tol) {
  const auto& names = verification_check_names();
  for (const auto& c : opt.checks)
    if (std::find(names.begin(), names.end(), c) == names.end()) throw Error("unknown check: " + c);
  auto wanted = [&](const std::string& n) { return opt.checks.empty() || opt.checks.count(n) > 0; };
  VerificationReport rep;
  const auto t_all = std::chrono::steady_clock::now();
  auto run = [&](const std::string& name, auto&& body) {
    if (!wanted(name)) return;
    CheckOutcome o;
    o.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    body(o);
    o.seconds = seconds_since(t0);
    rep.outcomes.push_back(std::move(o));
  };
  auto skip = [](CheckOutcome& o, const std::string& why) {
    o.skipped = true;
    o.summary = "skipped: " + why;
  };

  run("closure", [&](CheckOutcome& o) {
    rep.closure = check_complex_closure(k.simplices);
    o.pass = rep.closure->pass;
    o.summary = o.pass ? "closed under faces"
                       : rep.closure->simplex->str() + " lacks face " + rep.closure->missing->str();
  });
  run("embedding", [&](CheckOutcome& o) {
    rep.embedding = check_embedding(k.points, k.simplices, tol);
    const auto& e = *rep.embedding;
    o.pass = e.pass;
    if (e.degenerate)
      o.summary = "degenerate simplex " + e.degenerate->str();
    else if (e.pair)
      o.summary = e.pair->first.str() + " meets " + e.pair->second.str() + " at " + vec_str(*e.point);
    else
      o.summary = std::to_string(e.pairs_tested) + " pairs tested";
  });
  run("closeness", [&](CheckOutcome& o) {
    if (!k.model) return skip(o, "no manifold model");
    const double reach = k.model->reach();
    const double r = opt.closeness_r > 0.0 ? opt.closeness_r : (std::isfinite(reach) ? reach / 2.0 : k.rho);
    rep.closeness = check_closeness(k.points, k.simplices, *k.model, r, opt.grid_k);
    o.pass = rep.closeness->pass;
    std::ostringstream os;
    os << "max d(x,M) = " << rep.closeness->max_distance << ", r = " << r;
    o.summary = os.str();
  });
  run("manifold", [&](CheckOutcome& o) {
    rep.manifold = check_closed_manifold(k.simplices, k.d);
    const auto& m = *rep.manifold;
    if (!m.supported) return skip(o, m.diagnosis);
    o.pass = m.pass;
    o.summary = "chi = " + std::to_string(m.euler) + ", components = " + std::to_string(m.components);
    if (!m.pass) o.summary += ", " + m.diagnosis + (m.witness ? " at " + m.witness->str() : "");
  });
  run("homeomorphism", [&](CheckOutcome& o) {
    if (!k.model) return skip(o, "no manifold model");
    rep.homeomorphism = check_homeomorphism_proxy(k, *k.model, opt.homeo, tol);
    const auto& h = *rep.homeomorphism;
    o.pass = h.pass();
    if (!h.injective)
      o.summary = "injectivity fails" + (h.injectivity_pair ? " for " + h.injectivity_pair->first.str() + ", " +
                                                                  h.injectivity_pair->second.str()
                                                            : std::string());
    else if (!h.surjective)
      o.summary = "surjectivity fails" + (h.surjectivity_witness ? " at " + vec_str(*h.surjectivity_witness) : "");
    else if (!h.prestar_formula)
      o.summary = "prestar formula fails at " + vec_str(*h.prestar_witness);
    else
      o.summary = std::to_string(h.samples) + " samples, " + std::to_string(h.witnesses) + " witnesses";
  });
  run("circumradii", [&](CheckOutcome& o) {
    if (!opt.epsilon) return skip(o, "no epsilon given");
    rep.circumradii = check_circumradii(k.points, k.simplices, k.d, *opt.epsilon, opt.circumradius_slack, tol);
    o.pass = rep.circumradii->pass;
    std::ostringstream os;
    os << "max R = " << rep.circumradii->max_radius << ", epsilon = " << *opt.epsilon;
    if (rep.circumradii->vacuous) os << " (vacuous)";
    o.summary = os.str();
  });
  run("delloc", [&](CheckOutcome& o) {
    if (!(k.rho > 0.0)) return skip(o, "no scale");
    rep.delloc = check_delloc_equivalence(k.simplices, k.points, k.rho, k.d, tol);
    o.pass = rep.delloc->pass;
    o.summary = std::to_string(rep.delloc->only_in_complex.size()) + " only in complex, " +
                std::to_string(rep.delloc->only_delloc.size()) + " only delloc";
  });
  run("gabriel", [&](CheckOutcome& o) {
    rep.gabriel = check_gabriel(k.points, k.simplices, k.d, tol);
    o.pass = rep.gabriel->pass;
    o.summary = std::to_string(rep.gabriel->not_gabriel.size()) + " not Gabriel, " +
                std::to_string(rep.gabriel->not_delaunay.size()) + " not Delaunay";
  });
  run("star_consistency", [&](CheckOutcome& o) {
    if (!k.model || !(k.rho > 0.0)) return skip(o, "no manifold model");
    rep.star_consistency = check_star_consistency(k, tol);
    o.pass = rep.star_consistency->pass;
    o.summary = o.pass ? "consistent"
                       : rep.star_consistency->simplex->str() + " missing from prestar of " +
                             std::to_string(*rep.star_consistency->vertex);
  });
  rep.seconds = seconds_since(t_all);
  return rep;
}

}  // namespace flatdel
