#include "support.hpp"

#include <algorithm>

namespace wfd::testsupport {

Complex random_complex(Rng& rng, int max_vertices, const std::string& prefix) {
  int nv = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_vertices)));
  std::vector<std::string> labels;
  for (int i = 0; i < nv; ++i) labels.push_back(prefix + std::to_string(i));

  int nf = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(nv) + 2));
  std::vector<std::vector<std::string>> facets;
  for (int f = 0; f < nf; ++f) {
    std::size_t size = 1 + rng.below(std::min<std::size_t>(labels.size(), 4));
    std::vector<std::string> facet;
    std::vector<std::string> pool = labels;
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t pick = rng.below(pool.size());
      facet.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    facets.push_back(std::move(facet));
  }
  return build_complex(facets);
}

namespace {

// A random subcomplex of k: a nonempty subset of its simplices when
// possible.
Complex random_subcomplex(Rng& rng, const Complex& k, bool allow_empty) {
  std::vector<Simplex> simplices = k.all_simplices();
  if (simplices.empty()) return Complex();
  std::vector<Simplex> picked;
  for (const auto& s : simplices)
    if (rng.coin()) picked.push_back(s);
  if (picked.empty() && !allow_empty)
    picked.push_back(simplices[rng.below(simplices.size())]);
  return Complex::from_facets(std::move(picked));
}

}  // namespace

ColorlessTask random_carrier_task(Rng& rng, int vi, int vo) {
  Complex input = random_complex(rng, vi, "a");
  Complex palette = random_complex(rng, vo, "z");

  ColorlessTask t;
  t.input = input;

  // Assign images by descending dimension so the carrier property holds by
  // construction: each image lives inside the images of all covers.
  std::vector<Simplex> simplices = input.all_simplices();
  std::sort(simplices.begin(), simplices.end(),
            [](const Simplex& a, const Simplex& b) { return a.size() > b.size(); });
  for (const auto& sigma : simplices) {
    Complex allowed = skeleton(palette, sigma.dim());
    for (const auto& other : input.all_simplices()) {
      if (sigma == other || !sigma.subset_of(other)) continue;
      const Complex& upper = t.delta.at(other);
      std::vector<Simplex> kept;
      for (const auto& s : allowed.all_simplices())
        if (upper.contains(s)) kept.push_back(s);
      allowed = Complex::from_facets(std::move(kept));
    }
    t.delta.emplace(sigma, random_subcomplex(rng, allowed, false));
  }

  // The output is exactly what the images use, plus their vertices.
  std::vector<Simplex> out_facets;
  for (const auto& [sigma, img] : t.delta) {
    for (const auto& f : img.facets()) out_facets.push_back(f);
    for (VertexId v : img.vertices()) out_facets.push_back(Simplex({v}));
  }
  if (out_facets.empty()) out_facets.push_back(Simplex::from_labels({"z0"}));
  t.output = Complex::from_facets(std::move(out_facets));
  return t;
}

MapSearchProblem random_search_problem(Rng& rng, int max_src, int max_tgt) {
  MapSearchProblem p;
  p.source = random_complex(rng, max_src, "s");
  p.target = random_complex(rng, max_tgt, "t");

  for (VertexId v : p.source.vertices()) {
    std::vector<VertexId> dom;
    for (VertexId y : p.target.vertices())
      if (rng.coin() || rng.coin()) dom.push_back(y);  // bias towards inclusion
    p.domains[v] = std::move(dom);
  }
  for (const auto& s : p.source.all_simplices()) {
    if (s.dim() >= 1 && rng.below(3) == 0)
      p.constraints.emplace_back(s, random_subcomplex(rng, p.target, true));
  }
  for (VertexId v : p.source.vertices()) {
    if (rng.below(4) == 0 && !p.domains[v].empty())
      p.pinned[v] = p.domains[v][rng.below(p.domains[v].size())];
  }
  return p;
}

bool brute_force_exists(const MapSearchProblem& p) {
  std::vector<VertexId> vars = p.source.vertices();
  std::vector<std::vector<VertexId>> domains;
  for (VertexId v : vars) {
    auto it = p.domains.find(v);
    std::vector<VertexId> dom = it == p.domains.end() ? std::vector<VertexId>() : it->second;
    auto pin = p.pinned.find(v);
    if (pin != p.pinned.end())
      std::erase_if(dom, [&](VertexId y) { return y != pin->second; });
    if (dom.empty()) return false;
    domains.push_back(std::move(dom));
  }

  std::vector<std::size_t> odo(vars.size(), 0);
  while (true) {
    std::unordered_map<VertexId, VertexId> assign;
    for (std::size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = domains[i][odo[i]];

    bool ok = true;
    auto image_in = [&](const Simplex& scope, const Complex& complex) {
      std::vector<VertexId> img;
      for (VertexId v : scope.ids()) img.push_back(assign.at(v));
      return complex.contains(Simplex(std::move(img)));
    };
    for (const auto& [scope, complex] : p.constraints)
      if (!image_in(scope, complex)) {
        ok = false;
        break;
      }
    if (ok) {
      for (const auto& f : p.source.facets())
        if (!image_in(f, p.target)) {
          ok = false;
          break;
        }
    }
    if (ok) return true;

    std::size_t pos = 0;
    while (pos < vars.size()) {
      if (++odo[pos] < domains[pos].size()) break;
      odo[pos] = 0;
      ++pos;
    }
    if (pos == vars.size()) return false;
  }
}

}  // namespace wfd::testsupport
