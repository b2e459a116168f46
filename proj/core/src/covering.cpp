#include "wfd/covering.hpp"

#include <algorithm>

#include "wfd/task.hpp"

namespace wfd {

namespace {

SimplicialMapping projection_map(const CoveringCandidate& c) {
  SimplicialMapping m;
  m.source = c.cover;
  m.target = c.base;
  m.assignment = c.projection;
  return m;
}

void check_candidate(const CoveringCandidate& c) {
  SimplicialMapping proj = projection_map(c);
  for (VertexId v : c.cover.vertices())
    if (!c.projection.count(v))
      throw Error(ErrorKind::NotSimplicial,
                  "projection is not total: no image for '" + vertex_label(v) + "'");
  for (const auto& [v, x] : c.projection) {
    if (!c.cover.has_vertex(v))
      throw Error(ErrorKind::NotSimplicial,
                  "projection maps unknown cover vertex '" + vertex_label(v) + "'");
    if (!c.base.has_vertex(x))
      throw Error(ErrorKind::NotSimplicial,
                  "projection targets unknown base vertex '" + vertex_label(x) + "'");
  }
  if (!check_simplicial(proj))
    throw Error(ErrorKind::NotSimplicial, "projection is not a simplicial map");
  if (connected_components(c.base).size() != 1)
    throw Error(ErrorKind::NotConnected, "base complex is not connected");
  if (connected_components(c.cover).size() != 1)
    throw Error(ErrorKind::NotConnected, "cover complex is not connected");
}

// All cover simplices whose projection lies inside sigma.
std::vector<Simplex> preimage_simplices(const CoveringCandidate& c, const SimplicialMapping& proj,
                                        const Simplex& sigma,
                                        const std::vector<Simplex>& cover_simplices) {
  std::vector<Simplex> out;
  for (const auto& tau : cover_simplices)
    if (proj.image(tau).subset_of(sigma)) out.push_back(tau);
  (void)c;
  return out;
}

}  // namespace

CoveringReport validate_covering(const CoveringCandidate& c) {
  check_candidate(c);
  SimplicialMapping proj = projection_map(c);
  std::vector<Simplex> cover_simplices = c.cover.all_simplices();

  CoveringReport report;
  report.is_covering = true;

  int uniform = -1;
  for (const auto& sigma : c.base.all_simplices()) {
    std::vector<Simplex> pre = preimage_simplices(c, proj, sigma, cover_simplices);
    // Maximal members are the candidate sheets.
    std::vector<Simplex> sheets;
    for (const auto& tau : pre) {
      bool maximal = true;
      for (const auto& other : pre)
        if (!(tau == other) && tau.subset_of(other)) {
          maximal = false;
          break;
        }
      if (maximal) sheets.push_back(tau);
    }
    std::sort(sheets.begin(), sheets.end(), simplex_label_less);

    for (const auto& sheet : sheets) {
      Simplex img = proj.image(sheet);
      if (img.size() != sheet.size() || !(img == sigma)) {
        report.is_covering = false;
        report.why = "sheet " + sheet.encode() + " does not map bijectively onto " +
                     sigma.encode();
        return report;
      }
    }
    for (std::size_t i = 0; i < sheets.size() && report.is_covering; ++i)
      for (std::size_t j = i + 1; j < sheets.size(); ++j) {
        for (VertexId v : sheets[i].ids())
          if (sheets[j].has(v)) {
            report.is_covering = false;
            report.why = "sheets " + sheets[i].encode() + " and " + sheets[j].encode() +
                         " of " + sigma.encode() + " intersect";
            return report;
          }
      }
    if (uniform < 0)
      uniform = static_cast<int>(sheets.size());
    else if (uniform != static_cast<int>(sheets.size())) {
      report.is_covering = false;
      report.why = "sheet count is not uniform: " + sigma.encode() + " has " +
                   std::to_string(sheets.size()) + " sheets, expected " + std::to_string(uniform);
      return report;
    }
    report.sheets.emplace_back(sigma, std::move(sheets));
  }
  report.sheet_count = std::max(uniform, 0);
  report.is_trivial = (report.sheet_count == 1);
  return report;
}

ColorlessTask covering_task(const CoveringCandidate& c) {
  CoveringReport report = validate_covering(c);
  if (!report.is_covering)
    throw Error(ErrorKind::NotACovering, report.why);

  SimplicialMapping proj = projection_map(c);
  std::vector<Simplex> cover_simplices = c.cover.all_simplices();

  ColorlessTask t;
  t.input = c.base;
  t.output = c.cover;
  for (const auto& sigma : c.base.all_simplices())
    t.delta.emplace(sigma, Complex::from_facets(
                               preimage_simplices(c, proj, sigma, cover_simplices)));
  return t;
}

CoveringCandidate gen_cyclic_cover(int m, int k) {
  if (m < 3 || k < 1 || k * m < 3)
    throw Error(ErrorKind::InvalidArgument, "cyclic cover needs m >= 3 and k >= 1");

  auto cycle = [](const std::string& prefix, int len) {
    std::vector<std::vector<std::string>> facets;
    for (int i = 0; i < len; ++i)
      facets.push_back({prefix + std::to_string(i), prefix + std::to_string((i + 1) % len)});
    return build_complex(facets);
  };

  CoveringCandidate c;
  c.base = cycle("x", m);
  c.cover = cycle("w", k * m);
  for (int i = 0; i < k * m; ++i)
    c.projection[intern_vertex("w" + std::to_string(i))] =
        intern_vertex("x" + std::to_string(i % m));
  return c;
}

Verdict covering_impossibility(const CoveringCandidate& c, int n, const ClosureOptions& opts,
                               const Limits& limits) {
  return decide(covering_task(c), n, opts, limits);
}

bool stars_locally_isomorphic(const CoveringCandidate& c) {
  SimplicialMapping proj = projection_map(c);
  for (VertexId v : c.cover.vertices()) {
    if (!complexes_isomorphic(star(c.cover, v), star(c.base, proj.image_of(v)))) return false;
  }
  return true;
}

}  // namespace wfd
