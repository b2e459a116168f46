#include "wfd/complex.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <sstream>

namespace wfd {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptySimplex: return "EmptySimplex";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::PartialAssignment: return "PartialAssignment";
    case ErrorKind::DimensionViolation: return "DimensionViolation";
    case ErrorKind::CarrierViolation: return "CarrierViolation";
    case ErrorKind::DanglingOutputVertex: return "DanglingOutputVertex";
    case ErrorKind::MissingDelta: return "MissingDelta";
    case ErrorKind::VertexNotInImage: return "VertexNotInImage";
    case ErrorKind::WitnessInvalid: return "WitnessInvalid";
    case ErrorKind::MissingLocalWitness: return "MissingLocalWitness";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotACovering: return "NotACovering";
    case ErrorKind::InconsistentValency: return "InconsistentValency";
    case ErrorKind::NoBivalentChild: return "NoBivalentChild";
    case ErrorKind::InconsistentOracle: return "InconsistentOracle";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// Label interning

namespace {

struct TransparentHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

struct TransparentEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    return a == b;
  }
};

struct LabelTable {
  std::shared_mutex mu;
  std::unordered_map<std::string, VertexId, TransparentHash, TransparentEq> ids;
  std::deque<std::string> labels;  // id -> label; references are stable
};

LabelTable& label_table() {
  static LabelTable t;
  return t;
}

}  // namespace

VertexId intern_vertex(std::string_view label) {
  auto& t = label_table();
  {
    std::shared_lock lk(t.mu);
    auto it = t.ids.find(label);
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lk(t.mu);
  auto it = t.ids.find(label);
  if (it != t.ids.end()) return it->second;
  VertexId id = static_cast<VertexId>(t.labels.size());
  t.labels.emplace_back(label);
  t.ids.emplace(t.labels.back(), id);
  return id;
}

const std::string& vertex_label(VertexId id) {
  auto& t = label_table();
  std::shared_lock lk(t.mu);
  return t.labels.at(id);
}

bool label_less(VertexId a, VertexId b) {
  if (a == b) return false;
  return vertex_label(a) < vertex_label(b);
}

// ---------------------------------------------------------------------------
// Simplex

Simplex::Simplex(std::vector<VertexId> vertices) : ids_(std::move(vertices)) {
  if (ids_.empty()) throw Error(ErrorKind::EmptySimplex, "a simplex must have at least one vertex");
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

Simplex Simplex::from_labels(const std::vector<std::string>& labels) {
  std::vector<VertexId> ids;
  ids.reserve(labels.size());
  for (const auto& l : labels) ids.push_back(intern_vertex(l));
  return Simplex(std::move(ids));
}

bool Simplex::has(VertexId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool Simplex::subset_of(const Simplex& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

Simplex Simplex::union_with(const Simplex& other) const {
  std::vector<VertexId> out;
  out.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out));
  return Simplex(std::move(out));
}

std::vector<std::string> Simplex::labels() const {
  std::vector<std::string> out;
  out.reserve(ids_.size());
  for (VertexId v : ids_) out.push_back(vertex_label(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Simplex::encode() const {
  std::string out = "{";
  bool first = true;
  for (const auto& l : labels()) {
    if (!first) out += ',';
    out += l;
    first = false;
  }
  out += '}';
  return out;
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (VertexId v : s.ids()) h = h * 1099511628211ull + (v + 0x51ed2701);
  return h;
}

bool simplex_label_less(const Simplex& a, const Simplex& b) {
  return a.labels() < b.labels();
}

std::vector<std::string> decode_label(std::string_view label) {
  std::vector<std::string> members;
  if (label.size() < 2 || label.front() != '{' || label.back() != '}') return members;
  std::string_view body = label.substr(1, label.size() - 2);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '{') ++depth;
    else if (c == '}') --depth;
    else if (c == ',' && depth == 0) {
      members.emplace_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  members.emplace_back(body.substr(start));
  return members;
}

// ---------------------------------------------------------------------------
// Complex

Complex Complex::from_facets(std::vector<Simplex> facets) {
  // Dedupe.
  std::unordered_set<Simplex, SimplexHash> seen;
  std::vector<Simplex> unique;
  unique.reserve(facets.size());
  for (auto& f : facets) {
    if (seen.insert(f).second) unique.push_back(std::move(f));
  }
  // Drop dominated facets (subsets of another facet).
  std::vector<Simplex> kept;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < unique.size() && !dominated; ++j) {
      if (i != j && unique[i].size() <= unique[j].size() && unique[i].subset_of(unique[j]) &&
          !(unique[i] == unique[j])) {
        dominated = true;
      }
    }
    if (!dominated) kept.push_back(unique[i]);
  }
  std::sort(kept.begin(), kept.end(), simplex_label_less);

  Complex out;
  out.facets_ = std::move(kept);
  for (const auto& f : out.facets_)
    for (VertexId v : f.ids()) out.vset_.insert(v);
  out.vertices_.assign(out.vset_.begin(), out.vset_.end());
  std::sort(out.vertices_.begin(), out.vertices_.end(), label_less);
  return out;
}

bool Complex::contains(const Simplex& s) const {
  for (const auto& f : facets_) {
    if (s.size() <= f.size() && s.subset_of(f)) return true;
  }
  return false;
}

int Complex::dim() const {
  int d = -1;
  for (const auto& f : facets_) d = std::max(d, f.dim());
  return d;
}

std::vector<Simplex> Complex::all_simplices() const {
  std::unordered_set<Simplex, SimplexHash> seen;
  std::vector<Simplex> out;
  for (const auto& f : facets_) {
    const auto& ids = f.ids();
    if (ids.size() > 24) throw Error(ErrorKind::ResourceLimit, "facet too large to enumerate faces");
    const std::uint32_t full = (1u << ids.size()) - 1u;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      std::vector<VertexId> verts;
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (mask & (1u << i)) verts.push_back(ids[i]);
      Simplex s(std::move(verts));
      if (seen.insert(s).second) out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), simplex_label_less);
  return out;
}

std::size_t ComplexHash::operator()(const Complex& k) const noexcept {
  std::size_t h = 14695981039346656037ull;
  SimplexHash sh;
  for (const auto& f : k.facets()) h = h * 31 + sh(f);
  return h;
}

// ---------------------------------------------------------------------------
// Simplicial mappings

VertexId SimplicialMapping::image_of(VertexId v) const {
  auto it = assignment.find(v);
  if (it == assignment.end())
    throw Error(ErrorKind::PartialAssignment, "no image for vertex '" + vertex_label(v) + "'");
  return it->second;
}

Simplex SimplicialMapping::image(const Simplex& s) const {
  std::vector<VertexId> out;
  out.reserve(s.size());
  for (VertexId v : s.ids()) out.push_back(image_of(v));
  return Simplex(std::move(out));
}

bool check_simplicial(const SimplicialMapping& m) {
  for (VertexId v : m.source.vertices()) m.image_of(v);  // totality
  for (const auto& f : m.source.facets()) {
    if (!m.target.contains(m.image(f))) return false;
  }
  return true;
}

SimplicialMapping compose(const SimplicialMapping& f, const SimplicialMapping& g) {
  SimplicialMapping out;
  out.source = f.source;
  out.target = g.target;
  for (const auto& [v, w] : f.assignment) out.assignment[v] = g.image_of(w);
  return out;
}

// ---------------------------------------------------------------------------
// Barycentric subdivision

SubdividedComplex SubdividedComplex::base(Complex k) {
  SubdividedComplex out;
  for (VertexId v : k.vertices()) out.carrier.emplace(v, Simplex({v}));
  out.complex = std::move(k);
  out.level = 0;
  return out;
}

const Simplex& SubdividedComplex::carrier_of_vertex(VertexId v) const {
  auto it = carrier.find(v);
  if (it == carrier.end())
    throw Error(ErrorKind::InvalidArgument, "vertex '" + vertex_label(v) + "' has no carrier");
  return it->second;
}

Simplex SubdividedComplex::carrier_of(const Simplex& s) const {
  std::vector<VertexId> out;
  for (VertexId v : s.ids()) {
    const Simplex& c = carrier_of_vertex(v);
    out.insert(out.end(), c.ids().begin(), c.ids().end());
  }
  return Simplex(std::move(out));
}

SubdividedComplex bary(const SubdividedComplex& s, const Limits& limits) {
  const Complex& k = s.complex;
  std::vector<Simplex> simplices = k.all_simplices();
  if (simplices.size() > limits.max_vertices)
    throw Error(ErrorKind::ResourceLimit,
                "subdivision would have " + std::to_string(simplices.size()) + " vertices");

  SubdividedComplex out;
  out.level = s.level + 1;

  std::unordered_map<Simplex, VertexId, SimplexHash> vertex_of;
  vertex_of.reserve(simplices.size());
  for (const auto& simp : simplices) {
    std::string label = simp.encode();
    if (label.size() > limits.max_label_bytes)
      throw Error(ErrorKind::ResourceLimit, "subdivision vertex label exceeds cap");
    VertexId z = intern_vertex(label);
    vertex_of.emplace(simp, z);
    out.members.emplace(z, simp);
    out.carrier.emplace(z, s.carrier_of(simp));
  }

  // Facets are the maximal chains under strict inclusion: one per facet of k
  // and per ordering of its vertices.
  std::vector<Simplex> facets;
  for (const auto& f : k.facets()) {
    std::vector<VertexId> base = f.ids();  // sorted; a valid permutation start
    do {
      std::vector<VertexId> chain;
      chain.reserve(base.size());
      std::vector<VertexId> prefix;
      for (VertexId v : base) {
        prefix.push_back(v);
        chain.push_back(vertex_of.at(Simplex(prefix)));
      }
      facets.emplace_back(std::move(chain));
    } while (std::next_permutation(base.begin(), base.end()));
  }
  out.complex = Complex::from_facets(std::move(facets));
  return out;
}

SubdividedComplex bary_t(const Complex& k, unsigned t, const Limits& limits) {
  SubdividedComplex s = SubdividedComplex::base(k);
  for (unsigned i = 0; i < t; ++i) s = bary(s, limits);
  return s;
}

// ---------------------------------------------------------------------------
// Components, diameter, completeness

namespace {

// Adjacency lists of the 1-skeleton, keyed by vertex id.
std::unordered_map<VertexId, std::vector<VertexId>> skeleton_adjacency(const Complex& k) {
  std::unordered_map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : k.vertices()) adj.emplace(v, std::vector<VertexId>());
  for (const auto& f : k.facets()) {
    const auto& ids = f.ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        adj[ids[i]].push_back(ids[j]);
        adj[ids[j]].push_back(ids[i]);
      }
  }
  for (auto& [v, ns] : adj) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  return adj;
}

}  // namespace

std::vector<std::vector<VertexId>> connected_components(const Complex& k) {
  auto adj = skeleton_adjacency(k);
  std::unordered_set<VertexId> visited;
  std::vector<std::vector<VertexId>> comps;
  for (VertexId start : k.vertices()) {  // label order => deterministic
    if (visited.count(start)) continue;
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    q.push(start);
    visited.insert(start);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      comp.push_back(v);
      for (VertexId w : adj.at(v)) {
        if (visited.insert(w).second) q.push(w);
      }
    }
    std::sort(comp.begin(), comp.end(), label_less);
    comps.push_back(std::move(comp));
  }
  // Components are discovered in order of their minimal label already, but
  // sort explicitly to keep the contract independent of traversal order.
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return vertex_label(a.front()) < vertex_label(b.front());
  });
  return comps;
}

int component_diameter(const Complex& k) {
  auto adj = skeleton_adjacency(k);
  int best = 0;
  for (VertexId start : k.vertices()) {
    std::unordered_map<VertexId, int> dist;
    dist[start] = 0;
    std::queue<VertexId> q;
    q.push(start);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId w : adj.at(v)) {
        if (!dist.count(w)) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    for (const auto& [v, d] : dist) best = std::max(best, d);
  }
  return best;
}

std::vector<bool> is_complete_up_to(const Complex& k, int d) {
  std::vector<bool> out;
  for (const auto& comp : connected_components(k)) {
    bool complete = true;
    if (comp.size() > 24) throw Error(ErrorKind::ResourceLimit, "component too large to enumerate");
    const std::uint32_t full = (1u << comp.size()) - 1u;
    for (std::uint32_t mask = 1; mask <= full && complete; ++mask) {
      int bits = __builtin_popcount(mask);
      if (bits < 1 || bits > d + 1) continue;
      std::vector<VertexId> verts;
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (mask & (1u << i)) verts.push_back(comp[i]);
      if (!k.contains(Simplex(std::move(verts)))) complete = false;
    }
    out.push_back(complete);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stars and isomorphism

Complex star(const Complex& k, VertexId v) {
  std::vector<Simplex> fs;
  for (const auto& f : k.facets())
    if (f.has(v)) fs.push_back(f);
  return Complex::from_facets(std::move(fs));
}

namespace {

// Facet-degree of every vertex, used to prune the isomorphism search.
std::unordered_map<VertexId, int> facet_degrees(const Complex& k) {
  std::unordered_map<VertexId, int> deg;
  for (VertexId v : k.vertices()) deg[v] = 0;
  for (const auto& f : k.facets())
    for (VertexId v : f.ids()) deg[v]++;
  return deg;
}

bool iso_search(const Complex& a, const Complex& b, const std::vector<VertexId>& va,
                const std::vector<VertexId>& vb, const std::unordered_map<VertexId, int>& da,
                const std::unordered_map<VertexId, int>& db, std::size_t i,
                std::unordered_map<VertexId, VertexId>& map, std::unordered_set<VertexId>& used) {
  if (i == va.size()) {
    // All facets of a must map onto facets of b, and counts match.
    for (const auto& f : a.facets()) {
      std::vector<VertexId> img;
      for (VertexId v : f.ids()) img.push_back(map.at(v));
      Simplex s(std::move(img));
      if (s.size() != f.size()) return false;
      bool is_facet = false;
      for (const auto& g : b.facets())
        if (g == s) { is_facet = true; break; }
      if (!is_facet) return false;
    }
    return true;
  }
  VertexId v = va[i];
  for (VertexId w : vb) {
    if (used.count(w)) continue;
    if (da.at(v) != db.at(w)) continue;
    map[v] = w;
    used.insert(w);
    if (iso_search(a, b, va, vb, da, db, i + 1, map, used)) return true;
    map.erase(v);
    used.erase(w);
  }
  return false;
}

}  // namespace

bool complexes_isomorphic(const Complex& a, const Complex& b) {
  if (a.vertices().size() != b.vertices().size()) return false;
  if (a.facets().size() != b.facets().size()) return false;
  std::vector<std::size_t> sa, sb;
  for (const auto& f : a.facets()) sa.push_back(f.size());
  for (const auto& f : b.facets()) sb.push_back(f.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  auto da = facet_degrees(a), db = facet_degrees(b);
  std::unordered_map<VertexId, VertexId> map;
  std::unordered_set<VertexId> used;
  return iso_search(a, b, a.vertices(), b.vertices(), da, db, 0, map, used);
}

// ---------------------------------------------------------------------------
// Construction and export

Complex build_complex(const std::vector<std::vector<std::string>>& facets) {
  std::vector<Simplex> fs;
  fs.reserve(facets.size());
  for (const auto& labels : facets) {
    if (labels.empty()) throw Error(ErrorKind::EmptySimplex, "facet with no vertices");
    fs.push_back(Simplex::from_labels(labels));
  }
  return Complex::from_facets(std::move(fs));
}

Complex skeleton(const Complex& k, int d) {
  if (d < 0) return Complex();
  std::vector<Simplex> fs;
  for (const auto& f : k.facets()) {
    if (f.dim() <= d) {
      fs.push_back(f);
      continue;
    }
    // All (d+1)-subsets of the facet.
    const auto& ids = f.ids();
    std::vector<std::size_t> idx(static_cast<std::size_t>(d) + 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    while (true) {
      std::vector<VertexId> verts;
      for (std::size_t i : idx) verts.push_back(ids[i]);
      fs.emplace_back(std::move(verts));
      // next combination
      std::size_t pos = idx.size();
      while (pos > 0) {
        --pos;
        if (idx[pos] + (idx.size() - pos) < ids.size()) break;
      }
      if (idx[pos] + (idx.size() - pos) >= ids.size()) break;
      ++idx[pos];
      for (std::size_t i = pos + 1; i < idx.size(); ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return Complex::from_facets(std::move(fs));
}

std::string canonical_facets_string(const Complex& k) {
  std::string out;
  for (const auto& f : k.facets()) {
    if (!out.empty()) out += '|';
    out += f.encode();
  }
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string complex_to_dot(const Complex& k, std::string_view graph_name) {
  std::ostringstream os;
  os << "graph " << dot_quote(std::string(graph_name)) << " {\n";
  for (VertexId v : k.vertices()) os << "  " << dot_quote(vertex_label(v)) << ";\n";
  // Edges of the 1-skeleton, each once, in canonical order.
  std::vector<std::pair<std::string, std::string>> edges;
  std::unordered_set<Simplex, SimplexHash> seen;
  for (const auto& f : k.facets()) {
    const auto& ids = f.ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        Simplex e({ids[i], ids[j]});
        if (!seen.insert(e).second) continue;
        auto ls = e.labels();
        edges.emplace_back(ls[0], ls[1]);
      }
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges)
    os << "  " << dot_quote(a) << " -- " << dot_quote(b) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace wfd
