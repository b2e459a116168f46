#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wfd/errors.hpp"
#include "wfd/limits.hpp"

namespace wfd {

// Vertices are opaque text labels interned to dense ids. Interning is
// process-global and guarded by a shared mutex, so concurrent use is safe.
// Every ordering that is observable in output is by label, never by id.
using VertexId = std::uint32_t;

VertexId intern_vertex(std::string_view label);
const std::string& vertex_label(VertexId id);
bool label_less(VertexId a, VertexId b);

// A nonempty finite vertex set. Ids are kept sorted ascending, so equality
// and subset tests are cheap; label order is recomputed where needed.
class Simplex {
 public:
  explicit Simplex(std::vector<VertexId> vertices);
  static Simplex from_labels(const std::vector<std::string>& labels);

  const std::vector<VertexId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  int dim() const { return static_cast<int>(ids_.size()) - 1; }
  bool has(VertexId v) const;
  bool subset_of(const Simplex& other) const;

  Simplex union_with(const Simplex& other) const;

  // Labels sorted lexicographically; the canonical presentation.
  std::vector<std::string> labels() const;
  // Canonical encoding "{a,b}" with labels sorted. This is exactly the label
  // given to the barycentric-subdivision vertex that stands for this simplex.
  std::string encode() const;

  bool operator==(const Simplex& other) const { return ids_ == other.ids_; }

 private:
  std::vector<VertexId> ids_;  // sorted ascending, unique
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

// Lexicographic order on the sorted label sequences.
bool simplex_label_less(const Simplex& a, const Simplex& b);

// Splits a canonical encoding "{...}" into its member labels. Returns an
// empty vector when the input is not an encoding (a base label).
std::vector<std::string> decode_label(std::string_view label);

// An abstract simplicial complex given by its facets. A simplex is a member
// iff it is a nonempty subset of some facet; downward closure is implicit.
// Facets are stored in canonical (label-sequence) order, so operator== is
// structural equality.
class Complex {
 public:
  Complex() = default;
  static Complex from_facets(std::vector<Simplex> facets);

  const std::vector<Simplex>& facets() const { return facets_; }
  // All vertices, sorted by label.
  const std::vector<VertexId>& vertices() const { return vertices_; }
  bool has_vertex(VertexId v) const { return vset_.count(v) != 0; }
  bool contains(const Simplex& s) const;
  bool empty() const { return facets_.empty(); }
  int dim() const;

  // Every nonempty simplex, in canonical order.
  std::vector<Simplex> all_simplices() const;

  bool operator==(const Complex& other) const { return facets_ == other.facets_; }
  bool operator!=(const Complex& other) const { return !(*this == other); }

 private:
  std::vector<Simplex> facets_;
  std::vector<VertexId> vertices_;
  std::unordered_set<VertexId> vset_;
};

struct ComplexHash {
  std::size_t operator()(const Complex& k) const noexcept;
};

// A vertex map between complexes. check_simplicial demands totality and that
// every facet's image set is a simplex of the target (collapsing allowed).
struct SimplicialMapping {
  Complex source;
  Complex target;
  std::unordered_map<VertexId, VertexId> assignment;

  VertexId image_of(VertexId v) const;
  // Image vertex set of a source simplex.
  Simplex image(const Simplex& s) const;
};

bool check_simplicial(const SimplicialMapping& m);

// g after f; requires f.target == g.source vertex-compatible.
SimplicialMapping compose(const SimplicialMapping& f, const SimplicialMapping& g);

// A complex produced by iterated barycentric subdivision, together with the
// carrier of each vertex (the minimal base simplex containing it) and, for
// level >= 1, the simplex of the previous level each vertex stands for.
struct SubdividedComplex {
  Complex complex;
  std::unordered_map<VertexId, Simplex> carrier;
  std::unordered_map<VertexId, Simplex> members;  // empty at level 0
  unsigned level = 0;

  static SubdividedComplex base(Complex k);
  const Simplex& carrier_of_vertex(VertexId v) const;
  // Union of the vertex carriers; a simplex of the base complex.
  Simplex carrier_of(const Simplex& s) const;
};

// Operations.

Complex build_complex(const std::vector<std::vector<std::string>>& facets);
// Subcomplex of all simplices with dimension <= d.
Complex skeleton(const Complex& k, int d);
SubdividedComplex bary(const SubdividedComplex& s, const Limits& limits = {});
SubdividedComplex bary_t(const Complex& k, unsigned t, const Limits& limits = {});

// Partition of the vertex set by connectivity of the 1-skeleton graph.
// Components are ordered by minimal vertex label; vertices label-sorted.
std::vector<std::vector<VertexId>> connected_components(const Complex& k);
// Max over components of the graph diameter; 0 for isolated vertices.
int component_diameter(const Complex& k);
// One flag per connected component (same order as connected_components):
// true iff every subset of the component's vertices with dimension in [0,d]
// is a simplex of k.
std::vector<bool> is_complete_up_to(const Complex& k, int d);

// All simplices of k that contain v.
Complex star(const Complex& k, VertexId v);
bool complexes_isomorphic(const Complex& a, const Complex& b);

// Compact canonical form, e.g. "{a,b}|{b,c}"; used as a memo key.
std::string canonical_facets_string(const Complex& k);

// DOT rendering of the 1-skeleton; labels are quoted verbatim.
std::string complex_to_dot(const Complex& k, std::string_view graph_name);

}  // namespace wfd
