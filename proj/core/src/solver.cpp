#include "wfd/solver.hpp"

#include <algorithm>

namespace wfd {

namespace {

class Searcher {
 public:
  Searcher(const MapSearchProblem& p, const Limits& limits) : p_(p), limits_(limits) {
    vars_ = p.source.vertices();
    for (std::size_t i = 0; i < vars_.size(); ++i) index_[vars_[i]] = i;

    facet_degree_.assign(vars_.size(), 0);
    for (const auto& f : p.source.facets())
      for (VertexId v : f.ids()) facet_degree_[index_.at(v)]++;

    domains_.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = p.domains.find(vars_[i]);
      if (it == p.domains.end())
        throw Error(ErrorKind::InvalidArgument,
                    "no domain for source vertex '" + vertex_label(vars_[i]) + "'");
      std::vector<VertexId> dom = it->second;
      std::sort(dom.begin(), dom.end(), label_less);
      dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
      std::erase_if(dom, [&](VertexId y) { return !p.target.has_vertex(y); });
      auto pin = p.pinned.find(vars_[i]);
      if (pin != p.pinned.end())
        std::erase_if(dom, [&](VertexId y) { return y != pin->second; });
      domains_[i] = std::move(dom);
    }

    for (const auto& [scope, complex] : p.constraints) {
      if (!p.source.contains(scope))
        throw Error(ErrorKind::InvalidArgument,
                    "constraint scope " + scope.encode() + " is not a simplex of the source");
      add_constraint(scope, complex);
    }
    // Implicit simpliciality: every facet's image must be a simplex of the
    // target.
    for (const auto& f : p.source.facets()) add_constraint(f, p.target);

    // Small scopes first, so chains propagate before higher simplices.
    for (auto& inc : incident_) {
      std::sort(inc.begin(), inc.end(), [&](std::size_t a, std::size_t b) {
        if (constraints_[a].scope.size() != constraints_[b].scope.size())
          return constraints_[a].scope.size() < constraints_[b].scope.size();
        return a < b;
      });
    }
    assigned_.assign(vars_.size(), std::nullopt);
  }

  SearchOutcome run() {
    SearchOutcome out;
    // Initial unary prune: the image of a single vertex must be a vertex of
    // every complex constraining a simplex through it.
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      for (std::size_t c : incident_[i]) {
        std::erase_if(domains_[i], [&](VertexId y) {
          return !constraints_[c].complex->has_vertex(y);
        });
      }
      if (domains_[i].empty()) {
        out.stats = stats_;
        return out;  // exhausted without search
      }
    }
    if (search()) {
      SimplicialMapping m;
      m.source = p_.source;
      m.target = p_.target;
      for (std::size_t i = 0; i < vars_.size(); ++i) m.assignment[vars_[i]] = *assigned_[i];
      out.witness = std::move(m);
    }
    out.stats = stats_;
    return out;
  }

 private:
  struct Constraint {
    std::vector<std::size_t> scope;  // variable indices
    const Complex* complex;
  };

  void add_constraint(const Simplex& scope, const Complex& complex) {
    Constraint c;
    for (VertexId v : scope.ids()) c.scope.push_back(index_.at(v));
    c.complex = &complex;
    std::size_t id = constraints_.size();
    constraints_.push_back(std::move(c));
    incident_.resize(vars_.size());
    for (std::size_t vi : constraints_.back().scope) incident_[vi].push_back(id);
  }

  // Partial image of a constraint scope under the current assignment.
  std::vector<VertexId> partial_image(const Constraint& c) const {
    std::vector<VertexId> img;
    for (std::size_t vi : c.scope)
      if (assigned_[vi]) img.push_back(*assigned_[vi]);
    return img;
  }

  std::size_t pick_variable() const {
    std::size_t best = vars_.size();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (assigned_[i]) continue;
      if (best == vars_.size()) {
        best = i;
        continue;
      }
      std::size_t ds = domains_[i].size(), bs = domains_[best].size();
      if (ds != bs) {
        if (ds < bs) best = i;
        continue;
      }
      if (facet_degree_[i] != facet_degree_[best]) {
        if (facet_degree_[i] > facet_degree_[best]) best = i;
        continue;
      }
      if (label_less(vars_[i], vars_[best])) best = i;
    }
    return best;
  }

  bool search() {
    std::size_t var = pick_variable();
    if (var == vars_.size()) return true;  // all assigned

    const std::vector<VertexId> values = domains_[var];
    for (VertexId y : values) {
      if (++stats_.nodes > limits_.max_search_nodes)
        throw Error(ErrorKind::ResourceLimit,
                    "search node budget exceeded (" + std::to_string(stats_.nodes) + " nodes)");
      assigned_[var] = y;
      std::vector<std::vector<VertexId>> saved = domains_;
      bool ok = true;
      for (std::size_t ci : incident_[var]) {
        const Constraint& c = constraints_[ci];
        std::vector<VertexId> img = partial_image(c);
        if (!c.complex->contains(Simplex(img))) {
          ok = false;
          break;
        }
        // Forward checking: a future value must extend the partial image to
        // a simplex of the constraint complex.
        for (std::size_t vi : c.scope) {
          if (assigned_[vi]) continue;
          std::erase_if(domains_[vi], [&](VertexId z) {
            std::vector<VertexId> ext = img;
            ext.push_back(z);
            return !c.complex->contains(Simplex(std::move(ext)));
          });
          if (domains_[vi].empty()) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok && search()) return true;
      assigned_[var] = std::nullopt;
      domains_ = std::move(saved);
      ++stats_.backtracks;
    }
    return false;
  }

  const MapSearchProblem& p_;
  const Limits& limits_;
  std::vector<VertexId> vars_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<VertexId>> domains_;
  std::vector<int> facet_degree_;
  std::vector<std::optional<VertexId>> assigned_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> incident_;
  SearchStats stats_;
};

}  // namespace

SearchOutcome find_map(const MapSearchProblem& p, const Limits& limits) {
  return Searcher(p, limits).run();
}

SearchOutcome zero_round_solvable(const ColorlessTask& t, int n, const Limits& limits) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 2 processes");
  Complex s = skeleton(t.input, n - 1);
  MapSearchProblem p;
  p.source = s;
  p.target = t.output;
  for (VertexId v : s.vertices()) p.domains[v] = t.delta_of(Simplex({v})).vertices();
  for (const auto& sigma : s.all_simplices())
    if (sigma.dim() >= 1) p.constraints.emplace_back(sigma, t.delta_of(sigma));
  return find_map(p, limits);
}

namespace {

// The 0-round style witness when tau is already a simplex of Delta(sigma):
// each view decides some fixed member of itself (the label-least one).
SimplicialMapping select_member_witness(const SubdividedComplex& b, const Complex& target) {
  SimplicialMapping m;
  m.source = b.complex;
  m.target = target;
  for (VertexId z : b.complex.vertices()) {
    const Simplex& view = b.members.at(z);
    VertexId least = view.ids()[0];
    for (VertexId v : view.ids())
      if (label_less(v, least)) least = v;
    m.assignment[z] = least;
  }
  return m;
}

// The dimension bound of the local-task specification is implied by
// simpliciality; assert it rather than search for it.
void assert_local_dimension_bound(const SubdividedComplex& b, const Complex& image,
                                  const SimplicialMapping& witness) {
  for (const auto& rho : b.complex.all_simplices()) {
    Simplex img = witness.image(rho);
    Simplex face = b.carrier_of(rho);
    if (img.dim() > face.dim() || !skeleton(image, face.dim()).contains(img))
      throw Error(ErrorKind::WitnessInvalid,
                  "local witness violates the skeleton bound on " + rho.encode());
  }
}

}  // namespace

SearchOutcome one_round_local_solvable(const ColorlessTask& t, const Simplex& sigma,
                                       const Simplex& tau, const Limits& limits) {
  const Complex& image = t.delta_of(sigma);
  for (VertexId v : tau.ids())
    if (!image.has_vertex(v))
      throw Error(ErrorKind::VertexNotInImage,
                  "'" + vertex_label(v) + "' is not a vertex of delta(" + sigma.encode() + ")");
  if (tau.dim() > sigma.dim())
    throw Error(ErrorKind::InvalidArgument,
                "tau exceeds the dimension budget of " + sigma.encode());

  SubdividedComplex b = bary(SubdividedComplex::base(Complex::from_facets({tau})), limits);

  if (image.contains(tau)) {
    SearchOutcome out;
    out.witness = select_member_witness(b, image);
    assert_local_dimension_bound(b, image, *out.witness);
    return out;
  }

  MapSearchProblem p;
  p.source = b.complex;
  p.target = image;
  for (VertexId z : b.complex.vertices()) p.domains[z] = image.vertices();
  for (VertexId v : tau.ids()) p.pinned[intern_vertex(Simplex({v}).encode())] = v;

  SearchOutcome out = find_map(p, limits);
  if (out.found()) assert_local_dimension_bound(b, image, *out.witness);
  return out;
}

SearchOutcome t_round_solvable(const ColorlessTask& t, int n, unsigned rounds,
                               const Limits& limits) {
  if (rounds == 0) return zero_round_solvable(t, n, limits);
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 2 processes");
  Complex s = skeleton(t.input, n - 1);
  SubdividedComplex tower = bary_t(s, rounds, limits);

  MapSearchProblem p;
  p.source = tower.complex;
  p.target = t.output;
  for (VertexId w : tower.complex.vertices())
    p.domains[w] = t.delta_of(tower.carrier_of_vertex(w)).vertices();
  for (const auto& rho : tower.complex.all_simplices())
    if (rho.dim() >= 1) p.constraints.emplace_back(rho, t.delta_of(tower.carrier_of(rho)));
  return find_map(p, limits);
}

CheckResult check_witness(const ColorlessTask& t, int n, unsigned rounds,
                          const SimplicialMapping& map, const Limits& limits) {
  try {
    Complex s = skeleton(t.input, n - 1);
    SubdividedComplex tower = bary_t(s, rounds, limits);
    if (!(map.source == tower.complex))
      return {false, "witness source is not Bary^" + std::to_string(rounds) + " of the skeleton"};
    if (!(map.target == t.output)) return {false, "witness target is not the output complex"};
    for (VertexId w : tower.complex.vertices()) {
      VertexId y = map.image_of(w);
      if (!t.delta_of(tower.carrier_of_vertex(w)).has_vertex(y))
        return {false, "decision at '" + vertex_label(w) + "' leaves delta of its carrier"};
    }
    for (const auto& rho : tower.complex.all_simplices()) {
      if (!t.delta_of(tower.carrier_of(rho)).contains(map.image(rho)))
        return {false, "image of " + rho.encode() + " is not in delta of its carrier"};
    }
    return {true, ""};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

}  // namespace wfd
