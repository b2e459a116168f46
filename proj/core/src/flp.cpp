#include "wfd/flp.hpp"

#include <algorithm>
#include <set>

namespace wfd {

const std::vector<VertexId>* ValencyAnswer::find(const Simplex& s) const {
  for (const auto& e : entries)
    if (e.simplex == s) return &e.values;
  return nullptr;
}

namespace {

std::vector<VertexId> sorted_values(std::vector<VertexId> vs) {
  std::sort(vs.begin(), vs.end(), label_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// The five simplices of Bary^1 of a configuration edge, canonical order.
std::vector<Simplex> child_simplices(const Simplex& edge, const Limits& limits) {
  SubdividedComplex b = bary(SubdividedComplex::base(Complex::from_facets({edge})), limits);
  return b.complex.all_simplices();
}

}  // namespace

// ---------------------------------------------------------------------------
// Oracles

namespace {

class StubbornOracle final : public ValencyOracle {
 public:
  StubbornOracle(const ColorlessTask& t, int n) : task_(t), n_(n) {}

  std::vector<ValencyEntry> initial_valencies() override {
    std::vector<ValencyEntry> out;
    for (const auto& sigma : skeleton(task_.input, n_ - 1).all_simplices()) {
      std::vector<VertexId> vals;
      for (VertexId x : sigma.ids()) vals.push_back(decision(x));
      out.push_back({sigma, sorted_values(std::move(vals))});
    }
    return out;
  }

  ValencyAnswer answer(const std::vector<ValencyQuery>&, const ValencyQuery& q) override {
    ValencyAnswer a;
    for (const auto& s : q.simplices) {
      std::vector<VertexId> vals;
      for (VertexId z : s.ids()) vals.push_back(value_of(vertex_label(z)));
      a.entries.push_back({s, sorted_values(std::move(vals))});
    }
    return a;
  }

 private:
  // Solo decision: the label-least vertex of Delta({x}).
  VertexId decision(VertexId x) {
    const Complex& img = task_.delta_of(Simplex({x}));
    if (img.vertices().empty())
      throw Error(ErrorKind::InvalidArgument,
                  "delta of vertex '" + vertex_label(x) + "' is empty");
    return img.vertices().front();
  }

  // The stubborn valuation, recursing through the nested view encoding:
  // a solo view inherits, a joint view copies its lexicographically
  // smaller member.
  VertexId value_of(const std::string& label) {
    std::vector<std::string> members = decode_label(label);
    if (members.empty()) return decision(intern_vertex(label));
    if (members.size() == 1) return value_of(members[0]);
    return value_of(*std::min_element(members.begin(), members.end()));
  }

  ColorlessTask task_;
  int n_;
};

class HonestOracle final : public ValencyOracle {
 public:
  HonestOracle(const ColorlessTask& t, int n, RoundWitness witness, const Limits& limits)
      : task_(t), n_(n), witness_(std::move(witness)), limits_(limits) {
    CheckResult c = check_witness(task_, n_, witness_.rounds, witness_.map, limits_);
    if (!c.ok) throw Error(ErrorKind::WitnessInvalid, c.why);
  }

  std::vector<ValencyEntry> initial_valencies() override {
    std::vector<ValencyEntry> out;
    for (const auto& sigma : skeleton(task_.input, n_ - 1).all_simplices())
      out.push_back({sigma, valency(sigma, 0)});
    return out;
  }

  ValencyAnswer answer(const std::vector<ValencyQuery>&, const ValencyQuery& q) override {
    unsigned level = q.parent.level + 1;
    ValencyAnswer a;
    for (const auto& s : q.simplices) a.entries.push_back({s, valency(s, level)});
    return a;
  }

 private:
  // Outputs produced in the executions extending a level-`level` simplex:
  // the witness image of all its depth-t* descendants.
  std::vector<VertexId> valency(const Simplex& s, unsigned level) {
    if (level > witness_.rounds)
      throw Error(ErrorKind::WitnessInvalid, "valency query below the decision depth");
    SubdividedComplex sub =
        bary_t(Complex::from_facets({s}), witness_.rounds - level, limits_);
    std::vector<VertexId> vals;
    for (VertexId v : sub.complex.vertices()) vals.push_back(witness_.map.image_of(v));
    return sorted_values(std::move(vals));
  }

  ColorlessTask task_;
  int n_;
  RoundWitness witness_;
  Limits limits_;
};

}  // namespace

std::unique_ptr<ValencyOracle> make_stubborn_oracle(const ColorlessTask& t, int n) {
  return std::make_unique<StubbornOracle>(t, n);
}

std::unique_ptr<ValencyOracle> make_honest_oracle(const ColorlessTask& t, int n,
                                                  RoundWitness witness) {
  return std::make_unique<HonestOracle>(t, n, std::move(witness), Limits{});
}

// ---------------------------------------------------------------------------
// Validation

CheckResult validate_valency(const Configuration& parent,
                             const std::vector<VertexId>& parent_val,
                             const ValencyAnswer& answer, const ColorlessTask& t,
                             const Simplex& sigma0) {
  std::vector<Simplex> expected = child_simplices(parent.simplex, Limits{});
  if (answer.entries.size() != expected.size())
    return {false, "coverage: answer must cover exactly Bary^1 of the configuration"};
  for (const auto& s : expected)
    if (answer.find(s) == nullptr)
      return {false, "coverage: no valency for " + s.encode()};

  const Complex& image0 = t.delta_of(sigma0);
  std::set<VertexId> uni;
  for (const auto& e : answer.entries) {
    if (e.values.empty()) return {false, "empty valency for " + e.simplex.encode()};
    if (e.simplex.size() == 1 && e.values.size() != 1)
      return {false, "vertex valency must be a singleton at " + e.simplex.encode()};
    for (VertexId y : e.values) {
      if (!image0.has_vertex(y))
        return {false, "Delta-consistency: '" + vertex_label(y) + "' is outside delta(" +
                           sigma0.encode() + ")"};
      uni.insert(y);
    }
    for (VertexId y : e.values)
      if (std::find(parent_val.begin(), parent_val.end(), y) == parent_val.end())
        return {false, "self-consistency: valency of " + e.simplex.encode() +
                           " exceeds the parent valency"};
  }
  std::set<VertexId> parent_set(parent_val.begin(), parent_val.end());
  if (uni != parent_set)
    return {false, "self-consistency: child valencies do not cover the parent valency"};

  // Monotonicity: vertex valencies are contained in incident edge valencies.
  for (const auto& e : answer.entries) {
    if (e.simplex.size() < 2) continue;
    for (VertexId z : e.simplex.ids()) {
      const auto* sub = answer.find(Simplex({z}));
      if (sub == nullptr) continue;
      for (VertexId y : *sub)
        if (std::find(e.values.begin(), e.values.end(), y) == e.values.end())
          return {false, "monotonicity: valency of {" + vertex_label(z) +
                             "} is not contained in its edge " + e.simplex.encode()};
    }
  }
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Prover

std::optional<InitAttack> prover_init(const ColorlessTask& t, int n,
                                      const std::vector<ValencyEntry>& initial_vals,
                                      const ClosureOptions& opts, const Limits& limits) {
  Complex skel = skeleton(t.input, n - 1);
  std::vector<Simplex> simplices = skel.all_simplices();

  std::unordered_map<Simplex, std::vector<VertexId>, SimplexHash> val;
  for (const auto& e : initial_vals) {
    if (!val.emplace(e.simplex, sorted_values(e.values)).second)
      throw Error(ErrorKind::InconsistentValency,
                  "duplicate valency for " + e.simplex.encode());
  }
  auto val_of = [&](const Simplex& s) -> const std::vector<VertexId>& {
    auto it = val.find(s);
    if (it == val.end())
      throw Error(ErrorKind::InconsistentValency, "no valency for " + s.encode());
    return it->second;
  };

  std::unordered_map<VertexId, VertexId> delta_map;
  for (const auto& sigma : simplices) {
    const auto& vs = val_of(sigma);
    if (vs.empty())
      throw Error(ErrorKind::InconsistentValency, "empty valency for " + sigma.encode());
    for (VertexId y : vs)
      if (!t.delta_of(sigma).has_vertex(y))
        throw Error(ErrorKind::InconsistentValency,
                    "valency of " + sigma.encode() + " is not Delta-consistent");
    if (sigma.size() == 1) {
      if (vs.size() != 1)
        throw Error(ErrorKind::InconsistentValency,
                    "vertex valency must be a singleton at " + sigma.encode());
      delta_map[sigma.ids()[0]] = vs[0];
    }
  }
  for (const auto& small : simplices)
    for (const auto& big : simplices) {
      if (small == big || !small.subset_of(big)) continue;
      const auto& vs = val_of(small);
      const auto& vb = val_of(big);
      for (VertexId y : vs)
        if (std::find(vb.begin(), vb.end(), y) == vb.end())
          throw Error(ErrorKind::InconsistentValency,
                      "valencies are not monotone between " + small.encode() + " and " +
                          big.encode());
    }

  ColorlessTask star_task = fixed_point(t, opts, limits).task;

  for (const auto& sigma : simplices) {
    std::vector<VertexId> img;
    for (VertexId x : sigma.ids()) img.push_back(delta_map.at(x));
    Simplex decided(std::move(img));
    if (star_task.delta_of(sigma).contains(decided)) continue;

    // The solo decisions on sigma leave the fixed point, so they must touch
    // two different components.
    auto comps_sigma = connected_components(t.delta_of(sigma));
    auto comp_index = [&](VertexId y) -> std::size_t {
      for (std::size_t c = 0; c < comps_sigma.size(); ++c)
        if (std::binary_search(comps_sigma[c].begin(), comps_sigma[c].end(), y,
                               label_less))
          return c;
      return comps_sigma.size();
    };
    const auto& ids = sigma.ids();
    std::vector<VertexId> by_label = ids;
    std::sort(by_label.begin(), by_label.end(), label_less);
    for (std::size_t i = 0; i < by_label.size(); ++i) {
      for (std::size_t j = i + 1; j < by_label.size(); ++j) {
        VertexId x = by_label[i], x2 = by_label[j];
        if (comp_index(delta_map.at(x)) == comp_index(delta_map.at(x2))) continue;
        Simplex sigma0({x, x2});
        auto comps0 = connected_components(t.delta_of(sigma0));
        const std::vector<VertexId>* c = nullptr;
        const std::vector<VertexId>* c2 = nullptr;
        for (const auto& comp : comps0) {
          if (std::binary_search(comp.begin(), comp.end(), delta_map.at(x), label_less))
            c = &comp;
          if (std::binary_search(comp.begin(), comp.end(), delta_map.at(x2), label_less))
            c2 = &comp;
        }
        if (c == nullptr || c2 == nullptr || c == c2) continue;
        return InitAttack{sigma0, *c, *c2, sigma};
      }
    }
  }
  return std::nullopt;
}

StepChoice prover_step(const ColorlessTask& t, const Simplex& sigma0,
                       const std::vector<std::vector<VertexId>>& components,
                       const Configuration& current, const ValencyAnswer& answer) {
  (void)t;
  auto comp_index = [&](VertexId y) -> std::size_t {
    for (std::size_t c = 0; c < components.size(); ++c)
      if (std::binary_search(components[c].begin(), components[c].end(), y, label_less))
        return c;
    return components.size();
  };

  SubdividedComplex b =
      bary(SubdividedComplex::base(Complex::from_facets({current.simplex})), Limits{});
  for (const auto& edge : b.complex.facets()) {  // canonical order; ties break on labels
    const auto* vals = answer.find(edge);
    if (vals == nullptr) continue;
    std::set<std::size_t> met;
    for (VertexId y : *vals) met.insert(comp_index(y));
    if (met.size() >= 2) {
      auto it = met.begin();
      std::size_t a = *it++;
      std::size_t b2 = *it;
      Configuration next{current.level + 1, edge, sigma0};
      return StepChoice{next, {components[a], components[b2]}};
    }
  }
  throw Error(ErrorKind::NoBivalentChild,
              "every child of " + current.simplex.encode() + " is univalent");
}

// ---------------------------------------------------------------------------
// Pipeline

FlpOutcome flp_from_round_reduction(const ColorlessTask& t, int n, ValencyOracle& oracle,
                                    unsigned steps, const ClosureOptions& opts,
                                    const Limits& limits) {
  std::vector<ValencyEntry> init = oracle.initial_valencies();
  std::optional<InitAttack> attack = prover_init(t, n, init, opts, limits);
  if (!attack) return ProverConcedes{0, ProverConcedes::Reason::no_attack};

  const Simplex sigma0 = attack->sigma0;
  auto components = connected_components(t.delta_of(sigma0));

  FLPTranscript tr{"", n, sigma0, {attack->component, attack->component_prime}, {}};

  Configuration current{0, sigma0, sigma0};
  std::vector<VertexId> current_val;
  for (const auto& e : init)
    if (e.simplex == sigma0) current_val = e.values;

  std::vector<ValencyQuery> history;
  for (unsigned i = 0; i < steps; ++i) {
    ValencyQuery q{current, current_val, child_simplices(current.simplex, limits)};
    ValencyAnswer ans = oracle.answer(history, q);
    history.push_back(q);
    CheckResult cv = validate_valency(current, current_val, ans, t, sigma0);
    if (!cv.ok) throw Error(ErrorKind::InconsistentOracle, cv.why);
    std::optional<StepChoice> choice;
    try {
      choice = prover_step(t, sigma0, components, current, ans);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoBivalentChild)
        return ProverConcedes{i, ProverConcedes::Reason::no_bivalent_child};
      throw;
    }
    current_val = *ans.find(choice->next.simplex);
    tr.steps.push_back({current, std::move(ans), choice->next.simplex, choice->bivalence});
    current = choice->next;
  }
  return tr;
}

CheckResult verify_transcript(const ColorlessTask& t, int n, const FLPTranscript& tr,
                              const Limits& limits) {
  try {
    if (tr.sigma0.size() != 2) return {false, "sigma0 must hold two views"};
    if (!t.input.contains(tr.sigma0)) return {false, "sigma0 is not a simplex of the input"};
    if (n < 2) return {false, "n must be at least 2"};

    auto components = connected_components(t.delta_of(tr.sigma0));
    auto is_component = [&](const std::vector<VertexId>& c) {
      return std::find(components.begin(), components.end(), c) != components.end();
    };
    if (!is_component(tr.component_pair.first) || !is_component(tr.component_pair.second) ||
        tr.component_pair.first == tr.component_pair.second)
      return {false, "components: the certified pair are not two distinct components of "
                     "delta(sigma0)"};

    Simplex expect = tr.sigma0;
    std::vector<VertexId> parent_val;  // derived for step 0
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
      const TranscriptStep& step = tr.steps[i];
      if (step.config.level != i) return {false, "containment: level jump at step " + std::to_string(i)};
      if (!(step.config.simplex == expect))
        return {false, "containment: step " + std::to_string(i) +
                           " does not continue the previous choice"};

      if (i == 0) {
        std::set<VertexId> uni;
        for (const auto& e : step.valencies.entries)
          uni.insert(e.values.begin(), e.values.end());
        parent_val.assign(uni.begin(), uni.end());
        std::sort(parent_val.begin(), parent_val.end(), label_less);
      }
      CheckResult cv = validate_valency(step.config, parent_val, step.valencies, t, tr.sigma0);
      if (!cv.ok) return cv;

      std::vector<Simplex> children = child_simplices(step.config.simplex, limits);
      bool chosen_is_child_edge = false;
      for (const auto& s : children)
        if (s.size() == 2 && s == step.chosen) chosen_is_child_edge = true;
      if (!chosen_is_child_edge)
        return {false, "containment: chosen simplex at step " + std::to_string(i) +
                           " is not an edge of Bary^1"};

      const auto* chosen_val = step.valencies.find(step.chosen);
      if (chosen_val == nullptr) return {false, "chosen simplex has no valency"};
      auto meets = [&](const std::vector<VertexId>& comp) {
        for (VertexId y : *chosen_val)
          if (std::binary_search(comp.begin(), comp.end(), y, label_less)) return true;
        return false;
      };
      if (!is_component(step.bivalence.first) || !is_component(step.bivalence.second) ||
          step.bivalence.first == step.bivalence.second)
        return {false, "bivalence: certificate at step " + std::to_string(i) +
                           " does not name two distinct components"};
      if (!meets(step.bivalence.first) || !meets(step.bivalence.second))
        return {false, "bivalence: chosen edge at step " + std::to_string(i) +
                           " does not meet both certified components"};

      parent_val = *chosen_val;
      expect = step.chosen;
    }
    return {true, ""};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

}  // namespace wfd
