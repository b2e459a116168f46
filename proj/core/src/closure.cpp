#include "wfd/closure.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "wfd/task.hpp"

namespace wfd {

namespace {

bool is_subcomplex(const Complex& inner, const Complex& outer) {
  for (const auto& f : inner.facets())
    if (!outer.contains(f)) return false;
  return true;
}

bool is_carrier(const ColorlessTask& t) {
  auto simplices = t.input.all_simplices();
  for (const auto& a : simplices)
    for (const auto& b : simplices) {
      if (a == b || !a.subset_of(b)) continue;
      if (!is_subcomplex(t.delta_of(a), t.delta_of(b))) return false;
    }
  return true;
}

// Shared local-task verdict cache. The local task depends only on
// (Delta(sigma), tau), so verdicts transfer across sigma and across closure
// iterations.
class ClosureEngine {
 public:
  ClosureEngine(ClosureOptions opts, Limits limits) : opts_(opts), limits_(limits) {}

  ClosureStepReport step(const ColorlessTask& t) {
    ClosureStepReport report;
    report.before = t;
    bool carrier_before = is_carrier(t);

    for (const auto& sigma : t.input.all_simplices()) {
      if (sigma.dim() < 1) continue;  // singleton candidates are always present
      const Complex& image = t.delta_of(sigma);
      const std::vector<VertexId>& verts = image.vertices();
      const std::size_t budget =
          std::min<std::size_t>(verts.size(), static_cast<std::size_t>(sigma.dim()) + 1);

      std::unordered_map<VertexId, std::size_t> comp_of;
      if (opts_.fast_path) {
        auto comps = connected_components(image);
        for (std::size_t c = 0; c < comps.size(); ++c)
          for (VertexId v : comps[c]) comp_of[v] = c;
      }
      const std::string image_key = opts_.memoize ? canonical_facets_string(image) : std::string();

      for (std::size_t size = 2; size <= budget; ++size) {
        for_each_combination(verts.size(), size, [&](const std::vector<std::size_t>& idx) {
          std::vector<VertexId> pick;
          pick.reserve(size);
          for (std::size_t i : idx) pick.push_back(verts[i]);
          Simplex tau(std::move(pick));
          if (image.contains(tau)) return;
          if (opts_.fast_path) {
            std::size_t c0 = comp_of.at(tau.ids()[0]);
            for (VertexId v : tau.ids())
              if (comp_of.at(v) != c0) return;  // split candidates are never 1-round solvable
          }
          auto witness = solve_local(t, sigma, tau, image_key);
          if (witness) report.added.push_back({sigma, tau, std::move(*witness)});
        });
      }
    }

    std::sort(report.added.begin(), report.added.end(), [](const AddedSimplex& a, const AddedSimplex& b) {
      auto ka = std::make_pair(a.sigma.labels(), a.tau.labels());
      auto kb = std::make_pair(b.sigma.labels(), b.tau.labels());
      return ka < kb;
    });

    report.after = rebuild(t, report.added);
    if (carrier_before && !is_carrier(report.after))
      throw std::logic_error("closure broke the carrier property");
    return report;
  }

 private:
  template <typename Fn>
  static void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      fn(idx);
      std::size_t pos = k;
      while (pos > 0) {
        --pos;
        if (idx[pos] + (k - pos) < n) break;
      }
      if (idx[pos] + (k - pos) >= n) return;
      ++idx[pos];
      for (std::size_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  std::optional<SimplicialMapping> solve_local(const ColorlessTask& t, const Simplex& sigma,
                                               const Simplex& tau, const std::string& image_key) {
    std::string key;
    if (opts_.memoize) {
      key = image_key + "||" + tau.encode();
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    SearchOutcome out = one_round_local_solvable(t, sigma, tau, limits_);
    std::optional<SimplicialMapping> result;
    if (out.found()) result = *out.witness;
    if (opts_.memoize) memo_.emplace(std::move(key), result);
    return result;
  }

  static ColorlessTask rebuild(const ColorlessTask& t, const std::vector<AddedSimplex>& added) {
    ColorlessTask out;
    out.input = t.input;
    std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash> extra;
    for (const auto& a : added) extra[a.sigma].push_back(a.tau);

    std::vector<Simplex> output_facets;
    for (const auto& sigma : t.input.all_simplices()) {
      std::vector<Simplex> facets = t.delta_of(sigma).facets();
      auto it = extra.find(sigma);
      if (it != extra.end())
        facets.insert(facets.end(), it->second.begin(), it->second.end());
      Complex img = Complex::from_facets(std::move(facets));
      output_facets.insert(output_facets.end(), img.facets().begin(), img.facets().end());
      out.delta.emplace(sigma, std::move(img));
    }
    // The closure keeps the output vertex set unchanged.
    for (VertexId y : t.output.vertices()) output_facets.push_back(Simplex({y}));
    out.output = Complex::from_facets(std::move(output_facets));
    return out;
  }

  ClosureOptions opts_;
  Limits limits_;
  std::unordered_map<std::string, std::optional<SimplicialMapping>> memo_;
};

}  // namespace

ClosureStepReport closure_step(const ColorlessTask& t, const ClosureOptions& opts,
                               const Limits& limits) {
  return ClosureEngine(opts, limits).step(t);
}

FixedPointResult fixed_point(const ColorlessTask& t, const ClosureOptions& opts,
                             const Limits& limits) {
  ClosureEngine engine(opts, limits);
  FixedPointResult fp;
  ColorlessTask cur = t;
  while (true) {
    ClosureStepReport rep = engine.step(cur);
    bool stable = (rep.after == cur);
    if (!rep.added.empty()) fp.iterations++;
    fp.chain.push_back(std::move(rep));
    if (stable) break;
    cur = fp.chain.back().after;
  }
  fp.task = cur;
  return fp;
}

ColorlessTask fixed_point_direct(const ColorlessTask& t) {
  ColorlessTask out;
  out.input = t.input;
  std::vector<Simplex> output_facets;
  for (const auto& sigma : t.input.all_simplices()) {
    const Complex& image = t.delta_of(sigma);
    const std::size_t budget = static_cast<std::size_t>(sigma.dim()) + 1;
    std::vector<Simplex> facets;
    for (const auto& comp : connected_components(image)) {
      if (comp.size() <= budget) {
        facets.emplace_back(comp);
        continue;
      }
      // All budget-sized subsets of the component.
      std::vector<std::size_t> idx(budget);
      for (std::size_t i = 0; i < budget; ++i) idx[i] = i;
      while (true) {
        std::vector<VertexId> pick;
        for (std::size_t i : idx) pick.push_back(comp[i]);
        facets.emplace_back(std::move(pick));
        std::size_t pos = budget;
        while (pos > 0) {
          --pos;
          if (idx[pos] + (budget - pos) < comp.size()) break;
        }
        if (idx[pos] + (budget - pos) >= comp.size()) break;
        ++idx[pos];
        for (std::size_t i = pos + 1; i < budget; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    Complex img = Complex::from_facets(std::move(facets));
    output_facets.insert(output_facets.end(), img.facets().begin(), img.facets().end());
    out.delta.emplace(sigma, std::move(img));
  }
  for (VertexId y : t.output.vertices()) output_facets.push_back(Simplex({y}));
  out.output = Complex::from_facets(std::move(output_facets));
  return out;
}

RoundWitness speedup_map(const ColorlessTask& t, const RoundWitness& f, int n,
                         const Limits& limits) {
  if (f.rounds < 1)
    throw Error(ErrorKind::InvalidArgument, "speedup needs a witness depth of at least one round");
  CheckResult pre = check_witness(t, n, f.rounds, f.map, limits);
  if (!pre.ok) throw Error(ErrorKind::WitnessInvalid, pre.why);

  ColorlessTask cl = closure_step(t, {}, limits).after;
  SubdividedComplex prev = bary_t(skeleton(t.input, n - 1), f.rounds - 1, limits);

  RoundWitness out;
  out.rounds = f.rounds - 1;
  out.map.source = prev.complex;
  out.map.target = cl.output;
  for (VertexId u : prev.complex.vertices()) {
    VertexId solo = intern_vertex(Simplex({u}).encode());
    out.map.assignment[u] = f.map.image_of(solo);
  }

  CheckResult post = check_witness(cl, n, out.rounds, out.map, limits);
  if (!post.ok) throw std::logic_error("speedup produced an invalid witness: " + post.why);
  return out;
}

namespace {

RoundWitness lift_with_report(const ColorlessTask& t, const RoundWitness& g, int n,
                              const ClosureStepReport& rep, const Limits& limits) {
  if (t.input.dim() > 1)
    throw Error(ErrorKind::DimensionUnsupported, "lifting applies to tasks of dimension <= 1");
  CheckResult pre = check_witness(rep.after, n, g.rounds, g.map, limits);
  if (!pre.ok) throw Error(ErrorKind::WitnessInvalid, pre.why);

  SubdividedComplex prev = bary_t(skeleton(t.input, n - 1), g.rounds, limits);
  SubdividedComplex next = bary(prev, limits);

  RoundWitness out;
  out.rounds = g.rounds + 1;
  out.map.source = next.complex;
  out.map.target = t.output;

  for (VertexId z : next.complex.vertices()) {
    const Simplex& view = next.members.at(z);
    if (view.size() == 1) {
      out.map.assignment[z] = g.map.image_of(view.ids()[0]);
      continue;
    }
    VertexId y = g.map.image_of(view.ids()[0]);
    VertexId y2 = g.map.image_of(view.ids()[1]);
    if (y == y2) {
      out.map.assignment[z] = y;
      continue;
    }
    Simplex e = next.carrier.at(z);
    Simplex e_prime({y, y2});
    const Complex& image = t.delta_of(e);
    if (image.contains(e_prime)) {
      // Identity-style local witness: decide the label-least member.
      out.map.assignment[z] = label_less(y, y2) ? y : y2;
      continue;
    }
    const SimplicialMapping* local = nullptr;
    for (const auto& a : rep.added)
      if (a.sigma == e && a.tau == e_prime) {
        local = &a.witness;
        break;
      }
    if (local == nullptr)
      throw Error(ErrorKind::MissingLocalWitness,
                  e_prime.encode() + " is not in the closure image of " + e.encode());
    out.map.assignment[z] = local->image_of(intern_vertex(e_prime.encode()));
  }

  CheckResult post = check_witness(t, n, out.rounds, out.map, limits);
  if (!post.ok) throw std::logic_error("lift produced an invalid witness: " + post.why);
  return out;
}

// A witness for Cl(t) transfers to t verbatim when the step added nothing
// (only unused output simplices may have been dropped).
RoundWitness retarget_witness(const ColorlessTask& t, const RoundWitness& g, int n,
                              const Limits& limits) {
  RoundWitness out = g;
  out.map.target = t.output;
  CheckResult post = check_witness(t, n, out.rounds, out.map, limits);
  if (!post.ok) throw std::logic_error("witness transfer failed: " + post.why);
  return out;
}

}  // namespace

RoundWitness lift_map_1dim(const ColorlessTask& t, const RoundWitness& g, int n,
                           const Limits& limits) {
  ClosureStepReport rep = closure_step(t, {}, limits);
  return lift_with_report(t, g, n, rep, limits);
}

namespace {

std::vector<std::vector<RawAdded>> chain_to_raw(const std::vector<ClosureStepReport>& chain) {
  std::vector<std::vector<RawAdded>> out;
  out.reserve(chain.size());
  for (const auto& step : chain) {
    std::vector<RawAdded> raw;
    raw.reserve(step.added.size());
    for (const auto& a : step.added) {
      RawAdded r{a.sigma, a.tau, {}};
      for (const auto& [src, dst] : a.witness.assignment)
        r.witness[vertex_label(src)] = vertex_label(dst);
      raw.push_back(std::move(r));
    }
    out.push_back(std::move(raw));
  }
  return out;
}

}  // namespace

Verdict decide(const ColorlessTask& t, int n, const ClosureOptions& opts, const Limits& limits) {
  validate_task(t, ValidationMode::strict);
  FixedPointResult fp = fixed_point(t, opts, limits);
  SearchOutcome zr = zero_round_solvable(fp.task, n, limits);

  if (!zr.found()) {
    RoundReductionProof proof;
    proof.n = n;
    proof.chain = chain_to_raw(fp.chain);
    proof.fixed_point = fp.task;
    proof.refutation.nodes_searched = zr.stats.nodes;
    return Unsolvable{std::move(proof)};
  }

  if (fp.iterations > 0 && t.input.dim() > 1)
    return Inconclusive{fp.task,
                        "fixed point is 0-round solvable, but witness lifting is only available "
                        "for tasks of dimension <= 1"};

  RoundWitness w;
  w.rounds = 0;
  w.map = *zr.witness;
  for (auto it = fp.chain.rbegin(); it != fp.chain.rend(); ++it) {
    if (it->added.empty())
      w = retarget_witness(it->before, w, n, limits);
    else
      w = lift_with_report(it->before, w, n, *it, limits);
  }
  return Solvable{w.rounds, std::move(w)};
}

namespace {

CheckResult check_stored_witness(const ColorlessTask& cur, const RawAdded& raw,
                                 const Limits& limits) {
  const Complex& image = cur.delta_of(raw.sigma);
  SubdividedComplex b = bary(SubdividedComplex::base(Complex::from_facets({raw.tau})), limits);
  SimplicialMapping m;
  m.source = b.complex;
  m.target = image;
  for (const auto& [src, dst] : raw.witness)
    m.assignment[intern_vertex(src)] = intern_vertex(dst);
  try {
    for (VertexId v : raw.tau.ids())
      if (m.image_of(intern_vertex(Simplex({v}).encode())) != v)
        return {false, "stored witness does not fix solo vertex '" + vertex_label(v) + "'"};
    for (VertexId z : b.complex.vertices())
      if (!image.has_vertex(m.image_of(z)))
        return {false, "stored witness leaves the image complex"};
    for (const auto& f : b.complex.facets())
      if (!image.contains(m.image(f)))
        return {false, "stored witness is not simplicial into delta(" + raw.sigma.encode() + ")"};
  } catch (const Error& e) {
    return {false, e.what()};
  }
  return {true, ""};
}

}  // namespace

CheckResult verify_round_reduction_proof(const ColorlessTask& t, const RoundReductionProof& p,
                                         const Limits& limits) {
  try {
    validate_task(t, ValidationMode::strict);
  } catch (const Error& e) {
    return {false, std::string("task is not strict-valid: ") + e.what()};
  }
  if (p.chain.empty()) return {false, "empty closure chain"};

  ColorlessTask cur = t;
  for (std::size_t i = 0; i < p.chain.size(); ++i) {
    ClosureStepReport rep;
    try {
      rep = closure_step(cur, {}, limits);
    } catch (const Error& e) {
      return {false, e.what()};
    }
    auto key = [](const Simplex& a, const Simplex& b) {
      return a.encode() + "->" + b.encode();
    };
    std::vector<std::string> recomputed, claimed;
    for (const auto& a : rep.added) recomputed.push_back(key(a.sigma, a.tau));
    for (const auto& a : p.chain[i]) claimed.push_back(key(a.sigma, a.tau));
    std::sort(recomputed.begin(), recomputed.end());
    std::sort(claimed.begin(), claimed.end());
    if (recomputed != claimed)
      return {false, "step mismatch at index " + std::to_string(i)};
    for (const auto& raw : p.chain[i]) {
      CheckResult wr = check_stored_witness(cur, raw, limits);
      if (!wr.ok)
        return {false, "step " + std::to_string(i) + ": " + wr.why};
    }
    cur = rep.after;
  }
  if (!p.chain.back().empty()) return {false, "chain does not end with a confirming step"};
  if (cur != p.fixed_point) return {false, "fixed point mismatch"};

  SearchOutcome zr = zero_round_solvable(cur, p.n, limits);
  if (zr.found()) return {false, "refutation failed: fixed point is 0-round solvable"};
  return {true, ""};
}

}  // namespace wfd
