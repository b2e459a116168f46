#include "wfd/json_io.hpp"

#include <algorithm>

namespace wfd {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaViolation, path + ": " + what);
}

const json& expect(const json& j, const std::string& path, json::value_t type,
                   const char* name) {
  if (j.type() != type) schema_error(path, std::string("expected ") + name);
  return j;
}

const json& field(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, "missing field '" + key + "'");
  return *it;
}

std::vector<std::string> labels_from_json(const json& j, const std::string& path) {
  expect(j, path, json::value_t::array, "an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    if (!e.is_string()) schema_error(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(e.get<std::string>());
  }
  if (out.empty()) schema_error(path, "a simplex needs at least one vertex");
  return out;
}

Simplex simplex_from_json(const json& j, const std::string& path) {
  return Simplex::from_labels(labels_from_json(j, path));
}

json simplex_to_json(const Simplex& s) { return json(s.labels()); }

json vertex_list_to_json(const std::vector<VertexId>& vs) {
  std::vector<std::string> labels;
  labels.reserve(vs.size());
  for (VertexId v : vs) labels.push_back(vertex_label(v));
  std::sort(labels.begin(), labels.end());
  return json(labels);
}

std::vector<VertexId> vertex_list_from_json(const json& j, const std::string& path) {
  std::vector<VertexId> out;
  for (const auto& l : labels_from_json(j, path)) out.push_back(intern_vertex(l));
  std::sort(out.begin(), out.end(), label_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

json complex_to_json(const Complex& k) {
  json facets = json::array();
  for (const auto& f : k.facets()) facets.push_back(simplex_to_json(f));
  return json{{"facets", facets}};
}

Complex complex_from_json(const json& j, const std::string& path) {
  const json& facets = field(j, path, "facets");
  expect(facets, path + ".facets", json::value_t::array, "an array");
  std::vector<std::vector<std::string>> fs;
  for (std::size_t i = 0; i < facets.size(); ++i)
    fs.push_back(labels_from_json(facets[i], path + ".facets[" + std::to_string(i) + "]"));
  return build_complex(fs);
}

json task_to_json(const ColorlessTask& t) {
  json delta = json::array();
  for (const auto& sigma : t.input.all_simplices()) {
    json entry;
    entry["simplex"] = simplex_to_json(sigma);
    json image = json::array();
    for (const auto& f : t.delta_of(sigma).facets()) image.push_back(simplex_to_json(f));
    entry["image_facets"] = image;
    delta.push_back(std::move(entry));
  }
  return json{{"input", complex_to_json(t.input)},
              {"output", complex_to_json(t.output)},
              {"delta", delta}};
}

ColorlessTask task_from_json(const json& j) {
  ColorlessTask t;
  t.input = complex_from_json(field(j, "$", "input"), "$.input");
  t.output = complex_from_json(field(j, "$", "output"), "$.output");

  const json& delta = field(j, "$", "delta");
  expect(delta, "$.delta", json::value_t::array, "an array");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::string path = "$.delta[" + std::to_string(i) + "]";
    Simplex sigma = simplex_from_json(field(delta[i], path, "simplex"), path + ".simplex");
    if (!t.input.contains(sigma))
      schema_error(path + ".simplex", sigma.encode() + " is not a simplex of the input complex");
    const json& image = field(delta[i], path, "image_facets");
    expect(image, path + ".image_facets", json::value_t::array, "an array");
    std::vector<Simplex> fs;
    for (std::size_t k = 0; k < image.size(); ++k)
      fs.push_back(
          simplex_from_json(image[k], path + ".image_facets[" + std::to_string(k) + "]"));
    if (!t.delta.emplace(std::move(sigma), Complex::from_facets(std::move(fs))).second)
      schema_error(path, "duplicate delta entry");
  }
  for (const auto& sigma : t.input.all_simplices())
    if (!t.delta.count(sigma))
      schema_error("$.delta", "missing entry for simplex " + sigma.encode());
  return t;
}

ColorlessTask task_from_json_text(const std::string& text) {
  return task_from_json(parse_json_text(text));
}

json assignment_to_json(const SimplicialMapping& m) {
  json a = json::object();
  for (const auto& [src, dst] : m.assignment) a[vertex_label(src)] = vertex_label(dst);
  return json{{"assignment", a}};
}

json witness_to_json(const RoundWitness& w) {
  json j = assignment_to_json(w.map);
  j["rounds"] = w.rounds;
  return j;
}

RoundWitness witness_from_json(const json& j, const ColorlessTask& t, int n,
                               const Limits& limits) {
  const json& rounds = field(j, "$", "rounds");
  if (!rounds.is_number_unsigned() && !rounds.is_number_integer())
    schema_error("$.rounds", "expected a nonnegative integer");
  long long r = rounds.get<long long>();
  if (r < 0) schema_error("$.rounds", "expected a nonnegative integer");

  RoundWitness w;
  w.rounds = static_cast<unsigned>(r);
  SubdividedComplex tower = bary_t(skeleton(t.input, n - 1), w.rounds, limits);
  w.map.source = tower.complex;
  w.map.target = t.output;
  const json& a = field(j, "$", "assignment");
  if (!a.is_object()) schema_error("$.assignment", "expected an object");
  for (const auto& [src, dst] : a.items()) {
    if (!dst.is_string()) schema_error("$.assignment." + src, "expected a string");
    w.map.assignment[intern_vertex(src)] = intern_vertex(dst.get<std::string>());
  }
  return w;
}

json proof_to_json(const RoundReductionProof& p) {
  json chain = json::array();
  for (const auto& step : p.chain) {
    json added = json::array();
    for (const auto& a : step) {
      json w = json::object();
      for (const auto& [src, dst] : a.witness) w[src] = dst;
      added.push_back(json{{"sigma", simplex_to_json(a.sigma)},
                           {"tau", simplex_to_json(a.tau)},
                           {"witness", json{{"assignment", w}}}});
    }
    chain.push_back(json{{"added", added}});
  }
  return json{{"n", p.n},
              {"chain", chain},
              {"fixed_point", task_to_json(p.fixed_point)},
              {"refutation",
               json{{"searched", p.refutation.nodes_searched}, {"result", "exhausted"}}}};
}

RoundReductionProof proof_from_json(const json& j) {
  RoundReductionProof p;
  const json& n = field(j, "$", "n");
  if (!n.is_number_integer() && !n.is_number_unsigned())
    schema_error("$.n", "expected an integer");
  p.n = n.get<int>();

  const json& chain = field(j, "$", "chain");
  expect(chain, "$.chain", json::value_t::array, "an array");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const std::string path = "$.chain[" + std::to_string(i) + "]";
    const json& added = field(chain[i], path, "added");
    expect(added, path + ".added", json::value_t::array, "an array");
    std::vector<RawAdded> step;
    for (std::size_t k = 0; k < added.size(); ++k) {
      const std::string apath = path + ".added[" + std::to_string(k) + "]";
      RawAdded raw{simplex_from_json(field(added[k], apath, "sigma"), apath + ".sigma"),
                   simplex_from_json(field(added[k], apath, "tau"), apath + ".tau"),
                   {}};
      const json& w = field(field(added[k], apath, "witness"), apath + ".witness", "assignment");
      if (!w.is_object()) schema_error(apath + ".witness.assignment", "expected an object");
      for (const auto& [src, dst] : w.items()) {
        if (!dst.is_string()) schema_error(apath + ".witness.assignment." + src, "expected a string");
        raw.witness[src] = dst.get<std::string>();
      }
      step.push_back(std::move(raw));
    }
    p.chain.push_back(std::move(step));
  }
  p.fixed_point = task_from_json(field(j, "$", "fixed_point"));
  const json& refutation = field(j, "$", "refutation");
  const json& searched = field(refutation, "$.refutation", "searched");
  if (!searched.is_number_unsigned() && !searched.is_number_integer())
    schema_error("$.refutation.searched", "expected an integer");
  p.refutation.nodes_searched = searched.get<std::uint64_t>();
  const json& result = field(refutation, "$.refutation", "result");
  if (!result.is_string() || result.get<std::string>() != "exhausted")
    schema_error("$.refutation.result", "expected \"exhausted\"");
  return p;
}

namespace {

// Valency maps are keyed by the JSON-encoded label array of the simplex, so
// arbitrary labels cannot collide with a separator.
std::string valency_key(const Simplex& s) { return json(s.labels()).dump(); }

json valencies_to_json(const ValencyAnswer& a) {
  json out = json::object();
  for (const auto& e : a.entries) out[valency_key(e.simplex)] = vertex_list_to_json(e.values);
  return out;
}

ValencyAnswer valencies_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  ValencyAnswer a;
  for (const auto& [key, values] : j.items()) {
    json parsed;
    try {
      parsed = json::parse(key);
    } catch (const json::exception&) {
      schema_error(path, "valency key is not a JSON label array: " + key);
    }
    a.entries.push_back({simplex_from_json(parsed, path + "." + key),
                         vertex_list_from_json(values, path + "." + key)});
  }
  std::sort(a.entries.begin(), a.entries.end(),
            [](const ValencyEntry& x, const ValencyEntry& y) {
              return simplex_label_less(x.simplex, y.simplex);
            });
  return a;
}

}  // namespace

json transcript_to_json(const FLPTranscript& tr) {
  json steps = json::array();
  for (const auto& s : tr.steps) {
    steps.push_back(json{
        {"config", json{{"level", s.config.level}, {"simplex", simplex_to_json(s.config.simplex)}}},
        {"valencies", valencies_to_json(s.valencies)},
        {"chosen", simplex_to_json(s.chosen)},
        {"bivalence", json::array({vertex_list_to_json(s.bivalence.first),
                                   vertex_list_to_json(s.bivalence.second)})}});
  }
  json out{{"n", tr.n},
           {"sigma0", simplex_to_json(tr.sigma0)},
           {"components", json::array({vertex_list_to_json(tr.component_pair.first),
                                       vertex_list_to_json(tr.component_pair.second)})},
           {"steps", steps}};
  if (!tr.task_ref.empty()) out["task"] = tr.task_ref;
  return out;
}

FLPTranscript transcript_from_json(const json& j) {
  Simplex sigma0 = simplex_from_json(field(j, "$", "sigma0"), "$.sigma0");
  const json& n = field(j, "$", "n");
  if (!n.is_number_integer() && !n.is_number_unsigned()) schema_error("$.n", "expected an integer");

  const json& comps = field(j, "$", "components");
  if (!comps.is_array() || comps.size() != 2)
    schema_error("$.components", "expected exactly two components");

  FLPTranscript tr{j.contains("task") && j["task"].is_string() ? j["task"].get<std::string>() : "",
                   n.get<int>(),
                   sigma0,
                   {vertex_list_from_json(comps[0], "$.components[0]"),
                    vertex_list_from_json(comps[1], "$.components[1]")},
                   {}};

  const json& steps = field(j, "$", "steps");
  expect(steps, "$.steps", json::value_t::array, "an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string path = "$.steps[" + std::to_string(i) + "]";
    const json& config = field(steps[i], path, "config");
    const json& level = field(config, path + ".config", "level");
    if (!level.is_number_unsigned() && !level.is_number_integer())
      schema_error(path + ".config.level", "expected an integer");
    Configuration c{static_cast<unsigned>(level.get<long long>()),
                    simplex_from_json(field(config, path + ".config", "simplex"),
                                      path + ".config.simplex"),
                    sigma0};
    const json& bivalence = field(steps[i], path, "bivalence");
    if (!bivalence.is_array() || bivalence.size() != 2)
      schema_error(path + ".bivalence", "expected exactly two components");
    tr.steps.push_back(
        {c, valencies_from_json(field(steps[i], path, "valencies"), path + ".valencies"),
         simplex_from_json(field(steps[i], path, "chosen"), path + ".chosen"),
         {vertex_list_from_json(bivalence[0], path + ".bivalence[0]"),
          vertex_list_from_json(bivalence[1], path + ".bivalence[1]")}});
  }
  return tr;
}

json covering_to_json(const CoveringCandidate& c) {
  json proj = json::object();
  for (const auto& [v, x] : c.projection) proj[vertex_label(v)] = vertex_label(x);
  return json{{"base", complex_to_json(c.base)},
              {"cover", complex_to_json(c.cover)},
              {"projection", proj}};
}

CoveringCandidate covering_from_json(const json& j) {
  CoveringCandidate c;
  c.base = complex_from_json(field(j, "$", "base"), "$.base");
  c.cover = complex_from_json(field(j, "$", "cover"), "$.cover");
  const json& proj = field(j, "$", "projection");
  if (!proj.is_object()) schema_error("$.projection", "expected an object");
  for (const auto& [v, x] : proj.items()) {
    if (!x.is_string()) schema_error("$.projection." + v, "expected a string");
    c.projection[intern_vertex(v)] = intern_vertex(x.get<std::string>());
  }
  return c;
}

json verdict_to_json(const Verdict& v) {
  if (const auto* s = std::get_if<Solvable>(&v)) {
    return json{{"verdict", "solvable"},
                {"rounds", s->rounds},
                {"witness", witness_to_json(s->witness)}};
  }
  if (const auto* u = std::get_if<Unsolvable>(&v)) {
    return json{{"verdict", "unsolvable"}, {"proof", proof_to_json(u->proof)}};
  }
  const auto& inc = std::get<Inconclusive>(v);
  return json{{"verdict", "inconclusive"},
              {"fixed_point", task_to_json(inc.fixed_point)},
              {"note", inc.note}};
}

json search_outcome_to_json(const SearchOutcome& o) {
  json j{{"result", o.found() ? "found" : "exhausted"},
         {"stats", json{{"nodes", o.stats.nodes}, {"backtracks", o.stats.backtracks}}}};
  if (o.found()) j["witness"] = assignment_to_json(*o.witness);
  return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace wfd
