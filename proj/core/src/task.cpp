#include "wfd/task.hpp"

#include <algorithm>

namespace wfd {

const Complex& ColorlessTask::delta_of(const Simplex& sigma) const {
  auto it = delta.find(sigma);
  if (it == delta.end())
    throw Error(ErrorKind::MissingDelta, "no delta entry for simplex " + sigma.encode());
  return it->second;
}

namespace {

// Complex whose simplices are exactly the simplices common to a and b.
Complex intersect_complexes(const Complex& a, const Complex& b) {
  std::vector<Simplex> fs;
  for (const auto& s : a.all_simplices())
    if (b.contains(s)) fs.push_back(s);
  return Complex::from_facets(std::move(fs));
}

bool is_subcomplex(const Complex& inner, const Complex& outer) {
  for (const auto& f : inner.facets())
    if (!outer.contains(f)) return false;
  return true;
}

void check_structure(const ColorlessTask& t, const std::vector<Simplex>& simplices) {
  for (const auto& sigma : simplices) {
    const Complex& img = t.delta_of(sigma);
    if (img.dim() > sigma.dim())
      throw Error(ErrorKind::DimensionViolation,
                  "delta(" + sigma.encode() + ") has dimension " + std::to_string(img.dim()) +
                      " > " + std::to_string(sigma.dim()));
    for (VertexId v : img.vertices())
      if (!t.output.has_vertex(v))
        throw Error(ErrorKind::DanglingOutputVertex,
                    "delta(" + sigma.encode() + ") uses vertex '" + vertex_label(v) +
                        "' not in the output complex");
    for (const auto& f : img.facets())
      if (!t.output.contains(f))
        throw Error(ErrorKind::DanglingOutputVertex,
                    "delta(" + sigma.encode() + ") facet " + f.encode() +
                        " is not a simplex of the output complex");
  }
  if (t.delta.size() != simplices.size())
    throw Error(ErrorKind::MissingDelta, "delta has entries for simplices outside the input complex");
}

// First carrier violation found, as (sigma, sigma'), or nullopt.
std::optional<std::pair<Simplex, Simplex>> find_carrier_violation(
    const ColorlessTask& t, const std::vector<Simplex>& simplices) {
  for (const auto& small : simplices) {
    const Complex& ds = t.delta_of(small);
    for (const auto& big : simplices) {
      if (small == big || !small.subset_of(big)) continue;
      if (!is_subcomplex(ds, t.delta_of(big))) return std::make_pair(small, big);
    }
  }
  return std::nullopt;
}

}  // namespace

TaskValidation validate_task(const ColorlessTask& t, ValidationMode mode) {
  std::vector<Simplex> simplices = t.input.all_simplices();
  check_structure(t, simplices);

  TaskValidation result;
  result.task = t;

  auto violation = find_carrier_violation(result.task, simplices);
  if (!violation) return result;

  switch (mode) {
    case ValidationMode::strict:
      throw Error(ErrorKind::CarrierViolation,
                  "delta(" + violation->first.encode() + ") is not a subcomplex of delta(" +
                      violation->second.encode() + ")");
    case ValidationMode::repair: {
      for (const auto& sigma : simplices) {
        Complex img = result.task.delta_of(sigma);
        bool was_empty = img.empty();
        for (const auto& facet : result.task.input.facets()) {
          if (sigma.subset_of(facet) && !(sigma == facet))
            img = intersect_complexes(img, result.task.delta_of(facet));
        }
        if (img.empty() && !was_empty)
          throw Error(ErrorKind::CarrierViolation,
                      "unrepairable: intersection empties delta(" + sigma.encode() + ")");
        result.task.delta[sigma] = std::move(img);
      }
      if (find_carrier_violation(result.task, simplices))
        throw Error(ErrorKind::CarrierViolation, "unrepairable: violation persists after repair");
      return result;
    }
    case ValidationMode::lenient:
      result.carrier = false;
      result.warnings.push_back("delta is not a carrier map: delta(" + violation->first.encode() +
                                ") is not a subcomplex of delta(" + violation->second.encode() +
                                "); closure results on such tasks are outside the stated model");
      return result;
  }
  return result;
}

ColorlessTask local_task(const ColorlessTask& t, const Simplex& sigma, const Simplex& tau) {
  const Complex& image = t.delta_of(sigma);
  for (VertexId v : tau.ids())
    if (!image.has_vertex(v))
      throw Error(ErrorKind::VertexNotInImage,
                  "'" + vertex_label(v) + "' is not a vertex of delta(" + sigma.encode() + ")");

  ColorlessTask out;
  out.input = Complex::from_facets({tau});
  out.output = image;
  for (const auto& face : out.input.all_simplices()) {
    if (face.size() == 1) {
      out.delta.emplace(face, Complex::from_facets({face}));
    } else {
      out.delta.emplace(face, skeleton(image, face.dim()));
    }
  }
  return out;
}

ColorlessTask gen_set_agreement(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "set agreement requires k >= 2");
  std::vector<std::string> values;
  for (int i = 1; i <= k; ++i) values.push_back(std::to_string(i));

  ColorlessTask t;
  t.input = build_complex({values});
  // Output facets: all (k-1)-subsets of [k].
  std::vector<std::vector<std::string>> out_facets;
  for (int skip = 0; skip < k; ++skip) {
    std::vector<std::string> f;
    for (int i = 0; i < k; ++i)
      if (i != skip) f.push_back(values[i]);
    out_facets.push_back(std::move(f));
  }
  t.output = build_complex(out_facets);

  Simplex full = Simplex::from_labels(values);
  for (const auto& sigma : t.input.all_simplices()) {
    if (sigma == full) {
      t.delta.emplace(sigma, t.output);
    } else {
      t.delta.emplace(sigma, Complex::from_facets({sigma}));
    }
  }
  return t;
}

ColorlessTask gen_hexagon() {
  auto u = [](int i) { return "u" + std::to_string(((i % 3) + 3) % 3); };
  auto v = [](int i) { return "v" + std::to_string(((i % 6) + 6) % 6); };

  ColorlessTask t;
  t.input = build_complex({{u(0), u(1)}, {u(1), u(2)}, {u(2), u(0)}});
  t.output = build_complex(
      {{v(0), v(1)}, {v(1), v(2)}, {v(2), v(3)}, {v(3), v(4)}, {v(4), v(5)}, {v(5), v(0)}});
  for (int i = 0; i < 3; ++i) {
    t.delta.emplace(Simplex::from_labels({u(i)}), build_complex({{v(i)}, {v(i + 3)}}));
    t.delta.emplace(Simplex::from_labels({u(i), u(i + 1)}),
                    build_complex({{v(i), v(i + 1)}, {v(i + 3), v(i + 4)}}));
  }
  return t;
}

ColorlessTask gen_epsilon_agreement(int N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "epsilon agreement requires N >= 1");
  // Output vertices are labeled by the integer numerators of i/N.
  auto num = [](int i) { return std::to_string(i); };

  ColorlessTask t;
  t.input = build_complex({{"0", "1"}});
  std::vector<std::vector<std::string>> path;
  for (int i = 0; i < N; ++i) path.push_back({num(i), num(i + 1)});
  t.output = build_complex(path);

  Simplex in0 = Simplex::from_labels({"0"});
  Simplex in1 = Simplex::from_labels({"1"});
  Simplex both = Simplex::from_labels({"0", "1"});
  t.delta.emplace(in0, build_complex({{num(0)}}));
  t.delta.emplace(in1, build_complex({{num(N)}}));
  // min S = 0 and max S = 1, so every output set qualifies.
  t.delta.emplace(both, t.output);
  return t;
}

ColorlessTask builtin_task(const TaskId& id) {
  auto param = [&](const std::string& key) {
    auto it = id.parameters.find(key);
    if (it == id.parameters.end())
      throw Error(ErrorKind::InvalidArgument, "builtin '" + id.name + "' needs parameter " + key);
    return it->second;
  };
  if (id.name == "hexagon") return gen_hexagon();
  if (id.name == "sa") return gen_set_agreement(param("k"));
  if (id.name == "eps") return gen_epsilon_agreement(param("N"));
  throw Error(ErrorKind::InvalidArgument, "unknown builtin task '" + id.name + "'");
}

}  // namespace wfd
