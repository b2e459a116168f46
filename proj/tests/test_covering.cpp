#include <doctest.h>

#include "support.hpp"
#include "wfd/covering.hpp"
#include "wfd/flp.hpp"

using namespace wfd;

namespace {

CoveringCandidate c4_over_c3() {
  CoveringCandidate c;
  c.base = build_complex({{"x0", "x1"}, {"x1", "x2"}, {"x2", "x0"}});
  c.cover = build_complex({{"w0", "w1"}, {"w1", "w2"}, {"w2", "w3"}, {"w3", "w0"}});
  for (int i = 0; i < 4; ++i)
    c.projection[intern_vertex("w" + std::to_string(i))] =
        intern_vertex("x" + std::to_string(i % 3));
  return c;
}

}  // namespace

TEST_CASE("the hexagon covering validates with two sheets") {
  CoveringCandidate c = gen_cyclic_cover(3, 2);
  CoveringReport rep = validate_covering(c);
  CHECK(rep.is_covering);
  CHECK(rep.sheet_count == 2);
  CHECK_FALSE(rep.is_trivial);
  // Each base edge is covered by two disjoint cover edges.
  for (const auto& [sigma, sheets] : rep.sheets)
    CHECK(sheets.size() == 2);
}

TEST_CASE("the identity covering is trivial") {
  Complex c3 = build_complex({{"x0", "x1"}, {"x1", "x2"}, {"x2", "x0"}});
  CoveringCandidate c{c3, c3, {}};
  for (VertexId v : c3.vertices()) c.projection[v] = v;
  CoveringReport rep = validate_covering(c);
  CHECK(rep.is_covering);
  CHECK(rep.sheet_count == 1);
  CHECK(rep.is_trivial);
}

TEST_CASE("a four-cycle does not cover a triangle") {
  CoveringReport rep = validate_covering(c4_over_c3());
  CHECK_FALSE(rep.is_covering);
  CHECK_FALSE(rep.why.empty());
}

TEST_CASE("malformed candidates raise distinct errors") {
  CoveringCandidate c = gen_cyclic_cover(4, 2);
  c.projection[intern_vertex("w1")] = intern_vertex("x2");  // {w0,w1} maps to a non-edge
  CHECK_THROWS_AS(validate_covering(c), Error);
  try {
    validate_covering(c);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSimplicial);
  }

  CoveringCandidate disconnected;
  disconnected.base = build_complex({{"x0", "x1"}, {"x1", "x2"}, {"x2", "x0"}});
  disconnected.cover = build_complex({{"w0", "w1"}, {"w2"}});
  disconnected.projection[intern_vertex("w0")] = intern_vertex("x0");
  disconnected.projection[intern_vertex("w1")] = intern_vertex("x1");
  disconnected.projection[intern_vertex("w2")] = intern_vertex("x2");
  try {
    validate_covering(disconnected);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConnected);
  }
}

TEST_CASE("the cyclic (3,2) covering task is the hexagon up to relabeling") {
  ColorlessTask from_cover = covering_task(gen_cyclic_cover(3, 2));
  CHECK_NOTHROW(validate_task(from_cover, ValidationMode::strict));

  ColorlessTask hx = gen_hexagon();
  // Relabel x_i -> u_i and w_i -> v_i and compare structurally.
  auto relabel = [](const Complex& k, char from_prefix, char to_prefix) {
    std::vector<std::vector<std::string>> fs;
    for (const auto& f : k.facets()) {
      std::vector<std::string> labels;
      for (const auto& l : f.labels()) {
        std::string renamed = l;
        if (renamed[0] == from_prefix) renamed[0] = to_prefix;
        labels.push_back(renamed);
      }
      fs.push_back(labels);
    }
    return build_complex(fs);
  };
  CHECK(relabel(from_cover.input, 'x', 'u') == hx.input);
  CHECK(relabel(from_cover.output, 'w', 'v') == hx.output);
  for (const auto& sigma : from_cover.input.all_simplices()) {
    std::vector<std::string> renamed;
    for (const auto& l : sigma.labels()) {
      std::string r = l;
      r[0] = 'u';
      renamed.push_back(r);
    }
    CHECK(relabel(from_cover.delta_of(sigma), 'w', 'v') ==
          hx.delta_of(Simplex::from_labels(renamed)));
  }
}

TEST_CASE("identity covering task is zero-round solvable by the identity") {
  Complex c3 = build_complex({{"x0", "x1"}, {"x1", "x2"}, {"x2", "x0"}});
  CoveringCandidate c{c3, c3, {}};
  for (VertexId v : c3.vertices()) c.projection[v] = v;
  ColorlessTask t = covering_task(c);
  SearchOutcome out = zero_round_solvable(t, 2);
  REQUIRE(out.found());
  for (VertexId v : c3.vertices()) CHECK(out.witness->image_of(v) == v);
}

TEST_CASE("a triple cyclic cover has three disjoint sheet edges per base edge") {
  ColorlessTask t = covering_task(gen_cyclic_cover(3, 3));
  Complex image = t.delta_of(Simplex::from_labels({"x0", "x1"}));
  CHECK(image.facets().size() == 3);
  auto comps = connected_components(image);
  CHECK(comps.size() == 3);
  for (const auto& comp : comps) CHECK(comp.size() == 2);
}

TEST_CASE("cyclic cover generation validates for several shapes") {
  for (auto [m, k] :
       std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}}) {
    CoveringCandidate c = gen_cyclic_cover(m, k);
    CoveringReport rep = validate_covering(c);
    CHECK(rep.is_covering);
    CHECK(rep.sheet_count == k);
    CHECK(rep.is_trivial == (k == 1));
    CHECK(stars_locally_isomorphic(c));
  }
  CHECK_THROWS_AS(gen_cyclic_cover(2, 2), Error);
}

TEST_CASE("non-trivial covering tasks are closure fixed points") {
  for (auto [m, k] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}, {5, 2}}) {
    ColorlessTask t = covering_task(gen_cyclic_cover(m, k));
    ClosureStepReport rep = closure_step(t);
    CHECK(rep.added.empty());
    CHECK(rep.after == t);
  }
}

TEST_CASE("covering impossibility verdicts") {
  Verdict hex = covering_impossibility(gen_cyclic_cover(3, 2), 2);
  auto* u = std::get_if<Unsolvable>(&hex);
  REQUIRE(u != nullptr);
  CHECK(u->proof.chain.size() == 1);
  CHECK(verify_round_reduction_proof(covering_task(gen_cyclic_cover(3, 2)), u->proof).ok);

  Verdict trivial = covering_impossibility(gen_cyclic_cover(3, 1), 2);
  auto* s = std::get_if<Solvable>(&trivial);
  REQUIRE(s != nullptr);
  CHECK(s->rounds == 0);

  Verdict triple = covering_impossibility(gen_cyclic_cover(3, 3), 3);
  CHECK(std::get_if<Unsolvable>(&triple) != nullptr);
}

TEST_CASE("covering impossibility rejects non-coverings") {
  try {
    covering_impossibility(c4_over_c3(), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACovering);
  }
}

TEST_CASE("unsolvable covering tasks also have FLP transcripts") {
  ColorlessTask t = covering_task(gen_cyclic_cover(4, 2));
  auto oracle = make_stubborn_oracle(t, 2);
  FlpOutcome out = flp_from_round_reduction(t, 2, *oracle, 8);
  auto* tr = std::get_if<FLPTranscript>(&out);
  REQUIRE(tr != nullptr);
  CHECK(tr->steps.size() == 8);
  CHECK(verify_transcript(t, 2, *tr).ok);
}
