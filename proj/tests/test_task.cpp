#include <doctest.h>

#include "support.hpp"
#include "wfd/task.hpp"

using namespace wfd;

namespace {

ColorlessTask tiny_task(std::vector<std::vector<std::string>> input_facets,
                        std::vector<std::vector<std::string>> output_facets,
                        std::vector<std::pair<std::vector<std::string>,
                                              std::vector<std::vector<std::string>>>>
                            delta) {
  ColorlessTask t;
  t.input = build_complex(input_facets);
  t.output = build_complex(output_facets);
  for (auto& [sigma, image] : delta)
    t.delta.emplace(Simplex::from_labels(sigma), build_complex(image));
  return t;
}

}  // namespace

TEST_CASE("hexagon generator matches its definition") {
  ColorlessTask hx = gen_hexagon();
  CHECK(hx.input.facets().size() == 3);
  CHECK(hx.output.facets().size() == 6);

  Complex du0 = hx.delta_of(Simplex::from_labels({"u0"}));
  CHECK(du0 == build_complex({{"v0"}, {"v3"}}));

  Complex du01 = hx.delta_of(Simplex::from_labels({"u0", "u1"}));
  CHECK(du01 == build_complex({{"v0", "v1"}, {"v3", "v4"}}));

  Complex du20 = hx.delta_of(Simplex::from_labels({"u2", "u0"}));
  CHECK(du20 == build_complex({{"v2", "v3"}, {"v5", "v0"}}));

  CHECK_NOTHROW(validate_task(hx, ValidationMode::strict));
}

TEST_CASE("set agreement generator") {
  ColorlessTask sa2 = gen_set_agreement(2);
  CHECK(sa2.input.contains(Simplex::from_labels({"1", "2"})));
  CHECK(sa2.output.vertices().size() == 2);
  CHECK_FALSE(sa2.output.contains(Simplex::from_labels({"1", "2"})));

  ColorlessTask sa3 = gen_set_agreement(3);
  CHECK(sa3.delta_of(Simplex::from_labels({"1", "2", "3"})) == sa3.output);
  CHECK(sa3.delta_of(Simplex::from_labels({"1", "2"})) == build_complex({{"1", "2"}}));
  CHECK_NOTHROW(validate_task(sa3, ValidationMode::strict));
}

TEST_CASE("epsilon agreement generator") {
  ColorlessTask e1 = gen_epsilon_agreement(1);
  CHECK(e1.output.facets().size() == 1);
  CHECK(e1.delta_of(Simplex::from_labels({"0", "1"})) == e1.output);

  ColorlessTask e4 = gen_epsilon_agreement(4);
  CHECK(e4.delta_of(Simplex::from_labels({"0"})) == build_complex({{"0"}}));
  CHECK(e4.delta_of(Simplex::from_labels({"1"})) == build_complex({{"4"}}));
  CHECK(e4.delta_of(Simplex::from_labels({"0", "1"})) == e4.output);
  CHECK(e4.output.vertices().size() == 5);
  CHECK_NOTHROW(validate_task(e4, ValidationMode::strict));
}

TEST_CASE("generators are deterministic") {
  CHECK(gen_hexagon() == gen_hexagon());
  CHECK(gen_set_agreement(3) == gen_set_agreement(3));
  CHECK(gen_epsilon_agreement(8) == gen_epsilon_agreement(8));
  CHECK(builtin_task({"sa", {{"k", 3}}}) == gen_set_agreement(3));
}

TEST_CASE("validate_task catches dimension violations") {
  ColorlessTask bad = tiny_task({{"a", "b"}}, {{"y0", "y1"}},
                                {{{"a"}, {{"y0", "y1"}}},
                                 {{"b"}, {{"y1"}}},
                                 {{"a", "b"}, {{"y0", "y1"}}}});
  CHECK_THROWS_AS(validate_task(bad, ValidationMode::strict), Error);
  try {
    validate_task(bad, ValidationMode::strict);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionViolation);
  }
}

TEST_CASE("validate_task catches dangling outputs") {
  ColorlessTask bad = tiny_task({{"a"}}, {{"y0"}}, {{{"a"}, {{"zz"}}}});
  try {
    validate_task(bad, ValidationMode::strict);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DanglingOutputVertex);
  }
}

TEST_CASE("repair mode: intersection that empties an image is unrepairable") {
  // delta({a}) = {y}, delta({a,b}) omits y.
  ColorlessTask bad = tiny_task({{"a", "b"}}, {{"y"}, {"z0", "z1"}},
                                {{{"a"}, {{"y"}}},
                                 {{"b"}, {{"z0"}}},
                                 {{"a", "b"}, {{"z0", "z1"}}}});
  CHECK_THROWS_AS(validate_task(bad, ValidationMode::strict), Error);
  try {
    validate_task(bad, ValidationMode::repair);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CarrierViolation);
  }
  TaskValidation lenient = validate_task(bad, ValidationMode::lenient);
  CHECK_FALSE(lenient.carrier);
  CHECK_FALSE(lenient.warnings.empty());
}

TEST_CASE("repair mode can succeed") {
  // delta({a}) = {y0, y1}; the facet image only has y0; repair trims it.
  ColorlessTask fixable = tiny_task({{"a", "b"}}, {{"y0", "y1"}},
                                    {{{"a"}, {{"y0"}, {"y1"}}},
                                     {{"b"}, {{"y0"}}},
                                     {{"a", "b"}, {{"y0"}}}});
  TaskValidation repaired = validate_task(fixable, ValidationMode::repair);
  CHECK(repaired.task.delta_of(Simplex::from_labels({"a"})) == build_complex({{"y0"}}));
  CHECK_NOTHROW(validate_task(repaired.task, ValidationMode::strict));
}

TEST_CASE("missing delta entries are rejected") {
  ColorlessTask incomplete = tiny_task({{"a", "b"}}, {{"y"}},
                                       {{{"a"}, {{"y"}}}, {{"a", "b"}, {{"y"}}}});
  CHECK_THROWS_AS(validate_task(incomplete, ValidationMode::strict), Error);
}

TEST_CASE("local task for the hexagon") {
  ColorlessTask hx = gen_hexagon();
  Simplex sigma = Simplex::from_labels({"u0", "u1"});
  Simplex tau = Simplex::from_labels({"v0", "v4"});
  ColorlessTask local = local_task(hx, sigma, tau);

  Complex image = hx.delta_of(sigma);
  CHECK(local.input == Complex::from_facets({tau}));
  CHECK(local.output == image);
  CHECK(local.delta_of(Simplex::from_labels({"v0"})) == build_complex({{"v0"}}));
  CHECK(local.delta_of(Simplex::from_labels({"v4"})) == build_complex({{"v4"}}));
  // The dimension-1 skeleton cap keeps the whole (1-dimensional) image.
  CHECK(local.delta_of(tau) == image);
  CHECK_NOTHROW(validate_task(local, ValidationMode::strict));
}

TEST_CASE("local task for a singleton keeps only the identity output") {
  ColorlessTask hx = gen_hexagon();
  ColorlessTask local =
      local_task(hx, Simplex::from_labels({"u0"}), Simplex::from_labels({"v3"}));
  CHECK(local.input.vertices().size() == 1);
  CHECK(local.delta_of(Simplex::from_labels({"v3"})) == build_complex({{"v3"}}));
}

TEST_CASE("local task for full set agreement keeps the whole output") {
  ColorlessTask sa3 = gen_set_agreement(3);
  Simplex full = Simplex::from_labels({"1", "2", "3"});
  ColorlessTask local = local_task(sa3, full, full);
  CHECK(local.delta_of(full) == sa3.output);  // Skel_2 of delta([3]) is all of O
  CHECK_NOTHROW(validate_task(local, ValidationMode::strict));
}

TEST_CASE("local task rejects vertices outside the image") {
  ColorlessTask hx = gen_hexagon();
  try {
    local_task(hx, Simplex::from_labels({"u0"}), Simplex::from_labels({"v1"}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VertexNotInImage);
  }
}

TEST_CASE("local tasks of random carrier tasks are strict-valid") {
  testsupport::Rng rng(77);
  int built = 0;
  for (int trial = 0; trial < 30; ++trial) {
    ColorlessTask t = testsupport::random_carrier_task(rng, 4, 6);
    CHECK_NOTHROW(validate_task(t, ValidationMode::strict));
    for (const auto& sigma : t.input.all_simplices()) {
      const Complex& image = t.delta_of(sigma);
      if (image.vertices().empty()) continue;
      std::vector<VertexId> pick;
      for (VertexId v : image.vertices()) {
        if (pick.size() > static_cast<std::size_t>(sigma.dim())) break;
        pick.push_back(v);
      }
      ColorlessTask local = local_task(t, sigma, Simplex(pick));
      CHECK_NOTHROW(validate_task(local, ValidationMode::strict));
      ++built;
    }
  }
  CHECK(built > 50);
}
