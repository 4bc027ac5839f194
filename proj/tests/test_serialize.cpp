#include <random>

#include "doctest.h"
#include "trimassey/error.hpp"
#include "trimassey/massey.hpp"
#include "trimassey/serialize.hpp"

using namespace trimassey;
using nlohmann::json;

TEST_CASE("integers beyond 64 bits serialize as decimal strings") {
  Int big("123456789012345678901234567890");
  CHECK(int_to_json(big).is_string());
  CHECK(int_from_json(int_to_json(big)) == big);
  CHECK(int_to_json(Int(-7)) == json(-7));
  CHECK_THROWS_AS(int_from_json(json("12x")), InputError);
  CHECK_THROWS_AS(int_from_json(json(1.5)), InputError);
}

TEST_CASE("matrices and lattices round trip") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = d(rng);
    m(0, 0) *= Int("100000000000000000000");
    CHECK(matrix_from_json(json::parse(matrix_to_json(m).dump()), 4) == m);
    Lattice l(3, m.columns());
    Lattice back = lattice_from_json(json::parse(lattice_to_json(l).dump()), 3);
    CHECK(lattice_equal(l, back));
  }
  CHECK(matrix_from_json(json::array(), 5).cols() == 5);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,2],[3]]")), InputError);
}

TEST_CASE("emitted presentations and invariant lattices re-parse") {
  GroupPresentation p;
  p.n = 3;
  p.relators = {commutator({1}, {2}), commutator({1}, {3})};
  CHECK(GroupPresentation::from_json(json::parse(p.to_json().dump())).relators == p.relators);
  InvariantClass c = invariant_class(build_context(p));
  Lattice back = lattice_from_json(lattice_to_json(c.ambiguity), c.ambiguity.ambient_rank());
  CHECK(lattice_equal(back, c.ambiguity));
  CHECK(matrix_from_json(matrix_to_json(c.representative), c.representative.cols()) == c.representative);
}
