#include <random>

#include "doctest.h"
#include "trimassey/error.hpp"
#include "trimassey/tensorspace.hpp"

using namespace trimassey;

namespace {

// Independent tensor arithmetic on explicit words, used as the oracle for the
// matrix constructions.
Vec word3(std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
  Vec v = zero_vec(n * n * n);
  v[(a * n + b) * n + c] = 1;
  return v;
}

Vec bracket_then(std::size_t n, std::size_t x, std::size_t y, std::size_t z) {
  return word3(n, x, y, z) - word3(n, y, x, z);
}

Vec h_l2(std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
  Vec t = zero_vec(n * lambda2_rank(n));
  t[h_lambda2_index(n, a, b, c)] = 1;
  return t;
}

}  // namespace

TEST_CASE("index helpers") {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++idx) {
        CHECK(pair_index(n, i, j) == idx);
        CHECK(pair_of(n, idx) == std::array<std::size_t, 2>{i, j});
      }
    idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k, ++idx) CHECK(triple_index(n, i, j, k) == idx);
    CHECK(idx == lambda3_rank(n));
  }
  TensorWordBasis b(3, 3);
  CHECK(b.size() == 27);
  CHECK(b.index({1, 0, 2}) == 11);
  CHECK(b.word(11) == std::vector<std::size_t>{1, 0, 2});
  CHECK_THROWS_AS(build_exterior_structure(0), InputError);
  CHECK_THROWS_AS(BasedModule({"x", "x"}), InputError);
}

TEST_CASE("eta2 examples") {
  ExteriorStructure e = build_exterior_structure(2);
  CHECK(e.eta2(0, 0 * 2 + 1) == 1);
  CHECK(e.eta2(0, 1 * 2 + 0) == -1);
  CHECK(e.eta2(0, 0) == 0);
  CHECK(e.eta2(0, 3) == 0);
}

TEST_CASE("jay on xi1^xi2^xi3") {
  const std::size_t n = 3;
  ExteriorStructure e = build_exterior_structure(n);
  Vec expected = bracket_then(n, 0, 1, 2) + bracket_then(n, 1, 2, 0) + bracket_then(n, 2, 0, 1);
  CHECK(e.jay.column(0) == expected);
}

TEST_CASE("l on repeated factor and sign") {
  ExteriorStructure e = build_exterior_structure(2);
  CHECK(is_zero(e.l * h_l2(2, 0, 0, 1)));
  ExteriorStructure f = build_exterior_structure(3);
  // xi2 (x) xi1^xi3 -> xi2^xi1^xi3 = -xi1^xi2^xi3
  CHECK((f.l * h_l2(3, 1, 0, 2)) == vec_of({-1}));
  CHECK((f.l * h_l2(3, 2, 0, 1)) == vec_of({1}));
}

TEST_CASE("p_map examples") {
  CHECK(p_map(2, h_l2(2, 0, 0, 1)) == word3(2, 0, 0, 1));
  CHECK(p_map(2, h_l2(2, 1, 0, 1)) == Int(-1) * word3(2, 1, 1, 0));
  CHECK(is_zero(p_map(2, zero_vec(2))));
  CHECK_THROWS_AS(p_map(3, h_l2(3, 0, 1, 2)), PreconditionError);
}

TEST_CASE("q_map examples") {
  CHECK(q_map(3, h_l2(3, 0, 1, 2)) == word3(3, 0, 1, 2) + word3(3, 1, 0, 2) + word3(3, 1, 2, 0));
  CHECK(q_map(2, h_l2(2, 0, 0, 1)) == word3(2, 0, 0, 1) + word3(2, 0, 0, 1) + word3(2, 0, 1, 0));
  CHECK(is_zero(q_map(2, zero_vec(2))));
}

TEST_CASE("structural identities for n <= 8") {
  for (std::size_t n = 1; n <= 8; ++n) {
    ExteriorStructure e = build_exterior_structure(n);
    CHECK(e.eta2 * e.chi2 == IntMatrix::identity(lambda2_rank(n)));
    if (n > 5) continue;
    IntMatrix ide = id_tensor_eta2(n);
    IntMatrix q = q_matrix(n);
    std::size_t h = n * lambda2_rank(n);
    CHECK(ide * q == IntMatrix::identity(h));
    CHECK(ide * e.s123 * q == IntMatrix::identity(h));
    IntMatrix one_minus_s = IntMatrix::identity(n * n * n) - e.s123;
    IntMatrix kl = kernel_lattice(e.l).basis();
    CHECK(ide * one_minus_s * p_matrix(n) * kl == kl);
    CHECK(e.s123 * e.s123 * e.s123 == IntMatrix::identity(n * n * n));
  }
}

TEST_CASE("cyclic permutation convention") {
  ExteriorStructure e = build_exterior_structure(3);
  CHECK(e.s123 * word3(3, 0, 1, 2) == word3(3, 2, 0, 1));
}

TEST_CASE("decompose_q3 examples") {
  Q3Decomposition d = decompose_q3(2, word3(2, 0, 0, 0));
  CHECK(is_zero(d.p_part));
  CHECK(is_zero(d.q_part));
  CHECK(d.symmetric_part == word3(2, 0, 0, 0));

  Vec pv = p_map(2, h_l2(2, 0, 0, 1));
  d = decompose_q3(2, pv);
  CHECK(d.p_part == pv);
  CHECK(is_zero(d.q_part));
  CHECK(is_zero(d.symmetric_part));

  Vec qv = q_map(3, h_l2(3, 0, 1, 2));
  d = decompose_q3(3, qv);
  CHECK(is_zero(d.p_part));
  CHECK(d.q_part == qv);
  CHECK(is_zero(d.symmetric_part));

  // The three summands fill T^3 rationally: ranks n*C(n,2) - C(n,3), n*C(n,2), C(n+2,3).
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(n * lambda2_rank(n) - lambda3_rank(n) + n * lambda2_rank(n) + sym3_rank(n) == n * n * n);
}

TEST_CASE("decompose_q3 on random sums reassembles and is idempotent") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(-3, 3);
  for (std::size_t n = 2; n <= 4; ++n) {
    ExteriorStructure e = build_exterior_structure(n);
    IntMatrix kl = kernel_lattice(e.l).basis();
    IntMatrix sym = sym3_basis(n);
    std::size_t h = n * lambda2_rank(n);
    for (int trial = 0; trial < 20; ++trial) {
      Vec a = zero_vec(kl.cols()), t = zero_vec(h), c = zero_vec(sym.cols());
      for (auto& x : a) x = d(rng);
      for (auto& x : t) x = d(rng);
      for (auto& x : c) x = d(rng);
      Vec pa = p_matrix(n) * (kl * a), qb = q_matrix(n) * t, sc = sym * c;
      Vec v = pa + qb + sc;
      Lattice everything = Lattice::full(n * n * n);
      Q3Decomposition r = decompose_q3(n, v, &everything);
      CHECK(r.p_part == pa);
      CHECK(r.q_part == qb);
      CHECK(r.symmetric_part == sc);
      CHECK(r.p_part + r.q_part + r.symmetric_part == v);
      CHECK(decompose_q3(n, r.p_part).p_part == r.p_part);
      CHECK(decompose_q3(n, r.q_part).q_part == r.q_part);
      CHECK(decompose_q3(n, r.symmetric_part).symmetric_part == r.symmetric_part);
    }
  }
  Lattice none(8);
  CHECK_THROWS_AS(decompose_q3(2, word3(2, 0, 0, 0), &none), InconsistencyError);
}
