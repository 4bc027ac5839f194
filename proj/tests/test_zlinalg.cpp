#include <random>

#include "doctest.h"
#include "trimassey/error.hpp"
#include "trimassey/zlinalg.hpp"

using namespace trimassey;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// gcd of all k x k minors of a 3-column-or-fewer matrix, computed by brute force.
Int minor_gcd(const IntMatrix& a, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rs, cs;
  auto choose = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  };
  for (const auto& r : choose(a.rows(), k))
    for (const auto& c : choose(a.cols(), k)) {
      Int d = determinant(a.select_rows(r).select_columns(c));
      g = gcd(g, d);
    }
  return g;
}

bool brute_force_solvable(const IntMatrix& gens, const Vec& v, int box) {
  std::size_t m = gens.cols();
  std::vector<int> c(m, -box);
  for (;;) {
    Vec s = zero_vec(gens.rows());
    for (std::size_t j = 0; j < m; ++j) s += Int(c[j]) * gens.column(j);
    if (s == v) return true;
    std::size_t j = 0;
    while (j < m && c[j] == box) c[j++] = -box;
    if (j == m) return false;
    ++c[j];
  }
}

}  // namespace

TEST_CASE("smith normal form examples") {
  SmithForm z = smith_normal_form(IntMatrix::from_rows({{0}}));
  CHECK(z.S == IntMatrix::from_rows({{0}}));
  CHECK(z.U == IntMatrix::identity(1));
  CHECK(z.V == IntMatrix::identity(1));
  CHECK(z.rank == 0);

  SmithForm s = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(s.S == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  // Determinantal divisors as the independent check: gcd of entries, |det|.
  IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  CHECK(minor_gcd(a, 1) == 2);
  CHECK(abs(determinant(a)) == 8);

  CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 6);
    if (trial % 5 == 0) a = a * random_matrix(rng, c, c, 1);  // rank deficiency
    SmithForm f = smith_normal_form(a);
    CHECK(f.U * a * f.V == f.S);
    CHECK(f.Uinv * f.S * f.Vinv == a);
    CHECK(f.U * f.Uinv == IntMatrix::identity(r));
    CHECK(f.V * f.Vinv == IntMatrix::identity(c));
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    Int prod = 1;
    for (std::size_t i = 0; i < std::min(r, c); ++i)
      for (std::size_t j = 0; j < std::min(r, c); ++j)
        if (i != j) CHECK(f.S(i, j) == 0);
    for (std::size_t i = 0; i < f.rank; ++i) {
      CHECK(f.S(i, i) > 0);
      if (i + 1 < f.rank) CHECK(f.S(i + 1, i + 1) % f.S(i, i) == 0);
      prod *= f.S(i, i);
      CHECK(prod == minor_gcd(a, i + 1));
    }
    for (std::size_t i = f.rank; i < std::min(r, c); ++i) CHECK(f.S(i, i) == 0);
    if (f.rank < std::min(r, c)) CHECK(minor_gcd(a, f.rank + 1) == 0);
  }
}

TEST_CASE("solve_in_lattice examples") {
  Lattice l(2, {vec_of({2, 0}), vec_of({0, 3})});
  auto c = solve_in_lattice(l, vec_of({4, 3}));
  REQUIRE(c);
  CHECK(*c == vec_of({2, 1}));
  CHECK_FALSE(solve_in_lattice(l, vec_of({1, 0})));

  Lattice m(2, {vec_of({1, 1}), vec_of({1, -1})});
  auto d = solve_in_lattice(m, vec_of({2, 0}));
  REQUIRE(d);
  CHECK(*d == vec_of({1, 1}));
  CHECK(brute_force_solvable(m.generators(), vec_of({2, 0}), 2));

  CHECK_THROWS_AS(solve_in_lattice(l, vec_of({1, 2, 3})), InputError);
}

TEST_CASE("solve_in_lattice agrees with brute force") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 2;
    IntMatrix g = random_matrix(rng, n, m, 3);
    Lattice l(g);
    Vec v(n);
    std::uniform_int_distribution<int> d(-4, 4);
    for (auto& x : v) x = d(rng);
    auto c = solve_in_lattice(l, v);
    if (c) {
      CHECK(g * *c == v);
    } else {
      CHECK_FALSE(brute_force_solvable(g, v, 6));
      auto w = non_membership_witness(l, v);
      REQUIRE(w);
      Int val = dot(w->functional, v);
      for (std::size_t j = 0; j < m; ++j) {
        Int gv = dot(w->functional, g.column(j));
        if (w->modulus == 0)
          CHECK(gv == 0);
        else
          CHECK(gv % w->modulus == 0);
      }
      if (w->modulus == 0)
        CHECK(val != 0);
      else
        CHECK(val % w->modulus != 0);
    }
    CHECK(l.contains(v) == c.has_value());
  }
}

TEST_CASE("kernel_lattice examples") {
  Lattice k = kernel_lattice(IntMatrix::from_rows({{1, 1, 1}}));
  CHECK(k.rank() == 2);
  CHECK(k.contains(vec_of({1, -1, 0})));
  CHECK(k.contains(vec_of({0, 1, -1})));
  CHECK(kernel_lattice(IntMatrix::identity(2)).rank() == 0);
  CHECK(kernel_lattice(IntMatrix::from_rows({{0, 0}})).is_full());
}

TEST_CASE("kernel is saturated and annihilated") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 5);
    KernelBasis kb = kernel_basis(a);
    CHECK((a * kb.basis).is_zero());
    CHECK(kb.coords * kb.basis == IntMatrix::identity(kb.basis.cols()));
    CHECK(kb.basis.cols() + smith_normal_form(a).rank == c);
    AbelianPresentation q = cokernel_presentation(c, Lattice(kb.basis));
    CHECK(q.is_free());
  }
}

TEST_CASE("lattice_equal examples and properties") {
  CHECK(lattice_equal(Lattice(2, {vec_of({2, 0}), vec_of({0, 2})}),
                      Lattice(2, {vec_of({2, 2}), vec_of({2, -2}), vec_of({0, 2})})));
  CHECK_FALSE(lattice_equal(Lattice(2, {vec_of({1, 0})}), Lattice(2, {vec_of({2, 0})})));
  CHECK(lattice_equal(Lattice(2), Lattice(2)));
  CHECK_THROWS_AS(lattice_equal(Lattice(2), Lattice(3)), InputError);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 3;
    IntMatrix g = random_matrix(rng, n, m, 4);
    // Unimodular recombination of generators.
    IntMatrix u = IntMatrix::identity(m);
    for (int s = 0; s < 4; ++s) {
      std::size_t i = rng() % m, j = rng() % m;
      if (i != j) u.add_col_multiple(i, j, Int(static_cast<int>(rng() % 5) - 2));
    }
    Lattice a(g), b(g * u);
    CHECK(lattice_equal(a, b));
    CHECK(lattice_equal(b, a));
    CHECK(lattice_equal(a, a));
    Lattice c(random_matrix(rng, n, m, 4));
    CHECK(lattice_equal(a, c) == (lattice_contains(a, c) && lattice_contains(c, a)));
    if (lattice_equal(a, c)) CHECK(lattice_equal(b, c));
  }
}

TEST_CASE("lattice operations") {
  Lattice a(2, {vec_of({2, 0}), vec_of({0, 1})});
  Lattice b(2, {vec_of({3, 0}), vec_of({0, 2})});
  CHECK(lattice_equal(lattice_intersection(a, b), Lattice(2, {vec_of({6, 0}), vec_of({0, 2})})));
  CHECK(lattice_equal(lattice_sum(a, b), Lattice::full(2)));
  IntMatrix m = IntMatrix::from_rows({{1, 1}});
  Lattice target(1, {vec_of({2})});
  Lattice pre = lattice_preimage(m, target);
  CHECK(lattice_equal(pre, Lattice(2, {vec_of({1, -1}), vec_of({2, 0})})));
  CHECK(lattice_equal(lattice_image(m, a), Lattice(1, {vec_of({1})})));
}

TEST_CASE("cokernel_presentation examples") {
  AbelianPresentation p = cokernel_presentation(2, Lattice(2, {vec_of({2, 0}), vec_of({0, 3})}));
  CHECK(p.free_rank() == 0);
  REQUIRE(p.torsion().size() == 1);
  CHECK(p.torsion()[0] == 6);
  CHECK(p.is_zero(vec_of({2, 3})));
  CHECK_FALSE(p.is_zero(vec_of({1, 0})));

  AbelianPresentation f = cokernel_presentation(3, Lattice(3));
  CHECK(f.free_rank() == 3);
  CHECK(f.torsion().empty());

  CHECK(cokernel_presentation(1, Lattice(1, {vec_of({1})})).is_trivial());
}

TEST_CASE("cokernel structure matches determinantal divisors") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 4;
    IntMatrix g = random_matrix(rng, n, m, 5);
    AbelianPresentation p = cokernel_presentation(n, Lattice(g));
    std::size_t r = smith_normal_form(g).rank;
    CHECK(p.free_rank() == n - r);
    Int order = 1;
    for (const auto& d : p.torsion()) {
      CHECK(d >= 2);
      order *= d;
    }
    if (r > 0) CHECK(order == minor_gcd(g, r));
    // Projection kills the relations; lift is a section.
    for (std::size_t j = 0; j < m; ++j) CHECK(p.is_zero(g.column(j)));
    IntMatrix pl = p.projection() * p.lift();
    for (std::size_t i = 0; i < p.num_coords(); ++i) {
      Vec e = zero_vec(p.num_coords());
      e[i] = 1;
      CHECK(p.normalize(pl.column(i)) == p.normalize(e));
    }
  }
}

TEST_CASE("check_induced_isomorphism") {
  // Z^2 / <(2,0),(0,3)> -> Z/6 via (x,y) -> 3x+2y? Use the presentation's own projection.
  Lattice rel(2, {vec_of({2, 0}), vec_of({0, 3})});
  AbelianPresentation p = cokernel_presentation(2, rel);
  CHECK(check_induced_isomorphism(rel, p, p.projection()).is_iso());
  // Dropping a relation breaks injectivity.
  Lattice smaller(2, {vec_of({2, 0})});
  IsoCheck c = check_induced_isomorphism(smaller, p, p.projection());
  CHECK(c.well_defined);
  CHECK_FALSE(c.injective);
  CHECK(c.witness.has_value());
  // A zero map is not surjective.
  IsoCheck z = check_induced_isomorphism(rel, p, IntMatrix(p.num_coords(), 2));
  CHECK_FALSE(z.surjective);
}

TEST_CASE("quotient module agrees with dense cokernel") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 6, m = 1 + rng() % 8;
    std::vector<SparseVec> rels;
    std::vector<Vec> dense;
    for (std::size_t j = 0; j < m; ++j) {
      SparseVec s;
      Vec d = zero_vec(n);
      for (std::size_t i = 0; i < n; ++i)
        if (rng() % 3 == 0) {
          int x = static_cast<int>(rng() % 7) - 3;
          s.emplace_back(i, x);
          d[i] += x;
        }
      rels.push_back(s);
      dense.push_back(d);
    }
    QuotientModule q(n, rels);
    AbelianPresentation p = cokernel_presentation(n, Lattice(n, dense));
    CHECK(q.presentation().free_rank() == p.free_rank());
    CHECK(q.presentation().torsion() == p.torsion());
    for (int probe = 0; probe < 5; ++probe) {
      Vec v = zero_vec(n);
      for (auto& x : v) x = static_cast<int>(rng() % 5) - 2;
      CHECK(q.presentation().is_zero_coords(q.coordinates(v)) == p.is_zero(v));
    }
    for (const auto& d : dense) CHECK(q.presentation().is_zero_coords(q.coordinates(d)));
  }
}
