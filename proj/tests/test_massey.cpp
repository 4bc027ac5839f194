#include <cstdlib>
#include <random>

#include "doctest.h"
#include "trimassey/error.hpp"
#include "trimassey/expansions.hpp"
#include "trimassey/massey.hpp"

using namespace trimassey;
using nlohmann::json;

namespace {

GroupPresentation pres(std::size_t n, std::vector<Word> rels) {
  GroupPresentation p;
  p.n = n;
  p.relators = std::move(rels);
  return p;
}

Word comm(const Word& a, const Word& b) { return commutator(a, b); }

GroupPresentation heisenberg() {
  Word c = comm({1}, {2});
  return pres(2, {comm({1}, c), comm({2}, c)});
}

SimplicialSet torus() {
  return SimplicialSet::from_json(json::parse(
      R"J({"simplices": {"1": ["a","b","c"], "2": [{"name":"s","d0":"b","d1":"c","d2":"a"},
                                                  {"name":"t","d0":"a","d1":"c","d2":"b"}]}})J"));
}

MasseyContext dual_context(const GroupPresentation& p) {
  PresentationComplex pc = presentation_complex(p);
  return build_context(pc.x, pc.dual_h1_basis());
}

Vec unit(std::size_t n, std::size_t i) {
  Vec e = zero_vec(n);
  e[i] = 1;
  return e;
}

Vec tensor(const Vec& a, const Vec& b) {
  Vec out;
  for (const Int& x : a)
    for (const Int& y : b) out.push_back(x * y);
  return out;
}

Vec random_vec(std::mt19937& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Vec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Solves d(omega) = c on a presentation complex by walking each relator fan;
// the values on generator edges range over [-box, box]^n. Returns every solution.
std::vector<Vec> fan_solutions(const GroupPresentation& p, const PresentationComplex& pc, const Vec& c, int box) {
  const SimplicialSet& x = pc.x;
  const std::size_t n = p.n;
  std::vector<Vec> out;
  std::vector<int> vals(n, -box);
  auto edge_of = [&](int l) {
    return l > 0 ? pc.generator_edges[static_cast<std::size_t>(l) - 1] : pc.inverse_edges[static_cast<std::size_t>(-l) - 1];
  };
  while (true) {
    Vec w = zero_vec(x.count(1));
    for (std::size_t i = 0; i < n; ++i) {
      w[pc.generator_edges[i]] = vals[i];
      // Inverse triangle: w(G_i) - 0 + w(g_i) = c.
      w[pc.inverse_edges[i]] = c[pc.inverse_triangles[i]] - vals[i];
    }
    bool ok = true;
    for (std::size_t j = 0; j < p.relators.size() && ok; ++j) {
      const Word& r = p.relators[j];
      const std::string tag = "r" + std::to_string(j + 1);
      Int prefix = w[edge_of(r[0])];
      for (std::size_t m = 2; m <= r.size(); ++m) {
        std::size_t t = *x.find(2, tag + "t" + std::to_string(m));
        Int next = w[edge_of(r[m - 1])] + prefix - c[t];
        if (m < r.size()) {
          w[*x.find(1, tag + "p" + std::to_string(m))] = next;
          prefix = next;
        } else if (next != 0) {
          ok = false;
        }
      }
    }
    if (ok) out.push_back(w);
    std::size_t i = 0;
    while (i < n && vals[i] == box) vals[i++] = -box;
    if (i == n) break;
    ++vals[i];
  }
  return out;
}

// Coboundary of a 1-cochain read off the stored faces.
Vec face_coboundary(const SimplicialSet& x, const Vec& w) {
  Vec d = zero_vec(x.count(2));
  for (std::size_t t = 0; t < x.count(2); ++t) {
    const int sign[3] = {1, -1, 1};
    for (int i = 0; i < 3; ++i) {
      const SimplexRef& f = x.stored_face(2, t, i);
      if (!f.degenerate()) d[t] += sign[i] * w[f.base];
    }
  }
  return d;
}

}  // namespace

TEST_CASE("zeta examples") {
  CHECK(zeta(vec_of({1, 3, -1, 0, 2})) == vec_of({0, -3, -1, 0, -1}));
}

TEST_CASE("d zeta(omega) = omega cup omega on 1-cocycles") {
  std::mt19937 rng(7);
  std::vector<SimplicialSet> xs = {torus(), presentation_complex(pres(3, {comm({1}, {2}), comm({1}, {3})})).x,
                                   presentation_complex(heisenberg()).x};
  for (const auto& x : xs) {
    Cohomology h = cohomology(x);
    IntMatrix d1 = coboundary(x, 1);
    for (int trial = 0; trial < 10; ++trial) {
      Vec w = h.kappa * random_vec(rng, h.kappa.cols(), 3);
      CHECK(d1 * zeta(w) == cup(x, Cochain{1, w}, Cochain{1, w}));
    }
  }
}

TEST_CASE("context examples and the nu identities") {
  MasseyContext c1 = dual_context(pres(2, {comm({1}, {2})}));
  CHECK(c1.r2bar.rank() == 0);
  CHECK(c1.h2.describe() == "Z^1");
  CHECK_FALSE(c1.mu_barbar.is_zero());

  MasseyContext c2 = dual_context(pres(3, {comm({1}, {2}), comm({1}, {3})}));
  REQUIRE(c2.r2bar.rank() == 1);
  CHECK(c2.r2bar_basis.column(0) == unit(3, pair_index(3, 1, 2)));

  std::vector<MasseyContext> ctxs = {c1, c2, build_context(torus()), dual_context(heisenberg()),
                                     dual_context(pres(3, {comm({1}, {2})})),
                                     build_context(pres(3, {comm({1}, {2}), comm({1}, {3})}))};
  for (const auto& c : ctxs) {
    const std::size_t n = c.n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(c.r2.contains(tensor(unit(n, i), unit(n, j)) + tensor(unit(n, j), unit(n, i))));
        CHECK(c.r2.contains(tensor(unit(n, i), unit(n, i))));
      }
    if (c.route != Route::simplicial) continue;
    IntMatrix d1 = coboundary(*c.x, 1);
    for (const Vec& r : c.r2.basis().columns()) CHECK(d1 * c.nu(r) == c.mu_cochain * r);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec ki = c.coh->kappa.column(i);
      CHECK(c.nu(tensor(unit(n, i), unit(n, i))) == zeta(ki));
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vec kj = c.coh->kappa.column(j);
        CHECK(c.nu(tensor(unit(n, i), unit(n, j)) + tensor(unit(n, j), unit(n, i))) ==
              zeta(ki + kj) - zeta(ki) - zeta(kj));
      }
    }
  }
  CHECK_THROWS_AS(c2.nu(tensor(unit(3, 0), unit(3, 1))), PreconditionError);
}

TEST_CASE("lambda: cocycles, the cubic primitive and the q formula") {
  std::mt19937 rng(11);
  GroupPresentation p = pres(3, {comm({1}, {2}), comm({1}, {3})});
  PresentationComplex pc = presentation_complex(p);
  GeneratedMap tetra = tetra_expansion_inclusion(pc.x, 3);
  std::vector<MasseyContext> ctxs = {dual_context(p), build_context(*tetra.target), build_context(torus()),
                                     dual_context(heisenberg()), dual_context(pres(3, {comm({1}, {2})})),
                                     dual_context(pres(4, {comm({1}, {2}), comm({3}, {4})}))};
  for (const auto& c : ctxs) {
    const std::size_t n = c.n;
    LambdaFamily fam = lambda_family(c);
    IntMatrix d2 = coboundary(*c.x, 2);
    CHECK((d2 * fam.lambda).is_zero());

    IntMatrix d1 = coboundary(*c.x, 1);
    for (int trial = 0; trial < 8; ++trial) {
      // 0/1 coordinates first, where nu(h (x) h) = zeta(kappa h) and the primitive is exact.
      Vec h = trial < 4 ? random_vec(rng, n, 1) : random_vec(rng, n, 3);
      if (trial < 4)
        for (auto& v : h) v = abs(v);
      Vec ht = c.coh->kappa * h;
      Vec f(ht.size());
      for (std::size_t a = 0; a < ht.size(); ++a) f[a] = ht[a] * (ht[a] - 1) * (ht[a] - 2) / 6;
      // nu(h (x) h) - zeta(kappa h) = eps, a cocycle; eps cup h + h cup eps is then the defect.
      Vec eps = zero_vec(ht.size());
      for (std::size_t i = 0; i < n; ++i) eps += ((h[i] * h[i] - h[i]) / 2) * c.coh->kappa.column(i);
      Vec lam = lambda_cochain(c, tensor(tensor(h, h), h));
      CHECK(lam == d1 * f + cup(*c.x, Cochain{1, eps}, Cochain{1, ht}) + cup(*c.x, Cochain{1, ht}, Cochain{1, eps}));
      if (trial < 4) CHECK(lam == d1 * f);
      CHECK(c.h2.is_zero_coords(c.coh->h2_class(lam)));
    }

    for (std::size_t a = 0; a < n; ++a)
      for (const Vec& rb : c.r2bar_basis.columns()) {
        Vec t = tensor(unit(n, a), rb);
        Vec expected = zero_vec(c.h2_coords());
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            expected += (t[h_lambda2_index(n, i, i, j)] + t[h_lambda2_index(n, j, i, j)]) * c.mu_bar.column(i * n + j);
        CHECK(lambda_bar(c, q_map(n, t)) == c.h2.normalize(expected));
      }
  }

  // Free group: H^2 = 0, so every lambda-bar value and the class vanish.
  MasseyContext free_ctx = dual_context(pres(2, {}));
  CHECK(free_ctx.h2_coords() == 0);
  InvariantClass fc = invariant_class(free_ctx);
  CHECK(fc.representative.rows() == 0);
  CHECK(fc.ambiguity.rank() == 0);
}

TEST_CASE("triple Massey products") {
  MasseyContext t = build_context(torus());
  const Vec x1 = unit(2, 0), x2 = unit(2, 1), zero = zero_vec(2);
  MasseyProduct z = triple_massey(t, x1, zero, x2);
  CHECK(z.indeterminacy.contains(z.representative));
  CHECK_THROWS_WITH_AS(triple_massey(t, x1, x2, x1), doctest::Contains("theta1 cup theta2"), PreconditionError);

  // Heisenberg relators: the product <xi1, xi1, xi2> against fan-propagated defining systems.
  GroupPresentation h = heisenberg();
  PresentationComplex pc = presentation_complex(h);
  MasseyContext c = build_context(pc.x, pc.dual_h1_basis());
  CHECK(c.mu_bar.is_zero());
  const IntMatrix& kappa = c.coh->kappa;
  auto cupc = [&](const Vec& a, const Vec& b) { return cup(pc.x, Cochain{1, a}, Cochain{1, b}); };
  auto oracle_classes = [&](const Vec& t1, const Vec& t2, const Vec& t3, int box) {
    Vec k1 = kappa * t1, k2 = kappa * t2, k3 = kappa * t3;
    auto w12s = fan_solutions(h, pc, cupc(k1, k2), box);
    auto w23s = fan_solutions(h, pc, cupc(k2, k3), box);
    std::vector<Vec> classes;
    for (const Vec& w12 : w12s) {
      CHECK(face_coboundary(pc.x, w12) == cupc(k1, k2));
      for (const Vec& w23 : w23s) classes.push_back(c.coh->h2_class(cupc(w12, k3) + cupc(k1, w23)));
    }
    return classes;
  };
  MasseyProduct m = triple_massey(c, x1, x1, x2);
  auto classes = oracle_classes(x1, x1, x2, 2);
  REQUIRE_FALSE(classes.empty());
  for (const Vec& cl : classes) CHECK(c.h2.normalize(cl - m.representative) == zero_vec(c.h2_coords()));
  // Evaluated on the two relator cycles the class is primitive and nonzero.
  CHECK(m.indeterminacy.rank() == 0);
  Vec values;
  for (std::size_t j = 0; j < 2; ++j) {
    Vec cocycle = c.coh->z2.basis * c.h2.lift() * m.representative;
    values.push_back(dot(cocycle, pc.relator_cycle(j)));
  }
  Int g = 0;
  for (const Int& v : values) g = gcd(g, v);
  CHECK(g == 1);

  // Random admissible triples: all cup products vanish here.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    Vec a = random_vec(rng, 2, 1), b = random_vec(rng, 2, 1), d = random_vec(rng, 2, 1);
    MasseyProduct mp = triple_massey(c, a, b, d);
    for (const Vec& cl : oracle_classes(a, b, d, 1)) CHECK(mp.indeterminacy.contains(c.h2.normalize(cl - mp.representative)));
  }

  // Linearity in the first slot modulo the joint indeterminacy.
  MasseyProduct ma = triple_massey(c, x1, x2, x2), mb = triple_massey(c, x2, x2, x2), ms = triple_massey(c, x1 + x2, x2, x2);
  std::vector<Vec> joint = ma.indeterminacy.generators().columns();
  for (const Vec& v : mb.indeterminacy.generators().columns()) joint.push_back(v);
  for (const Vec& v : ms.indeterminacy.generators().columns()) joint.push_back(v);
  CHECK(Lattice(c.h2_coords(), joint).contains(ma.representative + mb.representative - ms.representative));
}

TEST_CASE("invariant class under shifts of nu") {
  std::mt19937 rng(5);
  std::vector<MasseyContext> ctxs = {dual_context(pres(3, {comm({1}, {2})})),
                                     dual_context(pres(4, {comm({1}, {2}), comm({3}, {4})})),
                                     dual_context(pres(3, {comm({1}, {2}), comm({1}, {3})})),
                                     build_context(torus()), dual_context(heisenberg())};
  for (const auto& c : ctxs) {
    InvariantClass base = invariant_class(c);
    const std::size_t rb = c.r2bar_basis.cols();
    if (rb == 0) CHECK(base.ambiguity.rank() == 0);
    for (int trial = 0; trial < 20; ++trial) {
      IntMatrix r(c.n, rb);
      for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = 0; j < rb; ++j) r(i, j) = std::uniform_int_distribution<int>(-3, 3)(rng);
      MasseyContext s = c.shifted(c.coh->kappa * r);
      InvariantClass moved = invariant_class(s);
      IntMatrix change = moved.representative - base.representative;
      IntMatrix predicted = delta_barbar(c, r);
      for (std::size_t col = 0; col < change.cols(); ++col)
        CHECK(c.h2.normalize(change.column(col)) == predicted.column(col));
      CHECK(base.ambiguity.contains(InvariantClass::flatten(predicted)));
      CHECK(moved.equals(base));
    }
  }
  CHECK_THROWS_AS(ctxs[0].shifted(IntMatrix(1, 1)), InputError);
}

TEST_CASE("simplicial and group routes agree") {
  std::vector<GroupPresentation> ps = {
      pres(2, {comm({1}, {2})}),
      pres(3, {comm({1}, {2})}),
      pres(3, {comm({1}, {2}), comm({1}, {3})}),
      pres(3, {comm({1}, {2}), comm({2}, {3}), comm({1}, {3})}),
      pres(4, {comm({1}, {2}), comm({3}, {4})}),
      pres(3, {reduce(Word{1, 2, -1, -2, 1, 3, -1, -3})}),
      pres(3, {comm({1}, {2, 3}), comm({2}, {3})}),
      pres(2, {}),
  };
  for (const auto& p : ps) {
    RouteComparison r = compare_routes(p);
    INFO(r.detail);
    CHECK(r.agree());
  }
}

TEST_CASE("invariant class transports along generated pseudo-homeomorphisms") {
  GroupPresentation p = pres(3, {comm({1}, {2}), comm({1}, {3})});
  PresentationComplex pc = presentation_complex(p);
  std::vector<GeneratedMap> maps;
  maps.push_back(identity_map(pc.x));
  maps.push_back(expansion_inclusion(pc.x, SimplexRef::nondegenerate(1, 0), SimplexRef::nondegenerate(1, 4)));
  maps.push_back(expansion_retraction(pc.x, 1, true));
  maps.push_back(tetra_expansion_inclusion(pc.x, 3));
  maps.push_back(tetra_expansion_retraction(torus(), 1));
  maps.push_back(redundant_relator_retraction(p, 0, 1));
  maps.push_back(redundant_relator_retraction(p, 1, 1, true));
  for (const auto& g : maps) {
    INFO(g.kind);
    TransportCheck t = transport_check(g.map);
    CHECK(t.rbar2_equal);
    CHECK(t.qbar3_equal);
    CHECK(t.class_equal);
  }
}

TEST_CASE("compare_groups examples") {
  GroupPresentation a = pres(3, {comm({1}, {2})}), b = pres(3, {comm({2}, {3})});
  GroupComparison same = compare_groups(a, a, IntMatrix::identity(3));
  CHECK(same.gamma3);
  CHECK(same.gamma4 == Gamma4::yes);

  GroupComparison id = compare_groups(a, b, IntMatrix::identity(3));
  CHECK_FALSE(id.gamma3);
  CHECK(id.certificates.contains("gamma3"));
  IntMatrix cyc(3, 3);  // h1 -> h2, h2 -> h3, h3 -> h1
  cyc(1, 0) = 1;
  cyc(2, 1) = 1;
  cyc(0, 2) = 1;
  GroupComparison perm = compare_groups(a, b, cyc);
  CHECK(perm.gamma3);
  CHECK(perm.gamma4 == Gamma4::yes);

  IntMatrix bad = IntMatrix::identity(3);
  bad(0, 0) = 2;
  CHECK_THROWS_AS(compare_groups(a, a, bad), InputError);
}

TEST_CASE("perturbed tau-bar is detected with a certificate") {
  GroupPresentation p = pres(3, {comm({1}, {2})});
  MasseyContext c = build_context(p);
  REQUIRE(c.lcs->p3_free);
  REQUIRE(c.q3bar_basis.cols() > 0);
  // Adding an element of N3 leaves the class alone.
  IntMatrix shift(27, 1);
  shift.set_column(0, c.lcs->n3.basis().column(0));
  CHECK(compare_contexts(c, perturb_tau(c, shift), IntMatrix::identity(3)).gamma4 == Gamma4::yes);

  bool detected = false;
  for (const Vec& bracket : c.lcs->bracket3.columns()) {
    IntMatrix pert(27, 1);
    pert.set_column(0, bracket);
    GroupComparison r = compare_contexts(c, perturb_tau(c, pert), IntMatrix::identity(3));
    CHECK(r.gamma3);
    if (r.gamma4 == Gamma4::no) {
      detected = true;
      CHECK(r.certificates["gamma4"].contains("difference_outside_ambiguity"));
      CHECK(r.certificates["gamma4"]["difference_outside_ambiguity"].contains("functional"));
      break;
    }
  }
  CHECK(detected);
}
