#include "trimassey/massey.hpp"

#include "trimassey/error.hpp"
#include "trimassey/serialize.hpp"
#include "trimassey/tensorspace.hpp"

namespace trimassey {

using nlohmann::json;

Vec zeta(const Vec& omega) {
  Vec z(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) z[i] = (omega[i] - omega[i] * omega[i]) / 2;
  return z;
}

namespace {

Vec tensor(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec e = zero_vec(n);
  e[i] = 1;
  return e;
}

// q_{i..} in Z^{n^2}.
Vec first_slice(std::size_t n, const Vec& q, std::size_t i) {
  return Vec(q.begin() + static_cast<std::ptrdiff_t>(i * n * n),
             q.begin() + static_cast<std::ptrdiff_t>((i + 1) * n * n));
}

// q_{..k} in Z^{n^2}.
Vec last_slice(std::size_t n, const Vec& q, std::size_t k) {
  Vec s(n * n);
  for (std::size_t ij = 0; ij < n * n; ++ij) s[ij] = q[ij * n + k];
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("matrix is not square");
  SmithForm f = smith_normal_form(m);
  if (f.rank != m.rows()) throw InputError("matrix is not invertible over Z");
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.S(i, i) != 1) throw InputError("matrix is not unimodular");
  return f.V * f.U;
}

AbelianPresentation free_presentation(std::size_t r) {
  return AbelianPresentation(r, {}, r, IntMatrix::identity(r), IntMatrix::identity(r));
}

// Shared lattice bookkeeping once mu_bar is known.
void fill_kernels(MasseyContext& c) {
  const std::size_t n = c.n, n2 = n * n;
  ExteriorStructure e = build_exterior_structure(n);
  c.mu_barbar = c.mu_bar * e.chi2;
  Lattice rel = c.h2.relation_lattice();
  c.r2 = lattice_preimage(c.mu_bar, rel);
  c.r2bar = lattice_preimage(c.mu_barbar, rel);
  c.r2bar_basis = c.r2bar.basis();

  std::vector<Vec> left, right;
  for (const Vec& b : c.r2.basis().columns())
    for (std::size_t k = 0; k < n; ++k) {
      left.push_back(tensor(b, unit(n, k)));
      right.push_back(tensor(unit(n, k), b));
    }
  c.q3 = lattice_intersection(Lattice(n2 * n, left), Lattice(n2 * n, right));

  const std::size_t l2 = lambda2_rank(n);
  std::vector<Vec> h_rbar;
  for (std::size_t a = 0; a < n; ++a)
    for (const Vec& b : c.r2bar_basis.columns()) h_rbar.push_back(tensor(unit(n, a), b));
  c.q3bar = lattice_intersection(Lattice(n * l2, h_rbar), kernel_lattice(e.l));
  c.q3bar_basis = c.q3bar.basis();
}

}  // namespace

Vec MasseyContext::r2bar_coords(const Vec& r) const {
  auto c = solve_in_lattice(Lattice(r2bar_basis), r);
  if (!c) throw PreconditionError("element " + to_string(r) + " is not in Rbar2");
  return *c;
}

Vec MasseyContext::cup11(const Vec& f, const Vec& g) const {
  const std::size_t c1 = f.size();
  Vec out = zero_vec(cup_rows.size());
  for (std::size_t t = 0; t < cup_rows.size(); ++t)
    for (auto& [ij, coef] : cup_rows[t]) out[t] += coef * f[ij / c1] * g[ij % c1];
  return out;
}

Vec MasseyContext::nu(const Vec& r) const {
  if (route != Route::simplicial) throw PreconditionError("nu as a cochain map needs the simplicial route");
  if (!r2.contains(r)) throw PreconditionError("nu: " + to_string(r) + " is not in R2");
  ExteriorStructure e = build_exterior_structure(n);
  Vec eta = e.eta2 * r;
  Vec sym = r - e.chi2 * eta;
  Vec out = nu_chi * r2bar_coords(eta);
  const IntMatrix& kappa = coh->kappa;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec ki = kappa.column(i);
    if (sym[i * n + i] != 0) out += sym[i * n + i] * zeta(ki);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int& s = sym[i * n + j];
      if (s == 0) continue;
      const Vec kj = kappa.column(j);
      out += s * (zeta(ki + kj) - zeta(ki) - zeta(kj));
    }
  }
  return out;
}

MasseyContext MasseyContext::shifted(const IntMatrix& rho) const {
  if (route != Route::simplicial) throw PreconditionError("nu shifts need the simplicial route");
  if (rho.rows() != nu_chi.rows() || rho.cols() != nu_chi.cols()) throw InputError("rho has the wrong shape");
  if (!(coboundary(*x, 1) * rho).is_zero()) throw PreconditionError("rho must take values in 1-cocycles");
  MasseyContext c = *this;
  c.nu_chi = nu_chi + rho;
  return c;
}

MasseyContext build_context(const SimplicialSet& x, const std::optional<IntMatrix>& h1_basis) {
  MasseyContext c;
  c.route = Route::simplicial;
  c.x = std::make_shared<SimplicialSet>(x);
  c.coh = std::make_shared<Cohomology>(cohomology(x, h1_basis));
  const Cohomology& h = *c.coh;
  c.n = h.kappa.cols();
  c.h2 = h.h2;
  const IntMatrix cm = cup_matrix(x, 1, 1);
  c.cup_rows.resize(cm.rows());
  for (std::size_t t = 0; t < cm.rows(); ++t)
    for (std::size_t ij = 0; ij < cm.cols(); ++ij)
      if (cm(t, ij) != 0) c.cup_rows[t].emplace_back(ij, cm(t, ij));
  c.mu_cochain = cm * kronecker(h.kappa, h.kappa);
  c.mu_bar = IntMatrix(h.h2.num_coords(), c.n * c.n);
  for (std::size_t col = 0; col < c.n * c.n; ++col) c.mu_bar.set_column(col, h.h2_class(c.mu_cochain.column(col)));
  fill_kernels(c);

  ExteriorStructure e = build_exterior_structure(c.n);
  Lattice coboundaries(coboundary(x, 1));
  c.nu_chi = IntMatrix(h.c1_rank, c.r2bar_basis.cols());
  for (std::size_t b = 0; b < c.r2bar_basis.cols(); ++b) {
    Vec target = c.mu_cochain * (e.chi2 * c.r2bar_basis.column(b));
    auto w = solve_in_lattice(coboundaries, target);
    if (!w) throw InconsistencyError("d nu = mu(kappa x kappa)(r) has no solution for an Rbar2 basis element");
    c.nu_chi.set_column(b, *w);
  }
  return c;
}

MasseyContext build_context(const GroupPresentation& p) {
  MasseyContext c;
  c.route = Route::group;
  c.presentation = std::make_shared<GroupPresentation>(p);
  c.lcs = std::make_shared<LcsData>(build_p2_p3(p));
  c.n = p.n;
  c.tau_residues = tau_bar(p, *c.lcs).residues;
  const DeltaBarH2& dbar = c.lcs->dbar;
  c.h2 = free_presentation(dbar.rank());
  c.mu_bar = dbar.basis.transpose();
  fill_kernels(c);

  // nu := conjugate of iota on the presentation complex; check the cochain identities.
  PresentationComplex pc = presentation_complex(p);
  const IntMatrix kappa = pc.dual_h1_basis();
  const IntMatrix nu = edge_maps(p, pc).iota.transpose();
  const IntMatrix mu = cup_matrix(pc.x, 1, 1) * kronecker(kappa, kappa);
  const IntMatrix d1 = coboundary(pc.x, 1);
  for (const Vec& r : c.r2.basis().columns())
    if (!(d1 * (nu * r) == mu * r))
      throw InconsistencyError("conjugate of iota fails d nu = mu(kappa x kappa) on " + to_string(r));
  const std::size_t n = c.n;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec ki = kappa.column(i);
    if (!(nu * tensor(unit(n, i), unit(n, i)) == zeta(ki)))
      throw InconsistencyError("conjugate of iota is not normalized on xi_i (x) xi_i");
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec kj = kappa.column(j);
      Vec sym = tensor(unit(n, i), unit(n, j)) + tensor(unit(n, j), unit(n, i));
      if (!(nu * sym == zeta(ki + kj) - zeta(ki) - zeta(kj)))
        throw InconsistencyError("conjugate of iota is not normalized on xi_i (x) xi_j + xi_j (x) xi_i");
    }
  }
  return c;
}

Vec lambda_cochain(const MasseyContext& ctx, const Vec& q) {
  if (ctx.route != Route::simplicial) throw PreconditionError("lambda as a cochain needs the simplicial route");
  const std::size_t n = ctx.n;
  if (q.size() != n * n * n) throw InputError("lambda: expected a degree-3 tensor");
  if (!ctx.q3.contains(q)) throw PreconditionError("lambda: " + to_string(q) + " is not in Q3");
  const IntMatrix& kappa = ctx.coh->kappa;
  Vec out = zero_vec(ctx.coh->c2_rank);
  for (std::size_t k = 0; k < n; ++k) {
    Vec s = last_slice(n, q, k);
    if (!is_zero(s)) out += ctx.cup11(ctx.nu(s), kappa.column(k));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec s = first_slice(n, q, i);
    if (!is_zero(s)) out += ctx.cup11(kappa.column(i), ctx.nu(s));
  }
  return out;
}

namespace {

Vec group_pairing(const MasseyContext& ctx, const Vec& pt) {
  Vec v(ctx.tau_residues.cols());
  for (std::size_t s = 0; s < v.size(); ++s) v[s] = dot(pt, ctx.tau_residues.column(s));
  return v;
}

}  // namespace

Vec lambda_bar(const MasseyContext& ctx, const Vec& q) {
  if (ctx.route == Route::simplicial) {
    Vec c = lambda_cochain(ctx, q);
    Vec zc = ctx.coh->z2.coords * c;
    if (!(ctx.coh->z2.basis * zc == c)) throw InconsistencyError("lambda(q) is not a cocycle for q = " + to_string(q));
    return ctx.h2.coordinates(zc);
  }
  const std::size_t n = ctx.n;
  Q3Decomposition d = decompose_q3(n, q, &ctx.q3);
  Vec out = group_pairing(ctx, d.p_part);
  Vec u = id_tensor_eta2(n) * d.q_part;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Int coef = u[h_lambda2_index(n, i, i, j)] + u[h_lambda2_index(n, j, i, j)];
      if (coef != 0) out += coef * ctx.mu_bar.column(i * n + j);
    }
  return ctx.h2.normalize(out);
}

IntMatrix lambda_barbar(const MasseyContext& ctx) {
  const std::size_t q = ctx.q3bar_basis.cols();
  IntMatrix out(ctx.h2_coords(), q);
  const IntMatrix pm = p_matrix(ctx.n);
  for (std::size_t s = 0; s < q; ++s) {
    Vec pt = pm * ctx.q3bar_basis.column(s);
    out.set_column(s, ctx.route == Route::simplicial ? lambda_bar(ctx, pt) : group_pairing(ctx, pt));
  }
  return out;
}

LambdaFamily lambda_family(const MasseyContext& ctx) {
  LambdaFamily f;
  f.q3_basis = ctx.q3.basis();
  if (ctx.route == Route::simplicial) {
    const std::size_t m = f.q3_basis.cols();
    f.lambda = IntMatrix(ctx.coh->c2_rank, m);
    f.lambda_bar = IntMatrix(ctx.h2_coords(), m);
    for (std::size_t s = 0; s < m; ++s) {
      Vec q = f.q3_basis.column(s);
      f.lambda.set_column(s, lambda_cochain(ctx, q));
      f.lambda_bar.set_column(s, lambda_bar(ctx, q));
    }
  }
  f.lambda_barbar = lambda_barbar(ctx);
  return f;
}

IntMatrix delta_barbar(const MasseyContext& ctx, const IntMatrix& f) {
  const std::size_t n = ctx.n, rb = ctx.r2bar_basis.cols();
  if (f.rows() != n || f.cols() != rb) throw InputError("delta_barbar: f must be n x rank Rbar2");
  ExteriorStructure e = build_exterior_structure(n);
  const IntMatrix pm = p_matrix(n);
  const std::size_t q = ctx.q3bar_basis.cols();
  IntMatrix out(ctx.h2_coords(), q);
  for (std::size_t s = 0; s < q; ++s) {
    Vec pt = pm * ctx.q3bar_basis.column(s);
    Vec v = zero_vec(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec a = first_slice(n, pt, i);
      if (!is_zero(a)) v += tensor(unit(n, i), f * ctx.r2bar_coords(e.eta2 * a));
      Vec b = last_slice(n, pt, i);
      if (!is_zero(b)) v += tensor(f * ctx.r2bar_coords(e.eta2 * b), unit(n, i));
    }
    out.set_column(s, ctx.h2.normalize(ctx.mu_bar * v));
  }
  return out;
}

MasseyProduct triple_massey(const MasseyContext& ctx, const Vec& t1, const Vec& t2, const Vec& t3) {
  const std::size_t n = ctx.n;
  if (t1.size() != n || t2.size() != n || t3.size() != n) throw InputError("triple_massey: classes must have rank H^1 entries");
  Vec c12 = ctx.h2.normalize(ctx.mu_bar * tensor(t1, t2));
  if (!ctx.h2.is_zero_coords(c12)) throw PreconditionError("theta1 cup theta2 is nonzero: " + to_string(c12));
  Vec c23 = ctx.h2.normalize(ctx.mu_bar * tensor(t2, t3));
  if (!ctx.h2.is_zero_coords(c23)) throw PreconditionError("theta2 cup theta3 is nonzero: " + to_string(c23));
  MasseyProduct m;
  m.representative = lambda_bar(ctx, tensor(tensor(t1, t2), t3));
  std::vector<Vec> gens;
  for (std::size_t a = 0; a < n; ++a) {
    gens.push_back(ctx.mu_bar * tensor(unit(n, a), t3));
    gens.push_back(ctx.mu_bar * tensor(t1, unit(n, a)));
  }
  const auto& tor = ctx.h2.torsion();
  for (std::size_t i = 0; i < tor.size(); ++i) gens.push_back(tor[i] * unit(ctx.h2_coords(), i));
  m.indeterminacy = Lattice(ctx.h2_coords(), gens);
  return m;
}

Vec InvariantClass::flatten(const IntMatrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t s = 0; s < m.cols(); ++s)
    for (std::size_t c = 0; c < m.rows(); ++c) v.push_back(m(c, s));
  return v;
}

Lattice InvariantClass::full_ambiguity() const {
  std::vector<Vec> gens = ambiguity.generators().columns();
  const std::size_t total = h2_coords * q3bar_rank;
  for (std::size_t s = 0; s < q3bar_rank; ++s)
    for (std::size_t i = 0; i < torsion.size(); ++i) gens.push_back(torsion[i] * unit(total, s * h2_coords + i));
  return Lattice(total, gens);
}

std::optional<Vec> InvariantClass::difference_in_ambiguity(const IntMatrix& other) const {
  if (other.rows() != h2_coords || other.cols() != q3bar_rank) return std::nullopt;
  return solve_in_lattice(full_ambiguity(), flatten(representative - other));
}

bool InvariantClass::equals(const InvariantClass& other) const {
  if (h2_coords != other.h2_coords || q3bar_rank != other.q3bar_rank || torsion != other.torsion) return false;
  if (!lattice_equal(full_ambiguity(), other.full_ambiguity())) return false;
  return difference_in_ambiguity(other.representative).has_value();
}

InvariantClass invariant_class(const MasseyContext& ctx) {
  InvariantClass c;
  c.h2_coords = ctx.h2_coords();
  c.q3bar_rank = ctx.q3bar_basis.cols();
  c.torsion = ctx.h2.torsion();
  c.representative = lambda_barbar(ctx);
  const std::size_t n = ctx.n, rb = ctx.r2bar_basis.cols();
  std::vector<Vec> gens;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < rb; ++b) {
      IntMatrix f(n, rb);
      f(a, b) = 1;
      gens.push_back(InvariantClass::flatten(delta_barbar(ctx, f)));
    }
  c.ambiguity = Lattice(c.h2_coords * c.q3bar_rank, gens);
  return c;
}

InvariantClass map_h2(const InvariantClass& c, const IntMatrix& h2_map, const AbelianPresentation& new_h2) {
  if (h2_map.cols() != c.h2_coords || h2_map.rows() != new_h2.num_coords())
    throw InputError("map_h2: coordinate change has the wrong shape");
  InvariantClass out;
  out.h2_coords = new_h2.num_coords();
  out.q3bar_rank = c.q3bar_rank;
  out.torsion = new_h2.torsion();
  out.representative = h2_map * c.representative;
  std::vector<Vec> gens;
  for (const Vec& g : c.ambiguity.generators().columns()) {
    IntMatrix block(c.h2_coords, c.q3bar_rank);
    for (std::size_t s = 0; s < c.q3bar_rank; ++s)
      for (std::size_t i = 0; i < c.h2_coords; ++i) block(i, s) = g[s * c.h2_coords + i];
    gens.push_back(InvariantClass::flatten(h2_map * block));
  }
  out.ambiguity = Lattice(out.h2_coords * out.q3bar_rank, gens);
  return out;
}

RouteComparison compare_routes(const GroupPresentation& p) {
  RouteComparison r;
  MasseyContext g = build_context(p);
  PresentationComplex pc = presentation_complex(p);
  MasseyContext s = build_context(pc.x, pc.dual_h1_basis());

  // H^2(X_P) -> Hom(H2, Z): evaluate cocycles on the cycles carrying the Dbar basis.
  const DeltaBarH2& dbar = g.lcs->dbar;
  const std::size_t rk = dbar.rank();
  std::vector<Vec> cycles;
  for (std::size_t t = 0; t < rk; ++t) {
    Vec c = zero_vec(pc.x.count(2));
    for (std::size_t j = 0; j < p.relators.size(); ++j)
      if (dbar.relator_combination(j, t) != 0 && !p.relators[j].empty())
        c += dbar.relator_combination(j, t) * pc.relator_cycle(j);
    cycles.push_back(c);
  }
  const Cohomology& h = *s.coh;
  IntMatrix eval(rk, s.h2_coords());
  for (std::size_t i = 0; i < s.h2_coords(); ++i) {
    Vec cocycle = h.z2.basis * h.h2.lift().column(i);
    for (std::size_t t = 0; t < rk; ++t) eval(t, i) = dot(cocycle, cycles[t]);
  }

  r.rbar2_equal = lattice_equal(g.r2bar, s.r2bar);
  r.qbar3_equal = lattice_equal(g.q3bar, s.q3bar);
  const bool cup_equal = eval * s.mu_bar == g.mu_bar;
  r.group = invariant_class(g);
  r.simplicial = map_h2(invariant_class(s), eval, g.h2);
  r.class_equal = cup_equal && r.rbar2_equal && r.qbar3_equal && r.simplicial.equals(r.group);
  if (!cup_equal) r.detail = "cup products disagree under evaluation on relator cycles";
  else if (!r.rbar2_equal) r.detail = "Rbar2 lattices differ";
  else if (!r.qbar3_equal) r.detail = "Qbar3 lattices differ";
  else if (!r.class_equal) r.detail = "classes differ modulo ambiguity";
  return r;
}

TransportCheck transport_check(const SimplicialMap& f) {
  f.validate();
  MasseyContext cx = build_context(*f.source);
  Cohomology hy0 = cohomology(*f.target);
  const IntMatrix pull1 = f.chain_map(1).transpose();
  const std::size_t n = cx.n;
  if (hy0.kappa.cols() != n) throw PreconditionError("transport_check: H^1 ranks differ");
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, cx.coh->h1_coords(pull1 * hy0.kappa.column(j)));
  MasseyContext cy = build_context(*f.target, hy0.kappa * unimodular_inverse(m));

  TransportCheck t;
  t.rbar2_equal = lattice_equal(cx.r2bar, cy.r2bar);
  t.qbar3_equal = lattice_equal(cx.q3bar, cy.q3bar);
  if (!t.rbar2_equal || !t.qbar3_equal) return t;

  const IntMatrix pull2 = f.chain_map(2).transpose();
  IntMatrix h2map(cx.h2_coords(), cy.h2_coords());
  for (std::size_t i = 0; i < cy.h2_coords(); ++i) {
    Vec cocycle = cy.coh->z2.basis * cy.h2.lift().column(i);
    h2map.set_column(i, cx.coh->h2_class(pull2 * cocycle));
  }
  InvariantClass ax = invariant_class(cx);
  InvariantClass ay = map_h2(invariant_class(cy), h2map, cx.h2);
  t.class_equal = ax.difference_in_ambiguity(ay.representative).has_value() &&
                  lattice_contains(ax.full_ambiguity(), ay.ambiguity);
  return t;
}

std::string to_string(Gamma4 g) {
  switch (g) {
    case Gamma4::yes: return "true";
    case Gamma4::no: return "false";
    default: return "not-applicable";
  }
}

namespace {

json witness_json(const Lattice& l, const Vec& v) {
  auto w = non_membership_witness(l, v);
  if (!w) return json{{"vector", vec_to_json(v)}};
  return json{{"vector", vec_to_json(v)}, {"functional", vec_to_json(w->functional)}, {"modulus", int_to_json(w->modulus)}};
}

// First generator of `a` outside `b`, with a witness.
std::optional<json> lattice_gap(const Lattice& a, const Lattice& b) {
  for (const Vec& g : a.basis().columns())
    if (!b.contains(g)) return witness_json(b, g);
  return std::nullopt;
}

}  // namespace

GroupComparison compare_contexts(const MasseyContext& a, const MasseyContext& b, const IntMatrix& f) {
  if (a.route != Route::group || b.route != Route::group) throw InputError("compare_contexts: group-route contexts expected");
  const std::size_t n = a.n;
  if (b.n != n || f.rows() != n || f.cols() != n) throw InputError("compare: map must be square of size rank H_1");
  Int det = determinant(f);
  if (det != 1 && det != -1) throw InputError("compare: map is not unimodular (det " + det.get_str() + ")");

  GroupComparison out;
  out.certificates = json::object();
  ExteriorStructure e = build_exterior_structure(n);
  const IntMatrix phi = f.transpose();
  const IntMatrix wedge_phi = e.eta2 * kronecker(phi, phi) * e.chi2;
  Lattice image = lattice_image(wedge_phi, b.r2bar);
  out.gamma3 = lattice_equal(image, a.r2bar);
  if (!out.gamma3) {
    json c = json::object();
    if (auto gap = lattice_gap(image, a.r2bar)) c["image_not_in_rbar2_a"] = *gap;
    if (auto gap = lattice_gap(a.r2bar, image)) c["rbar2_a_not_in_image"] = *gap;
    out.certificates["gamma3"] = c;
    out.gamma4 = Gamma4::no;
    out.certificates["gamma4"] = "no extension modulo gamma_3";
    return out;
  }
  out.certificates["gamma3"] = json{{"rbar2_a", lattice_to_json(a.r2bar)}};
  if (!a.lcs->p3_free || !b.lcs->p3_free || a.lcs->p3.num_coords() != b.lcs->p3.num_coords()) {
    out.gamma4 = Gamma4::not_applicable;
    out.certificates["gamma4"] = "P3 is not free";
    return out;
  }

  // H2 correspondence from (f (x) f) on Dbar(H2).
  const DeltaBarH2& da = a.lcs->dbar;
  const DeltaBarH2& db = b.lcs->dbar;
  const IntMatrix ff = kronecker(f, f);
  Lattice dbar_image = lattice_image(ff, da.lattice);
  if (!lattice_equal(dbar_image, db.lattice)) {
    json c = json::object();
    if (auto gap = lattice_gap(dbar_image, db.lattice)) c["image_not_in_dbar_b"] = *gap;
    if (auto gap = lattice_gap(db.lattice, dbar_image)) c["dbar_b_not_in_image"] = *gap;
    out.gamma4 = Gamma4::no;
    out.certificates["gamma4"] = json{{"h2_correspondence", c}};
    return out;
  }
  const std::size_t r = da.rank();
  IntMatrix g(r, r);
  Lattice based_b(db.basis);
  for (std::size_t s = 0; s < r; ++s) g.set_column(s, *solve_in_lattice(based_b, ff * da.basis.column(s)));

  const IntMatrix psi = kronecker(phi, wedge_phi);
  Lattice psi_qb(psi * b.q3bar_basis);
  const IntMatrix rep_b = lambda_barbar(b);
  IntMatrix transported(a.h2_coords(), a.q3bar_basis.cols());
  for (std::size_t s = 0; s < a.q3bar_basis.cols(); ++s) {
    auto c = solve_in_lattice(psi_qb, a.q3bar_basis.column(s));
    if (!c) throw InconsistencyError("compare: (Lambda^2 phi (x) phi) does not map Qbar3 onto Qbar3");
    transported.set_column(s, g.transpose() * (rep_b * *c));
  }
  InvariantClass ca = invariant_class(a);
  Vec diff = InvariantClass::flatten(ca.representative - transported);
  Lattice amb = ca.full_ambiguity();
  if (auto coeffs = solve_in_lattice(amb, diff)) {
    out.gamma4 = Gamma4::yes;
    out.certificates["gamma4"] = json{{"difference", vec_to_json(diff)}, {"ambiguity_coefficients", vec_to_json(*coeffs)}};
  } else {
    out.gamma4 = Gamma4::no;
    out.certificates["gamma4"] = json{{"difference_outside_ambiguity", witness_json(amb, diff)}};
  }
  return out;
}

GroupComparison compare_groups(const GroupPresentation& pa, const GroupPresentation& pb, const IntMatrix& f) {
  if (pa.n != pb.n) throw InputError("compare: presentations have different numbers of generators");
  return compare_contexts(build_context(pa), build_context(pb), f);
}

MasseyContext perturb_tau(const MasseyContext& ctx, const IntMatrix& perturbation) {
  if (ctx.route != Route::group) throw InputError("perturb_tau: group-route context expected");
  if (perturbation.rows() != ctx.tau_residues.rows() || perturbation.cols() != ctx.tau_residues.cols())
    throw InputError("perturb_tau: perturbation must be n^3 x rank H2");
  MasseyContext c = ctx;
  c.tau_residues = ctx.tau_residues + perturbation;
  return c;
}

}  // namespace trimassey
