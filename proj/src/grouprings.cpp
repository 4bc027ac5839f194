#include "trimassey/grouprings.hpp"

#include <cstdlib>
#include <string>

#include "trimassey/error.hpp"
#include "trimassey/simplicial.hpp"
#include "trimassey/tensorspace.hpp"

namespace trimassey {

// ---------------------------------------------------------------- truncated series

TruncatedSeries::TruncatedSeries(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (n == 0) throw InputError("truncated series need at least one generator");
  std::size_t total = 0, block = 1;
  for (std::size_t d = 0; d <= k; ++d) {
    offsets_.push_back(total);
    total += block;
    block *= n;
  }
  coeffs_ = zero_vec(offsets_[k]);
}

std::size_t TruncatedSeries::dim(std::size_t n, std::size_t k) {
  std::size_t total = 0, block = 1;
  for (std::size_t d = 0; d < k; ++d, block *= n) total += block;
  return total;
}

std::size_t TruncatedSeries::offset(std::size_t degree) const { return offsets_.at(degree); }

TruncatedSeries TruncatedSeries::one(std::size_t n, std::size_t k) {
  TruncatedSeries s(n, k);
  if (k > 0) s.coeffs_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::letter(std::size_t n, std::size_t k, std::size_t i) {
  return word(n, k, {i});
}

TruncatedSeries TruncatedSeries::word(std::size_t n, std::size_t k, const std::vector<std::size_t>& letters) {
  TruncatedSeries s(n, k);
  if (letters.size() >= k) return s;
  std::size_t idx = 0;
  for (std::size_t l : letters) {
    if (l >= n) throw InputError("letter out of range");
    idx = idx * n + l;
  }
  s.coeffs_[s.offsets_[letters.size()] + idx] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::from_vec(std::size_t n, std::size_t k, Vec coeffs) {
  TruncatedSeries s(n, k);
  if (coeffs.size() != s.coeffs_.size()) throw InputError("truncated series: wrong coefficient count");
  s.coeffs_ = std::move(coeffs);
  return s;
}

const Int& TruncatedSeries::coefficient(const std::vector<std::size_t>& letters) const {
  static const Int zero = 0;
  if (letters.size() >= k_) return zero;
  std::size_t idx = 0;
  for (std::size_t l : letters) idx = idx * n_ + l;
  return coeffs_[offsets_[letters.size()] + idx];
}

Vec TruncatedSeries::degree_part(std::size_t d) const {
  if (d >= k_) {
    std::size_t size = 1;
    for (std::size_t t = 0; t < d; ++t) size *= n_;
    return zero_vec(size);
  }
  return Vec(coeffs_.begin() + static_cast<std::ptrdiff_t>(offsets_[d]),
             coeffs_.begin() + static_cast<std::ptrdiff_t>(offsets_[d + 1]));
}

std::size_t TruncatedSeries::valuation() const {
  for (std::size_t d = 0; d < k_; ++d)
    for (std::size_t i = offsets_[d]; i < offsets_[d + 1]; ++i)
      if (coeffs_[i] != 0) return d;
  return k_;
}

bool TruncatedSeries::is_zero() const { return trimassey::is_zero(coeffs_); }

TruncatedSeries TruncatedSeries::below(std::size_t d) const {
  TruncatedSeries s = *this;
  for (std::size_t i = offsets_[std::min(d, k_)]; i < s.coeffs_.size(); ++i) s.coeffs_[i] = 0;
  return s;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (n_ != o.n_ || k_ != o.k_) throw InputError("truncated series with different shapes");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries s = *this;
  s.coeffs_ += o.coeffs_;
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries s = *this;
  s.coeffs_ -= o.coeffs_;
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const Int& c) const {
  TruncatedSeries s = *this;
  for (auto& x : s.coeffs_) x *= c;
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries s(n_, k_);
  std::vector<std::size_t> pow(k_ + 1, 1);
  for (std::size_t d = 1; d <= k_; ++d) pow[d] = pow[d - 1] * n_;
  for (std::size_t da = 0; da < k_; ++da)
    for (std::size_t ia = 0; ia < pow[da]; ++ia) {
      const Int& a = coeffs_[offsets_[da] + ia];
      if (a == 0) continue;
      for (std::size_t db = 0; da + db < k_; ++db) {
        const std::size_t base = offsets_[da + db] + ia * pow[db];
        for (std::size_t ib = 0; ib < pow[db]; ++ib) {
          const Int& b = o.coeffs_[o.offsets_[db] + ib];
          if (b != 0) s.coeffs_[base + ib] += a * b;
        }
      }
    }
  return s;
}

// ---------------------------------------------------------------- Magnus expansion

namespace {

std::size_t letter_index(std::size_t n, int l) {
  if (l == 0 || static_cast<std::size_t>(std::abs(l)) > n)
    throw InputError("letter out of range: " + std::to_string(l));
  return static_cast<std::size_t>(std::abs(l)) - 1;
}

TruncatedSeries letter_series(std::size_t n, std::size_t k, int l) {
  std::size_t i = letter_index(n, l);
  TruncatedSeries s = TruncatedSeries::one(n, k);
  std::vector<std::size_t> power;
  for (std::size_t d = 1; d < k; ++d) {
    power.push_back(i);
    if (l > 0 && d > 1) break;
    s = s + TruncatedSeries::word(n, k, power) * Int(l > 0 || d % 2 == 0 ? 1 : -1);
  }
  return s;
}

}  // namespace

TruncatedSeries magnus_expand(std::size_t n, const Word& w, std::size_t k) {
  if (k < 1 || k > 5) throw InputError("magnus_expand supports 1 <= k <= 5");
  TruncatedSeries s = TruncatedSeries::one(n, k);
  for (int l : w) s = s * letter_series(n, k, l);
  return s;
}

Vec magnus_part(std::size_t n, const Word& w, std::size_t d) { return magnus_expand(n, w, d + 1).degree_part(d); }

// ---------------------------------------------------------------- D^(k)

Vec DkAlgebra::class_of(const TruncatedSeries& s) const {
  if (s.n() != n || s.k() != k) throw InputError("series does not match D^(k)");
  return presentation.coordinates(s.coeffs());
}

bool DkAlgebra::vanishes(const TruncatedSeries& s) const { return presentation.is_zero_coords(class_of(s)); }

DkAlgebra dk_from_ideal(std::size_t n, std::size_t k, std::vector<TruncatedSeries> ideal) {
  DkAlgebra a;
  a.n = n;
  a.k = k;
  const std::size_t dim = TruncatedSeries::dim(n, k);
  std::vector<Vec> cols;
  for (const auto& s : ideal) {
    if (s.n() != n || s.k() != k) throw InputError("ideal element does not match D^(k)");
    cols.push_back(s.coeffs());
  }
  a.ideal = std::move(ideal);
  a.ideal_lattice = Lattice(dim, cols);
  a.presentation = cokernel_presentation(dim, a.ideal_lattice);
  for (std::size_t i = 0; i < n; ++i)
    a.generator_images.push_back(
        a.class_of(TruncatedSeries::one(n, k) + TruncatedSeries::letter(n, k, i)));
  return a;
}

namespace {

void words_up_to(std::size_t n, std::size_t max_len, std::vector<std::vector<std::size_t>>& out) {
  out.push_back({});
  for (std::size_t start = 0; start < out.size(); ++start) {
    if (out[start].size() >= max_len) continue;
    for (std::size_t i = 0; i < n; ++i) {
      auto w = out[start];
      w.push_back(i);
      out.push_back(std::move(w));
    }
  }
}

std::vector<int> exponent_sums(std::size_t n, const Word& w) {
  std::vector<int> e(n, 0);
  for (int l : w) e[letter_index(n, l)] += l > 0 ? 1 : -1;
  return e;
}

bool in_commutator_subgroup(std::size_t n, const Word& w) {
  for (int x : exponent_sums(n, w))
    if (x != 0) return false;
  return true;
}

}  // namespace

DkAlgebra d_k(const GroupPresentation& p, std::size_t k) {
  if (k < 1 || k > 4) throw InputError("d_k supports 1 <= k <= 4");
  p.validate();
  const std::size_t n = p.n;
  std::vector<TruncatedSeries> ideal;
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    const Word& r = p.relators[j];
    if (k >= 3 && !in_commutator_subgroup(n, r))
      throw PreconditionError("relator " + std::to_string(j + 1) +
                              " has a nonzero exponent sum; D^(k) for k >= 3 needs every relator in [F,F]");
    TruncatedSeries z = magnus_expand(n, r, k) - TruncatedSeries::one(n, k);
    const std::size_t val = z.valuation();
    if (val >= k) continue;
    // Sandwiches u z v with |u| + |v| + val >= k truncate to zero.
    std::vector<std::vector<std::size_t>> words;
    words_up_to(n, k - 1 - val, words);
    for (const auto& u : words)
      for (const auto& v : words)
        if (u.size() + v.size() + val < k)
          ideal.push_back(TruncatedSeries::word(n, k, u) * z * TruncatedSeries::word(n, k, v));
  }
  return dk_from_ideal(n, k, std::move(ideal));
}

bool gamma_member(const DkAlgebra& dk, const Word& w) {
  return dk.vanishes(magnus_expand(dk.n, w, dk.k) - TruncatedSeries::one(dk.n, dk.k));
}

bool gamma_member(const GroupPresentation& p, const Word& w, std::size_t k) {
  if (k < 1 || k > 4) throw InputError("gamma_member is unsupported for k = " + std::to_string(k) + " (1 <= k <= 4)");
  p.validate();
  for (int l : w) letter_index(p.n, l);
  if (k >= 3) {
    DeltaBarH2 d = delta_bar_h2(p);
    if (!d.injective)
      throw PreconditionError("degree-2 relator map is not injective; gamma_k membership for k >= 3 is not certified");
  }
  return gamma_member(d_k(p, k), w);
}

// ---------------------------------------------------------------- Dbar(H2), P2, P3

DeltaBarH2 delta_bar_h2(const GroupPresentation& p) {
  p.validate();
  const std::size_t n = p.n;
  DeltaBarH2 d;
  d.n = n;
  std::vector<Vec> parts;
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    const Word& r = p.relators[j];
    if (!in_commutator_subgroup(n, r))
      throw PreconditionError("relator " + std::to_string(j + 1) + " is not in [F,F]");
    if (!r.empty()) ++d.nonempty_relators;
    Vec v = magnus_part(n, r, 2);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (v[a * n + b] != -v[b * n + a])
          throw InconsistencyError("degree-2 part of relator " + std::to_string(j + 1) + " is not antisymmetric");
    parts.push_back(std::move(v));
  }
  d.relator_parts = IntMatrix::from_columns(parts, n * n);
  d.lattice = Lattice(n * n, parts);
  d.basis = d.lattice.basis();
  d.alpha = IntMatrix(d.basis.cols(), lambda2_rank(n));
  for (std::size_t s = 0; s < d.basis.cols(); ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d.alpha(s, pair_index(n, i, j)) = d.basis(i * n + j, s);
  Lattice relator_span(d.relator_parts);
  d.relator_combination = IntMatrix(parts.size(), d.basis.cols());
  for (std::size_t s = 0; s < d.basis.cols(); ++s) {
    auto c = solve_in_lattice(relator_span, d.basis.column(s));
    if (!c) throw InconsistencyError("H2 basis element outside the relator span");
    d.relator_combination.set_column(s, *c);
  }
  d.injective = d.basis.cols() == d.nonempty_relators;
  return d;
}

std::optional<Vec> LcsData::p3_coordinates(const Vec& y) const {
  if (y.size() != n * n * n) throw InputError("p3_coordinates expects a degree-3 tensor");
  const std::size_t r = l3_basis.cols();
  IntMatrix gens = hstack(l3_basis, n3.basis());
  auto c = solve_in_lattice(Lattice(gens), y);
  if (!c) return std::nullopt;
  Vec head(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(r));
  return p3.normalize(p3.coordinates(head));
}

LcsData build_p2_p3(const GroupPresentation& p, bool require_injective) {
  LcsData lcs;
  const std::size_t n = p.n, n2 = n * n, n3 = n2 * n, l2 = lambda2_rank(n);
  lcs.n = n;
  lcs.dbar = delta_bar_h2(p);
  if (require_injective && !lcs.dbar.injective)
    throw PreconditionError("degree-2 relator map is not injective (rank " + std::to_string(lcs.dbar.rank()) +
                            " for " + std::to_string(lcs.dbar.nonempty_relators) + " relators)");
  const IntMatrix& db = lcs.dbar.basis;
  lcs.b2 = cokernel_presentation(n2, lcs.dbar.lattice);
  lcs.p2 = cokernel_presentation(l2, Lattice(lcs.dbar.alpha.transpose()));

  std::vector<Vec> n3_gens;
  for (std::size_t s = 0; s < db.cols(); ++s)
    for (std::size_t a = 0; a < n; ++a) {
      Vec left = zero_vec(n3), right = zero_vec(n3);
      for (std::size_t t = 0; t < n2; ++t) {
        left[t * n + a] = db(t, s);
        right[a * n2 + t] = db(t, s);
      }
      n3_gens.push_back(std::move(left));
      n3_gens.push_back(std::move(right));
    }
  lcs.n3 = Lattice(n3, n3_gens);

  lcs.bracket3 = IntMatrix(n3, l2 * n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = b + 1; c < n; ++c)
      for (std::size_t a = 0; a < n; ++a) {
        std::size_t col = pair_index(n, b, c) * n + a;
        auto w = [n](std::size_t x, std::size_t y, std::size_t z) { return (x * n + y) * n + z; };
        lcs.bracket3(w(b, c, a), col) += 1;
        lcs.bracket3(w(c, b, a), col) -= 1;
        lcs.bracket3(w(a, b, c), col) -= 1;
        lcs.bracket3(w(a, c, b), col) += 1;
      }
  Lattice l3(lcs.bracket3);
  lcs.l3_basis = l3.basis();
  // L3 ∩ N3 in l3_basis coordinates.
  Lattice meet = lattice_preimage(lcs.l3_basis, lcs.n3);
  lcs.p3 = cokernel_presentation(lcs.l3_basis.cols(), meet);
  lcs.p3_free = lcs.p3.is_free();

  // (P2 (x) H) / jay'(Lambda^3) with jay'(x^y^z) = (x^y)(x)z + (y^z)(x)x + (z^x)(x)y.
  std::vector<Vec> rel;
  for (std::size_t s = 0; s < lcs.dbar.alpha.rows(); ++s)
    for (std::size_t a = 0; a < n; ++a) {
      Vec v = zero_vec(l2 * n);
      for (std::size_t q = 0; q < l2; ++q) v[q * n + a] = lcs.dbar.alpha(s, q);
      rel.push_back(std::move(v));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec v = zero_vec(l2 * n);
        v[pair_index(n, i, j) * n + k] += 1;
        v[pair_index(n, j, k) * n + i] += 1;
        v[pair_index(n, i, k) * n + j] -= 1;
        rel.push_back(std::move(v));
      }
  IntMatrix to_l3(lcs.l3_basis.cols(), l2 * n);
  for (std::size_t col = 0; col < l2 * n; ++col) {
    auto b = solve_in_lattice(Lattice(lcs.l3_basis), lcs.bracket3.column(col));
    if (!b) throw InconsistencyError("bracket outside its own span");
    to_l3.set_column(col, *b);
  }
  lcs.p3_matches_bracket_quotient =
      check_induced_isomorphism(Lattice(l2 * n, rel), lcs.p3, lcs.p3.projection() * to_l3).is_iso();

  // T_3 ∩ ideal of D^(4): ideal elements vanishing below degree 3, read in degree 3.
  if (n <= 4) {
    DkAlgebra d4 = d_k(p, 4);
    const std::size_t low = TruncatedSeries::dim(n, 3);
    IntMatrix gens = d4.ideal_lattice.basis();
    std::vector<std::size_t> low_rows, high_rows;
    for (std::size_t i = 0; i < gens.rows(); ++i) (i < low ? low_rows : high_rows).push_back(i);
    KernelBasis kb = kernel_basis(gens.select_rows(low_rows));
    Lattice t3_meet(gens.select_rows(high_rows) * kb.basis);
    lcs.b3_matches_dk = lattice_equal(t3_meet, lcs.n3);
  }
  return lcs;
}

// ---------------------------------------------------------------- tau

Word tau_word(std::size_t n, const Vec& alpha_row) {
  if (alpha_row.size() != lambda2_rank(n)) throw InputError("tau_word expects one alpha per pair");
  Word w;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int& a = alpha_row[pair_index(n, i, j)];
      int gi = static_cast<int>(i) + 1, gj = static_cast<int>(j) + 1;
      Word c = a > 0 ? Word{gi, gj, -gi, -gj} : Word{gj, gi, -gj, -gi};
      for (Int t = abs(a); t > 0; --t) w.insert(w.end(), c.begin(), c.end());
    }
  return reduce(w);
}

TauBar tau_bar(const GroupPresentation& p, const LcsData& lcs) {
  const std::size_t n = lcs.n, k = 4, r = lcs.dbar.rank();
  DkAlgebra d4 = d_k(p, k);
  const std::size_t low = TruncatedSeries::dim(n, 3);
  IntMatrix gens = d4.ideal_lattice.basis();
  std::vector<std::size_t> low_rows;
  for (std::size_t i = 0; i < low; ++i) low_rows.push_back(i);
  Lattice low_ideal(gens.select_rows(low_rows));
  TauBar t;
  t.p3_coords = IntMatrix(lcs.p3.num_coords(), r);
  t.residues = IntMatrix(n * n * n, r);
  for (std::size_t s = 0; s < r; ++s) {
    TruncatedSeries z = magnus_expand(n, tau_word(n, lcs.dbar.alpha.row(s)), k) - TruncatedSeries::one(n, k);
    Vec zl(z.coeffs().begin(), z.coeffs().begin() + static_cast<std::ptrdiff_t>(low));
    auto c = solve_in_lattice(low_ideal, zl);
    if (!c) throw InconsistencyError("tau of H2 basis element " + std::to_string(s) + " is not in gamma_3");
    Vec rest = z.coeffs() - gens * *c;
    Vec y(rest.begin() + static_cast<std::ptrdiff_t>(low), rest.end());
    auto coords = lcs.p3_coordinates(y);
    if (!coords)
      throw InconsistencyError("degree-3 class of tau of H2 basis element " + std::to_string(s) +
                               " lies outside the embedded P3");
    t.p3_coords.set_column(s, *coords);
    t.residues.set_column(s, y);
  }
  return t;
}

EdgeMaps edge_maps(const GroupPresentation& p, const PresentationComplex& pc) {
  const std::size_t n = p.n;
  const SimplicialSet& x = pc.x;
  const std::size_t e1 = x.count(1);

  // Every edge carries a group word: g_i, g_i^-1, or a relator prefix.
  std::vector<Word> edge_word(e1);
  for (std::size_t i = 0; i < n; ++i) {
    edge_word[pc.generator_edges[i]] = {static_cast<int>(i) + 1};
    edge_word[pc.inverse_edges[i]] = {-static_cast<int>(i) - 1};
  }
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    const Word& rel = p.relators[j];
    for (std::size_t m = 2; m < rel.size(); ++m) {
      auto id = x.find(1, "r" + std::to_string(j + 1) + "p" + std::to_string(m));
      edge_word[*id] = Word(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(m));
    }
  }
  EdgeMaps out;
  out.pr = IntMatrix(n, e1);
  out.iota = IntMatrix(n * n, e1);
  for (std::size_t e = 0; e < e1; ++e) {
    out.pr.set_column(e, magnus_part(n, edge_word[e], 1));
    out.iota.set_column(e, Int(-1) * magnus_part(n, edge_word[e], 2));
  }
  return out;
}

IntMatrix tau_bar_split(const GroupPresentation& p, const LcsData& lcs) {
  const std::size_t n = lcs.n, n2 = n * n, r = lcs.dbar.rank();
  PresentationComplex pc = presentation_complex(p);
  const SimplicialSet& x = pc.x;
  EdgeMaps em = edge_maps(p, pc);
  const IntMatrix& pr = em.pr;
  const IntMatrix& iota = em.iota;
  ChainComplex cc = chain_complex(x);
  IntMatrix delta = aw_component(x, 1, 1);
  IntMatrix pr2 = kronecker(pr, pr);
  IntMatrix defect = iota * cc.boundary[2] - pr2 * delta;
  for (std::size_t t = 0; t < defect.cols(); ++t)
    if (!lcs.dbar.lattice.contains(defect.column(t)))
      throw InconsistencyError("iota does not intertwine the boundary with the diagonal on '" + x.name(2, t) + "'");

  IntMatrix left = kronecker(iota, pr), right = kronecker(pr, iota);
  IntMatrix out(n2 * n, r);
  for (std::size_t s = 0; s < r; ++s) {
    Vec c = zero_vec(x.count(2));
    for (std::size_t j = 0; j < p.relators.size(); ++j) {
      const Int& t = lcs.dbar.relator_combination(j, s);
      if (t != 0 && !p.relators[j].empty()) c += t * pc.relator_cycle(j);
    }
    Vec dc = delta * c;
    Vec tau2 = left * dc + right * dc;
    Vec tau1 = zero_vec(n2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Int& a = lcs.dbar.alpha(s, pair_index(n, i, j));
        if (a == 0) continue;
        for (std::size_t m : {i, j}) {
          tau1[(i * n + j) * n + m] -= a;
          tau1[(j * n + i) * n + m] += a;
        }
      }
    out.set_column(s, tau1 + tau2);
  }
  return out;
}

}  // namespace trimassey
