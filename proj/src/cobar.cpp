#include "trimassey/cobar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "trimassey/error.hpp"

namespace trimassey {

CobarWords::CobarWords(std::size_t letters, std::size_t k) : letters_(letters), k_(k) {
  std::size_t block = 1;
  for (std::size_t m = 0; m < k; ++m, block *= letters) offsets_.push_back(offsets_.back() + block);
}

std::size_t CobarWords::index(const std::vector<std::size_t>& w) const {
  if (w.size() >= k_) throw InputError("cobar word too long for the truncation");
  std::size_t idx = 0;
  for (std::size_t l : w) {
    if (l >= letters_) throw InputError("cobar letter out of range");
    idx = idx * letters_ + l;
  }
  return offsets_[w.size()] + idx;
}

std::vector<std::size_t> CobarWords::word(std::size_t index) const {
  std::size_t m = 0;
  while (index >= offsets_[m + 1]) ++m;
  std::size_t rel = index - offsets_[m];
  std::vector<std::size_t> w(m);
  for (std::size_t t = m; t-- > 0;) {
    w[t] = rel % letters_;
    rel /= letters_;
  }
  return w;
}

namespace {

void words_of_length(std::size_t letters, std::size_t len, std::vector<std::vector<std::size_t>>& out) {
  out.assign(1, {});
  for (std::size_t t = 0; t < len; ++t) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : out)
      for (std::size_t a = 0; a < letters; ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
}

std::vector<std::size_t> concat(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Terms of the boundary of [sigma] as (coefficient, word).
std::vector<std::pair<int, std::vector<std::size_t>>> boundary_terms(const SimplicialSet& x, std::size_t s) {
  std::vector<std::pair<int, std::vector<std::size_t>>> t;
  // -[d sigma] with d sigma = d0 - d1 + d2.
  const int sign[3] = {-1, 1, -1};
  for (int i = 0; i < 3; ++i) {
    const SimplexRef& f = x.stored_face(2, s, i);
    if (!f.degenerate()) t.push_back({sign[i], {f.base}});
  }
  // Reduced diagonal a (x) b = d2 sigma (x) d0 sigma, sign -1 from the front factor's degree.
  const SimplexRef& a = x.stored_face(2, s, 2);
  const SimplexRef& b = x.stored_face(2, s, 0);
  if (!a.degenerate() && !b.degenerate()) t.push_back({-1, {a.base, b.base}});
  return t;
}

}  // namespace

CobarTruncation truncated_cobar(const SimplicialSet& x, std::size_t k) {
  if (k < 2 || k > 4) throw InputError("truncated_cobar supports 2 <= k <= 4");
  CobarTruncation c;
  c.k = k;
  const std::size_t e = x.count(1), t = x.count(2);
  c.degree0 = CobarWords(e, k);
  for (std::size_t s = 0; s < t; ++s) {
    SparseVec g;
    for (auto& [coef, w] : boundary_terms(x, s))
      if (w.size() < k) g.emplace_back(c.degree0.index(w), coef);
    c.generator_boundary.push_back(std::move(g));
  }
  std::vector<std::vector<std::size_t>> lefts, rights;
  for (std::size_t total = 0; total + 1 < k; ++total)
    for (std::size_t l = 0; l <= total; ++l) {
      words_of_length(e, l, lefts);
      words_of_length(e, total - l, rights);
      for (std::size_t s = 0; s < t; ++s) {
        auto terms = boundary_terms(x, s);
        for (const auto& u : lefts)
          for (const auto& v : rights) {
            SparseVec col;
            for (auto& [coef, w] : terms) {
              std::vector<std::size_t> full = concat(concat(u, w), v);
              if (full.size() < k) col.emplace_back(c.degree0.index(full), coef);
            }
            c.degree1.push_back({u, s, v});
            c.differential.push_back(std::move(col));
          }
      }
    }
  return c;
}

SparseVec AkAlgebra::product(const SparseVec& a, const SparseVec& b) const {
  std::map<std::size_t, Int> acc;
  for (auto& [i, x] : a) {
    auto wi = words.word(i);
    for (auto& [j, y] : b) {
      auto wj = words.word(j);
      if (wi.size() + wj.size() >= k) continue;
      acc[words.index(concat(wi, wj))] += x * y;
    }
  }
  SparseVec out;
  for (auto& [i, x] : acc)
    if (x != 0) out.emplace_back(i, x);
  return out;
}

Vec AkAlgebra::multiply(const Vec& a, const Vec& b) const {
  return class_of(product(module.lift(a), module.lift(b)));
}

IntMatrix AkAlgebra::multiplication_table() const {
  const std::size_t m = presentation().num_coords();
  std::vector<SparseVec> lifts;
  for (std::size_t i = 0; i < m; ++i) {
    Vec e = zero_vec(m);
    e[i] = 1;
    lifts.push_back(module.lift(e));
  }
  IntMatrix table(m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table.set_column(i * m + j, class_of(product(lifts[i], lifts[j])));
  return table;
}

AkAlgebra a_k(const SimplicialSet& x, std::size_t k) {
  if (k < 1 || k > 4) throw InputError("a_k supports 1 <= k <= 4");
  AkAlgebra a;
  a.k = k;
  const std::size_t e = x.count(1);
  for (std::size_t i = 0; i < e; ++i) a.letter_names.push_back(x.name(1, i));
  a.words = CobarWords(e, k);
  std::vector<SparseVec> relations;
  if (k >= 2) relations = truncated_cobar(x, k).differential;
  a.module = QuotientModule(a.words.size(), std::move(relations));
  a.unit = a.class_of({{0, Int(1)}});
  for (std::size_t i = 0; i < e; ++i) {
    SparseVec g{{0, Int(1)}};
    if (k >= 2) g.emplace_back(a.words.index({i}), Int(1));
    a.generator_images.push_back(a.class_of(g));
  }
  return a;
}

namespace {

std::string describe_series(const Vec& v, std::size_t n, std::size_t k) {
  TruncatedSeries s = TruncatedSeries::from_vec(n, k, v);
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = 0; d < k; ++d) {
    Vec part = s.degree_part(d);
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (part[i] == 0) continue;
      std::vector<std::size_t> w(d);
      std::size_t r = i;
      for (std::size_t t = d; t-- > 0;) {
        w[t] = r % n;
        r /= n;
      }
      os << (part[i] < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      Int c = abs(part[i]);
      if (c != 1 || d == 0) os << c.get_str();
      for (std::size_t l : w) os << "x" << l + 1;
      first = false;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace

AlgebraIsoResult algebra_iso_check(const AkAlgebra& a, const DkAlgebra& d,
                                   const std::vector<std::size_t>& edge_of_generator) {
  if (a.k != d.k) throw InputError("algebra_iso_check: different truncation levels");
  if (edge_of_generator.size() != d.n) throw InputError("algebra_iso_check: correspondence must cover all generators");
  const std::size_t dim = TruncatedSeries::dim(d.n, d.k);
  IntMatrix m(a.presentation().num_coords(), dim);
  CobarWords dw(d.n, d.k);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<std::size_t> w = dw.word(col);
    for (auto& l : w) l = edge_of_generator.at(l);
    m.set_column(col, a.class_of({{a.words.index(w), Int(1)}}));
  }
  AlgebraIsoResult r;
  r.detail = check_induced_isomorphism(d.ideal_lattice, a.presentation(), m);
  r.iso = r.detail.is_iso();
  if (!r.iso) {
    std::string what = !r.detail.well_defined ? "ideal element not killed: "
                       : !r.detail.injective  ? "nonzero element of D mapping to zero: "
                                              : "map not surjective";
    r.witness = what + (r.detail.witness ? describe_series(*r.detail.witness, d.n, d.k) : "");
  }
  return r;
}

AlgebraIsoResult algebra_iso_check(const AkAlgebra& a, const DkAlgebra& d, const PresentationComplex& pc) {
  return algebra_iso_check(a, d, pc.generator_edges);
}

IntMatrix induced_cobar_map(const AkAlgebra& a, const AkAlgebra& b,
                            const std::vector<std::optional<std::size_t>>& letter_map) {
  if (a.k != b.k) throw InputError("induced_cobar_map: different truncation levels");
  const std::size_t m = a.presentation().num_coords();
  IntMatrix out(b.presentation().num_coords(), m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec e = zero_vec(m);
    e[i] = 1;
    std::map<std::size_t, Int> acc;
    for (auto& [idx, x] : a.module.lift(e)) {
      std::vector<std::size_t> w = a.words.word(idx);
      bool dead = false;
      for (auto& l : w) {
        if (!letter_map.at(l)) {
          dead = true;
          break;
        }
        l = *letter_map[l];
      }
      if (!dead) acc[b.words.index(w)] += x;
    }
    SparseVec img(acc.begin(), acc.end());
    out.set_column(i, b.class_of(img));
  }
  return out;
}

IsoCheck cobar_map_check(const AkAlgebra& a, const AkAlgebra& b, const SimplicialMap& f) {
  f.validate();
  std::vector<std::optional<std::size_t>> letters;
  for (const SimplexRef& s : f.images[1]) letters.push_back(s.degenerate() ? std::nullopt : std::optional(s.base));
  return check_induced_isomorphism(a.presentation().relation_lattice(), b.presentation(),
                                   induced_cobar_map(a, b, letters));
}

}  // namespace trimassey
