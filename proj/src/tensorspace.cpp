#include "trimassey/tensorspace.hpp"

#include <algorithm>
#include <set>

#include "trimassey/error.hpp"

namespace trimassey {

BasedModule::BasedModule(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw InputError("basis labels must be distinct");
}

BasedModule BasedModule::standard(std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
  return BasedModule(std::move(labels));
}

std::size_t BasedModule::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown basis label: " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

TensorWordBasis::TensorWordBasis(std::size_t n, std::size_t degree) : n_(n), degree_(degree), size_(1) {
  for (std::size_t t = 0; t < degree; ++t) size_ *= n;
}

std::size_t TensorWordBasis::index(const std::vector<std::size_t>& word) const {
  if (word.size() != degree_) throw InputError("tensor word has wrong degree");
  std::size_t idx = 0;
  for (std::size_t w : word) {
    if (w >= n_) throw InputError("tensor word letter out of range");
    idx = idx * n_ + w;
  }
  return idx;
}

std::vector<std::size_t> TensorWordBasis::word(std::size_t index) const {
  std::vector<std::size_t> w(degree_);
  for (std::size_t t = degree_; t-- > 0;) {
    w[t] = index % n_;
    index /= n_;
  }
  return w;
}

std::size_t lambda2_rank(std::size_t n) { return n * (n - 1) / 2; }
std::size_t lambda3_rank(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
std::size_t sym3_rank(std::size_t n) { return n * (n + 1) * (n + 2) / 6; }

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) throw InputError("pair_index expects i < j < n");
  // Pairs starting before i: sum_{r<i} (n-1-r).
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::array<std::size_t, 2> pair_of(std::size_t n, std::size_t index) {
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t row = n - 1 - i;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  throw InputError("pair index out of range");
}

std::size_t triple_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  if (!(i < j && j < k && k < n)) throw InputError("triple_index expects i < j < k < n");
  std::size_t idx = 0;
  for (std::size_t a = 0; a < i; ++a) idx += lambda2_rank(n - 1 - a);
  return idx + pair_index(n - 1 - i, j - i - 1, k - i - 1);
}

std::size_t h_lambda2_index(std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
  if (a >= n) throw InputError("h_lambda2_index: letter out of range");
  return a * lambda2_rank(n) + pair_index(n, b, c);
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (b(r, c) != 0) k(i * b.rows() + r, j * b.cols() + c) = x * b(r, c);
    }
  return k;
}

namespace {

IntMatrix eta2_matrix(std::size_t n) {
  IntMatrix m(lambda2_rank(n), n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < j) m(pair_index(n, i, j), i * n + j) = 1;
      if (i > j) m(pair_index(n, j, i), i * n + j) = -1;
    }
  return m;
}

// Sign and sorted triple for xi_a ^ xi_b ^ xi_c with b<c; sign 0 on repeats.
int wedge_sort(std::size_t a, std::size_t b, std::size_t c, std::array<std::size_t, 3>& out) {
  if (a == b || a == c) return 0;
  if (a < b) {
    out = {a, b, c};
    return 1;
  }
  if (a < c) {
    out = {b, a, c};
    return -1;
  }
  out = {b, c, a};
  return 1;
}

}  // namespace

ExteriorStructure build_exterior_structure(std::size_t n) {
  if (n == 0) throw InputError("exterior structure needs n >= 1");
  ExteriorStructure e;
  e.n = n;
  const std::size_t l2 = lambda2_rank(n), l3 = lambda3_rank(n), n2 = n * n, n3 = n2 * n;
  e.eta2 = eta2_matrix(n);
  e.chi2 = IntMatrix(n2, l2);
  e.bracket = IntMatrix(n2, l2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t p = pair_index(n, i, j);
      e.chi2(i * n + j, p) = 1;
      e.bracket(i * n + j, p) = 1;
      e.bracket(j * n + i, p) = -1;
    }
  e.l = IntMatrix(l3, n * l2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        std::array<std::size_t, 3> s{};
        int sign = wedge_sort(a, b, c, s);
        if (sign != 0) e.l(triple_index(n, s[0], s[1], s[2]), h_lambda2_index(n, a, b, c)) = sign;
      }
  e.jay = IntMatrix(n3, l3);
  auto add_bracket_tensor = [&](std::size_t col, std::size_t x, std::size_t y, std::size_t z) {
    e.jay((x * n + y) * n + z, col) += 1;
    e.jay((y * n + x) * n + z, col) -= 1;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::size_t col = triple_index(n, i, j, k);
        add_bracket_tensor(col, i, j, k);
        add_bracket_tensor(col, j, k, i);
        add_bracket_tensor(col, k, i, j);
      }
  e.s123 = IntMatrix(n3, n3);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) e.s123((c * n + a) * n + b, (a * n + b) * n + c) = 1;
  return e;
}

IntMatrix id_tensor_eta2(std::size_t n) { return kronecker(IntMatrix::identity(n), eta2_matrix(n)); }

IntMatrix p_matrix(std::size_t n) {
  const std::size_t n3 = n * n * n;
  IntMatrix m(n3, n * lambda2_rank(n));
  auto w = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::size_t jik = h_lambda2_index(n, j, i, k), kij = h_lambda2_index(n, k, i, j);
        m(w(i, j, k), jik) += 1;
        m(w(j, i, k), jik) += 1;
        m(w(i, k, j), kij) += 1;
        m(w(k, i, j), kij) += 1;
      }
      m(w(i, i, j), h_lambda2_index(n, i, i, j)) += 1;
      m(w(j, j, i), h_lambda2_index(n, j, i, j)) -= 1;
    }
  return m;
}

IntMatrix q_matrix(std::size_t n) {
  IntMatrix m(n * n * n, n * lambda2_rank(n));
  auto w = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::size_t col = h_lambda2_index(n, i, j, k);
        m(w(i, j, k), col) += 1;
        m(w(j, i, k), col) += 1;
        m(w(j, k, i), col) += 1;
      }
  return m;
}

IntMatrix sym3_basis(std::size_t n) {
  IntMatrix m(n * n * n, sym3_rank(n));
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k, ++col) {
        std::array<std::size_t, 3> s{i, j, k};
        do {
          m((s[0] * n + s[1]) * n + s[2], col) = 1;
        } while (std::next_permutation(s.begin(), s.end()));
      }
  return m;
}

Vec p_map(std::size_t n, const Vec& t) {
  if (t.size() != n * lambda2_rank(n)) throw InputError("p_map: expected H (x) Lambda^2 coordinates");
  Vec lt = build_exterior_structure(n).l * t;
  if (!is_zero(lt)) throw PreconditionError("p_map: argument not in Ker l, l(t) = " + to_string(lt));
  return p_matrix(n) * t;
}

Vec q_map(std::size_t n, const Vec& t) {
  if (t.size() != n * lambda2_rank(n)) throw InputError("q_map: expected H (x) Lambda^2 coordinates");
  return q_matrix(n) * t;
}

bool is_symmetric_tensor(std::size_t n, const Vec& v) {
  if (v.size() != n * n * n) throw InputError("expected a degree-3 tensor");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        std::array<std::size_t, 3> s{a, b, c};
        std::sort(s.begin(), s.end());
        if (v[(a * n + b) * n + c] != v[(s[0] * n + s[1]) * n + s[2]]) return false;
      }
  return true;
}

Q3Decomposition decompose_q3(std::size_t n, const Vec& v, const Lattice* q3) {
  if (v.size() != n * n * n) throw InputError("decompose_q3: expected a degree-3 tensor");
  if (q3 && !q3->contains(v)) throw InconsistencyError("decompose_q3: vector " + to_string(v) + " not in Q3");
  ExteriorStructure e = build_exterior_structure(n);
  IntMatrix ide = id_tensor_eta2(n);
  Vec psi = ide * (v - e.s123 * v);
  if (!is_zero(e.l * psi)) throw InconsistencyError("decompose_q3: (id x eta2)(1-s)v not in Ker l");
  Q3Decomposition d;
  d.p_part = p_matrix(n) * psi;
  d.q_part = q_matrix(n) * (ide * (v - d.p_part));
  d.symmetric_part = v - d.p_part - d.q_part;
  if (!is_symmetric_tensor(n, d.symmetric_part))
    throw InconsistencyError("decompose_q3: " + to_string(v) + " is outside p(Ker l) + q(H x L2) + S3");
  return d;
}

}  // namespace trimassey
