#include "trimassey/zlinalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "trimassey/error.hpp"

namespace trimassey {

// ---------------------------------------------------------------- vectors

Vec zero_vec(std::size_t n) { return Vec(n, Int(0)); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

static void require_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InputError("vector dimension mismatch");
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  r += b;
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  r -= b;
  return r;
}

Vec operator*(const Int& s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Int dot(const Vec& a, const Vec& b) {
  require_same_size(a, b);
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec vec_of(std::initializer_list<long> xs) {
  Vec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- matrices

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("ragged matrix literal");
    std::size_t j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_row_vectors(const std::vector<Vec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Vec IntMatrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec IntMatrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw InputError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<Vec> IntMatrix::columns() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Int& s = (*this)(src, j);
    if (s != 0) (*this)(dst, j) += f * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Int& s = (*this)(i, src);
    if (s != 0) (*this)(i, dst) += f * s;
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Int& y = b(k, j);
        if (y != 0) c(i, j) += x * y;
      }
    }
  return c;
}

Vec operator*(const IntMatrix& a, const Vec& v) {
  if (a.cols_ != v.size()) throw InputError("matrix-vector dimension mismatch");
  Vec r(a.rows_, Int(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Int& x = a(i, j);
      if (x != 0 && v[j] != 0) r[i] += x * v[j];
    }
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InputError("vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of non-square matrix");
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  std::size_t n = m.rows();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
  }
  return os << ']';
}

// ---------------------------------------------------------------- Smith form

namespace {

// Row/column operations applied to A while keeping U, Uinv, V, Vinv in sync.
struct SmithWork {
  IntMatrix A, U, Uinv, V, Vinv;

  explicit SmithWork(const IntMatrix& a)
      : A(a),
        U(IntMatrix::identity(a.rows())),
        Uinv(IntMatrix::identity(a.rows())),
        V(IntMatrix::identity(a.cols())),
        Vinv(IntMatrix::identity(a.cols())) {}

  void row_add(std::size_t dst, std::size_t src, const Int& f) {
    A.add_row_multiple(dst, src, f);
    U.add_row_multiple(dst, src, f);
    Uinv.add_col_multiple(src, dst, -f);
  }
  void col_add(std::size_t dst, std::size_t src, const Int& f) {
    A.add_col_multiple(dst, src, f);
    V.add_col_multiple(dst, src, f);
    Vinv.add_row_multiple(src, dst, -f);
  }
  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
    Vinv.swap_rows(a, b);
  }
  void row_negate(std::size_t i) {
    A.negate_row(i);
    U.negate_row(i);
    Uinv.negate_col(i);
  }
};

}  // namespace

Vec SmithForm::invariant_factors() const {
  Vec d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(S(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithWork w(a);
  IntMatrix& A = w.A;
  const std::size_t r = A.rows(), c = A.cols();
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // Minimal |entry| pivot in the trailing block.
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (A(i, j) != 0 && (pi == r || abs(A(i, j)) < abs(A(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (A(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        w.row_add(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (A(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        w.col_add(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Remainders are strictly smaller than the pivot: move the smallest in.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < c; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) {
            bi = t;
            bj = j;
          }
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row and repeat.
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            w.row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) < 0) w.row_negate(t);
  }
  SmithForm out;
  out.rank = t;
  out.S = std::move(w.A);
  out.U = std::move(w.U);
  out.Uinv = std::move(w.Uinv);
  out.V = std::move(w.V);
  out.Vinv = std::move(w.Vinv);
  return out;
}

// ---------------------------------------------------------------- Hermite basis

IntMatrix hermite_basis(const IntMatrix& gens) {
  const std::size_t n = gens.rows();
  std::map<std::size_t, Vec> by_pivot;
  auto first_nonzero = [n](const Vec& v) {
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] != 0) return i;
    return n;
  };
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    Vec v = gens.column(j);
    for (;;) {
      std::size_t p = first_nonzero(v);
      if (p == n) break;
      auto it = by_pivot.find(p);
      if (it == by_pivot.end()) {
        if (v[p] < 0)
          for (auto& x : v) x = -x;
        by_pivot.emplace(p, std::move(v));
        break;
      }
      Vec& b = it->second;
      if (mpz_divisible_p(v[p].get_mpz_t(), b[p].get_mpz_t())) {
        Int q = v[p] / b[p];
        for (std::size_t i = p; i < n; ++i)
          if (b[i] != 0) v[i] -= q * b[i];
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[p].get_mpz_t(), v[p].get_mpz_t());
      Int bp = b[p] / g, vp = v[p] / g;
      Vec nb(n), nv(n);
      for (std::size_t i = 0; i < n; ++i) {
        nb[i] = s * b[i] + t * v[i];
        nv[i] = bp * v[i] - vp * b[i];
      }
      if (nb[p] < 0)
        for (auto& x : nb) x = -x;
      b = std::move(nb);
      v = std::move(nv);
    }
  }
  std::vector<Vec> cols;
  std::vector<std::size_t> pivots;
  for (auto& [p, v] : by_pivot) {
    pivots.push_back(p);
    cols.push_back(std::move(v));
  }
  for (std::size_t jp = 0; jp < cols.size(); ++jp) {
    const std::size_t p = pivots[jp];
    for (std::size_t j = 0; j < jp; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), cols[j][p].get_mpz_t(), cols[jp][p].get_mpz_t());
      if (q != 0)
        for (std::size_t i = p; i < n; ++i)
          if (cols[jp][i] != 0) cols[j][i] -= q * cols[jp][i];
    }
  }
  return IntMatrix::from_columns(cols, n);
}

// ---------------------------------------------------------------- lattices

Lattice::Lattice(std::size_t ambient_rank) : ambient_(ambient_rank), gens_(ambient_rank, 0) {}

Lattice::Lattice(IntMatrix generators) : ambient_(generators.rows()), gens_(std::move(generators)) {}

Lattice::Lattice(std::size_t ambient_rank, const std::vector<Vec>& generators)
    : ambient_(ambient_rank), gens_(IntMatrix::from_columns(generators, ambient_rank)) {}

Lattice Lattice::full(std::size_t ambient_rank) { return Lattice(IntMatrix::identity(ambient_rank)); }

const IntMatrix& Lattice::basis() const {
  std::call_once(cache_->once, [this] { cache_->basis = hermite_basis(gens_); });
  return cache_->basis;
}

bool Lattice::contains(const Vec& v) const {
  if (v.size() != ambient_) throw InputError("lattice membership: dimension mismatch");
  const IntMatrix& b = basis();
  Vec w = v;
  std::size_t row = 0;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    while (row < ambient_ && b(row, j) == 0) {
      if (w[row] != 0) return false;
      ++row;
    }
    if (!mpz_divisible_p(w[row].get_mpz_t(), b(row, j).get_mpz_t())) return false;
    Int q = w[row] / b(row, j);
    for (std::size_t i = row; i < ambient_; ++i)
      if (b(i, j) != 0) w[i] -= q * b(i, j);
    ++row;
  }
  return is_zero(w);
}

bool Lattice::is_full() const {
  const IntMatrix& b = basis();
  if (b.cols() != ambient_) return false;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (b(i, i) != 1) return false;
  return true;
}

std::optional<Vec> solve_in_lattice(const Lattice& l, const Vec& v) {
  if (v.size() != l.ambient_rank()) throw InputError("solve_in_lattice: dimension mismatch");
  const IntMatrix& g = l.generators();
  if (g.cols() == 0) {
    if (is_zero(v)) return Vec{};
    return std::nullopt;
  }
  SmithForm snf = smith_normal_form(g);
  Vec w = snf.U * v;
  Vec y = zero_vec(g.cols());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < snf.rank) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = w[i] / snf.S(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

std::optional<NonMembershipWitness> non_membership_witness(const Lattice& l, const Vec& v) {
  if (v.size() != l.ambient_rank()) throw InputError("non_membership_witness: dimension mismatch");
  IntMatrix b = l.basis();
  if (b.cols() == 0) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        Vec f = zero_vec(v.size());
        f[i] = 1;
        return NonMembershipWitness{f, 0};
      }
    return std::nullopt;
  }
  SmithForm snf = smith_normal_form(b);
  Vec w = snf.U * v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < snf.rank) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), snf.S(i, i).get_mpz_t()))
        return NonMembershipWitness{snf.U.row(i), snf.S(i, i)};
    } else if (w[i] != 0) {
      return NonMembershipWitness{snf.U.row(i), 0};
    }
  }
  return std::nullopt;
}

bool lattice_contains(const Lattice& big, const Lattice& small) {
  if (big.ambient_rank() != small.ambient_rank()) throw InputError("lattice ambient rank mismatch");
  const IntMatrix& b = small.basis();
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!big.contains(b.column(j))) return false;
  return true;
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw InputError("lattice ambient rank mismatch");
  // Hermite bases are canonical.
  return a.basis() == b.basis();
}

KernelBasis kernel_basis(const IntMatrix& a) {
  const std::size_t c = a.cols();
  if (a.rows() == 0) return {IntMatrix::identity(c), IntMatrix::identity(c)};
  SmithForm snf = smith_normal_form(a);
  std::vector<std::size_t> idx;
  for (std::size_t j = snf.rank; j < c; ++j) idx.push_back(j);
  return {snf.V.select_columns(idx), snf.Vinv.select_rows(idx)};
}

Lattice kernel_lattice(const IntMatrix& a) { return Lattice(kernel_basis(a).basis); }

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw InputError("lattice ambient rank mismatch");
  return Lattice(hstack(a.basis(), b.basis()));
}

static IntMatrix negated(const IntMatrix& m) {
  IntMatrix r = m;
  for (std::size_t j = 0; j < r.cols(); ++j) r.negate_col(j);
  return r;
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw InputError("lattice ambient rank mismatch");
  const IntMatrix& ba = a.basis();
  const IntMatrix& bb = b.basis();
  if (ba.cols() == 0 || bb.cols() == 0) return Lattice(a.ambient_rank());
  IntMatrix k = kernel_basis(hstack(ba, negated(bb))).basis;
  std::vector<std::size_t> top(ba.cols());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  return Lattice(ba * k.select_rows(top));
}

Lattice lattice_preimage(const IntMatrix& a, const Lattice& l) {
  if (a.rows() != l.ambient_rank()) throw InputError("lattice_preimage: dimension mismatch");
  const IntMatrix& bl = l.basis();
  IntMatrix k = kernel_basis(hstack(a, negated(bl))).basis;
  std::vector<std::size_t> top(a.cols());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  return Lattice(k.select_rows(top));
}

Lattice lattice_image(const IntMatrix& a, const Lattice& l) {
  if (a.cols() != l.ambient_rank()) throw InputError("lattice_image: dimension mismatch");
  return Lattice(a * l.basis());
}

// ---------------------------------------------------------------- presentations

AbelianPresentation::AbelianPresentation(std::size_t ambient, std::vector<Int> torsion, std::size_t free_rank,
                                         IntMatrix projection, IntMatrix lift)
    : ambient_(ambient),
      torsion_(std::move(torsion)),
      free_rank_(free_rank),
      projection_(std::move(projection)),
      lift_(std::move(lift)) {}

Vec AbelianPresentation::normalize(Vec coords) const {
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    mpz_fdiv_r(coords[i].get_mpz_t(), coords[i].get_mpz_t(), torsion_[i].get_mpz_t());
  return coords;
}

Vec AbelianPresentation::coordinates(const Vec& v) const {
  if (v.size() != ambient_) throw InputError("presentation coordinates: dimension mismatch");
  return normalize(projection_ * v);
}

bool AbelianPresentation::is_zero_coords(const Vec& coords) const { return trimassey::is_zero(normalize(coords)); }

Lattice AbelianPresentation::relation_lattice() const {
  IntMatrix g(num_coords(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) g(i, i) = torsion_[i];
  return Lattice(std::move(g));
}

std::string AbelianPresentation::describe() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianPresentation cokernel_presentation(std::size_t ambient_rank, const Lattice& l) {
  if (l.ambient_rank() != ambient_rank) throw InputError("cokernel_presentation: ambient rank mismatch");
  const IntMatrix& b = l.basis();
  SmithForm snf = smith_normal_form(b);
  std::vector<Int> torsion;
  std::vector<std::size_t> tors_idx, free_idx;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    if (i < snf.rank) {
      if (snf.S(i, i) != 1) {
        torsion.push_back(snf.S(i, i));
        tors_idx.push_back(i);
      }
    } else {
      free_idx.push_back(i);
    }
  }
  std::vector<std::size_t> idx = tors_idx;
  idx.insert(idx.end(), free_idx.begin(), free_idx.end());
  return AbelianPresentation(ambient_rank, std::move(torsion), free_idx.size(), snf.U.select_rows(idx),
                             snf.Uinv.select_columns(idx));
}

IsoCheck check_induced_isomorphism(const Lattice& source_relations, const AbelianPresentation& target,
                                   const IntMatrix& m) {
  if (m.cols() != source_relations.ambient_rank() || m.rows() != target.num_coords())
    throw InputError("check_induced_isomorphism: dimension mismatch");
  IsoCheck out;
  const Lattice rel = target.relation_lattice();
  const IntMatrix& gens = source_relations.basis();
  out.well_defined = true;
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    Vec g = gens.column(j);
    if (!rel.contains(m * g)) {
      out.well_defined = false;
      out.witness = g;
      return out;
    }
  }
  out.surjective = lattice_sum(Lattice(m), rel).is_full();
  Lattice kernel = lattice_preimage(m, rel);
  out.injective = true;
  const IntMatrix& kb = kernel.basis();
  for (std::size_t j = 0; j < kb.cols(); ++j) {
    Vec k = kb.column(j);
    if (!source_relations.contains(k)) {
      out.injective = false;
      if (!out.witness) out.witness = k;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- sparse quotient

namespace {

using Col = SparseVec;

void normalize_sparse(Col& c) {
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Col out;
  for (auto& [i, x] : c) {
    if (!out.empty() && out.back().first == i)
      out.back().second += x;
    else
      out.emplace_back(i, x);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }), out.end());
  c = std::move(out);
}

// dst - f * src, both sorted.
Col axpy(const Col& dst, const Int& f, const Col& src) {
  Col out;
  out.reserve(dst.size() + src.size());
  std::size_t a = 0, b = 0;
  while (a < dst.size() || b < src.size()) {
    if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
      out.push_back(dst[a++]);
    } else if (a == dst.size() || src[b].first < dst[a].first) {
      out.emplace_back(src[b].first, -f * src[b].second);
      ++b;
    } else {
      Int v = dst[a].second - f * src[b].second;
      if (v != 0) out.emplace_back(dst[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

const Int* find_entry(const Col& c, std::size_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
  if (it == c.end() || it->first != row) return nullptr;
  return &it->second;
}

}  // namespace

QuotientModule::QuotientModule(std::size_t ambient, std::vector<SparseVec> relations) : ambient_(ambient) {
  const std::size_t ncols = relations.size();
  std::vector<Col>& cols = relations;
  std::vector<std::unordered_set<std::size_t>> rows(ambient);
  std::vector<std::size_t> version(ncols, 0);
  std::vector<bool> dead(ncols, false);
  for (std::size_t j = 0; j < ncols; ++j) {
    normalize_sparse(cols[j]);
    for (auto& [i, x] : cols[j]) {
      if (i >= ambient) throw InputError("QuotientModule: relation index out of range");
      rows[i].insert(j);
    }
  }
  using Entry = std::tuple<std::size_t, std::size_t, std::size_t>;  // size, col, version
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t j = 0; j < ncols; ++j)
    if (!cols[j].empty()) heap.emplace(cols[j].size(), j, 0);

  std::vector<bool> eliminated(ambient, false);
  while (!heap.empty()) {
    auto [sz, j, ver] = heap.top();
    heap.pop();
    if (dead[j] || ver != version[j] || cols[j].empty()) continue;
    std::size_t best = ambient;
    for (auto& [i, x] : cols[j])
      if ((x == 1 || x == -1) && (best == ambient || rows[i].size() < rows[best].size())) best = i;
    if (best == ambient) continue;  // no unit entry; revisited if the column changes
    const Col pivot_col = cols[j];
    const Int p = *find_entry(pivot_col, best);
    std::vector<std::size_t> touched(rows[best].begin(), rows[best].end());
    for (std::size_t j2 : touched) {
      if (j2 == j) continue;
      const Int* e = find_entry(cols[j2], best);
      Int f = (*e) * p;
      Col updated = axpy(cols[j2], f, pivot_col);
      for (auto& [i, x] : cols[j2]) rows[i].erase(j2);
      cols[j2] = std::move(updated);
      for (auto& [i, x] : cols[j2]) rows[i].insert(j2);
      ++version[j2];
      if (!cols[j2].empty()) heap.emplace(cols[j2].size(), j2, version[j2]);
    }
    for (auto& [i, x] : pivot_col) rows[i].erase(j);
    dead[j] = true;
    cols[j].clear();
    eliminated[best] = true;
    pivots_.push_back(Pivot{best, p, pivot_col});
  }

  remaining_index_.assign(ambient, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < ambient; ++i)
    if (!eliminated[i]) {
      remaining_index_[i] = remaining_rows_.size();
      remaining_rows_.push_back(i);
    }
  std::vector<Vec> dense;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (dead[j] || cols[j].empty()) continue;
    Vec v = zero_vec(remaining_rows_.size());
    for (auto& [i, x] : cols[j]) v[remaining_index_[i]] = x;
    dense.push_back(std::move(v));
  }
  pres_ = cokernel_presentation(remaining_rows_.size(), Lattice(remaining_rows_.size(), dense));
}

Vec QuotientModule::reduce_to_remaining(std::vector<Int>& v) const {
  for (const Pivot& pv : pivots_) {
    if (v[pv.row] == 0) continue;
    Int f = v[pv.row] * pv.coeff;
    for (auto& [i, x] : pv.column) v[i] -= f * x;
  }
  Vec out(remaining_rows_.size());
  for (std::size_t k = 0; k < remaining_rows_.size(); ++k) out[k] = v[remaining_rows_[k]];
  return out;
}

Vec QuotientModule::coordinates(const SparseVec& s) const {
  std::vector<Int> v(ambient_, Int(0));
  for (auto& [i, x] : s) {
    if (i >= ambient_) throw InputError("QuotientModule: index out of range");
    v[i] += x;
  }
  return pres_.coordinates(reduce_to_remaining(v));
}

Vec QuotientModule::coordinates(const Vec& dense) const {
  if (dense.size() != ambient_) throw InputError("QuotientModule: dimension mismatch");
  std::vector<Int> v = dense;
  return pres_.coordinates(reduce_to_remaining(v));
}

SparseVec QuotientModule::lift(const Vec& coords) const {
  Vec r = pres_.lift() * coords;
  SparseVec out;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (r[k] != 0) out.emplace_back(remaining_rows_[k], r[k]);
  return out;
}

}  // namespace trimassey
