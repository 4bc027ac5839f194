#ifndef TRIMASSEY_TENSORSPACE_HPP
#define TRIMASSEY_TENSORSPACE_HPP

// Tensor, exterior and symmetric powers of a free module with basis
// xi_0..xi_{n-1} (indices are 0-based throughout the library).
//
// Coordinate conventions:
//   T^d        words (w_1..w_d), index = sum w_t n^(d-t) (lexicographic)
//   Lambda^2   xi_i ^ xi_j, i<j, lexicographic
//   Lambda^3   xi_i ^ xi_j ^ xi_k, i<j<k, lexicographic
//   S^3        multisets i<=j<=k, lexicographic; basis vectors are orbit sums
//   H (x) L^2  xi_a (x) (xi_b ^ xi_c), index = a * C(n,2) + pair_index(b,c)

#include <array>
#include <string>
#include <vector>

#include "trimassey/zlinalg.hpp"

namespace trimassey {

class BasedModule {
 public:
  BasedModule() = default;
  explicit BasedModule(std::vector<std::string> labels);
  /// xi_1..xi_n style labels with the given prefix.
  static BasedModule standard(std::size_t n, const std::string& prefix);

  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
};

class TensorWordBasis {
 public:
  TensorWordBasis(std::size_t n, std::size_t degree);
  std::size_t n() const { return n_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return size_; }
  std::size_t index(const std::vector<std::size_t>& word) const;
  std::vector<std::size_t> word(std::size_t index) const;

 private:
  std::size_t n_, degree_, size_;
};

std::size_t lambda2_rank(std::size_t n);
std::size_t lambda3_rank(std::size_t n);
std::size_t sym3_rank(std::size_t n);
/// Index of xi_i ^ xi_j (i<j) in Lambda^2.
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);
std::array<std::size_t, 2> pair_of(std::size_t n, std::size_t index);
std::size_t triple_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k);
/// Index of xi_a (x) (xi_b ^ xi_c), b<c.
std::size_t h_lambda2_index(std::size_t n, std::size_t a, std::size_t b, std::size_t c);

/// Kronecker product: the matrix of A (x) B on lexicographic tensor bases.
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

struct ExteriorStructure {
  std::size_t n = 0;
  IntMatrix eta2;   // Lambda^2 x n^2, antisymmetrization
  IntMatrix chi2;   // n^2 x Lambda^2, xi_i^xi_j -> xi_i (x) xi_j
  IntMatrix l;      // Lambda^3 x (n * Lambda^2), wedge product
  IntMatrix jay;    // n^3 x Lambda^3, x^y^z -> [x,y]z + [y,z]x + [z,x]y
  IntMatrix s123;   // n^3 x n^3, a(x)b(x)c -> c(x)a(x)b
  IntMatrix bracket;  // n^2 x Lambda^2, xi_i^xi_j -> xi_i xi_j - xi_j xi_i
};

ExteriorStructure build_exterior_structure(std::size_t n);

/// id (x) eta2 : T^3 -> H (x) Lambda^2.
IntMatrix id_tensor_eta2(std::size_t n);
/// Matrices of p and q as maps H (x) Lambda^2 -> T^3. p is meaningful on Ker l only.
IntMatrix p_matrix(std::size_t n);
IntMatrix q_matrix(std::size_t n);
/// n^3 x sym3_rank, columns are orbit sums of the multisets.
IntMatrix sym3_basis(std::size_t n);

/// Throws PreconditionError when l(t) != 0.
Vec p_map(std::size_t n, const Vec& t);
Vec q_map(std::size_t n, const Vec& t);

struct Q3Decomposition {
  Vec p_part;
  Vec q_part;
  Vec symmetric_part;
};

/// Splits v into its p(Ker l), q(H (x) Lambda^2) and S^3 components. When
/// `q3` is given, v is first checked to lie in it.
Q3Decomposition decompose_q3(std::size_t n, const Vec& v, const Lattice* q3 = nullptr);

bool is_symmetric_tensor(std::size_t n, const Vec& v);

}  // namespace trimassey

#endif
