#ifndef TRIMASSEY_MASSEY_HPP
#define TRIMASSEY_MASSEY_HPP

// Cup-product kernels R2, Rbar2, Q3, Qbar3, the cochain maps nu and lambda,
// triple Massey products and the invariant class [lambda], computed either
// from a simplicial set or from a presentation through tau-bar.

#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "trimassey/grouprings.hpp"
#include "trimassey/simplicial.hpp"
#include "trimassey/zlinalg.hpp"

namespace trimassey {

/// (v - v^2) / 2 componentwise.
Vec zeta(const Vec& omega);

enum class Route { simplicial, group };

struct MasseyContext {
  Route route = Route::simplicial;
  std::size_t n = 0;  // rank H^1

  // Simplicial route: the complex, kappa (C^1 x n) and cohomology.
  std::shared_ptr<const SimplicialSet> x;
  std::shared_ptr<const Cohomology> coh;

  // Group route: the presentation data and tau-bar residues (n^3 x rank H2).
  std::shared_ptr<const GroupPresentation> presentation;
  std::shared_ptr<const LcsData> lcs;
  IntMatrix tau_residues;

  /// H^2 in coordinates (torsion first); Hom(H2, Z) with the Dbar basis on the group route.
  AbelianPresentation h2;
  IntMatrix mu_bar;     // H^2 coords x n^2
  IntMatrix mu_barbar;  // H^2 coords x Lambda^2
  Lattice r2{0}, r2bar{0}, q3{0}, q3bar{0};
  IntMatrix r2bar_basis, q3bar_basis;
  /// Simplicial route: rows of the cup product C^1 (x) C^1 -> C^2 (entries indexed i * C^1 + j),
  /// and mu o (kappa (x) kappa) as a C^2 x n^2 matrix.
  std::vector<SparseVec> cup_rows;
  IntMatrix mu_cochain;
  /// f cup g for 1-cochains (simplicial route).
  Vec cup11(const Vec& f, const Vec& g) const;
  /// Simplicial route: nu on chi2 of the Rbar2 basis (C^1 x rank Rbar2).
  IntMatrix nu_chi;

  std::size_t h2_coords() const { return h2.num_coords(); }
  /// Coordinates of an element of Rbar2 in r2bar_basis.
  Vec r2bar_coords(const Vec& r) const;
  /// nu on an element of R2 (simplicial route).
  Vec nu(const Vec& r) const;
  /// Copy with nu shifted by rho : Rbar2 -> Z^1 on the chi2 part (columns must be cocycles).
  MasseyContext shifted(const IntMatrix& rho) const;
};

/// `h1_basis` as in cohomology(); defaults to the SNF-chosen basis.
MasseyContext build_context(const SimplicialSet& x, const std::optional<IntMatrix>& h1_basis = std::nullopt);
/// Group route; needs the injectivity surrogate. The conjugate of iota is
/// built on the presentation complex and its normalization is verified.
MasseyContext build_context(const GroupPresentation& p);

/// lambda(q) in C^2 for q in Q3 (simplicial route).
Vec lambda_cochain(const MasseyContext& ctx, const Vec& q);
/// Class of lambda(q) in H^2 coordinates. The group route splits q along
/// p(Qbar3) + q(H (x) Rbar2) + S^3, pairs the first part with the tau-bar
/// residues and evaluates the second through cup products.
Vec lambda_bar(const MasseyContext& ctx, const Vec& q);

struct LambdaFamily {
  IntMatrix q3_basis;
  IntMatrix lambda;          // C^2 x rank Q3 (simplicial route only)
  IntMatrix lambda_bar;      // H^2 coords x rank Q3 (simplicial route only)
  IntMatrix lambda_barbar;   // H^2 coords x rank Qbar3
};

LambdaFamily lambda_family(const MasseyContext& ctx);

/// Lambda-bar-bar evaluated on the columns of qbar3_basis.
IntMatrix lambda_barbar(const MasseyContext& ctx);

/// delta-bar-bar(f) for f : Rbar2 -> H^1 given as an n x rank Rbar2 matrix in
/// r2bar_basis coordinates; result is H^2 coords x rank Qbar3.
IntMatrix delta_barbar(const MasseyContext& ctx, const IntMatrix& f);

struct MasseyProduct {
  Vec representative;      // H^2 coordinates
  Lattice indeterminacy{0};  // H^1 cup theta3 + theta1 cup H^1 plus torsion relations
};

/// Triple product of classes given in H^1 coordinates (simplicial route).
MasseyProduct triple_massey(const MasseyContext& ctx, const Vec& t1, const Vec& t2, const Vec& t3);

struct InvariantClass {
  std::size_t h2_coords = 0, q3bar_rank = 0;
  std::vector<Int> torsion;
  /// H^2 coords x rank Qbar3.
  IntMatrix representative;
  /// Image of delta-bar-bar, flattened column by column (index s * h2_coords + c).
  Lattice ambiguity{0};

  static Vec flatten(const IntMatrix& m);
  /// Ambiguity plus the torsion relations of H^2 in every column.
  Lattice full_ambiguity() const;
  /// Solving coefficients when the representatives differ by an ambiguity element.
  std::optional<Vec> difference_in_ambiguity(const IntMatrix& other) const;
  bool equals(const InvariantClass& other) const;
};

InvariantClass invariant_class(const MasseyContext& ctx);

/// Rewrites a class through an H^2 coordinate change `h2_map` (new coords x old coords).
InvariantClass map_h2(const InvariantClass& c, const IntMatrix& h2_map, const AbelianPresentation& new_h2);

struct RouteComparison {
  bool rbar2_equal = false;
  bool qbar3_equal = false;
  bool class_equal = false;
  /// The simplicial class mapped into Hom(H2, Z) coordinates.
  InvariantClass simplicial, group;
  std::string detail;
  bool agree() const { return rbar2_equal && qbar3_equal && class_equal; }
};

/// Simplicial route over the presentation complex (with the dual H^1 basis)
/// against the group route, with H^2 identified by evaluation on relator cycles.
RouteComparison compare_routes(const GroupPresentation& p);

struct TransportCheck {
  bool rbar2_equal = false, qbar3_equal = false, class_equal = false;
  bool ok() const { return rbar2_equal && qbar3_equal && class_equal; }
};

/// For a pseudo-homeomorphism f : X -> Y, transfers the H^1 basis of X to Y
/// through f^* and checks that [lambda] of Y pulls back to [lambda] of X.
TransportCheck transport_check(const SimplicialMap& f);

enum class Gamma4 { yes, no, not_applicable };
std::string to_string(Gamma4 g);

struct GroupComparison {
  bool gamma3 = false;
  Gamma4 gamma4 = Gamma4::not_applicable;
  nlohmann::json certificates;
};

/// f : H_1(a) -> H_1(b) as an integer matrix in the generator bases.
GroupComparison compare_groups(const GroupPresentation& pa, const GroupPresentation& pb, const IntMatrix& f);
/// Same on prebuilt group-route contexts.
GroupComparison compare_contexts(const MasseyContext& a, const MasseyContext& b, const IntMatrix& f);

/// Group-route context whose tau-bar residues are shifted by `perturbation` (n^3 x rank H2).
MasseyContext perturb_tau(const MasseyContext& ctx, const IntMatrix& perturbation);

}  // namespace trimassey

#endif
