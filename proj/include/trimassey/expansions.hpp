#ifndef TRIMASSEY_EXPANSIONS_HPP
#define TRIMASSEY_EXPANSIONS_HPP

// Generators of pseudo-homeomorphisms: elementary expansions and their
// retractions, and retractions that fold a redundant relator cell onto the
// cells of the relators it is built from.

#include <memory>
#include <string>
#include <vector>

#include "trimassey/simplicial.hpp"

namespace trimassey {

/// A simplicial map that owns its source and target.
struct GeneratedMap {
  std::string kind;
  std::shared_ptr<const SimplicialSet> source, target;
  SimplicialMap map;
};

GeneratedMap identity_map(const SimplicialSet& x);

/// X -> X + {edge e, triangle (d0 = b, d1 = e, d2 = a)}.
GeneratedMap expansion_inclusion(const SimplicialSet& x, const SimplexRef& a, const SimplexRef& b);

/// X + {edge e, triangle} -> X sending e to a. With `front` the triangle is
/// (d0 = *, d1 = e, d2 = a) and goes to s1(a); otherwise (d0 = a, d1 = e, d2 = *) and s0(a).
GeneratedMap expansion_retraction(const SimplicialSet& x, std::size_t a, bool front);

/// X -> X + {copy s' of triangle s, 3-simplex with faces s1(d0 s), s1(d1 s), s, s'}.
GeneratedMap tetra_expansion_inclusion(const SimplicialSet& x, std::size_t s);
/// The retraction of the same expansion, s' -> s and the 3-simplex -> s2(s).
GeneratedMap tetra_expansion_retraction(const SimplicialSet& x, std::size_t s);

/// Presentation complex of P plus the relator r_i r_j (or a copy of r_i when
/// j == i and `duplicate`), folded onto the presentation complex of P.
GeneratedMap redundant_relator_retraction(const GroupPresentation& p, std::size_t i, std::size_t j,
                                          bool duplicate = false);

/// A fixed family built from the presentation complex of P: identity, both
/// 2-expansions, both 3-expansions, and the redundant-relator retractions
/// that the relators allow.
std::vector<GeneratedMap> generated_family(const GroupPresentation& p);

}  // namespace trimassey

#endif
