#ifndef TRIMASSEY_PRESENTATION_HPP
#define TRIMASSEY_PRESENTATION_HPP

#include <cstddef>
#include <vector>

#include "json.hpp"

namespace trimassey {

using Word = std::vector<int>;

/// Generators 1..n; relators are words in the letters +-1..+-n.
struct GroupPresentation {
  std::size_t n = 0;
  std::vector<Word> relators;

  bool all_exponent_sums_zero() const;

  /// Checks letters and reducedness; throws InputError.
  void validate() const;
  static GroupPresentation from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Inverse word.
Word inverse(const Word& w);
/// Free reduction.
Word reduce(const Word& w);
/// g h g^-1 h^-1
Word commutator(const Word& g, const Word& h);

}  // namespace trimassey

#endif
