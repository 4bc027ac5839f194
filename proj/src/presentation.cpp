#include "trimassey/presentation.hpp"

#include <cstdlib>
#include <string>

#include "trimassey/error.hpp"

namespace trimassey {

void GroupPresentation::validate() const {
  for (std::size_t j = 0; j < relators.size(); ++j) {
    const auto& r = relators[j];
    for (std::size_t t = 0; t < r.size(); ++t) {
      int l = r[t];
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) > n)
        throw InputError("relator " + std::to_string(j + 1) + ": letter out of range (" + std::to_string(l) + ")");
      if (t > 0 && r[t - 1] == -l) throw InputError("relator " + std::to_string(j + 1) + " is not reduced");
    }
  }
}

GroupPresentation GroupPresentation::from_json(const nlohmann::json& j) {
  GroupPresentation p;
  try {
    p.n = j.at("generators").get<std::size_t>();
    for (const auto& r : j.at("relators")) p.relators.push_back(r.get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed presentation JSON: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::json GroupPresentation::to_json() const { return {{"generators", n}, {"relators", relators}}; }

bool GroupPresentation::all_exponent_sums_zero() const {
  for (const auto& r : relators) {
    std::vector<int> e(n + 1, 0);
    for (int l : r) e[static_cast<std::size_t>(std::abs(l))] += l > 0 ? 1 : -1;
    for (int x : e)
      if (x != 0) return false;
  }
  return true;
}

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& l : r) l = -l;
  return r;
}

Word reduce(const Word& w) {
  Word r;
  for (int l : w) {
    if (!r.empty() && r.back() == -l)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

Word commutator(const Word& g, const Word& h) {
  Word w = g;
  w.insert(w.end(), h.begin(), h.end());
  Word gi = inverse(g), hi = inverse(h);
  w.insert(w.end(), gi.begin(), gi.end());
  w.insert(w.end(), hi.begin(), hi.end());
  return reduce(w);
}

}  // namespace trimassey
