#ifndef TRIMASSEY_SUITE_HPP
#define TRIMASSEY_SUITE_HPP

// Corpus loading and the property checks run over it.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "trimassey/presentation.hpp"
#include "trimassey/simplicial.hpp"
#include "trimassey/zlinalg.hpp"

namespace trimassey {

struct ComparisonFixture {
  std::string name;
  GroupPresentation a, b;
  std::vector<IntMatrix> maps;
  /// Per map: expected "gamma3" (bool) and optionally "gamma4" ("true", "false", "not-applicable").
  std::vector<nlohmann::json> expect;
};

/// A presentation whose tau-bar residues are shifted; the suite claims the
/// class is unchanged, so a detected shift makes the check fail.
struct PerturbedFixture {
  std::string name;
  GroupPresentation presentation;
  IntMatrix perturbation;
};

struct Corpus {
  std::vector<std::pair<std::string, GroupPresentation>> presentations;
  std::vector<std::pair<std::string, SimplicialSet>> complexes;
  std::vector<ComparisonFixture> comparisons;
  std::vector<PerturbedFixture> perturbed;
  std::vector<std::string> warnings;
  bool empty() const { return presentations.empty() && complexes.empty() && comparisons.empty() && perturbed.empty(); }
};

/// Reads every *.json below `dir` in path order and classifies it by its keys:
/// "generators" (presentation), "simplices" (simplicial set), "a"/"b"/"maps"
/// (comparison), "tau_perturbation" (perturbed fixture).
Corpus load_corpus(const std::filesystem::path& dir);

/// Reads one JSON file; throws InputError with the path on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

struct CheckResult {
  std::string suite;
  std::string subject;
  bool ok = false;
  std::string detail;
  /// Minimal input reproducing a failure.
  nlohmann::json reproducer;
};

/// Runs the property suites with truncation levels up to k (2 <= k <= 4).
std::vector<CheckResult> verify_corpus(const Corpus& corpus, std::size_t k);

/// Presentation complex context with the H^1 basis dual to the generator edges.
struct MasseyContext;
MasseyContext presentation_context(const GroupPresentation& p);

/// Shifts nu by `trials` random rho (fixed seed) and checks invariant_class equality
/// and that each change equals delta-bar-bar of the shift. Returns a failure message or "".
std::string check_choice_independence(const MasseyContext& ctx, int trials, unsigned seed);

}  // namespace trimassey

#endif
