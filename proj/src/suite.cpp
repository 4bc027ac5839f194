#include "trimassey/suite.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "trimassey/cobar.hpp"
#include "trimassey/error.hpp"
#include "trimassey/expansions.hpp"
#include "trimassey/grouprings.hpp"
#include "trimassey/massey.hpp"
#include "trimassey/serialize.hpp"

namespace trimassey {

namespace fs = std::filesystem;
using nlohmann::json;

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Corpus load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  Corpus c;
  for (const auto& f : files) {
    const std::string name = fs::relative(f, dir).generic_string();
    json j = read_json_file(f);
    try {
      if (j.contains("tau_perturbation")) {
        PerturbedFixture p{name, GroupPresentation::from_json(j.at("presentation")), {}};
        p.perturbation = matrix_from_json(j.at("tau_perturbation"));
        c.perturbed.push_back(std::move(p));
      } else if (j.contains("maps")) {
        ComparisonFixture cf{name, GroupPresentation::from_json(j.at("a")), GroupPresentation::from_json(j.at("b")), {}, {}};
        for (const auto& m : j.at("maps")) cf.maps.push_back(matrix_from_json(m, cf.a.n));
        if (j.contains("expect")) cf.expect = j.at("expect").get<std::vector<json>>();
        c.comparisons.push_back(std::move(cf));
      } else if (j.contains("generators")) {
        c.presentations.emplace_back(name, GroupPresentation::from_json(j));
      } else if (j.contains("simplices")) {
        SimplicialSet x = SimplicialSet::from_json(j);
        x.validate();
        c.complexes.emplace_back(name, std::move(x));
      } else {
        c.warnings.push_back(name + ": unrecognized JSON, skipped");
      }
    } catch (const json::exception& e) {
      throw InputError(name + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(name + ": " + e.what());
    }
  }
  if (c.empty()) c.warnings.push_back("corpus is empty");
  return c;
}

MasseyContext presentation_context(const GroupPresentation& p) {
  PresentationComplex pc = presentation_complex(p);
  return build_context(pc.x, pc.dual_h1_basis());
}

std::string check_choice_independence(const MasseyContext& ctx, int trials, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  InvariantClass base = invariant_class(ctx);
  const std::size_t rb = ctx.r2bar_basis.cols();
  for (int t = 0; t < trials; ++t) {
    IntMatrix r(ctx.n, rb);
    for (std::size_t i = 0; i < ctx.n; ++i)
      for (std::size_t j = 0; j < rb; ++j) r(i, j) = d(rng);
    InvariantClass moved = invariant_class(ctx.shifted(ctx.coh->kappa * r));
    IntMatrix predicted = delta_barbar(ctx, r);
    IntMatrix change = moved.representative - base.representative;
    for (std::size_t s = 0; s < change.cols(); ++s)
      if (!(ctx.h2.normalize(change.column(s)) == predicted.column(s)))
        return "shift " + std::to_string(t) + ": change differs from delta-bar-bar of the shift";
    if (!base.ambiguity.contains(InvariantClass::flatten(predicted)))
      return "shift " + std::to_string(t) + ": change is outside the ambiguity lattice";
    if (!moved.equals(base)) return "shift " + std::to_string(t) + ": classes differ";
  }
  return "";
}

namespace {

struct Runner {
  std::vector<CheckResult> out;

  template <class F>
  void run(const std::string& suite, const std::string& subject, const json& reproducer, F&& body) {
    CheckResult r{suite, subject, false, "", json()};
    try {
      r.detail = body();
      r.ok = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.ok) r.reproducer = reproducer;
    out.push_back(std::move(r));
  }
};

std::string zeta_check(const SimplicialSet& x, const Cohomology& h) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  IntMatrix d1 = coboundary(x, 1);
  for (int t = 0; t < 20; ++t) {
    Vec c(h.kappa.cols());
    for (auto& v : c) v = d(rng);
    Vec w = h.kappa * c;
    if (!(d1 * zeta(w) == cup(x, Cochain{1, w}, Cochain{1, w}))) return "d zeta(w) != w cup w for w = " + to_string(w);
  }
  return "";
}

std::string complex_checks(const SimplicialSet& x, const MasseyContext& ctx) {
  if (auto z = zeta_check(x, *ctx.coh); !z.empty()) return z;
  LambdaFamily fam = lambda_family(ctx);
  if (x.count(3) > 0 && !(coboundary(x, 2) * fam.lambda).is_zero()) return "lambda(q) is not a cocycle";
  return check_choice_independence(ctx, 20, 23);
}

std::string map_checks(const GeneratedMap& g, std::size_t k) {
  if (!pseudo_homeo_check(g.map).is_pseudo_homeo) return g.kind + ": not a pseudo-homeomorphism";
  for (std::size_t level = 1; level <= k; ++level)
    if (!cobar_map_check(a_k(*g.source, level), a_k(*g.target, level), g.map).is_iso())
      return g.kind + ": A^(" + std::to_string(level) + ") map is not an isomorphism";
  TransportCheck t = transport_check(g.map);
  if (!t.ok()) return g.kind + ": invariant class does not transport";
  return "";
}

}  // namespace

std::vector<CheckResult> verify_corpus(const Corpus& corpus, std::size_t k) {
  if (k < 2 || k > 4) throw InputError("verify supports 2 <= k <= 4");
  Runner run;
  for (const auto& [name, p] : corpus.presentations) {
    const json repro = p.to_json();
    const bool commutator_type = p.all_exponent_sums_zero();
    PresentationComplex pc = presentation_complex(p);
    if (commutator_type)
      run.run("A(k) = D(k)", name, repro, [&]() -> std::string {
        for (std::size_t level = 2; level <= k; ++level) {
          AlgebraIsoResult r = algebra_iso_check(a_k(pc.x, level), d_k(p, level), pc);
          if (!r.iso) return "k = " + std::to_string(level) + ": " + r.witness;
        }
        return "";
      });
    if (commutator_type && delta_bar_h2(p).injective)
      run.run("route agreement", name, repro, [&]() -> std::string {
        RouteComparison r = compare_routes(p);
        return r.agree() ? "" : r.detail;
      });
    if (commutator_type)
      run.run("complex identities", name, repro, [&]() { return complex_checks(pc.x, presentation_context(p)); });
    run.run("pseudo-homeomorphism transport", name, repro, [&]() -> std::string {
      for (const auto& g : generated_family(p))
        if (auto d = map_checks(g, k); !d.empty()) return d;
      return "";
    });
  }
  for (const auto& [name, x] : corpus.complexes) {
    const json repro = x.to_json();
    run.run("complex identities", name, repro, [&]() { return complex_checks(x, build_context(x)); });
    run.run("pseudo-homeomorphism transport", name, repro, [&]() -> std::string {
      std::vector<GeneratedMap> maps;
      maps.push_back(identity_map(x));
      if (x.count(1) > 0) maps.push_back(expansion_retraction(x, 0, true));
      if (x.count(2) > 0) maps.push_back(tetra_expansion_retraction(x, 0));
      for (const auto& g : maps)
        if (auto d = map_checks(g, k); !d.empty()) return d;
      return "";
    });
  }
  for (const auto& cf : corpus.comparisons) {
    json repro{{"a", cf.a.to_json()}, {"b", cf.b.to_json()}};
    run.run("comparison expectations", cf.name, repro, [&]() -> std::string {
      for (std::size_t m = 0; m < cf.maps.size(); ++m) {
        GroupComparison r = compare_groups(cf.a, cf.b, cf.maps[m]);
        if (m >= cf.expect.size()) continue;
        const json& e = cf.expect[m];
        if (e.contains("gamma3") && e["gamma3"].get<bool>() != r.gamma3)
          return "map " + std::to_string(m) + ": gamma3 = " + (r.gamma3 ? "true" : "false");
        if (e.contains("gamma4") && e["gamma4"].get<std::string>() != to_string(r.gamma4))
          return "map " + std::to_string(m) + ": gamma4 = " + to_string(r.gamma4);
      }
      return "";
    });
  }
  for (const auto& pf : corpus.perturbed) {
    json repro{{"presentation", pf.presentation.to_json()}, {"tau_perturbation", matrix_to_json(pf.perturbation)}};
    run.run("perturbed tau-bar", pf.name, repro, [&]() -> std::string {
      MasseyContext c = build_context(pf.presentation);
      GroupComparison r = compare_contexts(c, perturb_tau(c, pf.perturbation), IntMatrix::identity(c.n));
      if (r.gamma4 == Gamma4::yes) return "";
      repro["certificates"] = r.certificates;
      return "perturbed class differs: gamma4 = " + to_string(r.gamma4);
    });
  }
  return run.out;
}

}  // namespace trimassey
