// Command-line front end: JSON in, sorted-key JSON out.
// Exit codes: 0 pass, 1 suite failure, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trimassey/cobar.hpp"
#include "trimassey/error.hpp"
#include "trimassey/grouprings.hpp"
#include "trimassey/massey.hpp"
#include "trimassey/serialize.hpp"
#include "trimassey/simplicial.hpp"
#include "trimassey/suite.hpp"

using namespace trimassey;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;
  std::size_t k = 4;
  std::string out;
  std::string maps;
  std::string route = "both";

  void validate() const {
    for (const auto& f : inputs)
      if (!fs::exists(f)) throw InputError("input not found: " + f);
    if (!maps.empty() && !fs::exists(maps)) throw InputError("map list not found: " + maps);
    if (route != "group" && route != "simplicial" && route != "both")
      throw InputError("--route must be group, simplicial or both");
  }
};

// Either a presentation or a simplicial set, decided by the keys present.
struct Input {
  std::optional<GroupPresentation> presentation;
  std::optional<PresentationComplex> complex;
  SimplicialSet x;
};

Input load_input(const std::string& path) {
  json j = read_json_file(path);
  Input in;
  if (j.contains("generators")) {
    in.presentation = GroupPresentation::from_json(j);
    in.complex = presentation_complex(*in.presentation);
    in.x = in.complex->x;
  } else if (j.contains("simplices")) {
    in.x = SimplicialSet::from_json(j);
    in.x.validate();
  } else {
    throw InputError(path + ": expected a presentation (\"generators\") or a simplicial set (\"simplices\")");
  }
  return in;
}

MasseyContext simplicial_context(const Input& in) {
  if (in.complex) return build_context(in.x, in.complex->dual_h1_basis());
  return build_context(in.x);
}

json class_to_json(const MasseyContext& ctx) {
  InvariantClass c = invariant_class(ctx);
  return {{"h2", presentation_to_json(ctx.h2)},
          {"rbar2_rank", ctx.r2bar_basis.cols()},
          {"qbar3_rank", ctx.q3bar_basis.cols()},
          {"rbar2_basis", matrix_to_json(ctx.r2bar_basis)},
          {"qbar3_basis", matrix_to_json(ctx.q3bar_basis)},
          {"lambda_barbar", matrix_to_json(c.representative)},
          {"ambiguity", lattice_to_json(c.ambiguity)}};
}

template <class F>
json guarded(F&& f) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    return json{{"unavailable", e.what()}};
  }
}

json cmd_invariant(const JobSpec& job) {
  Input in = load_input(job.inputs.at(0));
  Homology hom = homology(in.x);
  json r{{"k", job.k}, {"h1", presentation_to_json(hom.h1)}, {"h2_homology", presentation_to_json(hom.h2)}};
  r["ak"] = presentation_to_json(a_k(in.x, job.k).module.presentation());
  if (in.presentation) {
    const GroupPresentation& p = *in.presentation;
    r["input"] = "presentation";
    DeltaBarH2 db = delta_bar_h2(p);
    r["delta_bar_h2"] = {{"basis", matrix_to_json(db.basis)},
                         {"alpha", matrix_to_json(db.alpha)},
                         {"injective", db.injective}};
    r["dk"] = guarded([&] { return presentation_to_json(d_k(p, job.k).presentation); });
    if (job.route != "group")
      r["simplicial"] = guarded([&] {
        MasseyContext c = simplicial_context(in);
        return class_to_json(c);
      });
    if (job.route != "simplicial")
      r["group"] = guarded([&] { return class_to_json(build_context(p)); });
    if (job.route == "both")
      r["routes_agree"] = guarded([&] { return json(compare_routes(p).agree()); });
  } else {
    if (job.route == "group") throw InputError("the group route needs a presentation");
    r["input"] = "simplicial";
    r["simplicial"] = guarded([&] { return class_to_json(build_context(in.x)); });
  }
  return r;
}

json cmd_compare(const JobSpec& job) {
  if (job.maps.empty()) throw InputError("compare needs --maps");
  GroupPresentation a = GroupPresentation::from_json(read_json_file(job.inputs.at(0)));
  GroupPresentation b = GroupPresentation::from_json(read_json_file(job.inputs.at(1)));
  json list = read_json_file(job.maps);
  if (!list.is_array()) throw InputError("map list must be a JSON array of matrices");
  if (a.n != b.n) throw InputError("presentations have different generator counts");
  MasseyContext ca = build_context(a), cb = build_context(b);
  json verdicts = json::array();
  std::vector<std::size_t> passing;
  for (std::size_t m = 0; m < list.size(); ++m) {
    json v{{"index", m}};
    try {
      GroupComparison r = compare_contexts(ca, cb, matrix_from_json(list[m], a.n));
      v["gamma3"] = r.gamma3;
      v["gamma4"] = to_string(r.gamma4);
      v["certificates"] = r.certificates;
      if (r.gamma3 && r.gamma4 == Gamma4::yes) passing.push_back(m);
    } catch (const InputError& e) {
      v["error"] = e.what();
    }
    verdicts.push_back(v);
  }
  std::string summary;
  if (list.empty())
    summary = "no candidates";
  else if (passing.empty())
    summary = "no candidate passes both levels";
  else
    summary = "map " + std::to_string(passing.front()) + " passes both levels";
  return {{"verdicts", verdicts}, {"summary", summary}, {"passing", passing}};
}

json cmd_verify(const JobSpec& job, int& exit_code) {
  Corpus c = load_corpus(job.inputs.at(0));
  std::vector<CheckResult> results = verify_corpus(c, job.k);
  json checks = json::array();
  std::size_t failed = 0;
  for (const auto& r : results) {
    json e{{"suite", r.suite}, {"subject", r.subject}, {"ok", r.ok}};
    if (!r.ok) {
      ++failed;
      e["detail"] = r.detail;
      e["reproducer"] = r.reproducer;
      std::cerr << "FAIL " << r.suite << " " << r.subject << ": " << r.detail << "\n"
                << "reproducer: " << r.reproducer.dump() << "\n";
    }
    checks.push_back(e);
  }
  for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
  exit_code = failed == 0 ? 0 : 1;
  return {{"checks", checks}, {"warnings", c.warnings}, {"failed", failed}, {"passed", failed == 0}};
}

json cmd_massey(const JobSpec& job, const std::vector<std::string>& classes) {
  Input in = load_input(job.inputs.at(0));
  MasseyContext ctx = simplicial_context(in);
  std::vector<Vec> t;
  for (const auto& s : classes) {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception&) {
      throw InputError("class '" + s + "' is not a JSON array of H^1 coordinates");
    }
    Vec v = vec_from_json(j);
    if (v.size() != ctx.n) throw InputError("class '" + s + "' needs " + std::to_string(ctx.n) + " coordinates");
    t.push_back(v);
  }
  MasseyProduct m = triple_massey(ctx, t[0], t[1], t[2]);
  return {{"h2", presentation_to_json(ctx.h2)},
          {"representative", vec_to_json(m.representative)},
          {"indeterminacy", lattice_to_json(m.indeterminacy)}};
}

json cmd_dk(const JobSpec& job) {
  GroupPresentation p = GroupPresentation::from_json(read_json_file(job.inputs.at(0)));
  DkAlgebra d = d_k(p, job.k);
  return {{"k", job.k}, {"dk", presentation_to_json(d.presentation)}};
}

json cmd_ak(const JobSpec& job) {
  Input in = load_input(job.inputs.at(0));
  AkAlgebra a = a_k(in.x, job.k);
  return {{"k", job.k}, {"ak", presentation_to_json(a.module.presentation())}, {"letters", a.letter_names}};
}

json cmd_gamma(const JobSpec& job, const std::string& word) {
  GroupPresentation p = GroupPresentation::from_json(read_json_file(job.inputs.at(0)));
  Word w;
  try {
    w = json::parse(word).get<Word>();
  } catch (const json::exception&) {
    throw InputError("word must be a JSON array of nonzero signed generator indices");
  }
  for (int l : w)
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) > p.n) throw InputError("letter out of range: " + std::to_string(l));
  return {{"k", job.k}, {"word", w}, {"member", gamma_member(p, w, job.k)}};
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

int fail_input(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triple Massey products and the lambda invariant of presentations"};
  app.require_subcommand(1);
  JobSpec job;
  std::string input, second, word;
  std::vector<std::string> classes(3);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--k", job.k, "truncation level")->check(CLI::Range(1, 4));
    sub->add_option("--out", job.out, "write the report to this file");
  };

  auto* inv = app.add_subcommand("invariant", "invariant report for a presentation or simplicial set");
  inv->add_option("input", input, "input JSON")->required();
  inv->add_option("--route", job.route, "group, simplicial or both");
  common(inv);

  auto* cmp = app.add_subcommand("compare", "compare two presentations along candidate maps");
  cmp->add_option("a", input, "first presentation JSON")->required();
  cmp->add_option("b", second, "second presentation JSON")->required();
  cmp->add_option("--maps", job.maps, "JSON list of integer matrices")->required();
  common(cmp);

  auto* ver = app.add_subcommand("verify", "run the property suites over a corpus directory");
  ver->add_option("corpus", input, "corpus directory")->required();
  common(ver);

  auto* mas = app.add_subcommand("massey", "triple Massey product of three H^1 classes");
  mas->add_option("input", input, "input JSON")->required();
  for (int i = 0; i < 3; ++i)
    mas->add_option("theta" + std::to_string(i + 1), classes[i], "JSON array of H^1 coordinates")->required();
  common(mas);

  auto* dk = app.add_subcommand("dk", "additive presentation of D^(k)");
  dk->add_option("input", input, "presentation JSON")->required();
  common(dk);

  auto* ak = app.add_subcommand("ak", "additive presentation of A^(k)");
  ak->add_option("input", input, "input JSON")->required();
  common(ak);

  auto* gm = app.add_subcommand("gamma", "lower central series membership of a word");
  gm->add_option("input", input, "presentation JSON")->required();
  gm->add_option("word", word, "JSON array of signed generator indices")->required();
  common(gm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
  }

  int exit_code = 0;
  try {
    job.command = app.get_subcommands().front()->get_name();
    job.inputs = {input};
    if (!second.empty()) job.inputs.push_back(second);
    job.validate();
    json report;
    if (job.command == "invariant") report = cmd_invariant(job);
    else if (job.command == "compare") report = cmd_compare(job);
    else if (job.command == "verify") report = cmd_verify(job, exit_code);
    else if (job.command == "massey") report = cmd_massey(job, classes);
    else if (job.command == "dk") report = cmd_dk(job);
    else if (job.command == "ak") report = cmd_ak(job);
    else report = cmd_gamma(job, word);
    emit(report, job.out);
  } catch (const InputError& e) {
    return fail_input("input", e.what());
  } catch (const ValidationError& e) {
    return fail_input("validation", e.what());
  } catch (const PreconditionError& e) {
    return fail_input("precondition", e.what());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return exit_code;
}
