#include "trimassey/expansions.hpp"

#include <cstdlib>

#include "trimassey/error.hpp"

namespace trimassey {

namespace {

std::string fresh_name(const SimplicialSet& x, const std::string& stem) {
  for (std::size_t i = 1;; ++i) {
    std::string name = stem + std::to_string(i);
    bool used = false;
    for (int d = 0; d <= 3; ++d) used = used || x.find(d, name).has_value();
    if (!used) return name;
  }
}

// Identity on the simplices of x, which sit at the same ids inside y.
SimplicialMap inclusion_images(const SimplicialSet& x) {
  SimplicialMap f;
  for (int d = 1; d <= 3; ++d)
    for (std::size_t id = 0; id < x.count(d); ++id)
      f.images[static_cast<std::size_t>(d)].push_back(SimplexRef::nondegenerate(d, id));
  return f;
}

GeneratedMap finish(std::string kind, std::shared_ptr<SimplicialSet> source, std::shared_ptr<SimplicialSet> target,
                    SimplicialMap f) {
  GeneratedMap g;
  g.kind = std::move(kind);
  f.source = source.get();
  f.target = target.get();
  f.validate();
  g.source = std::move(source);
  g.target = std::move(target);
  g.map = std::move(f);
  return g;
}

}  // namespace

GeneratedMap identity_map(const SimplicialSet& x) {
  auto s = std::make_shared<SimplicialSet>(x);
  return finish("identity", s, s, inclusion_images(x));
}

GeneratedMap expansion_inclusion(const SimplicialSet& x, const SimplexRef& a, const SimplexRef& b) {
  auto y = std::make_shared<SimplicialSet>(x);
  std::size_t e = y->add_edge(fresh_name(x, "xe"));
  y->add_triangle(fresh_name(x, "xs"), b, SimplexRef::nondegenerate(1, e), a);
  return finish("elementary expansion", std::make_shared<SimplicialSet>(x), y, inclusion_images(x));
}

GeneratedMap expansion_retraction(const SimplicialSet& x, std::size_t a, bool front) {
  auto y = std::make_shared<SimplicialSet>(x);
  const SimplexRef ar = SimplexRef::nondegenerate(1, a), star = SimplexRef::vertex(1);
  std::size_t e = y->add_edge(fresh_name(x, "xe"));
  if (front)
    y->add_triangle(fresh_name(x, "xs"), star, SimplexRef::nondegenerate(1, e), ar);
  else
    y->add_triangle(fresh_name(x, "xs"), ar, SimplexRef::nondegenerate(1, e), star);
  SimplicialMap f = inclusion_images(x);
  f.images[1].push_back(ar);
  f.images[2].push_back(ar.degeneracy(front ? 1 : 0));
  return finish("expansion retraction", y, std::make_shared<SimplicialSet>(x), f);
}

namespace {

std::shared_ptr<SimplicialSet> tetra_expand(const SimplicialSet& x, std::size_t s) {
  if (s >= x.count(2)) throw InputError("tetra expansion: no such 2-simplex");
  auto y = std::make_shared<SimplicialSet>(x);
  const SimplexRef& d0 = x.stored_face(2, s, 0);
  const SimplexRef& d1 = x.stored_face(2, s, 1);
  const SimplexRef& d2 = x.stored_face(2, s, 2);
  std::size_t copy = y->add_triangle(fresh_name(x, "xs"), d0, d1, d2);
  y->add_tetrahedron(fresh_name(x, "xT"), {d0.degeneracy(1), d1.degeneracy(1), SimplexRef::nondegenerate(2, s),
                                           SimplexRef::nondegenerate(2, copy)});
  return y;
}

}  // namespace

GeneratedMap tetra_expansion_inclusion(const SimplicialSet& x, std::size_t s) {
  return finish("3-expansion", std::make_shared<SimplicialSet>(x), tetra_expand(x, s), inclusion_images(x));
}

GeneratedMap tetra_expansion_retraction(const SimplicialSet& x, std::size_t s) {
  auto y = tetra_expand(x, s);
  SimplicialMap f = inclusion_images(x);
  const SimplexRef sr = SimplexRef::nondegenerate(2, s);
  f.images[2].push_back(sr);
  f.images[3].push_back(sr.degeneracy(2));
  return finish("3-expansion retraction", y, std::make_shared<SimplicialSet>(x), f);
}

GeneratedMap redundant_relator_retraction(const GroupPresentation& p, std::size_t i, std::size_t j, bool duplicate) {
  if (i >= p.relators.size() || j >= p.relators.size()) throw InputError("redundant relator: no such relator");
  const Word& ri = p.relators[i];
  const Word& rj = p.relators[j];
  if (ri.size() < 2 || rj.size() < 2) throw InputError("redundant relator: relators must have length >= 2");
  GroupPresentation q = p;
  Word extra = ri;
  if (!duplicate) {
    if (ri.back() == -rj.front()) throw InputError("redundant relator: the product r_i r_j is not reduced");
    extra.insert(extra.end(), rj.begin(), rj.end());
  }
  q.relators.push_back(extra);
  auto big = std::make_shared<SimplicialSet>(presentation_complex(q).x);
  PresentationComplex small_pc = presentation_complex(p);
  auto small = std::make_shared<SimplicialSet>(small_pc.x);

  auto edge = [&](int l) {
    std::size_t g = static_cast<std::size_t>(std::abs(l)) - 1;
    return SimplexRef::nondegenerate(1, l > 0 ? small_pc.generator_edges[g] : small_pc.inverse_edges[g]);
  };
  auto named = [&](int d, const std::string& name) { return SimplexRef::nondegenerate(d, *small->find(d, name)); };
  const std::string ti = "r" + std::to_string(i + 1), tj = "r" + std::to_string(j + 1);
  const std::size_t l1 = ri.size();

  // Prefix of length q of the product relator.
  auto prefix_image = [&](std::size_t len) -> SimplexRef {
    if (duplicate || len < l1) return named(1, ti + "p" + std::to_string(len));
    if (len == l1) return SimplexRef::vertex(1);
    std::size_t rest = len - l1;
    if (rest == 1) return edge(rj.front());
    return named(1, tj + "p" + std::to_string(rest));
  };
  auto triangle_image = [&](std::size_t m) -> SimplexRef {
    if (duplicate || m <= l1) return named(2, ti + "t" + std::to_string(m));
    if (m == l1 + 1) return edge(rj.front()).degeneracy(0);
    return named(2, tj + "t" + std::to_string(m - l1));
  };

  SimplicialMap f;
  const std::string tag = "r" + std::to_string(q.relators.size());
  for (std::size_t id = 0; id < big->count(1); ++id) {
    const std::string& name = big->name(1, id);
    if (name.rfind(tag + "p", 0) == 0)
      f.images[1].push_back(prefix_image(std::stoul(name.substr(tag.size() + 1))));
    else
      f.images[1].push_back(named(1, name));
  }
  for (std::size_t id = 0; id < big->count(2); ++id) {
    const std::string& name = big->name(2, id);
    if (name.rfind(tag + "t", 0) == 0)
      f.images[2].push_back(triangle_image(std::stoul(name.substr(tag.size() + 1))));
    else
      f.images[2].push_back(named(2, name));
  }
  return finish(duplicate ? "duplicate relator retraction" : "product relator retraction", big, small, f);
}

std::vector<GeneratedMap> generated_family(const GroupPresentation& p) {
  PresentationComplex pc = presentation_complex(p);
  const SimplicialSet& x = pc.x;
  std::vector<GeneratedMap> out;
  out.push_back(identity_map(x));
  const std::size_t e = x.count(1), t = x.count(2);
  if (e > 0) {
    out.push_back(expansion_inclusion(x, SimplexRef::nondegenerate(1, 0), SimplexRef::nondegenerate(1, e - 1)));
    out.push_back(expansion_retraction(x, 0, true));
    out.push_back(expansion_retraction(x, e - 1, false));
  }
  if (t > 0) {
    out.push_back(tetra_expansion_inclusion(x, 0));
    out.push_back(tetra_expansion_retraction(x, t - 1));
  }
  std::vector<std::size_t> usable;
  for (std::size_t j = 0; j < p.relators.size(); ++j)
    if (p.relators[j].size() >= 2) usable.push_back(j);
  if (!usable.empty()) out.push_back(redundant_relator_retraction(p, usable[0], usable[0], true));
  for (std::size_t a : usable)
    for (std::size_t b : usable)
      if (a != b && p.relators[a].back() != -p.relators[b].front()) {
        out.push_back(redundant_relator_retraction(p, a, b));
        return out;
      }
  return out;
}

}  // namespace trimassey
