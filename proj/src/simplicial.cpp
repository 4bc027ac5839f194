#include "trimassey/simplicial.hpp"

#include <algorithm>
#include <set>

#include "trimassey/error.hpp"

namespace trimassey {

// ---------------------------------------------------------------- simplex refs

SimplexRef SimplexRef::nondegenerate(int dim, std::size_t id) {
  SimplexRef s;
  s.base_dim = dim;
  s.base = id;
  s.surj.resize(static_cast<std::size_t>(dim) + 1);
  for (int k = 0; k <= dim; ++k) s.surj[static_cast<std::size_t>(k)] = k;
  return s;
}

SimplexRef SimplexRef::vertex(int dim) {
  SimplexRef s;
  s.surj.assign(static_cast<std::size_t>(dim) + 1, 0);
  return s;
}

SimplexRef SimplexRef::degeneracy(int i) const {
  if (i < 0 || i > dim()) throw InputError("degeneracy index out of range");
  SimplexRef s = *this;
  s.surj.insert(s.surj.begin() + i, surj[static_cast<std::size_t>(i)]);
  return s;
}

// ---------------------------------------------------------------- simplicial sets

namespace {

void check_name(const std::string& name) {
  if (name.empty() || name == "*" || name.find_first_of("() ") != std::string::npos)
    throw ValidationError("invalid simplex name '" + name + "'");
}

}  // namespace

std::size_t SimplicialSet::add_edge(const std::string& name) {
  check_name(name);
  for (int d = 0; d <= 3; ++d)
    if (find(d, name)) throw ValidationError("duplicate simplex name '" + name + "'");
  names_[1].push_back(name);
  faces_[1].push_back({SimplexRef::vertex(0), SimplexRef::vertex(0)});
  return names_[1].size() - 1;
}

std::size_t SimplicialSet::add_triangle(const std::string& name, const SimplexRef& d0, const SimplexRef& d1,
                                        const SimplexRef& d2) {
  check_name(name);
  for (int d = 0; d <= 3; ++d)
    if (find(d, name)) throw ValidationError("duplicate simplex name '" + name + "'");
  for (const SimplexRef* f : {&d0, &d1, &d2})
    if (f->dim() != 1 || (f->base_dim == 1 && f->base >= count(1)))
      throw ValidationError("2-simplex '" + name + "' references a missing 1-simplex");
  names_[2].push_back(name);
  faces_[2].push_back({d0, d1, d2});
  return names_[2].size() - 1;
}

std::size_t SimplicialSet::add_tetrahedron(const std::string& name, const std::array<SimplexRef, 4>& faces) {
  check_name(name);
  for (int d = 0; d <= 3; ++d)
    if (find(d, name)) throw ValidationError("duplicate simplex name '" + name + "'");
  for (const auto& f : faces)
    if (f.dim() != 2 || f.base >= count(f.base_dim))
      throw ValidationError("3-simplex '" + name + "' references a missing simplex");
  names_[3].push_back(name);
  faces_[3].emplace_back(faces.begin(), faces.end());
  std::size_t id = names_[3].size() - 1;
  try {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        SimplexRef lhs = face(faces[static_cast<std::size_t>(j)], i);
        SimplexRef rhs = face(faces[static_cast<std::size_t>(i)], j - 1);
        if (!(lhs == rhs))
          throw ValidationError("3-simplex '" + name + "' violates d" + std::to_string(i) + " d" +
                                std::to_string(j) + " = d" + std::to_string(j - 1) + " d" + std::to_string(i) +
                                ": " + format_ref(lhs) + " vs " + format_ref(rhs));
      }
  } catch (...) {
    names_[3].pop_back();
    faces_[3].pop_back();
    throw;
  }
  return id;
}

std::size_t SimplicialSet::count(int dim) const {
  if (dim < 0 || dim > 3) return 0;
  return names_[static_cast<std::size_t>(dim)].size();
}

const std::string& SimplicialSet::name(int dim, std::size_t id) const {
  return names_.at(static_cast<std::size_t>(dim)).at(id);
}

std::optional<std::size_t> SimplicialSet::find(int dim, const std::string& name) const {
  if (dim < 0 || dim > 3) return std::nullopt;
  const auto& v = names_[static_cast<std::size_t>(dim)];
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

const SimplexRef& SimplicialSet::stored_face(int dim, std::size_t id, int i) const {
  return faces_.at(static_cast<std::size_t>(dim)).at(id).at(static_cast<std::size_t>(i));
}

SimplexRef SimplicialSet::face(const SimplexRef& s, int i) const {
  const int d = s.dim();
  if (d == 0 || i < 0 || i > d) throw InputError("face index out of range");
  std::vector<int> rest = s.surj;
  const int v = rest[static_cast<std::size_t>(i)];
  rest.erase(rest.begin() + i);
  if (std::find(rest.begin(), rest.end(), v) != rest.end()) {
    SimplexRef out = s;
    out.surj = std::move(rest);
    return out;
  }
  // The removed vertex was the only preimage of v: pass to the face d_v of the base.
  const SimplexRef& f = stored_face(s.base_dim, s.base, v);
  SimplexRef out;
  out.base_dim = f.base_dim;
  out.base = f.base;
  out.surj.resize(rest.size());
  for (std::size_t k = 0; k < rest.size(); ++k) {
    int x = rest[k] < v ? rest[k] : rest[k] - 1;
    out.surj[k] = f.surj[static_cast<std::size_t>(x)];
  }
  return out;
}

SimplexRef SimplicialSet::restrict_to(const SimplexRef& s, const std::vector<int>& vertices) const {
  SimplexRef out = s;
  for (int k = s.dim(); k >= 0; --k)
    if (std::find(vertices.begin(), vertices.end(), k) == vertices.end()) out = face(out, k);
  return out;
}

SimplexRef SimplicialSet::front(const SimplexRef& s, int p) const {
  std::vector<int> v;
  for (int k = 0; k <= p; ++k) v.push_back(k);
  return restrict_to(s, v);
}

SimplexRef SimplicialSet::back(const SimplexRef& s, int q) const {
  std::vector<int> v;
  for (int k = s.dim() - q; k <= s.dim(); ++k) v.push_back(k);
  return restrict_to(s, v);
}

void SimplicialSet::validate() const {
  for (std::size_t id = 0; id < count(2); ++id)
    for (int i = 0; i < 3; ++i) {
      const SimplexRef& f = stored_face(2, id, i);
      if (f.dim() != 1 || f.base >= count(f.base_dim))
        throw ValidationError("2-simplex '" + name(2, id) + "' face d" + std::to_string(i) + " is missing");
    }
  for (std::size_t id = 0; id < count(3); ++id) {
    for (int i = 0; i < 4; ++i) {
      const SimplexRef& f = stored_face(3, id, i);
      if (f.dim() != 2 || f.base >= count(f.base_dim))
        throw ValidationError("3-simplex '" + name(3, id) + "' face d" + std::to_string(i) + " is missing");
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!(face(stored_face(3, id, j), i) == face(stored_face(3, id, i), j - 1)))
          throw ValidationError("3-simplex '" + name(3, id) + "' violates the simplicial identity for (i,j) = (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

SimplexRef SimplicialSet::parse_ref(int dim, const std::string& token) const {
  if (token == "*") return SimplexRef::vertex(dim);
  if (token.size() > 4 && token[0] == 's' && std::isdigit(static_cast<unsigned char>(token[1])) && token[2] == '(' &&
      token.back() == ')') {
    int i = token[1] - '0';
    if (dim < 1 || i > dim - 1) throw ValidationError("degeneracy '" + token + "' out of range in dimension " +
                                                      std::to_string(dim));
    return parse_ref(dim - 1, token.substr(3, token.size() - 4)).degeneracy(i);
  }
  auto id = find(dim, token);
  if (!id) throw ValidationError("unknown " + std::to_string(dim) + "-simplex '" + token + "'");
  return SimplexRef::nondegenerate(dim, *id);
}

std::string SimplicialSet::format_ref(const SimplexRef& s) const {
  if (!s.degenerate()) return name(s.base_dim, s.base);
  if (s.base_dim == 0) return "*";
  for (int i = 0; i < s.dim(); ++i)
    if (s.surj[static_cast<std::size_t>(i)] == s.surj[static_cast<std::size_t>(i) + 1])
      return "s" + std::to_string(i) + "(" + format_ref(face(s, i)) + ")";
  throw InconsistencyError("degenerate simplex without a repeated vertex");
}

SimplicialSet SimplicialSet::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("simplices")) throw InputError("simplicial set JSON needs a 'simplices' object");
  const auto& s = j.at("simplices");
  if (s.contains("0") && s.at("0").size() != 1)
    throw ValidationError("simplicial sets must have exactly one vertex");
  SimplicialSet x;
  try {
    if (s.contains("1"))
      for (const auto& name : s.at("1")) x.add_edge(name.get<std::string>());
    if (s.contains("2"))
      for (const auto& t : s.at("2"))
        x.add_triangle(t.at("name").get<std::string>(), x.parse_ref(1, t.at("d0").get<std::string>()),
                       x.parse_ref(1, t.at("d1").get<std::string>()), x.parse_ref(1, t.at("d2").get<std::string>()));
    if (s.contains("3"))
      for (const auto& t : s.at("3")) {
        std::array<SimplexRef, 4> f;
        for (int i = 0; i < 4; ++i)
          f[static_cast<std::size_t>(i)] = x.parse_ref(2, t.at("d" + std::to_string(i)).get<std::string>());
        x.add_tetrahedron(t.at("name").get<std::string>(), f);
      }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed simplicial set JSON: ") + e.what());
  }
  x.validate();
  return x;
}

nlohmann::json SimplicialSet::to_json() const {
  nlohmann::json s;
  s["1"] = names_[1];
  s["2"] = nlohmann::json::array();
  for (std::size_t id = 0; id < count(2); ++id) {
    nlohmann::json t;
    t["name"] = name(2, id);
    for (int i = 0; i < 3; ++i) t["d" + std::to_string(i)] = format_ref(stored_face(2, id, i));
    s["2"].push_back(t);
  }
  s["3"] = nlohmann::json::array();
  for (std::size_t id = 0; id < count(3); ++id) {
    nlohmann::json t;
    t["name"] = name(3, id);
    for (int i = 0; i < 4; ++i) t["d" + std::to_string(i)] = format_ref(stored_face(3, id, i));
    s["3"].push_back(t);
  }
  return nlohmann::json{{"simplices", s}};
}

// ---------------------------------------------------------------- chains

ChainComplex chain_complex(const SimplicialSet& x) {
  ChainComplex c;
  for (int d = 0; d <= 3; ++d) c.ranks[static_cast<std::size_t>(d)] = x.count(d);
  for (int d = 1; d <= 3; ++d) {
    IntMatrix m(x.count(d - 1), x.count(d));
    for (std::size_t id = 0; id < x.count(d); ++id)
      for (int i = 0; i <= d; ++i) {
        const SimplexRef f = x.face(SimplexRef::nondegenerate(d, id), i);
        if (!f.degenerate()) m(f.base, id) += (i % 2 == 0) ? 1 : -1;
      }
    c.boundary[static_cast<std::size_t>(d)] = std::move(m);
  }
  return c;
}

Vec chain_of(const SimplicialSet& x, const SimplexRef& s) {
  Vec v = zero_vec(x.count(s.dim()));
  if (!s.degenerate()) v[s.base] = 1;
  return v;
}

IntMatrix aw_component(const SimplicialSet& x, int p, int q) {
  const std::size_t rp = x.count(p), rq = x.count(q);
  IntMatrix m(rp * rq, x.count(p + q));
  for (std::size_t id = 0; id < x.count(p + q); ++id) {
    SimplexRef s = SimplexRef::nondegenerate(p + q, id);
    SimplexRef f = x.front(s, p), b = x.back(s, q);
    if (!f.degenerate() && !b.degenerate()) m(f.base * rq + b.base, id) += 1;
  }
  return m;
}

IntMatrix delta1_component(const SimplicialSet& x, int d, int p, int q) {
  const std::size_t rp = x.count(p), rq = x.count(q);
  IntMatrix m(rp * rq, x.count(d));
  if (d == 1 && p == 1 && q == 1) {
    for (std::size_t a = 0; a < x.count(1); ++a) m(a * rq + a, a) = 1;
    return m;
  }
  if (d == 2 && p == 2 && q == 1) {
    for (std::size_t s = 0; s < x.count(2); ++s) {
      const SimplexRef& c = x.stored_face(2, s, 1);
      if (!c.degenerate()) m(s * rq + c.base, s) += 1;
    }
    return m;
  }
  if (d == 2 && p == 1 && q == 2) {
    for (std::size_t s = 0; s < x.count(2); ++s)
      for (int i : {2, 0}) {
        const SimplexRef& e = x.stored_face(2, s, i);
        if (!e.degenerate()) m(e.base * rq + s, s) += 1;
      }
    return m;
  }
  throw InputError("Delta_1 is defined on chains of dimension 1 and 2 only");
}

IntMatrix cup_matrix(const SimplicialSet& x, int p, int q) {
  if (p < 0 || q < 0 || p + q > 3) throw InputError("cup product degrees out of range");
  return aw_component(x, p, q).transpose();
}

IntMatrix mu1_matrix(const SimplicialSet& x, int p, int q) {
  IntMatrix m = delta1_component(x, p + q - 1, p, q).transpose();
  if (p % 2 == 1)
    for (std::size_t i = 0; i < m.rows(); ++i) m.negate_row(i);
  return m;
}

IntMatrix coboundary(const SimplicialSet& x, int p) {
  if (p < 0 || p > 3) throw InputError("coboundary degree out of range");
  if (p == 3) return IntMatrix(0, x.count(3));
  return chain_complex(x).boundary[static_cast<std::size_t>(p) + 1].transpose();
}

Vec cup(const SimplicialSet& x, const Cochain& f, const Cochain& g, Cochain* out) {
  IntMatrix fm = IntMatrix::from_columns({f.values}, f.values.size());
  IntMatrix gm = IntMatrix::from_columns({g.values}, g.values.size());
  Vec r = cup_matrix(x, f.degree, g.degree) * kronecker(fm, gm).column(0);
  if (out) *out = Cochain{f.degree + g.degree, r};
  return r;
}

// ---------------------------------------------------------------- cohomology

namespace {

IntMatrix unimodular_inverse(const IntMatrix& m) {
  SmithForm f = smith_normal_form(m);
  if (f.rank != m.rows() || m.rows() != m.cols()) throw InputError("matrix is not invertible over Z");
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.S(i, i) != 1) throw InputError("matrix is not unimodular");
  return f.V * f.U;
}

}  // namespace

Vec Cohomology::h2_class(const Vec& cocycle) const {
  if (cocycle.size() != c2_rank) throw InputError("h2_class: dimension mismatch");
  Vec zc = z2.coords * cocycle;
  if (!(z2.basis * zc == cocycle)) throw PreconditionError("h2_class: cochain is not a cocycle");
  return h2.coordinates(zc);
}

Vec Cohomology::h1_coords(const Vec& cocycle) const {
  Vec c = h1_coord_map * cocycle;
  if (!(kappa * c == cocycle)) throw PreconditionError("h1_coords: cochain is not a cocycle");
  return c;
}

Cohomology cohomology(const SimplicialSet& x, const std::optional<IntMatrix>& h1_basis) {
  ChainComplex c = chain_complex(x);
  Cohomology h;
  h.c1_rank = c.ranks[1];
  h.c2_rank = c.ranks[2];
  IntMatrix d1 = c.boundary[2].transpose();  // C^1 -> C^2
  KernelBasis z1 = kernel_basis(d1);
  if (h1_basis) {
    if (h1_basis->rows() != h.c1_rank || h1_basis->cols() != z1.basis.cols())
      throw InputError("H^1 basis has the wrong shape");
    if (!(d1 * *h1_basis).is_zero()) throw InputError("H^1 basis contains a non-cocycle");
    IntMatrix m = z1.coords * *h1_basis;  // coefficients in the kernel basis
    h.kappa = *h1_basis;
    h.h1_coord_map = unimodular_inverse(m) * z1.coords;
  } else {
    h.kappa = z1.basis;
    h.h1_coord_map = z1.coords;
  }
  h.h1 = BasedModule::standard(h.kappa.cols(), "xi");
  IntMatrix d2 = c.ranks[3] ? c.boundary[3].transpose() : IntMatrix(0, h.c2_rank);
  h.z2 = kernel_basis(d2);
  h.b2 = Lattice(d1);
  h.h2 = cokernel_presentation(h.z2.basis.cols(), Lattice(h.z2.coords * d1));
  return h;
}

Homology homology(const SimplicialSet& x) {
  ChainComplex c = chain_complex(x);
  Homology h;
  h.h1 = cokernel_presentation(c.ranks[1], Lattice(c.boundary[2]));
  KernelBasis z2 = kernel_basis(c.boundary[2]);
  h.z2 = Lattice(z2.basis);
  h.b2 = Lattice(c.ranks[3] ? c.boundary[3] : IntMatrix(c.ranks[2], 0));
  h.h2 = cokernel_presentation(z2.basis.cols(), Lattice(z2.coords * h.b2.generators()));
  return h;
}

// ---------------------------------------------------------------- presentations

std::vector<int> PresentationComplex::exponent_sums(std::size_t j) const {
  std::vector<int> e(generator_edges.size(), 0);
  for (int l : relators.at(j)) e[static_cast<std::size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
  return e;
}

Vec PresentationComplex::relator_cycle(std::size_t j) const {
  for (int e : exponent_sums(j))
    if (e != 0) throw PreconditionError("relator " + std::to_string(j + 1) + " has nonzero exponent sum");
  Vec c = zero_vec(x.count(2));
  for (std::size_t t : relator_triangles.at(j)) c[t] += 1;
  for (int l : relators[j])
    if (l < 0) c[inverse_triangles[static_cast<std::size_t>(-l) - 1]] -= 1;
  return c;
}

IntMatrix PresentationComplex::dual_h1_basis() const {
  const std::size_t n = generator_edges.size();
  IntMatrix b(x.count(1), n);
  auto edge_of = [&](int l) { return l > 0 ? generator_edges[static_cast<std::size_t>(l) - 1]
                                           : inverse_edges[static_cast<std::size_t>(-l) - 1]; };
  for (std::size_t i = 0; i < n; ++i) {
    b(generator_edges[i], i) = 1;
    b(inverse_edges[i], i) = -1;
  }
  for (std::size_t j = 0; j < relators.size(); ++j) {
    for (int e : exponent_sums(j))
      if (e != 0) throw PreconditionError("relator " + std::to_string(j + 1) + " has nonzero exponent sum");
    const auto& r = relators[j];
    // Prefix edges are d1 faces of all fan triangles but the last.
    for (std::size_t i = 0; i < n; ++i) {
      Int acc = 0;
      for (std::size_t m = 0; m < r.size(); ++m) {
        acc += b(edge_of(r[m]), i);
        if (m >= 1 && m + 1 < r.size()) {
          const SimplexRef& p = x.stored_face(2, relator_triangles[j][m - 1], 1);
          b(p.base, i) = acc;
        }
      }
    }
  }
  if (!(chain_complex(x).boundary[2].transpose() * b).is_zero())
    throw InconsistencyError("dual H^1 basis is not a cocycle basis");
  return b;
}

PresentationComplex presentation_complex(const GroupPresentation& p) {
  p.validate();
  PresentationComplex pc;
  pc.relators = p.relators;
  SimplicialSet& x = pc.x;
  for (std::size_t i = 0; i < p.n; ++i) pc.generator_edges.push_back(x.add_edge("g" + std::to_string(i + 1)));
  for (std::size_t i = 0; i < p.n; ++i) pc.inverse_edges.push_back(x.add_edge("G" + std::to_string(i + 1)));
  const SimplexRef star = SimplexRef::vertex(1);
  auto edge = [&](int l) {
    std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    return SimplexRef::nondegenerate(1, l > 0 ? pc.generator_edges[i] : pc.inverse_edges[i]);
  };
  for (std::size_t i = 0; i < p.n; ++i)
    pc.inverse_triangles.push_back(x.add_triangle("inv" + std::to_string(i + 1), edge(-static_cast<int>(i) - 1),
                                                  star, edge(static_cast<int>(i) + 1)));
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    const auto& r = p.relators[j];
    std::vector<std::size_t> tris;
    const std::string tag = "r" + std::to_string(j + 1);
    if (r.empty()) {
      pc.warnings.push_back("relator " + std::to_string(j + 1) + " is empty and was ignored");
    } else if (r.size() == 1) {
      tris.push_back(x.add_triangle(tag + "t1", edge(r[0]), star, star));
    } else {
      SimplexRef prev = edge(r[0]);
      for (std::size_t m = 1; m < r.size(); ++m) {
        SimplexRef next = star;
        if (m + 1 < r.size())
          next = SimplexRef::nondegenerate(1, x.add_edge(tag + "p" + std::to_string(m + 1)));
        tris.push_back(x.add_triangle(tag + "t" + std::to_string(m + 1), edge(r[m]), next, prev));
        prev = next;
      }
    }
    pc.relator_triangles.push_back(std::move(tris));
  }
  return pc;
}

// ---------------------------------------------------------------- maps

SimplexRef SimplicialMap::apply(const SimplexRef& s) const {
  SimplexRef img = s.base_dim == 0 ? SimplexRef::vertex(0) : images.at(static_cast<std::size_t>(s.base_dim)).at(s.base);
  SimplexRef out;
  out.base_dim = img.base_dim;
  out.base = img.base;
  out.surj.resize(s.surj.size());
  for (std::size_t k = 0; k < s.surj.size(); ++k) out.surj[k] = img.surj[static_cast<std::size_t>(s.surj[k])];
  return out;
}

void SimplicialMap::validate() const {
  if (!source || !target) throw ValidationError("simplicial map without source or target");
  for (int d = 1; d <= 3; ++d) {
    const auto& im = images[static_cast<std::size_t>(d)];
    if (im.size() != source->count(d))
      throw ValidationError("simplicial map does not cover every " + std::to_string(d) + "-simplex");
    for (std::size_t id = 0; id < im.size(); ++id) {
      if (im[id].dim() != d || im[id].base >= target->count(im[id].base_dim))
        throw ValidationError("image of '" + source->name(d, id) + "' has the wrong dimension or is missing");
      for (int i = 0; i <= d; ++i) {
        SimplexRef lhs = apply(source->face(SimplexRef::nondegenerate(d, id), i));
        SimplexRef rhs = target->face(im[id], i);
        if (!(lhs == rhs))
          throw ValidationError("map does not commute with d" + std::to_string(i) + " on '" + source->name(d, id) +
                                "': " + target->format_ref(lhs) + " vs " + target->format_ref(rhs));
      }
    }
  }
}

IntMatrix SimplicialMap::chain_map(int d) const {
  IntMatrix m(target->count(d), source->count(d));
  if (d == 0) {
    if (m.rows() && m.cols()) m(0, 0) = 1;
    return m;
  }
  for (std::size_t id = 0; id < source->count(d); ++id) {
    const SimplexRef& s = images[static_cast<std::size_t>(d)][id];
    if (!s.degenerate()) m(s.base, id) += 1;
  }
  return m;
}

SimplicialMap SimplicialMap::from_json(const SimplicialSet& source, const SimplicialSet& target,
                                       const nlohmann::json& j) {
  SimplicialMap f;
  f.source = &source;
  f.target = &target;
  for (int d = 1; d <= 3; ++d) {
    const std::string key = std::to_string(d);
    for (std::size_t id = 0; id < source.count(d); ++id) {
      const std::string& nm = source.name(d, id);
      if (!j.contains(key) || !j.at(key).contains(nm))
        throw ValidationError("simplicial map leaves '" + nm + "' unmapped");
      f.images[static_cast<std::size_t>(d)].push_back(target.parse_ref(d, j.at(key).at(nm).get<std::string>()));
    }
  }
  f.validate();
  return f;
}

PseudoHomeoVerdict pseudo_homeo_check(const SimplicialMap& f) {
  f.validate();
  const SimplicialSet& x = *f.source;
  const SimplicialSet& y = *f.target;
  ChainComplex cx = chain_complex(x), cy = chain_complex(y);
  IntMatrix phi1 = f.chain_map(1), phi2 = f.chain_map(2);
  PseudoHomeoVerdict v;

  Lattice b1x(cx.boundary[2]), b1y(cy.boundary[2]);
  AbelianPresentation h1y = cokernel_presentation(cy.ranks[1], b1y);
  v.h1_iso = check_induced_isomorphism(b1x, h1y, h1y.projection() * phi1).is_iso();

  Lattice z2x = kernel_lattice(cx.boundary[2]), z2y = kernel_lattice(cy.boundary[2]);
  Lattice b2y(cy.ranks[3] ? cy.boundary[3] : IntMatrix(cy.ranks[2], 0));
  v.h2_epi = lattice_equal(lattice_sum(lattice_image(phi2, z2x), b2y), z2y);
  v.is_pseudo_homeo = v.h1_iso && v.h2_epi;

  v.cond_h1_surjective = lattice_sum(Lattice(phi1), b1y).is_full();
  v.cond_h1_injective = lattice_equal(lattice_preimage(phi1, b1y), b1x);
  v.cond_h2_surjective = v.h2_epi;

  IntMatrix d1x = cx.boundary[2].transpose(), d1y = cy.boundary[2].transpose();
  Lattice z1x = kernel_lattice(d1x), z1y = kernel_lattice(d1y);
  Lattice pulled = lattice_image(phi1.transpose(), z1y);
  v.cohomology_h1_iso = lattice_equal(pulled, z1x) && pulled.rank() == z1y.rank();
  IntMatrix d2y = cy.ranks[3] ? cy.boundary[3].transpose() : IntMatrix(0, cy.ranks[2]);
  Lattice z2cy = kernel_lattice(d2y);
  Lattice b2cx(d1x), b2cy(d1y);
  v.cohomology_h2_mono =
      lattice_equal(lattice_intersection(lattice_preimage(phi2.transpose(), b2cx), z2cy), b2cy);
  return v;
}

}  // namespace trimassey
