#include "tricat/rtstruct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tricat {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::yes:
      return "yes";
    case Decision::no:
      return "no";
    case Decision::undecided:
      return "undecided";
  }
  return "?";
}

bool well_formed(const Category& c, const Triangle& t) {
  auto same = [](const Obj& x, const Obj& y) { return x.summands == y.summands; };
  return same(t.f.src, t.A) && same(t.f.tgt, t.B) && same(t.g.src, t.B) && same(t.g.tgt, t.C) && same(t.h.src, t.C) &&
         same(t.h.tgt, c.shift(t.A)) && t.f.coords.size() == c.hom_dim(t.A, t.B) &&
         t.g.coords.size() == c.hom_dim(t.B, t.C) && t.h.coords.size() == c.hom_dim(t.C, c.shift(t.A));
}

nlohmann::json to_json(const Category& c, const Triangle& t) {
  return {{"A", to_json(c, t.A)}, {"B", to_json(c, t.B)}, {"C", to_json(c, t.C)},
          {"f", to_json(c, t.f)}, {"g", to_json(c, t.g)}, {"h", to_json(c, t.h)}};
}

std::string describe(const Category& c, const Triangle& t) {
  return c.describe(t.A) + " -> " + c.describe(t.B) + " -> " + c.describe(t.C) + " -> T(" + c.describe(t.A) + ")";
}

Triangle rotate(const Category& c, const Triangle& t) {
  return {t.B, t.C, c.shift(t.A), t.g, t.h, c.neg(c.shift(t.f))};
}

Triangle trivial_triangle(const Category& c, const Obj& a) {
  const Obj zero;
  return {zero, a, a, c.zero(zero, a), c.identity(a), c.zero(a, c.shift(zero))};
}

Triangle direct_sum_triangle(const Category& c, const Obj& a, const Obj& b) {
  auto bp = direct_sum(c, a, b);
  return {a, bp.sum, b, bp.inject_x, bp.project_y, c.zero(b, c.shift(a))};
}

Triangle triangle_sum(const Category& c, const Triangle& s, const Triangle& t) {
  return {s.A + t.A, s.B + t.B, s.C + t.C, c.diagonal({s.f, t.f}), c.diagonal({s.g, t.g}), c.diagonal({s.h, t.h})};
}

Triangle conjugate(const Category& c, const Triangle& t, const Mor& a, const Mor& b, const Mor& cc) {
  auto ai = c.inverse(a), bi = c.inverse(b), ci = c.inverse(cc);
  if (!ai || !bi || !ci) throw std::invalid_argument("conjugate: components must be invertible");
  return {a.tgt,
          b.tgt,
          cc.tgt,
          c.compose(b, t.f, *ai),
          c.compose(cc, t.g, *bi),
          c.compose(c.shift(a), t.h, *ci)};
}

LinearSystem::LinearSystem(const Category& c, std::vector<HomSlot> unknowns) : c_(c), slots_(std::move(unknowns)) {
  for (const auto& s : slots_) {
    offsets_.push_back(width_);
    width_ += c_.hom_dim(s.src, s.tgt);
  }
}

void LinearSystem::add_equation(const Obj& src, const Obj& tgt, const std::vector<Term>& terms) {
  add_equation(src, tgt, terms, c_.zero(src, tgt));
}

void LinearSystem::add_equation(const Obj& src, const Obj& tgt, const std::vector<Term>& terms, const Mor& rhs) {
  const Field& k = c_.field();
  const auto d = c_.hom_dim(src, tgt);
  const auto first = rows_.size();
  rows_.resize(first + d, Vec(width_, 0));
  for (const auto& [slot, fn] : terms) {
    const auto basis = c_.hom_basis(slots_[slot].src, slots_[slot].tgt);
    for (std::size_t e = 0; e < basis.size(); ++e) {
      const Mor img = fn(basis[e]);
      if (img.coords.size() != d) throw std::invalid_argument("linear system: term lands in the wrong hom space");
      for (std::size_t r = 0; r < d; ++r) {
        auto& cell = rows_[first + r][offsets_[slot] + e];
        cell = k.add(cell, img.coords[r]);
      }
    }
  }
  rhs_.insert(rhs_.end(), rhs.coords.begin(), rhs.coords.end());
}

std::optional<la::Solution<Field>> LinearSystem::solve() const {
  Mat m(c_.field(), rows_.size(), width_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t col = 0; col < width_; ++col) m(r, col) = rows_[r][col];
  return la::solve(m, rhs_);
}

SextupleIso sextuple_isomorphic(const Category& c, const Triangle& t1, const Triangle& t2, Rng& rng,
                                const SearchBudget& budget) {
  SextupleIso out;
  if (!(t1.A == t2.A) || !(t1.B == t2.B) || !(t1.C == t2.C)) return out;
  LinearSystem sys(c, {{t1.A, t2.A}, {t1.B, t2.B}, {t1.C, t2.C}});
  sys.add_equation(t1.A, t2.B,
                   {{1, [&](const Mor& b) { return c.compose(b, t1.f); }},
                    {0, [&](const Mor& a) { return c.neg(c.compose(t2.f, a)); }}});
  sys.add_equation(t1.B, t2.C,
                   {{2, [&](const Mor& cc) { return c.compose(cc, t1.g); }},
                    {1, [&](const Mor& b) { return c.neg(c.compose(t2.g, b)); }}});
  sys.add_equation(t1.C, c.shift(t2.A),
                   {{0, [&](const Mor& a) { return c.compose(c.shift(a), t1.h); }},
                    {2, [&](const Mor& cc) { return c.neg(c.compose(t2.h, cc)); }}});
  auto sol = sys.solve();
  auto found = find_invertible(c, sys.unknowns(), sol->particular, sol->nullspace.basis(), rng, budget);
  if (found.status == SearchStatus::undecided) out.decision = Decision::undecided;
  if (found.status != SearchStatus::found) return out;
  auto parts = sys.split(found.point);
  out.decision = Decision::yes;
  out.a = parts[0];
  out.b = parts[1];
  out.c = parts[2];
  return out;
}

ArrowIso arrow_isomorphic(const Category& c, const Mor& f1, const Mor& f2, Rng& rng, const SearchBudget& budget) {
  ArrowIso out;
  if (!(f1.src == f2.src) || !(f1.tgt == f2.tgt)) return out;
  LinearSystem sys(c, {{f1.src, f2.src}, {f1.tgt, f2.tgt}});
  sys.add_equation(f1.src, f2.tgt,
                   {{1, [&](const Mor& b) { return c.compose(b, f1); }},
                    {0, [&](const Mor& a) { return c.neg(c.compose(f2, a)); }}});
  auto sol = sys.solve();
  auto found = find_invertible(c, sys.unknowns(), sol->particular, sol->nullspace.basis(), rng, budget);
  if (found.status == SearchStatus::undecided) out.decision = Decision::undecided;
  if (found.status != SearchStatus::found) return out;
  auto parts = sys.split(found.point);
  out.decision = Decision::yes;
  out.a = parts[0];
  out.b = parts[1];
  return out;
}

namespace {

std::vector<int> counts(const Category& c, const Obj& x) {
  std::vector<int> v(c.size(), 0);
  for (int s : x.summands) ++v[static_cast<std::size_t>(s)];
  return v;
}

bool zero_triangle(const Triangle& t) { return t.A.is_zero() && t.B.is_zero() && t.C.is_zero(); }

}  // namespace

Triangulation::Triangulation(CategoryPtr c, std::vector<Triangle> generators, std::size_t rank_bound,
                             ConeFunction cone)
    : c_(std::move(c)), generators_(std::move(generators)), rank_bound_(rank_bound), cone_(std::move(cone)) {
  if (rank_bound_ < 1) throw std::invalid_argument("rank bound must be at least 1");
  for (const auto& g : generators_) {
    if (!well_formed(*c_, g)) throw std::invalid_argument("generator is not a well-formed sextuple: " + describe(*c_, g));
  }
  // Rotating six times returns to T^2 of the start, which is enough to
  // close up the rotation orbits of the fixtures; deeper rotations of a
  // sum are sums of rotations.
  Rng rng(0);
  for (const auto& g : generators_) {
    Triangle t = g;
    for (int depth = 0; depth <= 6; ++depth) {
      if (!zero_triangle(t)) {
        bool seen = false;
        for (const auto& a : atoms_) {
          if (sextuple_isomorphic(*c_, a, t, rng).decision == Decision::yes) {
            seen = true;
            break;
          }
        }
        if (!seen) atoms_.push_back(t);
      }
      t = rotate(*c_, t);
    }
  }
}

std::vector<std::vector<std::size_t>> Triangulation::atom_combinations(const Obj& a, const Obj& b,
                                                                        const Obj* cc) const {
  const Category& c = *c_;
  std::vector<int> target = counts(c, a);
  auto tb = counts(c, b);
  target.insert(target.end(), tb.begin(), tb.end());
  if (cc) {
    auto tc = counts(c, *cc);
    target.insert(target.end(), tc.begin(), tc.end());
  }
  std::vector<std::vector<int>> atom_counts;
  for (const auto& t : atoms_) {
    auto v = counts(c, t.A);
    auto vb = counts(c, t.B);
    v.insert(v.end(), vb.begin(), vb.end());
    if (cc) {
      auto vc = counts(c, t.C);
      v.insert(v.end(), vc.begin(), vc.end());
    }
    atom_counts.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  const std::size_t cap = 4096;
  std::function<void(std::size_t, std::vector<int>&)> rec = [&](std::size_t start, std::vector<int>& rest) {
    if (out.size() >= cap) return;
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < atoms_.size(); ++i) {
      const auto& v = atom_counts[i];
      if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;  // atom invisible in these counts
      bool fits = true;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] > rest[k]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (std::size_t k = 0; k < v.size(); ++k) rest[k] -= v[k];
      current.push_back(i);
      rec(i, rest);
      current.pop_back();
      for (std::size_t k = 0; k < v.size(); ++k) rest[k] += v[k];
    }
  };
  rec(0, target);
  return out;
}

Triangle Triangulation::combine(const std::vector<std::size_t>& combo) const {
  Triangle t = trivial_triangle(*c_, Obj{});
  for (auto i : combo) t = triangle_sum(*c_, t, atoms_[i]);
  return t;
}

SextupleIso Triangulation::distinguished_witness(const Triangle& t, Rng& rng) const {
  const Category& c = *c_;
  if (!well_formed(c, t)) return {};
  if (cone_) {
    auto ct = cone_(t.f);
    if (!ct) return {Decision::undecided, {}, {}, {}};
    return sextuple_isomorphic(c, *ct, t, rng);
  }
  if (zero_triangle(t)) {
    const Obj z;
    return {Decision::yes, c.zero(z, z), c.zero(z, z), c.zero(z, z)};
  }
  bool undecided = false;
  for (const auto& combo : atom_combinations(t.A, t.B, &t.C)) {
    auto r = sextuple_isomorphic(c, combine(combo), t, rng);
    if (r.decision == Decision::yes) return r;
    if (r.decision == Decision::undecided) undecided = true;
  }
  // Sums of atoms only reach first morphisms of the generated sizes.
  if (t.A.rank() > rank_bound_ || t.B.rank() > rank_bound_) undecided = true;
  return {undecided ? Decision::undecided : Decision::no, {}, {}, {}};
}

Decision Triangulation::is_distinguished(const Triangle& t, Rng& rng) const {
  return distinguished_witness(t, rng).decision;
}

Extension Triangulation::extend_morphism(const Mor& f, Rng& rng) const {
  const Category& c = *c_;
  if (cone_) {
    auto ct = cone_(f);
    if (!ct) return {Decision::undecided, {}};
    return {Decision::yes, *ct};
  }
  if (f.src.is_zero() && f.tgt.is_zero()) return {Decision::yes, trivial_triangle(c, Obj{})};
  bool undecided = false;
  for (const auto& combo : atom_combinations(f.src, f.tgt, nullptr)) {
    Triangle s = combine(combo);
    auto iso = arrow_isomorphic(c, f, s.f, rng);
    if (iso.decision == Decision::undecided) undecided = true;
    if (iso.decision != Decision::yes) continue;
    auto ainv = c.inverse(iso.a);
    Triangle out{f.src, f.tgt, s.C, f, c.compose(s.g, iso.b), c.compose(c.shift(*ainv), s.h)};
    return {Decision::yes, out};
  }
  if (f.src.rank() > rank_bound_ || f.tgt.rank() > rank_bound_) undecided = true;
  return {undecided ? Decision::undecided : Decision::no, {}};
}

const std::vector<Triangle>& Triangulation::representatives(Rng& rng) const {
  if (representatives_) return *representatives_;
  std::vector<Triangle> out;
  const auto objs = c_->objects_up_to_rank(rank_bound_);
  for (const auto& x : objs)
    for (const auto& y : objs) {
      auto orbits = arrow_orbits(*c_, x, y);
      if (!orbits) continue;
      for (const auto& f : *orbits) {
        auto e = extend_morphism(f, rng);
        if (e.decision == Decision::yes) out.push_back(e.triangle);
      }
    }
  representatives_ = std::move(out);
  return *representatives_;
}

std::optional<std::vector<Mor>> arrow_orbits(const Category& c, const Obj& x, const Obj& y, std::uint64_t limit) {
  const auto d = c.hom_dim(x, y);
  std::vector<Vec> unit;
  for (std::size_t i = 0; i < d; ++i) {
    Vec u(d, 0);
    u[i] = 1;
    unit.push_back(u);
  }
  auto all = enumerate_affine(c.field(), Vec(d, 0), unit, limit);
  if (!all) return std::nullopt;
  auto ax = automorphism_group(c, x, limit);
  auto ay = automorphism_group(c, y, limit);
  if (!ax || !ay) return std::nullopt;
  // Linear actions on Hom(x, y): h -> h a and h -> b h.
  std::vector<Mat> pre, post;
  for (const auto& a : *ax) pre.push_back(c.precompose_matrix(a, y));
  for (const auto& b : *ay) post.push_back(c.postcompose_matrix(b, x));
  std::set<Vec> visited;
  std::vector<Mor> reps;
  for (const auto& v : *all) {
    if (visited.count(v)) continue;
    reps.push_back(c.from_coords(x, y, v));
    std::set<Vec> right;
    for (const auto& m : pre) right.insert(m.apply(v));
    for (const auto& w : right)
      for (const auto& m : post) visited.insert(m.apply(w));
  }
  return reps;
}

std::optional<Mor> complete_morphism(const Category& c, const Triangle& t1, const Triangle& t2, const Mor& a,
                                     const Mor& b) {
  if (!c.equal(c.compose(b, t1.f), c.compose(t2.f, a))) {
    throw std::invalid_argument("complete_morphism: left square does not commute");
  }
  LinearSystem sys(c, {{t1.C, t2.C}});
  sys.add_equation(t1.B, t2.C, {{0, [&](const Mor& cc) { return c.compose(cc, t1.g); }}}, c.compose(t2.g, b));
  sys.add_equation(t1.C, c.shift(t2.A), {{0, [&](const Mor& cc) { return c.compose(t2.h, cc); }}},
                   c.compose(c.shift(a), t1.h));
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return sys.split(sol->particular)[0];
}

Octahedron octahedron(const Triangulation& s, const Triangle& txy, const Triangle& tyu, const Triangle& txu, Rng& rng,
                      const SearchBudget& budget) {
  const Category& c = s.category();
  Octahedron out;
  const Obj &Z = txy.C, &W = txu.C, &V = tyu.C;
  const Mor &a = txy.f, &b = txy.g, &cz = txy.h;
  const Mor &d = tyu.f, &e = tyu.g, &f = tyu.h;
  const Mor &g = txu.g, &h = txu.h;
  LinearSystem sys(c, {{Z, W}, {W, V}});
  sys.add_equation(txy.B, W, {{0, [&](const Mor& l) { return c.compose(l, b); }}}, c.compose(g, d));
  sys.add_equation(Z, c.shift(txy.A), {{0, [&](const Mor& l) { return c.compose(h, l); }}}, cz);
  sys.add_equation(tyu.B, V, {{1, [&](const Mor& i) { return c.compose(i, g); }}}, e);
  sys.add_equation(W, c.shift(tyu.A), {{1, [&](const Mor& i) { return c.compose(f, i); }}},
                   c.compose(c.shift(a), h));
  auto sol = sys.solve();
  if (!sol) return out;
  const Mor connecting = c.compose(c.shift(b), f);
  auto try_point = [&](const Vec& p) {
    auto parts = sys.split(p);
    Triangle column{Z, W, V, parts[0], parts[1], connecting};
    auto r = s.is_distinguished(column, rng);
    if (r == Decision::yes) {
      out.decision = Decision::yes;
      out.l = parts[0];
      out.i = parts[1];
      out.column = column;
      return true;
    }
    if (r == Decision::undecided) out.decision = Decision::undecided;
    return false;
  };
  const auto dirs = sol->nullspace.basis();
  auto all = enumerate_affine(c.field(), sol->particular, dirs, budget.enumerate_limit);
  if (all) {
    for (const auto& p : *all)
      if (try_point(p)) return out;
    return out;
  }
  if (try_point(sol->particular)) return out;
  for (std::size_t k = 0; k < budget.samples; ++k) {
    Vec p = sol->particular;
    for (const auto& dir : dirs) {
      const auto coef = static_cast<Scalar>(rng() % c.field().characteristic());
      for (std::size_t t = 0; t < p.size(); ++t) p[t] = c.field().add(p[t], c.field().mul(coef, dir[t]));
    }
    if (try_point(p)) return out;
  }
  out.decision = Decision::undecided;
  return out;
}

std::string to_string(Level l) {
  switch (l) {
    case Level::tr0:
      return "tr0";
    case Level::tr1:
      return "tr1";
    case Level::tr2:
      return "tr2";
    case Level::tr3:
      return "tr3";
    case Level::tr4:
      return "tr4";
    case Level::tr5:
      return "tr5";
    case Level::exactness:
      return "exactness";
    case Level::derotation:
      return "derotation";
    case Level::third_iso:
      return "third-iso";
  }
  return "?";
}

std::optional<Level> parse_level(const std::string& s) {
  for (auto l : all_levels())
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::vector<Level> all_levels() {
  return {Level::tr0, Level::tr1,       Level::tr2,        Level::tr3,    Level::tr4,
          Level::tr5, Level::exactness, Level::derotation, Level::third_iso};
}

namespace {

void record(CheckResult& r, Decision d, const std::string& what, const nlohmann::json& witness) {
  if (d == Decision::no) r.fail(what, witness);
  if (d == Decision::undecided) r.undecided(what);
}

void check_composites_vanish(const Category& c, const Triangle& t, CheckResult& r) {
  if (!c.is_zero(c.compose(t.g, t.f)) || !c.is_zero(c.compose(t.h, t.g))) {
    r.fail("consecutive composites of a distinguished triangle are not zero", to_json(c, t));
  }
}

CheckResult check_tr0(const Triangulation& s, Rng& rng, std::size_t samples) {
  const Category& c = s.category();
  CheckResult r{"TR(0) closed under isomorphism"};
  for (const auto& t : s.representatives(rng)) {
    for (std::size_t k = 0; k < samples; ++k) {
      auto a = c.random_automorphism(t.A, rng);
      auto b = c.random_automorphism(t.B, rng);
      auto cc = c.random_automorphism(t.C, rng);
      if (!a || !b || !cc) continue;
      ++r.cases;
      Triangle u = conjugate(c, t, *a, *b, *cc);
      record(r, s.is_distinguished(u, rng), "conjugate of a distinguished triangle is not distinguished",
             to_json(c, u));
    }
  }
  return r;
}

CheckResult check_tr1(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"TR(1) trivial triangles"};
  for (const auto& x : c.objects_up_to_rank(s.rank_bound())) {
    ++r.cases;
    Triangle t = trivial_triangle(c, x);
    record(r, s.is_distinguished(t, rng), "0 -> A -> A -> 0 is not distinguished for A = " + c.describe(x),
           to_json(c, t));
  }
  return r;
}

CheckResult check_tr2(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"TR(2) every morphism extends"};
  const auto objs = c.objects_up_to_rank(s.rank_bound());
  for (const auto& x : objs)
    for (const auto& y : objs) {
      auto orbits = arrow_orbits(c, x, y);
      if (!orbits) {
        r.undecided("Hom(" + c.describe(x) + ", " + c.describe(y) + ") too large to enumerate");
        continue;
      }
      for (const auto& f : *orbits) {
        ++r.cases;
        auto e = s.extend_morphism(f, rng);
        record(r, e.decision, "no distinguished triangle on " + c.describe(x) + " -> " + c.describe(y),
               to_json(c, f));
        if (e.decision == Decision::yes) {
          if (!c.equal(e.triangle.f, f)) r.fail("extension changed the first morphism", to_json(c, e.triangle));
          check_composites_vanish(c, e.triangle, r);
        }
      }
    }
  return r;
}

CheckResult check_tr3(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"TR(3) rotation"};
  for (const auto& t : s.representatives(rng)) {
    ++r.cases;
    Triangle u = rotate(c, t);
    record(r, s.is_distinguished(u, rng), "rotation of " + describe(c, t) + " is not distinguished", to_json(c, u));
  }
  return r;
}

// Dimension of {(a, b, c)} commuting with both triangles, of {(a, b)} with a
// commuting left square, and of {c : c g1 = 0, h2 c = 0}.
CheckResult check_tr4(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"TR(4) completion of morphisms"};
  const auto& reps = s.representatives(rng);
  for (const auto& t1 : reps)
    for (const auto& t2 : reps) {
      ++r.cases;
      LinearSystem left(c, {{t1.A, t2.A}, {t1.B, t2.B}});
      left.add_equation(t1.A, t2.B,
                        {{1, [&](const Mor& b) { return c.compose(b, t1.f); }},
                         {0, [&](const Mor& a) { return c.neg(c.compose(t2.f, a)); }}});
      LinearSystem full(c, {{t1.A, t2.A}, {t1.B, t2.B}, {t1.C, t2.C}});
      full.add_equation(t1.A, t2.B,
                        {{1, [&](const Mor& b) { return c.compose(b, t1.f); }},
                         {0, [&](const Mor& a) { return c.neg(c.compose(t2.f, a)); }}});
      full.add_equation(t1.B, t2.C,
                        {{2, [&](const Mor& cc) { return c.compose(cc, t1.g); }},
                         {1, [&](const Mor& b) { return c.neg(c.compose(t2.g, b)); }}});
      full.add_equation(t1.C, c.shift(t2.A),
                        {{0, [&](const Mor& a) { return c.compose(c.shift(a), t1.h); }},
                         {2, [&](const Mor& cc) { return c.neg(c.compose(t2.h, cc)); }}});
      LinearSystem fibre(c, {{t1.C, t2.C}});
      fibre.add_equation(t1.B, t2.C, {{0, [&](const Mor& cc) { return c.compose(cc, t1.g); }}});
      fibre.add_equation(t1.C, c.shift(t2.A), {{0, [&](const Mor& cc) { return c.compose(t2.h, cc); }}});
      const auto dl = left.solve()->nullspace.dim();
      const auto df = full.solve()->nullspace.dim();
      const auto dc = fibre.solve()->nullspace.dim();
      if (df - dc != dl) {
        r.fail("some commuting square (a, b) has no completion between " + describe(c, t1) + " and " +
                   describe(c, t2),
               {{"source", to_json(c, t1)}, {"target", to_json(c, t2)}});
      }
    }
  return r;
}

// Automorphisms y of Y for which y a = a x for some automorphism x of X.
std::vector<Mor> stabilizer_image(const Category& c, const Mor& a, const std::vector<Mor>& aut_x,
                                  const std::vector<Mor>& aut_y) {
  std::set<Vec> right;
  for (const auto& x : aut_x) right.insert(c.compose(a, x).coords);
  std::vector<Mor> out;
  for (const auto& y : aut_y)
    if (right.count(c.compose(y, a).coords)) out.push_back(y);
  return out;
}

CheckResult check_tr5(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"TR(5) octahedral axiom"};
  const std::uint64_t limit = 1U << 12U;
  const auto objs = c.objects_up_to_rank(s.rank_bound());
  std::map<std::vector<int>, std::vector<Mor>> aut;
  for (const auto& x : objs) {
    auto g = automorphism_group(c, x, limit);
    if (g) aut[x.summands] = *g;
  }
  for (const auto& X : objs)
    for (const auto& Y : objs) {
      auto aorb = arrow_orbits(c, X, Y, limit);
      if (!aorb || !aut.count(X.summands) || !aut.count(Y.summands)) {
        r.undecided("Hom(" + c.describe(X) + ", " + c.describe(Y) + ") too large to enumerate");
        continue;
      }
      for (const auto& a : *aorb) {
        auto ea = s.extend_morphism(a, rng);
        if (ea.decision != Decision::yes) {
          r.undecided("no triangle on a first morphism");
          continue;
        }
        auto stab = stabilizer_image(c, a, aut[X.summands], aut[Y.summands]);
        for (const auto& U : objs) {
          if (!aut.count(U.summands)) continue;
          const auto d_dim = c.hom_dim(Y, U);
          std::vector<Vec> unit;
          for (std::size_t i = 0; i < d_dim; ++i) {
            Vec u(d_dim, 0);
            u[i] = 1;
            unit.push_back(u);
          }
          auto all = enumerate_affine(c.field(), Vec(d_dim, 0), unit, limit);
          if (!all) {
            r.undecided("Hom(" + c.describe(Y) + ", " + c.describe(U) + ") too large to enumerate");
            continue;
          }
          std::vector<Mat> pre, post;
          for (const auto& y : stab) pre.push_back(c.precompose_matrix(y, U));
          for (const auto& u : aut[U.summands]) post.push_back(c.postcompose_matrix(u, Y));
          std::set<Vec> visited;
          for (const auto& v : *all) {
            if (visited.count(v)) continue;
            std::set<Vec> right;
            for (const auto& m : pre) right.insert(m.apply(v));
            for (const auto& w : right)
              for (const auto& m : post) visited.insert(m.apply(w));
            const Mor d = c.from_coords(Y, U, v);
            ++r.cases;
            auto ed = s.extend_morphism(d, rng);
            auto eda = s.extend_morphism(c.compose(d, a), rng);
            if (ed.decision != Decision::yes || eda.decision != Decision::yes) {
              r.undecided("no triangle on d or d a");
              continue;
            }
            auto oct = octahedron(s, ea.triangle, ed.triangle, eda.triangle, rng, {1U << 12U, 256});
            record(r, oct.decision,
                   "no octahedral completion for " + c.describe(X) + " -> " + c.describe(Y) + " -> " +
                       c.describe(U),
                   {{"a", to_json(c, a)}, {"d", to_json(c, d)}});
          }
        }
      }
    }
  return r;
}

// Exactness of Hom(A,E) <- Hom(B,E) <- Hom(C,E) at the middle term.
bool exact_at_middle(const Category& c, const Mor& f, const Mor& g, const Obj& e) {
  Mat pf = c.precompose_matrix(f, e);  // Hom(B,E) -> Hom(A,E)
  Mat pg = c.precompose_matrix(g, e);  // Hom(C,E) -> Hom(B,E)
  if (!(pf * pg).is_zero()) return false;
  return la::rank(pg) + la::rank(pf) == c.hom_dim(f.tgt, e);
}

CheckResult check_third_iso(const Triangulation& s, Rng& rng, std::size_t samples) {
  const Category& c = s.category();
  CheckResult r{"two isomorphisms imply the third"};
  const auto& reps = s.representatives(rng);
  if (reps.empty()) return r;
  std::size_t attempts = 0;
  while (r.cases < samples && attempts < samples * 50) {
    ++attempts;
    const auto& t1 = reps[rng() % reps.size()];
    auto a0 = c.random_automorphism(t1.A, rng);
    auto b0 = c.random_automorphism(t1.B, rng);
    auto c0 = c.random_automorphism(t1.C, rng);
    if (!a0 || !b0 || !c0) continue;
    const Triangle t2 = conjugate(c, t1, *a0, *b0, *c0);
    LinearSystem left(c, {{t1.A, t2.A}, {t1.B, t2.B}});
    left.add_equation(t1.A, t2.B,
                      {{1, [&](const Mor& b) { return c.compose(b, t1.f); }},
                       {0, [&](const Mor& a) { return c.neg(c.compose(t2.f, a)); }}});
    auto sol = left.solve();
    Vec p = sol->particular;
    for (const auto& dir : sol->nullspace.basis()) {
      const auto coef = static_cast<Scalar>(rng() % c.field().characteristic());
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = c.field().add(p[k], c.field().mul(coef, dir[k]));
    }
    auto ab = left.split(p);
    if (!c.is_invertible(ab[0]) || !c.is_invertible(ab[1])) continue;
    ++r.cases;
    auto cc = complete_morphism(c, t1, t2, ab[0], ab[1]);
    if (!cc) {
      r.fail("no completion of a commuting square", {{"source", to_json(c, t1)}, {"target", to_json(c, t2)}});
      continue;
    }
    if (!c.is_invertible(*cc)) {
      r.fail("completion of two isomorphisms is not an isomorphism",
             {{"source", to_json(c, t1)}, {"target", to_json(c, t2)}, {"c", to_json(c, *cc)}});
    }
  }
  if (r.cases < samples) r.undecided("only " + std::to_string(r.cases) + " triangle morphisms sampled");
  return r;
}

}  // namespace

CheckResult check_exactness(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"long exact Hom sequence"};
  for (const auto& t0 : s.representatives(rng)) {
    Triangle t = t0;
    for (int depth = 0; depth <= 3; ++depth) {
      for (int e = 0; e < static_cast<int>(c.size()); ++e) {
        ++r.cases;
        const Obj E = c.indecomposable(e);
        if (!exact_at_middle(c, t.f, t.g, E)) {
          r.fail("Hom(-, " + c.name(e) + ") not exact at B after " + std::to_string(depth) + " rotations",
                 {{"triangle", to_json(c, t)}, {"object", c.name(e)}});
        }
      }
      t = rotate(c, t);
    }
  }
  return r;
}

CheckResult check_derotation(const Triangulation& s, Rng& rng) {
  const Category& c = s.category();
  CheckResult r{"derotation"};
  const auto objs = c.objects_up_to_rank(s.rank_bound());
  for (const auto& tp : s.representatives(rng)) {
    // tp = (B, C, X, g, h, k)
    const Obj &B = tp.A, &C = tp.B, &X = tp.C;
    for (const auto& A : objs) {
      const Obj TA = c.shift(A);
      auto pi = c.permutation(TA, X);
      if (!pi) continue;
      auto pinv = c.permutation(X, TA);
      const Mor target = c.neg(c.compose(tp.h, *pi));  // T f = -(k pi)
      Mat m = c.functor_matrix(c.presentation().shift, A, B);
      auto sol = la::solve(m, target.coords);
      if (!sol) continue;
      auto fam = enumerate_affine(c.field(), sol->particular, sol->nullspace.basis(), 1U << 12U);
      std::vector<Vec> points;
      if (fam) {
        points = std::move(*fam);
      } else {
        r.undecided("preimages of a connecting map sampled, not enumerated");
        for (int k = 0; k < 64; ++k) {
          Vec p = sol->particular;
          for (const auto& dir : sol->nullspace.basis()) {
            const auto coef = static_cast<Scalar>(rng() % c.field().characteristic());
            for (std::size_t q = 0; q < p.size(); ++q) p[q] = c.field().add(p[q], c.field().mul(coef, dir[q]));
          }
          points.push_back(std::move(p));
        }
      }
      for (auto& p : points) {
        ++r.cases;
        Triangle cand{A, B, C, c.from_coords(A, B, p), tp.f, c.compose(*pinv, tp.g)};
        record(r, s.is_distinguished(cand, rng),
               "derotation of " + describe(c, tp) + " is not distinguished", to_json(c, cand));
      }
    }
  }
  return r;
}

CheckResult check_derotation_consistency(const Triangulation& s, const CheckResult& derotation) {
  const Category& c = s.category();
  CheckResult r{"derotation implies T faithful"};
  const auto objs = c.objects_up_to_rank(s.rank_bound());
  std::vector<std::pair<Obj, Obj>> pairs;
  for (const auto& x : objs)
    for (const auto& y : objs) pairs.emplace_back(x, y);
  r.cases = pairs.size();
  const bool faithful = functor_faithful_on(c, c.presentation().shift, pairs);
  if (!faithful) r.note("T is not faithful within the rank bound");
  if (derotation.verdict == Verdict::pass && !faithful) {
    r.fail("derotation passed but T is not faithful; the triangle store is inconsistent");
  }
  return r;
}

Report check_axioms(const Triangulation& s, const AxiomOptions& opt) {
  Report rep{"axioms"};
  Rng rng(opt.seed);
  auto want = [&](Level l) { return std::find(opt.levels.begin(), opt.levels.end(), l) != opt.levels.end(); };
  const std::string bound = "rank bound " + std::to_string(s.rank_bound());
  auto add = [&](CheckResult r) {
    r.note(bound);
    rep.add(std::move(r));
  };
  if (want(Level::tr0)) add(check_tr0(s, rng, opt.tr0_samples));
  if (want(Level::tr1)) add(check_tr1(s, rng));
  if (want(Level::tr2)) add(check_tr2(s, rng));
  if (want(Level::tr3)) add(check_tr3(s, rng));
  if (want(Level::tr4)) add(check_tr4(s, rng));
  if (want(Level::tr5)) add(check_tr5(s, rng));
  if (want(Level::exactness)) add(check_exactness(s, rng));
  if (want(Level::derotation)) {
    auto d = check_derotation(s, rng);
    auto cons = check_derotation_consistency(s, d);
    add(std::move(d));
    add(std::move(cons));
  }
  if (want(Level::third_iso)) add(check_third_iso(s, rng, opt.third_iso_samples));
  return rep;
}

}  // namespace tricat
