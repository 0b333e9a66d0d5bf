#include "tricat/quotient.hpp"

#include "tricat/validate.hpp"

namespace tricat {

namespace {

Triangle zero_sum() { return {Obj{}, Obj{}, Obj{}, Mor{}, Mor{}, Mor{}}; }

Mor solve_one(const Category& c, const HomSlot& slot, const Obj& src, const Obj& tgt,
              const std::function<Mor(const Mor&)>& lhs, const Mor& rhs, const std::string& what) {
  LinearSystem sys(c, {slot});
  sys.add_equation(src, tgt, {{0, lhs}}, rhs);
  auto sol = sys.solve();
  if (!sol) throw QuotientError(what);
  return sys.split(sol->particular)[0];
}

}  // namespace

Quotient::Quotient(std::shared_ptr<const Triangulation> base, Subcat z, Subcat d, SigmaChoice choice,
                   std::uint64_t seed)
    : s_(std::move(base)), z_(std::move(z)), d_(std::move(d)) {
  const Category& c = this->base();
  if (!z_.includes(d_)) throw QuotientError("D is not contained in Z");
  index_.assign(c.size(), -1);
  for (int m : z_.members) {
    if (d_.contains(m)) continue;
    const Obj o = c.indecomposable(m);
    // 1_M in [D](M, M) makes M a zero object of the quotient.
    if (ideal_subspace(c, d_, o, o).contains(c.identity(o).coords)) continue;
    index_[static_cast<std::size_t>(m)] = static_cast<int>(kept_.size());
    kept_.push_back(m);
  }
  const int n = static_cast<int>(kept_.size());
  ideal_.resize(static_cast<std::size_t>(n * n));
  free_.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ideal_[pair(i, j)] = ideal_subspace(c, d_, c.indecomposable(kept_[static_cast<std::size_t>(i)]),
                                          c.indecomposable(kept_[static_cast<std::size_t>(j)]));
      free_[pair(i, j)] = ideal_[pair(i, j)].free_positions();
    }

  Rng rng(seed);
  sigma_.resize(c.size());
  for (int m : z_.members) {
    const Obj M = c.indecomposable(m);
    auto& entry = sigma_[static_cast<std::size_t>(m)];
    entry.object = m;
    if (index_[static_cast<std::size_t>(m)] < 0) {
      entry.triangle = {M, M, Obj{}, c.identity(M), c.zero(M, Obj{}), c.zero(Obj{}, c.shift(M))};
      continue;
    }
    const Mor alpha = minimize(c, left_approximation(c, M, d_), d_, Side::left);
    auto e = s_->extend_morphism(alpha, rng);
    if (e.decision != Decision::yes) throw QuotientError("no witness triangle found for " + c.name(m));
    Triangle t = e.triangle;
    if (!d_.contains(t.B) || !is_d_epic(c, t.g, d_)) {
      throw QuotientError("the triangle on the left approximation of " + c.name(m) +
                          " has no right D-approximation: " + describe(c, t));
    }
    if (!z_.contains(t.C)) {
      throw QuotientError("sigma " + c.name(m) + " = " + c.describe(t.C) + " is not in Z");
    }
    if (choice == SigmaChoice::randomized) {
      auto b = c.random_automorphism(t.B, rng);
      auto cc = c.random_automorphism(t.C, rng);
      if (b && cc) t = conjugate(c, t, c.identity(M), *b, *cc);
      if (!d_.members.empty() && rng() % 2 == 0) {
        const int extra = d_.members[rng() % d_.members.size()];
        t = triangle_sum(c, t, trivial_triangle(c, c.indecomposable(extra)));
      }
    }
    entry.triangle = std::move(t);
  }

  Presentation p;
  p.field = c.field();
  for (int m : kept_) p.names.push_back(c.name(m));
  p.hom_dim.assign(static_cast<std::size_t>(n), std::vector<std::size_t>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.hom_dim[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = free_[pair(i, j)].size();
  p.comp.resize(static_cast<std::size_t>(n * n * n));
  auto unit = [&](std::size_t dim, std::size_t k) {
    Vec v(dim, c.field().zero());
    v[k] = c.field().one();
    return v;
  };
  auto base_mor = [&](int i, int j, const Vec& q) {
    return c.from_coords(c.indecomposable(kept_[static_cast<std::size_t>(i)]),
                         c.indecomposable(kept_[static_cast<std::size_t>(j)]), lift_block(i, j, q));
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int w = 0; w < n; ++w) {
        const auto dxy = free_[pair(x, y)].size(), dyw = free_[pair(y, w)].size(), dxw = free_[pair(x, w)].size();
        Vec& s = p.structure(static_cast<std::size_t>(x), static_cast<std::size_t>(y), static_cast<std::size_t>(w));
        s.assign(dyw * dxy * dxw, c.field().zero());
        for (std::size_t g = 0; g < dyw; ++g)
          for (std::size_t f = 0; f < dxy; ++f) {
            const Mor gf = c.compose(base_mor(y, w, unit(dyw, g)), base_mor(x, y, unit(dxy, f)));
            const Vec v = project_block(x, w, gf.coords);
            for (std::size_t k = 0; k < dxw; ++k) s[(g * dxy + f) * dxw + k] = v[k];
          }
      }
  for (int i = 0; i < n; ++i) {
    const Obj o = c.indecomposable(kept_[static_cast<std::size_t>(i)]);
    p.identity.push_back(project_block(i, i, c.identity(o).coords));
  }
  p.shift.on_objects.resize(static_cast<std::size_t>(n));
  p.shift.on_homs.assign(static_cast<std::size_t>(n), std::vector<Mat>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) p.shift.on_objects[static_cast<std::size_t>(i)] = project(sigma_[static_cast<std::size_t>(kept_[static_cast<std::size_t>(i)])].triangle.C);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto dij = free_[pair(i, j)].size();
      const Obj si = sigma_triangle(c.indecomposable(kept_[static_cast<std::size_t>(i)])).C;
      const Obj sj = sigma_triangle(c.indecomposable(kept_[static_cast<std::size_t>(j)])).C;
      const Mor zero = project_unchecked(c.zero(si, sj));
      Mat m(c.field(), zero.coords.size(), dij);
      for (std::size_t k = 0; k < dij; ++k) m.set_col(k, project_unchecked(sigma_lift(base_mor(i, j, unit(dij, k)))).coords);
      p.shift.on_homs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(m);
    }
  q_ = std::make_shared<const Category>(std::move(p));
}

Vec Quotient::project_block(int i, int j, const Vec& v) const {
  const Vec r = ideal_[pair(i, j)].coset_representative(v);
  const auto& fr = free_[pair(i, j)];
  Vec out(fr.size());
  for (std::size_t t = 0; t < fr.size(); ++t) out[t] = r[fr[t]];
  return out;
}

Vec Quotient::lift_block(int i, int j, const Vec& v) const {
  const auto& fr = free_[pair(i, j)];
  Vec out(ideal_[pair(i, j)].ambient_dim(), base().field().zero());
  for (std::size_t t = 0; t < fr.size(); ++t) out[fr[t]] = v[t];
  return out;
}

Mat Quotient::projection_matrix(int i, int j) const {
  const auto dim = ideal_[pair(i, j)].ambient_dim();
  Mat m(base().field(), free_[pair(i, j)].size(), dim);
  for (std::size_t k = 0; k < dim; ++k) {
    Vec e(dim, base().field().zero());
    e[k] = base().field().one();
    m.set_col(k, project_block(i, j, e));
  }
  return m;
}

Obj Quotient::project(const Obj& x) const {
  Obj out;
  for (int s : x.summands) {
    if (!z_.contains(s)) throw std::invalid_argument(base().name(s) + " is not in Z");
    const int q = index_[static_cast<std::size_t>(s)];
    if (q >= 0) out.summands.push_back(q);
  }
  return out;
}

Obj Quotient::lift(const Obj& x) const {
  Obj out;
  for (int s : x.summands) out.summands.push_back(kept_.at(static_cast<std::size_t>(s)));
  return out;
}

Mor Quotient::project_unchecked(const Mor& f) const {
  const Category& c = base();
  Mor out{project(f.src), project(f.tgt), {}};
  for (std::size_t j = 0; j < f.tgt.rank(); ++j) {
    const int qj = index_[static_cast<std::size_t>(f.tgt.summands[j])];
    if (qj < 0) continue;
    for (std::size_t i = 0; i < f.src.rank(); ++i) {
      const int qi = index_[static_cast<std::size_t>(f.src.summands[i])];
      if (qi < 0) continue;
      const Vec v = project_block(qi, qj, c.block(f, j, i));
      out.coords.insert(out.coords.end(), v.begin(), v.end());
    }
  }
  return out;
}

Mor Quotient::project(const Mor& f) const { return project_unchecked(f); }

Mor Quotient::lift(const Mor& f) const {
  const Category& c = base();
  Mor out = c.zero(lift(f.src), lift(f.tgt));
  for (std::size_t j = 0; j < f.tgt.rank(); ++j)
    for (std::size_t i = 0; i < f.src.rank(); ++i)
      c.set_block(out, j, i, lift_block(f.src.summands[i], f.tgt.summands[j], q_->block(f, j, i)));
  return out;
}

Triangle Quotient::sigma_triangle(const Obj& m) const {
  const Category& c = base();
  Triangle t = zero_sum();
  bool first = true;
  for (int s : m.summands) {
    if (!z_.contains(s)) throw std::invalid_argument(c.name(s) + " is not in Z");
    const Triangle& e = sigma_[static_cast<std::size_t>(s)].triangle;
    t = first ? e : triangle_sum(c, t, e);
    first = false;
  }
  if (first) return {Obj{}, Obj{}, Obj{}, c.zero(Obj{}, Obj{}), c.zero(Obj{}, Obj{}), c.zero(Obj{}, Obj{})};
  return t;
}

Mor Quotient::sigma_lift(const Mor& mu) const {
  const Category& c = base();
  const Triangle tm = sigma_triangle(mu.src), tn = sigma_triangle(mu.tgt);
  const Mor g = solve_one(
      c, {tm.B, tn.B}, mu.src, tn.B, [&](const Mor& x) { return c.compose(x, tm.f); }, c.compose(tn.f, mu),
      "no g with g alpha_M = alpha_N mu");
  auto out = complete_morphism(c, tm, tn, mu, g);
  if (!out) throw QuotientError("the fixed triangles admit no completion of " + c.describe(mu.src) + " -> " +
                                c.describe(mu.tgt));
  return *out;
}

Mor Quotient::sigma(const Mor& mu) const { return project(sigma_lift(lift(mu))); }

std::optional<Triangle> Quotient::quotient_triangle(const Triangle& t, std::string* why) const {
  const Category& c = base();
  auto reject = [&](std::string r) -> std::optional<Triangle> {
    if (why) *why = std::move(r);
    return std::nullopt;
  };
  if (!z_.contains(t.A) || !z_.contains(t.B) || !z_.contains(t.C)) return reject("an object lies outside Z");
  if (!is_d_monic(c, t.f, d_)) return reject("the first morphism is not D-monic");
  const Triangle tm = sigma_triangle(t.A);
  Mor n;
  try {
    n = solve_one(
        c, {t.B, tm.B}, t.A, tm.B, [&](const Mor& x) { return c.compose(x, t.f); }, tm.f,
        "alpha_M does not factor through the first morphism");
  } catch (const QuotientError& e) {
    return reject(e.what());
  }
  auto pi = complete_morphism(c, t, tm, c.identity(t.A), n);
  if (!pi) return reject("no pi: P -> sigma M completes the diagram");
  return Triangle{project(t.A), project(t.B), project(t.C), project(t.f), project(t.g), project(*pi)};
}

std::optional<Triangle> Quotient::cone(const Mor& mu) const {
  const Category& c = base();
  const Mor m = lift(mu);
  const Triangle tm = sigma_triangle(m.src);
  const Mor wide = c.column(m.src, {m, tm.f});
  Rng rng(0);
  auto e = s_->extend_morphism(wide, rng);
  if (e.decision != Decision::yes) return std::nullopt;
  return quotient_triangle(e.triangle);
}

Report quotient_preconditions(const Triangulation& s, const Subcat& z, const Subcat& d, Rng& rng) {
  const Category& c = s.category();
  Report r("quotient preconditions");
  CheckResult inc("D in Z");
  ++inc.cases;
  if (!z.includes(d)) inc.fail("D is not contained in Z", {{"Z", z.names(c)}, {"D", d.names(c)}});
  r.add(inc);
  r.add(is_extension_closed(s, z, rng));
  CheckResult mu_check("Z = mu(Z; D)");
  if (z.includes(d)) {
    auto m = verify_right_mutation(s, z, d, rng);
    mu_check.cases = z.members.size();
    if (!m.holds) mu_check.fail(m.reason);
    for (const auto& n : m.notes) mu_check.note(n);
  } else {
    mu_check.undecided("skipped since D is not contained in Z");
  }
  r.add(mu_check);
  bool capped = false;
  const int n_max = default_n_max(c, d, &capped);
  auto fte = is_factor_through_epic(c, d, n_max, s.rank_bound());
  fte.note("n_max = " + std::to_string(n_max) + (capped ? " (cap reached)" : ""));
  r.add(fte);
  return r;
}

Report equivalence_preconditions(const Triangulation& s, const Subcat& z, const Subcat& d, Rng& rng) {
  const Category& c = s.category();
  Report r = quotient_preconditions(s, z, d, rng);
  r.title = "equivalence preconditions";
  CheckResult pair_check("mutation pair");
  if (z.includes(d)) {
    auto m = verify_mutation_pair(s, z, d, rng);
    pair_check.cases = z.members.size();
    if (!m.holds) pair_check.fail(m.reason);
    for (const auto& n : m.notes) pair_check.note(n);
  } else {
    pair_check.undecided("skipped since D is not contained in Z");
  }
  r.add(pair_check);
  CheckResult full("T full on Z");
  std::vector<Obj> objs;
  for (const auto& x : c.objects_up_to_rank(s.rank_bound()))
    if (z.contains(x)) objs.push_back(x);
  for (const auto& x : objs)
    for (const auto& y : objs) {
      ++full.cases;
      if (!functor_full_on(c, c.presentation().shift, {{x, y}})) {
        full.fail("Hom(T" + c.describe(x) + ", T" + c.describe(y) + ") has morphisms not of the form Tf",
                  {{"X", to_json(c, x)}, {"Y", to_json(c, y)}});
      }
    }
  r.add(full);
  return r;
}

QuotientBuild build_quotient(std::shared_ptr<const Triangulation> s, const Subcat& z, const Subcat& d,
                             SigmaChoice choice, std::uint64_t seed) {
  QuotientBuild out;
  Rng rng(seed);
  out.preconditions = quotient_preconditions(*s, z, d, rng);
  if (out.preconditions.verdict() == Verdict::fail) return out;
  CheckResult sig("sigma triangles");
  try {
    out.quotient = std::make_shared<const Quotient>(s, z, d, choice, seed);
    sig.cases = z.members.size();
  } catch (const QuotientError& e) {
    sig.fail(e.what());
  }
  out.preconditions.add(sig);
  return out;
}

std::shared_ptr<const Triangulation> induced_triangulation(const QuotientPtr& q, Rng& rng) {
  const Triangulation& s = q->base_triangulation();
  const Category& c = s.category();
  std::vector<Triangle> gens;
  for (const auto& t : s.representatives(rng)) {
    if (!q->z().contains(t.A) || !q->z().contains(t.B) || !q->z().contains(t.C)) continue;
    if (!is_d_monic(c, t.f, q->d())) continue;
    if (auto qt = q->quotient_triangle(t)) gens.push_back(std::move(*qt));
  }
  ConeFunction cone = [q](const Mor& mu) { return q->cone(mu); };
  return std::make_shared<const Triangulation>(q->category(), std::move(gens), s.rank_bound(), std::move(cone));
}

bool cone_stays_in_z(const Quotient& q, const Mor& mu, Rng& rng) {
  const Category& c = q.base();
  if (!is_d_monic(c, mu, q.d())) throw std::invalid_argument("cone_stays_in_z: the morphism is not D-monic");
  auto e = q.base_triangulation().extend_morphism(mu, rng);
  if (e.decision != Decision::yes) throw QuotientError("no triangle on " + c.describe(mu.src) + " -> " + c.describe(mu.tgt));
  return q.z().contains(e.triangle.C);
}

Omega build_omega(const Quotient& q, Rng& rng) {
  const Category& c = q.base();
  const Category& qc = *q.category();
  const auto n = qc.size();
  auto inv = mu_inverse(q.base_triangulation(), q.z(), q.d(), rng);
  Omega out;
  for (std::size_t i = 0; i < n; ++i) {
    const int x = q.kept()[i];
    auto it = std::find_if(inv.witnesses.begin(), inv.witnesses.end(),
                           [&](const MutationWitness& w) { return w.object == x; });
    if (it == inv.witnesses.end()) throw QuotientError("no triangle omega X -> D^X -> X for " + c.name(x));
    out.triangles.push_back(it->triangle);
    out.functor.on_objects.push_back(q.project(it->triangle.A));
  }
  out.functor.on_homs.assign(n, std::vector<Mat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Triangle &tx = out.triangles[i], &ty = out.triangles[j];
      const auto basis = qc.hom_basis(qc.indecomposable(static_cast<int>(i)), qc.indecomposable(static_cast<int>(j)));
      Mat m(c.field(), qc.hom_dim(out.functor.on_objects[i], out.functor.on_objects[j]), basis.size());
      const Mat t = c.functor_matrix(c.presentation().shift, tx.A, ty.A);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const Mor f = q.lift(basis[k]);
        const Mor g = solve_one(
            c, {tx.B, ty.B}, tx.B, ty.C, [&](const Mor& u) { return c.compose(ty.g, u); }, c.compose(f, tx.g),
            "beta^Y is not a right D-approximation");
        auto h = complete_morphism(c, rotate(c, tx), rotate(c, ty), g, f);
        if (!h) throw QuotientError("no morphism T omega X -> T omega Y completes the diagram");
        auto pre = la::solve(t, h->coords);
        if (!pre) throw QuotientError("T is not full on Hom(" + c.describe(tx.A) + ", " + c.describe(ty.A) + ")");
        m.set_col(k, q.project(c.from_coords(tx.A, ty.A, pre->particular)).coords);
      }
      out.functor.on_homs[i][j] = std::move(m);
    }
  return out;
}

EquivalenceCheck check_sigma_equivalence(const Quotient& q, Rng& rng) {
  const Category& c = q.base();
  const Category& qc = *q.category();
  const auto n = qc.size();
  const FunctorData& sigma = qc.presentation().shift;
  EquivalenceCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    const Obj& s = sigma.on_objects[i];
    out.sigma_on_objects.push_back(s.rank() == 1 ? s.summands[0] : -1);
  }

  // Directly: sigma is full, faithful and hits every indecomposable.
  std::string direct_reason;
  std::vector<std::pair<Obj, Obj>> pairs;
  const auto objs = qc.objects_up_to_rank(q.base_triangulation().rank_bound());
  for (const auto& x : objs)
    for (const auto& y : objs) pairs.emplace_back(x, y);
  if (!functor_full_on(qc, sigma, pairs)) {
    direct_reason = "sigma is not full";
  } else if (!functor_faithful_on(qc, sigma, pairs)) {
    direct_reason = "sigma is not faithful";
  } else {
    for (std::size_t t = 0; t < n && direct_reason.empty(); ++t) {
      const Obj target = qc.indecomposable(static_cast<int>(t));
      bool hit = false;
      for (std::size_t i = 0; i < n && !hit; ++i) {
        const Obj& s = sigma.on_objects[i];
        if (s.rank() != 1) continue;
        if (s == target) {
          hit = true;
          break;
        }
        Mat none(qc.field(), 0, qc.hom_dim(s, target));
        hit = !find_isomorphisms(qc, s, target, none, {}, rng).isomorphisms.empty();
      }
      if (!hit) direct_reason = qc.name(static_cast<int>(t)) + " is not isomorphic to any sigma M";
    }
  }
  out.direct = direct_reason.empty();

  // Through omega: g_X: X -> sigma omega X is invertible and natural.
  std::string omega_reason;
  try {
    const Omega om = build_omega(q, rng);
    auto laws = check_functor_laws(qc, om.functor, "omega");
    if (!laws.passed()) omega_reason = "omega is not a functor: " + laws.violations.front().message;
    std::vector<Mor> gx(n);
    for (std::size_t i = 0; i < n && omega_reason.empty(); ++i) {
      const Triangle& tx = om.triangles[i];
      const Triangle ts = q.sigma_triangle(tx.A);
      const Mor one = c.identity(tx.A);
      const Mor b = solve_one(
          c, {tx.B, ts.B}, tx.A, ts.B, [&](const Mor& u) { return c.compose(u, tx.f); }, ts.f,
          "alpha^X is not a left D-approximation");
      const Mor bb = solve_one(
          c, {ts.B, tx.B}, tx.A, tx.B, [&](const Mor& u) { return c.compose(u, ts.f); }, tx.f,
          "alpha of omega X is not a left D-approximation");
      auto g = complete_morphism(c, tx, ts, one, b);
      auto gg = complete_morphism(c, ts, tx, one, bb);
      if (!g || !gg) {
        omega_reason = "no comparison morphism between the triangles at " + qc.name(static_cast<int>(i));
        break;
      }
      const Mor x = q.project(*g), xx = q.project(*gg);
      if (!qc.equal(qc.compose(xx, x), qc.identity(x.src)) || !qc.equal(qc.compose(x, xx), qc.identity(x.tgt))) {
        omega_reason = "g_X is not invertible in the quotient at " + qc.name(static_cast<int>(i));
        break;
      }
      gx[i] = x;
    }
    for (std::size_t i = 0; i < n && omega_reason.empty(); ++i)
      for (std::size_t j = 0; j < n && omega_reason.empty(); ++j)
        for (const auto& f : qc.hom_basis(qc.indecomposable(static_cast<int>(i)), qc.indecomposable(static_cast<int>(j)))) {
          const Mor lhs = qc.compose(gx[j], f);
          const Mor rhs = qc.compose(qc.shift(qc.apply(om.functor, f)), gx[i]);
          if (!qc.equal(lhs, rhs)) {
            omega_reason = "g is not natural on Hom(" + qc.name(static_cast<int>(i)) + ", " +
                           qc.name(static_cast<int>(j)) + ")";
            break;
          }
        }
  } catch (const QuotientError& e) {
    omega_reason = e.what();
  }
  out.via_omega = omega_reason.empty();

  if (out.direct && out.via_omega) {
    out.decision = Decision::yes;
  } else {
    out.decision = Decision::no;
    out.reason = !out.direct && !out.via_omega ? direct_reason + "; " + omega_reason
                 : out.direct ? "the two tests disagree: " + omega_reason
                              : "the two tests disagree: " + direct_reason;
  }
  return out;
}

}  // namespace tricat
