#include "tricat/catalog.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tricat::catalog {

namespace {

void check_prime(std::uint32_t p) {
  if (p != 2 && p != 3 && p != 5) throw std::invalid_argument("catalog fixtures need p in {2, 3, 5}");
}

// Polynomials truncated at degree `len`.
Vec poly_mul(const Field& k, const Vec& a, const Vec& b, std::size_t len) {
  Vec out(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
  }
  return out;
}

std::vector<Vec> all_vectors(const Field& k, std::size_t len) {
  std::vector<Vec> out{Vec(len, 0)};
  for (std::size_t pos = 0; pos < len; ++pos) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Scalar a = 0; a < k.characteristic(); ++a) {
        Vec w = v;
        w[pos] = a;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

std::set<Vec> additive_closure(const Field& k, std::set<Vec> s, std::size_t len) {
  s.insert(Vec(len, 0));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> items(s.begin(), s.end());
    for (const auto& a : items)
      for (const auto& b : items) {
        Vec c(len);
        for (std::size_t t = 0; t < len; ++t) c[t] = k.add(a[t], b[t]);
        if (s.insert(c).second) grew = true;
      }
  }
  return s;
}

Vec x_power(std::size_t e, std::size_t len) {
  Vec v(len, 0);
  if (e < len) v[e] = 1;
  return v;
}

Vec flatten(const Mat& m) { return m.data(); }

Mat block_diagonal(const Field& k, const std::vector<Mat>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out(k, r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Mat submatrix(const Mat& m, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
  Mat out(m.field(), nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

}  // namespace

OracleHom oracle_stable_hom(int n, std::uint32_t p, int i, int j) {
  check_prime(p);
  if (n < 2 || i < 1 || j < 1 || i > n || j > n) throw std::invalid_argument("oracle: index out of range");
  const Field k(p);
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j), un = static_cast<std::size_t>(n);
  // v in M_j is the image of 1 iff x^i v = 0.
  std::vector<Vec> homs;
  for (const auto& v : all_vectors(k, uj)) {
    const Vec xi_v = poly_mul(k, x_power(ui, uj), v, uj);
    if (std::all_of(xi_v.begin(), xi_v.end(), [](Scalar s) { return s == 0; })) homs.push_back(v);
  }
  // M_i -> M_n sends 1 to u with x^i u = 0 in M_n; M_n -> M_j sends 1 to any w.
  std::vector<Vec> into_free;
  for (const auto& u : all_vectors(k, un)) {
    const Vec xi_u = poly_mul(k, x_power(ui, un), u, un);
    if (std::all_of(xi_u.begin(), xi_u.end(), [](Scalar s) { return s == 0; })) into_free.push_back(u);
  }
  std::set<Vec> through;
  for (const auto& u : into_free)
    for (const auto& w : all_vectors(k, uj)) through.insert(poly_mul(k, u, w, uj));
  through = additive_closure(k, through, uj);

  OracleHom out;
  out.module_maps = homs.size();
  out.projective_maps = through.size();
  std::size_t ratio = homs.size() / through.size();
  while (ratio > 1) {
    ratio /= p;
    ++out.dim;
  }
  std::set<Vec> span = through;
  for (const auto& v : homs) {
    if (span.count(v)) continue;
    out.representatives.push_back(v);
    std::set<Vec> grown;
    for (const auto& s : span)
      for (Scalar a = 0; a < p; ++a) {
        Vec c(uj);
        for (std::size_t t = 0; t < uj; ++t) c[t] = k.add(s[t], k.mul(a, v[t]));
        grown.insert(c);
      }
    span = std::move(grown);
  }
  return out;
}

JordanForm jordan_chains(const Mat& N) {
  const Field& k = N.field();
  const std::size_t m = N.rows();
  std::vector<Space> kernels{Space::span(k, m, {})};
  Mat power = Mat::identity(k, m);
  while (kernels.back().dim() < m) {
    power = power * N;
    kernels.push_back(la::nullspace(power));
    if (kernels.size() > m + 1) throw std::invalid_argument("jordan_chains: matrix is not nilpotent");
  }
  const std::size_t s = kernels.size() - 1;
  kernels.push_back(kernels.back());
  JordanForm out;
  std::vector<Vec> columns;
  for (std::size_t len = s; len >= 1; --len) {
    std::vector<Vec> w = kernels[len - 1].basis();
    for (const auto& v : kernels[len + 1].basis()) w.push_back(N.apply(v));
    std::vector<Vec> chosen;
    for (const auto& v : kernels[len].basis()) {
      auto trial = w;
      trial.insert(trial.end(), chosen.begin(), chosen.end());
      const auto before = Space::span(k, m, trial).dim();
      trial.push_back(v);
      if (Space::span(k, m, trial).dim() > before) chosen.push_back(v);
    }
    for (const auto& v : chosen) {
      Vec cur = v;
      for (std::size_t t = 0; t < len; ++t) {
        columns.push_back(cur);
        cur = N.apply(cur);
      }
      out.lengths.push_back(static_cast<int>(len));
    }
  }
  out.basis = Mat(k, m, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) out.basis.set_col(c, columns[c]);
  if (columns.size() != m || la::rank(out.basis) != m) throw std::logic_error("jordan_chains: chains do not form a basis");
  return out;
}

NakayamaModules::NakayamaModules(int n, std::uint32_t p) : n_(n), k_(p) {
  check_prime(p);
  if (n < 2 || n > 6) throw std::invalid_argument("nakayama_stable needs 2 <= n <= 6");
  const auto un = static_cast<std::size_t>(n);
  hom_.resize(un * un);
  projective_.resize(un * un);
  free_.resize(un * un);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const Mat Ji = x_action(i), Jj = x_action(j);
      // phi -> phi J_i - J_j phi on j x i matrices.
      Mat L(k_, uj * ui, uj * ui);
      for (std::size_t e = 0; e < uj * ui; ++e) {
        Vec unit(uj * ui, 0);
        unit[e] = 1;
        Mat phi(k_, uj, ui, unit);
        L.set_col(e, flatten(phi * Ji - Jj * phi));
      }
      const Space kernel = la::nullspace(L);
      for (const auto& v : kernel.basis()) hom_[idx(i, j)].push_back(Mat(k_, uj, ui, v));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<Vec> through;
      for (const auto& chi : hom_[idx(i, n)])
        for (const auto& psi : hom_[idx(n, j)]) through.push_back(hom_coords(i, j, psi * chi));
      projective_[idx(i, j)] = Space::span(k_, hom_[idx(i, j)].size(), through);
      free_[idx(i, j)] = projective_[idx(i, j)].free_positions();
    }
}

Mat NakayamaModules::x_action(int i) const {
  const auto ui = static_cast<std::size_t>(i);
  Mat J(k_, ui, ui);
  for (std::size_t t = 0; t + 1 < ui; ++t) J(t + 1, t) = 1;
  return J;
}

Vec NakayamaModules::hom_coords(int i, int j, const Mat& phi) const {
  const auto& basis = hom_[idx(i, j)];
  Mat H(k_, phi.rows() * phi.cols(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) H.set_col(c, flatten(basis[c]));
  auto sol = la::solve(H, flatten(phi));
  if (!sol) throw std::invalid_argument("not a module homomorphism");
  return sol->particular;
}

Vec NakayamaModules::stable_coords(int i, int j, const Mat& phi) const {
  const Vec rep = projective_[idx(i, j)].coset_representative(hom_coords(i, j, phi));
  Vec out;
  for (auto q : free_[idx(i, j)]) out.push_back(rep[q]);
  return out;
}

Mat NakayamaModules::lift(int i, int j, const Vec& stable) const {
  const auto& basis = hom_[idx(i, j)];
  Mat out(k_, static_cast<std::size_t>(j), static_cast<std::size_t>(i));
  const auto& fr = free_[idx(i, j)];
  for (std::size_t q = 0; q < fr.size(); ++q) {
    if (stable[q] == 0) continue;
    const Mat& b = basis[fr[q]];
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = k_.add(out(r, c), k_.mul(stable[q], b(r, c)));
  }
  return out;
}

Mat NakayamaModules::envelope(int i) const {
  const auto ui = static_cast<std::size_t>(i), un = static_cast<std::size_t>(n_);
  Mat E(k_, un, ui);
  for (std::size_t t = 0; t < ui; ++t) E(t + un - ui, t) = 1;
  return E;
}

Mat NakayamaModules::cokernel(int i) const {
  const auto un = static_cast<std::size_t>(n_), r = un - static_cast<std::size_t>(i);
  Mat P(k_, r, un);
  for (std::size_t t = 0; t < r; ++t) P(t, t) = 1;
  return P;
}

Mat NakayamaModules::cosyzygy(int i, int j, const Mat& phi) const {
  const auto& endo = hom_[idx(n_, n_)];
  const Mat Ei = envelope(i), target = envelope(j) * phi;
  Mat A(k_, target.rows() * target.cols(), endo.size());
  for (std::size_t c = 0; c < endo.size(); ++c) A.set_col(c, flatten(endo[c] * Ei));
  auto sol = la::solve(A, flatten(target));
  if (!sol) throw std::logic_error("cosyzygy: no extension to the injective envelope");
  const auto un = static_cast<std::size_t>(n_);
  Mat I(k_, un, un);
  for (std::size_t c = 0; c < endo.size(); ++c)
    for (std::size_t r = 0; r < un; ++r)
      for (std::size_t s = 0; s < un; ++s) I(r, s) = k_.add(I(r, s), k_.mul(sol->particular[c], endo[c](r, s)));
  const auto di = un - static_cast<std::size_t>(i);
  Mat section(k_, un, di);
  for (std::size_t t = 0; t < di; ++t) section(t, t) = 1;
  return cokernel(j) * I * section;
}

Presentation NakayamaModules::presentation() const {
  Presentation pr;
  pr.field = k_;
  const int m = n_ - 1;
  const auto um = static_cast<std::size_t>(m);
  for (int q = 0; q < m; ++q) pr.names.push_back("M" + std::to_string(q + 1));
  pr.hom_dim.assign(um, std::vector<std::size_t>(um, 0));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) pr.hom_dim[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = stable_dim(x + 1, y + 1);
  auto unit = [](std::size_t d, std::size_t e) {
    Vec v(d, 0);
    v[e] = 1;
    return v;
  };
  pr.comp.resize(um * um * um);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        const auto dxy = stable_dim(x + 1, y + 1), dyz = stable_dim(y + 1, z + 1), dxz = stable_dim(x + 1, z + 1);
        Vec s(dyz * dxy * dxz, 0);
        for (std::size_t g = 0; g < dyz; ++g)
          for (std::size_t f = 0; f < dxy; ++f) {
            const Mat prod = lift(y + 1, z + 1, unit(dyz, g)) * lift(x + 1, y + 1, unit(dxy, f));
            const Vec v = stable_coords(x + 1, z + 1, prod);
            std::copy(v.begin(), v.end(), s.begin() + static_cast<std::ptrdiff_t>((g * dxy + f) * dxz));
          }
        pr.structure(static_cast<std::size_t>(x), static_cast<std::size_t>(y), static_cast<std::size_t>(z)) = std::move(s);
      }
  for (int x = 0; x < m; ++x) pr.identity.push_back(stable_coords(x + 1, x + 1, Mat::identity(k_, static_cast<std::size_t>(x + 1))));
  for (int x = 0; x < m; ++x) pr.shift.on_objects.push_back(Obj({n_ - (x + 1) - 1}));
  pr.shift.on_homs.resize(um);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const int i = x + 1, j = y + 1;
      const auto d = stable_dim(i, j);
      Mat t(k_, stable_dim(n_ - i, n_ - j), d);
      for (std::size_t f = 0; f < d; ++f) t.set_col(f, stable_coords(n_ - i, n_ - j, cosyzygy(i, j, lift(i, j, unit(d, f)))));
      pr.shift.on_homs[static_cast<std::size_t>(x)].push_back(std::move(t));
    }
  return pr;
}

Mat NakayamaModules::lift(const Category& c, const Mor& f) const {
  std::vector<std::size_t> src_off{0}, tgt_off{0};
  for (int s : f.src.summands) src_off.push_back(src_off.back() + static_cast<std::size_t>(s + 1));
  for (int s : f.tgt.summands) tgt_off.push_back(tgt_off.back() + static_cast<std::size_t>(s + 1));
  Mat out(k_, tgt_off.back(), src_off.back());
  for (std::size_t j = 0; j < f.tgt.rank(); ++j)
    for (std::size_t i = 0; i < f.src.rank(); ++i) {
      const Mat b = lift(f.src.summands[i] + 1, f.tgt.summands[j] + 1, c.block(f, j, i));
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) out(tgt_off[j] + r, src_off[i] + s) = b(r, s);
    }
  return out;
}

Mor NakayamaModules::stable(const Category& c, const Obj& x, const Obj& y, const Mat& phi) const {
  std::vector<std::size_t> src_off{0}, tgt_off{0};
  for (int s : x.summands) src_off.push_back(src_off.back() + static_cast<std::size_t>(s + 1));
  for (int s : y.summands) tgt_off.push_back(tgt_off.back() + static_cast<std::size_t>(s + 1));
  Mor out = c.zero(x, y);
  for (std::size_t j = 0; j < y.rank(); ++j)
    for (std::size_t i = 0; i < x.rank(); ++i) {
      const int a = x.summands[i] + 1, b = y.summands[j] + 1;
      const Mat blk = submatrix(phi, tgt_off[j], static_cast<std::size_t>(b), src_off[i], static_cast<std::size_t>(a));
      c.set_block(out, j, i, stable_coords(a, b, blk));
    }
  return out;
}

Triangle NakayamaModules::standard_triangle(const Category& c, const Mor& u) const {
  const Obj& A = u.src;
  const Obj& B = u.tgt;
  const Mat U = lift(c, u);
  const std::size_t dB = U.rows(), dA = U.cols(), un = static_cast<std::size_t>(n_);
  std::vector<Mat> env, cok, jb, ji;
  for (int s : A.summands) {
    env.push_back(envelope(s + 1));
    cok.push_back(cokernel(s + 1));
    ji.push_back(x_action(n_));
  }
  for (int s : B.summands) jb.push_back(x_action(s + 1));
  const Mat iota = block_diagonal(k_, env);
  const Mat pi = block_diagonal(k_, cok);
  const std::size_t dI = iota.rows(), ambient = dB + dI;
  Mat J = block_diagonal(k_, {block_diagonal(k_, jb), block_diagonal(k_, ji)});

  // Pushout C = (B + I(A)) / {(u a, -iota a)}.
  std::vector<Vec> rel;
  for (std::size_t a = 0; a < dA; ++a) {
    Vec v(ambient, 0);
    for (std::size_t r = 0; r < dB; ++r) v[r] = U(r, a);
    for (std::size_t r = 0; r < dI; ++r) v[dB + r] = k_.neg(iota(r, a));
    rel.push_back(std::move(v));
  }
  const Space S = Space::span(k_, ambient, rel);
  const auto fr = S.free_positions();
  const std::size_t m = fr.size();
  auto reduce = [&](const Vec& v) {
    const Vec rep = S.coset_representative(v);
    Vec out;
    for (auto q : fr) out.push_back(rep[q]);
    return out;
  };
  auto unit = [&](std::size_t e) {
    Vec v(ambient, 0);
    v[e] = 1;
    return v;
  };
  Mat N(k_, m, m), v_map(k_, m, dB), w_map(k_, pi.rows(), m);
  for (std::size_t q = 0; q < m; ++q) N.set_col(q, reduce(J.apply(unit(fr[q]))));
  for (std::size_t b = 0; b < dB; ++b) v_map.set_col(b, reduce(unit(b)));
  for (std::size_t q = 0; q < m; ++q) {
    if (fr[q] < dB) continue;
    for (std::size_t r = 0; r < pi.rows(); ++r) w_map(r, q) = pi(r, fr[q] - dB);
  }

  Obj Cobj;
  Mat keep_rows(k_, 0, m), keep_cols(k_, m, 0);
  if (m > 0) {
    const JordanForm jf = jordan_chains(N);
    const Mat Qinv = *la::inverse(jf.basis);
    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    for (int len : jf.lengths) {
      offsets.push_back(off);
      off += static_cast<std::size_t>(len);
    }
    std::vector<std::size_t> order;
    for (std::size_t t = 0; t < jf.lengths.size(); ++t)
      if (static_cast<std::size_t>(jf.lengths[t]) < un) order.push_back(t);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return jf.lengths[a] < jf.lengths[b]; });
    std::vector<std::size_t> picked;
    for (auto t : order) {
      Cobj.summands.push_back(jf.lengths[t] - 1);
      for (int s = 0; s < jf.lengths[t]; ++s) picked.push_back(offsets[t] + static_cast<std::size_t>(s));
    }
    Mat sel(k_, picked.size(), m);
    for (std::size_t r = 0; r < picked.size(); ++r) sel(r, picked[r]) = 1;
    keep_rows = sel * Qinv;
    keep_cols = jf.basis * sel.transpose();
  }
  const Mat g_mod = keep_rows * v_map;
  const Mat h_mod = w_map * keep_cols;
  return {A, B, Cobj, u, stable(c, B, Cobj, g_mod), stable(c, Cobj, c.shift(A), h_mod)};
}

Fixture nakayama_stable(int n, std::uint32_t p, std::size_t rank_bound) {
  auto mods = std::make_shared<const NakayamaModules>(n, p);
  auto cat = std::make_shared<const Category>(mods->presentation());
  const Category& c = *cat;
  std::vector<Triangle> gens;
  const int m = static_cast<int>(c.size());
  for (int x = 0; x < m; ++x) gens.push_back(trivial_triangle(c, c.indecomposable(x)));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const Obj ox = c.indecomposable(x), oy = c.indecomposable(y);
      gens.push_back(direct_sum_triangle(c, ox, oy));
      auto orbits = arrow_orbits(c, ox, oy);
      if (!orbits) continue;
      for (const auto& u : *orbits) gens.push_back(mods->standard_triangle(c, u));
    }
  ConeFunction cone = [mods, cat](const Mor& f) -> std::optional<Triangle> { return mods->standard_triangle(*cat, f); };
  auto tri = std::make_shared<const Triangulation>(cat, std::move(gens), rank_bound, std::move(cone));
  return {cat, tri, mods};
}

Fixture a2_costable(std::uint32_t p, std::size_t rank_bound) {
  check_prime(p);
  Presentation pr;
  pr.field = Field(p);
  pr.names = {"S2"};
  pr.hom_dim = {{1}};
  pr.comp = {Vec{1}};
  pr.identity = {Vec{1}};
  pr.shift.on_objects = {Obj{}};
  pr.shift.on_homs = {{Mat(pr.field, 0, 1)}};
  auto cat = std::make_shared<const Category>(pr);
  const Category& c = *cat;
  const Obj s2({0});
  // 0 -> S2 -> P1 -> S1 -> 0 becomes S2 -> 0 -> 0 -> 0 once injectives vanish.
  Triangle cosyzygy{s2, Obj{}, Obj{}, c.zero(s2, Obj{}), c.zero(Obj{}, Obj{}), c.zero(Obj{}, Obj{})};
  std::vector<Triangle> gens{trivial_triangle(c, s2), cosyzygy};
  auto tri = std::make_shared<const Triangulation>(cat, std::move(gens), rank_bound);
  return {cat, tri, nullptr};
}

Fixture field_category(std::uint32_t p, std::size_t rank_bound) {
  Presentation pr;
  pr.field = Field(p);
  pr.names = {"X"};
  pr.hom_dim = {{1}};
  pr.comp = {Vec{1}};
  pr.identity = {Vec{1}};
  pr.shift.on_objects = {Obj({0})};
  pr.shift.on_homs = {{Mat(pr.field, 1, 1, {1})}};
  auto cat = std::make_shared<const Category>(pr);
  std::vector<Triangle> gens{trivial_triangle(*cat, Obj({0}))};
  auto tri = std::make_shared<const Triangulation>(cat, std::move(gens), rank_bound);
  return {cat, tri, nullptr};
}

}  // namespace tricat::catalog
