#pragma once

// Test-side referees and generators. Nothing here calls into the
// structures being checked except through their public results.

#include "tricat/catalog.hpp"
#include "tricat/quotient.hpp"

#include <set>

namespace tricat::testing {

// Module maps k[x]/(x^i) -> k[x]/(x^j) of k[x]/(x^n), as images of 1
// (coefficient vectors of length j). v is allowed iff x^i v = 0 mod x^j.
inline std::vector<Vec> all_polys(std::uint32_t p, std::size_t len) {
  std::vector<Vec> out{Vec(len, 0)};
  for (std::size_t t = 0; t < len; ++t) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Scalar a = 0; a < p; ++a) {
        Vec w = v;
        w[t] = a;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline Vec poly_times(std::uint32_t p, const Vec& a, const Vec& b, std::size_t len) {
  Vec out(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] = static_cast<Scalar>((out[i + j] + a[i] * b[j]) % p);
  return out;
}

inline std::vector<Vec> module_maps(std::uint32_t p, int i, int j) {
  std::vector<Vec> out;
  Vec xi(static_cast<std::size_t>(i) + 1, 0);
  xi[static_cast<std::size_t>(i)] = 1;
  for (const auto& v : all_polys(p, static_cast<std::size_t>(j))) {
    const Vec w = poly_times(p, xi, v, static_cast<std::size_t>(j));
    if (std::all_of(w.begin(), w.end(), [](Scalar s) { return s == 0; })) out.push_back(v);
  }
  return out;
}

inline std::set<Vec> closure(std::uint32_t p, std::set<Vec> s, std::size_t len) {
  s.insert(Vec(len, 0));
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<Vec> add;
    for (const auto& a : s)
      for (const auto& b : s) {
        Vec c(len);
        for (std::size_t t = 0; t < len; ++t) c[t] = static_cast<Scalar>((a[t] + b[t]) % p);
        if (!s.count(c)) add.insert(c);
      }
    if (!add.empty()) {
      grew = true;
      s.insert(add.begin(), add.end());
    }
  }
  return s;
}

// dim of Hom(M_i, M_j) modulo maps factoring through any of `via`
// (module indices; include n for the free module).
inline std::size_t factor_dim(int n, std::uint32_t p, int i, int j, const std::vector<int>& via) {
  (void)n;
  const auto all = module_maps(p, i, j);
  std::set<Vec> through;
  for (int m : via)
    for (const auto& a : module_maps(p, i, m))
      for (const auto& b : module_maps(p, m, j)) through.insert(poly_times(p, a, b, static_cast<std::size_t>(j)));
  through = closure(p, through, static_cast<std::size_t>(j));
  std::size_t ratio = all.size() / through.size(), dim = 0;
  while (ratio > 1) {
    ratio /= p;
    ++dim;
  }
  return dim;
}

// The isomorphism sigma_1 M_i -> sigma_2 M_i in the quotient obtained by
// comparing the two fixed triangles on M_i over the identity.
inline Mor sigma_comparison(const Quotient& q1, const Quotient& q2, int i) {
  const Category& c = q1.base();
  const Obj m = c.indecomposable(q1.kept()[static_cast<std::size_t>(i)]);
  const Triangle t1 = q1.sigma_triangle(m), t2 = q2.sigma_triangle(m);
  LinearSystem sys(c, {{t1.B, t2.B}});
  sys.add_equation(m, t2.B, {{0, [&](const Mor& u) { return c.compose(u, t1.f); }}}, t2.f);
  auto sol = sys.solve();
  if (!sol) throw std::runtime_error("alpha does not factor");
  auto phi = complete_morphism(c, t1, t2, c.identity(m), sys.split(sol->particular)[0]);
  if (!phi) throw std::runtime_error("no comparison morphism");
  return q1.project(*phi);
}

// Basis morphisms on which the two sigmas disagree after transport along
// the comparison isomorphisms, plus comparisons that are not invertible.
inline std::size_t sigma_mismatches(const Quotient& q1, const Quotient& q2) {
  const Category& qc = *q1.category();
  const auto n = static_cast<int>(qc.size());
  std::vector<Mor> phi;
  std::size_t bad = 0;
  for (int i = 0; i < n; ++i) {
    phi.push_back(sigma_comparison(q1, q2, i));
    if (!qc.is_invertible(phi.back())) ++bad;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& mu : qc.hom_basis(qc.indecomposable(i), qc.indecomposable(j))) {
        const Mor lhs = qc.compose(q2.sigma(mu), phi[static_cast<std::size_t>(i)]);
        const Mor rhs = qc.compose(phi[static_cast<std::size_t>(j)], q1.sigma(mu));
        if (!qc.equal(lhs, rhs)) ++bad;
      }
  return bad;
}

inline Obj random_object(const Category& c, std::size_t max_rank, Rng& rng) {
  Obj out;
  const auto r = rng() % (max_rank + 1);
  for (std::size_t k = 0; k < r; ++k) out.summands.push_back(static_cast<int>(rng() % c.size()));
  return out;
}

}  // namespace tricat::testing
