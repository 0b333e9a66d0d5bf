#pragma once

// Ground-truth fixtures: stable categories of k[x]/(x^n) and the
// injectively stable category of the A_2 quiver 1 -> 2.

#include "tricat/category.hpp"
#include "tricat/rtstruct.hpp"

#include <memory>

namespace tricat::catalog {

// Brute-force referee for stable hom spaces of k[x]/(x^n). Module maps
// M_i -> M_j are identified with the image of 1; everything is enumerated
// as polynomials, without linear algebra.
struct OracleHom {
  std::size_t dim = 0;
  std::size_t module_maps = 0;        // |Hom(M_i, M_j)|
  std::size_t projective_maps = 0;    // maps factoring through a free module
  std::vector<Vec> representatives;   // images of 1 spanning Hom modulo projective maps
};
OracleHom oracle_stable_hom(int n, std::uint32_t p, int i, int j);

// Module-level data behind the stable category of k[x]/(x^n).
class NakayamaModules {
 public:
  NakayamaModules(int n, std::uint32_t p);

  int n() const { return n_; }
  const Field& field() const { return k_; }
  // x acting on M_i in the basis 1, x, ..., x^(i-1).
  Mat x_action(int i) const;
  // Basis of module maps M_i -> M_j (1 <= i, j <= n), as j x i matrices.
  const std::vector<Mat>& module_hom_basis(int i, int j) const { return hom_[idx(i, j)]; }
  std::size_t stable_dim(int i, int j) const { return free_[idx(i, j)].size(); }

  Vec stable_coords(int i, int j, const Mat& phi) const;
  Mat lift(int i, int j, const Vec& stable) const;

  // M_i -> M_n sending 1 to x^(n-i), and M_n -> M_(n-i) the cokernel.
  Mat envelope(int i) const;
  Mat cokernel(int i) const;
  // Cosyzygy of a module map M_i -> M_j, a map M_(n-i) -> M_(n-j).
  Mat cosyzygy(int i, int j, const Mat& phi) const;

  Presentation presentation() const;

  // Module maps for a stable morphism between direct sums of M_1..M_(n-1);
  // object index q stands for M_(q+1).
  Mat lift(const Category& c, const Mor& f) const;
  Mor stable(const Category& c, const Obj& x, const Obj& y, const Mat& phi) const;

  // The triangle A -u-> B -> C_u -> TA built from the pushout of u along the
  // injective envelope of A, with free summands of C_u removed.
  Triangle standard_triangle(const Category& c, const Mor& u) const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>((i - 1) * n_ + (j - 1)); }
  Vec hom_coords(int i, int j, const Mat& phi) const;

  int n_;
  Field k_;
  std::vector<std::vector<Mat>> hom_;
  std::vector<Space> projective_;
  std::vector<std::vector<std::size_t>> free_;
};

// Jordan chains of a nilpotent matrix: columns of `basis` are
// v, Nv, ..., N^(d-1)v for each chain, chain lengths in `lengths`.
struct JordanForm {
  Mat basis;
  std::vector<int> lengths;
};
JordanForm jordan_chains(const Mat& nilpotent);

struct Fixture {
  CategoryPtr category;
  std::shared_ptr<const Triangulation> triangulation;
  std::shared_ptr<const NakayamaModules> modules;  // set for Nakayama fixtures
};

// Stable category of k[x]/(x^n) with T = cosyzygy. Distinguished triangles
// are those isomorphic to standard triangles.
Fixture nakayama_stable(int n, std::uint32_t p, std::size_t rank_bound = 2);

// Injectively stable representations of 1 -> 2: one object S2 with
// End = k and T(S2) = 0.
Fixture a2_costable(std::uint32_t p, std::size_t rank_bound = 2);

// One object with End = k and T = identity, triangulated by trivial
// triangles.
Fixture field_category(std::uint32_t p, std::size_t rank_bound = 2);

}  // namespace tricat::catalog
