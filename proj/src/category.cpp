#include "tricat/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tricat {

std::vector<int> Obj::sorted() const {
  auto s = summands;
  std::sort(s.begin(), s.end());
  return s;
}

Obj operator+(const Obj& a, const Obj& b) {
  Obj out = a;
  out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
  return out;
}

int Presentation::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

Category::Category(Presentation p) : p_(std::move(p)) {
  check_shapes();
  compute_locality();
}

void Category::check_shapes() const {
  const std::size_t n = p_.size();
  auto fail = [](const std::string& m) { throw std::invalid_argument("malformed presentation: " + m); };
  if (p_.hom_dim.size() != n) fail("hom_dim row count");
  for (const auto& r : p_.hom_dim)
    if (r.size() != n) fail("hom_dim column count");
  if (p_.comp.size() != n * n * n) fail("structure constant table size");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (p_.structure(x, y, z).size() != p_.hom_dim[y][z] * p_.hom_dim[x][y] * p_.hom_dim[x][z]) {
          fail("structure constants for " + p_.names[x] + "|" + p_.names[y] + "|" + p_.names[z]);
        }
      }
  if (p_.identity.size() != n) fail("identity table size");
  for (std::size_t x = 0; x < n; ++x)
    if (p_.identity[x].size() != p_.hom_dim[x][x]) fail("identity of " + p_.names[x]);
  if (p_.shift.on_objects.size() != n) fail("shift object table size");
  for (const auto& o : p_.shift.on_objects)
    for (int s : o.summands)
      if (s < 0 || static_cast<std::size_t>(s) >= n) fail("shift image out of range");
  if (p_.shift.on_homs.size() != n) fail("shift hom table size");
  for (std::size_t x = 0; x < n; ++x) {
    if (p_.shift.on_homs[x].size() != n) fail("shift hom table size");
    for (std::size_t y = 0; y < n; ++y) {
      const auto& m = p_.shift.on_homs[x][y];
      if (m.cols() != p_.hom_dim[x][y] || m.rows() != hom_dim(p_.shift.on_objects[x], p_.shift.on_objects[y])) {
        fail("shift matrix for " + p_.names[x] + "|" + p_.names[y]);
      }
    }
  }
}

std::string Category::describe(const Obj& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < x.summands.size(); ++i) {
    if (i) out += "+";
    out += name(x.summands[i]);
  }
  return out;
}

Obj Category::object(const std::vector<std::string>& names) const {
  Obj o;
  for (const auto& s : names) {
    int i = p_.index_of(s);
    if (i < 0) throw std::invalid_argument("unknown indecomposable '" + s + "'");
    o.summands.push_back(i);
  }
  return o;
}

std::vector<Obj> Category::objects_up_to_rank(std::size_t max_rank) const {
  // Sorted multisets of indecomposables, by rank then lexicographically.
  std::vector<Obj> out{Obj{}};
  std::vector<Obj> layer{Obj{}};
  for (std::size_t r = 1; r <= max_rank; ++r) {
    std::vector<Obj> next;
    for (const auto& o : layer) {
      int start = o.summands.empty() ? 0 : o.summands.back();
      for (int x = start; x < static_cast<int>(size()); ++x) {
        Obj e = o;
        e.summands.push_back(x);
        next.push_back(e);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::size_t Category::hom_dim(const Obj& x, const Obj& y) const {
  std::size_t d = 0;
  for (int b : y.summands)
    for (int a : x.summands) d += hom_dim(a, b);
  return d;
}

std::size_t Category::block_offset(const Obj& x, const Obj& y, std::size_t j, std::size_t i) const {
  std::size_t off = 0;
  for (std::size_t jj = 0; jj < y.rank(); ++jj)
    for (std::size_t ii = 0; ii < x.rank(); ++ii) {
      if (jj == j && ii == i) return off;
      off += hom_dim(x.summands[ii], y.summands[jj]);
    }
  throw std::out_of_range("block index out of range");
}

Vec Category::block(const Mor& f, std::size_t j, std::size_t i) const {
  const auto off = block_offset(f.src, f.tgt, j, i);
  const auto d = hom_dim(f.src.summands[i], f.tgt.summands[j]);
  return {f.coords.begin() + static_cast<std::ptrdiff_t>(off), f.coords.begin() + static_cast<std::ptrdiff_t>(off + d)};
}

void Category::set_block(Mor& f, std::size_t j, std::size_t i, const Vec& v) const {
  const auto off = block_offset(f.src, f.tgt, j, i);
  const auto d = hom_dim(f.src.summands[i], f.tgt.summands[j]);
  if (v.size() != d) throw std::invalid_argument("block dimension mismatch");
  std::copy(v.begin(), v.end(), f.coords.begin() + static_cast<std::ptrdiff_t>(off));
}

Mor Category::zero(const Obj& x, const Obj& y) const { return Mor{x, y, Vec(hom_dim(x, y), 0)}; }

Mor Category::identity(const Obj& x) const {
  Mor f = zero(x, x);
  for (std::size_t i = 0; i < x.rank(); ++i) set_block(f, i, i, p_.identity[static_cast<std::size_t>(x.summands[i])]);
  return f;
}

Mor Category::from_coords(const Obj& x, const Obj& y, Vec coords) const {
  if (coords.size() != hom_dim(x, y)) throw std::invalid_argument("coordinate vector does not match Hom dimension");
  return Mor{x, y, std::move(coords)};
}

std::vector<Mor> Category::hom_basis(const Obj& x, const Obj& y) const {
  std::vector<Mor> out;
  const auto d = hom_dim(x, y);
  for (std::size_t k = 0; k < d; ++k) {
    Mor f = zero(x, y);
    f.coords[k] = field().one();
    out.push_back(std::move(f));
  }
  return out;
}

namespace {
void check_parallel(const Mor& f, const Mor& g) {
  if (f.src.summands != g.src.summands || f.tgt.summands != g.tgt.summands) {
    throw std::invalid_argument("morphisms are not parallel");
  }
}
}  // namespace

Mor Category::add(const Mor& f, const Mor& g) const {
  check_parallel(f, g);
  Mor out = f;
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] = field().add(f.coords[k], g.coords[k]);
  return out;
}

Mor Category::sub(const Mor& f, const Mor& g) const {
  check_parallel(f, g);
  Mor out = f;
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] = field().sub(f.coords[k], g.coords[k]);
  return out;
}

Mor Category::scale(Scalar a, const Mor& f) const {
  Mor out = f;
  for (auto& c : out.coords) c = field().mul(a, c);
  return out;
}

Mor Category::neg(const Mor& f) const {
  Mor out = f;
  for (auto& c : out.coords) c = field().neg(c);
  return out;
}

bool Category::is_zero(const Mor& f) const {
  return std::all_of(f.coords.begin(), f.coords.end(), [](Scalar c) { return c == 0; });
}

bool Category::equal(const Mor& f, const Mor& g) const {
  return f.src.summands == g.src.summands && f.tgt.summands == g.tgt.summands && f.coords == g.coords;
}

Mor Category::compose(const Mor& g, const Mor& f) const {
  if (f.tgt.summands != g.src.summands) {
    throw std::invalid_argument("cannot compose: " + describe(f.tgt) + " != " + describe(g.src));
  }
  const Field& k = field();
  Mor out = zero(f.src, g.tgt);
  const auto& X = f.src.summands;
  const auto& Y = f.tgt.summands;
  const auto& Z = g.tgt.summands;
  // Offsets of g and f blocks.
  std::vector<std::size_t> goff(Z.size() * Y.size()), foff(Y.size() * X.size()), ooff(Z.size() * X.size());
  {
    std::size_t o = 0;
    for (std::size_t c = 0; c < Z.size(); ++c)
      for (std::size_t b = 0; b < Y.size(); ++b) {
        goff[c * Y.size() + b] = o;
        o += hom_dim(Y[b], Z[c]);
      }
    o = 0;
    for (std::size_t b = 0; b < Y.size(); ++b)
      for (std::size_t a = 0; a < X.size(); ++a) {
        foff[b * X.size() + a] = o;
        o += hom_dim(X[a], Y[b]);
      }
    o = 0;
    for (std::size_t c = 0; c < Z.size(); ++c)
      for (std::size_t a = 0; a < X.size(); ++a) {
        ooff[c * X.size() + a] = o;
        o += hom_dim(X[a], Z[c]);
      }
  }
  for (std::size_t c = 0; c < Z.size(); ++c)
    for (std::size_t a = 0; a < X.size(); ++a) {
      const auto dxz = hom_dim(X[a], Z[c]);
      if (dxz == 0) continue;
      Scalar* dst = out.coords.data() + ooff[c * X.size() + a];
      for (std::size_t b = 0; b < Y.size(); ++b) {
        const auto dyz = hom_dim(Y[b], Z[c]);
        const auto dxy = hom_dim(X[a], Y[b]);
        if (dyz == 0 || dxy == 0) continue;
        const Vec& s = p_.structure(static_cast<std::size_t>(X[a]), static_cast<std::size_t>(Y[b]),
                                    static_cast<std::size_t>(Z[c]));
        const Scalar* gb = g.coords.data() + goff[c * Y.size() + b];
        const Scalar* fb = f.coords.data() + foff[b * X.size() + a];
        for (std::size_t gi = 0; gi < dyz; ++gi) {
          if (gb[gi] == 0) continue;
          for (std::size_t fi = 0; fi < dxy; ++fi) {
            if (fb[fi] == 0) continue;
            const Scalar coef = k.mul(gb[gi], fb[fi]);
            const Scalar* sv = s.data() + (gi * dxy + fi) * dxz;
            for (std::size_t t = 0; t < dxz; ++t) {
              if (sv[t] != 0) dst[t] = k.add(dst[t], k.mul(coef, sv[t]));
            }
          }
        }
      }
    }
  return out;
}

Mor Category::column(const Obj& src, const std::vector<Mor>& parts) const {
  Obj tgt;
  for (const auto& p : parts) {
    if (p.src.summands != src.summands) throw std::invalid_argument("column parts must share a source");
    tgt = tgt + p.tgt;
  }
  Mor out = zero(src, tgt);
  std::size_t row0 = 0;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < p.tgt.rank(); ++j)
      for (std::size_t i = 0; i < src.rank(); ++i) set_block(out, row0 + j, i, block(p, j, i));
    row0 += p.tgt.rank();
  }
  return out;
}

Mor Category::row(const Obj& tgt, const std::vector<Mor>& parts) const {
  Obj src;
  for (const auto& p : parts) {
    if (p.tgt.summands != tgt.summands) throw std::invalid_argument("row parts must share a target");
    src = src + p.src;
  }
  Mor out = zero(src, tgt);
  std::size_t col0 = 0;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < tgt.rank(); ++j)
      for (std::size_t i = 0; i < p.src.rank(); ++i) set_block(out, j, col0 + i, block(p, j, i));
    col0 += p.src.rank();
  }
  return out;
}

Mor Category::diagonal(const std::vector<Mor>& parts) const {
  Obj src, tgt;
  for (const auto& p : parts) {
    src = src + p.src;
    tgt = tgt + p.tgt;
  }
  Mor out = zero(src, tgt);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < p.tgt.rank(); ++j)
      for (std::size_t i = 0; i < p.src.rank(); ++i) set_block(out, r0 + j, c0 + i, block(p, j, i));
    r0 += p.tgt.rank();
    c0 += p.src.rank();
  }
  return out;
}

std::optional<Mor> Category::permutation(const Obj& x, const Obj& y) const {
  if (!(x == y)) return std::nullopt;
  Mor out = zero(x, y);
  std::vector<bool> used(y.rank(), false);
  for (std::size_t i = 0; i < x.rank(); ++i) {
    for (std::size_t j = 0; j < y.rank(); ++j) {
      if (!used[j] && y.summands[j] == x.summands[i]) {
        used[j] = true;
        set_block(out, j, i, p_.identity[static_cast<std::size_t>(x.summands[i])]);
        break;
      }
    }
  }
  return out;
}

Mor Category::summand_injection(const Obj& x, std::size_t first, std::size_t count) const {
  Obj part(std::vector<int>(x.summands.begin() + static_cast<std::ptrdiff_t>(first),
                            x.summands.begin() + static_cast<std::ptrdiff_t>(first + count)));
  Mor out = zero(part, x);
  for (std::size_t i = 0; i < count; ++i) set_block(out, first + i, i, p_.identity[static_cast<std::size_t>(part.summands[i])]);
  return out;
}

Mor Category::summand_projection(const Obj& x, std::size_t first, std::size_t count) const {
  Obj part(std::vector<int>(x.summands.begin() + static_cast<std::ptrdiff_t>(first),
                            x.summands.begin() + static_cast<std::ptrdiff_t>(first + count)));
  Mor out = zero(x, part);
  for (std::size_t i = 0; i < count; ++i) set_block(out, i, first + i, p_.identity[static_cast<std::size_t>(part.summands[i])]);
  return out;
}

Obj Category::apply(const FunctorData& F, const Obj& x) const {
  Obj out;
  for (int s : x.summands) out = out + F.on_objects[static_cast<std::size_t>(s)];
  return out;
}

Mor Category::apply(const FunctorData& F, const Mor& f) const {
  const Obj fx = apply(F, f.src);
  const Obj fy = apply(F, f.tgt);
  Mor out = zero(fx, fy);
  std::size_t r0 = 0;
  for (std::size_t j = 0; j < f.tgt.rank(); ++j) {
    const Obj& fyj = F.on_objects[static_cast<std::size_t>(f.tgt.summands[j])];
    std::size_t c0 = 0;
    for (std::size_t i = 0; i < f.src.rank(); ++i) {
      const Obj& fxi = F.on_objects[static_cast<std::size_t>(f.src.summands[i])];
      const auto& m = F.on_homs[static_cast<std::size_t>(f.src.summands[i])][static_cast<std::size_t>(f.tgt.summands[j])];
      Mor piece = from_coords(fxi, fyj, m.apply(block(f, j, i)));
      for (std::size_t q = 0; q < fyj.rank(); ++q)
        for (std::size_t r = 0; r < fxi.rank(); ++r) set_block(out, r0 + q, c0 + r, block(piece, q, r));
      c0 += fxi.rank();
    }
    r0 += fyj.rank();
  }
  return out;
}

Mat Category::functor_matrix(const FunctorData& F, const Obj& x, const Obj& y) const {
  const Obj fx = apply(F, x), fy = apply(F, y);
  Mat m(field(), hom_dim(fx, fy), hom_dim(x, y));
  auto basis = hom_basis(x, y);
  for (std::size_t k = 0; k < basis.size(); ++k) m.set_col(k, apply(F, basis[k]).coords);
  return m;
}

Mat Category::precompose_matrix(const Mor& f, const Obj& e) const {
  auto basis = hom_basis(f.tgt, e);
  Mat m(field(), hom_dim(f.src, e), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) m.set_col(k, compose(basis[k], f).coords);
  return m;
}

Mat Category::postcompose_matrix(const Mor& f, const Obj& e) const {
  auto basis = hom_basis(e, f.src);
  Mat m(field(), hom_dim(e, f.tgt), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) m.set_col(k, compose(f, basis[k]).coords);
  return m;
}

bool Category::nilpotent(int x, const Vec& e) const {
  const Obj o = indecomposable(x);
  Mor m = from_coords(o, o, e);
  Mor power = m;
  const auto d = hom_dim(x, x);
  for (std::size_t i = 0; i <= d + 1; ++i) {
    if (is_zero(power)) return true;
    power = compose(power, m);
  }
  return is_zero(power);
}

std::uint64_t family_size(const Field& k, std::size_t dim, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    n *= k.characteristic();
    if (n > cap) return cap + 1;
  }
  return n;
}

std::optional<std::vector<Vec>> enumerate_affine(const Field& k, const Vec& base, const std::vector<Vec>& directions,
                                                 std::uint64_t limit) {
  const auto total = family_size(k, directions.size(), limit);
  if (total > limit) return std::nullopt;
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<Scalar> digits(directions.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Vec v = base;
    for (std::size_t d = 0; d < directions.size(); ++d) {
      if (digits[d] == 0) continue;
      for (std::size_t t = 0; t < v.size(); ++t) v[t] = k.add(v[t], k.mul(digits[d], directions[d][t]));
    }
    out.push_back(std::move(v));
    for (std::size_t d = 0; d < digits.size(); ++d) {
      if (++digits[d] < k.characteristic()) break;
      digits[d] = 0;
    }
  }
  return out;
}

void Category::compute_locality() {
  const std::size_t n = size();
  locality_.assign(n, Locality::undecided);
  residue_functional_.assign(n, Vec{});
  residues_ok_ = true;
  const Field& k = field();
  for (std::size_t x = 0; x < n; ++x) {
    const auto d = p_.hom_dim[x][x];
    if (d == 0) {
      locality_[x] = Locality::not_local;
      residues_ok_ = false;
      continue;
    }
    std::vector<Vec> unit;
    for (std::size_t i = 0; i < d; ++i) {
      Vec v(d, 0);
      v[i] = 1;
      unit.push_back(v);
    }
    auto all = enumerate_affine(k, Vec(d, 0), unit, 1U << 16U);
    if (!all) {
      residues_ok_ = false;
      continue;
    }
    const Obj o = indecomposable(static_cast<int>(x));
    std::vector<Vec> nilpotents;
    bool local = true;
    for (const auto& e : *all) {
      if (nilpotent(static_cast<int>(x), e)) {
        nilpotents.push_back(e);
        continue;
      }
      Mat left = postcompose_matrix(from_coords(o, o, e), o);
      if (la::rank(left) != d) {
        local = false;
        break;
      }
    }
    if (!local) {
      locality_[x] = Locality::not_local;
      residues_ok_ = false;
      continue;
    }
    locality_[x] = Locality::local;
    Space rad = Space::span(k, d, nilpotents);
    // Residue field is F_p exactly when the radical has codimension one.
    if (rad.dim() + 1 != d || rad.contains(p_.identity[x])) {
      residues_ok_ = false;
      continue;
    }
    const auto q = rad.free_positions().front();
    const Scalar id_rep = rad.coset_representative(p_.identity[x])[q];
    Vec functional(d, 0);
    for (std::size_t i = 0; i < d; ++i) functional[i] = k.mul(rad.coset_representative(unit[i])[q], k.inv(id_rep));
    residue_functional_[x] = std::move(functional);
  }
  if (residues_ok_) {
    // Distinct indecomposables must be non-isomorphic for residue tests.
    for (std::size_t x = 0; x < n && residues_ok_; ++x)
      for (std::size_t y = 0; y < n && residues_ok_; ++y) {
        if (x == y) continue;
        const Obj ox = indecomposable(static_cast<int>(x)), oy = indecomposable(static_cast<int>(y));
        for (const auto& a : hom_basis(ox, oy))
          for (const auto& b : hom_basis(oy, ox)) {
            if (residue(static_cast<int>(x), compose(b, a).coords) != 0) residues_ok_ = false;
          }
      }
  }
}

Scalar Category::residue(int x, const Vec& endo) const {
  const auto& fn = residue_functional_[static_cast<std::size_t>(x)];
  Scalar acc = 0;
  for (std::size_t i = 0; i < fn.size(); ++i) acc = field().add(acc, field().mul(fn[i], endo[i]));
  return acc;
}

namespace {

// Residue matrices of f per indecomposable type: rows are target summands of
// that type, columns source summands.
bool residues_invertible(const Category& c, const Mor& f) {
  if (!(f.src == f.tgt)) return false;
  std::map<int, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> by_type;
  for (std::size_t i = 0; i < f.src.rank(); ++i) by_type[f.src.summands[i]].first.push_back(i);
  for (std::size_t j = 0; j < f.tgt.rank(); ++j) by_type[f.tgt.summands[j]].second.push_back(j);
  for (const auto& [type, idx] : by_type) {
    const auto& cols = idx.first;
    const auto& rows = idx.second;
    Mat m(c.field(), rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t s = 0; s < cols.size(); ++s) m(r, s) = c.residue(type, c.block(f, rows[r], cols[s]));
    if (la::rank(m) != rows.size()) return false;
  }
  return true;
}

}  // namespace

bool Category::is_invertible(const Mor& f) const {
  if (!(f.src == f.tgt)) return false;
  if (f.src.is_zero()) return true;
  if (residues_ok_) return residues_invertible(*this, f);
  return inverse(f).has_value();
}

std::optional<Mor> Category::inverse(const Mor& f) const {
  if (!(f.src == f.tgt)) return std::nullopt;
  const Obj& x = f.src;
  const Obj& y = f.tgt;
  auto basis = hom_basis(y, x);
  const auto dyy = hom_dim(y, y), dxx = hom_dim(x, x);
  Mat a(field(), dyy + dxx, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto left = compose(f, basis[k]).coords;
    auto right = compose(basis[k], f).coords;
    left.insert(left.end(), right.begin(), right.end());
    a.set_col(k, left);
  }
  Vec rhs = identity(y).coords;
  auto idx = identity(x).coords;
  rhs.insert(rhs.end(), idx.begin(), idx.end());
  auto sol = la::solve(a, rhs);
  if (!sol) return std::nullopt;
  return from_coords(y, x, sol->particular);
}

Mor Category::random_mor(const Obj& x, const Obj& y, Rng& rng) const {
  Mor f = zero(x, y);
  for (auto& c : f.coords) c = static_cast<Scalar>(rng() % field().characteristic());
  return f;
}

std::optional<Mor> Category::random_automorphism(const Obj& x, Rng& rng, int attempts) const {
  for (int t = 0; t < attempts; ++t) {
    Mor f = random_mor(x, x, rng);
    if (is_invertible(f)) return f;
  }
  return std::nullopt;
}

Biproduct direct_sum(const Category& c, const Obj& x, const Obj& y) {
  Biproduct b;
  b.sum = x + y;
  b.inject_x = c.summand_injection(b.sum, 0, x.rank());
  b.inject_y = c.summand_injection(b.sum, x.rank(), y.rank());
  b.project_x = c.summand_projection(b.sum, 0, x.rank());
  b.project_y = c.summand_projection(b.sum, x.rank(), y.rank());
  return b;
}

bool is_isomorphism(const Category& c, const Mor& f) { return c.inverse(f).has_value(); }

std::size_t slots_dim(const Category& c, const std::vector<HomSlot>& slots) {
  std::size_t d = 0;
  for (const auto& s : slots) d += c.hom_dim(s.src, s.tgt);
  return d;
}

std::vector<Mor> split_point(const Category& c, const std::vector<HomSlot>& slots, const Vec& point) {
  std::vector<Mor> out;
  std::size_t off = 0;
  for (const auto& s : slots) {
    const auto d = c.hom_dim(s.src, s.tgt);
    out.push_back(c.from_coords(s.src, s.tgt,
                                Vec(point.begin() + static_cast<std::ptrdiff_t>(off),
                                    point.begin() + static_cast<std::ptrdiff_t>(off + d))));
    off += d;
  }
  return out;
}

namespace {

bool all_invertible(const Category& c, const std::vector<HomSlot>& slots, const Vec& point) {
  for (const auto& m : split_point(c, slots, point)) {
    if (!c.is_invertible(m)) return false;
  }
  return true;
}

Vec axpy(const Field& k, Vec v, Scalar a, const Vec& d) {
  if (a == 0) return v;
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = k.add(v[t], k.mul(a, d[t]));
  return v;
}

// Linear residue functional on the concatenated slot coordinates: one row per
// residue-matrix entry of every slot.
Mat residue_map(const Category& c, const std::vector<HomSlot>& slots) {
  std::vector<Vec> rows;
  const auto total = slots_dim(c, slots);
  std::size_t base = 0;
  for (const auto& s : slots) {
    for (std::size_t j = 0; j < s.tgt.rank(); ++j)
      for (std::size_t i = 0; i < s.src.rank(); ++i) {
        if (s.src.summands[i] != s.tgt.summands[j]) continue;
        const int type = s.src.summands[i];
        const auto off = base + c.block_offset(s.src, s.tgt, j, i);
        Vec row(total, 0);
        const Obj o = c.indecomposable(type);
        const auto d = c.hom_dim(type, type);
        for (std::size_t t = 0; t < d; ++t) {
          Vec unit(d, 0);
          unit[t] = 1;
          row[off + t] = c.residue(type, unit);
        }
        rows.push_back(std::move(row));
      }
    base += c.hom_dim(s.src, s.tgt);
  }
  Mat m(c.field(), rows.size(), total);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t t = 0; t < total; ++t) m(r, t) = rows[r][t];
  return m;
}

}  // namespace

IsoSearch find_invertible(const Category& c, const std::vector<HomSlot>& slots, const Vec& particular,
                          const std::vector<Vec>& directions, Rng& rng, const SearchBudget& budget) {
  const Field& k = c.field();
  IsoSearch out;
  for (const auto& s : slots) {
    if (!(s.src == s.tgt)) return out;  // Krull-Schmidt: no isomorphism at all
  }
  std::vector<Vec> dirs = directions;
  if (c.residues_available()) {
    // Invertibility depends only on residues, so enumerate the image of the
    // family in residue coordinates and keep one preimage per residue class.
    Mat r = residue_map(c, slots);
    std::vector<Vec> chosen;
    std::vector<Vec> images;
    for (const auto& d : directions) {
      auto img = r.apply(d);
      auto trial = images;
      trial.push_back(img);
      if (Space::span(k, r.rows(), trial).dim() > images.size()) {
        images.push_back(img);
        chosen.push_back(d);
      }
    }
    dirs = std::move(chosen);
  }
  const auto total = family_size(k, dirs.size(), budget.enumerate_limit);
  if (total <= budget.enumerate_limit) {
    std::vector<Scalar> digits(dirs.size(), 0);
    for (std::uint64_t n = 0; n < total; ++n) {
      Vec v = particular;
      for (std::size_t d = 0; d < dirs.size(); ++d) v = axpy(k, std::move(v), digits[d], dirs[d]);
      if (all_invertible(c, slots, v)) {
        out.status = SearchStatus::found;
        out.point = std::move(v);
        return out;
      }
      for (std::size_t d = 0; d < digits.size(); ++d) {
        if (++digits[d] < k.characteristic()) break;
        digits[d] = 0;
      }
    }
    out.status = SearchStatus::none;
    return out;
  }
  out.exhaustive = false;
  for (std::size_t s = 0; s < budget.samples; ++s) {
    Vec v = particular;
    for (const auto& d : dirs) v = axpy(k, std::move(v), static_cast<Scalar>(rng() % k.characteristic()), d);
    if (all_invertible(c, slots, v)) {
      out.status = SearchStatus::found;
      out.point = std::move(v);
      return out;
    }
  }
  out.status = SearchStatus::undecided;
  return out;
}

IsoEnumeration find_isomorphisms(const Category& c, const Obj& x, const Obj& y, const Mat& constraints,
                                 const Vec& rhs, Rng& rng, const SearchBudget& budget) {
  IsoEnumeration out;
  if (!(x == y)) return out;
  const auto d = c.hom_dim(x, y);
  Vec particular(d, 0);
  std::vector<Vec> dirs;
  if (constraints.rows() > 0) {
    auto sol = la::solve(constraints, rhs);
    if (!sol) return out;
    particular = sol->particular;
    dirs = sol->nullspace.basis();
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      Vec u(d, 0);
      u[i] = 1;
      dirs.push_back(u);
    }
  }
  auto all = enumerate_affine(c.field(), particular, dirs, budget.enumerate_limit);
  if (all) {
    for (auto& v : *all) {
      Mor f = c.from_coords(x, y, std::move(v));
      if (c.is_invertible(f)) out.isomorphisms.push_back(std::move(f));
    }
    return out;
  }
  out.exhaustive = false;
  for (std::size_t s = 0; s < budget.samples; ++s) {
    Vec v = particular;
    for (const auto& dir : dirs) v = axpy(c.field(), std::move(v), static_cast<Scalar>(rng() % c.field().characteristic()), dir);
    Mor f = c.from_coords(x, y, std::move(v));
    if (c.is_invertible(f)) out.isomorphisms.push_back(std::move(f));
  }
  return out;
}

std::optional<std::vector<Mor>> automorphism_group(const Category& c, const Obj& x, std::uint64_t limit) {
  const auto d = c.hom_dim(x, x);
  std::vector<Vec> unit;
  for (std::size_t i = 0; i < d; ++i) {
    Vec u(d, 0);
    u[i] = 1;
    unit.push_back(u);
  }
  auto all = enumerate_affine(c.field(), Vec(d, 0), unit, limit);
  if (!all) return std::nullopt;
  std::vector<Mor> out;
  for (auto& v : *all) {
    Mor f = c.from_coords(x, x, std::move(v));
    if (c.is_invertible(f)) out.push_back(std::move(f));
  }
  return out;
}

bool functor_full_on(const Category& c, const FunctorData& F, const std::vector<std::pair<Obj, Obj>>& pairs) {
  for (const auto& [x, y] : pairs) {
    Mat m = c.functor_matrix(F, x, y);
    if (la::rank(m) != m.rows()) return false;
  }
  return true;
}

bool functor_faithful_on(const Category& c, const FunctorData& F, const std::vector<std::pair<Obj, Obj>>& pairs) {
  for (const auto& [x, y] : pairs) {
    Mat m = c.functor_matrix(F, x, y);
    if (la::rank(m) != m.cols()) return false;
  }
  return true;
}

nlohmann::json to_json(const Category& c, const Obj& x) {
  auto arr = nlohmann::json::array();
  for (int s : x.summands) arr.push_back(c.name(s));
  return arr;
}

nlohmann::json to_json(const Category& c, const Mor& f) {
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t j = 0; j < f.tgt.rank(); ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t i = 0; i < f.src.rank(); ++i) row.push_back(c.block(f, j, i));
    blocks.push_back(row);
  }
  return {{"src", to_json(c, f.src)}, {"tgt", to_json(c, f.tgt)}, {"blocks", blocks}};
}

}  // namespace tricat
