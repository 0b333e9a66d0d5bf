#include "tricat/validate.hpp"

namespace tricat {

namespace {

CheckResult check_identities(const Category& c) {
  CheckResult r{"identity"};
  const int n = static_cast<int>(c.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Obj ox = c.indecomposable(x), oy = c.indecomposable(y);
      for (const auto& f : c.hom_basis(ox, oy)) {
        ++r.cases;
        if (!c.equal(c.compose(c.identity(oy), f), f) || !c.equal(c.compose(f, c.identity(ox)), f)) {
          r.fail("identity law fails on a basis morphism " + c.name(x) + " -> " + c.name(y),
                 {{"source", c.name(x)}, {"target", c.name(y)}, {"morphism", f.coords}});
        }
      }
    }
  return r;
}

CheckResult check_associativity(const Category& c) {
  CheckResult r{"associativity"};
  const int n = static_cast<int>(c.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          const Obj ox = c.indecomposable(x), oy = c.indecomposable(y), oz = c.indecomposable(z),
                    ow = c.indecomposable(w);
          const auto fs = c.hom_basis(ox, oy);
          const auto gs = c.hom_basis(oy, oz);
          const auto hs = c.hom_basis(oz, ow);
          for (std::size_t a = 0; a < fs.size(); ++a)
            for (std::size_t b = 0; b < gs.size(); ++b)
              for (std::size_t d = 0; d < hs.size(); ++d) {
                ++r.cases;
                const Mor left = c.compose(c.compose(hs[d], gs[b]), fs[a]);
                const Mor right = c.compose(hs[d], c.compose(gs[b], fs[a]));
                if (!c.equal(left, right)) {
                  r.fail("associativity fails on basis triple",
                         {{"objects", {c.name(x), c.name(y), c.name(z), c.name(w)}},
                          {"basis_indices", {a, b, d}},
                          {"left", left.coords},
                          {"right", right.coords}});
                }
              }
        }
  return r;
}

CheckResult check_locality(const Category& c) {
  CheckResult r{"local endomorphism rings"};
  for (int x = 0; x < static_cast<int>(c.size()); ++x) {
    ++r.cases;
    switch (c.locality(x)) {
      case Locality::local:
        break;
      case Locality::not_local:
        r.fail("End(" + c.name(x) + ") is not local", {{"object", c.name(x)}});
        break;
      case Locality::undecided:
        r.undecided("End(" + c.name(x) + ") too large to enumerate");
        break;
    }
  }
  return r;
}

}  // namespace

CheckResult check_functor_laws(const Category& c, const FunctorData& F, const std::string& name) {
  CheckResult r{name + " functor laws"};
  const int n = static_cast<int>(c.size());
  for (int x = 0; x < n; ++x) {
    const Obj ox = c.indecomposable(x);
    ++r.cases;
    if (!c.equal(c.apply(F, c.identity(ox)), c.identity(c.apply(F, ox)))) {
      r.fail(name + " does not preserve the identity of " + c.name(x), {{"object", c.name(x)}});
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const Obj ox = c.indecomposable(x), oy = c.indecomposable(y), oz = c.indecomposable(z);
        const auto fs = c.hom_basis(ox, oy);
        const auto gs = c.hom_basis(oy, oz);
        for (std::size_t a = 0; a < fs.size(); ++a)
          for (std::size_t b = 0; b < gs.size(); ++b) {
            ++r.cases;
            const Mor left = c.apply(F, c.compose(gs[b], fs[a]));
            const Mor right = c.compose(c.apply(F, gs[b]), c.apply(F, fs[a]));
            if (!c.equal(left, right)) {
              r.fail(name + " does not preserve composition",
                     {{"objects", {c.name(x), c.name(y), c.name(z)}}, {"basis_indices", {a, b}}});
            }
          }
      }
  return r;
}

Report validate_presentation(const Category& c) {
  Report rep{"presentation"};
  rep.add(check_identities(c));
  rep.add(check_associativity(c));
  rep.add(check_locality(c));
  rep.add(check_functor_laws(c, c.presentation().shift, "shift"));
  return rep;
}

}  // namespace tricat
