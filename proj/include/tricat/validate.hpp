#pragma once

#include "tricat/category.hpp"
#include "tricat/report.hpp"

namespace tricat {

// Associativity and identity laws on every basis triple, locality of the
// endomorphism algebras, and functor laws for the shift. Each violation
// carries a witness naming the offending indecomposables and basis indices.
Report validate_presentation(const Category& c);

// Functor laws for F on all basis pairs of indecomposables.
CheckResult check_functor_laws(const Category& c, const FunctorData& F, const std::string& name);

}  // namespace tricat
