#pragma once

// Finitely generated projective right modules M = e C(I), presented by an
// idempotent degree-0 matrix over a free cover C(I).
//
// An element of M_x is a column v with v_i in hom(x_i, x) and e v = v.
// A dual element at x is a row r with r_i in hom(x, x_i) and r e = r.
// The canonical generators are the columns m_i of e and the dual basis is
// given by the rows of e, so the Gram matrix (phi^i(m_j)) is e itself.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/dg.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

struct FreeModule {
    std::shared_ptr<const Category> base;
    std::vector<ObjectId> index;
};

FreeModule free_module(std::shared_ptr<const Category> c, std::vector<ObjectId> index);

class ProjectiveModule {
public:
    /// Throws idempotency_error (with a witness entry) unless e * e == e.
    ProjectiveModule(std::shared_ptr<const Category> base, std::vector<ObjectId> index, FormMatrix e);

    const Category& base() const { return *base_; }
    const std::shared_ptr<const Category>& base_ptr() const { return base_; }
    /// Degree-0 DG data over the base, used for matrix arithmetic.
    const DGCategory& algebra() const { return *algebra_; }
    const std::vector<ObjectId>& index() const { return index_; }
    std::size_t generator_count() const { return index_.size(); }
    const FormMatrix& idempotent() const { return e_; }
    bool is_free() const;

    /// Length of a flattened column at x (sum of dim hom(x_i, x)).
    std::size_t column_dim(ObjectId x) const;
    /// Basis of M_x as flattened e-fixed columns.
    const std::vector<Vector>& component_basis(ObjectId x) const { return component_basis_.at(x); }
    std::size_t component_dim(ObjectId x) const { return component_basis(x).size(); }

    friend bool operator==(const ProjectiveModule& a, const ProjectiveModule& b) {
        return *a.base_ == *b.base_ && a.index_ == b.index_ && a.e_ == b.e_;
    }

private:
    std::shared_ptr<const Category> base_;
    std::shared_ptr<const DGCategory> algebra_;
    std::vector<ObjectId> index_;
    FormMatrix e_;
    std::vector<std::vector<Vector>> component_basis_;
};

ProjectiveModule as_projective(const FreeModule& f);
/// e must be a degree-0 form matrix over the index family I.
ProjectiveModule module_from_idempotent(std::shared_ptr<const Category> c, std::vector<ObjectId> index,
                                        const FormMatrix& e);

/// A column of forms: entry i is a degree-n form from x to x_i.
struct ModuleElement {
    ObjectId at = 0;
    FormMatrix column;  // rows = I, cols = {at}
};

struct DualElement {
    ObjectId at = 0;
    FormMatrix row;  // rows = {at}, cols = I
};

ModuleElement generator(const ProjectiveModule& m, std::size_t i);
DualElement dual_generator(const ProjectiveModule& m, std::size_t i);
/// Element of M_x from a flattened column; throws unless e v = v.
ModuleElement module_element(const ProjectiveModule& m, ObjectId x, const Vector& flat);
Vector flatten_column(const FormMatrix& column);
/// The Gram matrix Psi = (phi^i(m_j)).
FormMatrix gram_matrix(const ProjectiveModule& m);
/// m . f for f in hom(x, y), an element at y.
ModuleElement act(const ProjectiveModule& m, const ModuleElement& v, const Morphism& f);
/// phi(v) in hom(phi.at, v.at).
Morphism pair(const ProjectiveModule& m, const ModuleElement& v, const DualElement& phi);

/// A morphism M -> N stored compressed as e_N U e_M.
struct ModuleMorphism {
    FormMatrix matrix;  // rows = target index, cols = source index
};
using ModuleEndomorphism = ModuleMorphism;

ModuleMorphism module_morphism(const ProjectiveModule& source, const ProjectiveModule& target, const FormMatrix& u);
ModuleMorphism identity_morphism(const ProjectiveModule& m);
/// v o w for w : M -> N and v : N -> P.
ModuleMorphism compose(const ProjectiveModule& m, const ModuleMorphism& v, const ModuleMorphism& w);
ModuleElement apply(const ProjectiveModule& m, const ModuleMorphism& u, const ModuleElement& v);

/// Hattori-Stallings trace: the class of sum_i (e U e)_ii in C_ab.
Vector hs_trace(const ProjectiveModule& m, const ModuleMorphism& u);
/// ev(v (x) phi) = phi(v) + [C, C].
Vector evaluation(const ProjectiveModule& m, const ModuleElement& v, const DualElement& phi);
/// sum_i ev(u(m_i) (x) phi^i), the trace computed through M (x)_C M*.
Vector trace_through_evaluation(const ProjectiveModule& m, const ModuleMorphism& u);

struct DirectSum {
    ProjectiveModule sum;
    ModuleMorphism inj1, inj2, proj1, proj2;
};

DirectSum direct_sum(const ProjectiveModule& a, const ProjectiveModule& b);

// ---------------------------------------------------------------------------
// Tensor products with forms

/// (M (x)_C Omega^n)_x realized as e-fixed columns of degree-n forms.
struct FormTensorSpace {
    std::size_t degree = 0;
    ObjectId at = 0;
    std::vector<Vector> basis;  // flattened e-fixed columns
    SpanSolver solver;

    std::size_t dim() const { return basis.size(); }
    /// Coordinates of an e-fixed column; throws std::logic_error otherwise.
    Vector coordinates(const Vector& flat) const;
};

FormTensorSpace tensor_with_forms(const ProjectiveModule& m, const DGCategory& w, std::size_t n, ObjectId x);

/// Brute-force right module: component spaces with explicit bases and action
/// tables act[y * k + y'] : M_y (x) hom(y, y') -> M_y'.
struct GeneralModule {
    std::shared_ptr<const Category> base;
    std::vector<std::size_t> dims;
    std::vector<BilinearTable> act;
};

std::vector<Violation> validate_module(const GeneralModule& m);
/// The right module structure of e C(I) in the basis component_basis(y).
GeneralModule as_general_module(const ProjectiveModule& m);
/// Degree-n forms with fixed codomain z, y |-> Omega^n(z, y), acted on by composition.
GeneralModule forms_as_right_module(const DGCategory& w, std::size_t n, ObjectId z);

/// The literal quotient of (+)_y M_y (x) Omega^n(y, x) by m.f (x) zeta - m (x) f zeta.
struct LiteralTensor {
    std::size_t degree = 0;
    ObjectId at = 0;
    std::vector<std::size_t> offsets;  // block y starts at offsets[y]; pair (a, b) at offsets[y] + a * dim Omega + b
    QuotientSpace quotient;
};

LiteralTensor literal_tensor(const GeneralModule& m, const DGCategory& w, std::size_t n, ObjectId x);

/// Comparison of the literal quotient with a concrete model through a linear
/// realization map defined on the ambient sum.
struct TensorComparison {
    std::size_t literal_dim = 0;
    std::size_t model_dim = 0;
    bool well_defined = false;  // the realization kills every relation
    bool isomorphism = false;   // and induces a bijection
};

/// e-fixed columns versus the literal quotient, through m (x) zeta |-> m zeta.
TensorComparison compare_tensor_models(const ProjectiveModule& m, const DGCategory& w, std::size_t n, ObjectId x);
/// Omega^p(z, -) (x)_C Omega^q versus Omega^{p+q}(z, x), through composition.
TensorComparison compare_form_products(const DGCategory& w, std::size_t p, std::size_t q, ObjectId z, ObjectId x);

}  // namespace lincat
