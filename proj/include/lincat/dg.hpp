#pragma once

// Truncated DG-categories given by explicit tables, the universal-forms
// builder, polynomial forms Omega[t] and the epsilon extension.
//
// Forms of degree > N are killed. Composition tables exist for p + q <= N and
// the differential out of degree N is zero.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

struct DGTables {
    std::size_t truncation = 0;
    // labels[n][x][y]: basis of degree-n forms from y to x, n = 0..N
    std::vector<std::vector<std::vector<std::vector<std::string>>>> labels;
    // composition[p][q][(x*k+y)*k+z] for p + q <= N (empty otherwise)
    std::vector<std::vector<std::vector<BilinearTable>>> composition;
    // differential[n][x*k+y]: dim(n+1,x,y) x dim(n,x,y), n < N
    std::vector<std::vector<Matrix>> differential;

    friend bool operator==(const DGTables&, const DGTables&) = default;
};

class DGCategory {
public:
    /// Checks table shapes only; the DG axioms are checked by validate_dg.
    DGCategory(std::shared_ptr<const Category> base, DGTables tables);

    const Category& base() const { return *base_; }
    const std::shared_ptr<const Category>& base_ptr() const { return base_; }
    const DGTables& tables() const { return tables_; }

    std::size_t truncation() const { return tables_.truncation; }
    std::size_t object_count() const { return base_->object_count(); }

    /// Zero for n > N.
    std::size_t dim(std::size_t n, ObjectId x, ObjectId y) const;
    const std::vector<std::string>& labels(std::size_t n, ObjectId x, ObjectId y) const;
    /// Table for degree p (x) degree q; nullptr when p + q > N.
    const BilinearTable* composition(std::size_t p, std::size_t q, ObjectId x, ObjectId y, ObjectId z) const;
    /// d: degree n -> n + 1 on forms from y to x; requires n < N.
    const Matrix& differential(std::size_t n, ObjectId x, ObjectId y) const;

    std::size_t diagonal_dim(std::size_t n) const;
    std::size_t diagonal_offset(std::size_t n, ObjectId x) const;

    /// Index of a basis label in degree n from y to x ('*' is accepted for '·').
    std::optional<std::size_t> find_label(std::size_t n, ObjectId x, ObjectId y, const std::string& label) const;

private:
    std::shared_ptr<const Category> base_;
    DGTables tables_;
};

// ---------------------------------------------------------------------------
// Homogeneous forms

struct Form {
    std::size_t degree = 0;
    ObjectId cod = 0;
    ObjectId dom = 0;
    Vector coords;

    friend bool operator==(const Form&, const Form&) = default;
};

Form zero_form(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom);
Form basis_form(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom, std::size_t index);
Form identity_form(const DGCategory& w, ObjectId x);

/// omega zeta; degrees add, zero when the sum exceeds N. Throws composition_error.
Form compose_forms(const DGCategory& w, const Form& omega, const Form& zeta);
/// d omega, of degree n + 1 (zero-dimensional, hence zero, when n = N).
Form differential(const DGCategory& w, const Form& omega);

Form add_forms(const Form& a, const Form& b);
Form scale_form(const Form& a, const Scalar& s);
bool is_zero(const Form& f);

std::string format_form(const DGCategory& w, const Form& f);

// ---------------------------------------------------------------------------
// Diagonal forms: one component in degree-n forms from x to x per object.

struct DiagonalForm {
    std::size_t degree = 0;
    std::vector<Vector> components;

    friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;
};

DiagonalForm zero_diagonal(const DGCategory& w, std::size_t n);
Vector flatten(const DGCategory& w, const DiagonalForm& d);
DiagonalForm unflatten(const DGCategory& w, std::size_t n, const Vector& v);
/// Places a form with cod == dom into a diagonal form.
DiagonalForm to_diagonal(const DGCategory& w, const Form& f);
std::string format_diagonal(const DGCategory& w, const DiagonalForm& d);

// ---------------------------------------------------------------------------
// Polynomial forms sum_i omega_i t^i

struct PolyForm {
    std::size_t degree = 0;
    ObjectId cod = 0;
    ObjectId dom = 0;
    std::vector<Vector> coeffs;  // coefficient of t^i; may be empty (zero)

    std::size_t t_degree_bound() const { return coeffs.size(); }
    Form coefficient(std::size_t i, const DGCategory& w) const;
};

PolyForm constant_poly(const Form& f);
PolyForm monomial(const Form& f, std::size_t power);
PolyForm zero_poly(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom);
PolyForm add_poly(const PolyForm& a, const PolyForm& b);
PolyForm scale_poly(const PolyForm& a, const Scalar& s);
bool poly_equal(const PolyForm& a, const PolyForm& b);  // ignores trailing zeros

PolyForm compose_poly(const DGCategory& w, const PolyForm& a, const PolyForm& b);
PolyForm diff_poly(const DGCategory& w, const PolyForm& a);
PolyForm t_derivative(const PolyForm& a);
Form definite_integral_01(const DGCategory& w, const PolyForm& a);
Form evaluate_at(const DGCategory& w, const PolyForm& a, const Scalar& t);

// ---------------------------------------------------------------------------
// Epsilon extension: omega0 + omega1 eps with |omega1| = |omega0| - 1.

struct TildeForm {
    PolyForm omega0;
    std::optional<PolyForm> omega1;  // absent in degree 0

    std::size_t degree() const { return omega0.degree; }
    ObjectId cod() const { return omega0.cod; }
    ObjectId dom() const { return omega0.dom; }
};

TildeForm make_tilde(const DGCategory& w, PolyForm omega0, std::optional<PolyForm> omega1 = std::nullopt);
TildeForm zero_tilde(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom);
TildeForm add_tilde(const TildeForm& a, const TildeForm& b);
bool tilde_equal(const TildeForm& a, const TildeForm& b);

/// (w0 + w1 eps)(z0 + z1 eps) = w0 z0 + (w0 z1 + (-1)^{|z0|} w1 z0) eps
TildeForm compose_tilde(const DGCategory& w, const TildeForm& a, const TildeForm& b);
/// partial(w0 + w1 eps) = d w0 + (d w1 + (-1)^(n+1) dw0/dt) eps, i.e. partial t = -eps.
/// With this sign partial(lambda t) = (d lambda) t + lambda eps for |lambda| = 1.
TildeForm partial(const DGCategory& w, const TildeForm& a);

// ---------------------------------------------------------------------------
// Matrices of homogeneous forms: entry (i, j) is a degree-n form from
// cols[j] to rows[i].

struct FormMatrix {
    std::vector<ObjectId> rows;
    std::vector<ObjectId> cols;
    std::size_t degree = 0;
    std::vector<Vector> entries;  // row-major

    Vector& at(std::size_t i, std::size_t j) { return entries[i * cols.size() + j]; }
    const Vector& at(std::size_t i, std::size_t j) const { return entries[i * cols.size() + j]; }
    Form entry(std::size_t i, std::size_t j) const { return {degree, rows[i], cols[j], at(i, j)}; }

    friend bool operator==(const FormMatrix&, const FormMatrix&) = default;
};

FormMatrix zero_matrix(const DGCategory& w, const std::vector<ObjectId>& rows, const std::vector<ObjectId>& cols,
                       std::size_t n);
FormMatrix identity_matrix(const DGCategory& w, const std::vector<ObjectId>& index);
FormMatrix multiply(const DGCategory& w, const FormMatrix& a, const FormMatrix& b);
FormMatrix add(const FormMatrix& a, const FormMatrix& b);
FormMatrix subtract(const FormMatrix& a, const FormMatrix& b);
FormMatrix scale(const FormMatrix& a, const Scalar& s);
FormMatrix differential(const DGCategory& w, const FormMatrix& a);
FormMatrix power(const DGCategory& w, const FormMatrix& a, std::size_t q);
FormMatrix block_diagonal(const DGCategory& w, const FormMatrix& a, const FormMatrix& b);
bool is_zero(const FormMatrix& a);
/// Sum of diagonal entries, collected per object. Requires rows == cols.
DiagonalForm trace(const DGCategory& w, const FormMatrix& a);

struct TildeMatrix {
    std::vector<ObjectId> rows;
    std::vector<ObjectId> cols;
    std::size_t degree = 0;
    std::vector<TildeForm> entries;  // row-major

    const TildeForm& at(std::size_t i, std::size_t j) const { return entries[i * cols.size() + j]; }
};

/// Entrywise (lambda t + 0 eps).
TildeMatrix tilde_linear_in_t(const DGCategory& w, const FormMatrix& a);
TildeMatrix multiply(const DGCategory& w, const TildeMatrix& a, const TildeMatrix& b);
TildeMatrix add(const TildeMatrix& a, const TildeMatrix& b);
TildeMatrix partial(const DGCategory& w, const TildeMatrix& a);

struct TildeTrace {
    std::size_t degree = 0;
    std::vector<DiagonalForm> omega0;  // per power of t, degree n
    std::vector<DiagonalForm> omega1;  // per power of t, degree n - 1
};
TildeTrace trace(const DGCategory& w, const TildeMatrix& a);

// ---------------------------------------------------------------------------
// Construction and validation

/// Universal differential forms truncated at N >= 1. Degree-n forms from y to
/// x are realized inside the tensor power C^{(x)(n+1)} as the joint kernel of
/// the adjacent multiplications, with basis c0 dc1 ... dcn (c0 any basis
/// arrow, ci a non-identity basis arrow).
DGCategory universal_dg(std::shared_ptr<const Category> c, std::size_t truncation);
/// All forms of positive degree are zero.
DGCategory trivial_dg(std::shared_ptr<const Category> c, std::size_t truncation);

std::vector<Violation> validate_dg(const DGCategory& w);

}  // namespace lincat
