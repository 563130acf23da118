#include "lincat/module.hpp"

#include <stdexcept>

#include "lincat/errors.hpp"

namespace lincat {

namespace {

void check_objects(const Category& c, const std::vector<ObjectId>& index) {
    if (index.empty()) throw input_error("a module needs a nonempty index family");
    for (ObjectId x : index) {
        if (x >= c.object_count()) throw input_error("unknown object id " + std::to_string(x) + " in index family");
    }
}

FormMatrix column_from_flat(const DGCategory& w, const std::vector<ObjectId>& index, std::size_t n, ObjectId x,
                            const Vector& flat) {
    FormMatrix col = zero_matrix(w, index, {x}, n);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const std::size_t len = w.dim(n, index[i], x);
        if (offset + len > flat.size()) throw input_error("flattened column is too short");
        col.at(i, 0).assign(flat.begin() + static_cast<std::ptrdiff_t>(offset),
                            flat.begin() + static_cast<std::ptrdiff_t>(offset + len));
        offset += len;
    }
    if (offset != flat.size()) throw input_error("flattened column is too long");
    return col;
}

std::size_t flat_column_dim(const DGCategory& w, const std::vector<ObjectId>& index, std::size_t n, ObjectId x) {
    std::size_t d = 0;
    for (ObjectId xi : index) d += w.dim(n, xi, x);
    return d;
}

// Matrix of v |-> e v on flattened degree-n columns at x.
Matrix idempotent_action(const DGCategory& w, const FormMatrix& e, std::size_t n, ObjectId x) {
    const std::size_t len = flat_column_dim(w, e.rows, n, x);
    std::vector<Vector> cols;
    cols.reserve(len);
    for (std::size_t j = 0; j < len; ++j) {
        cols.push_back(flatten_column(multiply(w, e, column_from_flat(w, e.rows, n, x, unit_vector(len, j)))));
    }
    return Matrix::from_columns(cols, len);
}

std::vector<Vector> column_space_basis(const Matrix& m) {
    std::vector<Vector> out;
    for (std::size_t p : rref(m).pivots) out.push_back(m.column(p));
    return out;
}

Vector diagonal_class(const Category& c, ObjectId x, const Vector& coords) {
    DiagonalElement d;
    for (ObjectId z = 0; z < c.object_count(); ++z) d.emplace_back(c.dim(z, z));
    d[x] = coords;
    return commutator_class(c, d);
}

TensorComparison compare(const LiteralTensor& lit, const Matrix& realization, std::size_t model_dim) {
    TensorComparison out;
    out.literal_dim = lit.quotient.dim();
    out.model_dim = model_dim;
    out.well_defined = true;
    for (const Vector& r : lit.quotient.subspace_basis()) {
        if (!is_zero(realization.apply(r))) out.well_defined = false;
    }
    std::vector<Vector> images;
    for (std::size_t k = 0; k < lit.quotient.dim(); ++k) {
        images.push_back(realization.apply(lit.quotient.lift(unit_vector(lit.quotient.dim(), k))));
    }
    const std::size_t rank = images.empty() ? 0 : rref(Matrix::from_columns(images, model_dim)).rank;
    out.isomorphism = out.well_defined && rank == out.literal_dim && rank == model_dim;
    return out;
}

}  // namespace

FreeModule free_module(std::shared_ptr<const Category> c, std::vector<ObjectId> index) {
    check_objects(*c, index);
    return {std::move(c), std::move(index)};
}

ProjectiveModule::ProjectiveModule(std::shared_ptr<const Category> base, std::vector<ObjectId> index, FormMatrix e)
    : base_(std::move(base)), index_(std::move(index)), e_(std::move(e)) {
    check_objects(*base_, index_);
    algebra_ = std::make_shared<const DGCategory>(trivial_dg(base_, 0));
    if (e_.degree != 0 || e_.rows != index_ || e_.cols != index_) {
        throw input_error("idempotent must be a degree-0 matrix over the index family");
    }
    for (std::size_t i = 0; i < e_.entries.size(); ++i) {
        const std::size_t r = i / index_.size();
        const std::size_t c = i % index_.size();
        if (e_.entries[i].size() != base_->dim(index_[r], index_[c])) {
            throw input_error("idempotent entry (" + std::to_string(r) + "," + std::to_string(c) + ") has wrong length");
        }
    }
    const FormMatrix sq = multiply(*algebra_, e_, e_);
    for (std::size_t r = 0; r < index_.size(); ++r)
        for (std::size_t c = 0; c < index_.size(); ++c) {
            if (sq.at(r, c) != e_.at(r, c)) {
                throw idempotency_error("e*e != e at entry (" + std::to_string(r) + "," + std::to_string(c) +
                                        "): (e*e) = " + format_form(*algebra_, sq.entry(r, c)) +
                                        ", e = " + format_form(*algebra_, e_.entry(r, c)));
            }
        }
    for (ObjectId x = 0; x < base_->object_count(); ++x) {
        component_basis_.push_back(column_space_basis(idempotent_action(*algebra_, e_, 0, x)));
    }
}

bool ProjectiveModule::is_free() const { return e_ == identity_matrix(*algebra_, index_); }

std::size_t ProjectiveModule::column_dim(ObjectId x) const { return flat_column_dim(*algebra_, index_, 0, x); }

ProjectiveModule as_projective(const FreeModule& f) {
    auto w = trivial_dg(f.base, 0);
    return ProjectiveModule(f.base, f.index, identity_matrix(w, f.index));
}

ProjectiveModule module_from_idempotent(std::shared_ptr<const Category> c, std::vector<ObjectId> index,
                                        const FormMatrix& e) {
    return ProjectiveModule(std::move(c), std::move(index), e);
}

Vector flatten_column(const FormMatrix& column) {
    Vector out;
    for (const Vector& v : column.entries) out.insert(out.end(), v.begin(), v.end());
    return out;
}

ModuleElement generator(const ProjectiveModule& m, std::size_t i) {
    const FormMatrix& e = m.idempotent();
    FormMatrix col = zero_matrix(m.algebra(), m.index(), {m.index().at(i)}, 0);
    for (std::size_t r = 0; r < m.generator_count(); ++r) col.at(r, 0) = e.at(r, i);
    return {m.index()[i], std::move(col)};
}

DualElement dual_generator(const ProjectiveModule& m, std::size_t i) {
    const FormMatrix& e = m.idempotent();
    FormMatrix row = zero_matrix(m.algebra(), {m.index().at(i)}, m.index(), 0);
    for (std::size_t c = 0; c < m.generator_count(); ++c) row.at(0, c) = e.at(i, c);
    return {m.index()[i], std::move(row)};
}

ModuleElement module_element(const ProjectiveModule& m, ObjectId x, const Vector& flat) {
    FormMatrix col = column_from_flat(m.algebra(), m.index(), 0, x, flat);
    if (multiply(m.algebra(), m.idempotent(), col) != col) throw input_error("column is not fixed by the idempotent");
    return {x, std::move(col)};
}

FormMatrix gram_matrix(const ProjectiveModule& m) {
    FormMatrix psi = zero_matrix(m.algebra(), m.index(), m.index(), 0);
    for (std::size_t i = 0; i < m.generator_count(); ++i)
        for (std::size_t j = 0; j < m.generator_count(); ++j) {
            psi.at(i, j) = pair(m, generator(m, j), dual_generator(m, i)).coords;
        }
    return psi;
}

ModuleElement act(const ProjectiveModule& m, const ModuleElement& v, const Morphism& f) {
    if (f.cod != v.at) throw composition_error("cannot act: morphism does not start at the element's object");
    FormMatrix fm{{f.cod}, {f.dom}, 0, {f.coords}};
    return {f.dom, multiply(m.algebra(), v.column, fm)};
}

Morphism pair(const ProjectiveModule& m, const ModuleElement& v, const DualElement& phi) {
    const FormMatrix p = multiply(m.algebra(), phi.row, v.column);
    return {phi.at, v.at, p.at(0, 0)};
}

ModuleMorphism module_morphism(const ProjectiveModule& source, const ProjectiveModule& target, const FormMatrix& u) {
    if (u.degree != 0 || u.rows != target.index() || u.cols != source.index()) {
        throw input_error("module morphism matrix does not match the index families");
    }
    const DGCategory& w = source.algebra();
    return {multiply(w, multiply(w, target.idempotent(), u), source.idempotent())};
}

ModuleMorphism identity_morphism(const ProjectiveModule& m) { return {m.idempotent()}; }

ModuleMorphism compose(const ProjectiveModule& m, const ModuleMorphism& v, const ModuleMorphism& w) {
    return {multiply(m.algebra(), v.matrix, w.matrix)};
}

ModuleElement apply(const ProjectiveModule& m, const ModuleMorphism& u, const ModuleElement& v) {
    return {v.at, multiply(m.algebra(), u.matrix, v.column)};
}

Vector hs_trace(const ProjectiveModule& m, const ModuleMorphism& u) {
    if (u.matrix.rows != m.index() || u.matrix.cols != m.index()) {
        throw input_error("trace: endomorphism does not match the module's index family");
    }
    const DiagonalForm d = trace(m.algebra(), u.matrix);
    return commutator_class(m.base(), d.components);
}

Vector evaluation(const ProjectiveModule& m, const ModuleElement& v, const DualElement& phi) {
    if (v.at != phi.at) throw composition_error("cannot evaluate an element and a dual element at different objects");
    const Morphism p = pair(m, v, phi);
    return diagonal_class(m.base(), p.cod, p.coords);
}

Vector trace_through_evaluation(const ProjectiveModule& m, const ModuleMorphism& u) {
    Vector total = abelianization(m.base()).coordinates(zero_vector(m.base().diagonal_dim()));
    for (std::size_t i = 0; i < m.generator_count(); ++i) {
        axpy(total, 1, evaluation(m, apply(m, u, generator(m, i)), dual_generator(m, i)));
    }
    return total;
}

DirectSum direct_sum(const ProjectiveModule& a, const ProjectiveModule& b) {
    if (!(a.base() == b.base())) throw input_error("direct sum of modules over different categories");
    const DGCategory& w = a.algebra();
    const FormMatrix e = block_diagonal(w, a.idempotent(), b.idempotent());
    ProjectiveModule sum(a.base_ptr(), e.rows, e);
    auto embed = [&](const std::vector<ObjectId>& rows, const std::vector<ObjectId>& cols, const FormMatrix& block,
                     std::size_t row_off, std::size_t col_off) {
        FormMatrix out = zero_matrix(w, rows, cols, 0);
        for (std::size_t i = 0; i < block.rows.size(); ++i)
            for (std::size_t j = 0; j < block.cols.size(); ++j) out.at(row_off + i, col_off + j) = block.at(i, j);
        return ModuleMorphism{out};
    };
    const std::size_t na = a.generator_count();
    return {sum,
            embed(e.rows, a.index(), a.idempotent(), 0, 0),
            embed(e.rows, b.index(), b.idempotent(), na, 0),
            embed(a.index(), e.rows, a.idempotent(), 0, 0),
            embed(b.index(), e.rows, b.idempotent(), 0, na)};
}

// ---------------------------------------------------------------------------

Vector FormTensorSpace::coordinates(const Vector& flat) const {
    auto c = solver.solve(flat);
    if (!c) throw std::logic_error("column does not lie in the tensor space");
    return *c;
}

FormTensorSpace tensor_with_forms(const ProjectiveModule& m, const DGCategory& w, std::size_t n, ObjectId x) {
    if (n > w.truncation()) throw truncation_error("tensor with forms of degree above the truncation");
    FormTensorSpace out;
    out.degree = n;
    out.at = x;
    out.basis = column_space_basis(idempotent_action(w, m.idempotent(), n, x));
    out.solver = SpanSolver(out.basis, flat_column_dim(w, m.index(), n, x));
    return out;
}

std::vector<Violation> validate_module(const GeneralModule& m) {
    std::vector<Violation> out;
    const Category& c = *m.base;
    const std::size_t k = c.object_count();
    for (ObjectId y = 0; y < k; ++y)
        for (std::size_t a = 0; a < m.dims[y]; ++a) {
            const Vector v = unit_vector(m.dims[y], a);
            if (m.act[y * k + y].apply(v, c.identity(y)) != v) {
                out.push_back({"unit", "1_" + c.object_label(y) + " does not fix basis element " + std::to_string(a)});
            }
        }
    for (ObjectId y = 0; y < k; ++y)
        for (ObjectId y1 = 0; y1 < k; ++y1)
            for (ObjectId y2 = 0; y2 < k; ++y2)
                for (std::size_t a = 0; a < m.dims[y]; ++a)
                    for (std::size_t f = 0; f < c.dim(y, y1); ++f)
                        for (std::size_t g = 0; g < c.dim(y1, y2); ++g) {
                            const Vector af = m.act[y * k + y1].product(a, f);
                            const Vector left = m.act[y1 * k + y2].apply(af, unit_vector(c.dim(y1, y2), g));
                            const Vector fg = c.composition(y, y1, y2).product(f, g);
                            const Vector right = m.act[y * k + y2].apply(unit_vector(m.dims[y], a), fg);
                            if (left != right) {
                                out.push_back({"associativity", "(m." + c.hom_basis(y, y1)[f] + ")." +
                                                                    c.hom_basis(y1, y2)[g] + " != m.(" +
                                                                    c.hom_basis(y, y1)[f] + " o " +
                                                                    c.hom_basis(y1, y2)[g] + ")"});
                            }
                        }
    return out;
}

GeneralModule as_general_module(const ProjectiveModule& m) {
    const Category& c = m.base();
    const std::size_t k = c.object_count();
    GeneralModule g{m.base_ptr(), {}, {}};
    for (ObjectId y = 0; y < k; ++y) g.dims.push_back(m.component_dim(y));
    std::vector<SpanSolver> solvers;
    for (ObjectId y = 0; y < k; ++y) solvers.emplace_back(m.component_basis(y), m.column_dim(y));
    for (ObjectId y = 0; y < k; ++y)
        for (ObjectId y1 = 0; y1 < k; ++y1) {
            BilinearTable t(g.dims[y], c.dim(y, y1), g.dims[y1]);
            for (std::size_t a = 0; a < g.dims[y]; ++a) {
                const ModuleElement v = module_element(m, y, m.component_basis(y)[a]);
                for (std::size_t f = 0; f < c.dim(y, y1); ++f) {
                    const ModuleElement vf = act(m, v, {y, y1, unit_vector(c.dim(y, y1), f)});
                    auto coords = solvers[y1].solve(flatten_column(vf.column));
                    if (!coords) throw std::logic_error("module action leaves the module");
                    t.set_product(a, f, *coords);
                }
            }
            g.act.push_back(std::move(t));
        }
    return g;
}

GeneralModule forms_as_right_module(const DGCategory& w, std::size_t n, ObjectId z) {
    const std::size_t k = w.object_count();
    GeneralModule g{w.base_ptr(), {}, {}};
    for (ObjectId y = 0; y < k; ++y) g.dims.push_back(w.dim(n, z, y));
    for (ObjectId y = 0; y < k; ++y)
        for (ObjectId y1 = 0; y1 < k; ++y1) {
            const BilinearTable* t = w.composition(n, 0, z, y, y1);
            if (t == nullptr) throw truncation_error("forms of degree above the truncation");
            g.act.push_back(*t);
        }
    return g;
}

LiteralTensor literal_tensor(const GeneralModule& m, const DGCategory& w, std::size_t n, ObjectId x) {
    if (n > w.truncation()) throw truncation_error("tensor with forms of degree above the truncation");
    const Category& c = *m.base;
    const std::size_t k = c.object_count();
    LiteralTensor out;
    out.degree = n;
    out.at = x;
    std::size_t total = 0;
    for (ObjectId y = 0; y < k; ++y) {
        out.offsets.push_back(total);
        total += m.dims[y] * w.dim(n, y, x);
    }
    std::vector<Vector> relations;
    for (ObjectId y = 0; y < k; ++y)
        for (ObjectId y1 = 0; y1 < k; ++y1) {
            const BilinearTable* fz = w.composition(0, n, y, y1, x);
            for (std::size_t a = 0; a < m.dims[y]; ++a)
                for (std::size_t f = 0; f < c.dim(y, y1); ++f) {
                    const Vector af = m.act[y * k + y1].product(a, f);
                    for (std::size_t z = 0; z < w.dim(n, y1, x); ++z) {
                        Vector r(total);
                        for (std::size_t b = 0; b < af.size(); ++b) {
                            r[out.offsets[y1] + b * w.dim(n, y1, x) + z] += af[b];
                        }
                        const Vector fzeta = fz->product(f, z);
                        for (std::size_t b = 0; b < fzeta.size(); ++b) {
                            r[out.offsets[y] + a * w.dim(n, y, x) + b] -= fzeta[b];
                        }
                        if (!is_zero(r)) relations.push_back(std::move(r));
                    }
                }
        }
    out.quotient = build_quotient(total, relations);
    return out;
}

TensorComparison compare_tensor_models(const ProjectiveModule& m, const DGCategory& w, std::size_t n, ObjectId x) {
    const GeneralModule g = as_general_module(m);
    const LiteralTensor lit = literal_tensor(g, w, n, x);
    const FormTensorSpace model = tensor_with_forms(m, w, n, x);
    const std::size_t k = w.object_count();
    std::vector<Vector> cols;
    for (ObjectId y = 0; y < k; ++y) {
        for (std::size_t a = 0; a < g.dims[y]; ++a) {
            const FormMatrix v = column_from_flat(w, m.index(), 0, y, m.component_basis(y)[a]);
            for (std::size_t z = 0; z < w.dim(n, y, x); ++z) {
                FormMatrix zeta{{y}, {x}, n, {unit_vector(w.dim(n, y, x), z)}};
                cols.push_back(model.coordinates(flatten_column(multiply(w, v, zeta))));
            }
        }
    }
    return compare(lit, Matrix::from_columns(cols, model.dim()), model.dim());
}

TensorComparison compare_form_products(const DGCategory& w, std::size_t p, std::size_t q, ObjectId z, ObjectId x) {
    if (p + q > w.truncation()) throw truncation_error("product degree above the truncation");
    const GeneralModule g = forms_as_right_module(w, p, z);
    const LiteralTensor lit = literal_tensor(g, w, q, x);
    const std::size_t target = w.dim(p + q, z, x);
    std::vector<Vector> cols;
    for (ObjectId y = 0; y < w.object_count(); ++y) {
        const BilinearTable* t = w.composition(p, q, z, y, x);
        for (std::size_t a = 0; a < g.dims[y]; ++a)
            for (std::size_t b = 0; b < w.dim(q, y, x); ++b) cols.push_back(t->product(a, b));
    }
    return compare(lit, Matrix::from_columns(cols, target), target);
}

}  // namespace lincat
