#include "lincat/connection.hpp"

#include "lincat/errors.hpp"

namespace lincat {

Connection::Connection(std::shared_ptr<const DGCategory> w, ProjectiveModule module, FormMatrix lambda)
    : w_(std::move(w)), module_(std::move(module)), lambda_(std::move(lambda)) {
    if (!(w_->base() == module_.base())) throw input_error("connection: module and forms have different base categories");
    if (w_->truncation() < 1) throw truncation_error("connection: forms need truncation N >= 1");
    if (lambda_.degree != 1 || lambda_.rows != module_.index() || lambda_.cols != module_.index()) {
        throw input_error("connection matrix must be a degree-1 matrix over the module's index family");
    }
    for (std::size_t i = 0; i < lambda_.rows.size(); ++i)
        for (std::size_t j = 0; j < lambda_.cols.size(); ++j) {
            if (lambda_.at(i, j).size() != w_->dim(1, lambda_.rows[i], lambda_.cols[j])) {
                throw input_error("connection matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") has wrong length");
            }
        }
}

Connection free_connection(std::shared_ptr<const DGCategory> w, const std::vector<ObjectId>& index,
                           const FormMatrix& lambda) {
    ProjectiveModule m = as_projective(free_module(w->base_ptr(), index));
    return Connection(std::move(w), std::move(m), lambda);
}

Connection levi_civita(std::shared_ptr<const DGCategory> w, const ProjectiveModule& m) {
    FormMatrix de = differential(*w, m.idempotent());
    return Connection(std::move(w), m, std::move(de));
}

Connection direct_sum_connection(const Connection& a, const Connection& b) {
    if (!(a.forms().tables() == b.forms().tables()) || !(a.forms().base() == b.forms().base())) {
        throw input_error("direct sum of connections over different DG-categories");
    }
    DirectSum s = direct_sum(a.module(), b.module());
    return Connection(a.forms_ptr(), std::move(s.sum), block_diagonal(a.forms(), a.lambda(), b.lambda()));
}

Connection compress_connection(const Connection& free, const ProjectiveModule& target) {
    if (!free.module().is_free()) throw input_error("compression needs a connection on a free module");
    if (target.index() != free.module().index()) throw input_error("compression: index families differ");
    return Connection(free.forms_ptr(), target, free.lambda());
}

FormMatrix extend(const Connection& c, const FormMatrix& column) {
    const DGCategory& w = c.forms();
    if (column.degree + 1 > w.truncation()) {
        throw truncation_error("extending the connection to degree " + std::to_string(column.degree) +
                               " needs N >= " + std::to_string(column.degree + 1));
    }
    const FormMatrix inner = add(multiply(w, c.lambda(), column), differential(w, column));
    return multiply(w, c.module().idempotent(), inner);
}

FormMatrix extend_columns(const Connection& c, const FormMatrix& columns) {
    const DGCategory& w = c.forms();
    FormMatrix out = zero_matrix(w, columns.rows, columns.cols, columns.degree + 1);
    for (std::size_t j = 0; j < columns.cols.size(); ++j) {
        FormMatrix col = zero_matrix(w, columns.rows, {columns.cols[j]}, columns.degree);
        for (std::size_t i = 0; i < columns.rows.size(); ++i) col.at(i, 0) = columns.at(i, j);
        const FormMatrix img = extend(c, col);
        for (std::size_t i = 0; i < columns.rows.size(); ++i) out.at(i, j) = img.at(i, 0);
    }
    return out;
}

FormMatrix generator_matrix(const Connection& c) { return extend_columns(c, c.module().idempotent()); }

CurvatureData curvature(const Connection& c) {
    const DGCategory& w = c.forms();
    if (w.truncation() < 2) throw truncation_error("curvature needs N >= 2");
    const FormMatrix& e = c.module().idempotent();
    CurvatureData out;
    out.gamma = extend_columns(c, generator_matrix(c));
    const FormMatrix lp = generator_matrix(c);
    out.gamma_formula = multiply(w, e, add(differential(w, lp), multiply(w, lp, lp)));
    if (out.gamma != out.gamma_formula) {
        throw certification_error("curvature: direct composition and the matrix formula disagree");
    }
    return out;
}

FormMatrix curvature_power(const Connection& c, std::size_t q) {
    const DGCategory& w = c.forms();
    if (2 * q > w.truncation()) {
        throw truncation_error("curvature power " + std::to_string(q) + " needs N >= " + std::to_string(2 * q));
    }
    if (q == 0) return c.module().idempotent();
    const FormMatrix gamma = curvature(c).gamma;
    FormMatrix out = gamma;
    for (std::size_t i = 1; i < q; ++i) out = multiply(w, out, gamma);
    return out;
}

FormMatrix iterated_curvature(const Connection& c, std::size_t q) {
    if (2 * q > c.forms().truncation()) {
        throw truncation_error("curvature power " + std::to_string(q) + " needs N >= " + std::to_string(2 * q));
    }
    FormMatrix out = c.module().idempotent();
    for (std::size_t i = 0; i < 2 * q; ++i) out = extend_columns(c, out);
    return out;
}

}  // namespace lincat
