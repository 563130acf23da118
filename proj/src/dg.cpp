#include "lincat/dg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lincat/errors.hpp"

namespace lincat {

namespace {

const std::vector<std::string> kNoLabels;
const Matrix kNoMatrix;

Scalar sign(std::size_t exponent) { return exponent % 2 == 0 ? Scalar(1) : Scalar(-1); }

std::string normalize_label(std::string s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '*') {
            out += "·";
        } else {
            out += s[i];
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DGCategory

DGCategory::DGCategory(std::shared_ptr<const Category> base, DGTables tables)
    : base_(std::move(base)), tables_(std::move(tables)) {
    const std::size_t k = base_->object_count();
    const std::size_t N = tables_.truncation;
    if (tables_.labels.size() != N + 1) throw input_error("DG tables: need label lists for degrees 0..N");
    for (const auto& per_degree : tables_.labels) {
        if (per_degree.size() != k) throw input_error("DG tables: label table is not k x k");
        for (const auto& row : per_degree) {
            if (row.size() != k) throw input_error("DG tables: label table is not k x k");
        }
    }
    if (tables_.composition.size() != N + 1) throw input_error("DG tables: composition must cover degrees 0..N");
    for (std::size_t p = 0; p <= N; ++p) {
        if (tables_.composition[p].size() != N + 1) throw input_error("DG tables: composition must cover degrees 0..N");
        for (std::size_t q = 0; q <= N; ++q) {
            const auto& blocks = tables_.composition[p][q];
            if (p + q > N) {
                if (!blocks.empty()) throw input_error("DG tables: composition above the truncation must be empty");
                continue;
            }
            if (blocks.size() != k * k * k) throw input_error("DG tables: composition block count mismatch");
            for (ObjectId x = 0; x < k; ++x)
                for (ObjectId y = 0; y < k; ++y)
                    for (ObjectId z = 0; z < k; ++z) {
                        const BilinearTable& t = blocks[(x * k + y) * k + z];
                        if (t.left_dim() != dim(p, x, y) || t.right_dim() != dim(q, y, z) ||
                            t.out_dim() != dim(p + q, x, z)) {
                            throw input_error("DG tables: composition table has wrong shape in degrees (" +
                                              std::to_string(p) + "," + std::to_string(q) + ")");
                        }
                    }
        }
    }
    if (tables_.differential.size() != N) throw input_error("DG tables: differential must cover degrees 0..N-1");
    for (std::size_t n = 0; n < N; ++n) {
        if (tables_.differential[n].size() != k * k) throw input_error("DG tables: differential block count mismatch");
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y) {
                const Matrix& m = tables_.differential[n][x * k + y];
                if (m.rows() != dim(n + 1, x, y) || m.cols() != dim(n, x, y)) {
                    throw input_error("DG tables: differential in degree " + std::to_string(n) + " has wrong shape");
                }
            }
    }
}

std::size_t DGCategory::dim(std::size_t n, ObjectId x, ObjectId y) const {
    if (n > truncation()) return 0;
    return tables_.labels[n].at(x).at(y).size();
}

const std::vector<std::string>& DGCategory::labels(std::size_t n, ObjectId x, ObjectId y) const {
    if (n > truncation()) return kNoLabels;
    return tables_.labels[n].at(x).at(y);
}

const BilinearTable* DGCategory::composition(std::size_t p, std::size_t q, ObjectId x, ObjectId y,
                                             ObjectId z) const {
    if (p + q > truncation()) return nullptr;
    const std::size_t k = object_count();
    return &tables_.composition[p][q].at((x * k + y) * k + z);
}

const Matrix& DGCategory::differential(std::size_t n, ObjectId x, ObjectId y) const {
    if (n >= truncation()) return kNoMatrix;
    return tables_.differential[n].at(x * object_count() + y);
}

std::size_t DGCategory::diagonal_dim(std::size_t n) const {
    std::size_t d = 0;
    for (ObjectId x = 0; x < object_count(); ++x) d += dim(n, x, x);
    return d;
}

std::size_t DGCategory::diagonal_offset(std::size_t n, ObjectId x) const {
    std::size_t d = 0;
    for (ObjectId z = 0; z < x; ++z) d += dim(n, z, z);
    return d;
}

std::optional<std::size_t> DGCategory::find_label(std::size_t n, ObjectId x, ObjectId y,
                                                  const std::string& label) const {
    const std::string wanted = normalize_label(label);
    const auto& ls = labels(n, x, y);
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (normalize_label(ls[i]) == wanted) return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Forms

Form zero_form(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom) {
    return {n, cod, dom, Vector(w.dim(n, cod, dom))};
}

Form basis_form(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom, std::size_t index) {
    return {n, cod, dom, unit_vector(w.dim(n, cod, dom), index)};
}

Form identity_form(const DGCategory& w, ObjectId x) { return {0, x, x, w.base().identity(x)}; }

Form compose_forms(const DGCategory& w, const Form& omega, const Form& zeta) {
    if (omega.dom != zeta.cod) {
        throw composition_error("cannot compose forms: domain '" + w.base().object_label(omega.dom) +
                                "' does not match codomain '" + w.base().object_label(zeta.cod) + "'");
    }
    const std::size_t n = omega.degree + zeta.degree;
    const BilinearTable* t = w.composition(omega.degree, zeta.degree, omega.cod, omega.dom, zeta.dom);
    if (t == nullptr) return {n, omega.cod, zeta.dom, {}};
    return {n, omega.cod, zeta.dom, t->apply(omega.coords, zeta.coords)};
}

Form differential(const DGCategory& w, const Form& omega) {
    if (omega.degree >= w.truncation()) return {omega.degree + 1, omega.cod, omega.dom, {}};
    return {omega.degree + 1, omega.cod, omega.dom, w.differential(omega.degree, omega.cod, omega.dom).apply(omega.coords)};
}

Form add_forms(const Form& a, const Form& b) {
    if (a.degree != b.degree || a.cod != b.cod || a.dom != b.dom) {
        throw composition_error("cannot add forms of different degree or endpoints");
    }
    return {a.degree, a.cod, a.dom, add(a.coords, b.coords)};
}

Form scale_form(const Form& a, const Scalar& s) { return {a.degree, a.cod, a.dom, scaled(a.coords, s)}; }

bool is_zero(const Form& f) { return is_zero(f.coords); }

namespace {

std::string format_combination(const std::vector<std::string>& labels, const Vector& coords) {
    std::string out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Scalar& c = coords[i];
        if (sgn(c) == 0) continue;
        const bool negative = sgn(c) < 0;
        const Scalar mag = abs(c);
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (mag != 1) out += format_scalar(mag) + " ";
        out += labels[i];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string format_form(const DGCategory& w, const Form& f) {
    return format_combination(w.labels(f.degree, f.cod, f.dom), f.coords);
}

// ---------------------------------------------------------------------------
// Diagonal forms

DiagonalForm zero_diagonal(const DGCategory& w, std::size_t n) {
    DiagonalForm d{n, {}};
    for (ObjectId x = 0; x < w.object_count(); ++x) d.components.emplace_back(w.dim(n, x, x));
    return d;
}

Vector flatten(const DGCategory& w, const DiagonalForm& d) {
    if (d.components.size() != w.object_count()) throw input_error("diagonal form needs one component per object");
    Vector out;
    out.reserve(w.diagonal_dim(d.degree));
    for (ObjectId x = 0; x < d.components.size(); ++x) {
        if (d.components[x].size() != w.dim(d.degree, x, x)) throw input_error("diagonal component has wrong length");
        out.insert(out.end(), d.components[x].begin(), d.components[x].end());
    }
    return out;
}

DiagonalForm unflatten(const DGCategory& w, std::size_t n, const Vector& v) {
    if (v.size() != w.diagonal_dim(n)) throw input_error("flattened diagonal form has wrong length");
    DiagonalForm d{n, {}};
    std::size_t offset = 0;
    for (ObjectId x = 0; x < w.object_count(); ++x) {
        const std::size_t len = w.dim(n, x, x);
        d.components.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(offset),
                                  v.begin() + static_cast<std::ptrdiff_t>(offset + len));
        offset += len;
    }
    return d;
}

DiagonalForm to_diagonal(const DGCategory& w, const Form& f) {
    if (f.cod != f.dom) throw composition_error("form is not diagonal");
    DiagonalForm d = zero_diagonal(w, f.degree);
    d.components[f.cod] = f.coords;
    return d;
}

std::string format_diagonal(const DGCategory& w, const DiagonalForm& d) {
    std::string out;
    for (ObjectId x = 0; x < d.components.size(); ++x) {
        if (is_zero(d.components[x])) continue;
        const std::string term = format_combination(w.labels(d.degree, x, x), d.components[x]);
        if (!out.empty()) out += " + ";
        out += d.components.size() > 1 ? "[" + w.base().object_label(x) + "] " + term : term;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Polynomial forms

Form PolyForm::coefficient(std::size_t i, const DGCategory& w) const {
    if (i < coeffs.size()) return {degree, cod, dom, coeffs[i]};
    return zero_form(w, degree, cod, dom);
}

PolyForm constant_poly(const Form& f) { return {f.degree, f.cod, f.dom, {f.coords}}; }

PolyForm monomial(const Form& f, std::size_t power) {
    PolyForm p{f.degree, f.cod, f.dom, std::vector<Vector>(power + 1, Vector(f.coords.size()))};
    p.coeffs[power] = f.coords;
    return p;
}

PolyForm zero_poly(const DGCategory&, std::size_t n, ObjectId cod, ObjectId dom) { return {n, cod, dom, {}}; }

PolyForm add_poly(const PolyForm& a, const PolyForm& b) {
    if (a.degree != b.degree || a.cod != b.cod || a.dom != b.dom) {
        throw composition_error("cannot add polynomial forms of different degree or endpoints");
    }
    PolyForm out = a.coeffs.size() >= b.coeffs.size() ? a : b;
    const PolyForm& other = a.coeffs.size() >= b.coeffs.size() ? b : a;
    for (std::size_t i = 0; i < other.coeffs.size(); ++i) axpy(out.coeffs[i], 1, other.coeffs[i]);
    return out;
}

PolyForm scale_poly(const PolyForm& a, const Scalar& s) {
    PolyForm out = a;
    for (auto& c : out.coeffs) c = scaled(c, s);
    return out;
}

bool poly_equal(const PolyForm& a, const PolyForm& b) {
    if (a.degree != b.degree || a.cod != b.cod || a.dom != b.dom) return false;
    const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_a = i < a.coeffs.size();
        const bool in_b = i < b.coeffs.size();
        if (in_a && in_b) {
            if (a.coeffs[i] != b.coeffs[i]) return false;
        } else if (in_a ? !is_zero(a.coeffs[i]) : !is_zero(b.coeffs[i])) {
            return false;
        }
    }
    return true;
}

PolyForm compose_poly(const DGCategory& w, const PolyForm& a, const PolyForm& b) {
    if (a.dom != b.cod) throw composition_error("cannot compose polynomial forms: endpoint mismatch");
    PolyForm out{a.degree + b.degree, a.cod, b.dom, {}};
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    const std::size_t len = a.coeffs.size() + b.coeffs.size() - 1;
    out.coeffs.assign(len, Vector(w.dim(out.degree, out.cod, out.dom)));
    const BilinearTable* t = w.composition(a.degree, b.degree, a.cod, a.dom, b.dom);
    if (t == nullptr) return out;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (is_zero(a.coeffs[i])) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            if (is_zero(b.coeffs[j])) continue;
            axpy(out.coeffs[i + j], 1, t->apply(a.coeffs[i], b.coeffs[j]));
        }
    }
    return out;
}

PolyForm diff_poly(const DGCategory& w, const PolyForm& a) {
    PolyForm out{a.degree + 1, a.cod, a.dom, {}};
    for (const Vector& c : a.coeffs) out.coeffs.push_back(differential(w, Form{a.degree, a.cod, a.dom, c}).coords);
    return out;
}

PolyForm t_derivative(const PolyForm& a) {
    PolyForm out{a.degree, a.cod, a.dom, {}};
    for (std::size_t i = 1; i < a.coeffs.size(); ++i) out.coeffs.push_back(scaled(a.coeffs[i], Scalar(i)));
    return out;
}

Form definite_integral_01(const DGCategory& w, const PolyForm& a) {
    Form out = zero_form(w, a.degree, a.cod, a.dom);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) axpy(out.coords, Scalar(1, i + 1), a.coeffs[i]);
    return out;
}

Form evaluate_at(const DGCategory& w, const PolyForm& a, const Scalar& t) {
    Form out = zero_form(w, a.degree, a.cod, a.dom);
    Scalar power = 1;
    for (const Vector& c : a.coeffs) {
        axpy(out.coords, power, c);
        power *= t;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Epsilon extension

TildeForm make_tilde(const DGCategory& w, PolyForm omega0, std::optional<PolyForm> omega1) {
    if (omega0.degree == 0) {
        if (omega1) throw input_error("degree-0 tilde form has no epsilon part");
        return {std::move(omega0), std::nullopt};
    }
    if (!omega1) omega1 = zero_poly(w, omega0.degree - 1, omega0.cod, omega0.dom);
    if (omega1->degree + 1 != omega0.degree || omega1->cod != omega0.cod || omega1->dom != omega0.dom) {
        throw composition_error("epsilon part must have degree one less and the same endpoints");
    }
    return {std::move(omega0), std::move(omega1)};
}

TildeForm zero_tilde(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom) {
    return make_tilde(w, zero_poly(w, n, cod, dom));
}

TildeForm add_tilde(const TildeForm& a, const TildeForm& b) {
    TildeForm out{add_poly(a.omega0, b.omega0), std::nullopt};
    if (a.omega1 && b.omega1) out.omega1 = add_poly(*a.omega1, *b.omega1);
    return out;
}

bool tilde_equal(const TildeForm& a, const TildeForm& b) {
    if (!poly_equal(a.omega0, b.omega0)) return false;
    if (a.omega1.has_value() != b.omega1.has_value()) return false;
    return !a.omega1 || poly_equal(*a.omega1, *b.omega1);
}

TildeForm compose_tilde(const DGCategory& w, const TildeForm& a, const TildeForm& b) {
    if (a.dom() != b.cod()) throw composition_error("cannot compose tilde forms: endpoint mismatch");
    TildeForm out = make_tilde(w, compose_poly(w, a.omega0, b.omega0));
    if (!out.omega1) return out;
    if (b.omega1) out.omega1 = add_poly(*out.omega1, compose_poly(w, a.omega0, *b.omega1));
    if (a.omega1) {
        out.omega1 = add_poly(*out.omega1, scale_poly(compose_poly(w, *a.omega1, b.omega0), sign(b.degree())));
    }
    return out;
}

TildeForm partial(const DGCategory& w, const TildeForm& a) {
    const std::size_t n = a.degree();
    PolyForm eps = scale_poly(t_derivative(a.omega0), sign(n + 1));
    if (a.omega1) eps = add_poly(diff_poly(w, *a.omega1), eps);
    return make_tilde(w, diff_poly(w, a.omega0), std::move(eps));
}

// ---------------------------------------------------------------------------
// Form matrices

FormMatrix zero_matrix(const DGCategory& w, const std::vector<ObjectId>& rows, const std::vector<ObjectId>& cols,
                       std::size_t n) {
    FormMatrix m{rows, cols, n, {}};
    m.entries.reserve(rows.size() * cols.size());
    for (ObjectId r : rows)
        for (ObjectId c : cols) m.entries.emplace_back(w.dim(n, r, c));
    return m;
}

FormMatrix identity_matrix(const DGCategory& w, const std::vector<ObjectId>& index) {
    FormMatrix m = zero_matrix(w, index, index, 0);
    for (std::size_t i = 0; i < index.size(); ++i) m.at(i, i) = w.base().identity(index[i]);
    return m;
}

FormMatrix multiply(const DGCategory& w, const FormMatrix& a, const FormMatrix& b) {
    if (a.cols != b.rows) throw composition_error("form matrix product: inner index families differ");
    FormMatrix out = zero_matrix(w, a.rows, b.cols, a.degree + b.degree);
    if (a.degree + b.degree > w.truncation()) return out;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t k = 0; k < a.cols.size(); ++k) {
            const Vector& aik = a.at(i, k);
            if (is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols.size(); ++j) {
                const Vector& bkj = b.at(k, j);
                if (is_zero(bkj)) continue;
                const BilinearTable* t = w.composition(a.degree, b.degree, a.rows[i], a.cols[k], b.cols[j]);
                axpy(out.at(i, j), 1, t->apply(aik, bkj));
            }
        }
    return out;
}

FormMatrix add(const FormMatrix& a, const FormMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.degree != b.degree) {
        throw composition_error("form matrix sum: shapes or degrees differ");
    }
    FormMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) axpy(out.entries[i], 1, b.entries[i]);
    return out;
}

FormMatrix subtract(const FormMatrix& a, const FormMatrix& b) { return add(a, scale(b, -1)); }

FormMatrix scale(const FormMatrix& a, const Scalar& s) {
    FormMatrix out = a;
    for (auto& e : out.entries) e = scaled(e, s);
    return out;
}

FormMatrix differential(const DGCategory& w, const FormMatrix& a) {
    FormMatrix out = zero_matrix(w, a.rows, a.cols, a.degree + 1);
    if (a.degree >= w.truncation()) return out;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t j = 0; j < a.cols.size(); ++j) {
            out.at(i, j) = w.differential(a.degree, a.rows[i], a.cols[j]).apply(a.at(i, j));
        }
    return out;
}

FormMatrix power(const DGCategory& w, const FormMatrix& a, std::size_t q) {
    if (a.rows != a.cols) throw composition_error("matrix power needs a square index family");
    FormMatrix out = identity_matrix(w, a.rows);
    for (std::size_t i = 0; i < q; ++i) out = multiply(w, out, a);
    return out;
}

FormMatrix block_diagonal(const DGCategory& w, const FormMatrix& a, const FormMatrix& b) {
    if (a.degree != b.degree) throw composition_error("block_diagonal: degrees differ");
    std::vector<ObjectId> rows = a.rows;
    rows.insert(rows.end(), b.rows.begin(), b.rows.end());
    std::vector<ObjectId> cols = a.cols;
    cols.insert(cols.end(), b.cols.begin(), b.cols.end());
    FormMatrix out = zero_matrix(w, rows, cols, a.degree);
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t j = 0; j < a.cols.size(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows.size(); ++i)
        for (std::size_t j = 0; j < b.cols.size(); ++j) out.at(a.rows.size() + i, a.cols.size() + j) = b.at(i, j);
    return out;
}

bool is_zero(const FormMatrix& a) {
    return std::all_of(a.entries.begin(), a.entries.end(), [](const Vector& v) { return is_zero(v); });
}

DiagonalForm trace(const DGCategory& w, const FormMatrix& a) {
    if (a.rows != a.cols) throw composition_error("trace needs a square index family");
    DiagonalForm d = zero_diagonal(w, a.degree);
    for (std::size_t i = 0; i < a.rows.size(); ++i) axpy(d.components[a.rows[i]], 1, a.at(i, i));
    return d;
}

// ---------------------------------------------------------------------------
// Tilde matrices

TildeMatrix tilde_linear_in_t(const DGCategory& w, const FormMatrix& a) {
    TildeMatrix out{a.rows, a.cols, a.degree, {}};
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t j = 0; j < a.cols.size(); ++j) out.entries.push_back(make_tilde(w, monomial(a.entry(i, j), 1)));
    return out;
}

TildeMatrix multiply(const DGCategory& w, const TildeMatrix& a, const TildeMatrix& b) {
    if (a.cols != b.rows) throw composition_error("tilde matrix product: inner index families differ");
    TildeMatrix out{a.rows, b.cols, a.degree + b.degree, {}};
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t j = 0; j < b.cols.size(); ++j) {
            TildeForm acc = zero_tilde(w, out.degree, a.rows[i], b.cols[j]);
            for (std::size_t k = 0; k < a.cols.size(); ++k) acc = add_tilde(acc, compose_tilde(w, a.at(i, k), b.at(k, j)));
            out.entries.push_back(std::move(acc));
        }
    return out;
}

TildeMatrix add(const TildeMatrix& a, const TildeMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.degree != b.degree) {
        throw composition_error("tilde matrix sum: shapes or degrees differ");
    }
    TildeMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = add_tilde(a.entries[i], b.entries[i]);
    return out;
}

TildeMatrix partial(const DGCategory& w, const TildeMatrix& a) {
    TildeMatrix out{a.rows, a.cols, a.degree + 1, {}};
    for (const TildeForm& e : a.entries) out.entries.push_back(partial(w, e));
    return out;
}

TildeTrace trace(const DGCategory& w, const TildeMatrix& a) {
    if (a.rows != a.cols) throw composition_error("trace needs a square index family");
    TildeTrace out{a.degree, {}, {}};
    auto accumulate = [&](std::vector<DiagonalForm>& target, const PolyForm& p, ObjectId x) {
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
            while (target.size() <= i) target.push_back(zero_diagonal(w, p.degree));
            axpy(target[i].components[x], 1, p.coeffs[i]);
        }
    };
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const TildeForm& e = a.at(i, i);
        accumulate(out.omega0, e.omega0, a.rows[i]);
        if (e.omega1) accumulate(out.omega1, *e.omega1, a.rows[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Universal forms

namespace {

// A pure tensor a0 (x) a1 (x) ... (x) a_{f-1} with a_i in hom(z_i, z_{i+1}),
// keyed as [z_0, ..., z_f, b_0, ..., b_{f-1}] (b_i = basis index of a_i).
using TensorKey = std::vector<std::size_t>;
using Tensor = std::map<TensorKey, Scalar>;

std::size_t factor_count(const TensorKey& key) { return (key.size() - 1) / 2; }

void accumulate(Tensor& t, const TensorKey& key, const Scalar& v) {
    if (sgn(v) == 0) return;
    auto [it, inserted] = t.try_emplace(key, v);
    if (!inserted) {
        it->second += v;
        if (sgn(it->second) == 0) t.erase(it);
    }
}

Tensor pure_arrow(ObjectId x, ObjectId y, std::size_t index) { return Tensor{{TensorKey{x, y, index}, Scalar(1)}}; }

// Concatenation product: the last factor of a is composed with the first of b.
Tensor tensor_product(const Category& c, const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [ka, va] : a) {
        const std::size_t fa = factor_count(ka);
        for (const auto& [kb, vb] : b) {
            const std::size_t fb = factor_count(kb);
            if (ka[fa] != kb[0]) continue;
            const ObjectId x = ka[fa - 1];
            const ObjectId y = ka[fa];
            const ObjectId z = kb[1];
            const Vector prod = c.composition(x, y, z).product(ka[fa + 1 + fa - 1], kb[fb + 1]);
            for (std::size_t m = 0; m < prod.size(); ++m) {
                if (sgn(prod[m]) == 0) continue;
                TensorKey key;
                for (std::size_t i = 0; i < fa; ++i) key.push_back(ka[i]);
                for (std::size_t i = 1; i <= fb; ++i) key.push_back(kb[i]);
                for (std::size_t i = 0; i + 1 < fa; ++i) key.push_back(ka[fa + 1 + i]);
                key.push_back(m);
                for (std::size_t i = 1; i < fb; ++i) key.push_back(kb[fb + 1 + i]);
                accumulate(out, key, va * vb * prod[m]);
            }
        }
    }
    return out;
}

// Inserts the identity of z_pos as a new factor in slot pos (0..f).
Tensor insert_identity(const Category& c, const Tensor& t, std::size_t pos) {
    Tensor out;
    for (const auto& [k, v] : t) {
        const std::size_t f = factor_count(k);
        const ObjectId z = k[pos];
        const Vector& id = c.identity(z);
        for (std::size_t m = 0; m < id.size(); ++m) {
            if (sgn(id[m]) == 0) continue;
            TensorKey key;
            for (std::size_t i = 0; i <= pos; ++i) key.push_back(k[i]);
            for (std::size_t i = pos; i <= f; ++i) key.push_back(k[i]);
            for (std::size_t i = 0; i < pos; ++i) key.push_back(k[f + 1 + i]);
            key.push_back(m);
            for (std::size_t i = pos; i < f; ++i) key.push_back(k[f + 1 + i]);
            accumulate(out, key, v * id[m]);
        }
    }
    return out;
}

// d(a0 (x) ... (x) an) = sum_i (-1)^i (1 inserted in slot i)
Tensor tensor_differential(const Category& c, const Tensor& t) {
    Tensor out;
    if (t.empty()) return out;
    const std::size_t f = factor_count(t.begin()->first);
    for (std::size_t pos = 0; pos <= f; ++pos) {
        const Tensor part = insert_identity(c, t, pos);
        for (const auto& [k, v] : part) accumulate(out, k, pos % 2 == 0 ? v : Scalar(-v));
    }
    return out;
}

class UniversalBuilder {
public:
    UniversalBuilder(const Category& c, std::size_t truncation) : c_(c), N_(truncation), k_(c.object_count()) {
        for (ObjectId z = 0; z < k_; ++z) {
            const Vector& id = c.identity(z);
            std::optional<std::size_t> pivot;
            for (std::size_t i = 0; i < id.size(); ++i) {
                if (sgn(id[i]) != 0) {
                    pivot = i;
                    break;
                }
            }
            if (!pivot) throw input_error("universal forms: identity of '" + c.object_label(z) + "' is zero");
            dropped_.push_back(*pivot);
            identity_is_basis_.push_back(id == unit_vector(id.size(), *pivot));
        }
        blocks_.resize(N_ + 1, std::vector<Block>(k_ * k_));
        for (std::size_t n = 0; n <= N_; ++n)
            for (ObjectId x = 0; x < k_; ++x)
                for (ObjectId y = 0; y < k_; ++y) build_block(n, x, y);
    }

    DGTables tables() const {
        DGTables t;
        t.truncation = N_;
        t.labels.assign(N_ + 1, std::vector<std::vector<std::vector<std::string>>>(
                                    k_, std::vector<std::vector<std::string>>(k_)));
        for (std::size_t n = 0; n <= N_; ++n)
            for (ObjectId x = 0; x < k_; ++x)
                for (ObjectId y = 0; y < k_; ++y) t.labels[n][x][y] = block(n, x, y).labels;
        t.composition.assign(N_ + 1, std::vector<std::vector<BilinearTable>>(N_ + 1));
        for (std::size_t p = 0; p <= N_; ++p)
            for (std::size_t q = 0; p + q <= N_; ++q) {
                auto& blocks = t.composition[p][q];
                for (ObjectId x = 0; x < k_; ++x)
                    for (ObjectId y = 0; y < k_; ++y)
                        for (ObjectId z = 0; z < k_; ++z) blocks.push_back(composition_table(p, q, x, y, z));
            }
        t.differential.assign(N_, {});
        for (std::size_t n = 0; n < N_; ++n)
            for (ObjectId x = 0; x < k_; ++x)
                for (ObjectId y = 0; y < k_; ++y) t.differential[n].push_back(differential_matrix(n, x, y));
        return t;
    }

private:
    struct Block {
        std::vector<Tensor> basis;
        std::vector<std::string> labels;
        std::map<TensorKey, std::size_t> index;
        SpanSolver solver;
    };

    const Block& block(std::size_t n, ObjectId x, ObjectId y) const { return blocks_[n][x * k_ + y]; }

    std::size_t complement_size(ObjectId a, ObjectId b) const { return c_.dim(a, b) - (a == b ? 1 : 0); }
    std::size_t complement_index(ObjectId a, ObjectId b, std::size_t i) const {
        return (a == b && i >= dropped_[a]) ? i + 1 : i;
    }

    // Basis c0 dc1 ... dcn over chains x = z0, z1, ..., zn, z_{n+1} = y.
    void build_block(std::size_t n, ObjectId x, ObjectId y) {
        Block& b = blocks_[n][x * k_ + y];
        if (n == 0) {
            for (std::size_t i = 0; i < c_.dim(x, y); ++i) {
                b.basis.push_back(pure_arrow(x, y, i));
                b.labels.push_back(c_.hom_basis(x, y)[i]);
            }
        } else {
            std::vector<ObjectId> chain(n + 2);
            chain[0] = x;
            chain[n + 1] = y;
            enumerate_chains(b, chain, 1, n);
        }
        for (const Tensor& t : b.basis)
            for (const auto& [key, v] : t) b.index.try_emplace(key, 0);
        std::size_t pos = 0;
        for (auto& [key, idx] : b.index) idx = pos++;
        std::vector<Vector> gens;
        for (const Tensor& t : b.basis) gens.push_back(to_vector(b, t));
        b.solver = SpanSolver(gens, b.index.size());
        if (b.solver.rank() != b.basis.size()) {
            throw std::logic_error("universal forms: basis is not linearly independent");
        }
    }

    void enumerate_chains(Block& b, std::vector<ObjectId>& chain, std::size_t slot, std::size_t n) {
        if (slot <= n) {
            for (ObjectId z = 0; z < k_; ++z) {
                chain[slot] = z;
                enumerate_chains(b, chain, slot + 1, n);
            }
            return;
        }
        // chain fixed; c0 in hom(z0, z1), ci in complement of hom(zi, z_{i+1})
        std::vector<std::size_t> sizes{c_.dim(chain[0], chain[1])};
        for (std::size_t i = 1; i <= n; ++i) sizes.push_back(complement_size(chain[i], chain[i + 1]));
        if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) return;
        std::vector<std::size_t> choice(n + 1, 0);
        while (true) {
            Tensor t = pure_arrow(chain[0], chain[1], choice[0]);
            std::string label;
            const bool unit_prefix = chain[0] == chain[1] && identity_is_basis_[chain[0]] && choice[0] == dropped_[chain[0]];
            if (!unit_prefix) label = c_.hom_basis(chain[0], chain[1])[choice[0]];
            for (std::size_t i = 1; i <= n; ++i) {
                const std::size_t arrow = complement_index(chain[i], chain[i + 1], choice[i]);
                const Tensor da = tensor_differential(c_, pure_arrow(chain[i], chain[i + 1], arrow));
                t = tensor_product(c_, t, da);
                if (!label.empty()) label += "·";
                label += "d" + c_.hom_basis(chain[i], chain[i + 1])[arrow];
            }
            b.basis.push_back(std::move(t));
            b.labels.push_back(std::move(label));
            std::size_t pos = n + 1;
            while (pos > 0) {
                --pos;
                if (++choice[pos] < sizes[pos]) break;
                choice[pos] = 0;
                if (pos == 0) return;
            }
        }
    }

    Vector to_vector(const Block& b, const Tensor& t) const {
        Vector v(b.index.size());
        for (const auto& [key, val] : t) {
            auto it = b.index.find(key);
            if (it == b.index.end()) throw std::logic_error("universal forms: tensor leaves the space of forms");
            v[it->second] = val;
        }
        return v;
    }

    Vector coordinates(std::size_t n, ObjectId x, ObjectId y, const Tensor& t) const {
        const Block& b = block(n, x, y);
        auto coords = b.solver.solve(to_vector(b, t));
        if (!coords) throw std::logic_error("universal forms: tensor is not a form");
        return *coords;
    }

    BilinearTable composition_table(std::size_t p, std::size_t q, ObjectId x, ObjectId y, ObjectId z) const {
        const Block& left = block(p, x, y);
        const Block& right = block(q, y, z);
        BilinearTable table(left.basis.size(), right.basis.size(), block(p + q, x, z).basis.size());
        for (std::size_t i = 0; i < left.basis.size(); ++i)
            for (std::size_t j = 0; j < right.basis.size(); ++j) {
                table.set_product(i, j, coordinates(p + q, x, z, tensor_product(c_, left.basis[i], right.basis[j])));
            }
        return table;
    }

    Matrix differential_matrix(std::size_t n, ObjectId x, ObjectId y) const {
        const Block& src = block(n, x, y);
        std::vector<Vector> cols;
        for (const Tensor& t : src.basis) cols.push_back(coordinates(n + 1, x, y, tensor_differential(c_, t)));
        return Matrix::from_columns(cols, block(n + 1, x, y).basis.size());
    }

    const Category& c_;
    std::size_t N_;
    std::size_t k_;
    std::vector<std::size_t> dropped_;
    std::vector<bool> identity_is_basis_;
    std::vector<std::vector<Block>> blocks_;
};

DGTables degree_zero_tables(const Category& c, std::size_t truncation) {
    const std::size_t k = c.object_count();
    DGTables t;
    t.truncation = truncation;
    t.labels.assign(truncation + 1, std::vector<std::vector<std::vector<std::string>>>(
                                        k, std::vector<std::vector<std::string>>(k)));
    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y) t.labels[0][x][y] = c.hom_basis(x, y);
    t.composition.assign(truncation + 1, std::vector<std::vector<BilinearTable>>(truncation + 1));
    for (std::size_t p = 0; p <= truncation; ++p)
        for (std::size_t q = 0; p + q <= truncation; ++q)
            for (ObjectId x = 0; x < k; ++x)
                for (ObjectId y = 0; y < k; ++y)
                    for (ObjectId z = 0; z < k; ++z) {
                        if (p == 0 && q == 0) {
                            t.composition[p][q].push_back(c.composition(x, y, z));
                        } else {
                            t.composition[p][q].emplace_back(t.labels[p][x][y].size(), t.labels[q][y][z].size(),
                                                             t.labels[p + q][x][z].size());
                        }
                    }
    t.differential.assign(truncation, {});
    for (std::size_t n = 0; n < truncation; ++n)
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y) {
                t.differential[n].emplace_back(t.labels[n + 1][x][y].size(), t.labels[n][x][y].size());
            }
    return t;
}

}  // namespace

DGCategory universal_dg(std::shared_ptr<const Category> c, std::size_t truncation) {
    if (truncation < 1) throw input_error("universal forms need truncation N >= 1");
    if (!validate_category(*c).empty()) throw input_error("universal forms need a valid category");
    DGTables tables = UniversalBuilder(*c, truncation).tables();
    return DGCategory(std::move(c), std::move(tables));
}

DGCategory trivial_dg(std::shared_ptr<const Category> c, std::size_t truncation) {
    DGTables tables = degree_zero_tables(*c, truncation);
    return DGCategory(std::move(c), std::move(tables));
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_dg(const DGCategory& w) {
    std::vector<Violation> out;
    const Category& c = w.base();
    const std::size_t k = w.object_count();
    const std::size_t N = w.truncation();
    auto where = [&](std::size_t n, ObjectId x, ObjectId y, std::size_t i) {
        const auto& ls = w.labels(n, x, y);
        return (i < ls.size() ? ls[i] : std::string("?")) + " (degree " + std::to_string(n) + ", " +
               c.object_label(y) + "->" + c.object_label(x) + ")";
    };

    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y) {
            if (w.labels(0, x, y).size() != c.dim(x, y)) {
                out.push_back({"degree0", "degree-0 forms " + c.object_label(y) + "->" + c.object_label(x) +
                                              " differ from the base category"});
            }
        }
    if (!out.empty()) return out;
    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y)
            for (ObjectId z = 0; z < k; ++z) {
                if (!(*w.composition(0, 0, x, y, z) == c.composition(x, y, z))) {
                    out.push_back({"degree0", "degree-0 composition (" + c.object_label(x) + "," + c.object_label(y) +
                                                  "," + c.object_label(z) + ") differs from the base category"});
                }
            }

    // units in every degree
    for (std::size_t n = 0; n <= N; ++n)
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y)
                for (std::size_t i = 0; i < w.dim(n, x, y); ++i) {
                    const Form f = basis_form(w, n, x, y, i);
                    if (compose_forms(w, identity_form(w, x), f) != f || compose_forms(w, f, identity_form(w, y)) != f) {
                        out.push_back({"unit", "identity does not act as a unit on " + where(n, x, y, i)});
                    }
                }

    // d o d = 0
    for (std::size_t n = 0; n + 2 <= N; ++n)
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y) {
                const Matrix dd = w.differential(n + 1, x, y) * w.differential(n, x, y);
                for (std::size_t i = 0; i < dd.cols(); ++i) {
                    if (!is_zero(dd.column(i))) out.push_back({"d^2", "d(d(" + where(n, x, y, i) + ")) != 0"});
                }
            }

    // graded Leibniz on basis pairs with p + q + 1 <= N
    for (std::size_t p = 0; p <= N; ++p)
        for (std::size_t q = 0; p + q + 1 <= N; ++q)
            for (ObjectId x = 0; x < k; ++x)
                for (ObjectId y = 0; y < k; ++y)
                    for (ObjectId z = 0; z < k; ++z)
                        for (std::size_t i = 0; i < w.dim(p, x, y); ++i)
                            for (std::size_t j = 0; j < w.dim(q, y, z); ++j) {
                                const Form a = basis_form(w, p, x, y, i);
                                const Form b = basis_form(w, q, y, z, j);
                                const Form lhs = differential(w, compose_forms(w, a, b));
                                Form rhs = compose_forms(w, differential(w, a), b);
                                rhs = add_forms(rhs, scale_form(compose_forms(w, a, differential(w, b)), sign(p)));
                                if (lhs != rhs) {
                                    out.push_back({"leibniz", "d(ab) != (da)b + (-1)^|a| a(db) for a = " +
                                                                  where(p, x, y, i) + ", b = " + where(q, y, z, j)});
                                }
                            }

    // associativity of graded composition
    for (std::size_t p = 0; p <= N; ++p)
        for (std::size_t q = 0; p + q <= N; ++q)
            for (std::size_t r = 0; p + q + r <= N; ++r)
                for (ObjectId a = 0; a < k; ++a)
                    for (ObjectId b = 0; b < k; ++b)
                        for (ObjectId x = 0; x < k; ++x)
                            for (ObjectId y = 0; y < k; ++y)
                                for (std::size_t i = 0; i < w.dim(p, a, b); ++i)
                                    for (std::size_t j = 0; j < w.dim(q, b, x); ++j) {
                                        const Form f = basis_form(w, p, a, b, i);
                                        const Form g = basis_form(w, q, b, x, j);
                                        const Form fg = compose_forms(w, f, g);
                                        for (std::size_t l = 0; l < w.dim(r, x, y); ++l) {
                                            const Form h = basis_form(w, r, x, y, l);
                                            if (compose_forms(w, fg, h) != compose_forms(w, f, compose_forms(w, g, h))) {
                                                out.push_back({"associativity", "(fg)h != f(gh) for f = " +
                                                                                    where(p, a, b, i) + ", g = " +
                                                                                    where(q, b, x, j) + ", h = " +
                                                                                    where(r, x, y, l)});
                                            }
                                        }
                                    }
    return out;
}

}  // namespace lincat
