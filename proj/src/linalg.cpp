#include "lincat/linalg.hpp"

#include <algorithm>
#include <cctype>

#include "lincat/errors.hpp"

namespace lincat {

namespace {

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!is_digits(num) || (slash != std::string_view::npos && !is_digits(den))) {
        throw input_error("malformed scalar '" + std::string(text) + "': expected \"p\" or \"p/q\"");
    }
    if (!den.empty() && std::all_of(den.begin(), den.end(), [](char c) { return c == '0'; })) {
        throw input_error("malformed scalar '" + std::string(text) + "': zero denominator");
    }
    Scalar s(std::string(text), 10);
    s.canonicalize();
    return s;
}

std::string format_scalar(const Scalar& s) { return s.get_str(); }

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

void axpy(Vector& y, const Scalar& a, const Vector& x) {
    if (sgn(a) == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) != 0) y[i] += a * x[i];
    }
}

Vector scaled(const Vector& v, const Scalar& a) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * a;
    return out;
}

Vector add(const Vector& a, const Vector& b) {
    Vector out = a;
    axpy(out, 1, b);
    return out;
}

Vector subtract(const Vector& a, const Vector& b) {
    Vector out = a;
    axpy(out, -1, b);
    return out;
}

Vector concat(const Vector& a, const Vector& b) {
    Vector out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw input_error("from_rows: row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw input_error("from_columns: column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw input_error("matrix-vector dimension mismatch");
    Vector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (sgn(v[c]) == 0) continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& a = (*this)(r, c);
            if (sgn(a) != 0) out[r] += a * v[c];
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw input_error("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& bkj = b(k, j);
                if (sgn(bkj) != 0) out(i, j) += aik * bkj;
            }
        }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw input_error("matrix sum dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw input_error("matrix difference dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::is_zero() const { return lincat::is_zero(data_); }

// ---------------------------------------------------------------------------
// Elimination

RrefResult rref(const Matrix& m) {
    RrefResult res{m, {}, 0};
    Matrix& a = res.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.rows() && sgn(a(pivot, col)) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != row) {
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
        }
        const Scalar inv = 1 / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || sgn(a(r, col)) == 0) continue;
            const Scalar factor = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) {
                if (sgn(a(row, c)) != 0) a(r, c) -= factor * a(row, c);
            }
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = res.pivots.size();
    return res;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve_in_span(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw input_error("solve_in_span: right-hand side has wrong length");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const RrefResult red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t k = 0; k < red.pivots.size(); ++k) x[red.pivots[k]] = red.reduced(k, m.cols());
    return x;
}

// ---------------------------------------------------------------------------
// SpanSolver

SpanSolver::SpanSolver(const std::vector<Vector>& generators, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), generator_count_(generators.size()) {
    const std::size_t g = generators.size();
    Matrix aug(ambient_dim, g + ambient_dim);
    for (std::size_t c = 0; c < g; ++c) {
        if (generators[c].size() != ambient_dim) throw input_error("SpanSolver: generator has wrong length");
        for (std::size_t r = 0; r < ambient_dim; ++r) aug(r, c) = generators[c][r];
    }
    for (std::size_t r = 0; r < ambient_dim; ++r) aug(r, g + r) = 1;
    RrefResult red = rref(aug);
    reduced_ = std::move(red.reduced);
    for (std::size_t p : red.pivots) {
        if (p < g) pivots_.push_back(p);
    }
}

std::optional<Vector> SpanSolver::solve(const Vector& v) const {
    if (v.size() != ambient_dim_) throw input_error("SpanSolver: vector has wrong length");
    // E v where E is the right block of the reduced augmented matrix.
    const std::size_t g = generator_count_;
    Vector ev(ambient_dim_);
    for (std::size_t r = 0; r < ambient_dim_; ++r) {
        Scalar acc = 0;
        for (std::size_t c = 0; c < ambient_dim_; ++c) {
            if (sgn(v[c]) != 0 && sgn(reduced_(r, g + c)) != 0) acc += reduced_(r, g + c) * v[c];
        }
        ev[r] = acc;
    }
    for (std::size_t r = pivots_.size(); r < ambient_dim_; ++r) {
        if (sgn(ev[r]) != 0) return std::nullopt;
    }
    Vector x(g);
    for (std::size_t k = 0; k < pivots_.size(); ++k) x[pivots_[k]] = ev[k];
    return x;
}

// ---------------------------------------------------------------------------
// QuotientSpace

QuotientSpace::QuotientSpace(std::size_t ambient_dim, const std::vector<Vector>& spanning_set)
    : ambient_dim_(ambient_dim) {
    const RrefResult r = rref(Matrix::from_rows(spanning_set, ambient_dim));
    pivots_ = r.pivots;
    for (std::size_t k = 0; k < r.rank; ++k) subspace_basis_.push_back(r.reduced.row(k));
    std::vector<bool> is_pivot(ambient_dim, false);
    for (std::size_t p : pivots_) is_pivot[p] = true;
    for (std::size_t c = 0; c < ambient_dim; ++c) {
        if (!is_pivot[c]) free_columns_.push_back(c);
    }
}

Vector QuotientSpace::coordinates(const Vector& v) const {
    if (v.size() != ambient_dim_) throw input_error("QuotientSpace: vector has wrong length");
    Vector reduced = v;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        if (sgn(reduced[pivots_[k]]) == 0) continue;
        const Scalar factor = reduced[pivots_[k]];
        axpy(reduced, -factor, subspace_basis_[k]);
    }
    Vector out(free_columns_.size());
    for (std::size_t j = 0; j < free_columns_.size(); ++j) out[j] = reduced[free_columns_[j]];
    return out;
}

Vector QuotientSpace::lift(const Vector& coords) const {
    if (coords.size() != free_columns_.size()) throw input_error("QuotientSpace: coordinate vector has wrong length");
    Vector v(ambient_dim_);
    for (std::size_t j = 0; j < free_columns_.size(); ++j) v[free_columns_[j]] = coords[j];
    return v;
}

bool QuotientSpace::contains(const Vector& v) const { return is_zero(coordinates(v)); }

Matrix QuotientSpace::coset_coordinate_map() const {
    std::vector<Vector> cols;
    cols.reserve(ambient_dim_);
    for (std::size_t c = 0; c < ambient_dim_; ++c) cols.push_back(coordinates(unit_vector(ambient_dim_, c)));
    return Matrix::from_columns(cols, dim());
}

QuotientSpace build_quotient(std::size_t ambient_dim, const std::vector<Vector>& spanning_set) {
    for (const Vector& v : spanning_set) {
        if (v.size() != ambient_dim) throw input_error("build_quotient: spanning vector has wrong length");
    }
    return QuotientSpace(ambient_dim, spanning_set);
}

// ---------------------------------------------------------------------------
// BilinearTable

void BilinearTable::add(std::size_t left, std::size_t right, std::size_t out, const Scalar& value) {
    if (left >= left_dim_ || right >= right_dim_ || out >= out_dim_) {
        throw input_error("structure constant index out of range");
    }
    if (sgn(value) == 0) return;
    auto [it, inserted] = entries_.try_emplace(Key{left, right, out}, value);
    if (!inserted) {
        it->second += value;
        if (sgn(it->second) == 0) entries_.erase(it);
    }
}

void BilinearTable::set_product(std::size_t left, std::size_t right, const Vector& out) {
    if (out.size() != out_dim_) throw input_error("structure constant vector has wrong length");
    auto it = entries_.lower_bound(Key{left, right, 0});
    while (it != entries_.end() && std::get<0>(it->first) == left && std::get<1>(it->first) == right) {
        it = entries_.erase(it);
    }
    for (std::size_t k = 0; k < out.size(); ++k) add(left, right, k, out[k]);
}

Vector BilinearTable::product(std::size_t left, std::size_t right) const {
    Vector out(out_dim_);
    auto it = entries_.lower_bound(Key{left, right, 0});
    for (; it != entries_.end() && std::get<0>(it->first) == left && std::get<1>(it->first) == right; ++it) {
        out[std::get<2>(it->first)] = it->second;
    }
    return out;
}

Vector BilinearTable::apply(const Vector& a, const Vector& b) const {
    if (a.size() != left_dim_ || b.size() != right_dim_) throw input_error("bilinear map argument has wrong length");
    Vector out(out_dim_);
    for (const auto& [key, value] : entries_) {
        const auto& [i, j, k] = key;
        if (sgn(a[i]) == 0 || sgn(b[j]) == 0) continue;
        out[k] += value * a[i] * b[j];
    }
    return out;
}

}  // namespace lincat
