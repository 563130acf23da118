#pragma once

// Exact linear algebra over the rationals.
//
// Every quotient, kernel and membership question in the engine is answered
// here. There is no tolerance anywhere: pivots are the first nonzero entry
// in column order and all arithmetic is done in GMP rationals.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace lincat {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "p" or "p/q" (optional leading '-'). Throws input_error otherwise.
Scalar parse_scalar(std::string_view text);
std::string format_scalar(const Scalar& s);

bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
void axpy(Vector& y, const Scalar& a, const Vector& x);  // y += a x
Vector scaled(const Vector& v, const Scalar& a);
Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector concat(const Vector& a, const Vector& b);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix transpose() const;
    Vector apply(const Vector& v) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

    bool is_zero() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);

/// Basis of ker(m): one vector per non-pivot column, with a 1 in that column.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Some x with m x = b, or nullopt when b is outside the column span.
/// Throws input_error when b.size() != m.rows().
std::optional<Vector> solve_in_span(const Matrix& m, const Vector& b);

/// Expresses vectors in a fixed family of spanning vectors. Factorizes once so
/// repeated membership queries against the same family are cheap.
class SpanSolver {
public:
    SpanSolver() = default;
    SpanSolver(const std::vector<Vector>& generators, std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t generator_count() const { return generator_count_; }
    std::size_t rank() const { return pivots_.size(); }

    /// Coefficients c with sum c_k g_k == v, or nullopt.
    std::optional<Vector> solve(const Vector& v) const;

private:
    std::size_t ambient_dim_ = 0;
    std::size_t generator_count_ = 0;
    Matrix reduced_;     // rref of [G | I]
    std::vector<std::size_t> pivots_;
};

/// V / W with W given by a spanning set. The coset coordinate map reads the
/// non-pivot coordinates after reducing against the echelon basis of W.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(std::size_t ambient_dim, const std::vector<Vector>& spanning_set);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return free_columns_.size(); }
    const std::vector<Vector>& subspace_basis() const { return subspace_basis_; }
    const std::vector<std::size_t>& free_columns() const { return free_columns_; }

    Vector coordinates(const Vector& v) const;
    /// Canonical representative of a quotient vector (supported on free columns).
    Vector lift(const Vector& coords) const;
    bool contains(const Vector& v) const;  // v in W
    Matrix coset_coordinate_map() const;

private:
    std::size_t ambient_dim_ = 0;
    std::vector<Vector> subspace_basis_;  // reduced echelon rows
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> free_columns_;
};

QuotientSpace build_quotient(std::size_t ambient_dim, const std::vector<Vector>& spanning_set);

/// Structure constants of a bilinear map A x B -> C, stored sparsely.
class BilinearTable {
public:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;  // (left, right, out)

    BilinearTable() = default;
    BilinearTable(std::size_t left_dim, std::size_t right_dim, std::size_t out_dim)
        : left_dim_(left_dim), right_dim_(right_dim), out_dim_(out_dim) {}

    std::size_t left_dim() const { return left_dim_; }
    std::size_t right_dim() const { return right_dim_; }
    std::size_t out_dim() const { return out_dim_; }
    const std::map<Key, Scalar>& entries() const { return entries_; }

    void add(std::size_t left, std::size_t right, std::size_t out, const Scalar& value);
    /// Sets the image of the basis pair (left, right), replacing earlier entries.
    void set_product(std::size_t left, std::size_t right, const Vector& out);
    Vector product(std::size_t left, std::size_t right) const;
    Vector apply(const Vector& a, const Vector& b) const;

    friend bool operator==(const BilinearTable& a, const BilinearTable& b) = default;

private:
    std::size_t left_dim_ = 0;
    std::size_t right_dim_ = 0;
    std::size_t out_dim_ = 0;
    std::map<Key, Scalar> entries_;  // nonzero only
};

}  // namespace lincat
