#include "lincat/derham.hpp"

#include <stdexcept>

#include "lincat/errors.hpp"

namespace lincat {

namespace {

Scalar koszul(std::size_t p, std::size_t q) { return (p * q) % 2 == 0 ? Scalar(1) : Scalar(-1); }

std::vector<Vector> independent_columns(const Matrix& m) {
    std::vector<Vector> out;
    for (std::size_t p : rref(m).pivots) out.push_back(m.column(p));
    return out;
}

std::size_t span_rank(const std::vector<Vector>& vs, std::size_t ambient) {
    if (vs.empty()) return 0;
    return rref(Matrix::from_rows(vs, ambient)).rank;
}

}  // namespace

DiagonalForm graded_commutator(const DGCategory& w, const Form& a, const Form& b) {
    if (a.cod != b.dom || a.dom != b.cod) throw composition_error("graded commutator needs opposite endpoints");
    DiagonalForm out = to_diagonal(w, compose_forms(w, a, b));
    const DiagonalForm ba = to_diagonal(w, compose_forms(w, b, a));
    for (ObjectId x = 0; x < out.components.size(); ++x) {
        axpy(out.components[x], -koszul(a.degree, b.degree), ba.components[x]);
    }
    return out;
}

std::vector<Vector> commutator_spanning_set(const DGCategory& w, std::size_t n) {
    std::vector<Vector> out;
    if (n > w.truncation()) return out;
    const std::size_t k = w.object_count();
    for (std::size_t p = 0; p <= n; ++p)
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y)
                for (std::size_t i = 0; i < w.dim(p, x, y); ++i)
                    for (std::size_t j = 0; j < w.dim(n - p, y, x); ++j) {
                        const DiagonalForm c =
                            graded_commutator(w, basis_form(w, p, x, y, i), basis_form(w, n - p, y, x, j));
                        Vector v = flatten(w, c);
                        if (!is_zero(v)) out.push_back(std::move(v));
                    }
    return out;
}

// ---------------------------------------------------------------------------

DeRhamComplex::DeRhamComplex(std::shared_ptr<const DGCategory> w) : w_(std::move(w)) {
    const std::size_t N = w_->truncation();
    for (std::size_t n = 0; n <= N; ++n) {
        quotients_.push_back(build_quotient(w_->diagonal_dim(n), commutator_spanning_set(*w_, n)));
    }
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t target = n < N ? quotients_[n + 1].dim() : 0;
        Matrix d(target, quotients_[n].dim());
        if (n < N) {
            for (std::size_t c = 0; c < quotients_[n].dim(); ++c) {
                const DiagonalForm rep = representative(n, unit_vector(quotients_[n].dim(), c));
                DiagonalForm image = zero_diagonal(*w_, n + 1);
                for (ObjectId x = 0; x < w_->object_count(); ++x) {
                    image.components[x] = w_->differential(n, x, x).apply(rep.components[x]);
                }
                const Vector coords = class_of(image);
                for (std::size_t r = 0; r < target; ++r) d(r, c) = coords[r];
            }
        }
        differentials_.push_back(std::move(d));
    }
}

Vector DeRhamComplex::class_of(const DiagonalForm& f) const {
    if (f.degree > truncation()) return {};
    return quotients_[f.degree].coordinates(flatten(*w_, f));
}

DiagonalForm DeRhamComplex::representative(std::size_t n, const Vector& coords) const {
    return unflatten(*w_, n, quotients_.at(n).lift(coords));
}

DeRhamComplex build_derham(std::shared_ptr<const DGCategory> w) { return DeRhamComplex(std::move(w)); }

Vector Cohomology::coordinates(const Vector& cocycle) const {
    auto c = solver.solve(cocycle);
    if (!c) throw std::logic_error("cohomology: vector is not a cocycle");
    return Vector(c->begin() + static_cast<std::ptrdiff_t>(coboundaries.size()), c->end());
}

Cohomology cohomology(const DeRhamComplex& complex, std::size_t n) {
    if (n > complex.truncation()) throw truncation_error("cohomology above the truncation degree");
    Cohomology h;
    h.degree = n;
    h.truncation_unreliable = n == complex.truncation();
    const std::size_t ambient = complex.dim(n);
    if (n > 0) h.coboundaries = independent_columns(complex.differential(n - 1));
    std::vector<Vector> chosen = h.coboundaries;
    std::size_t rank = chosen.size();
    for (const Vector& z : kernel_basis(complex.differential(n))) {
        chosen.push_back(z);
        const std::size_t r = span_rank(chosen, ambient);
        if (r > rank) {
            rank = r;
            h.basis.push_back(z);
        } else {
            chosen.pop_back();
        }
    }
    h.dim = h.basis.size();
    h.solver = SpanSolver(chosen, ambient);
    return h;
}

std::optional<Vector> is_coboundary(const DeRhamComplex& complex, std::size_t n, const Vector& phi_class) {
    if (n == 0) return is_zero(phi_class) ? std::optional<Vector>(Vector{}) : std::nullopt;
    return solve_in_span(complex.differential(n - 1), phi_class);
}

std::optional<Vector> is_coboundary(const DeRhamComplex& complex, const DiagonalForm& phi) {
    return is_coboundary(complex, phi.degree, complex.class_of(phi));
}

// ---------------------------------------------------------------------------

TildeCochain zero_tilde_cochain(const DeRhamComplex& complex, std::size_t n, std::size_t t_bound) {
    TildeCochain c{n, {}, {}};
    c.omega0.assign(t_bound + 1, Vector(complex.dim(n)));
    c.omega1.assign(t_bound + 1, Vector(n == 0 ? 0 : complex.dim(n - 1)));
    return c;
}

TildeCochain tilde_differential(const DeRhamComplex& complex, const TildeCochain& c) {
    const std::size_t n = c.degree;
    const std::size_t D = c.omega0.size() - 1;
    TildeCochain out = zero_tilde_cochain(complex, n + 1, D);
    const Scalar s = (n + 1) % 2 == 0 ? Scalar(1) : Scalar(-1);
    for (std::size_t i = 0; i <= D; ++i) {
        out.omega0[i] = complex.differential(n).apply(c.omega0[i]);
        if (n > 0) out.omega1[i] = complex.differential(n - 1).apply(c.omega1[i]);
        if (i < D) axpy(out.omega1[i], s * Scalar(i + 1), c.omega0[i + 1]);
    }
    return out;
}

TildeCochain tilde_class(const DeRhamComplex& complex, const TildeTrace& tr, std::size_t t_bound) {
    TildeCochain c = zero_tilde_cochain(complex, tr.degree, t_bound);
    if (tr.omega0.size() > t_bound + 1 || tr.omega1.size() > t_bound + 1) {
        throw input_error("tilde trace exceeds the t-degree bound");
    }
    for (std::size_t i = 0; i < tr.omega0.size(); ++i) c.omega0[i] = complex.class_of(tr.omega0[i]);
    if (tr.degree > 0) {
        for (std::size_t i = 0; i < tr.omega1.size(); ++i) c.omega1[i] = complex.class_of(tr.omega1[i]);
    }
    return c;
}

Vector ev_at(const DeRhamComplex& complex, const Scalar& a, const TildeCochain& c) {
    Vector out(complex.dim(c.degree));
    Scalar power = 1;
    for (const Vector& v : c.omega0) {
        axpy(out, power, v);
        power *= a;
    }
    return out;
}

Vector homotopy_k(const DeRhamComplex& complex, const TildeCochain& c) {
    if (c.degree == 0) return {};
    Vector out(complex.dim(c.degree - 1));
    const Scalar s = c.degree % 2 == 0 ? Scalar(1) : Scalar(-1);
    for (std::size_t i = 0; i < c.omega1.size(); ++i) axpy(out, s / Scalar(i + 1), c.omega1[i]);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Flattened tilde diagonal element: omega0 then omega1 coefficients, t^0..t^D.
Vector flatten_tilde(const DGCategory& w, std::size_t n, std::size_t D, const TildeForm& f) {
    const std::size_t d0 = w.diagonal_dim(n);
    const std::size_t d1 = n == 0 ? 0 : w.diagonal_dim(n - 1);
    Vector out((D + 1) * (d0 + d1));
    auto place = [&](const PolyForm& p, std::size_t base, std::size_t block) {
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
            if (is_zero(p.coeffs[i])) continue;
            if (i > D) throw std::logic_error("t-degree bound exceeded");
            const std::size_t off = base + i * block + w.diagonal_offset(p.degree, p.cod);
            for (std::size_t j = 0; j < p.coeffs[i].size(); ++j) out[off + j] += p.coeffs[i][j];
        }
    };
    place(f.omega0, 0, d0);
    if (f.omega1) place(*f.omega1, (D + 1) * d0, d1);
    return out;
}

struct TildeBasisElement {
    TildeForm form;
    std::size_t t_power;
};

std::vector<TildeBasisElement> tilde_basis(const DGCategory& w, std::size_t m, ObjectId x, ObjectId y,
                                           std::size_t D) {
    std::vector<TildeBasisElement> out;
    for (std::size_t i = 0; i <= D; ++i) {
        for (std::size_t b = 0; b < w.dim(m, x, y); ++b) {
            out.push_back({make_tilde(w, monomial(basis_form(w, m, x, y, b), i)), i});
        }
        if (m == 0) continue;
        for (std::size_t b = 0; b < w.dim(m - 1, x, y); ++b) {
            out.push_back({make_tilde(w, zero_poly(w, m, x, y), monomial(basis_form(w, m - 1, x, y, b), i)), i});
        }
    }
    return out;
}

}  // namespace

SplittingCheck splitting_check(const DGCategory& w, std::size_t n, std::size_t t_bound) {
    if (n > w.truncation()) throw truncation_error("splitting check above the truncation degree");
    SplittingCheck out;
    out.degree = n;
    const std::size_t D = t_bound;
    const std::size_t k = w.object_count();

    std::vector<Vector> tilde;
    for (std::size_t p = 0; p <= n; ++p)
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y) {
                const auto left = tilde_basis(w, p, x, y, D);
                const auto right = tilde_basis(w, n - p, y, x, D);
                for (const auto& a : left)
                    for (const auto& b : right) {
                        if (a.t_power + b.t_power > D) continue;
                        const TildeForm ab = compose_tilde(w, a.form, b.form);
                        const TildeForm ba = compose_tilde(w, b.form, a.form);
                        Vector v = flatten_tilde(w, n, D, ab);
                        axpy(v, -koszul(p, n - p), flatten_tilde(w, n, D, ba));
                        if (!is_zero(v)) tilde.push_back(std::move(v));
                    }
            }
    const std::size_t d0 = w.diagonal_dim(n);
    const std::size_t d1 = n == 0 ? 0 : w.diagonal_dim(n - 1);
    out.tilde_commutators = span_rank(tilde, (D + 1) * (d0 + d1));

    auto poly_rank = [&](std::size_t m) {
        std::vector<Vector> span;
        const std::size_t dm = w.diagonal_dim(m);
        for (std::size_t p = 0; p <= m; ++p)
            for (ObjectId x = 0; x < k; ++x)
                for (ObjectId y = 0; y < k; ++y)
                    for (std::size_t i = 0; i < w.dim(p, x, y); ++i)
                        for (std::size_t j = 0; j < w.dim(m - p, y, x); ++j)
                            for (std::size_t ti = 0; ti <= D; ++ti)
                                for (std::size_t tj = 0; ti + tj <= D; ++tj) {
                                    const PolyForm a = monomial(basis_form(w, p, x, y, i), ti);
                                    const PolyForm b = monomial(basis_form(w, m - p, y, x, j), tj);
                                    const PolyForm ab = compose_poly(w, a, b);
                                    const PolyForm ba = compose_poly(w, b, a);
                                    Vector v((D + 1) * dm);
                                    for (std::size_t e = 0; e < ab.coeffs.size(); ++e)
                                        for (std::size_t c = 0; c < ab.coeffs[e].size(); ++c)
                                            v[e * dm + w.diagonal_offset(m, x) + c] += ab.coeffs[e][c];
                                    for (std::size_t e = 0; e < ba.coeffs.size(); ++e)
                                        for (std::size_t c = 0; c < ba.coeffs[e].size(); ++c)
                                            v[e * dm + w.diagonal_offset(m, y) + c] -=
                                                koszul(p, m - p) * ba.coeffs[e][c];
                                    if (!is_zero(v)) span.push_back(std::move(v));
                                }
        return span_rank(span, (D + 1) * dm);
    };
    out.poly_commutators = poly_rank(n);
    out.poly_commutators_below = n == 0 ? 0 : poly_rank(n - 1);
    return out;
}

}  // namespace lincat
