#pragma once

// The de Rham complex Omega*_ab (diagonal forms modulo graded commutators),
// its cohomology, and the cochain complex of the epsilon extension used by
// the homotopy argument.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "lincat/dg.hpp"
#include "lincat/linalg.hpp"

namespace lincat {

/// [b, b'] = b b' - (-1)^{p(n-p)} b' b over basis pairs b in Omega^p(x, y),
/// b' in Omega^{n-p}(y, x); flattened diagonal vectors, zero brackets dropped.
std::vector<Vector> commutator_spanning_set(const DGCategory& w, std::size_t n);
/// Graded commutator of two forms whose composites in both orders are diagonal.
DiagonalForm graded_commutator(const DGCategory& w, const Form& a, const Form& b);

class DeRhamComplex {
public:
    explicit DeRhamComplex(std::shared_ptr<const DGCategory> w);

    const DGCategory& forms() const { return *w_; }
    const std::shared_ptr<const DGCategory>& forms_ptr() const { return w_; }
    std::size_t truncation() const { return w_->truncation(); }

    const QuotientSpace& quotient(std::size_t n) const { return quotients_.at(n); }
    std::size_t dim(std::size_t n) const { return n > truncation() ? 0 : quotients_[n].dim(); }
    /// d^n_ab : Omega^n_ab -> Omega^{n+1}_ab in quotient coordinates (zero out of degree N).
    const Matrix& differential(std::size_t n) const { return differentials_.at(n); }

    Vector class_of(const DiagonalForm& f) const;
    /// Canonical diagonal representative of a class.
    DiagonalForm representative(std::size_t n, const Vector& coords) const;

private:
    std::shared_ptr<const DGCategory> w_;
    std::vector<QuotientSpace> quotients_;
    std::vector<Matrix> differentials_;
};

DeRhamComplex build_derham(std::shared_ptr<const DGCategory> w);

struct Cohomology {
    std::size_t degree = 0;
    std::size_t dim = 0;
    bool truncation_unreliable = false;  // degree N: d into degree N + 1 was killed
    std::vector<Vector> basis;           // representatives, in Omega^n_ab coordinates
    std::vector<Vector> coboundaries;    // basis of the image of d^{n-1}_ab
    SpanSolver solver;                   // over coboundaries followed by basis

    /// Coordinates of a cocycle class in the basis; throws std::logic_error
    /// for non-cocycles.
    Vector coordinates(const Vector& cocycle) const;
};

Cohomology cohomology(const DeRhamComplex& complex, std::size_t n);

/// Class of eta with d_ab(eta) = class(phi), if any (n >= 1).
std::optional<Vector> is_coboundary(const DeRhamComplex& complex, const DiagonalForm& phi);
std::optional<Vector> is_coboundary(const DeRhamComplex& complex, std::size_t n, const Vector& phi_class);

// ---------------------------------------------------------------------------
// Epsilon extension cochains

/// A degree-n cochain <w0> + <w1> eps of the epsilon extension. Entry i of
/// omega0 (resp. omega1) is the coefficient of t^i in Omega^n_ab (resp.
/// Omega^{n-1}_ab coordinates); both have length D + 1.
struct TildeCochain {
    std::size_t degree = 0;
    std::vector<Vector> omega0;
    std::vector<Vector> omega1;

    friend bool operator==(const TildeCochain&, const TildeCochain&) = default;
};

TildeCochain zero_tilde_cochain(const DeRhamComplex& complex, std::size_t n, std::size_t t_bound);
/// delta(<w0> + <w1> eps) = <dw0> + <dw1 + (-1)^(n+1) dw0/dt> eps.
TildeCochain tilde_differential(const DeRhamComplex& complex, const TildeCochain& c);
/// Class of a tilde trace (one diagonal form per power of t) as a cochain.
TildeCochain tilde_class(const DeRhamComplex& complex, const TildeTrace& tr, std::size_t t_bound);
/// <w0(a)>.
Vector ev_at(const DeRhamComplex& complex, const Scalar& a, const TildeCochain& c);
/// (-1)^n < int_0^1 w1 dt >.
Vector homotopy_k(const DeRhamComplex& complex, const TildeCochain& c);

struct SplittingCheck {
    std::size_t degree = 0;
    std::size_t tilde_commutators = 0;  // dim of [tilde Omega, tilde Omega]^n at t-degree <= D
    std::size_t poly_commutators = 0;   // dim [Omega[t], Omega[t]]^n at t-degree <= D
    std::size_t poly_commutators_below = 0;  // same in degree n - 1
    bool holds() const { return tilde_commutators == poly_commutators + poly_commutators_below; }
};

/// Computes the three dimensions of the splitting independently.
SplittingCheck splitting_check(const DGCategory& w, std::size_t n, std::size_t t_bound);

}  // namespace lincat
