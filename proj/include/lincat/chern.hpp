#pragma once

// Chern cochains omega^q(M, nabla) = Tr(e Gamma^q), their cocycle
// certificates, Chern classes, connection-independence certificates and the
// Chern map on formal K_0 elements.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lincat/connection.hpp"
#include "lincat/derham.hpp"
#include "lincat/module.hpp"

namespace lincat {

/// Diagonal trace of e Gamma^q, a diagonal form of degree 2q. Requires 2q + 1 <= N.
DiagonalForm chern_cochain(const Connection& c, std::size_t q);

struct CocycleCertificate {
    std::size_t q = 0;
    DiagonalForm d_omega;               // d(omega^q), degree 2q + 1
    std::vector<Vector> spanning_set;   // graded commutators in degree 2q + 1
    Vector coefficients;                // d_omega = sum_k coefficients[k] spanning_set[k]
};

/// Exhibits d(omega^q) as a combination of graded commutators. Also checks
/// Pi = 2 Psi - 1 satisfies Pi^2 = 1 and Pi dPsi = -dPsi Pi. Throws
/// certification_error on failure.
CocycleCertificate certify_cocycle(const Connection& c, std::size_t q);

struct ChernClass {
    std::size_t q = 0;
    DiagonalForm representative;
    Vector form_class;   // coordinates in Omega^{2q}_ab
    Vector coordinates;  // coordinates in the cohomology basis of H^{2q}
    Cohomology cohomology;
};

ChernClass chern_class(const DeRhamComplex& complex, const Connection& c, std::size_t q);

/// The epsilon-extension argument on a free module: the class varpi of
/// Tr(Gamma~^q) for Lambda~ = Lambda t, and k(varpi) as a coboundary preimage.
struct TildeMechanism {
    TildeCochain varpi;
    bool cocycle = false;        // delta(varpi) = 0
    Vector ev_difference;        // ev_1(varpi) - ev_0(varpi)
    Vector expected;             // class of Tr((d Lambda + Lambda^2)^q) - Tr(0^q)
    Vector eta;                  // k(varpi)
    bool eta_is_preimage = false;  // d_ab(eta) = ev_difference
    bool holds() const { return cocycle && ev_difference == expected && eta_is_preimage; }
};

TildeMechanism tilde_mechanism(const DeRhamComplex& complex, const Connection& c, std::size_t q);

struct InvarianceCertificate {
    std::size_t q = 0;
    Vector difference_class;  // class of omega^q(nabla_1) - omega^q(nabla_2)
    Vector eta;               // class in Omega^{2q-1}_ab with d_ab(eta) = difference_class
    std::optional<std::pair<TildeMechanism, TildeMechanism>> tilde;  // free modules only
};

/// Throws certification_error when no preimage exists.
InvarianceCertificate invariance_certificate(const DeRhamComplex& complex, const Connection& a, const Connection& b,
                                             std::size_t q);

/// Formal integer combination of projective modules.
struct K0Element {
    std::vector<std::pair<long, ProjectiveModule>> terms;
};

/// sum_k n_k chern_class(M_k, Levi-Civita, q).
ChernClass k0_chern(const DeRhamComplex& complex, const K0Element& z, std::size_t q);

}  // namespace lincat
