#include "lincat/chern.hpp"

#include "lincat/errors.hpp"

namespace lincat {

namespace {

void require_same_forms(const DeRhamComplex& complex, const Connection& c) {
    if (&complex.forms() != &c.forms() && !(complex.forms().tables() == c.forms().tables())) {
        throw input_error("connection and de Rham complex use different DG-categories");
    }
}

void require_cocycle_degree(const DGCategory& w, std::size_t q) {
    if (2 * q + 1 > w.truncation()) {
        throw truncation_error("Chern cochain in degree " + std::to_string(2 * q) + " needs N >= " +
                               std::to_string(2 * q + 1) + " (have N = " + std::to_string(w.truncation()) + ")");
    }
}

DiagonalForm diagonal_differential(const DGCategory& w, const DiagonalForm& f) {
    DiagonalForm out = zero_diagonal(w, f.degree + 1);
    if (f.degree >= w.truncation()) return out;
    for (ObjectId x = 0; x < w.object_count(); ++x) out.components[x] = w.differential(f.degree, x, x).apply(f.components[x]);
    return out;
}

}  // namespace

DiagonalForm chern_cochain(const Connection& c, std::size_t q) {
    const DGCategory& w = c.forms();
    require_cocycle_degree(w, q);
    return trace(w, multiply(w, c.module().idempotent(), curvature_power(c, q)));
}

CocycleCertificate certify_cocycle(const Connection& c, std::size_t q) {
    const DGCategory& w = c.forms();
    CocycleCertificate cert;
    cert.q = q;
    cert.d_omega = diagonal_differential(w, chern_cochain(c, q));
    cert.spanning_set = commutator_spanning_set(w, 2 * q + 1);
    const Vector target = flatten(w, cert.d_omega);
    const Matrix span = Matrix::from_columns(cert.spanning_set, target.size());
    auto coeffs = solve_in_span(span, target);
    if (!coeffs || span.apply(*coeffs) != target) {
        throw certification_error("d(omega^" + std::to_string(q) + ") = " + format_diagonal(w, cert.d_omega) +
                                  " is not a sum of graded commutators");
    }
    cert.coefficients = std::move(*coeffs);

    const FormMatrix psi = gram_matrix(c.module());
    const FormMatrix one = identity_matrix(w, c.module().index());
    const FormMatrix pi = subtract(scale(psi, 2), one);
    if (multiply(w, pi, pi) != one) throw certification_error("Pi = 2 Psi - 1 does not square to the identity");
    const FormMatrix dpsi = differential(w, psi);
    if (multiply(w, pi, dpsi) != scale(multiply(w, dpsi, pi), -1)) {
        throw certification_error("Pi does not anticommute with d Psi");
    }
    return cert;
}

ChernClass chern_class(const DeRhamComplex& complex, const Connection& c, std::size_t q) {
    require_same_forms(complex, c);
    certify_cocycle(c, q);
    ChernClass out;
    out.q = q;
    out.representative = chern_cochain(c, q);
    out.form_class = complex.class_of(out.representative);
    out.cohomology = cohomology(complex, 2 * q);
    out.coordinates = out.cohomology.coordinates(out.form_class);
    return out;
}

TildeMechanism tilde_mechanism(const DeRhamComplex& complex, const Connection& c, std::size_t q) {
    require_same_forms(complex, c);
    if (!c.module().is_free()) throw input_error("the epsilon-extension check applies to free modules");
    if (q == 0) throw input_error("the epsilon-extension check needs q >= 1");
    const DGCategory& w = c.forms();
    require_cocycle_degree(w, q);
    const TildeMatrix lt = tilde_linear_in_t(w, c.lambda());
    const TildeMatrix gt = add(partial(w, lt), multiply(w, lt, lt));
    const std::vector<ObjectId>& index = c.module().index();
    TildeMatrix tilde_power{index, index, 0, {}};
    for (std::size_t i = 0; i < index.size(); ++i)
        for (std::size_t j = 0; j < index.size(); ++j) {
            const Form entry = i == j ? identity_form(w, index[i]) : zero_form(w, 0, index[i], index[j]);
            tilde_power.entries.push_back(make_tilde(w, constant_poly(entry)));
        }
    for (std::size_t k = 0; k < q; ++k) tilde_power = multiply(w, tilde_power, gt);

    TildeMechanism out;
    out.varpi = tilde_class(complex, trace(w, tilde_power), 2 * q);
    const TildeCochain dv = tilde_differential(complex, out.varpi);
    out.cocycle = dv == zero_tilde_cochain(complex, dv.degree, 2 * q);
    out.ev_difference = subtract(ev_at(complex, 1, out.varpi), ev_at(complex, 0, out.varpi));

    const FormMatrix gamma = add(differential(w, c.lambda()), multiply(w, c.lambda(), c.lambda()));
    out.expected = complex.class_of(trace(w, power(w, gamma, q)));
    out.eta = homotopy_k(complex, out.varpi);
    out.eta_is_preimage = complex.differential(2 * q - 1).apply(out.eta) == out.ev_difference;
    return out;
}

InvarianceCertificate invariance_certificate(const DeRhamComplex& complex, const Connection& a, const Connection& b,
                                             std::size_t q) {
    require_same_forms(complex, a);
    require_same_forms(complex, b);
    if (!(a.module() == b.module())) throw input_error("invariance: connections live on different modules");
    const DGCategory& w = a.forms();
    InvarianceCertificate out;
    out.q = q;
    out.difference_class = subtract(complex.class_of(chern_cochain(a, q)), complex.class_of(chern_cochain(b, q)));
    auto eta = is_coboundary(complex, 2 * q, out.difference_class);
    if (!eta) {
        throw certification_error("omega^" + std::to_string(q) + " of the two connections differ by " +
                                  format_diagonal(w, complex.representative(2 * q, out.difference_class)) +
                                  ", which is not a coboundary");
    }
    out.eta = std::move(*eta);
    if (q > 0 && a.module().is_free()) {
        out.tilde = std::make_pair(tilde_mechanism(complex, a, q), tilde_mechanism(complex, b, q));
        if (!out.tilde->first.holds() || !out.tilde->second.holds()) {
            throw certification_error("epsilon-extension mechanism does not reproduce the Chern cochain");
        }
    }
    return out;
}

ChernClass k0_chern(const DeRhamComplex& complex, const K0Element& z, std::size_t q) {
    ChernClass out;
    out.q = q;
    out.cohomology = cohomology(complex, 2 * q);
    out.representative = zero_diagonal(complex.forms(), 2 * q);
    out.form_class = Vector(complex.dim(2 * q));
    out.coordinates = Vector(out.cohomology.dim);
    for (const auto& [n, m] : z.terms) {
        const ChernClass c = chern_class(complex, levi_civita(complex.forms_ptr(), m), q);
        for (ObjectId x = 0; x < out.representative.components.size(); ++x) {
            axpy(out.representative.components[x], Scalar(n), c.representative.components[x]);
        }
        axpy(out.form_class, Scalar(n), c.form_class);
        axpy(out.coordinates, Scalar(n), c.coordinates);
    }
    return out;
}

}  // namespace lincat
