#include <doctest.h>

#include "lincat/chern.hpp"
#include "lincat/errors.hpp"
#include "support.hpp"

using namespace lincat;
using lincat::testing::load_fixture;
using lincat::testing::named_form;
using lincat::testing::Random;
using lincat::testing::universal;

namespace {

Connection random_connection(Random& r, const std::shared_ptr<const DGCategory>& w, const ProjectiveModule& m) {
    return Connection(w, m, r.form_matrix(*w, m.index(), m.index(), 1));
}

DiagonalForm add_diagonal(const DiagonalForm& a, const DiagonalForm& b) {
    DiagonalForm out = a;
    for (std::size_t x = 0; x < out.components.size(); ++x) out.components[x] = add(a.components[x], b.components[x]);
    return out;
}

}  // namespace

TEST_CASE("degree zero: Hattori-Stallings rank") {
    const auto w = universal(fixtures::two_cycle(), 3);
    const std::vector<ObjectId> index{0, 1, 1};
    const Connection c = free_connection(w, index, zero_matrix(*w, index, index, 1));
    DiagonalForm expected = zero_diagonal(*w, 0);
    for (ObjectId x : index) axpy(expected.components[x], 1, w->base().identity(x));
    CHECK(chern_cochain(c, 0) == expected);
    const DeRhamComplex complex = build_derham(w);
    const ChernClass k = chern_class(complex, c, 0);
    CHECK(k.coordinates == cohomology(complex, 0).coordinates(complex.class_of(expected)));
    CHECK_FALSE(is_zero(k.coordinates));
}

TEST_CASE("dual numbers with Lambda = [du]") {
    const auto w = universal(fixtures::dual_numbers(), 3);
    const Form du = named_form(*w, 1, "du");
    FormMatrix lambda = zero_matrix(*w, {0}, {0}, 1);
    lambda.at(0, 0) = du.coords;
    const Connection c = free_connection(w, {0}, lambda);
    const DiagonalForm omega = chern_cochain(c, 1);
    CHECK(omega == to_diagonal(*w, compose_forms(*w, du, du)));
    CHECK(format_diagonal(*w, omega) == "du·du");
    const DeRhamComplex complex = build_derham(w);
    CHECK(is_zero(complex.class_of(omega)));
    const ChernClass k = chern_class(complex, c, 1);
    CHECK(is_zero(k.coordinates));

    const Connection flat = free_connection(w, {0}, zero_matrix(*w, {0}, {0}, 1));
    CHECK(is_zero(flatten(*w, chern_cochain(flat, 1))));
    const InvarianceCertificate inv = invariance_certificate(complex, c, flat, 1);
    CHECK(is_zero(inv.difference_class));
    CHECK(is_zero(inv.eta));
    CHECK_THROWS_AS(chern_cochain(c, 2), truncation_error);
}

TEST_CASE("cocycle certificates") {
    Random r(71);
    for (const auto& cat : {fixtures::dual_numbers(), fixtures::a2_path(), fixtures::two_cycle()}) {
        for (std::size_t q = 1; q <= 2; ++q) {
            const auto w = universal(cat, 2 * q + 1);
            const std::vector<ObjectId> index = cat->object_count() == 1 ? std::vector<ObjectId>{0, 0} : std::vector<ObjectId>{0, 1};
            const ProjectiveModule f = as_projective(free_module(cat, index));
            const CocycleCertificate zero = certify_cocycle(levi_civita(w, f), q);
            CHECK(is_zero(flatten(*w, zero.d_omega)));
            for (int trial = 0; trial < 5; ++trial) {
                const Connection c = random_connection(r, w, f);
                const CocycleCertificate cert = certify_cocycle(c, q);
                Vector sum = zero_vector(flatten(*w, cert.d_omega).size());
                for (std::size_t k = 0; k < cert.spanning_set.size(); ++k) axpy(sum, cert.coefficients[k], cert.spanning_set[k]);
                CHECK(sum == flatten(*w, cert.d_omega));
                // d Tr(Gamma^q) = Tr(Gamma^q Lambda) - Tr(Lambda Gamma^q)
                const FormMatrix gq = curvature_power(c, q);
                const DiagonalForm rhs = trace(*w, subtract(multiply(*w, gq, c.lambda()), multiply(*w, c.lambda(), gq)));
                DiagonalForm lhs = zero_diagonal(*w, 2 * q + 1);
                const DiagonalForm t = trace(*w, gq);
                for (ObjectId x = 0; x < w->object_count(); ++x) lhs.components[x] = w->differential(2 * q, x, x).apply(t.components[x]);
                CHECK(lhs == rhs);
            }
        }
    }
    for (const auto& name : {"dual_numbers_universal", "two_cycle_universal", "point_universal"}) {
        const Workspace ws = load_fixture(name);
        for (const auto& [label, m] : ws.modules) CHECK_NOTHROW(certify_cocycle(levi_civita(ws.forms, m), 1));
    }
}

TEST_CASE("free modules have zero classes in positive degree") {
    Random r(72);
    for (const auto& name : {"dual_numbers_universal", "two_cycle_universal", "a2_universal"}) {
        const Workspace ws = load_fixture(name);
        const DeRhamComplex complex = build_derham(ws.forms);
        for (const auto& [label, m] : ws.modules) {
            if (!m.is_free()) continue;
            for (int trial = 0; trial < 3; ++trial) {
                const Connection c = random_connection(r, ws.forms, m);
                for (std::size_t q = 1; 2 * q + 1 <= ws.forms->truncation(); ++q) {
                    CHECK(is_zero(chern_class(complex, c, q).coordinates));
                    const TildeMechanism t = tilde_mechanism(complex, c, q);
                    CHECK(t.cocycle);
                    CHECK(t.ev_difference == t.expected);
                    CHECK(t.eta_is_preimage);
                    CHECK(t.ev_difference == complex.class_of(chern_cochain(c, q)));
                }
            }
        }
    }
}

TEST_CASE("independence of the connection") {
    Random r(73);
    for (const auto& name : {"dual_numbers_universal", "two_cycle_universal", "a2_universal"}) {
        const Workspace ws = load_fixture(name);
        const DeRhamComplex complex = build_derham(ws.forms);
        for (const auto& [label, m] : ws.modules) {
            const Connection lc = levi_civita(ws.forms, m);
            const InvarianceCertificate same = invariance_certificate(complex, lc, lc, 1);
            CHECK(is_zero(same.difference_class));
            CHECK(is_zero(same.eta));
            for (int trial = 0; trial < 3; ++trial) {
                const Connection c = random_connection(r, ws.forms, m);
                const InvarianceCertificate inv = invariance_certificate(complex, lc, c, 1);
                CHECK(complex.differential(1).apply(inv.eta) == inv.difference_class);
                CHECK(chern_class(complex, lc, 1).coordinates == chern_class(complex, c, 1).coordinates);
            }
        }
    }
}

TEST_CASE("additivity on direct sums at cochain level") {
    Random r(74);
    const Workspace ws = load_fixture("two_cycle_universal");
    const ProjectiveModule& p1 = ws.modules.at("P1");
    const ProjectiveModule& f = ws.modules.at("F");
    for (int trial = 0; trial < 5; ++trial) {
        const Connection a = random_connection(r, ws.forms, p1);
        const Connection b = random_connection(r, ws.forms, f);
        const Connection s = direct_sum_connection(a, b);
        for (std::size_t q = 0; q <= 2; ++q) CHECK(chern_cochain(s, q) == add_diagonal(chern_cochain(a, q), chern_cochain(b, q)));
    }
    const Workspace dn = load_fixture("dual_numbers_universal");
    const Connection a = dn.connections.at("Ldu"), b = dn.connections.at("C");
    CHECK(chern_cochain(direct_sum_connection(a, b), 1) == add_diagonal(chern_cochain(a, 1), chern_cochain(b, 1)));
}

TEST_CASE("independence of the idempotent presentation") {
    for (const auto& [name, first, second] : {std::tuple{"dual_numbers_universal", "P", "P2"},
                                              std::tuple{"a2_universal", "D", "E"}}) {
        const Workspace ws = load_fixture(name);
        const DeRhamComplex complex = build_derham(ws.forms);
        for (std::size_t q = 0; 2 * q + 1 <= ws.forms->truncation(); ++q) {
            const DiagonalForm a = chern_cochain(levi_civita(ws.forms, ws.modules.at(first)), q);
            const DiagonalForm b = chern_cochain(levi_civita(ws.forms, ws.modules.at(second)), q);
            const Vector diff = subtract(complex.class_of(a), complex.class_of(b));
            CHECK(is_coboundary(complex, 2 * q, diff).has_value());
        }
    }
}

TEST_CASE("Chern map on K_0 elements") {
    const Workspace ws = load_fixture("dual_numbers_universal");
    const DeRhamComplex complex = build_derham(ws.forms);
    const ProjectiveModule& f = ws.modules.at("F");
    const ProjectiveModule& p2 = ws.modules.at("P2");
    const ProjectiveModule& s = ws.modules.at("S");
    for (std::size_t q = 0; q <= 1; ++q) {
        CHECK(is_zero(k0_chern(complex, K0Element{{{1, p2}, {-1, p2}}}, q).coordinates));
        const ChernClass rel = k0_chern(complex, K0Element{{{1, f}, {1, p2}, {-1, s}}}, q);
        CHECK(is_zero(rel.coordinates));
        CHECK(is_zero(flatten(*ws.forms, rel.representative)));
    }
    CHECK(is_zero(k0_chern(complex, K0Element{{{2, f}}}, 1).coordinates));
    CHECK_FALSE(is_zero(k0_chern(complex, K0Element{{{2, f}}}, 0).coordinates));

    const Workspace tc = load_fixture("two_cycle_universal");
    const DeRhamComplex tcx = build_derham(tc.forms);
    for (std::size_t q = 0; q <= 2; ++q) {
        const K0Element rel{{{1, tc.modules.at("P1")}, {1, tc.modules.at("P2")}, {-1, tc.modules.at("S")}}};
        CHECK(is_zero(flatten(*tc.forms, k0_chern(tcx, rel, q).representative)));
    }
}
