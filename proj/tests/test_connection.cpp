#include <doctest.h>

#include "lincat/connection.hpp"
#include "lincat/errors.hpp"
#include "support.hpp"

using namespace lincat;
using lincat::testing::arrow;
using lincat::testing::load_fixture;
using lincat::testing::named_form;
using lincat::testing::Random;
using lincat::testing::universal;

namespace {

FormMatrix single(const DGCategory& w, const Form& f) {
    FormMatrix m = zero_matrix(w, {f.cod}, {f.dom}, f.degree);
    m.at(0, 0) = f.coords;
    return m;
}

// Random e-fixed column of degree-n forms at x.
FormMatrix fixed_column(Random& r, const Connection& c, std::size_t n, ObjectId x) {
    const DGCategory& w = c.forms();
    return multiply(w, c.module().idempotent(), r.form_matrix(w, c.module().index(), {x}, n));
}

Connection random_connection(Random& r, const std::shared_ptr<const DGCategory>& w, const ProjectiveModule& m) {
    return Connection(w, m, r.form_matrix(*w, m.index(), m.index(), 1));
}

std::vector<Connection> sample_connections(Random& r, std::size_t truncation) {
    std::vector<Connection> out;
    for (const auto& c : {fixtures::dual_numbers(), fixtures::a2_path(), fixtures::two_cycle()}) {
        const auto w = universal(c, truncation);
        const std::vector<std::vector<ObjectId>> families =
            c->object_count() == 1 ? std::vector<std::vector<ObjectId>>{{0}, {0, 0}} : std::vector<std::vector<ObjectId>>{{0, 1}, {1, 0, 1}};
        for (const auto& index : families) {
            const ProjectiveModule f = as_projective(free_module(c, index));
            out.push_back(random_connection(r, w, f));
            out.push_back(levi_civita(w, f));
        }
    }
    for (const auto& name : {"dual_numbers_universal", "a2_universal", "two_cycle_universal"}) {
        const Workspace ws = load_fixture(name);
        if (ws.forms->truncation() < truncation) continue;
        for (const auto& [label, conn] : ws.connections) out.push_back(conn);
        for (const auto& [label, m] : ws.modules) {
            out.push_back(levi_civita(ws.forms, m));
            out.push_back(random_connection(r, ws.forms, m));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("free connections on generators and with zero matrix") {
    Random r(51);
    const auto w = universal(fixtures::two_cycle(), 3);
    const std::vector<ObjectId> index{0, 1, 0};
    const FormMatrix lambda = r.form_matrix(*w, index, index, 1);
    const Connection c = free_connection(w, index, lambda);
    CHECK(generator_matrix(c) == lambda);

    const Connection flat = free_connection(w, index, zero_matrix(*w, index, index, 1));
    for (ObjectId x = 0; x < 2; ++x) {
        const FormMatrix v = r.form_matrix(*w, index, {x}, 0);
        CHECK(extend(flat, v) == differential(*w, v));
        CHECK(extend(c, v) == add(multiply(*w, lambda, v), differential(*w, v)));
    }
}

TEST_CASE("dual numbers with Lambda = [du]") {
    const auto w = universal(fixtures::dual_numbers(), 3);
    const Form du = named_form(*w, 1, "du");
    const Connection c = free_connection(w, {0}, single(*w, du));
    const FormMatrix nabla_u = extend(c, single(*w, arrow(*w, "u")));
    CHECK(nabla_u == single(*w, add_forms(du, scale_form(named_form(*w, 1, "u·du"), -1))));
    const CurvatureData k = curvature(c);
    CHECK(k.gamma == single(*w, compose_forms(*w, du, du)));
    CHECK(curvature_power(c, 1) == k.gamma);
    CHECK(curvature_power(c, 0) == identity_matrix(*w, {0}));
}

TEST_CASE("Levi-Civita connections") {
    const auto w = universal(fixtures::dual_numbers(), 4);
    const ProjectiveModule f = as_projective(free_module(w->base_ptr(), {0, 0}));
    const Connection lf = levi_civita(w, f);
    CHECK(is_zero(lf.lambda()));
    CHECK(is_zero(curvature(lf).gamma));

    const Workspace ws = load_fixture("dual_numbers_universal");
    const ProjectiveModule& p2 = ws.modules.at("P2");
    const Connection lc = levi_civita(ws.forms, p2);
    const DGCategory& wd = *ws.forms;
    CHECK(is_zero(differential(wd, lc.lambda())));
    const FormMatrix gamma = curvature(lc).gamma;
    CHECK(multiply(wd, p2.idempotent(), multiply(wd, lc.lambda(), lc.lambda())) == gamma);

    // Omega^1 = 0 over Q: the connection lands in the zero space
    const Workspace pw = load_fixture("point_universal");
    const Connection lp = levi_civita(pw.forms, pw.modules.at("P"));
    CHECK(is_zero(generator_matrix(lp)));
    CHECK(lp.lambda().entries[0].empty());
}

TEST_CASE("direct sums of connections") {
    Random r(52);
    const auto w = universal(fixtures::two_cycle(), 4);
    const ProjectiveModule a = as_projective(free_module(w->base_ptr(), {0, 1}));
    const ProjectiveModule b = as_projective(free_module(w->base_ptr(), {1}));
    const Connection za = levi_civita(w, a), zb = levi_civita(w, b);
    CHECK(is_zero(direct_sum_connection(za, zb).lambda()));

    const Connection ca = random_connection(r, w, a), cb = random_connection(r, w, b);
    const Connection s = direct_sum_connection(ca, cb);
    CHECK(generator_matrix(s) == block_diagonal(*w, generator_matrix(ca), generator_matrix(cb)));
    CHECK(curvature(s).gamma == block_diagonal(*w, curvature(ca).gamma, curvature(cb).gamma));
    // restriction to the first summand
    for (ObjectId x = 0; x < 2; ++x) {
        const FormMatrix v = r.form_matrix(*w, a.index(), {x}, 0);
        FormMatrix padded = zero_matrix(*w, s.module().index(), {x}, 0);
        FormMatrix expected = zero_matrix(*w, s.module().index(), {x}, 1);
        const FormMatrix img = extend(ca, v);
        for (std::size_t i = 0; i < a.index().size(); ++i) {
            padded.at(i, 0) = v.at(i, 0);
            expected.at(i, 0) = img.at(i, 0);
        }
        CHECK(extend(s, padded) == expected);
    }
}

TEST_CASE("compression") {
    Random r(53);
    const Workspace ws = load_fixture("a2_universal");
    const ProjectiveModule& f = ws.modules.at("F");
    const ProjectiveModule& e = ws.modules.at("E");
    const Connection c = random_connection(r, ws.forms, f);
    const Connection same = compress_connection(c, f);
    CHECK(generator_matrix(same) == generator_matrix(c));

    const Connection zero = levi_civita(ws.forms, f);
    const Connection induced = compress_connection(zero, e);
    CHECK(generator_matrix(induced) == generator_matrix(levi_civita(ws.forms, e)));
}

TEST_CASE("Leibniz rule for every sample connection") {
    Random r(54);
    for (const Connection& c : sample_connections(r, 3)) {
        const DGCategory& w = c.forms();
        const std::size_t k = w.object_count();
        for (int trial = 0; trial < 4; ++trial) {
            const ObjectId x = r.index(k), y = r.index(k);
            // degree 0 against a morphism
            const FormMatrix m = fixed_column(r, c, 0, x);
            const FormMatrix f = single(w, r.form(w, 0, x, y));
            CHECK(extend(c, multiply(w, m, f)) ==
                  add(multiply(w, extend(c, m), f), multiply(w, m, differential(w, f))));
            // degree 1 against a 1-form: nabla(w z) = nabla(w) z - w dz
            const FormMatrix m1 = fixed_column(r, c, 1, x);
            const FormMatrix z = single(w, r.form(w, 1, x, y));
            CHECK(extend(c, multiply(w, m1, z)) ==
                  subtract(multiply(w, extend(c, m1), z), multiply(w, m1, differential(w, z))));
        }
    }
}

TEST_CASE("curvature: both methods agree and R is right linear") {
    Random r(55);
    for (const Connection& c : sample_connections(r, 3)) {
        const CurvatureData k = curvature(c);
        CHECK(k.gamma == k.gamma_formula);
        CHECK(iterated_curvature(c, 1) == k.gamma);
        const DGCategory& w = c.forms();
        const ObjectId x = r.index(w.object_count()), y = r.index(w.object_count());
        const FormMatrix m = fixed_column(r, c, 0, x);
        const FormMatrix z = single(w, r.form(w, 1, x, y));
        const FormMatrix rm = extend(c, extend(c, m));
        CHECK(extend(c, extend(c, multiply(w, m, z))) == multiply(w, rm, z));
    }
}

TEST_CASE("curvature powers") {
    Random r(56);
    for (const Connection& c : sample_connections(r, 5)) {
        const DGCategory& w = c.forms();
        CHECK(curvature_power(c, 2) == iterated_curvature(c, 2));
        CHECK(curvature_power(c, 2) == multiply(w, curvature(c).gamma, curvature(c).gamma));
    }
    const auto w = universal(fixtures::two_cycle(), 5);
    const Connection flat = free_connection(w, {0, 1}, zero_matrix(*w, {0, 1}, {0, 1}, 1));
    for (std::size_t q = 1; q <= 2; ++q) CHECK(is_zero(curvature_power(flat, q)));
}

TEST_CASE("truncation limits") {
    const auto w1 = universal(fixtures::dual_numbers(), 1);
    const Connection c = free_connection(w1, {0}, zero_matrix(*w1, {0}, {0}, 1));
    CHECK_THROWS_AS(curvature(c), truncation_error);
    CHECK_THROWS_AS(extend(c, zero_matrix(*w1, {0}, {0}, 1)), truncation_error);
    const auto w0 = std::make_shared<const DGCategory>(trivial_dg(fixtures::dual_numbers(), 0));
    CHECK_THROWS_AS(free_connection(w0, {0}, zero_matrix(*w0, {0}, {0}, 1)), truncation_error);
    const auto w3 = universal(fixtures::dual_numbers(), 3);
    const Connection c3 = free_connection(w3, {0}, zero_matrix(*w3, {0}, {0}, 1));
    CHECK_THROWS_AS(curvature_power(c3, 2), truncation_error);
}
