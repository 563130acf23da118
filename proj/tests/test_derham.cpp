#include <doctest.h>

#include "lincat/derham.hpp"
#include "lincat/errors.hpp"
#include "support.hpp"

using namespace lincat;
using lincat::testing::load_fixture;
using lincat::testing::named_form;
using lincat::testing::Random;
using lincat::testing::universal;

namespace {

TildeCochain random_cochain(Random& r, const DeRhamComplex& complex, std::size_t n, std::size_t D) {
    TildeCochain c = zero_tilde_cochain(complex, n, D);
    for (auto& v : c.omega0) v = r.vector(v.size());
    for (auto& v : c.omega1) v = r.vector(v.size());
    return c;
}

DiagonalForm diagonal_d(const DGCategory& w, const DiagonalForm& f) {
    DiagonalForm out = zero_diagonal(w, f.degree + 1);
    for (ObjectId x = 0; x < w.object_count(); ++x) out.components[x] = w.differential(f.degree, x, x).apply(f.components[x]);
    return out;
}

std::vector<std::shared_ptr<const DGCategory>> complexes() {
    return {universal(fixtures::point(), 3), universal(fixtures::dual_numbers(), 4), universal(fixtures::a2_path(), 3),
            universal(fixtures::two_cycle(), 5),
            std::make_shared<const DGCategory>(trivial_dg(fixtures::dual_numbers(), 2)),
            std::make_shared<const DGCategory>(trivial_dg(fixtures::a2_path(), 2))};
}

}  // namespace

TEST_CASE("graded commutator subspaces") {
    for (const auto& v : commutator_spanning_set(trivial_dg(fixtures::dual_numbers(), 0), 0)) CHECK(is_zero(v));
    for (const auto& v : commutator_spanning_set(trivial_dg(fixtures::a2_path(), 0), 0)) CHECK(is_zero(v));

    const auto w = universal(fixtures::dual_numbers(), 3);
    const Form du = named_form(*w, 1, "du");
    const DiagonalForm bracket = graded_commutator(*w, du, du);
    CHECK(bracket == to_diagonal(*w, scale_form(compose_forms(*w, du, du), 2)));
    const DeRhamComplex complex = build_derham(w);
    CHECK(is_zero(complex.class_of(to_diagonal(*w, compose_forms(*w, du, du)))));
}

TEST_CASE("trivial DG cohomology") {
    const DeRhamComplex q = build_derham(std::make_shared<const DGCategory>(trivial_dg(fixtures::point(), 1)));
    CHECK(q.dim(0) == 1);
    CHECK(q.dim(1) == 0);
    CHECK(cohomology(q, 0).dim == 1);
    const DeRhamComplex a = build_derham(std::make_shared<const DGCategory>(trivial_dg(fixtures::a2_path(), 2)));
    CHECK(cohomology(a, 0).dim == 2);
    CHECK(cohomology(a, 1).dim == 0);
    CHECK(cohomology(a, 2).dim == 0);
}

TEST_CASE("dual numbers de Rham dimensions") {
    const DeRhamComplex complex = build_derham(universal(fixtures::dual_numbers(), 2));
    CHECK(complex.dim(0) == 2);
    CHECK(complex.dim(1) == 1);
    CHECK(complex.dim(2) == 1);
    CHECK(cohomology(complex, 0).dim == 1);
    CHECK(cohomology(complex, 1).dim == 0);
    CHECK((complex.differential(1) * complex.differential(0)).is_zero());
}

TEST_CASE("d_ab^2 = 0, Euler characteristic and rank oracle") {
    for (const auto& w : complexes()) {
        const DeRhamComplex complex = build_derham(w);
        const std::size_t N = complex.truncation();
        long chi_cochains = 0, chi_cohomology = 0;
        for (std::size_t n = 0; n <= N; ++n) {
            if (n + 1 <= N) CHECK((complex.differential(n + 1) * complex.differential(n)).is_zero());
            const Cohomology h = cohomology(complex, n);
            const std::size_t kernel = complex.dim(n) - rref(complex.differential(n)).rank;
            const std::size_t image = n == 0 ? 0 : rref(complex.differential(n - 1)).rank;
            CHECK(h.dim == kernel - image);
            CHECK(h.truncation_unreliable == (n == N));
            const long sign = n % 2 ? -1 : 1;
            chi_cochains += sign * static_cast<long>(complex.dim(n));
            chi_cohomology += sign * static_cast<long>(h.dim);
        }
        CHECK(chi_cochains == chi_cohomology);
    }
}

TEST_CASE("d maps commutators to commutators") {
    for (const auto& w : complexes()) {
        const DeRhamComplex complex = build_derham(w);
        for (std::size_t n = 0; n < w->truncation(); ++n)
            for (const Vector& s : commutator_spanning_set(*w, n)) {
                const DiagonalForm image = diagonal_d(*w, unflatten(*w, n, s));
                CHECK(complex.quotient(n + 1).contains(flatten(*w, image)));
            }
    }
}

TEST_CASE("graded symmetry of classes") {
    Random r(61);
    for (const auto& w : complexes()) {
        const DeRhamComplex complex = build_derham(w);
        const std::size_t k = w->object_count();
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t p = r.index(2), q = r.index(2);
            const ObjectId x = r.index(k), y = r.index(k);
            const Form a = r.form(*w, p, x, y), b = r.form(*w, q, y, x);
            const Vector ab = complex.class_of(to_diagonal(*w, compose_forms(*w, a, b)));
            const Vector ba = complex.class_of(to_diagonal(*w, compose_forms(*w, b, a)));
            CHECK(ab == scaled(ba, (p * q) % 2 ? -1 : 1));
        }
    }
}

TEST_CASE("coboundary detection") {
    Random r(62);
    for (const auto& w : complexes()) {
        const DeRhamComplex complex = build_derham(w);
        for (std::size_t n = 1; n <= w->truncation(); ++n) {
            // a graded commutator has zero class
            for (const Vector& s : commutator_spanning_set(*w, n)) {
                const auto eta = is_coboundary(complex, unflatten(*w, n, s));
                REQUIRE(eta.has_value());
                CHECK(is_zero(complex.differential(n - 1).apply(*eta)));
            }
            // d of anything is a coboundary
            const Vector psi = r.vector(complex.dim(n - 1));
            const Vector phi = complex.differential(n - 1).apply(psi);
            const auto eta = is_coboundary(complex, n, phi);
            REQUIRE(eta.has_value());
            CHECK(complex.differential(n - 1).apply(*eta) == phi);
            // cohomology representatives are not
            for (const Vector& b : cohomology(complex, n).basis) CHECK_FALSE(is_coboundary(complex, n, b).has_value());
        }
    }
    const DeRhamComplex top = build_derham(universal(fixtures::two_cycle(), 5));
    CHECK(cohomology(top, 5).dim == 1);
}

TEST_CASE("epsilon extension cochains") {
    Random r(63);
    for (const auto& w : complexes()) {
        const DeRhamComplex complex = build_derham(w);
        const std::size_t N = w->truncation();
        for (std::size_t D : {0, 2, 4}) {
            for (int trial = 0; trial < 20; ++trial) {
                const std::size_t n = r.index(N);  // n + 1 <= N
                const TildeCochain c = random_cochain(r, complex, n, D);
                const TildeCochain dc = tilde_differential(complex, c);
                if (n + 2 <= N) CHECK(tilde_differential(complex, dc) == zero_tilde_cochain(complex, n + 2, D));
                for (int a : {0, 1, -1, 2}) {
                    CHECK(ev_at(complex, a, dc) == complex.differential(n).apply(ev_at(complex, a, c)));
                }
                // k delta = -d k + ev_1 - ev_0
                Vector rhs = subtract(ev_at(complex, 1, c), ev_at(complex, 0, c));
                if (n > 0) rhs = subtract(rhs, complex.differential(n - 1).apply(homotopy_k(complex, c)));
                CHECK(homotopy_k(complex, dc) == rhs);
                if (D == 0) {
                    CHECK(dc.omega0[0] == complex.differential(n).apply(c.omega0[0]));
                    if (n > 0) CHECK(dc.omega1[0] == complex.differential(n - 1).apply(c.omega1[0]));
                }
            }
        }
    }
}

TEST_CASE("homotopy operator examples") {
    const auto w = universal(fixtures::dual_numbers(), 3);
    const DeRhamComplex complex = build_derham(w);
    Random r(64);
    for (std::size_t n = 1; n <= 3; ++n) {
        TildeCochain c = zero_tilde_cochain(complex, n, 2);
        CHECK(is_zero(homotopy_k(complex, c)));
        const Vector zeta = r.vector(complex.dim(n - 1));
        c.omega1[1] = zeta;
        CHECK(homotopy_k(complex, c) == scaled(zeta, Scalar(n % 2 ? -1 : 1, 2)));
    }
    TildeCochain c = zero_tilde_cochain(complex, 1, 3);
    for (auto& v : c.omega0) v = r.vector(v.size());
    CHECK(ev_at(complex, 0, c) == c.omega0[0]);
}

TEST_CASE("splitting dimensions of the epsilon extension") {
    for (const auto& w : complexes()) {
        for (std::size_t D : {2, 4})
            for (std::size_t n = 0; n <= std::min<std::size_t>(w->truncation(), 4); ++n) {
                const SplittingCheck s = splitting_check(*w, n, D);
                CAPTURE(n);
                CHECK(s.holds());
            }
    }
}
