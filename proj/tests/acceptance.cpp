// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "lincat/chern.hpp"
#include "lincat/errors.hpp"
#include "lincat/report.hpp"
#include "support.hpp"

using namespace lincat;
using lincat::testing::load_fixture;
using lincat::testing::Random;
using lincat::testing::universal;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

const std::vector<std::string> valid_fixtures = {"point_universal", "point_trivial", "dual_numbers_universal",
                                                 "dual_numbers_trivial", "a2_universal", "a2_trivial",
                                                 "two_cycle_universal"};
const std::vector<std::string> universal_fixtures = {"point_universal", "dual_numbers_universal", "a2_universal",
                                                     "two_cycle_universal"};

std::pair<int, std::string> shell(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Connection random_connection(Random& r, const std::shared_ptr<const DGCategory>& w, const ProjectiveModule& m) {
    return Connection(w, m, r.form_matrix(*w, m.index(), m.index(), 1));
}

std::vector<ProjectiveModule> modules_of(const Workspace& ws) {
    std::vector<ProjectiveModule> out;
    for (const auto& [name, m] : ws.modules) out.push_back(m);
    return out;
}

bool has_kind(const std::vector<std::string>& findings, const std::string& kind) {
    for (const auto& f : findings)
        if (f.find(kind) != std::string::npos) return true;
    return false;
}

void axiom_suites(Outcome& o) {
    for (const auto& name : valid_fixtures) {
        const Workspace ws = load_fixture(name);
        o.expect(validate_category(*ws.category).empty(), name + " category");
        o.expect(validate_dg(*ws.forms).empty(), name + " dg");
    }
    const std::vector<std::pair<std::string, std::string>> broken = {{"broken_unit", "unit:"},
                                                                     {"broken_associativity", "associativity:"},
                                                                     {"broken_d2", "d^2:"},
                                                                     {"broken_leibniz", "leibniz:"},
                                                                     {"broken_idempotent", "e*e != e"}};
    for (const auto& [name, kind] : broken) {
        const auto f = validate_description(parse_description(read_file(lincat::testing::fixture_path(name))));
        o.expect(has_kind(f, kind), name + " not detected as " + kind);
    }
    o.detail << "7 fixtures clean, 5 corruptions detected";
}

void dual_basis(Outcome& o) {
    std::size_t count = 0;
    for (const auto& name : valid_fixtures) {
        const Workspace ws = load_fixture(name);
        std::vector<ProjectiveModule> ms = modules_of(ws);
        const std::size_t base = ms.size();
        for (std::size_t i = 0; i < base; ++i)
            for (std::size_t j = i; j < base && ms.size() < base + 4; ++j) ms.push_back(direct_sum(ms[i], ms[j]).sum);
        for (const ProjectiveModule& m : ms) {
            const DGCategory& w = m.algebra();
            const FormMatrix psi = gram_matrix(m);
            const FormMatrix one = identity_matrix(w, m.index());
            const FormMatrix pi = subtract(scale(psi, 2), one);
            o.expect(multiply(w, psi, psi) == psi, name + ": Psi^2 != Psi");
            o.expect(multiply(w, pi, pi) == one, name + ": Pi^2 != 1");
            for (ObjectId x = 0; x < ws.category->object_count(); ++x)
                for (const Vector& flat : m.component_basis(x)) {
                    const ModuleElement v = module_element(m, x, flat);
                    Vector sum = zero_vector(flat.size());
                    for (std::size_t i = 0; i < m.generator_count(); ++i) {
                        axpy(sum, 1, flatten_column(act(m, generator(m, i), pair(m, v, dual_generator(m, i))).column));
                    }
                    o.expect(sum == flat, name + ": sum m_i phi^i(v) != v");
                }
            ++count;
        }
    }
    o.detail << count << " projectives";
}

void trace_cyclicity(Outcome& o) {
    Random r(1003);
    std::size_t pairs = 0;
    for (const auto& name : valid_fixtures) {
        const Workspace ws = load_fixture(name);
        const std::vector<ProjectiveModule> ms = modules_of(ws);
        for (int trial = 0; trial < 20; ++trial) {
            const ProjectiveModule& a = ms[r.index(ms.size())];
            const ProjectiveModule& b = ms[r.index(ms.size())];
            const ModuleMorphism v = module_morphism(b, a, r.form_matrix(a.algebra(), a.index(), b.index(), 0));
            const ModuleMorphism w = module_morphism(a, b, r.form_matrix(a.algebra(), b.index(), a.index(), 0));
            o.expect(hs_trace(a, compose(a, v, w)) == hs_trace(b, compose(b, w, v)), name + ": Tr(vw) != Tr(wv)");
            ++pairs;
        }
    }
    o.expect(pairs >= 100, "fewer than 100 pairs");
    // the same summand presented by two idempotents, e2 = g e g^-1
    std::size_t presentations = 0;
    for (const auto& [name, first, second, g_entries, g_inv_entries] :
         {std::tuple{"dual_numbers_universal", "P", "P2", std::vector<Vector>{{1, 0}, {0, 1}, {0, 0}, {1, 0}},
                     std::vector<Vector>{{1, 0}, {0, -1}, {0, 0}, {1, 0}}},
          std::tuple{"a2_universal", "D", "E", std::vector<Vector>{{1}, {}, {1}, {1}},
                     std::vector<Vector>{{1}, {}, {-1}, {1}}}}) {
        const Workspace ws = load_fixture(name);
        const ProjectiveModule& m = ws.modules.at(first);
        const ProjectiveModule& m2 = ws.modules.at(second);
        const DGCategory& w = m.algebra();
        FormMatrix g = zero_matrix(w, m.index(), m.index(), 0), g_inv = g;
        g.entries = g_entries;
        g_inv.entries = g_inv_entries;
        o.expect(multiply(w, multiply(w, g, m.idempotent()), g_inv) == m2.idempotent(), "presentations not conjugate");
        for (int trial = 0; trial < 20; ++trial) {
            const ModuleMorphism u = module_morphism(m, m, r.form_matrix(w, m.index(), m.index(), 0));
            const ModuleMorphism u2 = module_morphism(m2, m2, multiply(w, multiply(w, g, u.matrix), g_inv));
            o.expect(hs_trace(m, u) == hs_trace(m2, u2), std::string(name) + ": trace depends on presentation");
        }
        ++presentations;
    }
    o.detail << pairs << " random pairs, " << presentations << " presentation pairs";
}

void curvature_agreement(Outcome& o) {
    std::size_t connections = 0;
    for (const auto& name : universal_fixtures) {
        const Workspace ws = load_fixture(name);
        std::vector<Connection> cs;
        for (const auto& [label, c] : ws.connections) cs.push_back(c);
        for (const auto& [label, m] : ws.modules) cs.push_back(levi_civita(ws.forms, m));
        for (const Connection& c : cs) {
            const CurvatureData k = curvature(c);
            o.expect(k.gamma == k.gamma_formula, name + ": Gamma methods differ");
            o.expect(iterated_curvature(c, 1) == k.gamma, name + ": Gamma != nabla^1 nabla^0");
            if (ws.forms->truncation() >= 4) {
                o.expect(curvature_power(c, 2) == iterated_curvature(c, 2), name + ": Gamma^2 != R^2");
            }
            ++connections;
        }
    }
    Random r(1004);
    for (const auto& c : {fixtures::dual_numbers(), fixtures::a2_path(), fixtures::two_cycle()}) {
        const auto w = universal(c, 7);
        const std::vector<ObjectId> index = c->object_count() == 1 ? std::vector<ObjectId>{0, 0} : std::vector<ObjectId>{0, 1, 0};
        for (int trial = 0; trial < 3; ++trial) {
            const Connection conn = free_connection(w, index, r.form_matrix(*w, index, index, 1));
            o.expect(curvature_power(conn, 2) == iterated_curvature(conn, 2), "q = 2 power != iterated");
            const FormMatrix& lambda = conn.lambda();
            const FormMatrix gamma = add(differential(*w, lambda), multiply(*w, lambda, lambda));
            for (std::size_t q = 1; q <= 3; ++q) {
                const FormMatrix gq = power(*w, gamma, q);
                o.expect(differential(*w, gq) == subtract(multiply(*w, gq, lambda), multiply(*w, lambda, gq)),
                         "d(Gamma^q) != Gamma^q Lambda - Lambda Gamma^q");
            }
            ++connections;
        }
    }
    o.detail << connections << " connections";
}

void cocycles(Outcome& o) {
    Random r(1005);
    std::size_t certified = 0;
    for (const auto& name : universal_fixtures) {
        const Workspace ws = load_fixture(name);
        const std::vector<ProjectiveModule> ms = modules_of(ws);
        for (std::size_t q = 1; q <= 2; ++q) {
            const auto w = universal(ws.category, 2 * q + 1);
            for (int trial = 0; trial < 10; ++trial) {
                const Connection c = random_connection(r, w, ms[trial % ms.size()]);
                const CocycleCertificate cert = certify_cocycle(c, q);
                Vector sum = zero_vector(flatten(*w, cert.d_omega).size());
                for (std::size_t k = 0; k < cert.spanning_set.size(); ++k) axpy(sum, cert.coefficients[k], cert.spanning_set[k]);
                o.expect(sum == flatten(*w, cert.d_omega), name + ": certificate does not reproduce d omega");
                ++certified;
            }
        }
    }
    o.detail << certified << " certificates";
}

void independence(Outcome& o) {
    Random r(1006);
    std::size_t pairs = 0, mechanisms = 0;
    for (const auto& name : universal_fixtures) {
        const Workspace ws = load_fixture(name);
        const DeRhamComplex complex = build_derham(ws.forms);
        const std::size_t top_q = (ws.forms->truncation() - 1) / 2;
        for (const auto& [label, m] : ws.modules) {
            for (int trial = 0; trial < 5; ++trial) {
                const Connection a = random_connection(r, ws.forms, m);
                const Connection b = random_connection(r, ws.forms, m);
                for (std::size_t q = 1; q <= top_q; ++q) {
                    const InvarianceCertificate cert = invariance_certificate(complex, a, b, q);
                    o.expect(complex.differential(2 * q - 1).apply(cert.eta) == cert.difference_class,
                             name + ": d eta != difference");
                    if (m.is_free()) {
                        for (const Connection* c : {&a, &b}) {
                            const TildeMechanism t = tilde_mechanism(complex, *c, q);
                            o.expect(t.holds(), name + ": ev_1 - ev_0 != <Tr((d Lambda + Lambda^2)^q)>");
                            ++mechanisms;
                        }
                    }
                }
                ++pairs;
            }
        }
    }
    o.detail << pairs << " connection pairs, " << mechanisms << " epsilon-extension checks";
}

void homotopy(Outcome& o) {
    Random r(1007);
    std::size_t cochains = 0, splittings = 0;
    for (const auto& name : universal_fixtures) {
        const Workspace ws = load_fixture(name);
        const DeRhamComplex complex = build_derham(ws.forms);
        const std::size_t N = ws.forms->truncation();
        for (std::size_t q = 1; 2 * q + 1 <= N; ++q) {
            const std::size_t D = 2 * q;
            for (int trial = 0; trial < 20; ++trial) {
                const std::size_t n = r.index(N);
                TildeCochain c = zero_tilde_cochain(complex, n, D);
                for (auto& v : c.omega0) v = r.vector(v.size());
                for (auto& v : c.omega1) v = r.vector(v.size());
                const TildeCochain dc = tilde_differential(complex, c);
                Vector rhs = subtract(ev_at(complex, 1, c), ev_at(complex, 0, c));
                if (n > 0) rhs = subtract(rhs, complex.differential(n - 1).apply(homotopy_k(complex, c)));
                o.expect(homotopy_k(complex, dc) == rhs, name + ": k delta != -d k + ev_1 - ev_0");
                for (int a : {0, 1, -1, 2}) {
                    o.expect(ev_at(complex, a, dc) == complex.differential(n).apply(ev_at(complex, a, c)),
                             name + ": ev_a is not a chain map");
                }
                ++cochains;
            }
            for (std::size_t n = 0; n <= N; ++n) {
                o.expect(splitting_check(*ws.forms, n, D).holds(), name + ": splitting dimensions differ");
                ++splittings;
            }
        }
    }
    o.detail << cochains << " tilde cochains, " << splittings << " splitting checks";
}

void k0_morphism(Outcome& o) {
    Random r(1008);
    std::size_t relations = 0;
    for (const auto& name : universal_fixtures) {
        const Workspace ws = load_fixture(name);
        const DeRhamComplex complex = build_derham(ws.forms);
        const std::vector<ProjectiveModule> ms = modules_of(ws);
        const std::size_t top_q = (ws.forms->truncation() - 1) / 2;
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = 0; j < ms.size(); ++j) {
                const Connection a = random_connection(r, ws.forms, ms[i]);
                const Connection b = random_connection(r, ws.forms, ms[j]);
                const Connection s = direct_sum_connection(a, b);
                for (std::size_t q = 0; q <= top_q; ++q) {
                    DiagonalForm sum = chern_cochain(a, q);
                    const DiagonalForm rb = chern_cochain(b, q);
                    for (std::size_t x = 0; x < sum.components.size(); ++x) axpy(sum.components[x], 1, rb.components[x]);
                    o.expect(chern_cochain(s, q) == sum, name + ": omega^q not additive");
                    const K0Element rel{{{1, ms[i]}, {1, ms[j]}, {-1, s.module()}}};
                    o.expect(is_zero(k0_chern(complex, rel, q).coordinates), name + ": relation has nonzero class");
                    if (q >= 1 && ms[i].is_free()) {
                        o.expect(is_zero(chern_class(complex, a, q).coordinates), name + ": free class nonzero");
                    }
                }
                ++relations;
            }
    }
    o.detail << relations << " relation elements";
}

void tensor_models(Outcome& o) {
    std::size_t checks = 0;
    for (const auto& name : valid_fixtures) {
        const Workspace ws = load_fixture(name);
        for (const auto& [label, m] : ws.modules)
            for (std::size_t n = 0; n <= ws.forms->truncation() && n <= 3; ++n)
                for (ObjectId x = 0; x < ws.category->object_count(); ++x) {
                    const TensorComparison t = compare_tensor_models(m, *ws.forms, n, x);
                    o.expect(t.literal_dim == t.model_dim && t.well_defined && t.isomorphism,
                             name + "/" + label + ": tensor models differ");
                    ++checks;
                }
    }
    o.detail << checks << " (module, degree, object) triples";
}

void end_to_end(Outcome& o) {
    const auto [code, text] = shell(std::string(LINCAT_BINARY) + " chern " +
                                    lincat::testing::fixture_path("dual_numbers_universal") +
                                    " --module F --connection Ldu --q 1");
    o.expect(code == 0, "lincat chern exit code " + std::to_string(code));
    o.expect(text.find("representative: du·du") != std::string::npos, "representative is not du·du");
    o.expect(text.find("zero class") != std::string::npos, "class is not zero");
    const auto start = std::chrono::steady_clock::now();
    for (const char* t : {"test_linalg", "test_category", "test_dg", "test_module", "test_connection", "test_derham",
                          "test_chern", "test_workspace", "test_cli"}) {
        const auto [tc, out] = shell(std::string(LINCAT_TEST_DIR) + "/" + t);
        o.expect(tc == 0, std::string(t) + " failed");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs < 60, "unit suites took " + std::to_string(secs) + " s");
    o.detail << "lincat chern reports du·du with zero class; unit suites in " << secs << " s";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"axiom suites", axiom_suites},
        {"dual basis and Psi, Pi identities", dual_basis},
        {"trace cyclicity and presentation independence", trace_cyclicity},
        {"curvature agreement", curvature_agreement},
        {"cocycle certificates", cocycles},
        {"connection independence", independence},
        {"homotopy identity and splitting", homotopy},
        {"K_0 morphism", k0_morphism},
        {"tensor model equivalence", tensor_models},
        {"end to end", end_to_end},
    };
    int failures = 0;
    double total = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        total += secs;
        if (i == 0 && secs >= 5) o.expect(false, "runtime >= 5 s");
        std::printf("criterion %2zu %s  %-48s %8.3f s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    secs, o.detail.str().c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed in %.3f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(), total);
    return failures == 0 ? 0 : 1;
}
