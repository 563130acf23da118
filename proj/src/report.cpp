#include "lincat/report.hpp"

#include <cctype>
#include <sstream>

#include "lincat/chern.hpp"
#include "lincat/derham.hpp"
#include "lincat/errors.hpp"
#include "lincat/workspace.hpp"

namespace lincat {

using nlohmann::ordered_json;

namespace {

ordered_json vector_json(const Vector& v) {
    ordered_json out = ordered_json::array();
    for (const auto& s : v) out.push_back(format_scalar(s));
    return out;
}

std::string vector_text(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_scalar(v[i]);
    return out + ")";
}

std::size_t require_q(const Request& r) {
    if (!r.q) throw input_error(r.command + " needs --q");
    return *r.q;
}

const ProjectiveModule& find_module(const Workspace& ws, const std::string& name) {
    if (name.empty()) throw input_error("--module is required");
    auto it = ws.modules.find(name);
    if (it == ws.modules.end()) throw input_error("no module named '" + name + "'");
    return it->second;
}

Connection find_connection(const Workspace& ws, const std::string& module, const std::string& name) {
    const ProjectiveModule& m = find_module(ws, module);
    if (name.empty() || (name == "LC" && !ws.connections.contains(name))) return levi_civita(ws.forms, m);
    auto it = ws.connections.find(name);
    if (it == ws.connections.end()) throw input_error("no connection named '" + name + "'");
    if (!(it->second.module() == m)) throw input_error("connection '" + name + "' does not live on module '" + module + "'");
    return it->second;
}

ordered_json cohomology_basis_json(const DeRhamComplex& complex, const Cohomology& h) {
    ordered_json out = ordered_json::array();
    for (const auto& b : h.basis) out.push_back(format_diagonal(complex.forms(), complex.representative(h.degree, b)));
    return out;
}

void run_validate(const Workspace& ws, Report& rep) {
    const DGCategory& w = *ws.forms;
    rep.results["valid"] = true;
    rep.results["objects"] = ws.category->object_count();
    rep.results["truncation"] = w.truncation();
    rep.results["modules"] = ws.modules.size();
    rep.results["connections"] = ws.connections.size();
    rep.results["endomorphisms"] = ws.endomorphisms.size();
    rep.text.push_back("valid: " + std::to_string(ws.category->object_count()) + " objects, truncation " +
                       std::to_string(w.truncation()) + ", " + std::to_string(ws.modules.size()) + " modules, " +
                       std::to_string(ws.connections.size()) + " connections, " +
                       std::to_string(ws.endomorphisms.size()) + " endomorphisms");
}

void run_cohomology(const Workspace& ws, const Request& r, Report& rep) {
    const DeRhamComplex complex = build_derham(ws.forms);
    const std::size_t N = complex.truncation();
    const std::size_t top = r.max_degree.value_or(N);
    if (top > N) {
        throw truncation_error("cohomology up to degree " + std::to_string(top) + " needs N >= " + std::to_string(top) +
                               " (have N = " + std::to_string(N) + ")");
    }
    ordered_json rows = ordered_json::array();
    rep.text.push_back("degree  dim Omega_ab  dim H");
    for (std::size_t n = 0; n <= top; ++n) {
        const Cohomology h = cohomology(complex, n);
        ordered_json row;
        row["degree"] = n;
        row["dim_omega_ab"] = complex.dim(n);
        row["dim_h"] = h.dim;
        row["truncation_unreliable"] = h.truncation_unreliable;
        row["basis"] = cohomology_basis_json(complex, h);
        rows.push_back(row);
        std::ostringstream line;
        line << n << "       " << complex.dim(n) << "             " << h.dim;
        if (h.truncation_unreliable) line << "  (degree N: unreliable)";
        if (!h.basis.empty()) {
            line << "  basis:";
            for (const auto& b : row["basis"]) line << " [" << b.get<std::string>() << "]";
        }
        rep.text.push_back(line.str());
    }
    rep.results["truncation"] = N;
    rep.results["degrees"] = rows;
}

void run_trace(const Workspace& ws, const Request& r, Report& rep) {
    const ProjectiveModule& m = find_module(ws, r.module);
    if (r.endo.empty()) throw input_error("--endo is required");
    auto it = ws.endomorphisms.find(r.endo);
    if (it == ws.endomorphisms.end()) throw input_error("no endomorphism named '" + r.endo + "'");
    if (!(find_module(ws, it->second.first) == m)) {
        throw input_error("endomorphism '" + r.endo + "' is not defined on module '" + r.module + "'");
    }
    const Vector tr = hs_trace(m, it->second.second);
    if (trace_through_evaluation(m, it->second.second) != tr) {
        throw certification_error("trace through evaluation disagrees with the diagonal trace");
    }
    const QuotientSpace ab = abelianization(*ws.category);
    const std::string rep_text = format_diagonal(*ws.forms, unflatten(*ws.forms, 0, ab.lift(tr)));
    rep.results["dim_c_ab"] = ab.dim();
    rep.results["coordinates"] = vector_json(tr);
    rep.results["representative"] = rep_text;
    rep.text.push_back("Tr(" + r.endo + ") = [" + rep_text + "] in C_ab, coordinates " + vector_text(tr));
}

ordered_json chern_json(const DeRhamComplex& complex, const ChernClass& c) {
    ordered_json out;
    out["q"] = c.q;
    out["representative"] = format_diagonal(complex.forms(), c.representative);
    out["form_class"] = vector_json(c.form_class);
    out["cohomology_dim"] = c.cohomology.dim;
    out["cohomology_basis"] = cohomology_basis_json(complex, c.cohomology);
    out["coordinates"] = vector_json(c.coordinates);
    out["zero_class"] = is_zero(c.coordinates);
    return out;
}

void chern_text(const ordered_json& j, Report& rep) {
    rep.text.push_back("representative: " + j["representative"].get<std::string>());
    std::string basis;
    for (const auto& b : j["cohomology_basis"]) basis += " [" + b.get<std::string>() + "]";
    rep.text.push_back("H^" + std::to_string(2 * j["q"].get<std::size_t>()) + " basis:" + (basis.empty() ? " (none)" : basis));
    std::string coords = "(";
    for (std::size_t i = 0; i < j["coordinates"].size(); ++i) {
        coords += (i ? ", " : "") + j["coordinates"][i].get<std::string>();
    }
    rep.text.push_back("class coordinates: " + coords + ")" + (j["zero_class"].get<bool>() ? "  zero class" : ""));
}

void run_chern(const Workspace& ws, const Request& r, Report& rep) {
    const std::size_t q = require_q(r);
    if (r.connections.size() > 1) throw input_error("chern takes at most one --connection");
    const std::string name = r.connections.empty() ? "LC" : r.connections[0];
    const Connection c = find_connection(ws, r.module, name);
    const DeRhamComplex complex = build_derham(ws.forms);
    const CocycleCertificate cert = certify_cocycle(c, q);
    const ChernClass cls = chern_class(complex, c, q);
    ordered_json j = chern_json(complex, cls);
    j["module"] = r.module;
    j["connection"] = name;
    j["d_omega"] = format_diagonal(*ws.forms, cert.d_omega);
    j["commutator_coefficients"] = vector_json(cert.coefficients);
    rep.results = j;
    rep.text.push_back("omega^" + std::to_string(q) + "(" + r.module + ", " + name + ")");
    chern_text(j, rep);
    rep.text.push_back("cocycle certificate: d omega = " + j["d_omega"].get<std::string>() + " lies in [Omega, Omega]");
}

void run_invariance(const Workspace& ws, const Request& r, Report& rep) {
    const std::size_t q = require_q(r);
    if (r.connections.size() != 2) throw input_error("invariance needs exactly two --connection options");
    const Connection a = find_connection(ws, r.module, r.connections[0]);
    const Connection b = find_connection(ws, r.module, r.connections[1]);
    const DeRhamComplex complex = build_derham(ws.forms);
    const InvarianceCertificate cert = invariance_certificate(complex, a, b, q);
    const DGCategory& w = *ws.forms;
    rep.results["module"] = r.module;
    rep.results["connections"] = r.connections;
    rep.results["q"] = q;
    rep.results["difference"] = format_diagonal(w, complex.representative(2 * q, cert.difference_class));
    rep.results["difference_class"] = vector_json(cert.difference_class);
    rep.results["eta"] = q == 0 ? std::string("0") : format_diagonal(w, complex.representative(2 * q - 1, cert.eta));
    rep.results["eta_class"] = vector_json(cert.eta);
    rep.results["epsilon_extension_checked"] = cert.tilde.has_value();
    rep.text.push_back("omega^" + std::to_string(q) + "(" + r.connections[0] + ") - omega^" + std::to_string(q) + "(" +
                       r.connections[1] + ") = " + rep.results["difference"].get<std::string>());
    rep.text.push_back("= d(" + rep.results["eta"].get<std::string>() + ") modulo graded commutators");
    if (cert.tilde) rep.text.push_back("epsilon-extension check: holds for both connections");
}

K0Element parse_element(const Workspace& ws, const std::string& expr) {
    K0Element z;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
    };
    bool first = true;
    while (true) {
        skip();
        if (i == expr.size()) break;
        long sign = 1;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw input_error("element: expected '+' or '-' at position " + std::to_string(i));
        }
        long coeff = 1;
        if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
            std::size_t used = 0;
            coeff = std::stol(expr.substr(i), &used);
            i += used;
            skip();
            if (i < expr.size() && expr[i] == '*') ++i;
            skip();
        }
        const std::size_t start = i;
        while (i < expr.size() && !std::isspace(static_cast<unsigned char>(expr[i])) && expr[i] != '+' && expr[i] != '-') ++i;
        const std::string name = expr.substr(start, i - start);
        if (name.empty()) throw input_error("element: missing module name at position " + std::to_string(start));
        z.terms.emplace_back(sign * coeff, find_module(ws, name));
        first = false;
    }
    if (z.terms.empty()) throw input_error("element: empty expression");
    return z;
}

void run_k0(const Workspace& ws, const Request& r, Report& rep) {
    const std::size_t q = require_q(r);
    if (r.element.empty()) throw input_error("--element is required");
    const K0Element z = parse_element(ws, r.element);
    const DeRhamComplex complex = build_derham(ws.forms);
    const ChernClass cls = k0_chern(complex, z, q);
    ordered_json j = chern_json(complex, cls);
    j["element"] = r.element;
    rep.results = j;
    rep.text.push_back("ch^" + std::to_string(q) + "(" + r.element + ") via Levi-Civita connections");
    chern_text(j, rep);
}

}  // namespace

std::string echo(const Request& r) {
    std::string out = r.command + " " + r.file;
    if (r.max_degree) out += " --max-degree " + std::to_string(*r.max_degree);
    if (!r.module.empty()) out += " --module " + r.module;
    if (!r.endo.empty()) out += " --endo " + r.endo;
    for (const auto& c : r.connections) out += " --connection " + c;
    if (!r.element.empty()) out += " --element \"" + r.element + "\"";
    if (r.q) out += " --q " + std::to_string(*r.q);
    return out;
}

Report run(const Request& r, const std::string& document) {
    Report rep;
    rep.command = echo(r);
    auto fail = [&](int code, const std::string& msg) {
        rep.exit_code = code;
        rep.results = ordered_json::object();
        rep.text.clear();
        rep.findings.push_back(msg);
    };
    try {
        const WorkspaceDescription d = parse_description(document);
        if (r.command == "validate") {
            rep.findings = validate_description(d);
            if (!rep.findings.empty()) {
                rep.exit_code = exit_invalid;
                rep.results["valid"] = false;
                return rep;
            }
        }
        const Workspace ws = build_workspace(d);
        if (r.command == "validate") {
            run_validate(ws, rep);
        } else if (r.command == "cohomology") {
            run_cohomology(ws, r, rep);
        } else if (r.command == "trace") {
            run_trace(ws, r, rep);
        } else if (r.command == "chern") {
            run_chern(ws, r, rep);
        } else if (r.command == "invariance") {
            run_invariance(ws, r, rep);
        } else if (r.command == "k0") {
            run_k0(ws, r, rep);
        } else {
            throw input_error("unknown command '" + r.command + "'");
        }
    } catch (const validation_error& e) {
        fail(exit_invalid, e.what());
        rep.findings.insert(rep.findings.end(), e.findings().begin(), e.findings().end());
    } catch (const truncation_error& e) {
        fail(exit_truncation, std::string("truncation: ") + e.what());
    } catch (const certification_error& e) {
        fail(exit_certification, std::string("certification failure: ") + e.what());
    } catch (const std::logic_error& e) {
        fail(exit_certification, std::string("internal error: ") + e.what());
    } catch (const std::exception& e) {
        fail(exit_invalid, e.what());
    }
    return rep;
}

std::string to_text(const Report& r) {
    std::string out = "$ lincat " + r.command + "\n";
    for (const auto& line : r.text) out += line + "\n";
    for (const auto& f : r.findings) out += "error: " + f + "\n";
    return out;
}

std::string to_machine(const Report& r) {
    ordered_json j;
    j["command"] = r.command;
    j["exit_code"] = r.exit_code;
    j["findings"] = r.findings;
    j["results"] = r.results;
    j["text"] = r.text;
    return j.dump(2) + "\n";
}

Report from_machine(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.findings = j.at("findings").get<std::vector<std::string>>();
    r.results = j.at("results");
    r.text = j.at("text").get<std::vector<std::string>>();
    return r;
}

}  // namespace lincat
