#include "lincat/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lincat/errors.hpp"

namespace lincat {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Schema-level parsing

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw input_error(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw input_error(where + ": missing key '" + key + "'");
    return *it;
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw input_error(where + ": expected a string");
    return v.get<std::string>();
}

Scalar as_scalar(const json& v, const std::string& where) {
    if (!v.is_string()) throw input_error(where + ": scalars must be strings such as \"3\" or \"-1/2\"");
    try {
        return parse_scalar(v.get<std::string>());
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned()) throw input_error(where + ": expected a nonnegative integer");
    return v.get<std::size_t>();
}

const json& as_array(const json& v, const std::string& where) {
    if (!v.is_array()) throw input_error(where + ": expected an array");
    return v;
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
    std::vector<std::string> out;
    const json& arr = as_array(v, where);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_string(arr[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

LabelCombination combination(const json& v, const std::string& where) {
    if (!v.is_object()) throw input_error(where + ": expected an object mapping labels to scalars");
    LabelCombination out;
    for (auto it = v.begin(); it != v.end(); ++it) {
        const Scalar s = as_scalar(it.value(), where + "." + it.key());
        if (sgn(s) != 0) out[it.key()] = s;
    }
    return out;
}

LabelMatrix label_matrix(const json& v, const std::string& where) {
    LabelMatrix out;
    const json& rows = as_array(v, where);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rw = where + "[" + std::to_string(i) + "]";
        std::vector<LabelCombination> row;
        const json& entries = as_array(rows[i], rw);
        for (std::size_t j = 0; j < entries.size(); ++j) row.push_back(combination(entries[j], rw + "[" + std::to_string(j) + "]"));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<ProductEntry> products(const json& v, const std::string& where) {
    std::vector<ProductEntry> out;
    const json& arr = as_array(v, where);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        const json& e = as_array(arr[i], w);
        if (e.size() != 4) throw input_error(w + ": expected [left, right, result, coefficient]");
        out.push_back({as_string(e[0], w), as_string(e[1], w), as_string(e[2], w), as_scalar(e[3], w)});
    }
    return out;
}

std::string optional_string(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    return it == obj.end() ? std::string() : as_string(*it, where + "." + key);
}

ordered_json scalar_json(const Scalar& s) { return format_scalar(s); }

ordered_json combination_json(const LabelCombination& c) {
    ordered_json out = ordered_json::object();
    for (const auto& [label, s] : c) out[label] = scalar_json(s);
    return out;
}

ordered_json matrix_json(const LabelMatrix& m) {
    ordered_json out = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(combination_json(e));
        out.push_back(r);
    }
    return out;
}

ordered_json products_json(const std::vector<ProductEntry>& ps) {
    ordered_json out = ordered_json::array();
    for (const auto& p : ps) out.push_back({p.left, p.right, p.result, format_scalar(p.coeff)});
    return out;
}

// ---------------------------------------------------------------------------
// Semantic construction

struct LabelRef {
    std::size_t degree;
    ObjectId cod;
    ObjectId dom;
    std::size_t index;
};

class Builder {
public:
    explicit Builder(const WorkspaceDescription& d) : d_(d) { ws_.description = d; }

    void run() {
        if (d_.field != "Q") finding("field: only \"Q\" is supported");
        if (!attempt("category", [&] { build_category(); })) return;
        if (!attempt("dg", [&] { build_forms(); })) return;
        for (const auto& m : d_.modules) attempt("module '" + m.name + "'", [&] { build_module(m); });
        for (const auto& c : d_.connections) attempt("connection '" + c.name + "'", [&] { build_connection(c); });
        for (const auto& e : d_.endomorphisms) attempt("endomorphism '" + e.name + "'", [&] { build_endomorphism(e); });
    }

    std::vector<std::string> findings;
    Workspace ws_;

private:
    void finding(const std::string& s) { findings.push_back(s); }

    template <class F>
    bool attempt(const std::string& where, F&& f) {
        const std::size_t before = findings.size();
        try {
            f();
        } catch (const validation_error& e) {
            for (const auto& x : e.findings()) finding(where + ": " + x);
        } catch (const std::exception& e) {
            finding(where + ": " + e.what());
        }
        return findings.size() == before;
    }

    ObjectId object(const std::string& label) const {
        auto x = ws_.category->find_object(label);
        if (!x) throw input_error("unknown object '" + label + "'");
        return *x;
    }

    void build_category() {
        const CategoryDescription& c = d_.category;
        CategoryBuilder b;
        for (const auto& o : c.objects) b.add_object(o);
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& h : c.homs) {
            if (!seen.insert({h.cod, h.dom}).second) {
                throw input_error("hom space " + h.dom + " -> " + h.cod + " is listed twice");
            }
            for (const auto& label : h.basis) b.add_arrow(h.cod, h.dom, label);
        }
        for (const auto& p : c.composition) b.set_composite(p.left, p.right, p.result, p.coeff);
        for (const auto& [obj, coords] : c.identities) b.set_identity(obj, coords);
        ws_.category = std::make_shared<const Category>(b.build());
        std::vector<std::string> v;
        for (const auto& violation : validate_category(*ws_.category)) v.push_back(violation.kind + ": " + violation.detail);
        if (!v.empty()) throw validation_error("category axioms fail", v);
    }

    void build_forms() {
        const DGDescription& g = d_.dg;
        if (g.mode == "universal") {
            ws_.forms = std::make_shared<const DGCategory>(universal_dg(ws_.category, g.truncation));
        } else if (g.mode == "trivial") {
            ws_.forms = std::make_shared<const DGCategory>(trivial_dg(ws_.category, g.truncation));
        } else if (g.mode == "explicit") {
            ws_.forms = std::make_shared<const DGCategory>(ws_.category, explicit_tables());
        } else {
            throw input_error("unknown mode '" + g.mode + "' (expected universal, trivial or explicit)");
        }
        std::vector<std::string> v;
        for (const auto& violation : validate_dg(*ws_.forms)) v.push_back(violation.kind + ": " + violation.detail);
        if (!v.empty()) throw validation_error("DG axioms fail", v);
    }

    DGTables explicit_tables() {
        const DGDescription& g = d_.dg;
        const Category& c = *ws_.category;
        const std::size_t k = c.object_count();
        const std::size_t N = g.truncation;
        DGTables t;
        t.truncation = N;
        t.labels.assign(N + 1, std::vector<std::vector<std::vector<std::string>>>(k, std::vector<std::vector<std::string>>(k)));
        std::map<std::string, LabelRef> refs;
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y) {
                t.labels[0][x][y] = c.hom_basis(x, y);
                for (std::size_t i = 0; i < c.dim(x, y); ++i) refs[c.hom_basis(x, y)[i]] = {0, x, y, i};
            }
        for (const auto& f : g.forms) {
            if (f.degree == 0 || f.degree > N) {
                throw input_error("forms of degree " + std::to_string(f.degree) + " must have degree 1.." + std::to_string(N));
            }
            const ObjectId x = object(f.cod);
            const ObjectId y = object(f.dom);
            auto& ls = t.labels[f.degree][x][y];
            if (!ls.empty()) throw input_error("forms of degree " + std::to_string(f.degree) + " " + f.dom + " -> " + f.cod + " listed twice");
            for (const auto& label : f.basis) {
                if (refs.contains(label)) throw input_error("duplicate label '" + label + "'");
                refs[label] = {f.degree, x, y, ls.size()};
                ls.push_back(label);
            }
        }
        auto lookup = [&](const std::string& label) {
            auto it = refs.find(label);
            if (it == refs.end()) throw input_error("unknown form label '" + label + "'");
            return it->second;
        };
        auto dim = [&](std::size_t n, ObjectId x, ObjectId y) { return t.labels[n][x][y].size(); };

        t.composition.assign(N + 1, std::vector<std::vector<BilinearTable>>(N + 1));
        for (std::size_t p = 0; p <= N; ++p)
            for (std::size_t q = 0; p + q <= N; ++q)
                for (ObjectId x = 0; x < k; ++x)
                    for (ObjectId y = 0; y < k; ++y)
                        for (ObjectId z = 0; z < k; ++z) {
                            if (p == 0 && q == 0) {
                                t.composition[0][0].push_back(c.composition(x, y, z));
                            } else {
                                t.composition[p][q].emplace_back(dim(p, x, y), dim(q, y, z), dim(p + q, x, z));
                            }
                        }
        auto table = [&](std::size_t p, std::size_t q, ObjectId x, ObjectId y, ObjectId z) -> BilinearTable& {
            return t.composition[p][q][(x * k + y) * k + z];
        };
        std::set<std::pair<std::string, std::string>> stated;
        for (const auto& e : g.composition) {
            const LabelRef l = lookup(e.left), r = lookup(e.right), o = lookup(e.result);
            if (l.degree == 0 && r.degree == 0) throw input_error("degree-0 composites belong to the category: " + e.left + " o " + e.right);
            if (l.dom != r.cod) throw composition_error("composite " + e.left + " . " + e.right + " is not composable");
            if (o.cod != l.cod || o.dom != r.dom || o.degree != l.degree + r.degree) {
                throw input_error("composite " + e.left + " . " + e.right + " cannot equal '" + e.result + "'");
            }
            table(l.degree, r.degree, l.cod, l.dom, r.dom).add(l.index, r.index, o.index, e.coeff);
            stated.insert({e.left, e.right});
        }
        // implicit units
        for (ObjectId z = 0; z < k; ++z) {
            const Vector& id = c.identity(z);
            std::optional<std::size_t> unit;
            for (std::size_t i = 0; i < id.size(); ++i) {
                if (sgn(id[i]) == 0) continue;
                if (unit || id[i] != 1) {
                    unit.reset();
                    break;
                }
                unit = i;
            }
            if (!unit) continue;
            const std::string& u = c.hom_basis(z, z)[*unit];
            for (std::size_t n = 1; n <= N; ++n)
                for (ObjectId y = 0; y < k; ++y) {
                    for (std::size_t b = 0; b < dim(n, z, y); ++b) {
                        if (!stated.contains({u, t.labels[n][z][y][b]})) table(0, n, z, z, y).add(*unit, b, b, 1);
                    }
                    for (std::size_t b = 0; b < dim(n, y, z); ++b) {
                        if (!stated.contains({t.labels[n][y][z][b], u})) table(n, 0, y, z, z).add(b, *unit, b, 1);
                    }
                }
        }

        t.differential.assign(N, {});
        for (std::size_t n = 0; n < N; ++n)
            for (ObjectId x = 0; x < k; ++x)
                for (ObjectId y = 0; y < k; ++y) t.differential[n].emplace_back(dim(n + 1, x, y), dim(n, x, y));
        for (const auto& e : g.differential) {
            const LabelRef s = lookup(e.source), o = lookup(e.target);
            if (o.degree != s.degree + 1 || o.cod != s.cod || o.dom != s.dom) {
                throw input_error("d(" + e.source + ") cannot involve '" + e.target + "'");
            }
            if (s.degree >= N) throw input_error("d out of the top degree is zero; drop the entry for '" + e.source + "'");
            t.differential[s.degree][s.cod * k + s.dom](o.index, s.index) += e.coeff;
        }
        return t;
    }

    std::vector<ObjectId> objects(const std::vector<std::string>& labels) const {
        std::vector<ObjectId> out;
        for (const auto& l : labels) out.push_back(object(l));
        return out;
    }

    const ProjectiveModule& module(const std::string& name) const {
        auto it = ws_.modules.find(name);
        if (it == ws_.modules.end()) throw input_error("dangling reference to module '" + name + "'");
        return it->second;
    }

    const Connection& connection(const std::string& name) const {
        auto it = ws_.connections.find(name);
        if (it == ws_.connections.end()) throw input_error("dangling reference to connection '" + name + "'");
        return it->second;
    }

    void check_new_name(const std::string& name) {
        if (name.empty()) throw input_error("missing name");
        if (!names_.insert(name).second) throw input_error("duplicate name '" + name + "'");
    }

    void build_module(const ModuleDescription& m) {
        check_new_name(m.name);
        if (m.kind == "free") {
            ws_.modules.emplace(m.name, as_projective(free_module(ws_.category, objects(m.index))));
        } else if (m.kind == "idempotent") {
            const std::vector<ObjectId> idx = objects(m.index);
            const FormMatrix e = resolve_matrix(*ws_.forms, idx, idx, 0, m.idempotent, "idempotent");
            ws_.modules.emplace(m.name, module_from_idempotent(ws_.category, idx, e));
        } else if (m.kind == "direct_sum") {
            if (m.summands.size() != 2) throw input_error("a direct sum needs exactly two summands");
            ws_.modules.emplace(m.name, direct_sum(module(m.summands[0]), module(m.summands[1])).sum);
        } else {
            throw input_error("unknown kind '" + m.kind + "' (expected free, idempotent or direct_sum)");
        }
    }

    void build_connection(const ConnectionDescription& c) {
        check_new_name(c.name);
        auto store = [&](Connection conn) {
            if (!c.module.empty() && !(conn.module() == module(c.module))) {
                throw input_error("connection does not live on module '" + c.module + "'");
            }
            ws_.connections.emplace(c.name, std::move(conn));
        };
        if (c.kind == "matrix") {
            const ProjectiveModule& m = module(c.module);
            store(Connection(ws_.forms, m, resolve_matrix(*ws_.forms, m.index(), m.index(), 1, c.matrix, "matrix")));
        } else if (c.kind == "levi_civita") {
            store(levi_civita(ws_.forms, module(c.module)));
        } else if (c.kind == "direct_sum") {
            if (c.parts.size() != 2) throw input_error("a direct sum needs exactly two parts");
            store(direct_sum_connection(connection(c.parts[0]), connection(c.parts[1])));
        } else if (c.kind == "compress") {
            store(compress_connection(connection(c.source), module(c.module)));
        } else {
            throw input_error("unknown kind '" + c.kind + "' (expected matrix, levi_civita, direct_sum or compress)");
        }
    }

    void build_endomorphism(const EndomorphismDescription& e) {
        check_new_name(e.name);
        const ProjectiveModule& m = module(e.module);
        const FormMatrix u = resolve_matrix(*ws_.forms, m.index(), m.index(), 0, e.matrix, "matrix");
        ws_.endomorphisms.emplace(e.name, std::make_pair(e.module, module_morphism(m, m, u)));
    }

    const WorkspaceDescription& d_;
    std::set<std::string> names_;
};

}  // namespace

FormMatrix resolve_matrix(const DGCategory& w, const std::vector<ObjectId>& rows, const std::vector<ObjectId>& cols,
                          std::size_t n, const LabelMatrix& m, const std::string& where) {
    if (m.size() != rows.size()) throw input_error(where + ": expected " + std::to_string(rows.size()) + " rows");
    FormMatrix out = zero_matrix(w, rows, cols, n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (m[i].size() != cols.size()) {
            throw input_error(where + ": row " + std::to_string(i) + " needs " + std::to_string(cols.size()) + " entries");
        }
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [label, coeff] : m[i][j]) {
                auto idx = w.find_label(n, rows[i], cols[j], label);
                if (!idx) {
                    throw input_error(where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]: '" + label +
                                      "' is not a degree-" + std::to_string(n) + " basis form from " +
                                      w.base().object_label(cols[j]) + " to " + w.base().object_label(rows[i]));
                }
                out.at(i, j)[*idx] += coeff;
            }
    }
    return out;
}

WorkspaceDescription parse_description(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed document: ") + e.what());
    }
    WorkspaceDescription d;
    d.field = as_string(require(doc, "field", "document"), "field");

    const json& cat = require(doc, "category", "document");
    d.category.name = optional_string(cat, "name", "category");
    d.category.objects = string_list(require(cat, "objects", "category"), "category.objects");
    const json& homs = as_array(require(cat, "homs", "category"), "category.homs");
    for (std::size_t i = 0; i < homs.size(); ++i) {
        const std::string w = "category.homs[" + std::to_string(i) + "]";
        d.category.homs.push_back({as_string(require(homs[i], "cod", w), w + ".cod"),
                                   as_string(require(homs[i], "dom", w), w + ".dom"),
                                   string_list(require(homs[i], "basis", w), w + ".basis")});
    }
    d.category.composition = products(require(cat, "composition", "category"), "category.composition");
    const json& ids = require(cat, "identities", "category");
    if (!ids.is_object()) throw input_error("category.identities: expected an object");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
        d.category.identities[it.key()] = combination(it.value(), "category.identities." + it.key());
    }

    const json& dg = require(doc, "dg", "document");
    d.dg.mode = as_string(require(dg, "mode", "dg"), "dg.mode");
    d.dg.truncation = as_count(require(dg, "truncation", "dg"), "dg.truncation");
    if (auto it = dg.find("forms"); it != dg.end()) {
        const json& fs = as_array(*it, "dg.forms");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const std::string w = "dg.forms[" + std::to_string(i) + "]";
            d.dg.forms.push_back({as_count(require(fs[i], "degree", w), w + ".degree"),
                                  as_string(require(fs[i], "cod", w), w + ".cod"),
                                  as_string(require(fs[i], "dom", w), w + ".dom"),
                                  string_list(require(fs[i], "basis", w), w + ".basis")});
        }
    }
    if (auto it = dg.find("composition"); it != dg.end()) d.dg.composition = products(*it, "dg.composition");
    if (auto it = dg.find("differential"); it != dg.end()) {
        const json& ds = as_array(*it, "dg.differential");
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const std::string w = "dg.differential[" + std::to_string(i) + "]";
            const json& e = as_array(ds[i], w);
            if (e.size() != 3) throw input_error(w + ": expected [source, target, coefficient]");
            d.dg.differential.push_back({as_string(e[0], w), as_string(e[1], w), as_scalar(e[2], w)});
        }
    }

    if (auto it = doc.find("modules"); it != doc.end()) {
        const json& ms = as_array(*it, "modules");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const std::string w = "modules[" + std::to_string(i) + "]";
            ModuleDescription m;
            m.name = as_string(require(ms[i], "name", w), w + ".name");
            m.kind = as_string(require(ms[i], "kind", w), w + ".kind");
            if (auto f = ms[i].find("index"); f != ms[i].end()) m.index = string_list(*f, w + ".index");
            if (auto f = ms[i].find("idempotent"); f != ms[i].end()) m.idempotent = label_matrix(*f, w + ".idempotent");
            if (auto f = ms[i].find("summands"); f != ms[i].end()) m.summands = string_list(*f, w + ".summands");
            d.modules.push_back(std::move(m));
        }
    }
    if (auto it = doc.find("connections"); it != doc.end()) {
        const json& cs = as_array(*it, "connections");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string w = "connections[" + std::to_string(i) + "]";
            ConnectionDescription c;
            c.name = as_string(require(cs[i], "name", w), w + ".name");
            c.kind = as_string(require(cs[i], "kind", w), w + ".kind");
            c.module = optional_string(cs[i], "module", w);
            c.source = optional_string(cs[i], "source", w);
            if (auto f = cs[i].find("matrix"); f != cs[i].end()) c.matrix = label_matrix(*f, w + ".matrix");
            if (auto f = cs[i].find("parts"); f != cs[i].end()) c.parts = string_list(*f, w + ".parts");
            d.connections.push_back(std::move(c));
        }
    }
    if (auto it = doc.find("endomorphisms"); it != doc.end()) {
        const json& es = as_array(*it, "endomorphisms");
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string w = "endomorphisms[" + std::to_string(i) + "]";
            EndomorphismDescription e;
            e.name = as_string(require(es[i], "name", w), w + ".name");
            e.module = as_string(require(es[i], "module", w), w + ".module");
            e.matrix = label_matrix(require(es[i], "matrix", w), w + ".matrix");
            d.endomorphisms.push_back(std::move(e));
        }
    }
    return d;
}

std::string serialize(const WorkspaceDescription& d) {
    ordered_json doc;
    doc["field"] = d.field;
    ordered_json cat;
    cat["name"] = d.category.name;
    cat["objects"] = d.category.objects;
    cat["homs"] = ordered_json::array();
    for (const auto& h : d.category.homs) cat["homs"].push_back({{"cod", h.cod}, {"dom", h.dom}, {"basis", h.basis}});
    cat["composition"] = products_json(d.category.composition);
    cat["identities"] = ordered_json::object();
    for (const auto& [o, c] : d.category.identities) cat["identities"][o] = combination_json(c);
    doc["category"] = cat;

    ordered_json dg;
    dg["mode"] = d.dg.mode;
    dg["truncation"] = d.dg.truncation;
    if (d.dg.mode == "explicit") {
        dg["forms"] = ordered_json::array();
        for (const auto& f : d.dg.forms) {
            dg["forms"].push_back({{"degree", f.degree}, {"cod", f.cod}, {"dom", f.dom}, {"basis", f.basis}});
        }
        dg["composition"] = products_json(d.dg.composition);
        dg["differential"] = ordered_json::array();
        for (const auto& e : d.dg.differential) dg["differential"].push_back({e.source, e.target, format_scalar(e.coeff)});
    }
    doc["dg"] = dg;

    doc["modules"] = ordered_json::array();
    for (const auto& m : d.modules) {
        ordered_json j;
        j["name"] = m.name;
        j["kind"] = m.kind;
        if (!m.index.empty()) j["index"] = m.index;
        if (!m.idempotent.empty()) j["idempotent"] = matrix_json(m.idempotent);
        if (!m.summands.empty()) j["summands"] = m.summands;
        doc["modules"].push_back(j);
    }
    doc["connections"] = ordered_json::array();
    for (const auto& c : d.connections) {
        ordered_json j;
        j["name"] = c.name;
        j["kind"] = c.kind;
        if (!c.module.empty()) j["module"] = c.module;
        if (!c.matrix.empty()) j["matrix"] = matrix_json(c.matrix);
        if (!c.parts.empty()) j["parts"] = c.parts;
        if (!c.source.empty()) j["source"] = c.source;
        doc["connections"].push_back(j);
    }
    doc["endomorphisms"] = ordered_json::array();
    for (const auto& e : d.endomorphisms) {
        doc["endomorphisms"].push_back({{"name", e.name}, {"module", e.module}, {"matrix", matrix_json(e.matrix)}});
    }
    return doc.dump(2) + "\n";
}

std::vector<std::string> validate_description(const WorkspaceDescription& d) {
    Builder b(d);
    b.run();
    return b.findings;
}

Workspace build_workspace(const WorkspaceDescription& d) {
    Builder b(d);
    b.run();
    if (!b.findings.empty()) throw validation_error("workspace does not validate", b.findings);
    return std::move(b.ws_);
}

Workspace parse_workspace(const std::string& text) { return build_workspace(parse_description(text)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace lincat
