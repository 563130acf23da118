#pragma once

// Description files: one JSON document per experiment.
//
//   {
//     "field": "Q",
//     "category": {"name": ..., "objects": [...],
//                  "homs": [{"cod": x, "dom": y, "basis": [labels]}],
//                  "composition": [[left, right, result, "p/q"], ...],
//                  "identities": {object: {label: "p/q"}}},
//     "dg": {"mode": "universal" | "trivial" | "explicit", "truncation": N,
//            "forms": [{"degree": n, "cod": x, "dom": y, "basis": [...]}],
//            "composition": [[left, right, result, "p/q"], ...],
//            "differential": [[source, target, "p/q"], ...]},
//     "modules": [{"name", "kind": "free" | "idempotent" | "direct_sum",
//                  "index": [objects], "idempotent": matrix, "summands": [a, b]}],
//     "connections": [{"name", "kind": "matrix" | "levi_civita" | "direct_sum" | "compress",
//                      "module", "matrix", "parts": [a, b], "source"}],
//     "endomorphisms": [{"name", "module", "matrix"}]
//   }
//
// A matrix is a list of rows; each entry maps basis labels to scalar strings.
// Labels are global: degree-0 labels are arrow labels, explicit forms carry
// their own labels, universal forms use the generated ones ("u·du", also
// written "u*du"). In explicit mode, composites with an identity that is a
// single basis arrow are filled in unless stated.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/connection.hpp"
#include "lincat/dg.hpp"
#include "lincat/linalg.hpp"
#include "lincat/module.hpp"

namespace lincat {

using LabelCombination = std::map<std::string, Scalar>;
using LabelMatrix = std::vector<std::vector<LabelCombination>>;

struct HomDescription {
    std::string cod;
    std::string dom;
    std::vector<std::string> basis;
    friend bool operator==(const HomDescription&, const HomDescription&) = default;
};

struct ProductEntry {
    std::string left;
    std::string right;
    std::string result;
    Scalar coeff;
    friend bool operator==(const ProductEntry&, const ProductEntry&) = default;
};

struct DifferentialEntry {
    std::string source;
    std::string target;
    Scalar coeff;
    friend bool operator==(const DifferentialEntry&, const DifferentialEntry&) = default;
};

struct CategoryDescription {
    std::string name;
    std::vector<std::string> objects;
    std::vector<HomDescription> homs;
    std::vector<ProductEntry> composition;
    std::map<std::string, LabelCombination> identities;
    friend bool operator==(const CategoryDescription&, const CategoryDescription&) = default;
};

struct FormsDescription {
    std::size_t degree = 1;
    std::string cod;
    std::string dom;
    std::vector<std::string> basis;
    friend bool operator==(const FormsDescription&, const FormsDescription&) = default;
};

struct DGDescription {
    std::string mode = "universal";
    std::size_t truncation = 1;
    std::vector<FormsDescription> forms;
    std::vector<ProductEntry> composition;
    std::vector<DifferentialEntry> differential;
    friend bool operator==(const DGDescription&, const DGDescription&) = default;
};

struct ModuleDescription {
    std::string name;
    std::string kind;
    std::vector<std::string> index;
    LabelMatrix idempotent;
    std::vector<std::string> summands;
    friend bool operator==(const ModuleDescription&, const ModuleDescription&) = default;
};

struct ConnectionDescription {
    std::string name;
    std::string kind;
    std::string module;
    LabelMatrix matrix;
    std::vector<std::string> parts;
    std::string source;
    friend bool operator==(const ConnectionDescription&, const ConnectionDescription&) = default;
};

struct EndomorphismDescription {
    std::string name;
    std::string module;
    LabelMatrix matrix;
    friend bool operator==(const EndomorphismDescription&, const EndomorphismDescription&) = default;
};

struct WorkspaceDescription {
    std::string field = "Q";
    CategoryDescription category;
    DGDescription dg;
    std::vector<ModuleDescription> modules;
    std::vector<ConnectionDescription> connections;
    std::vector<EndomorphismDescription> endomorphisms;
    friend bool operator==(const WorkspaceDescription&, const WorkspaceDescription&) = default;
};

/// Schema-level parsing; throws input_error naming the offending location.
WorkspaceDescription parse_description(const std::string& text);
/// Canonical JSON text; parse_description(serialize(d)) == d.
std::string serialize(const WorkspaceDescription& d);

struct Workspace {
    WorkspaceDescription description;
    std::shared_ptr<const Category> category;
    std::shared_ptr<const DGCategory> forms;
    std::map<std::string, ProjectiveModule> modules;
    std::map<std::string, Connection> connections;
    std::map<std::string, std::pair<std::string, ModuleMorphism>> endomorphisms;  // name -> (module, map)
};

/// Every axiom violation, dangling reference and shape problem, as messages.
/// Never throws for semantic problems.
std::vector<std::string> validate_description(const WorkspaceDescription& d);
/// Builds all structures; throws validation_error carrying the findings.
Workspace build_workspace(const WorkspaceDescription& d);
Workspace parse_workspace(const std::string& text);
std::string read_file(const std::string& path);

/// Resolves a label matrix over the given index families in degree n.
FormMatrix resolve_matrix(const DGCategory& w, const std::vector<ObjectId>& rows, const std::vector<ObjectId>& cols,
                          std::size_t n, const LabelMatrix& m, const std::string& where);

}  // namespace lincat
