#pragma once

// Finite Q-linear categories given by basis arrows and structure constants.
//
// Index convention: hom(x, y) is the space of morphisms FROM y TO x, and the
// composition table comp(x, y, z) sends hom(x, y) (x) hom(y, z) to hom(x, z).
// Every tensor in the engine follows this order.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lincat/linalg.hpp"

namespace lincat {

using ObjectId = std::size_t;

struct Violation {
    std::string kind;    // e.g. "associativity", "unit", "d^2", "leibniz"
    std::string detail;  // names the failing basis triple / pair
};

class Category {
public:
    Category() = default;
    /// Raw constructor; does not validate (see validate_category).
    /// labels[x][y] lists basis arrows of hom(x, y); composition is indexed by
    /// (x * k + y) * k + z for k objects.
    Category(std::vector<std::string> objects, std::vector<std::vector<std::vector<std::string>>> labels,
             std::vector<BilinearTable> composition, std::vector<Vector> identities);

    std::size_t object_count() const { return objects_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::string& object_label(ObjectId x) const { return objects_.at(x); }
    std::optional<ObjectId> find_object(const std::string& label) const;

    std::size_t dim(ObjectId x, ObjectId y) const { return labels_.at(x).at(y).size(); }
    const std::vector<std::string>& hom_basis(ObjectId x, ObjectId y) const { return labels_.at(x).at(y); }
    const BilinearTable& composition(ObjectId x, ObjectId y, ObjectId z) const;
    const Vector& identity(ObjectId x) const { return identities_.at(x); }

    /// Coordinates of f o g for f in hom(x, y), g in hom(y, z).
    Vector compose(ObjectId x, ObjectId y, ObjectId z, const Vector& f, const Vector& g) const;

    // Diagonal elements (one component per object) are flattened object by object.
    std::size_t diagonal_dim() const;
    std::size_t diagonal_offset(ObjectId x) const;

    friend bool operator==(const Category&, const Category&) = default;

private:
    std::vector<std::string> objects_;
    std::vector<std::vector<std::vector<std::string>>> labels_;
    std::vector<BilinearTable> composition_;
    std::vector<Vector> identities_;
};

struct Morphism {
    ObjectId cod = 0;
    ObjectId dom = 0;
    Vector coords;  // in the basis of hom(cod, dom)
};

using DiagonalElement = std::vector<Vector>;  // component x lives in hom(x, x)

std::vector<Violation> validate_category(const Category& c);

/// f o g; requires dom(f) == cod(g), else composition_error.
Morphism compose(const Category& c, const Morphism& f, const Morphism& g);
Morphism identity_morphism(const Category& c, ObjectId x);

/// Spanning set of [C, C]: fg - gf over basis pairs f in hom(x, y), g in hom(y, x).
std::vector<Vector> commutator_spanning_set(const Category& c);
/// C_ab = (sum_x hom(x, x)) / [C, C].
QuotientSpace abelianization(const Category& c);
Vector flatten_diagonal(const Category& c, const DiagonalElement& d);
/// Coordinates of the class of d in C_ab.
Vector commutator_class(const Category& c, const DiagonalElement& d);

/// Label-driven assembly of small categories. Arrow labels must be globally
/// unique so composition entries can be stated as (left, right) -> result.
class CategoryBuilder {
public:
    ObjectId add_object(const std::string& label);
    void add_arrow(const std::string& cod, const std::string& dom, const std::string& label);
    void set_identity(const std::string& object, const std::map<std::string, Scalar>& coords);
    /// left o right = sum coeff * result (accumulates).
    void set_composite(const std::string& left, const std::string& right, const std::string& result,
                       const Scalar& coeff = 1);
    Category build() const;

    struct ArrowRef {
        ObjectId cod;
        ObjectId dom;
        std::size_t index;
    };
    std::optional<ArrowRef> find_arrow(const std::string& label) const;

private:
    ObjectId object_id(const std::string& label) const;

    std::vector<std::string> objects_;
    std::vector<std::vector<std::vector<std::string>>> labels_;
    std::map<std::string, ArrowRef> arrows_;
    std::map<ObjectId, std::map<std::string, Scalar>> identities_;
    std::vector<std::tuple<std::string, std::string, std::string, Scalar>> composites_;
};

}  // namespace lincat
