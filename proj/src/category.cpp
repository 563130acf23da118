#include "lincat/category.hpp"

#include "lincat/errors.hpp"

namespace lincat {

Category::Category(std::vector<std::string> objects, std::vector<std::vector<std::vector<std::string>>> labels,
                   std::vector<BilinearTable> composition, std::vector<Vector> identities)
    : objects_(std::move(objects)),
      labels_(std::move(labels)),
      composition_(std::move(composition)),
      identities_(std::move(identities)) {
    const std::size_t k = objects_.size();
    if (labels_.size() != k || composition_.size() != k * k * k || identities_.size() != k) {
        throw input_error("category tables do not match the object count");
    }
    for (ObjectId x = 0; x < k; ++x) {
        if (labels_[x].size() != k) throw input_error("category hom table is not square");
        if (identities_[x].size() != dim(x, x)) throw input_error("identity of '" + objects_[x] + "' has wrong length");
    }
    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y)
            for (ObjectId z = 0; z < k; ++z) {
                const BilinearTable& t = this->composition(x, y, z);
                if (t.left_dim() != dim(x, y) || t.right_dim() != dim(y, z) || t.out_dim() != dim(x, z)) {
                    throw input_error("composition table (" + objects_[x] + "," + objects_[y] + "," + objects_[z] +
                                      ") has wrong shape");
                }
            }
}

std::optional<ObjectId> Category::find_object(const std::string& label) const {
    for (ObjectId x = 0; x < objects_.size(); ++x) {
        if (objects_[x] == label) return x;
    }
    return std::nullopt;
}

const BilinearTable& Category::composition(ObjectId x, ObjectId y, ObjectId z) const {
    const std::size_t k = objects_.size();
    return composition_.at((x * k + y) * k + z);
}

Vector Category::compose(ObjectId x, ObjectId y, ObjectId z, const Vector& f, const Vector& g) const {
    return composition(x, y, z).apply(f, g);
}

std::size_t Category::diagonal_dim() const {
    std::size_t n = 0;
    for (ObjectId x = 0; x < object_count(); ++x) n += dim(x, x);
    return n;
}

std::size_t Category::diagonal_offset(ObjectId x) const {
    std::size_t n = 0;
    for (ObjectId z = 0; z < x; ++z) n += dim(z, z);
    return n;
}

namespace {

std::string arrow_name(const Category& c, ObjectId x, ObjectId y, std::size_t i) {
    return c.hom_basis(x, y)[i] + " : " + c.object_label(y) + "->" + c.object_label(x);
}

}  // namespace

std::vector<Violation> validate_category(const Category& c) {
    std::vector<Violation> out;
    const std::size_t k = c.object_count();
    // unit laws on every basis arrow
    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y)
            for (std::size_t i = 0; i < c.dim(x, y); ++i) {
                const Vector f = unit_vector(c.dim(x, y), i);
                if (c.compose(x, x, y, c.identity(x), f) != f) {
                    out.push_back({"unit", "1_" + c.object_label(x) + " o " + arrow_name(c, x, y, i) + " != itself"});
                }
                if (c.compose(x, y, y, f, c.identity(y)) != f) {
                    out.push_back({"unit", arrow_name(c, x, y, i) + " o 1_" + c.object_label(y) + " != itself"});
                }
            }
    // associativity on every basis triple
    for (ObjectId w = 0; w < k; ++w)
        for (ObjectId x = 0; x < k; ++x)
            for (ObjectId y = 0; y < k; ++y)
                for (ObjectId z = 0; z < k; ++z)
                    for (std::size_t a = 0; a < c.dim(w, x); ++a)
                        for (std::size_t b = 0; b < c.dim(x, y); ++b) {
                            const Vector ab = c.composition(w, x, y).product(a, b);
                            for (std::size_t e = 0; e < c.dim(y, z); ++e) {
                                const Vector be = c.composition(x, y, z).product(b, e);
                                const Vector left = c.compose(w, y, z, ab, unit_vector(c.dim(y, z), e));
                                const Vector right = c.compose(w, x, z, unit_vector(c.dim(w, x), a), be);
                                if (left != right) {
                                    out.push_back({"associativity", "(" + c.hom_basis(w, x)[a] + " o " +
                                                                        c.hom_basis(x, y)[b] + ") o " +
                                                                        c.hom_basis(y, z)[e] + " != " +
                                                                        c.hom_basis(w, x)[a] + " o (" +
                                                                        c.hom_basis(x, y)[b] + " o " +
                                                                        c.hom_basis(y, z)[e] + ")"});
                                }
                            }
                        }
    return out;
}

Morphism compose(const Category& c, const Morphism& f, const Morphism& g) {
    if (f.dom != g.cod) {
        throw composition_error("cannot compose: domain of f is '" + c.object_label(f.dom) + "' but codomain of g is '" +
                                c.object_label(g.cod) + "'");
    }
    return {f.cod, g.dom, c.compose(f.cod, f.dom, g.dom, f.coords, g.coords)};
}

Morphism identity_morphism(const Category& c, ObjectId x) { return {x, x, c.identity(x)}; }

std::vector<Vector> commutator_spanning_set(const Category& c) {
    std::vector<Vector> out;
    const std::size_t k = c.object_count();
    const std::size_t n = c.diagonal_dim();
    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y)
            for (std::size_t a = 0; a < c.dim(x, y); ++a)
                for (std::size_t b = 0; b < c.dim(y, x); ++b) {
                    Vector v(n);
                    const Vector fg = c.composition(x, y, x).product(a, b);
                    const Vector gf = c.composition(y, x, y).product(b, a);
                    for (std::size_t i = 0; i < fg.size(); ++i) v[c.diagonal_offset(x) + i] += fg[i];
                    for (std::size_t i = 0; i < gf.size(); ++i) v[c.diagonal_offset(y) + i] -= gf[i];
                    if (!is_zero(v)) out.push_back(std::move(v));
                }
    return out;
}

QuotientSpace abelianization(const Category& c) {
    return build_quotient(c.diagonal_dim(), commutator_spanning_set(c));
}

Vector flatten_diagonal(const Category& c, const DiagonalElement& d) {
    if (d.size() != c.object_count()) throw input_error("diagonal element needs one component per object");
    Vector out;
    out.reserve(c.diagonal_dim());
    for (ObjectId x = 0; x < d.size(); ++x) {
        if (d[x].size() != c.dim(x, x)) throw input_error("diagonal component has wrong length");
        out.insert(out.end(), d[x].begin(), d[x].end());
    }
    return out;
}

Vector commutator_class(const Category& c, const DiagonalElement& d) {
    return abelianization(c).coordinates(flatten_diagonal(c, d));
}

// ---------------------------------------------------------------------------
// CategoryBuilder

ObjectId CategoryBuilder::add_object(const std::string& label) {
    for (const auto& o : objects_) {
        if (o == label) throw input_error("duplicate object '" + label + "'");
    }
    objects_.push_back(label);
    const std::size_t k = objects_.size();
    labels_.resize(k);
    for (auto& row : labels_) row.resize(k);
    return k - 1;
}

ObjectId CategoryBuilder::object_id(const std::string& label) const {
    for (ObjectId x = 0; x < objects_.size(); ++x) {
        if (objects_[x] == label) return x;
    }
    throw input_error("unknown object '" + label + "'");
}

void CategoryBuilder::add_arrow(const std::string& cod, const std::string& dom, const std::string& label) {
    if (arrows_.contains(label)) throw input_error("duplicate arrow label '" + label + "'");
    const ObjectId x = object_id(cod);
    const ObjectId y = object_id(dom);
    arrows_[label] = {x, y, labels_[x][y].size()};
    labels_[x][y].push_back(label);
}

void CategoryBuilder::set_identity(const std::string& object, const std::map<std::string, Scalar>& coords) {
    identities_[object_id(object)] = coords;
}

void CategoryBuilder::set_composite(const std::string& left, const std::string& right, const std::string& result,
                                    const Scalar& coeff) {
    composites_.emplace_back(left, right, result, coeff);
}

std::optional<CategoryBuilder::ArrowRef> CategoryBuilder::find_arrow(const std::string& label) const {
    auto it = arrows_.find(label);
    if (it == arrows_.end()) return std::nullopt;
    return it->second;
}

Category CategoryBuilder::build() const {
    const std::size_t k = objects_.size();
    std::vector<BilinearTable> comp;
    comp.reserve(k * k * k);
    for (ObjectId x = 0; x < k; ++x)
        for (ObjectId y = 0; y < k; ++y)
            for (ObjectId z = 0; z < k; ++z)
                comp.emplace_back(labels_[x][y].size(), labels_[y][z].size(), labels_[x][z].size());
    auto lookup = [&](const std::string& label) {
        auto a = find_arrow(label);
        if (!a) throw input_error("unknown arrow '" + label + "'");
        return *a;
    };
    for (const auto& [left, right, result, coeff] : composites_) {
        const ArrowRef f = lookup(left);
        const ArrowRef g = lookup(right);
        const ArrowRef h = lookup(result);
        if (f.dom != g.cod) throw composition_error("composite " + left + " o " + right + " is not composable");
        if (h.cod != f.cod || h.dom != g.dom) {
            throw input_error("composite " + left + " o " + right + " cannot equal '" + result + "' (wrong endpoints)");
        }
        comp[(f.cod * k + f.dom) * k + g.dom].add(f.index, g.index, h.index, coeff);
    }
    std::vector<Vector> ids(k);
    for (ObjectId x = 0; x < k; ++x) {
        ids[x] = Vector(labels_[x][x].size());
        auto it = identities_.find(x);
        if (it == identities_.end()) continue;
        for (const auto& [label, coeff] : it->second) {
            const ArrowRef a = lookup(label);
            if (a.cod != x || a.dom != x) throw input_error("identity of '" + objects_[x] + "' uses arrow '" + label + "'");
            ids[x][a.index] += coeff;
        }
    }
    return Category(objects_, labels_, std::move(comp), std::move(ids));
}

}  // namespace lincat
