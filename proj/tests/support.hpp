#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/dg.hpp"
#include "lincat/fixtures.hpp"
#include "lincat/linalg.hpp"
#include "lincat/workspace.hpp"

namespace lincat::testing {

// Seeded source of small rationals; every test owns one so results do not
// depend on test order.
class Random {
public:
    explicit Random(unsigned seed) : gen_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

    Scalar scalar(int range = 3) {
        Scalar s(integer(-range, range), integer(1, 3));
        s.canonicalize();
        return s;
    }

    Vector vector(std::size_t n, int range = 3) {
        Vector v(n);
        for (auto& x : v) x = scalar(range);
        return v;
    }

    Matrix matrix(std::size_t r, std::size_t c) {
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar();
        return m;
    }

    FormMatrix form_matrix(const DGCategory& w, const std::vector<ObjectId>& rows, const std::vector<ObjectId>& cols,
                           std::size_t n) {
        FormMatrix a = zero_matrix(w, rows, cols, n);
        for (auto& e : a.entries) e = vector(e.size());
        return a;
    }

    Form form(const DGCategory& w, std::size_t n, ObjectId cod, ObjectId dom) {
        return {n, cod, dom, vector(w.dim(n, cod, dom))};
    }

    std::mt19937& engine() { return gen_; }

private:
    std::mt19937 gen_;
};

inline std::shared_ptr<const DGCategory> universal(std::shared_ptr<const Category> c, std::size_t n) {
    return std::make_shared<const DGCategory>(universal_dg(std::move(c), n));
}

inline std::string fixture_path(const std::string& name) {
    return std::string(LINCAT_FIXTURE_DIR) + "/" + name + ".json";
}

inline Workspace load_fixture(const std::string& name) { return parse_workspace(read_file(fixture_path(name))); }

inline Form arrow(const DGCategory& w, const std::string& label) {
    const Category& c = w.base();
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ObjectId y = 0; y < c.object_count(); ++y)
            if (auto i = w.find_label(0, x, y, label)) return basis_form(w, 0, x, y, *i);
    throw std::logic_error("no arrow " + label);
}

inline Form named_form(const DGCategory& w, std::size_t n, const std::string& label) {
    const Category& c = w.base();
    for (ObjectId x = 0; x < c.object_count(); ++x)
        for (ObjectId y = 0; y < c.object_count(); ++y)
            if (auto i = w.find_label(n, x, y, label)) return basis_form(w, n, x, y, *i);
    throw std::logic_error("no form " + label);
}

}  // namespace lincat::testing
