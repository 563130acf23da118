#include "lincat/fixtures.hpp"

namespace lincat::fixtures {

std::shared_ptr<const Category> point() {
    CategoryBuilder b;
    b.add_object("*");
    b.add_arrow("*", "*", "1");
    b.set_identity("*", {{"1", 1}});
    b.set_composite("1", "1", "1");
    return std::make_shared<const Category>(b.build());
}

std::shared_ptr<const Category> dual_numbers() {
    CategoryBuilder b;
    b.add_object("*");
    b.add_arrow("*", "*", "1");
    b.add_arrow("*", "*", "u");
    b.set_identity("*", {{"1", 1}});
    b.set_composite("1", "1", "1");
    b.set_composite("1", "u", "u");
    b.set_composite("u", "1", "u");
    return std::make_shared<const Category>(b.build());
}

std::shared_ptr<const Category> a2_path() {
    CategoryBuilder b;
    b.add_object("1");
    b.add_object("2");
    b.add_arrow("1", "1", "1_1");
    b.add_arrow("2", "2", "1_2");
    b.add_arrow("2", "1", "a");
    b.set_identity("1", {{"1_1", 1}});
    b.set_identity("2", {{"1_2", 1}});
    b.set_composite("1_1", "1_1", "1_1");
    b.set_composite("1_2", "1_2", "1_2");
    b.set_composite("a", "1_1", "a");
    b.set_composite("1_2", "a", "a");
    return std::make_shared<const Category>(b.build());
}

std::shared_ptr<const Category> two_cycle() {
    CategoryBuilder b;
    b.add_object("1");
    b.add_object("2");
    b.add_arrow("1", "1", "1_1");
    b.add_arrow("2", "2", "1_2");
    b.add_arrow("2", "1", "a");
    b.add_arrow("1", "2", "b");
    b.set_identity("1", {{"1_1", 1}});
    b.set_identity("2", {{"1_2", 1}});
    b.set_composite("1_1", "1_1", "1_1");
    b.set_composite("1_2", "1_2", "1_2");
    b.set_composite("a", "1_1", "a");
    b.set_composite("1_2", "a", "a");
    b.set_composite("b", "1_2", "b");
    b.set_composite("1_1", "b", "b");
    return std::make_shared<const Category>(b.build());
}

}  // namespace lincat::fixtures
