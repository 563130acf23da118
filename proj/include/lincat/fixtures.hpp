#pragma once

// Small categories used by the bundled fixtures and the test suites.

#include <memory>

#include "lincat/category.hpp"

namespace lincat::fixtures {

/// One object '*', hom spanned by the identity '1'.
std::shared_ptr<const Category> point();
/// One object '*', basis {1, u} with u o u = 0.
std::shared_ptr<const Category> dual_numbers();
/// Objects 1, 2; basis arrows 1_1, 1_2 and a : 1 -> 2.
std::shared_ptr<const Category> a2_path();
/// Objects 1, 2; arrows a : 1 -> 2, b : 2 -> 1 with ab = 0 and ba = 0.
std::shared_ptr<const Category> two_cycle();

}  // namespace lincat::fixtures
