#pragma once

// Small groups shared across test files, built as permutation groups or from
// explicit element tuples.

#include <memory>

#include "fuslim/group.hpp"

namespace testutil {

using fuslim::Group;
using fuslim::elt;
using fuslim::from_elements;
using fuslim::from_permutations;

inline std::shared_ptr<const Group> c2() {
    return std::make_shared<Group>(from_permutations(2, {{1, 0}}));
}

inline std::shared_ptr<const Group> c4() {
    return std::make_shared<Group>(from_permutations(4, {{1, 2, 3, 0}}));
}

inline std::shared_ptr<const Group> c3() {
    return std::make_shared<Group>(from_permutations(3, {{1, 2, 0}}));
}

inline std::shared_ptr<const Group> c6() {
    return std::make_shared<Group>(from_permutations(6, {{1, 2, 3, 4, 5, 0}}));
}

inline std::shared_ptr<const Group> d8() {
    return std::make_shared<Group>(from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}));
}

inline std::shared_ptr<const Group> q8() {
    return std::make_shared<Group>(
        from_permutations(8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}));
}

inline std::shared_ptr<const Group> s4() {
    return std::make_shared<Group>(from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
}

inline std::shared_ptr<const Group> c3c3() {
    return std::make_shared<Group>(from_permutations(6, {{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}));
}

// extraspecial 3^{1+2}_+ (Heisenberg group over F_3)
inline std::shared_ptr<const Group> x27() {
    struct T {
        int a, b, c;
        auto operator<=>(const T&) const = default;
    };
    std::vector<T> els;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) els.push_back({a, b, c});
    return std::make_shared<Group>(from_elements(els, [](const T& x, const T& y) {
        return T{(x.a + y.a) % 3, (x.b + y.b) % 3, (x.c + y.c + x.a * y.b) % 3};
    }));
}

}  // namespace testutil
