#pragma once

#include "dbga/verify.hpp"

#include <sstream>

namespace dbga::testing {

inline std::shared_ptr<Presentation> a1(Field f = field_rationals()) {
    auto p = path_algebra(f, {"1"}, {});
    p->name = "A1";
    return p;
}

inline std::shared_ptr<Presentation> a2(Field f = field_rationals()) {
    auto p = path_algebra(f, {"1", "2"}, {Generator{"a", 0, 1, {0, 0}}});
    p->name = "A2";
    return p;
}

inline std::shared_ptr<Presentation> a3(Field f = field_rationals()) {
    auto p = path_algebra(f, {"1", "2", "3"},
                          {Generator{"a", 0, 1, {0, 0}}, Generator{"b", 1, 2, {0, 0}}});
    p->name = "A3";
    return p;
}

inline std::shared_ptr<Presentation> a4(Field f = field_rationals()) {
    auto p = path_algebra(f, {"1", "2", "3", "4"},
                          {Generator{"a", 0, 1, {0, 0}}, Generator{"b", 1, 2, {0, 0}},
                           Generator{"c", 2, 3, {0, 0}}});
    p->name = "A4";
    return p;
}

// compact "c,b:dim;..." rendering for table comparisons in test output
inline std::string tstr(const BidegreeTable& t) {
    std::ostringstream s;
    for (auto& [d, n] : t.cells)
        if (n != 0) s << d.c << "," << d.b << ":" << n << ";";
    return s.str();
}

}  // namespace dbga::testing
