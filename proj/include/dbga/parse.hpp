#pragma once

#include "dbga/algebra.hpp"

#include <iosfwd>

namespace dbga {

// Line-based presentation format ('#' starts a comment):
//   vertex <name>
//   arrow <name> <source> <target> [deg <c> <b>]
//   relation <coeff>*<path> [+|- <coeff>*<path> ...]
//   differential <arrow> = <linear combination | 0>
// Paths are dot-separated generator names, written right to left ("b.a"
// applies a first). Lazy paths are written e_<vertex>.
std::shared_ptr<Presentation> parse_presentation(std::istream& in, Field f);
std::shared_ptr<Presentation> parse_presentation_file(const std::string& path, Field f);

std::string serialize_presentation(const Presentation& P);

}  // namespace dbga
