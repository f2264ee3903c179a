#pragma once

#include <string>
#include <string_view>

#include "balpairs/poset.hpp"

namespace balpairs {

// Line format:
//   # comment
//   elements: a b c
//   a < b
// Names are whitespace-free tokens without '<', ':' or '#'. Undeclared
// names are registered on first use; ids follow registration order.
// Throws ParseError(line, ...) or CycleError.
Poset parse_poset(std::string_view text);
Poset read_poset_file(const std::string& path);

// `elements:` line followed by the cover relations. Unlabelled posets use
// their ids as names.
std::string serialize(const Poset& p);

// Hasse diagram: nodes in id order, cover edges sorted, one rank group per
// height.
std::string to_dot(const Poset& p);

}  // namespace balpairs
