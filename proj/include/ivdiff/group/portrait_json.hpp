#pragma once

#include <string>

#include "ivdiff/group/portrait.hpp"

namespace ivdiff::group {

/// {"m": offset, "e": even child, "o": odd child}; the depth-0 leaf is
/// {"m": 0, "e": null, "o": null}.
std::string portrait_to_json(const Portrait& p);

/// Throws std::invalid_argument on malformed input, unequal child depths or,
/// for G, offsets outside {0, 1}.
Portrait portrait_from_json(const std::string& text, GroupTag tag);

}  // namespace ivdiff::group
