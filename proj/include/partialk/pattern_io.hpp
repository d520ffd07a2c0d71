#pragma once

#include <optional>
#include <string>

#include "partialk/pattern.hpp"

namespace partialk {

/// Loads a multitype pattern from CSV.
///
/// Expected layout:
///
///     # window: 0 300 0 300
///     x,y,type
///     12.5,200.1,oak
///     ...
///
/// The header is `x,type`, `x,y,type` or `x,y,z,type` and fixes the
/// dimension. The window comes from the `# window: lo1 hi1 lo2 hi2 ...`
/// comment unless `window` is given, which takes precedence. A missing
/// window (no comment, no argument) is an error, as are malformed rows,
/// points outside the window and duplicate locations. Types are registered
/// in order of first appearance.
MultiTypePattern load_pattern_csv(const std::string& path,
                                  std::optional<Window> window = std::nullopt);

/// Writes a pattern in the same layout, 15 significant digits, one window
/// comment, types in registry order. A nonempty `comment` is written as an
/// extra `# ...` line; readers skip it.
void write_pattern_csv(const MultiTypePattern& pattern, const std::string& path,
                       const std::string& comment = "");

}  // namespace partialk
