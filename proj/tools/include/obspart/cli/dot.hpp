#pragma once

#include "obspart/cli/io.hpp"

#include <string>
#include <string_view>

namespace obspart::cli {

enum class ColorBy { none, alpha, beta, scc };

/// Throws ParameterError for anything but "alpha", "beta", "scc" or "none".
ColorBy parse_color_by(std::string_view s);

/// Graphviz digraph of states x1..xn (ellipses) and measurements y1..yp
/// (boxes). Nodes of the k-th class get the k-th palette fill; the output
/// depends only on the input.
std::string to_dot(const LoadedSystem& loaded, ColorBy color_by);

} // namespace obspart::cli
