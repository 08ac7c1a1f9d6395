#include "obspart/cli/dot.hpp"

#include "obspart/digraph.hpp"
#include "obspart/errors.hpp"
#include "obspart/partition.hpp"
#include "obspart/scc.hpp"

#include <array>
#include <sstream>

namespace obspart::cli {

namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#f4a259", "#9b72cf", "#5fb878", "#5b8def", "#e5616e", "#f2d35b",
    "#46b3a9", "#c17d5a", "#d67fb8", "#8c9aa8", "#a3c94f", "#7a6fd0",
};

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

} // namespace

ColorBy parse_color_by(std::string_view s) {
  if (s == "alpha") {
    return ColorBy::alpha;
  }
  if (s == "beta") {
    return ColorBy::beta;
  }
  if (s == "scc") {
    return ColorBy::scc;
  }
  if (s == "none") {
    return ColorBy::none;
  }
  throw ParameterError("--color-by must be alpha, beta or scc");
}

std::string to_dot(const LoadedSystem& loaded, ColorBy color_by) {
  const StructuredSystem& sys = loaded.sys;
  std::vector<StateSet> classes;
  switch (color_by) {
  case ColorBy::alpha:
    for (const AlphaClass& c : equivalence_classes(sys).alpha) {
      classes.push_back(c.states);
    }
    break;
  case ColorBy::beta:
    classes = equivalence_classes(sys).beta;
    break;
  case ColorBy::scc:
    classes = decompose(build_digraph(sys)).components;
    break;
  case ColorBy::none:
    break;
  }
  std::vector<const char*> fill(sys.n, nullptr);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (std::size_t s : classes[k]) {
      fill[s] = kPalette[k % kPalette.size()];
    }
  }

  std::ostringstream out;
  out << "digraph obspart {\n";
  for (std::size_t i = 0; i < sys.n; ++i) {
    out << "  x" << i + 1 << " [label=" << quoted(label_of(loaded, i));
    if (fill[i] != nullptr) {
      out << ", style=filled, fillcolor=" << quoted(fill[i]);
    }
    out << "];\n";
  }
  for (std::size_t k = 0; k < sys.p; ++k) {
    out << "  y" << k + 1 << " [label=\"y" << k + 1 << "\", shape=box];\n";
  }
  for (const Entry& e : canonical(sys).a_pattern) {
    out << "  x" << e.col + 1 << " -> x" << e.row + 1 << ";\n";
  }
  for (const Entry& e : canonical(sys).h_pattern) {
    out << "  x" << e.col + 1 << " -> y" << e.row + 1 << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace obspart::cli
