#include "obspart/cli/io.hpp"

#include "obspart/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace obspart::cli {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::size_t index_field(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(what + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_field(const json& j, const std::string& key) {
  if (!j.is_array()) {
    throw InputError("\"" + key + "\" must be an array of [row, col] pairs");
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& e = j[k];
    std::string where = "\"" + key + "\"[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) {
      throw InputError(where + " must be a [row, col] pair");
    }
    std::size_t row = index_field(e[0], where + " row");
    std::size_t col = index_field(e[1], where + " col");
    if (row == 0 || col == 0) {
      throw InputError(where + ": indices are 1-based");
    }
    out.emplace_back(row, col);
  }
  return out;
}

} // namespace

LoadedSystem parse_system_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": malformed JSON");
  }
  if (!doc.is_object()) {
    throw InputError("system file must be a JSON object");
  }
  static const std::set<std::string> known = {"n", "p", "a", "h", "names"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) {
      throw InputError("unknown key \"" + key + "\"");
    }
  }
  for (const char* key : {"n", "p", "a", "h"}) {
    if (!doc.contains(key)) {
      throw InputError(std::string("missing key \"") + key + "\"");
    }
  }
  LoadedSystem out;
  std::size_t n = index_field(doc["n"], "\"n\"");
  std::size_t p = index_field(doc["p"], "\"p\"");
  auto a = pairs_field(doc["a"], "a");
  auto h = pairs_field(doc["h"], "h");
  out.sys = make_system(n, p, a, h);
  if (doc.contains("names")) {
    const json& names = doc["names"];
    if (!names.is_array() || names.size() != n) {
      throw InputError("\"names\" must hold one string per state");
    }
    for (const json& name : names) {
      if (!name.is_string()) {
        throw InputError("\"names\" must hold one string per state");
      }
      out.names.push_back(name.get<std::string>());
    }
  }
  return out;
}

PatternMatrix parse_matrix_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  if (!std::getline(in, line)) {
    fail("empty Matrix Market file");
  }
  ++line_no;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate" || field != "pattern" ||
      symmetry != "general") {
    fail("expected \"%%MatrixMarket matrix coordinate pattern general\"");
  }
  PatternMatrix out;
  std::size_t nnz = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%') {
      continue;
    }
    std::istringstream fields(line);
    std::size_t r = 0;
    std::size_t c = 0;
    if (!have_size) {
      if (!(fields >> out.rows >> out.cols >> nnz)) {
        fail("expected \"rows cols nnz\"");
      }
      have_size = true;
      continue;
    }
    if (!(fields >> r >> c)) {
      fail("expected \"row col\"");
    }
    std::string extra;
    if (fields >> extra) {
      fail("unexpected value in a pattern file");
    }
    if (r == 0 || c == 0 || r > out.rows || c > out.cols) {
      fail("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") is out of range");
    }
    out.entries.emplace_back(r, c);
  }
  if (!have_size) {
    fail("missing size line");
  }
  if (out.entries.size() != nnz) {
    fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(out.entries.size()));
  }
  return out;
}

LoadedSystem system_from_matrix_market(const PatternMatrix& a, const PatternMatrix* h) {
  if (a.rows != a.cols) {
    throw InputError("A must be square");
  }
  if (h != nullptr && h->cols != a.cols) {
    throw InputError("H must have as many columns as A");
  }
  LoadedSystem out;
  static const std::vector<std::pair<std::size_t, std::size_t>> none;
  out.sys = make_system(a.rows, h ? h->rows : 0, a.entries, h ? h->entries : none);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedSystem load_system(const std::filesystem::path& path, const std::filesystem::path& measurements) {
  if (path.extension() == ".mtx") {
    PatternMatrix a = parse_matrix_market(read_file(path));
    if (measurements.empty()) {
      return system_from_matrix_market(a, nullptr);
    }
    PatternMatrix h = parse_matrix_market(read_file(measurements));
    return system_from_matrix_market(a, &h);
  }
  if (!measurements.empty()) {
    throw InputError("a separate measurement file is only accepted with a .mtx system");
  }
  return parse_system_json(read_file(path));
}

std::string label_of(const LoadedSystem& loaded, std::size_t state) {
  return loaded.names.empty() ? state_label(state) : loaded.names[state];
}

} // namespace obspart::cli
