#include "powermat/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace powermat {

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(const std::string& text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail_at(const std::string& text, std::size_t offset, const std::string& what) {
  const Position p = position_of(text, offset);
  throw ParseError(what, p.line, p.column);
}

std::size_t skip_string(const std::string& t, std::size_t i) {
  for (++i; i < t.size(); ++i) {
    if (t[i] == '\\') {
      ++i;
    } else if (t[i] == '"') {
      return i + 1;
    }
  }
  return t.size();
}

std::size_t skip_ws(const std::string& t, std::size_t i) {
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  return i;
}

// Skips one JSON value starting at i (syntax already validated).
std::size_t skip_value(const std::string& t, std::size_t i) {
  i = skip_ws(t, i);
  if (i >= t.size()) return i;
  if (t[i] == '"') return skip_string(t, i);
  if (t[i] == '[' || t[i] == '{') {
    int depth = 0;
    for (; i < t.size(); ++i) {
      if (t[i] == '"') {
        i = skip_string(t, i) - 1;
      } else if (t[i] == '[' || t[i] == '{') {
        ++depth;
      } else if (t[i] == ']' || t[i] == '}') {
        if (--depth == 0) return i + 1;
      }
    }
    return i;
  }
  while (i < t.size() && t[i] != ',' && t[i] != ']' && t[i] != '}' &&
         !std::isspace(static_cast<unsigned char>(t[i]))) {
    ++i;
  }
  return i;
}

// Offset of the index-th element of the array starting at `open` ('[').
std::size_t array_element(const std::string& t, std::size_t open, std::size_t index) {
  std::size_t i = skip_ws(t, open + 1);
  for (std::size_t k = 0; k < index; ++k) {
    i = skip_ws(t, skip_value(t, i));
    if (i < t.size() && t[i] == ',') i = skip_ws(t, i + 1);
  }
  return i;
}

// Offset of the value of top-level key `key`, or npos.
std::size_t key_value(const std::string& t, const std::string& key) {
  std::size_t i = skip_ws(t, 0);
  if (i >= t.size() || t[i] != '{') return std::string::npos;
  i = skip_ws(t, i + 1);
  while (i < t.size() && t[i] == '"') {
    const std::size_t end = skip_string(t, i);
    const std::string name = t.substr(i + 1, end - i - 2);
    i = skip_ws(t, end);
    if (i < t.size() && t[i] == ':') i = skip_ws(t, i + 1);
    if (name == key) return i;
    i = skip_ws(t, skip_value(t, i));
    if (i < t.size() && t[i] == ',') i = skip_ws(t, i + 1);
  }
  return std::string::npos;
}

// Source offset of entries[row] (col == npos) or entries[row][col].
std::size_t entry_offset(const std::string& t, std::size_t row, std::size_t col) {
  const std::size_t entries = key_value(t, "entries");
  if (entries == std::string::npos) return 0;
  std::size_t at = array_element(t, entries, row);
  if (col != std::string::npos && at < t.size() && t[at] == '[') at = array_element(t, at, col);
  return at;
}

Complex parse_entry(const Json& v, const std::string& text, std::size_t row, std::size_t col) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail_at(text, entry_offset(text, row, col), "entry must be a number or a [re, im] pair");
}

}  // namespace

CMatrix parse_matrix_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail_at(text, e.byte == 0 ? 0 : e.byte - 1, "malformed JSON");
  } catch (const Json::out_of_range&) {
    throw ParseError("number out of range");
  }
  if (!doc.is_object()) fail_at(text, skip_ws(text, 0), "matrix JSON must be an object");
  if (!doc.contains("entries")) fail_at(text, skip_ws(text, 0), "missing \"entries\"");
  const Json& entries = doc["entries"];
  const std::size_t entries_at = key_value(text, "entries");
  if (!entries.is_array() || entries.empty()) {
    fail_at(text, entries_at, "\"entries\" must be a nonempty array of rows");
  }
  const std::size_t n = entries.size();
  if (doc.contains("n")) {
    const Json& declared = doc["n"];
    if (!declared.is_number_integer() || declared.get<long long>() != static_cast<long long>(n)) {
      fail_at(text, key_value(text, "n"),
              "\"n\" does not match the number of rows (" + std::to_string(n) + ")");
    }
  }
  std::vector<std::vector<Complex>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || row.size() != n) {
      fail_at(text, entry_offset(text, i, std::string::npos),
              "row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    rows[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = parse_entry(row[j], text, i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail_at(text, entry_offset(text, i, j), "entry is not finite");
      }
      rows[i].push_back(z);
    }
  }
  return CMatrix::from_rows(rows);
}

CMatrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(offset, end - offset);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') {
      std::vector<Complex> row;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) comma = line.size();
        std::size_t a = start;
        std::size_t b = comma;
        while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data() + a, line.data() + b, value);
        if (a == b || ec != std::errc() || ptr != line.data() + b || !std::isfinite(value)) {
          fail_at(text, offset + a, "expected a finite real number");
        }
        row.emplace_back(value, 0.0);
        if (comma == line.size()) break;
        start = comma + 1;
      }
      if (!rows.empty() && row.size() != rows.front().size()) {
        fail_at(text, offset, "row has " + std::to_string(row.size()) + " values, expected " +
                                  std::to_string(rows.front().size()));
      }
      rows.push_back(std::move(row));
    }
    offset = end + 1;
  }
  if (rows.empty()) throw ParseError("empty CSV matrix", 1, 1);
  if (rows.size() != rows.front().size()) {
    fail_at(text, text.size(), "CSV matrix is " + std::to_string(rows.size()) + " x " +
                                   std::to_string(rows.front().size()) + ", not square");
  }
  return CMatrix::from_rows(rows);
}

CMatrix parse_matrix(const std::string& text, MatrixFormat format) {
  if (format == MatrixFormat::automatic) {
    const std::size_t i = skip_ws(text, 0);
    format = i < text.size() && text[i] == '{' ? MatrixFormat::json : MatrixFormat::csv;
  }
  return format == MatrixFormat::json ? parse_matrix_json(text) : parse_matrix_csv(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const MatrixFormat format =
      path.extension() == ".csv" ? MatrixFormat::csv : MatrixFormat::automatic;
  return parse_matrix(text, format);
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.order(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.order(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.order()}, {"entries", std::move(rows)}};
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

Json to_json(const SearchResult& r) {
  Json out{{"status", r.kind == SearchResult::Kind::found       ? "found"
                      : r.kind == SearchResult::Kind::not_found ? "inconclusive"
                                                                : "aborted"},
           {"k", r.k}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json to_json(const Spectrum& s) {
  Json eig = Json::array();
  for (const Complex& z : s.eigenvalues) eig.push_back(to_json(z));
  Json distinct = Json::array();
  for (const auto& c : s.distinct) {
    distinct.push_back({{"value", to_json(c.value)}, {"multiplicity", c.multiplicity}});
  }
  return Json{{"eigenvalues", std::move(eig)},
              {"distinct", std::move(distinct)},
              {"rho", s.rho},
              {"cluster_radius", s.cluster_radius}};
}

Json to_json(const ClauseReport& c) {
  return Json{{"id", c.clause_id}, {"status", to_string(c.status)}, {"detail", c.detail}};
}

Json to_json(const EventualCertificate& c) {
  return Json{{"kind", "eventually_nonnegative"},
              {"nu", c.nu},
              {"k", c.k},
              {"q", c.q},
              {"nu_prime", c.nu_prime},
              {"k_prime", c.k_prime},
              {"F", c.F},
              {"verified_window", c.verified_window}};
}

Json to_json(const SimilarityResult& r) {
  Json out{{"kind", to_string(r.kind)},
           {"transformed", to_json(r.transformed)},
           {"row_sum_residual", r.row_sum_residual},
           {"column_sum_residual", r.column_sum_residual},
           {"pattern_preserved", r.pattern_preserved},
           {"nu_preserved", r.nu_preserved},
           {"nu_input", to_json(r.nu_input)},
           {"nu_transformed", to_json(r.nu_transformed)}};
  if (r.diagonal) out["diagonal"] = to_json(*r.diagonal);
  if (r.S) {
    out["S"] = to_json(*r.S);
    out["sx_residual"] = r.sx_residual;
    out["ste_residual"] = r.ste_residual;
  }
  return out;
}

Json to_json(const MTypeScanResult& r) {
  Json witnesses = Json::array();
  for (const Complex& z : r.witnesses) witnesses.push_back(to_json(z));
  Json singular = Json::array();
  for (const Complex& z : r.singular) singular.push_back(to_json(z));
  return Json{{"lambda1", to_json(r.lambda1)},
              {"grid_size", r.grid.size()},
              {"witnesses", std::move(witnesses)},
              {"singular", std::move(singular)},
              {"max_eps_on_grid", r.max_eps_on_grid ? Json(*r.max_eps_on_grid) : Json(nullptr)}};
}

std::string to_csv(const CMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  for (Index i = 0; i < m.order(); ++i) {
    for (Index j = 0; j < m.order(); ++j) {
      if (m(i, j).imag() != 0.0) throw InvalidMatrix("CSV output needs a real matrix");
      os << (j ? "," : "") << m(i, j).real();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace powermat
