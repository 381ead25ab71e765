#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "powermat/exponents.hpp"
#include "powermat/matrix.hpp"
#include "powermat/spectral.hpp"
#include "powermat/theorems.hpp"
#include "powermat/transforms.hpp"

namespace powermat {

using Json = nlohmann::json;

enum class MatrixFormat { automatic, json, csv };

/// {"n": <int>, "entries": [[[re, im] | re, ...], ...]}. Throws ParseError
/// with a 1-based line/column for syntax errors and misplaced entries.
CMatrix parse_matrix_json(const std::string& text);

/// n lines of n comma-separated reals; blank lines and '#' comments skipped.
CMatrix parse_matrix_csv(const std::string& text);

/// automatic picks JSON when the first non-blank character is '{'.
CMatrix parse_matrix(const std::string& text, MatrixFormat format = MatrixFormat::automatic);

/// Reads a file (".csv" selects CSV, anything else auto-detects). Throws IoError.
CMatrix read_matrix_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const CMatrix& m);
Json to_json(const CVector& v);
Json to_json(Complex z);
Json to_json(const SearchResult& r);
Json to_json(const Spectrum& s);
Json to_json(const ClauseReport& c);
Json to_json(const EventualCertificate& c);
Json to_json(const SimilarityResult& r);
Json to_json(const MTypeScanResult& r);

/// Real matrix as CSV; throws InvalidMatrix when an entry has an imaginary part.
std::string to_csv(const CMatrix& m);

}  // namespace powermat
