#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "powermat/exponents.hpp"
#include "powermat/gallery.hpp"
#include "powermat/io.hpp"
#include "powermat/pattern.hpp"
#include "powermat/spectral.hpp"
#include "powermat/theorems.hpp"
#include "powermat/transforms.hpp"

namespace powermat::cli {

namespace fs = std::filesystem;

namespace {

using Status = ClauseReport::Status;

const char* command_name(Command c) {
  switch (c) {
    case Command::classify:
      return "classify";
    case Command::exponents:
      return "exponents";
    case Command::spectrum:
      return "spectrum";
    case Command::verify:
      return "verify";
    case Command::transform:
      return "transform";
    case Command::certify:
      return "certify";
    case Command::mtype:
      return "mtype";
    case Command::gallery:
      return "gallery";
  }
  return "?";
}

struct LoadedMatrix {
  std::string id;
  CMatrix matrix;
};

/// Input-side failure: reported with exit code 3.
struct InputFailure {
  std::string id;
  Json error;
};

Json error_json(const std::string& kind, const std::exception& e) {
  Json j{{"kind", kind}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe != nullptr && pe->line() > 0) {
    j["line"] = pe->line();
    j["column"] = pe->column();
  }
  return j;
}

GalleryEntry build_gallery_input(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string id = spec.substr(0, colon);
  std::string full = spec;
  // Seeded families take the run seed unless the spec pins one.
  if (id == "rotated-nonneg" && spec.find("seed=") == std::string::npos) {
    full += (colon == std::string::npos ? ":" : ",") + std::string("seed=") + std::to_string(seed);
  }
  return build_from_spec(full);
}

LoadedMatrix load(const std::string& path, std::uint64_t seed, std::istream& in) {
  if (path.rfind("gallery:", 0) == 0) {
    GalleryEntry e = build_gallery_input(path.substr(8), seed);
    return {e.id, e.matrix};
  }
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return {"stdin", parse_matrix(ss.str())};
  }
  return {fs::path(path).filename().string(), read_matrix_file(path)};
}

unsigned resolve_k_max(const RunConfig& c, Index n) {
  if (c.k_max) return *c.k_max;
  if (const char* env = std::getenv("POWERMAT_KMAX"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 1 && v <= 1000000) return static_cast<unsigned>(v);
    throw InvalidParams("POWERMAT_KMAX must be an integer in [1, 1000000]");
  }
  return default_k_max(n);
}

int clauses_exit(const std::vector<ClauseReport>& clauses) {
  int code = kPass;
  for (const auto& c : clauses) {
    if (c.status == Status::fail) code = merge_exit(code, kFail);
    if (c.status == Status::inconclusive) code = merge_exit(code, kInconclusive);
  }
  return code;
}

Json clauses_json(const std::vector<ClauseReport>& clauses) {
  Json out = Json::array();
  for (const auto& c : clauses) out.push_back(to_json(c));
  return out;
}

void append(std::vector<ClauseReport>& to, const std::vector<ClauseReport>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

Json label(const std::string& name, const Json& value, const std::string& evidence,
           const std::string& detail = {}) {
  Json j{{"label", name}, {"value", value}, {"evidence", evidence}};
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

Json exponents_json(const ExponentReport& r) {
  Json j{{"nu", to_json(r.nu)},
         {"pi", to_json(r.pi)},
         {"least_irreducible_nonneg_power", to_json(r.least_irreducible_nonneg_power)},
         {"k_max", r.k_max}};
  j["gamma"] = r.gamma ? to_json(*r.gamma) : Json(nullptr);
  return j;
}

// ---- verifiers ----------------------------------------------------------------

ClauseReport cesaro_clause(const CMatrix& m, unsigned k_max, unsigned K,
                           const ToleranceConfig& tol) {
  if (!least_irreducible_nonneg_power(m, k_max, tol).found()) {
    return {"T4", Status::inapplicable, "no nonnegative irreducible power within k_max"};
  }
  const SearchResult nu = nonneg_exponent(m, k_max, tol);
  const EigenTriple t = dominant_eigentriple(m, nu.k, tol);
  const CesaroResult r = cesaro_limit(m, t.lambda1, K, tol);
  const bool positive = is_positive(r.target, tol);
  std::ostringstream d;
  d << "K = " << K << ", err = " << r.err << ", limit positive " << (positive ? "yes" : "no");
  return {"T4", positive && r.err <= 1e-3 ? Status::pass : Status::fail, d.str()};
}

std::vector<ClauseReport> irr_clauses(const CMatrix& m, unsigned m_max,
                                      const ToleranceConfig& tol) {
  if (!is_nonnegative(m, tol) || !is_irreducible(m, tol)) {
    return {{"irr", Status::inapplicable, "needs a nonnegative irreducible matrix"}};
  }
  return check_irreducible_power_sequence(m, m_max, tol).reports;
}

std::vector<ClauseReport> run_verifiers(const CMatrix& m, const std::string& theorem,
                                        unsigned k_max, const RunConfig& c) {
  const bool all = theorem == "all";
  std::vector<ClauseReport> out;
  bool matched = false;
  auto want = [&](const char* name) {
    const bool hit = all || theorem == name;
    matched = matched || hit;
    return hit;
  };
  if (want("power-nonneg")) append(out, verify_power_nonneg_theorem(m, k_max, c.tol));
  if (want("power-positive")) append(out, verify_power_positive_theorem(m, k_max, c.tol));
  if (want("cesaro")) out.push_back(cesaro_clause(m, k_max, c.cesaro_k, c.tol));
  if (want("irr")) append(out, irr_clauses(m, c.irr_m_max, c.tol));
  if (want("real")) append(out, check_real_equivalences(m, k_max, c.tol));
  if (want("nilpotent")) out.push_back(check_nilpotent_lemma(m, k_max, c.tol));
  if (want("weakly-stochastic")) out.push_back(check_weakly_stochastic_corollary(m, k_max, c.tol));
  if (want("eventual-perron")) out.push_back(check_eventual_perron(m, k_max, c.tol));
  if (want("distinct-powers")) out.push_back(check_distinct_powers(m, c.tol));
  if (!matched) throw InvalidParams("unknown theorem '" + theorem + "'");
  return out;
}

// ---- commands -----------------------------------------------------------------

int cmd_classify(const CMatrix& m, unsigned k_max, const RunConfig& c, Json& rep) {
  const ToleranceConfig& tol = c.tol;
  PowerCache cache(m);
  const ExponentReport er = exponent_report(m, k_max, tol);
  rep["exponents"] = exponents_json(er);
  if (m.order() <= kMaxSpectrumOrder) rep["spectrum"] = to_json(spectrum(m, tol));
  const auto cycle = detect_power_cycle(cache, k_max, tol);
  if (cycle) {
    rep["power_cycle"] = {{"start", cycle->start},
                          {"period", cycle->period},
                          {"has_non_nonnegative_member", cycle->has_non_nonnegative_member}};
  }

  Json labels = Json::array();
  labels.push_back(label("irreducible", is_irreducible(m, tol), "pattern"));
  if (is_nonnegative(m, tol)) labels.push_back(label("primitive", is_primitive(m, tol), "pattern"));

  const bool nilpotent = is_nilpotent(m, tol);
  const bool cycle_disproves = cycle && cycle->has_non_nonnegative_member;
  if (er.nu.found()) {
    labels.push_back(label("power_nonnegative", true, "witness", "nu = " + std::to_string(er.nu.k)));
  } else {
    labels.push_back(label("power_nonnegative", nullptr, "inconclusive", "nu " + er.nu.to_string()));
  }
  if (er.pi.found()) {
    labels.push_back(label("power_positive", true, "witness", "pi = " + std::to_string(er.pi.k)));
  } else if (nilpotent) {
    labels.push_back(label("power_positive", false, "nilpotent", "A^n = O"));
  } else if (cycle) {
    bool any_positive = false;
    for (unsigned j = cycle->start; j < cycle->start + cycle->period; ++j) {
      const CMatrix* p = cache.power(j);
      any_positive = any_positive || (p != nullptr && is_positive(*p, tol));
    }
    if (!any_positive) {
      labels.push_back(label("power_positive", false, "cycle", "no positive power in the cycle"));
    } else {
      labels.push_back(label("power_positive", nullptr, "inconclusive", "pi " + er.pi.to_string()));
    }
  } else {
    labels.push_back(label("power_positive", nullptr, "inconclusive", "pi " + er.pi.to_string()));
  }

  const CertificateOutcome cert = certify_eventually_nonneg(m, k_max, tol);
  std::optional<EventualPositivity> ep;
  if (m.order() <= kMaxSpectrumOrder) ep = eventually_positive(m, tol);
  Json certificates = Json::array();
  if (cert.certificate) certificates.push_back(to_json(*cert.certificate));

  if (nilpotent) {
    labels.push_back(label("eventually_nonnegative", true, "nilpotent", "A^n = O"));
  } else if (cert.certificate && cert.certificate->q == 1) {
    labels.push_back(label("eventually_nonnegative", true, "certificate", cert.reason));
  } else if (ep && ep->value) {
    labels.push_back(label("eventually_nonnegative", true, "gap_bound", ep->detail));
  } else if (cycle_disproves) {
    labels.push_back(label("eventually_nonnegative", false, "cycle",
                           "certificate route: " + cert.reason + "; periodic powers include a "
                           "non-nonnegative member"));
  } else {
    labels.push_back(label("eventually_nonnegative", nullptr, "empirical", cert.reason));
  }
  if (ep && ep->value) {
    labels.push_back(label("eventually_positive", true, "gap_bound", ep->detail));
  } else if (nilpotent) {
    labels.push_back(label("eventually_positive", false, "nilpotent", "A^n = O"));
  } else if (cycle) {
    labels.push_back(label("eventually_positive", false, "cycle", "powers are periodic"));
  } else {
    labels.push_back(label("eventually_positive", nullptr, "empirical",
                           ep ? ep->detail : "spectrum unavailable"));
  }
  rep["labels"] = labels;
  rep["certificates"] = certificates;

  std::vector<ClauseReport> clauses;
  append(clauses, verify_power_nonneg_theorem(m, k_max, tol));
  if (m.order() <= kMaxSpectrumOrder) {
    append(clauses, verify_power_positive_theorem(m, k_max, tol));
    append(clauses, check_real_equivalences(m, k_max, tol));
    clauses.push_back(check_nilpotent_lemma(m, k_max, tol));
    clauses.push_back(check_weakly_stochastic_corollary(m, k_max, tol));
    clauses.push_back(check_eventual_perron(m, k_max, tol));
  }
  rep["clauses"] = clauses_json(clauses);

  int code = kPass;
  for (const auto& cl : clauses) {
    if (cl.status == Status::fail) code = kFail;
  }
  if (code == kPass && !er.nu.found() && !cycle_disproves) code = kInconclusive;
  return code;
}

int cmd_exponents(const CMatrix& m, unsigned k_max, const RunConfig& c, Json& rep) {
  const ExponentReport er = exponent_report(m, k_max, c.tol);
  rep["exponents"] = exponents_json(er);
  return er.nu.found() && er.pi.found() ? kPass : kInconclusive;
}

int cmd_spectrum(const CMatrix& m, const RunConfig& c, Json& rep) {
  rep["spectrum"] = to_json(spectrum(m, c.tol));
  return kPass;
}

int cmd_verify(const CMatrix& m, unsigned k_max, const RunConfig& c, Json& rep) {
  const auto clauses = run_verifiers(m, c.theorem, k_max, c);
  rep["theorem"] = c.theorem;
  rep["clauses"] = clauses_json(clauses);
  return clauses_exit(clauses);
}

int cmd_transform(const CMatrix& m, unsigned k_max, const RunConfig& c, Json& rep) {
  rep["kind"] = c.kind;
  const double bound = 1e-10 * static_cast<double>(m.order());
  std::vector<ClauseReport> checks;
  std::optional<SimilarityResult> result;
  if (c.kind == "classify") {
    const StochasticClassification sc = classify_stochastic_similarity(m, k_max, c.tol);
    rep["reason"] = sc.reason;
    result = sc.result;
  } else {
    if (c.kind != "row" && c.kind != "column" && c.kind != "doubly") {
      throw InvalidParams("unknown transform kind '" + c.kind + "'");
    }
    const SearchResult nu = nonneg_exponent(m, k_max, c.tol);
    if (!nu.found()) {
      rep["reason"] = "nu " + nu.to_string();
      rep["clauses"] = Json::array();
      return kInconclusive;
    }
    try {
      const EigenTriple t = dominant_eigentriple(m, nu.k, c.tol);
      result = c.kind == "row"      ? row_stochastic_similar(m, t, c.tol, k_max)
               : c.kind == "column" ? column_stochastic_similar(m, t, c.tol, k_max)
                                    : doubly_stochastic_similar(m, t, c.tol, k_max);
      rep["reason"] = "applied";
    } catch (const HypothesisViolation& e) {
      rep["reason"] = e.what();
    } catch (const AmbiguousDominant& e) {
      rep["reason"] = e.what();
    } catch (const IllConditioned& e) {
      rep["reason"] = e.what();
      rep["clauses"] = Json::array();
      return kInconclusive;
    }
  }
  rep["applicable"] = result.has_value();
  if (result) {
    rep["result"] = to_json(*result);
    using K = SimilarityResult::Kind;
    auto check = [&](const char* id, bool ok, double value) {
      std::ostringstream d;
      d << value;
      checks.push_back({id, ok ? Status::pass : Status::fail, d.str()});
    };
    if (result->kind == K::row_stochastic || result->kind == K::doubly_stochastic) {
      check("row_sums", result->row_sum_residual <= bound, result->row_sum_residual);
    }
    if (result->kind == K::column_stochastic || result->kind == K::doubly_stochastic) {
      check("column_sums", result->column_sum_residual <= bound, result->column_sum_residual);
    }
    if (result->kind == K::doubly_stochastic) {
      check("Sx=e", result->sx_residual <= 1e-10, result->sx_residual);
      check("S^Te=ny", result->ste_residual <= 1e-10, result->ste_residual);
    } else if (result->kind == K::nilpotent_zero_rowsum) {
      check("zero_row_sums", result->row_sum_residual <= threshold(m, c.tol) * static_cast<double>(m.order()),
            result->row_sum_residual);
      checks.push_back({"pattern", result->pattern_preserved ? Status::pass : Status::fail, ""});
    } else {
      checks.push_back({"pattern", result->pattern_preserved ? Status::pass : Status::fail, ""});
      checks.push_back({"nu", result->nu_preserved ? Status::pass : Status::fail,
                        "nu(transformed) " + result->nu_transformed.to_string() +
                            ", nu(A/lambda1) " + result->nu_input.to_string()});
    }
  }
  rep["clauses"] = clauses_json(checks);
  return clauses_exit(checks);
}

int cmd_certify(const CMatrix& m, unsigned k_max, const RunConfig& c, Json& rep) {
  const CertificateOutcome cert = certify_eventually_nonneg(m, k_max, c.tol);
  rep["reason"] = cert.reason;
  rep["certificates"] = Json::array();
  if (cert.certificate) {
    rep["certificates"].push_back(to_json(*cert.certificate));
    return kPass;
  }
  if (const auto cycle = detect_power_cycle(m, k_max, c.tol)) {
    rep["power_cycle"] = {{"start", cycle->start},
                          {"period", cycle->period},
                          {"has_non_nonnegative_member", cycle->has_non_nonnegative_member}};
  }
  return cert.reason.rfind("window check failed", 0) == 0 ? kFail : kInconclusive;
}

int cmd_mtype(const CMatrix& m, unsigned k_max, const RunConfig& c, Json& rep) {
  unsigned k = c.mtype_k;
  if (k == 0) {
    const SearchResult r = least_irreducible_nonneg_power(m, k_max, c.tol);
    if (!r.found()) {
      rep["reason"] = "no nonnegative irreducible power: " + r.to_string();
      rep["clauses"] = Json::array();
      return kInconclusive;
    }
    k = r.k;
  }
  const MTypeScanResult r = m_type_scan(m, k, c.grid_radii, c.grid_angles, c.tol);
  rep["k"] = k;
  rep["scan"] = to_json(r);
  const ClauseReport cl{"T5", r.witnesses.empty() ? Status::inconclusive : Status::pass,
                        std::to_string(r.witnesses.size()) + " witnesses on " +
                            std::to_string(r.grid.size()) + " shifts"};
  rep["clauses"] = clauses_json({cl});
  return clauses_exit({cl});
}

std::string file_safe(const std::string& id) {
  std::string s = id;
  for (char& ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.' ||
          ch == '=')) {
      ch = '_';
    }
  }
  return s;
}

int cmd_gallery(const RunConfig& c, std::ostream& out) {
  Json rep{{"schema", 1}};
  int code = kPass;
  if (c.gallery_action == "list") {
    Json items = Json::array();
    for (const auto& item : catalog()) {
      items.push_back({{"id", item.id}, {"params", item.params}, {"summary", item.summary}});
    }
    rep["catalog"] = items;
  } else if (c.gallery_action == "emit" || c.gallery_action == "check") {
    if (c.gallery_id.empty()) throw InvalidParams("gallery " + c.gallery_action + " needs an id");
    const GalleryEntry e = build_gallery_input(c.gallery_id, c.seed);
    Json expectations = Json::array();
    for (const auto& x : e.expectations) expectations.push_back(to_json(x));
    rep["matrix_id"] = e.id;
    rep["provenance"] = e.provenance;
    if (c.gallery_action == "emit") {
      if (!c.output.empty()) {
        fs::create_directories(c.output);
        const fs::path base = fs::path(c.output) / file_safe(e.id);
        write_text_file(base.string() + ".json", to_json(e.matrix).dump(2) + "\n");
        write_text_file(base.string() + ".expectations.json",
                        Json{{"matrix_id", e.id}, {"expectations", expectations}}.dump(2) + "\n");
        rep["files"] = {base.string() + ".json", base.string() + ".expectations.json"};
      } else {
        rep["matrix"] = to_json(e.matrix);
        rep["expectations"] = expectations;
      }
    } else {
      std::vector<ClauseReport> clauses;
      const unsigned k_max = resolve_k_max(c, e.matrix.order());
      for (const auto& x : e.expectations) clauses.push_back(evaluate_expectation(e, x, k_max, c.tol));
      rep["clauses"] = clauses_json(clauses);
      code = clauses_exit(clauses);
    }
  } else {
    throw InvalidParams("unknown gallery action '" + c.gallery_action + "'");
  }
  const std::string text = rep.dump(2) + "\n";
  if (!c.output.empty() && c.gallery_action != "emit") {
    write_text_file(c.output, text);
  } else {
    out << text;
  }
  return code;
}

/// Full report for one input; never throws.
std::pair<int, Json> analyze_one(const std::string& path, const RunConfig& c, std::istream& in) {
  Json rep{{"schema", 1}, {"command", command_name(c.command)}};
  std::optional<LoadedMatrix> loaded;
  try {
    loaded = load(path, c.seed, in);
  } catch (const ParseError& e) {
    rep["matrix_id"] = path == "-" ? "stdin" : fs::path(path).filename().string();
    rep["error"] = error_json("parse", e);
    return {kInputError, rep};
  } catch (const IoError& e) {
    rep["matrix_id"] = fs::path(path).filename().string();
    rep["error"] = error_json("io", e);
    return {kInputError, rep};
  } catch (const Error& e) {
    rep["matrix_id"] = path;
    rep["error"] = error_json("input", e);
    return {kInputError, rep};
  }
  rep["matrix_id"] = loaded->id;
  rep["n"] = loaded->matrix.order();
  rep["clauses"] = Json::array();
  rep["certificates"] = Json::array();
  try {
    const CMatrix& m = loaded->matrix;
    const unsigned k_max = resolve_k_max(c, m.order());
    rep["k_max"] = k_max;
    int code = kPass;
    switch (c.command) {
      case Command::classify:
        code = cmd_classify(m, k_max, c, rep);
        break;
      case Command::exponents:
        code = cmd_exponents(m, k_max, c, rep);
        break;
      case Command::spectrum:
        code = cmd_spectrum(m, c, rep);
        break;
      case Command::verify:
        code = cmd_verify(m, k_max, c, rep);
        break;
      case Command::transform:
        code = cmd_transform(m, k_max, c, rep);
        break;
      case Command::certify:
        code = cmd_certify(m, k_max, c, rep);
        break;
      case Command::mtype:
        code = cmd_mtype(m, k_max, c, rep);
        break;
      case Command::gallery:
        break;
    }
    return {code, rep};
  } catch (const InvalidParams& e) {
    rep["error"] = error_json("params", e);
    return {kInputError, rep};
  } catch (const Error& e) {
    rep["error"] = error_json("analysis", e);
    return {kInconclusive, rep};
  }
}

std::vector<std::string> batch_files(const fs::path& dir) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".expectations.json")) continue;
    if (ext == ".json" || ext == ".csv") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int merge_exit(int a, int b) {
  auto rank = [](int code) {
    switch (code) {
      case kFail:
        return 3;
      case kInputError:
        return 2;
      case kInconclusive:
        return 1;
      default:
        return 0;
    }
  };
  return rank(b) > rank(a) ? b : a;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.tol.validate();
    if (config.jobs < 1) throw InvalidParams("jobs must be >= 1");
    if (config.k_max && *config.k_max < 1) throw InvalidParams("kmax must be >= 1");
    if (config.command == Command::gallery) return cmd_gallery(config, out);

    int code = kPass;
    Json report;
    const std::string& path = config.input_path;
    if (path != "-" && path.rfind("gallery:", 0) != 0 && fs::is_directory(path)) {
      const std::vector<std::string> files = batch_files(path);
      std::vector<std::pair<int, Json>> results(files.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        std::istringstream no_stdin;
        for (std::size_t i = next++; i < files.size(); i = next++) {
          results[i] = analyze_one(files[i], config, no_stdin);
        }
      };
      const unsigned workers =
          std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(files.size())));
      std::vector<std::thread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
        return a.second.at("matrix_id").template get<std::string>() <
               b.second.at("matrix_id").template get<std::string>();
      });
      Json entries = Json::array();
      for (auto& [c, r] : results) {
        code = merge_exit(code, c);
        entries.push_back(std::move(r));
      }
      report = Json{{"schema", 1}, {"command", command_name(config.command)}, {"entries", entries}};
      report["exit_code"] = code;
    } else {
      auto [c, r] = analyze_one(path, config, std::cin);
      code = c;
      report = std::move(r);
      report["exit_code"] = code;
      if (report.contains("error")) err << "error: " << report["error"]["message"].get<std::string>() << "\n";
    }
    const std::string text = report.dump(2) + "\n";
    if (config.output.empty()) {
      out << text;
    } else {
      write_text_file(config.output, text);
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"powermat: power nonnegative and power positive matrix analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  unsigned k_max = 0;
  app.add_option("--tol-abs", cfg.tol.abs_tol, "absolute sign threshold")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-rel", cfg.tol.rel_tol, "relative sign threshold")->check(CLI::NonNegativeNumber);
  app.add_option("--eig-tol", cfg.tol.eig_cluster_tol, "eigenvalue cluster tolerance")
      ->check(CLI::NonNegativeNumber);
  auto* kmax_opt = app.add_option("--kmax", k_max, "power search bound (env POWERMAT_KMAX)")
                       ->check(CLI::Range(1u, 1000000u));
  app.add_option("--seed", cfg.seed, "seed for random gallery families");
  app.add_option("--jobs", cfg.jobs, "worker threads for batch directories")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", cfg.output, "write the report to this path");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "matrix file, directory, '-' or gallery:<id>[:k=v,...]");
  };
  auto* classify = app.add_subcommand("classify", "full pipeline with taxonomy labels");
  add_input(classify);
  auto* exponents = app.add_subcommand("exponents", "nu, pi, gamma and least irreducible power");
  add_input(exponents);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "clustered spectrum");
  add_input(spectrum_cmd);
  auto* verify = app.add_subcommand("verify", "per-clause theorem verification");
  add_input(verify);
  verify->add_option("--theorem", cfg.theorem, "power-nonneg|power-positive|cesaro|irr|real|nilpotent|"
                                               "weakly-stochastic|eventual-perron|distinct-powers|all");
  verify->add_option("--cesaro-k", cfg.cesaro_k, "averaging length for cesaro");
  verify->add_option("--irr-m", cfg.irr_m_max, "largest m for irr");
  auto* transform = app.add_subcommand("transform", "stochastic similarity transforms");
  add_input(transform);
  transform->add_option("--kind", cfg.kind, "row|column|doubly|classify");
  auto* certify = app.add_subcommand("certify", "eventual nonnegativity certificate");
  add_input(certify);
  auto* mtype = app.add_subcommand("mtype", "resolvent real-part scan near lambda1");
  add_input(mtype);
  mtype->add_option("--k", cfg.mtype_k, "exponent with A^k nonnegative irreducible (0: search)");
  mtype->add_option("--radii", cfg.grid_radii, "radial grid points")->check(CLI::Range(1, 10000));
  mtype->add_option("--angles", cfg.grid_angles, "angular grid points")->check(CLI::Range(1, 10000));
  auto* gallery = app.add_subcommand("gallery", "list, emit or check catalog entries");
  gallery->add_option("action", cfg.gallery_action, "list|emit|check");
  gallery->add_option("id", cfg.gallery_id, "entry id, optionally id:k=v,...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  }
  if (kmax_opt->count() > 0) cfg.k_max = k_max;

  const std::vector<std::pair<CLI::App*, Command>> subs = {
      {classify, Command::classify}, {exponents, Command::exponents},
      {spectrum_cmd, Command::spectrum}, {verify, Command::verify},
      {transform, Command::transform}, {certify, Command::certify},
      {mtype, Command::mtype}, {gallery, Command::gallery}};
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) cfg.command = cmd;
  }
  return run(cfg, out, err);
}

}  // namespace powermat::cli
