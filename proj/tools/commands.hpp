#pragma once

// Command implementations behind the convex1d executable. Each runner
// writes its document to `out`, diagnostics to `err`, and returns the exit
// code, so tests can drive them without a subprocess.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convex1d/convex1d.hpp"

namespace convex1d::cli {

using Json = nlohmann::ordered_json;

namespace exit_code {
inline constexpr int feasible = 0;
inline constexpr int infeasible = 1;
inline constexpr int unsupported = 2;
inline constexpr int size_limit = 3;
inline constexpr int usage = 64;
inline constexpr int self_check = 70;
}  // namespace exit_code

enum class Format { text, structured };

struct Options {
  std::string file;
  Geometry geometry = Geometry::line;
  Density density = Density::sparse;
  bool multiset = false;
  std::size_t max_n = 5;
  std::optional<std::size_t> max_k;
  bool oracle = false;
  Format format = Format::text;
  std::string to = "arbitrary";
};

// ---------------------------------------------------------------------------
// Code files

/// One codeword per line, optionally preceded by a positive count. Blank
/// lines and text after '#' are ignored.
inline CodeMultiset parse_code_file(std::istream& in) {
  std::optional<CodeMultiset> ms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() > 2) throw ParseError(lineno, "expected 'codeword' or 'count codeword'");
    std::size_t count = 1;
    if (tok.size() == 2) {
      const auto& c = tok[0];
      if (c.empty() || c.find_first_not_of("0123456789") != std::string::npos || c.size() > 9) {
        throw ParseError(lineno, "count '" + c + "' is not a positive integer");
      }
      count = std::stoul(c);
      if (count == 0) throw ParseError(lineno, "count must be positive");
    }
    const auto& word = tok.back();
    if (word.find_first_not_of("01") != std::string::npos) {
      throw ParseError(lineno, "codeword '" + word + "' has characters other than 0 and 1");
    }
    if (!ms) ms.emplace(word.size());
    if (word.size() != ms->word_length()) {
      throw ParseError(lineno, "codeword length " + std::to_string(word.size()) + " differs from " +
                                   std::to_string(ms->word_length()));
    }
    ms->add(BitVector::from_string(word), count);
  }
  return ms ? *ms : CodeMultiset(0);
}

inline CodeMultiset read_code_file(const std::string& path) {
  if (path == "-") return parse_code_file(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_code_file(in);
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const std::vector<BitVector>& words) {
  Json a = Json::array();
  for (const auto& w : words) a.push_back(w.to_string());
  return a;
}

inline Json matrix_json(const SensorMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m.row_strings()) a.push_back(r);
  return a;
}

inline Json endpoint_json(const Endpoint& e, bool low) {
  if (e.infinite) return low ? "-inf" : "+inf";
  return to_string(e.value);
}

inline Json interval_json(const Interval1D& iv) {
  Json j;
  switch (iv.kind) {
    case IntervalKind::empty: j["kind"] = "empty"; return j;
    case IntervalKind::whole: j["kind"] = "whole"; return j;
    case IntervalKind::proper: break;
  }
  j["kind"] = "proper";
  j["lo"] = endpoint_json(iv.lo, true);
  j["lo_closed"] = iv.lo.closed && !iv.lo.infinite;
  j["hi"] = endpoint_json(iv.hi, false);
  j["hi_closed"] = iv.hi.closed && !iv.hi.infinite;
  return j;
}

inline Json arrangement_json(const IntervalArrangement& arr) {
  Json j;
  j["geometry"] = std::string(to_string(arr.geometry()));
  j["intervals"] = Json::array();
  for (const auto& iv : arr.intervals()) j["intervals"].push_back(interval_json(iv));
  return j;
}

inline Json sensors_json(const SensorSet& s) {
  Json a = Json::array();
  for (const auto& p : s.positions()) a.push_back(to_string(p));
  return a;
}

inline Json certificate_json(const RejectionCertificate& c) {
  Json j;
  j["odd_cycle"] = Json::array();
  for (const auto& p : c.cycle) j["odd_cycle"].push_back({p.first.to_string(), p.second.to_string()});
  j["edges"] = Json::array();
  for (const auto& e : c.edges) {
    Json ej;
    ej["kind"] = e.kind == EdgeKind::reversal ? "reversal" : "betweenness";
    if (e.kind == EdgeKind::betweenness) ej["witness_row"] = e.witness_row;
    j["edges"].push_back(ej);
  }
  return j;
}

namespace detail {

inline Endpoint parse_endpoint(const Json& j, const Json& closed, bool low) {
  if (!j.is_string()) throw ParseError(0, "interval ends must be strings");
  const auto s = j.get<std::string>();
  if (s == (low ? "-inf" : "+inf")) return {Rational(0), false, true};
  return {parse_rational(s), closed.is_boolean() && closed.get<bool>(), false};
}

inline Geometry parse_geometry(const std::string& s) {
  if (s == "line") return Geometry::line;
  if (s == "circle") return Geometry::circle;
  throw ParseError(0, "unknown geometry '" + s + "'");
}

}  // namespace detail

/// Reads the document produced by `realize`: an "arrangement" object (or
/// the arrangement itself at top level) plus a "sensors" array.
inline std::pair<IntervalArrangement, SensorSet> parse_arrangement_doc(const Json& doc) {
  try {
    const Json& a = doc.contains("arrangement") ? doc.at("arrangement") : doc;
    const Geometry g = detail::parse_geometry(a.at("geometry").get<std::string>());
    IntervalArrangement arr(g);
    for (const auto& iv : a.at("intervals")) {
      const auto kind = iv.at("kind").get<std::string>();
      if (kind == "empty") {
        arr.add(Interval1D::empty());
      } else if (kind == "whole") {
        arr.add(Interval1D::whole());
      } else if (kind == "proper") {
        Interval1D p;
        p.kind = IntervalKind::proper;
        p.lo = detail::parse_endpoint(iv.at("lo"), iv.value("lo_closed", Json(false)), true);
        p.hi = detail::parse_endpoint(iv.at("hi"), iv.value("hi_closed", Json(false)), false);
        arr.add(std::move(p));
      } else {
        throw ParseError(0, "unknown interval kind '" + kind + "'");
      }
    }
    std::vector<Rational> pos;
    if (doc.contains("sensors")) {
      for (const auto& s : doc.at("sensors")) pos.push_back(parse_rational(s.get<std::string>()));
    }
    return {std::move(arr), SensorSet(std::move(pos), g)};
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("malformed arrangement document: ") + e.what());
  } catch (const DegenerateInterval& e) {
    throw ParseError(0, e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(0, e.what());
  }
}

// ---------------------------------------------------------------------------
// Text rendering

inline std::string pair_text(const ColumnPair& p) {
  return "(" + p.first.to_string() + ", " + p.second.to_string() + ")";
}

/// Renders the document as indented "key: value" lines; arrays of scalars
/// go one item per line.
inline void write_text(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << pad << key << ":\n";
      write_text(v, out, indent + 2);
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (const auto& item : v) {
        if (item.is_string()) {
          out << pad << "  " << item.get<std::string>() << '\n';
        } else if (item.is_object()) {
          std::string line;
          for (const auto& [k2, v2] : item.items()) {
            if (!line.empty()) line += "  ";
            line += k2 + "=" + (v2.is_string() ? v2.get<std::string>() : v2.dump());
          }
          out << pad << "  " << line << '\n';
        } else {
          out << pad << "  " << item.dump() << '\n';
        }
      }
    } else {
      out << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

inline void emit(const Json& doc, const Options& opt, std::ostream& out) {
  if (opt.format == Format::structured) {
    out << doc.dump(2) << '\n';
  } else {
    write_text(doc, out);
  }
}

[[noreturn]] inline void self_check_failed(const std::string& what) {
  throw std::logic_error("self-check failed: " + what);
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline Json header(const std::string& command, const Options& opt) {
  Json d;
  d["command"] = command;
  d["regime"] = std::string(regime_name({opt.geometry, opt.density}));
  d["geometry"] = std::string(to_string(opt.geometry));
  d["density"] = std::string(to_string(opt.density));
  return d;
}

struct Reconstruction {
  Status status = Status::infeasible;
  std::optional<SensorMatrix> matrix;
  std::optional<RejectionCertificate> certificate;
  std::string note;
};

inline Reconstruction reconstruct(const CodeMultiset& ms, const Options& opt) {
  Reconstruction r;
  const Code support = ms.support();
  if (opt.density == Density::dense && opt.geometry == Geometry::circle) {
    r.status = Status::unsupported;
    r.note = reconstruct_dense(support, Geometry::circle).note;
    return r;
  }
  if (opt.density == Density::sparse) {
    r.matrix = opt.multiset ? reconstruct_multiset_sparse(ms, opt.geometry) : reconstruct_sparse(support, opt.geometry);
  } else {
    auto mo = opt.multiset ? reconstruct_multiset_dense_linear(ms) : reconstruct_dense_linear(support);
    if (mo) r.matrix = mo->matrix(Geometry::line);
  }
  if (r.matrix) {
    r.status = Status::feasible;
    return r;
  }
  const bool co_feasible = co_order(support).has_value();
  if (!co_feasible) {
    auto cert = rejection_certificate(support);
    if (auto* c = std::get_if<RejectionCertificate>(&cert)) r.certificate = *c;
  }
  if (opt.geometry == Geometry::circle) {
    r.note = "no circular consecutive-ones ordering exists";
  } else if (!co_feasible) {
    r.note = "no consecutive-ones ordering exists";
  } else if (opt.density == Density::dense && !reconstruct_dense_linear(support)) {
    r.note = "an adjacent inharmonious pair has no meet in the code";
  } else {
    r.note = "the requested multiplicities are below the least any realization needs";
  }
  return r;
}

inline int status_exit(Status s) {
  switch (s) {
    case Status::feasible: return exit_code::feasible;
    case Status::infeasible: return exit_code::infeasible;
    case Status::unsupported: return exit_code::unsupported;
  }
  return exit_code::infeasible;
}

}  // namespace detail

inline int cmd_check(const Options& opt, std::ostream& out) {
  const CodeMultiset ms = read_code_file(opt.file);
  const auto r = detail::reconstruct(ms, opt);
  Json doc = detail::header("check", opt);
  doc["status"] = std::string(to_string(r.status));
  if (r.matrix) {
    if (!regime_check(*r.matrix, {opt.geometry, opt.density})) self_check_failed("matrix fails its regime");
    doc["matrix"] = matrix_json(*r.matrix);
  }
  if (r.certificate) {
    if (!verify_certificate(ms.support(), *r.certificate)) self_check_failed("certificate does not verify");
    doc["certificate"] = certificate_json(*r.certificate);
  }
  if (!r.note.empty()) doc["note"] = r.note;
  emit(doc, opt, out);
  return detail::status_exit(r.status);
}

inline int cmd_realize(const Options& opt, std::ostream& out) {
  const CodeMultiset ms = read_code_file(opt.file);
  const auto r = detail::reconstruct(ms, opt);
  Json doc = detail::header("realize", opt);
  doc["status"] = std::string(to_string(r.status));
  if (r.matrix) {
    const Regime regime{opt.geometry, opt.density};
    const auto real = realize_matrix(*r.matrix, regime);
    if (r.matrix->cols() > 0 && extract_code_sparse(real.arrangement, real.sensors).matrix != *r.matrix) {
      self_check_failed("sensors do not read back the matrix");
    }
    if (opt.density == Density::dense && extract_code_dense(real.arrangement) != ms.support()) {
      self_check_failed("dense code of the arrangement differs from the input code");
    }
    doc["matrix"] = matrix_json(*r.matrix);
    doc["arrangement"] = arrangement_json(real.arrangement);
    doc["sensors"] = sensors_json(real.sensors);
  }
  if (r.certificate) doc["certificate"] = certificate_json(*r.certificate);
  if (!r.note.empty()) doc["note"] = r.note;
  emit(doc, opt, out);
  return detail::status_exit(r.status);
}

inline int cmd_certificate(const Options& opt, std::ostream& out) {
  const Code code = read_code_file(opt.file).support();
  const auto result = rejection_certificate(code);
  Json doc;
  doc["command"] = "certificate";
  if (const auto* c = std::get_if<RejectionCertificate>(&result)) {
    if (!verify_certificate(code, *c)) self_check_failed("certificate does not verify");
    doc["status"] = "infeasible";
    doc["certificate"] = certificate_json(*c);
    emit(doc, opt, out);
    return exit_code::infeasible;
  }
  const auto& bp = std::get<Bipartition>(result);
  doc["status"] = "feasible";
  doc["vertices"] = bp.vertices.size();
  Json side = Json::array();
  for (std::size_t i = 0; i < bp.vertices.size(); ++i) {
    if (bp.colour[i] == 0) side.push_back(pair_text(bp.vertices[i]));
  }
  doc["side_0"] = side;
  emit(doc, opt, out);
  return exit_code::feasible;
}

inline int cmd_enumerate(const Options& opt, std::ostream& out, std::ostream& err) {
  const std::size_t N = opt.max_n;
  std::size_t K = opt.max_k.value_or(max_rows(N, opt.geometry));
  if (opt.oracle && N > kBruteForceMaxN) {
    throw SizeLimit("--oracle needs --max-n <= " + std::to_string(kBruteForceMaxN));
  }
  const CountTable t = opt.density == Density::sparse ? sparse_table(N, K, opt.geometry)
                                                      : gf_dense(N, K, opt.geometry);
  bool mismatch = false;
  if (opt.oracle) {
    for (std::size_t n = 0; n <= N; ++n) {
      const auto bf = opt.density == Density::sparse ? brute_force_sparse(n, opt.geometry)
                                                     : brute_force_dense(n, opt.geometry);
      for (std::size_t k = 0; k <= K; ++k) {
        const BigInt want = k < bf.size() ? bf[k] : BigInt(0);
        if (t.at(n, k) != want) {
          err << "oracle mismatch at n=" << n << " k=" << k << ": formula " << t.at(n, k) << ", brute force "
              << want << '\n';
          mismatch = true;
        }
      }
    }
  }
  if (opt.format == Format::structured) {
    Json doc = detail::header("enumerate", opt);
    doc["max_n"] = N;
    doc["max_k"] = K;
    doc["counts"] = Json::array();
    doc["totals"] = Json::array();
    for (std::size_t n = 0; n <= N; ++n) {
      Json row = Json::array();
      for (std::size_t k = 0; k <= K; ++k) row.push_back(t.at(n, k).str());
      doc["counts"].push_back(row);
      doc["totals"].push_back(t.total(n).str());
    }
    if (opt.oracle) doc["oracle"] = mismatch ? "mismatch" : "agree";
    out << doc.dump(2) << '\n';
  } else {
    out << "n";
    for (std::size_t k = 0; k <= K; ++k) out << "\tk=" << k;
    out << "\ttotal\n";
    for (std::size_t n = 0; n <= N; ++n) {
      out << n;
      for (std::size_t k = 0; k <= K; ++k) out << '\t' << t.at(n, k);
      out << '\t' << t.total(n) << '\n';
    }
  }
  if (mismatch) throw std::logic_error("enumeration disagrees with brute force");
  return exit_code::feasible;
}

inline int cmd_normalize(const Options& opt, std::ostream& out) {
  Json in;
  try {
    if (opt.file == "-") {
      in = Json::parse(std::cin);
    } else {
      std::ifstream f(opt.file);
      if (!f) throw ParseError(0, "cannot open '" + opt.file + "'");
      in = Json::parse(f);
    }
  } catch (const Json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  auto [arr, sensors] = parse_arrangement_doc(in);
  IntervalArrangement result(arr.geometry());
  Json doc;
  doc["command"] = "normalize";
  doc["to"] = opt.to;
  if (opt.to == "arbitrary") {
    result = normalize_arbitrary(arr, sensors);
    if (extract_code_sparse(result, sensors).matrix != extract_code_sparse(arr, sensors).matrix) {
      self_check_failed("sparse code changed");
    }
    if (extract_code_dense(result) != extract_code_sparse(arr, sensors).code) {
      self_check_failed("dense code of the result differs from the sparse code");
    }
  } else if (opt.to == "closed" || opt.to == "open") {
    result = opt.to == "closed" ? open_to_closed(arr) : closed_to_open(arr);
    if (extract_code_dense(result) != extract_code_dense(arr)) self_check_failed("dense code changed");
  } else {
    throw ParseError(0, "--to must be arbitrary, closed or open");
  }
  doc["status"] = "feasible";
  doc["arrangement"] = arrangement_json(result);
  if (!sensors.empty()) doc["sensors"] = sensors_json(sensors);
  doc["dense_code"] = to_json(extract_code_dense(result).words());
  emit(doc, opt, out);
  return exit_code::feasible;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Realizability of one-dimensional convex neural codes"};
  app.require_subcommand(1);
  Options opt;

  std::string geometry = "line";
  std::string regime = "sparse";
  std::string format = "text";
  auto common = [&](CLI::App* sub, bool with_file) {
    if (with_file) sub->add_option("file", opt.file, "code file, or - for stdin")->required();
    sub->add_option("--geometry", geometry, "line or circle")->check(CLI::IsMember({"line", "circle"}));
    sub->add_option("--regime", regime, "sparse or dense")->check(CLI::IsMember({"sparse", "dense"}));
    sub->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  };

  auto* check = app.add_subcommand("check", "decide realizability and print a realization or certificate");
  common(check, true);
  check->add_flag("--multiset", opt.multiset, "respect codeword counts");
  auto* realize = app.add_subcommand("realize", "print an exact interval arrangement realizing the code");
  common(realize, true);
  realize->add_flag("--multiset", opt.multiset, "respect codeword counts");
  auto* certificate = app.add_subcommand("certificate", "two-colour the incompatibility graph or print an odd cycle");
  common(certificate, true);
  auto* enumerate = app.add_subcommand("enumerate", "count discrete interval sets");
  common(enumerate, false);
  enumerate->add_option("--max-n", opt.max_n, "largest row length");
  enumerate->add_option("--max-k", opt.max_k, "largest set size (default: every size)");
  enumerate->add_flag("--oracle", opt.oracle, "cross-check against brute force");
  auto* normalize = app.add_subcommand("normalize", "rewrite an arrangement document");
  common(normalize, true);
  normalize->add_option("--to", opt.to, "arbitrary, closed or open")
      ->check(CLI::IsMember({"arbitrary", "closed", "open"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_code::usage;
  }
  opt.geometry = geometry == "circle" ? Geometry::circle : Geometry::line;
  opt.density = regime == "dense" ? Density::dense : Density::sparse;
  opt.format = format == "structured" ? Format::structured : Format::text;

  try {
    if (check->parsed()) return cmd_check(opt, out);
    if (realize->parsed()) return cmd_realize(opt, out);
    if (certificate->parsed()) return cmd_certificate(opt, out);
    if (enumerate->parsed()) return cmd_enumerate(opt, out, err);
    return cmd_normalize(opt, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const SizeLimit& e) {
    err << "size limit: " << e.what() << '\n';
    return exit_code::size_limit;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::self_check;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace convex1d::cli
