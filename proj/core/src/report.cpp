#include "specdiff/report.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

using nlohmann::json;

void emit(const json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  emit(j, out, 0);
  out += '\n';
  return out;
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ValidationError("unterminated quote in CSV row");
  cells.push_back(std::move(cur));
  return cells;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json method_json(const Method& method) {
  if (const auto* j = std::get_if<JacobiProjection>(&method)) {
    return {{"kind", "jacobi"}, {"alpha", j->params.alpha()}, {"beta", j->params.beta()}};
  }
  return {{"kind", "cheb-interp"}};
}

json function_json(const SingularFunction& f) {
  return {{"kind", f.kind() == SingularKind::AbsPower ? "abs" : "trunc"},
          {"xi", f.xi()},
          {"sigma", f.sigma()},
          {"g", f.g().describe()}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string write_csv(const CsvTable& table) {
  std::string out = "# schema=" + std::string(kSchemaVersion) + ",kind=" + table.kind + "\n";
  for (const auto& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw ValidationError("empty CSV");
  const std::string stamp = "# schema=" + std::string(kSchemaVersion) + ",kind=";
  if (lines.front().substr(0, stamp.size()) != stamp) throw ValidationError("missing or unsupported schema stamp");
  CsvTable t;
  t.kind = std::string(lines.front().substr(stamp.size()));
  bool header = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (line.empty()) continue;
    if (line.front() == '#') {
      t.comments.emplace_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      continue;
    }
    auto cells = split_row(line);
    if (!header) {
      t.columns = std::move(cells);
      header = true;
    } else {
      if (cells.size() != t.columns.size()) throw ValidationError("CSV row width differs from header");
      t.rows.push_back(std::move(cells));
    }
  }
  if (!header) throw ValidationError("CSV has no header row");
  return t;
}

std::string format_json(std::string_view json_text) {
  try {
    return dump(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dataset_csv(const Dataset& ds) {
  CsvTable t;
  t.kind = "figure" + std::to_string(ds.figure);
  t.comments.push_back("title=" + ds.title);
  for (const auto& s : ds.series) t.comments.push_back("series " + hash_hex(s.config) + " " + s.label);
  t.columns = {"config", "n", "x", "err"};
  t.rows.reserve(ds.rows.size());
  for (const auto& r : ds.rows) {
    t.rows.push_back({hash_hex(r.config), std::to_string(r.n), format_double(r.x), format_double(r.err)});
  }
  return write_csv(t);
}

std::string dataset_json(const Dataset& ds) {
  json series = json::array();
  for (const auto& s : ds.series) {
    json rows = json::array();
    for (const auto& r : ds.rows) {
      if (r.config == s.config) rows.push_back({{"n", r.n}, {"x", r.x}, {"err", number_or_null(r.err)}});
    }
    series.push_back(
        {{"config", hash_hex(s.config)}, {"label", s.label}, {"description", s.description}, {"rows", rows}});
  }
  return dump({{"schema", kSchemaVersion}, {"figure", ds.figure}, {"title", ds.title}, {"series", series}});
}

std::string curves_csv(std::span<const ErrorCurve> curves) {
  CsvTable t;
  t.kind = "errcurve";
  for (const auto& c : curves) t.comments.push_back("series " + hash_hex(c.config.hash()) + " " + c.config.describe());
  t.columns = {"config", "n", "x", "err"};
  for (const auto& c : curves) {
    const auto h = hash_hex(c.config.hash());
    for (const auto& s : c.samples) {
      t.rows.push_back({h, std::to_string(s.n), format_double(c.config.x), format_double(s.err)});
    }
  }
  return write_csv(t);
}

std::string verification_json(const VerificationReport& report, const SingularFunction& f, const Method& method,
                              int m) {
  json j = {{"schema", kSchemaVersion}, {"function", function_json(f)}, {"method", method_json(method)},
            {"m", m},                   {"tolerance", report.tolerance}, {"assumptions_ok", report.assumptions_ok},
            {"pass", report.pass}};
  if (!report.assumptions_ok) j["violation"] = report.violation;
  json points = json::array();
  for (const auto& p : report.points) {
    json e = {{"x", p.x},
              {"class", std::string(to_string(p.point_class))},
              {"predicted", number_or_null(p.predicted)},
              {"difference", number_or_null(p.difference)},
              {"pass", p.pass}};
    if (p.fit) {
      e["fit"] = {{"slope", p.fit->slope},         {"intercept", p.fit->intercept},
                  {"n_min", p.fit->n_min},         {"n_max", p.fit->n_max},
                  {"peaks_used", p.fit->peaks_used}, {"residual", p.fit->residual},
                  {"discarded", p.fit->discarded}, {"inversions", p.fit->inversions}};
    }
    if (!p.note.empty()) e["note"] = p.note;
    points.push_back(std::move(e));
  }
  j["points"] = std::move(points);
  if (report.argmax) {
    const auto& a = *report.argmax;
    json pred = json::array();
    for (auto pc : a.predicted) pred.push_back(std::string(to_string(pc)));
    j["argmax"] = {{"n", a.n},
                   {"measured_x", a.measured_x},
                   {"measured_value", a.measured_value},
                   {"measured_class", std::string(to_string(a.measured_class))},
                   {"predicted_classes", pred},
                   {"predicted_kappa", number_or_null(a.predicted_kappa)},
                   {"pass", a.pass}};
  }
  return dump(j);
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ValidationError("cannot write output file: " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ValidationError("cannot replace output file: " + path);
  }
}

}  // namespace specdiff
