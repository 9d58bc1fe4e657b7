#include "perc3/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace perc3 {

namespace {

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("malformed number: " + std::string(text));
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("reports hold finite numbers only");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void ExperimentReport::set_parameter(const std::string& key, std::string value) {
  for (auto& [k, v] : parameters)
    if (k == key) {
      v = std::move(value);
      return;
    }
  parameters.emplace_back(key, std::move(value));
}

std::optional<std::string> ExperimentReport::parameter(const std::string& key) const {
  for (const auto& [k, v] : parameters)
    if (k == key) return v;
  return std::nullopt;
}

std::size_t ExperimentReport::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column named " + name);
}

std::vector<double> ExperimentReport::column_values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(c));
  return out;
}

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width differs from the column count");
  rows.push_back(std::move(row));
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "# experiment=" << experiment << '\n';
  os << "# confidence=" << confidence_method << ',' << format_double(confidence_level) << '\n';
  for (const auto& [k, v] : parameters) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
  return os.str();
}

ExperimentReport ExperimentReport::from_csv(const std::string& text) {
  ExperimentReport rep;
  rep.confidence_method.clear();
  std::istringstream is(text);
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      if (header) throw std::invalid_argument("comment line after the header row");
      const std::string body = line.substr(2);
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("comment line without '=': " + line);
      const std::string key = body.substr(0, eq);
      const std::string value = body.substr(eq + 1);
      if (key == "experiment") {
        rep.experiment = value;
      } else if (key == "confidence") {
        const auto comma = value.rfind(',');
        if (comma == std::string::npos) throw std::invalid_argument("confidence needs method,level");
        rep.confidence_method = value.substr(0, comma);
        rep.confidence_level = parse_double(value.substr(comma + 1));
      } else {
        rep.parameters.emplace_back(key, value);
      }
      continue;
    }
    if (!header) {
      rep.columns = split(line, ',');
      header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != rep.columns.size()) throw std::invalid_argument("row width differs from the header");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c));
    rep.rows.push_back(std::move(row));
  }
  if (!header) throw std::invalid_argument("CSV report has no header row");
  return rep;
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  nlohmann::ordered_json rj = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
    rj.push_back(o);
  }
  j["columns"] = columns;
  j["rows"] = rj;
  j["confidence"] = {{"method", confidence_method}, {"level", confidence_level}};
  return j.dump(2) + "\n";
}

ExperimentReport ExperimentReport::from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
    ExperimentReport rep;
    rep.experiment = j.at("experiment").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) rep.parameters.emplace_back(k, v.get<std::string>());
    rep.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      if (r.size() != rep.columns.size()) throw std::invalid_argument("row width differs from the column count");
      std::vector<double> row;
      row.reserve(rep.columns.size());
      for (const auto& c : rep.columns) row.push_back(r.at(c).get<double>());
      rep.rows.push_back(std::move(row));
    }
    rep.confidence_method = j.at("confidence").at("method").get<std::string>();
    rep.confidence_level = j.at("confidence").at("level").get<double>();
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON report: ") + e.what());
  }
}

}  // namespace perc3
