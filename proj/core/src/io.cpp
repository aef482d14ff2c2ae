#include "lcc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lcc/error.hpp"
#include "json.hpp"

namespace lcc {

namespace {

using json = nlohmann::json;

std::vector<std::vector<double>> read_matrix(const json& j, const char* name) {
  if (!j.is_array()) throw ParseError(std::string("\"") + name + "\" must be an array of arrays");
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(std::string("\"") + name + "\" rows must be arrays");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError(std::string("\"") + name + "\" entries must be numbers");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Index read_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  }
  return static_cast<Index>(v.get<unsigned long long>());
}

Index parse_key(const std::string& key) {
  Index value = 0;
  const auto* first = key.data();
  const auto* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || key.empty()) {
    throw ParseError("prior.assign key \"" + key + "\" is not a point index");
  }
  return value;
}

ConsistentProblem from_json(const json& j, const LoadOptions& options) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  const bool has_points = j.contains("points");
  const bool has_table = j.contains("distances");
  if (has_points == has_table) {
    throw ParseError("instance needs exactly one of \"points\" or \"distances\"");
  }
  Metric metric = has_points
                      ? Metric::euclidean(read_matrix(j.at("points"), "points"), options.table_cap)
                      : Metric::explicit_table(read_matrix(j.at("distances"), "distances"),
                                               options.check_triangle);
  const std::size_t n = metric.size();

  std::vector<Index> p1;
  if (j.contains("p1")) {
    if (!j.at("p1").is_array()) throw ParseError("\"p1\" must be an array");
    for (const auto& v : j.at("p1")) p1.push_back(read_index(v, "p1 entry"));
  }
  Clustering prior{{}, std::vector<Index>(n, kUnassigned)};
  if (j.contains("prior")) {
    const auto& pj = j.at("prior");
    if (!pj.is_object()) throw ParseError("\"prior\" must be an object");
    if (pj.contains("centers")) {
      if (!pj.at("centers").is_array()) throw ParseError("prior.centers must be an array");
      for (const auto& v : pj.at("centers")) prior.centers.push_back(read_index(v, "prior center"));
    }
    if (pj.contains("assign")) {
      if (!pj.at("assign").is_object()) throw ParseError("prior.assign must be an object");
      for (const auto& [key, value] : pj.at("assign").items()) {
        const Index p = parse_key(key);
        if (p >= n) throw ValidationError("prior.assign point " + key + " out of range");
        prior.assign[p] = read_index(value, "prior.assign value");
      }
    }
  }
  if (!j.contains("k")) throw ParseError("instance is missing \"k\"");
  if (!j.contains("S")) throw ParseError("instance is missing \"S\"");
  const Index k = read_index(j.at("k"), "\"k\"");
  const Index s = read_index(j.at("S"), "\"S\"");
  return ConsistentProblem(std::move(metric), std::move(p1), std::move(prior), s, k);
}

ConsistentProblem from_csv(std::istream& in, const LoadOptions& options) {
  std::vector<std::vector<double>> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw ParseError("empty CSV cell on line " + std::to_string(line_no));
      const std::string token = cell.substr(b, e - b + 1);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("bad number \"" + token + "\" on CSV line " + std::to_string(line_no));
      }
      row.push_back(value);
    }
    points.push_back(std::move(row));
  }
  Metric metric = Metric::euclidean(std::move(points), options.table_cap);
  const std::size_t n = metric.size();
  return ConsistentProblem(std::move(metric), {}, Clustering{{}, std::vector<Index>(n, kUnassigned)},
                           0, options.csv_k);
}

nlohmann::ordered_json to_json(const ConsistentProblem& problem) {
  nlohmann::ordered_json j;
  const Metric& m = problem.metric();
  if (m.is_euclidean()) {
    auto pts = nlohmann::ordered_json::array();
    for (Index i = 0; i < m.size(); ++i) pts.push_back(m.point(i));
    j["points"] = std::move(pts);
  } else {
    j["distances"] = m.table();
  }
  j["p1"] = problem.p1();
  nlohmann::ordered_json prior;
  prior["centers"] = problem.prior().centers;
  nlohmann::ordered_json assign = nlohmann::ordered_json::object();
  for (Index p : problem.p1()) assign[std::to_string(p)] = problem.old_center(p);
  prior["assign"] = std::move(assign);
  j["prior"] = std::move(prior);
  j["S"] = problem.budget();
  j["k"] = problem.k();
  return j;
}

}  // namespace

ConsistentProblem load_instance(std::istream& in, InstanceFormat format, const LoadOptions& options) {
  if (format == InstanceFormat::kCsv) return from_csv(in, options);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  return from_json(j, options);
}

ConsistentProblem load_instance_string(const std::string& text, InstanceFormat format,
                                       const LoadOptions& options) {
  std::istringstream in(text);
  return load_instance(in, format, options);
}

ConsistentProblem load_instance_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  const auto format = path.extension() == ".csv" ? InstanceFormat::kCsv : InstanceFormat::kJson;
  return load_instance(in, format, options);
}

std::string instance_to_json(const ConsistentProblem& problem, int indent) {
  return to_json(problem).dump(indent);
}

void save_instance_file(const ConsistentProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << instance_to_json(problem) << '\n';
}

bool same_instance(const ConsistentProblem& a, const ConsistentProblem& b) {
  return a.metric().same_data(b.metric()) && a.p1() == b.p1() && a.prior() == b.prior() &&
         a.budget() == b.budget() && a.k() == b.k();
}

}  // namespace lcc
