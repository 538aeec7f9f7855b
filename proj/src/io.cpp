#include "colorpart/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace colorpart {

using json = nlohmann::ordered_json;

namespace {

Rational coordinate(const json& value, std::size_t point) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number()) return parse_rational(value.dump());
  } catch (const std::invalid_argument& e) {
    throw InputError("point " + std::to_string(point) + ": " + e.what());
  }
  throw InputError("point " + std::to_string(point) + ": coordinates must be decimal strings or numbers");
}

// Exact decimal when the denominator has only factors 2 and 5, otherwise p/q.
std::string decimal_string(const Rational& r) {
  mpz_class den = r.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) return r.get_str();
  const unsigned digits = std::max(twos, fives);
  if (digits == 0) return r.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = r.get_num() * scale / r.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

template <class T>
std::optional<T> optional_field(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

json witness_json(const SeparationWitness& w) {
  json normal = json::array();
  for (const auto& c : w.plane.normal) normal.push_back(to_string(c));
  return {{"parts", {w.part_a + 1, w.part_b + 1}}, {"normal", normal}, {"offset", to_string(w.plane.offset)}};
}

SeparationWitness witness_from_json(const json& j) {
  SeparationWitness w;
  w.part_a = j.at("parts").at(0).get<int>() - 1;
  w.part_b = j.at("parts").at(1).get<int>() - 1;
  for (const auto& c : j.at("normal")) w.plane.normal.push_back(parse_rational(c.get<std::string>()));
  w.plane.offset = parse_rational(j.at("offset").get<std::string>());
  return w;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    const int d = j.value("dimension", 2);
    if (!j.contains("points") || !j["points"].is_array()) throw InputError("instance needs a \"points\" array");
    std::vector<std::vector<Rational>> coords;
    std::vector<int> colors;
    for (const auto& p : j["points"]) {
      const std::size_t index = coords.size();
      if (!p.contains("coords") || !p["coords"].is_array() || !p.contains("color")) {
        throw InputError("point " + std::to_string(index) + " needs \"coords\" and \"color\"");
      }
      std::vector<Rational> c;
      for (const auto& v : p["coords"]) c.push_back(coordinate(v, index));
      coords.push_back(std::move(c));
      colors.push_back(p["color"].get<int>());
    }
    Instance inst{ColoredPointSet(d, std::move(coords), std::move(colors)), optional_field<int>(j, "n"),
                  optional_field<std::uint64_t>(j, "seed"), optional_field<double>(j, "tolerance"),
                  optional_field<int>(j, "max_restarts")};
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

Instance parse_instance_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Rational>> coords;
  std::vector<int> colors;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() != 3) throw InputError("line " + std::to_string(line_no) + ": expected x,y,color");
    std::vector<Rational> c;
    try {
      c = {parse_rational(fields[0]), parse_rational(fields[1])};
    } catch (const std::invalid_argument& e) {
      if (coords.empty()) continue;  // header
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const Rational color = parse_rational(fields[2]);
      if (color.get_den() != 1) throw std::invalid_argument("color must be an integer");
      coords.push_back(std::move(c));
      colors.push_back(static_cast<int>(color.get_num().get_si()));
    } catch (const std::invalid_argument& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  try {
    return Instance{ColoredPointSet(2, std::move(coords), std::move(colors)), {}, {}, {}, {}};
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return path.extension() == ".csv" ? parse_instance_csv(text) : parse_instance_json(text);
}

std::string instance_to_json(const Instance& instance) {
  const auto& ps = instance.points;
  json j;
  j["dimension"] = ps.dimension();
  if (instance.n) j["n"] = *instance.n;
  if (instance.seed) j["seed"] = *instance.seed;
  if (instance.tolerance) j["tolerance"] = *instance.tolerance;
  if (instance.max_restarts) j["max_restarts"] = *instance.max_restarts;
  j["points"] = json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    json c = json::array();
    for (const auto& v : ps.coords(i)) c.push_back(decimal_string(v));
    j["points"].push_back({{"coords", c}, {"color", ps.color(i)}});
  }
  return j.dump(2) + "\n";
}

std::string result_to_json(const ResultFile& r) {
  json j;
  j["dimension"] = r.dimension;
  j["n"] = r.n;
  json assignment = json::array();
  for (int a : r.assignment) assignment.push_back(a + 1);
  j["assignment"] = assignment;
  j["part_sizes"] = r.part_sizes;
  j["color_counts"] = r.color_counts;
  j["witnesses"] = json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(witness_json(w));
  const auto& d = r.diagnostics;
  j["diagnostics"] = {{"seed", d.seed},
                      {"tolerance", d.tolerance},
                      {"max_restarts", d.max_restarts},
                      {"epsilon", d.epsilon},
                      {"epsilon_bound", std::isfinite(d.epsilon_bound) ? json(d.epsilon_bound) : json(nullptr)},
                      {"epsilon_overridden", d.epsilon_overridden},
                      {"restarts_used", d.restarts_used},
                      {"max_deviation", d.max_deviation},
                      {"deviations", d.deviations},
                      {"completeness_residual", d.completeness_residual},
                      {"fractional_violation", d.fractional_violation},
                      {"sites", d.sites},
                      {"weights", d.weights}};
  return j.dump(2) + "\n";
}

ResultFile parse_result_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ResultFile r;
    r.dimension = j.at("dimension").get<int>();
    r.n = j.at("n").get<int>();
    for (const auto& a : j.at("assignment")) r.assignment.push_back(a.get<int>() - 1);
    r.part_sizes = j.at("part_sizes").get<std::vector<std::size_t>>();
    r.color_counts = j.at("color_counts").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& w : j.at("witnesses")) r.witnesses.push_back(witness_from_json(w));
    const json& d = j.at("diagnostics");
    auto& out = r.diagnostics;
    out.seed = d.at("seed").get<std::uint64_t>();
    out.tolerance = d.at("tolerance").get<double>();
    out.max_restarts = d.at("max_restarts").get<int>();
    out.epsilon = d.at("epsilon").get<double>();
    out.epsilon_bound = d.at("epsilon_bound").is_null() ? std::numeric_limits<double>::infinity()
                                                         : d.at("epsilon_bound").get<double>();
    out.epsilon_overridden = d.at("epsilon_overridden").get<bool>();
    out.restarts_used = d.at("restarts_used").get<int>();
    out.max_deviation = d.at("max_deviation").get<double>();
    out.deviations = d.at("deviations").get<std::vector<std::vector<double>>>();
    out.completeness_residual = d.at("completeness_residual").get<double>();
    out.fractional_violation = d.at("fractional_violation").get<double>();
    out.sites = d.at("sites").get<std::vector<std::vector<double>>>();
    out.weights = d.at("weights").get<std::vector<double>>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed result: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed result: ") + e.what());
  }
}

ResultFile load_result(const std::filesystem::path& path) { return parse_result_json(read_file(path)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace colorpart
