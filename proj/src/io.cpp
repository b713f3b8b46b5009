#include "discrarr/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "discrarr/errors.hpp"

namespace discrarr {

namespace {

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError(offset, "malformed JSON");
  }
}

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument("expected a rational string \"p/q\" or an integer, got " + v.dump());
}

nlohmann::json rational_list(const RationalVector& v) {
  auto out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

Arrangement arrangement_from_json(std::string_view text) {
  const auto j = parse_json(text);
  if (!j.is_object() || !j.contains("k") || !j.contains("normals"))
    throw std::invalid_argument("arrangement JSON needs keys \"k\" and \"normals\"");
  if (!j["k"].is_number_integer()) throw std::invalid_argument("\"k\" must be an integer");
  const int k = j["k"].get<int>();
  if (!j["normals"].is_array()) throw std::invalid_argument("\"normals\" must be an array");
  std::vector<RationalVector> normals;
  for (const auto& col : j["normals"]) {
    if (!col.is_array()) throw std::invalid_argument("each normal must be an array");
    RationalVector v;
    for (const auto& x : col) v.push_back(rational_from_json(x));
    normals.push_back(std::move(v));
  }
  return Arrangement(k, std::move(normals));
}

std::string arrangement_to_json(const Arrangement& a) {
  nlohmann::json j;
  j["k"] = a.k();
  j["normals"] = nlohmann::json::array();
  for (const auto& v : a.normals()) j["normals"].push_back(rational_list(v));
  return j.dump();
}

TranslationVector translation_from_json(std::string_view text) {
  const auto j = parse_json(text);
  if (!j.is_object() || !j.contains("t") || !j["t"].is_array())
    throw std::invalid_argument("translation JSON needs an array \"t\"");
  TranslationVector t;
  for (const auto& x : j["t"]) t.push_back(rational_from_json(x));
  return t;
}

std::string translation_to_json(const TranslationVector& t) {
  nlohmann::json j;
  j["t"] = rational_list(t);
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
}

nlohmann::json presentation_to_json(const Presentation& t) {
  auto out = nlohmann::json::array();
  for (const auto& s : t.members()) out.push_back(s.indices());
  return out;
}

Presentation presentation_from_json(const nlohmann::json& j, int n, int k) {
  if (!j.is_array()) throw std::invalid_argument("presentation JSON must be an array of index lists");
  std::vector<IndexSet> members;
  for (const auto& m : j) members.push_back(IndexSet::from_indices(m.get<std::vector<int>>()));
  return Presentation(n, k, std::move(members));
}

}  // namespace discrarr
