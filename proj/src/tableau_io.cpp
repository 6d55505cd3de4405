#include "tsrk/tableau_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsrk/errors.hpp"

namespace tsrk {

namespace {

using json = nlohmann::ordered_json;

json poly_json(const CoeffPolynomial& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.to_string());
  return arr;
}

json row_json(const PolyRow& row) {
  json arr = json::array();
  for (const auto& p : row) arr.push_back(poly_json(p));
  return arr;
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("tableau file: missing field '") + key + "'");
  return *it;
}

ExactScalar scalar_from(const json& j, unsigned long radicand) {
  if (!j.is_string()) throw ParseError("tableau file: scalar must be a string, got " + j.dump());
  ExactScalar x = ExactScalar::parse(j.get<std::string>());
  if (x.radicand() != 0 && x.radicand() != radicand) {
    throw ParseError("tableau file: scalar '" + j.get<std::string>() + "' does not match radicand " +
                     std::to_string(radicand));
  }
  return x;
}

CoeffPolynomial poly_from(const json& j, unsigned long radicand, const std::string& what) {
  if (!j.is_array()) throw ParseError("tableau file: " + what + " must be an array of scalars");
  std::vector<ExactScalar> coeffs;
  for (const auto& e : j) coeffs.push_back(scalar_from(e, radicand));
  return CoeffPolynomial(std::move(coeffs));
}

PolyRow row_from(const json& j, std::size_t s, unsigned long radicand, const std::string& what) {
  if (!j.is_array() || j.size() != s) {
    throw ParseError("tableau file: " + what + " must hold " + std::to_string(s) + " polynomials");
  }
  PolyRow row;
  for (std::size_t i = 0; i < s; ++i) row.push_back(poly_from(j[i], radicand, what + "[" + std::to_string(i) + "]"));
  return row;
}

PolyMatrix matrix_from(const json& j, std::size_t s, unsigned long radicand, const std::string& what) {
  if (!j.is_array() || j.size() != s) throw ParseError("tableau file: " + what + " must have " + std::to_string(s) + " rows");
  PolyMatrix m;
  for (std::size_t i = 0; i < s; ++i) m.push_back(row_from(j[i], s, radicand, what + "[" + std::to_string(i) + "]"));
  return m;
}

}  // namespace

std::string tableau_to_text(const TsrkTableau& t) {
  json doc;
  doc["name"] = t.name;
  doc["s"] = t.stages();
  doc["radicand"] = t.radicand();
  json c = json::array();
  for (const auto& x : t.c) c.push_back(x.to_string());
  doc["c"] = c;
  doc["u"] = row_json(t.u);
  doc["v"] = poly_json(t.v);
  json a = json::array(), at = json::array();
  for (const auto& r : t.a) a.push_back(row_json(r));
  for (const auto& r : t.atilde) at.push_back(row_json(r));
  doc["A"] = a;
  doc["Atilde"] = at;
  doc["b"] = row_json(t.b);
  doc["btilde"] = row_json(t.btilde);
  return doc.dump(2) + "\n";
}

TsrkTableau tableau_from_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("tableau file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("tableau file: top level must be an object");
  try {
    const json& s_field = field(doc, "s");
    if (!s_field.is_number_unsigned()) throw ParseError("tableau file: 's' must be a positive integer");
    const auto s = s_field.get<std::size_t>();
    const json& rad_field = field(doc, "radicand");
    if (!rad_field.is_number_unsigned()) throw ParseError("tableau file: 'radicand' must be a nonnegative integer");
    const auto radicand = rad_field.get<unsigned long>();

    TsrkTableau t;
    const json& name = field(doc, "name");
    if (!name.is_string()) throw ParseError("tableau file: 'name' must be a string");
    t.name = name.get<std::string>();
    const json& c = field(doc, "c");
    if (!c.is_array() || c.size() != s) throw ParseError("tableau file: 'c' must hold s scalars");
    for (const auto& e : c) t.c.push_back(scalar_from(e, radicand));
    t.u = row_from(field(doc, "u"), s, radicand, "u");
    t.v = poly_from(field(doc, "v"), radicand, "v");
    t.a = matrix_from(field(doc, "A"), s, radicand, "A");
    t.atilde = matrix_from(field(doc, "Atilde"), s, radicand, "Atilde");
    t.b = row_from(field(doc, "b"), s, radicand, "b");
    t.btilde = row_from(field(doc, "btilde"), s, radicand, "btilde");
    require_valid(t);
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("tableau file: ") + e.what());
  }
}

void save_tableau(const TsrkTableau& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << tableau_to_text(t);
}

TsrkTableau load_tableau(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return tableau_from_text(buf.str());
}

}  // namespace tsrk
