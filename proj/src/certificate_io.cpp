#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qcert/dualcert.hpp"

namespace qcert {

namespace {

using nlohmann::json;

json qext_json(const QExt& v) { return json::array({to_string(v.rational()), to_string(v.surd())}); }

[[noreturn]] void fail(const std::string& what) { throw CertificateFormatError(what); }

Rat rat_field(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected an exact rational string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

long long int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) fail(std::string("missing or non-integer field '") + key + "'");
  return j[key].get<long long>();
}

std::vector<int> split_ints(const std::string& key, std::size_t expected, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) fail(where + ": bad key '" + key + "'");
    out.push_back(std::stoi(part));
  }
  if (out.size() != expected) fail(where + ": bad key '" + key + "'");
  return out;
}

}  // namespace

std::string certificate_file_name(int n, long long K, int delta, CodeVariant variant) {
  return std::to_string(n) + "-" + std::to_string(K) + "-" + std::to_string(delta) + "-" + to_string(variant) + ".json";
}

std::string certificate_to_json(const Certificate& cert) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"version\": " << cert.version << ",\n";
  out << "  \"n\": " << cert.n << ",\n";
  out << "  \"K\": " << cert.K << ",\n";
  out << "  \"delta\": " << cert.delta << ",\n";
  out << "  \"variant\": " << json(to_string(cert.variant)).dump() << ",\n";
  out << "  \"field\": [\"sqrt\", 3],\n";
  out << "  \"Y\": {";
  bool first_block = true;
  for (const auto& [b, m] : cert.Y) {
    out << (first_block ? "\n" : ",\n") << "    \"" << to_string(b) << "\": [";
    first_block = false;
    for (std::size_t r = 0; r < m.dim(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c <= r; ++c) row.push_back(qext_json(m(r, c)));
      out << (r == 0 ? "\n" : ",\n") << "      " << row.dump();
    }
    out << "\n    ]";
  }
  out << "\n  }";
  if (cert.variant != CodeVariant::selfdual) {
    json c = json::array();
    for (const auto& v : cert.C) c.push_back(to_string(v));
    out << ",\n  \"C\": " << c.dump();
  }
  if (cert.G) out << ",\n  \"G\": " << json(to_string(*cert.G)).dump();
  if (is_additive(cert.variant)) {
    out << ",\n  \"g\": {";
    bool first = true;
    for (const auto& [q, v] : cert.g) {
      out << (first ? "\n" : ",\n") << "    \"" << to_string(q) << "\": " << json(to_string(v)).dump();
      first = false;
    }
    out << "\n  }";
  }
  out << "\n}\n";
  return out.str();
}

Certificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("certificate must be a JSON object");
  Certificate cert;
  cert.version = static_cast<int>(int_field(j, "version"));
  if (cert.version != 1) fail("unsupported certificate version " + std::to_string(cert.version));
  cert.n = static_cast<int>(int_field(j, "n"));
  cert.K = int_field(j, "K");
  cert.delta = static_cast<int>(int_field(j, "delta"));
  if (!j.contains("variant") || !j["variant"].is_string()) fail("missing field 'variant'");
  try {
    cert.variant = parse_variant(j["variant"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (!j.contains("field") || j["field"] != json::array({"sqrt", 3})) fail("field descriptor must be [\"sqrt\", 3]");
  if (!j.contains("Y") || !j["Y"].is_object()) fail("missing object 'Y'");
  for (const auto& [key, rows] : j["Y"].items()) {
    auto ak = split_ints(key, 2, "Y");
    std::string where = "Y[" + key + "]";
    if (!rows.is_array()) fail(where + ": expected an array of rows");
    SymMatrixQ m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != r + 1) fail(where + ": row " + std::to_string(r) + " must have " + std::to_string(r + 1) + " entries");
      for (std::size_t c = 0; c <= r; ++c) {
        const auto& e = row[c];
        if (!e.is_array() || e.size() != 2) fail(where + ": entries must be [a, b] pairs");
        m(r, c) = QExt(rat_field(e[0], where), rat_field(e[1], where));
      }
    }
    if (!cert.Y.emplace(BlockIndex{ak[0], ak[1]}, std::move(m)).second) fail(where + ": duplicate block");
  }
  if (j.contains("C")) {
    if (!j["C"].is_array()) fail("'C' must be an array");
    for (const auto& v : j["C"]) cert.C.push_back(rat_field(v, "C"));
  }
  if (j.contains("G")) cert.G = rat_field(j["G"], "G");
  if (j.contains("g")) {
    if (!j["g"].is_object()) fail("'g' must be an object");
    for (const auto& [key, v] : j["g"].items()) {
      auto q = split_ints(key, 4, "g");
      cert.g[IndexQuad{q[0], q[1], q[2], q[3]}] = rat_field(v, "g[" + key + "]");
    }
  }
  return cert;
}

void write_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << certificate_to_json(cert);
  if (!out) throw std::runtime_error("write failed for " + path);
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return certificate_from_json(ss.str());
}

}  // namespace qcert
