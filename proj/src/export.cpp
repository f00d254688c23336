#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qcert/numeric.hpp"

namespace qcert {

namespace {

using nlohmann::ordered_json;

struct Builder {
  LmiModel model;
  long diag_rows = 0;

  void add(std::size_t matrix, std::size_t block, std::size_t r, std::size_t c, const QExt& v) {
    if (v.is_zero()) return;
    if (r > c) std::swap(r, c);
    model.entries.push_back({matrix, block, r, c, v});
  }

  void finish() {
    if (diag_rows > 0) model.block_struct.push_back(-diag_rows);
    auto key = [](const LmiEntry& e) { return std::tie(e.matrix, e.block, e.row, e.col); };
    std::stable_sort(model.entries.begin(), model.entries.end(),
                     [&](const LmiEntry& a, const LmiEntry& b) { return key(a) < key(b); });
    std::vector<LmiEntry> merged;
    for (auto& e : model.entries) {
      if (!merged.empty() && key(merged.back()) == key(e))
        merged.back().value += e.value;
      else
        merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const LmiEntry& e) { return e.value.is_zero(); });
    model.entries = std::move(merged);
  }
};

ordered_json qext_json(const QExt& v) { return ordered_json::array({to_string(v.rational()), to_string(v.surd())}); }

[[noreturn]] void fail(const std::string& what) { throw CertificateFormatError("sidecar: " + what); }

QExt qext_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) fail("expected [a, b] pair");
  try {
    return QExt(parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>()));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

std::string number(const QExt& v, unsigned digits) {
  if (v.is_rational() && v.rational().get_den() == 1) return v.rational().get_num().get_str();
  PrecisionGuard guard(digits + 10);
  return real_value(v).str(digits, std::ios_base::scientific);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

LmiModel lmi_model(const DualInstance& inst) {
  Builder b;
  auto& m = b.model;
  m.source = "dual";
  m.n = inst.n;
  m.K = inst.K;
  m.delta = inst.delta;
  m.variant = inst.variant;
  for (const auto& db : inst.blocks) m.block_struct.push_back(static_cast<long>(db.dim()));
  const std::size_t diag = inst.blocks.size();
  for (std::size_t c = 0; c < inst.coords.size(); ++c) {
    const auto& co = inst.coords[c];
    m.variable_names.push_back(co.name);
    if (co.kind == Coordinate::Kind::block_entry) {
      b.add(c + 1, co.block, co.row, co.col, QExt(1));
    } else if (co.nonnegative) {
      b.add(c + 1, diag, b.diag_rows, b.diag_rows, QExt(1));
      ++b.diag_rows;
    }
  }
  for (const auto& eq : inst.equalities) {
    for (const auto& [c, v] : eq.form) {
      b.add(c + 1, diag, b.diag_rows, b.diag_rows, v);
      b.add(c + 1, diag, b.diag_rows + 1, b.diag_rows + 1, -v);
    }
    b.diag_rows += 2;
  }
  m.objective.assign(inst.coords.size(), QExt());
  for (const auto& [c, v] : inst.objective) m.objective[c] = -v;
  b.finish();
  return m;
}

LmiModel lmi_model(const PrimalSDP& sdp) {
  Builder b;
  auto& m = b.model;
  m.source = "primal";
  m.n = sdp.n;
  m.K = sdp.K;
  m.delta = sdp.delta;
  m.variant = sdp.variant;
  for (const auto& q : sdp.variables) m.variable_names.push_back("x[" + to_string(q) + "]");
  m.objective.assign(sdp.variables.size(), QExt());
  for (std::size_t blk = 0; blk < sdp.blocks.size(); ++blk) {
    const auto& pb = sdp.blocks[blk];
    m.block_struct.push_back(static_cast<long>(pb.labels.size()));
    std::size_t e = 0;
    for (std::size_t r = 0; r < pb.labels.size(); ++r)
      for (std::size_t c = 0; c <= r; ++c, ++e)
        for (const auto& [v, coeff] : pb.entries[e].terms) b.add(v + 1, blk, r, c, coeff);
  }
  const std::size_t diag = sdp.blocks.size();
  for (const auto& row : sdp.rows) {
    const int copies = row.sense == RowSense::equal ? 2 : 1;
    for (int s = 0; s < copies; ++s) {
      QExt sign(s == 0 ? 1 : -1);
      for (const auto& [v, coeff] : row.coeffs) b.add(v + 1, diag, b.diag_rows, b.diag_rows, sign * QExt(coeff));
      b.add(0, diag, b.diag_rows, b.diag_rows, sign * QExt(row.rhs));
      ++b.diag_rows;
    }
  }
  b.finish();
  return m;
}

std::string sdpa_text(const LmiModel& model, unsigned digits) {
  std::ostringstream out;
  out << "\"qcert " << model.source << " n=" << model.n << " K=" << model.K << " delta=" << model.delta
      << " variant=" << to_string(model.variant) << " digits=" << digits << "\"\n";
  out << model.variable_names.size() << " = mDIM\n";
  out << model.block_struct.size() << " = nBLOCK\n";
  for (std::size_t i = 0; i < model.block_struct.size(); ++i) out << (i ? " " : "") << model.block_struct[i];
  out << " = bLOCKsTRUCT\n";
  for (std::size_t i = 0; i < model.objective.size(); ++i) out << (i ? " " : "") << number(model.objective[i], digits);
  out << "\n";
  for (const auto& e : model.entries)
    out << e.matrix << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << number(e.value, digits)
        << '\n';
  return out.str();
}

std::string lmi_json(const LmiModel& model, unsigned digits) {
  ordered_json j;
  j["format"] = "qcert-lmi";
  j["version"] = 1;
  j["source"] = model.source;
  j["n"] = model.n;
  j["K"] = model.K;
  j["delta"] = model.delta;
  j["variant"] = to_string(model.variant);
  j["field"] = ordered_json::array({"sqrt", 3});
  j["digits"] = digits;
  j["block_struct"] = model.block_struct;
  j["variables"] = model.variable_names;
  auto obj = ordered_json::array();
  for (const auto& v : model.objective) obj.push_back(qext_json(v));
  j["objective"] = obj;
  std::ostringstream out;
  // one entry per line keeps large files diffable
  std::string head = j.dump(1);
  head.erase(head.size() - 2);  // "\n}"
  out << head << ",\n \"entries\": [";
  for (std::size_t i = 0; i < model.entries.size(); ++i) {
    const auto& e = model.entries[i];
    ordered_json row = ordered_json::array({e.matrix, e.block + 1, e.row + 1, e.col + 1, qext_json(e.value)});
    out << (i ? ",\n  " : "\n  ") << row.dump();
  }
  out << "\n ]\n}\n";
  return out.str();
}

LmiModel lmi_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    fail(e.what());
  }
  if (!j.is_object() || j.value("format", "") != "qcert-lmi") fail("not a qcert-lmi file");
  LmiModel m;
  try {
    m.source = j.at("source").get<std::string>();
    m.n = j.at("n").get<int>();
    m.K = j.at("K").get<long long>();
    m.delta = j.at("delta").get<int>();
    m.variant = parse_variant(j.at("variant").get<std::string>());
    m.block_struct = j.at("block_struct").get<std::vector<long>>();
    m.variable_names = j.at("variables").get<std::vector<std::string>>();
    for (const auto& v : j.at("objective")) m.objective.push_back(qext_from(v));
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 5) fail("entries must have five fields");
      auto blk = e[1].get<std::size_t>(), r = e[2].get<std::size_t>(), c = e[3].get<std::size_t>();
      if (blk < 1 || r < 1 || c < 1) fail("indices are 1-based");
      m.entries.push_back({e[0].get<std::size_t>(), blk - 1, r - 1, c - 1, qext_from(e[4])});
    }
  } catch (const ordered_json::exception& e) {
    fail(e.what());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (m.objective.size() != m.variable_names.size()) fail("objective length differs from variable count");
  return m;
}

std::string sidecar_path(const std::string& path) { return path + ".exact.json"; }

namespace {

void export_model(const LmiModel& model, const std::string& path, unsigned digits) {
  write_file(path, sdpa_text(model, digits));
  write_file(sidecar_path(path), lmi_json(model, digits));
}

}  // namespace

void export_sparse(const DualInstance& inst, const std::string& path, unsigned digits) {
  export_model(lmi_model(inst), path, digits);
}

void export_sparse(const PrimalSDP& sdp, const std::string& path, unsigned digits) {
  export_model(lmi_model(sdp), path, digits);
}

}  // namespace qcert
