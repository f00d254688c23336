#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qcert/enumerators.hpp"
#include "qcert/lpbound.hpp"
#include "qcert/table.hpp"
#include "qcert/terwilliger.hpp"

namespace qcert::cli {

namespace {

using nlohmann::ordered_json;

std::string vec_str(const WeightEnumerator& w) {
  std::string s = "(";
  for (int j = 0; j <= w.n; ++j) s += (j ? "," : "") + to_string(w[j]);
  return s + ")";
}

ordered_json rats(const std::vector<Rat>& v) {
  auto out = ordered_json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

ordered_json check_json(const LpCheck& c) {
  ordered_json j;
  j["K"] = c.K;
  j["feasible"] = c.verdict.feasible;
  if (c.verdict.feasible) {
    j["witness"] = rats(c.verdict.witness);
  } else {
    auto rows = ordered_json::array();
    for (std::size_t r = 0; r < c.lp.rows.size(); ++r)
      if (sgn(c.verdict.farkas[r]) != 0)
        rows.push_back(ordered_json::array({c.lp.rows[r].label, to_string(c.verdict.farkas[r])}));
    j["farkas"] = rows;
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string real_str(const Real& v, int digits = 12) { return v.str(digits, std::ios_base::scientific); }

}  // namespace

std::vector<BigInt> parse_schedule(const std::string& text) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    auto e = item.find_first_of("eE");
    try {
      if (item.empty()) throw std::invalid_argument("empty");
      if (e == std::string::npos) {
        if (item.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(item);
        out.emplace_back(item);
      } else {
        std::string mant = item.substr(0, e), ex = item.substr(e + 1);
        if (mant.empty() || ex.empty() || mant.find_first_not_of("0123456789") != std::string::npos ||
            ex.find_first_not_of("0123456789") != std::string::npos || ex.size() > 4)
          throw std::invalid_argument(item);
        out.push_back(BigInt(mant) * power(10, std::stoul(ex)));
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad denominator bound '" + item + "'");
    }
    start = end + 1;
  }
  return out;
}

int cmd_enum(const std::string& code_file, std::ostream& out) {
  StabilizerCode code;
  try {
    code = StabilizerCode::from_file(code_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << code_file << ": " << e.what() << '\n';
    return malformed;
  }
  WeightEnumerator a = stabilizer_weight_distribution(code);
  out << "n = " << code.n() << "\n";
  out << "k = " << code.k() << "\n";
  out << "K = " << code.K() << "\n";
  if (code.n() <= 7) out << "distance = " << code.distance() << "\n";
  out << "A = " << vec_str(a) << "\n";
  out << "B = " << vec_str(macwilliams_transform(a)) << "\n";
  out << "S = " << vec_str(shadow_transform(a)) << "\n";
  if (code.n() <= oracle_max_qubits) {
    MatrixWeights lam = matrix_weights_from_code(code);
    // lambda is symmetric in (i, j); list i >= j only
    for (const auto& [q, v] : lam.values)
      if (sgn(v) != 0 && q.i >= q.j) out << "lambda[" << to_string(q) << "] = " << to_string(v) << "\n";
  }
  return ok;
}

int cmd_bound(int n, int delta, CodeVariant variant, const std::optional<std::string>& provenance, std::ostream& out) {
  BoundResult r = max_k(n, delta, variant);
  out << r.K << "\n";
  if (provenance) {
    ordered_json j;
    j["n"] = n;
    j["delta"] = delta;
    j["variant"] = to_string(variant);
    j["K_max"] = r.K;
    j["lp_solves"] = r.lp_solves;
    if (r.attained) j["attained"] = check_json(*r.attained);
    auto ex = ordered_json::array();
    for (const auto& c : r.exclusions) {
      auto cj = check_json(c);
      cj["variant"] = to_string(c.lp.variant);
      ex.push_back(cj);
    }
    j["exclusions"] = ex;
    write_text(*provenance, j.dump(1) + "\n");
  }
  return ok;
}

int cmd_certify(const CertifyOptions& opts, std::ostream& out) {
  const auto& p = opts.inst;
  opts.policy.validate();
  auto t0 = std::chrono::steady_clock::now();
  DualInstance inst = build_dual(p.n, p.K, p.delta, p.variant);
  NumericOptions no;
  no.precision = opts.precision;
  NumericPoint pt = solve_numeric(inst, no);
  auto t1 = std::chrono::steady_clock::now();
  auto rounded = round_to_exact(inst, pt, opts.policy);
  auto t2 = std::chrono::steady_clock::now();

  std::filesystem::create_directories(opts.out_dir);
  const std::string name = certificate_file_name(p.n, p.K, p.delta, p.variant);
  const std::string stem = name.substr(0, name.size() - 5);
  const auto cert_path = (std::filesystem::path(opts.out_dir) / name).string();
  const auto transcript_path = (std::filesystem::path(opts.out_dir) / (stem + ".transcript.txt")).string();

  std::ostringstream tr;
  tr << "instance n=" << p.n << " K=" << p.K << " delta=" << p.delta << " variant=" << to_string(p.variant) << "\n";
  tr << "blocks " << inst.blocks.size() << " coordinates " << inst.coords.size() << " equalities "
     << inst.equalities.size() << "\n";
  tr << "precision " << opts.precision << " digits\n";
  tr << "solver status " << pt.status << " iterations " << pt.iterations << (pt.centered ? " centred" : "") << "\n";
  tr << "optimum " << real_str(pt.optimum) << "\n";
  tr << "objective " << real_str(pt.objective) << "\n";
  tr << "equality residual " << real_str(pt.equality_residual, 3) << "\n";
  tr << "schedule";
  for (const auto& d : opts.policy.denominator_schedule) tr << ' ' << d.get_str();
  tr << "\n";
  tr << "solve seconds " << std::chrono::duration<double>(t1 - t0).count() << "\n";
  tr << "rounding seconds " << std::chrono::duration<double>(t2 - t1).count() << "\n";

  int code = ok;
  if (auto* cert = std::get_if<Certificate>(&rounded)) {
    Verdict v = verify_certificate(*cert);
    tr << "verdict " << (v.verified() ? "verified" : "rejected") << " objective " << to_string(v.objective) << "\n";
    if (v.verified()) {
      write_certificate(*cert, cert_path);
      tr << "certificate " << name << "\n";
      out << "verified " << cert_path << "\n";
    } else {
      tr << "reason " << v.reason << ": " << v.location << "\n";
      out << "rejected " << v.reason << ": " << v.location << "\n";
      code = rejected;
    }
  } else {
    const auto& f = std::get<RoundingFailed>(rounded);
    tr << "rounding failed after " << f.attempts << " attempts: " << f.reason << "\n";
    tr << "best exact objective sign "
       << (f.best_objective_sign ? std::to_string(*f.best_objective_sign) : std::string("none")) << "\n";
    out << "no certificate: " << f.reason << "\n";
    code = rejected;
  }
  write_text(transcript_path, tr.str());
  out << "transcript " << transcript_path << "\n";
  return code;
}

int cmd_verify(const std::string& file, std::ostream& out) {
  Certificate cert;
  try {
    cert = read_certificate(file);
  } catch (const CertificateFormatError& e) {
    ordered_json j{{"file", file}, {"status", "malformed"}, {"reason", e.what()}};
    out << j.dump() << "\n";
    return malformed;
  } catch (const std::runtime_error& e) {
    ordered_json j{{"file", file}, {"status", "unreadable"}, {"reason", e.what()}};
    out << j.dump() << "\n";
    return malformed;
  }
  Verdict v = verify_certificate(cert);
  ordered_json j;
  j["file"] = file;
  j["status"] = v.verified() ? "verified" : "rejected";
  j["objective"] = ordered_json::array({to_string(v.objective.rational()), to_string(v.objective.surd())});
  if (!v.verified()) {
    j["reason"] = v.reason;
    j["location"] = v.location;
  }
  out << j.dump() << "\n";
  return v.verified() ? ok : rejected;
}

int cmd_table(const TableCommand& opts, std::ostream& out) {
  if (opts.n_max > 19) throw std::invalid_argument("n-max must be at most 19");
  TableOptions to;
  to.n_min = opts.n_min;
  to.n_max = opts.n_max;
  to.delta_min = opts.delta_min;
  to.delta_max = opts.delta_max;
  to.variants = opts.variants;
  if (opts.store) to.store = load_store(*opts.store, &std::cerr);
  if (opts.codes) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(*opts.codes))
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        to.codes.push_back({f.filename().string(), StabilizerCode::from_file(f.string())});
      } catch (const std::exception& e) {
        std::cerr << "skipping code " << f.filename().string() << ": " << e.what() << "\n";
      }
    }
  }
  std::string tsv = table_tsv(build_table(to));
  if (opts.out)
    write_text(*opts.out, tsv);
  else
    out << tsv;
  return ok;
}

int cmd_sdp_build(const Instance& p, const std::string& side, const std::optional<std::string>& out_path,
                  std::ostream& out) {
  std::ostringstream text;
  if (side == "primal") {
    write_primal_json(build_primal_sdp(p.n, p.K, p.delta, p.variant), text);
  } else {
    DualInstance inst = build_dual(p.n, p.K, p.delta, p.variant);
    ordered_json j;
    j["n"] = inst.n;
    j["K"] = inst.K;
    j["delta"] = inst.delta;
    j["variant"] = to_string(inst.variant);
    j["zero_exclusion"] = inst.zero_exclusion;
    j["beta_orientation"] = inst.beta;
    auto blocks = ordered_json::array();
    for (const auto& db : inst.blocks) blocks.push_back(ordered_json{{"block", to_string(db.index)}, {"labels", db.labels}});
    j["blocks"] = blocks;
    j["coordinates"] = inst.coords.size();
    auto eqs = ordered_json::array();
    for (const auto& eq : inst.equalities) {
      auto form = ordered_json::object();
      for (const auto& [c, v] : eq.form)
        form[inst.coords[c].name] = ordered_json::array({to_string(v.rational()), to_string(v.surd())});
      eqs.push_back(ordered_json{{"label", eq.label}, {"form", form}});
    }
    j["equalities"] = eqs;
    auto obj = ordered_json::object();
    for (const auto& [c, v] : inst.objective)
      obj[inst.coords[c].name] = ordered_json::array({to_string(v.rational()), to_string(v.surd())});
    j["objective"] = obj;
    text << j.dump(1) << "\n";
  }
  if (out_path)
    write_text(*out_path, text.str());
  else
    out << text.str();
  return ok;
}

int cmd_sdp_export(const Instance& p, const std::string& side, const std::string& path, unsigned digits,
                   std::ostream& out) {
  if (side == "primal")
    export_sparse(build_primal_sdp(p.n, p.K, p.delta, p.variant), path, digits);
  else
    export_sparse(build_dual(p.n, p.K, p.delta, p.variant), path, digits);
  out << "wrote " << path << " and " << sidecar_path(path) << "\n";
  return ok;
}

int cmd_sdp_solve(const Instance& p, unsigned precision, std::ostream& out) {
  DualInstance inst = build_dual(p.n, p.K, p.delta, p.variant);
  NumericOptions no;
  no.precision = precision;
  NumericPoint pt = solve_numeric(inst, no);
  out << "status " << pt.status << "\n";
  out << "iterations " << pt.iterations << "\n";
  out << "optimum " << real_str(pt.optimum, 20) << "\n";
  out << "objective " << real_str(pt.objective, 20) << "\n";
  out << "equality residual " << real_str(pt.equality_residual, 3) << "\n";
  return ok;
}

int cmd_graph(int n, int delta, const std::optional<std::string>& out_path, std::ostream& out) {
  if (n > LovaszGraph::max_qubits) throw ResourceCapExceeded("graph export is limited to n <= 8");
  LovaszGraph g(n, delta);
  out << "vertices " << g.vertices().size() << "\n";
  out << "edges " << g.edge_count() << "\n";
  if (out_path) {
    std::ostringstream text;
    try {
      g.export_theta_sdpa(text);
    } catch (const std::length_error& e) {
      throw ResourceCapExceeded(e.what());
    }
    write_text(*out_path, text.str());
    out << "wrote " << *out_path << "\n";
  }
  return ok;
}

}  // namespace qcert::cli
