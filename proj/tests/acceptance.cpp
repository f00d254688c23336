// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qcert/lpbound.hpp"
#include "qcert/numeric.hpp"
#include "qcert/table.hpp"

using namespace qcert;
namespace fs = std::filesystem;

namespace {

const std::string data = QCERT_DATA_DIR;
const std::string store = data + "/../certificates";
const std::string golden = store + "/7-1-4-selfdual.json";

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(QCERT_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome worked_example() {
  Outcome o;
  auto r = run_cli("enum " + data + "/codes/five_qubit.txt");
  if (r.code != 0) o.fail("enum exit " + std::to_string(r.code));
  if (r.out.find("A = (4,0,0,0,60,0)\n") == std::string::npos) o.fail("A line differs");
  // lambda^{t,p}_{i,j} printed as lambda[i,j,t,p]
  std::set<std::string> expected{"lambda[0,0,0,0] = 1", "lambda[4,0,0,0] = 15", "lambda[4,4,4,4] = 15",
                                 "lambda[4,4,3,1] = 180", "lambda[4,4,4,0] = 30"};
  std::set<std::string> got;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("lambda[", 0) == 0) got.insert(line);
  if (got != expected) o.fail("lambda nonzeros differ from the published values");
  // the complete table, both orderings of (i, j): every other entry is zero
  auto lam = matrix_weights_from_code(StabilizerCode::from_file(data + "/codes/five_qubit.txt"));
  std::size_t nonzero = 0;
  for (const auto& [q, v] : lam.values) nonzero += sgn(v) != 0;
  if (nonzero != 6 || lam.at({0, 4, 0, 0}) != 15) o.fail("full lambda table has unexpected entries");
  return o;
}

Outcome transforms() {
  Outcome o;
  int codes = 0;
  for (const auto& c : oracle::corpus(5)) {
    ++codes;
    auto a = stabilizer_weight_distribution(c);
    auto b = macwilliams_transform(a);
    if (b.values != oracle::dense_b(c)) o.fail("B differs from the dense projector at n=" + std::to_string(c.n()));
    for (const auto& s : shadow_transform(a).values)
      if (sgn(s) < 0) o.fail("negative shadow at n=" + std::to_string(c.n()));
    Rat k(static_cast<long>(c.K()));
    for (int j = 0; j < c.distance(); ++j)
      if (k * b[j] != a[j]) o.fail("Knill-Laflamme fails below the distance");
  }
  if (codes < 5) o.fail("corpus too small");
  o.detail = o.pass ? std::to_string(codes) + " codes" : o.detail;
  return o;
}

Outcome orbit_oracle() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    const std::uint64_t size = std::uint64_t(1) << (2 * n);
    std::vector<std::string> letters;
    for (std::uint64_t a = 0; a < size; ++a) letters.push_back(PauliString::from_index(n, a).phaseless().str());
    std::map<IndexQuad, BigInt> counts;
    for (const auto& x : letters)
      for (const auto& y : letters) {
        IndexQuad q;
        for (int s = 0; s < n; ++s) {
          q.i += x[s] != 'I';
          q.j += y[s] != 'I';
          q.t += x[s] != 'I' && y[s] != 'I';
          q.p += x[s] != 'I' && x[s] == y[s];
        }
        counts[q] += 1;
      }
    Rat total = 0;
    auto quads = index_set(n);
    if (quads.size() != counts.size()) o.fail("index set size differs at n=" + std::to_string(n));
    for (const auto& q : quads) {
      if (orbit_size(q, n) != Rat(counts[q])) o.fail("orbit size differs at " + to_string(q));
      total += orbit_size(q, n);
    }
    if (total != Rat(power(16, n))) o.fail("orbit sizes do not sum to 16^n");
  }
  return o;
}

Outcome block_psd() {
  Outcome o;
  int blocks = 0;
  for (const auto& c : oracle::corpus(oracle_max_qubits)) {
    auto x = normalized_weights(matrix_weights_from_code(c));
    for (const auto& [b, m] : assemble_blocks(x, c.n())) {
      ++blocks;
      if (!is_psd(m)) o.fail("block " + to_string(b) + " not PSD at n=" + std::to_string(c.n()));
    }
  }
  if (o.pass) o.detail = std::to_string(blocks) + " blocks, beta orientation " + beta_orientation;
  return o;
}

Outcome end_to_end() {
  Outcome o;
  auto dir = fs::temp_directory_path() / "qcert-acceptance-certify";
  fs::remove_all(dir);
  auto r = run_cli("certify --n 7 --K 1 --delta 4 --variant selfdual --precision 256 --out " + dir.string());
  if (r.code != 0) {
    o.fail("certify exit " + std::to_string(r.code) + ": " + r.out);
    return o;
  }
  auto v = run_cli("verify " + (dir / "7-1-4-selfdual.json").string());
  if (v.code != 0) o.fail("verify exit " + std::to_string(v.code));
  try {
    auto j = nlohmann::json::parse(v.out);
    QExt obj(parse_rat(j.at("objective")[0].get<std::string>()), parse_rat(j.at("objective")[1].get<std::string>()));
    if (sign(obj) <= 0) o.fail("objective not positive");
    if (o.pass) o.detail = "objective ~ " + std::to_string(to_double(obj));
  } catch (const std::exception& e) {
    o.fail(std::string("verdict unreadable: ") + e.what());
  }
  return o;
}

Outcome lp_table() {
  Outcome o;
  struct Case {
    int n, delta;
    long long K;
  };
  for (auto c : {Case{16, 3, 1260}, Case{17, 4, 512}, Case{6, 5, 0}}) {
    long long k = max_k(c.n, c.delta, CodeVariant::general).K;
    if (k != c.K)
      o.fail("max_k(" + std::to_string(c.n) + "," + std::to_string(c.delta) + ") = " + std::to_string(k) +
             ", expected " + std::to_string(c.K));
  }
  // (7,4): the LP leaves K = 1; the table entry 0 comes from the self-dual certificate
  TableOptions t;
  t.n_min = t.n_max = 7;
  t.delta_min = t.delta_max = 4;
  t.store = load_store(store);
  auto e = build_table(t).at(0);
  if (e.upper != 0 || e.method != "SDP-cert") o.fail("(7,4) entry is " + std::to_string(e.upper) + " via " + e.method);
  if (o.pass) o.detail = "(7,4): LP " + std::to_string(e.lp_upper) + ", certified 0";
  return o;
}

Outcome soundness() {
  Outcome o;
  struct Existing {
    std::string file;
    int n, delta;
    long long K;
  };
  std::vector<Existing> cases{{"five_qubit.txt", 5, 3, 2}, {"bell.txt", 2, 2, 1}};
  for (const auto& c : oracle::corpus(7)) {
    int d = c.distance();
    if (d < 2) continue;
    cases.push_back({"", c.n(), d, c.K()});
  }
  std::vector<RoundingPolicy> policies(3);
  policies[1].require_margin = false;
  policies[2].require_margin = false;
  policies[2].denominator_schedule = {BigInt(10), BigInt(100), BigInt(1000), BigInt(10000), BigInt(100000)};
  policies[2].max_attempts = 5;
  policies[2].projection_tolerance = Rat(1, 10);
  int attempts = 0;
  for (const auto& c : cases) {
    std::string tag = "(" + std::to_string(c.n) + "," + std::to_string(c.K) + "," + std::to_string(c.delta) + ")";
    if (!c.file.empty()) {
      auto code = StabilizerCode::from_file(data + "/codes/" + c.file);
      auto a = stabilizer_weight_distribution(code);
      auto lp = build_lp(c.n, c.K, c.delta, CodeVariant::general);
      if (!satisfies(lp, a.values)) o.fail("code enumerator is not an LP witness at " + tag);
      if (!solve_feasibility(lp).feasible) o.fail("LP infeasible at " + tag);
    }
    DualInstance inst;
    try {
      inst = build_dual(c.n, c.K, c.delta, CodeVariant::general);
    } catch (const DegenerateDenominator&) {
      continue;
    }
    for (unsigned prec : {15u, 40u}) {
      NumericOptions no;
      no.precision = prec;
      auto pt = solve_numeric(inst, no);
      for (const auto& p : policies) {
        ++attempts;
        if (std::holds_alternative<Certificate>(round_to_exact(inst, pt, p)))
          o.fail("certificate emitted at " + tag);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " parameter sets, " + std::to_string(attempts) + " attempts";
  return o;
}

Outcome robustness() {
  Outcome o;
  const auto cert = read_certificate(golden);
  auto inst = build_dual(cert.n, cert.K, cert.delta, cert.variant);
  if (!verify_certificate(inst, cert).verified()) {
    o.fail("golden certificate does not verify");
    return o;
  }
  std::vector<BlockIndex> keys;
  for (const auto& [b, m] : cert.Y) keys.push_back(b);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> small(-50, 50), den(1, 50);
  std::map<std::string, int> reasons;
  for (int k = 0; k < 1000; ++k) {
    Certificate m = cert;
    auto& y = m.Y.at(keys[rng() % keys.size()]);
    auto& entry = y.packed()[rng() % y.packed().size()];
    const QExt before = entry;
    do {
      switch (rng() % 3) {
        case 0: entry = -entry; break;
        case 1: entry = QExt(); break;
        default: {
          Rat a(small(rng), den(rng)), b(small(rng), den(rng));
          a.canonicalize();
          b.canonicalize();
          entry = rng() % 2 ? QExt(a) : QExt(Rat(0), b);
        }
      }
    } while (entry == before);
    auto v = verify_certificate(inst, m);
    if (v.verified()) o.fail("mutation " + std::to_string(k) + " verified");
    if (v.location.empty()) o.fail("mutation " + std::to_string(k) + " rejected without a label");
    ++reasons[v.reason];
  }
  if (o.pass) {
    o.detail = "1000 rejected:";
    for (const auto& [r, n] : reasons) o.detail += " " + r + "=" + std::to_string(n);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  std::vector<Criterion> all{
      {1, "worked example enumerators", 10, worked_example},
      {2, "transform consistency", 60, transforms},
      {3, "orbit size oracle", 300, orbit_oracle},
      {4, "block PSD for codes", 300, block_psd},
      {5, "certificate for ((7,1,4)) at 256 digits", 1800, end_to_end},
      {6, "LP table regression", 600, lp_table},
      {7, "soundness at existing codes", 600, soundness},
      {8, "verifier robustness", 600, robustness},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) o.fail("over the time budget");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << std::fixed
              << std::setprecision(1) << secs << " s)" << (o.detail.empty() ? "" : " - " + o.detail) << std::endl;
  }
  return failures;
}
