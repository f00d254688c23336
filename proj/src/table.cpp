#include "qcert/table.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "qcert/lpbound.hpp"

namespace qcert {

std::vector<StoredCertificate> load_store(const std::string& dir, std::ostream* log) {
  std::vector<StoredCertificate> out;
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    if (log) *log << "store " << dir << " is not a directory\n";
    return out;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    Certificate cert;
    try {
      cert = read_certificate(p.string());
    } catch (const std::exception& e) {
      if (log) *log << "skipping " << p.filename().string() << ": " << e.what() << '\n';
      continue;
    }
    std::string name = p.filename().string();
    if (name != certificate_file_name(cert.n, cert.K, cert.delta, cert.variant)) {
      if (log) *log << "skipping " << name << ": file name does not match its header\n";
      continue;
    }
    Verdict v = verify_certificate(cert);
    if (!v.verified()) {
      if (log) *log << "skipping " << name << ": rejected (" << v.reason << ": " << v.location << ")\n";
      continue;
    }
    out.push_back({name, std::move(cert)});
  }
  return out;
}

namespace {

void overlay(TableEntry& e, const std::vector<StoredCertificate>& store) {
  if (e.variant != CodeVariant::general) return;
  for (const auto& sc : store) {
    const auto& c = sc.cert;
    if (c.n != e.n || c.delta != e.delta) continue;
    long long bound;
    if (c.variant == CodeVariant::general)
      bound = c.K - 1;
    else if (c.variant == CodeVariant::selfdual)
      bound = 0;
    else
      continue;
    if (bound < e.upper || (bound == e.upper && e.method == "SDP-cert" && sc.file < e.certificate)) {
      e.upper = bound;
      e.method = "SDP-cert";
      e.certificate = sc.file;
    }
  }
}

void lower_bound(TableEntry& e, const std::vector<NamedCode>& codes, const std::vector<int>& distances) {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto& c = codes[i].code;
    if (c.n() != e.n || distances[i] < e.delta) continue;
    if (e.variant == CodeVariant::selfdual && c.k() != 0) continue;
    if (!e.lower || c.K() > *e.lower || (c.K() == *e.lower && codes[i].name < e.lower_source)) {
      e.lower = c.K();
      e.lower_source = codes[i].name;
    }
  }
}

}  // namespace

std::vector<TableEntry> build_table(const TableOptions& opts) {
  std::vector<TableEntry> entries;
  for (auto v : opts.variants)
    for (int n = opts.n_min; n <= opts.n_max; ++n)
      for (int d = opts.delta_min; d <= opts.delta_max; ++d) {
        TableEntry e;
        e.n = n;
        e.delta = d;
        e.variant = v;
        entries.push_back(e);
      }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      auto& e = entries[i];
      if (e.delta > e.n + 1) {
        e.lp_upper = e.upper = 0;
        e.method = "trivial";
        continue;
      }
      e.lp_upper = e.upper = max_k(e.n, e.delta, e.variant).K;
      e.method = "LP";
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, entries.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<int> distances;
  for (const auto& c : opts.codes) {
    try {
      distances.push_back(c.code.distance());
    } catch (const std::exception&) {
      distances.push_back(-1);  // too large for the brute-force distance
    }
  }
  for (auto& e : entries) {
    if (e.method != "trivial") overlay(e, opts.store);
    lower_bound(e, opts.codes, distances);
  }
  return entries;
}

std::string table_tsv(const std::vector<TableEntry>& entries) {
  std::ostringstream out;
  out << "n\tdelta\tvariant\tlower\tlower_source\tlp_upper\tupper\tmethod\tcertificate\n";
  for (const auto& e : entries) {
    out << e.n << '\t' << e.delta << '\t' << to_string(e.variant) << '\t' << (e.lower ? std::to_string(*e.lower) : "-")
        << '\t' << (e.lower_source.empty() ? "-" : e.lower_source) << '\t' << e.lp_upper << '\t' << e.upper << '\t'
        << e.method << '\t' << (e.certificate.empty() ? "-" : e.certificate) << '\n';
  }
  return out.str();
}

}  // namespace qcert
