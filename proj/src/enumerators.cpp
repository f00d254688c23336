#include "qcert/enumerators.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>
#include <unordered_map>

namespace qcert {

namespace {

// rank over GF(2) of the symplectic vectors (x|z)
int symplectic_rank(const std::vector<PauliString>& ps) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  for (const auto& p : ps) rows.emplace_back(p.x_bits(), p.z_bits());
  int rank = 0;
  int n = ps.empty() ? 0 : ps.front().size();
  for (int col = 0; col < 2 * n && rank < static_cast<int>(rows.size()); ++col) {
    auto bit = [&](const std::pair<std::uint64_t, std::uint64_t>& r) {
      return col < n ? (r.first >> col) & 1 : (r.second >> (col - n)) & 1;
    };
    std::size_t piv = rank;
    while (piv < rows.size() && !bit(rows[piv])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && bit(rows[r])) {
        rows[r].first ^= rows[rank].first;
        rows[r].second ^= rows[rank].second;
      }
    }
    ++rank;
  }
  return rank;
}

// phaseless index -> +1/-1 for elements of the stabilizer group
std::unordered_map<std::uint64_t, int> signed_members(const StabilizerCode& code) {
  std::unordered_map<std::uint64_t, int> out;
  for (const auto& s : code.group()) out[s.index()] = s.phase() == 0 ? 1 : -1;
  return out;
}

}  // namespace

StabilizerCode StabilizerCode::from_generators(std::vector<PauliString> generators) {
  if (generators.empty()) throw std::invalid_argument("use StabilizerCode::trivial for an empty generator list");
  int n = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("generators have different lengths");
    if (g.phase() % 2 != 0) throw std::invalid_argument("generator " + g.str() + " is not Hermitian");
  }
  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b)
      if (commute_sign(generators[a], generators[b]) < 0)
        throw std::invalid_argument("generators " + generators[a].str() + " and " + generators[b].str() +
                                    " anticommute");
  if (symplectic_rank(generators) != static_cast<int>(generators.size()))
    throw std::invalid_argument("generators are not independent");
  StabilizerCode c;
  c.n_ = n;
  c.generators_ = std::move(generators);
  return c;
}

StabilizerCode StabilizerCode::trivial(int n) {
  StabilizerCode c;
  c.n_ = PauliString(n).size();
  return c;
}

StabilizerCode StabilizerCode::parse(std::istream& in) {
  std::vector<PauliString> gens;
  int n = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      // "# n=3" declares the length of a code without generators
      auto eq = line.find("n=", hash);
      if (eq != std::string::npos) n = std::stoi(line.substr(eq + 2));
      line.erase(hash);
    }
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    gens.push_back(PauliString::parse(std::string_view(line).substr(b, e - b + 1)));
  }
  if (gens.empty()) {
    if (n < 1) throw std::invalid_argument("code file has no generators and no '# n=' declaration");
    return trivial(n);
  }
  return from_generators(std::move(gens));
}

StabilizerCode StabilizerCode::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse(in);
}

std::vector<PauliString> StabilizerCode::group() const {
  std::vector<PauliString> out{PauliString(n_)};
  for (const auto& g : generators_) {
    std::size_t half = out.size();
    for (std::size_t i = 0; i < half; ++i) out.push_back(out[i] * g);
  }
  return out;
}

int StabilizerCode::distance() const {
  if (n_ > 7) throw std::invalid_argument("distance brute force limited to n <= 7");
  auto members = signed_members(*this);
  int best = n_ + 1;
  std::uint64_t total = std::uint64_t(1) << (2 * n_);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    PauliString e = PauliString::from_index(n_, idx);
    if (e.weight() >= best) continue;
    bool in_group = members.count(idx) > 0;
    if (k() == 0) {
      if (in_group) best = e.weight();
      continue;
    }
    if (in_group) continue;
    bool commutes = true;
    for (const auto& g : generators_)
      if (commute_sign(e, g) < 0) {
        commutes = false;
        break;
      }
    if (commutes) best = e.weight();
  }
  return best;
}

Rat krawtchouk(int j, int i, int n) {
  if (n < 0 || i < 0 || j < 0 || i > n || j > n) throw std::out_of_range("krawtchouk index out of range");
  BigInt sum = 0;
  for (int a = 0; a <= j; ++a) {
    BigInt term = power(3, j - a) * binomial(i, a) * binomial(n - i, j - a);
    if (a % 2) sum -= term;
    else sum += term;
  }
  return Rat(sum);
}

WeightEnumerator stabilizer_weight_distribution(const StabilizerCode& code) {
  WeightEnumerator a{code.n(), std::vector<Rat>(code.n() + 1)};
  for (const auto& s : code.group()) a[s.weight()] += 1;
  Rat k2 = to_rat(code.K()) * to_rat(code.K());
  for (auto& v : a.values) v *= k2;
  return a;
}

namespace {

WeightEnumerator transform(const WeightEnumerator& a, bool alternate) {
  int n = a.n;
  if (static_cast<int>(a.values.size()) != n + 1) throw std::invalid_argument("enumerator length mismatch");
  WeightEnumerator out{n, std::vector<Rat>(n + 1)};
  Rat scale(1, 1);
  scale /= Rat(power(2, n));
  for (int j = 0; j <= n; ++j) {
    Rat s = 0;
    for (int i = 0; i <= n; ++i) {
      if (sgn(a[i]) == 0) continue;
      Rat term = krawtchouk(j, i, n) * a[i];
      if (alternate && i % 2) s -= term;
      else s += term;
    }
    out[j] = s * scale;
  }
  return out;
}

}  // namespace

WeightEnumerator macwilliams_transform(const WeightEnumerator& a) { return transform(a, false); }

WeightEnumerator shadow_transform(const WeightEnumerator& a) { return transform(a, true); }

Rat MomentMatrix::at(std::uint64_t a, std::uint64_t b) const {
  auto it = entries_.find({a, b});
  return it == entries_.end() ? Rat(0) : it->second;
}

MomentMatrix gamma_moment_matrix(const StabilizerCode& code) {
  if (code.n() > oracle_max_qubits) throw std::invalid_argument("moment matrix oracle limited to n <= 5");
  int n = code.n();
  auto members = signed_members(code);
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rat> entries;
  // tr(E rho) is +-1 on the group and 0 elsewhere, so only group pairs survive
  for (const auto& [ia, sa] : members) {
    PauliString ea = PauliString::from_index(n, ia);
    for (const auto& [ib, sb] : members) {
      PauliString prod = ea * PauliString::from_index(n, ib);
      auto it = members.find(prod.index());
      if (it == members.end()) continue;
      // prod = i^phase E_c; group elements commute so the phase is real
      int real = prod.phase() == 0 ? 1 : -1;
      entries[{ia, ib}] = Rat(sa * sb * it->second * real);
    }
  }
  return MomentMatrix(n, std::move(entries));
}

Rat MatrixWeights::at(const IndexQuad& q) const {
  auto it = values.find(q);
  return it == values.end() ? Rat(0) : it->second;
}

MatrixWeights matrix_weights_from_code(const StabilizerCode& code) {
  MomentMatrix gamma = gamma_moment_matrix(code);
  MatrixWeights out{code.n(), {}};
  int n = code.n();
  for (const auto& [ab, v] : gamma.nonzeros()) {
    IndexQuad q = pair_profile(PauliString::from_index(n, ab.first), PauliString::from_index(n, ab.second));
    out.values[q] += v;
  }
  for (auto it = out.values.begin(); it != out.values.end();) {
    if (sgn(it->second) == 0) it = out.values.erase(it);
    else ++it;
  }
  return out;
}

}  // namespace qcert
