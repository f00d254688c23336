#include "qcert/terwilliger.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <set>
#include <stdexcept>

namespace qcert {

namespace {

constexpr int table_size = 160;

// binomials for 0 <= n < table_size; zero outside the triangle
const BigInt& small_binomial(int n, int k) {
  static const std::vector<std::vector<BigInt>> table = [] {
    std::vector<std::vector<BigInt>> t(table_size);
    for (int a = 0; a < table_size; ++a) {
      t[a].resize(a + 1);
      t[a][0] = t[a][a] = 1;
      for (int b = 1; b < a; ++b) t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
    }
    return t;
  }();
  static const BigInt zero = 0;
  if (n < 0 || k < 0 || k > n) return zero;
  if (n >= table_size) throw std::out_of_range("binomial table exceeded");
  return table[n][k];
}

BigInt factorial(int n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace

bool in_index_set(const IndexQuad& q, int n) {
  return q.p >= 0 && q.p <= q.t && q.t <= q.i && q.t <= q.j && q.i + q.j <= q.t + n && q.i <= n && q.j <= n;
}

std::vector<IndexQuad> index_set(int n) {
  if (n < 1) throw std::invalid_argument("index_set requires n >= 1");
  std::vector<IndexQuad> out;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int t = 0; t <= std::min(i, j); ++t)
        for (int p = 0; p <= t; ++p)
          if (i + j <= t + n) out.push_back({i, j, t, p});
  return out;
}

std::vector<IndexQuad> class_members(const IndexQuad& q, int n) {
  int s = q.t - q.p;
  if (s % 2 != 0) return {q};
  std::array<int, 3> tri{q.i, q.j, q.d()};
  std::sort(tri.begin(), tri.end());
  std::set<IndexQuad> members;
  do {
    int num = tri[0] + tri[1] - tri[2] + s;
    if (num < 0 || num % 2 != 0) continue;
    int t = num / 2;
    IndexQuad m{tri[0], tri[1], t, t - s};
    if (in_index_set(m, n)) members.insert(m);
  } while (std::next_permutation(tri.begin(), tri.end()));
  return {members.begin(), members.end()};
}

std::optional<IndexQuad> canonical_class(const IndexQuad& q, int n) {
  if ((q.t - q.p) % 2 != 0) return std::nullopt;
  return class_members(q, n).front();
}

Rat orbit_size(const IndexQuad& q, int n) {
  if (!in_index_set(q, n)) throw std::invalid_argument("quad outside I(n)");
  BigInt multinomial = factorial(n) / (factorial(q.t) * factorial(q.i - q.t) * factorial(q.j - q.t) *
                                       factorial(n - q.i - q.j + q.t));
  return Rat(binomial(q.t, q.p) * power(3, q.i + q.j - q.t) * power(2, q.t - q.p) * multinomial);
}

BigInt beta_coeff(int m, int t, int i, int j, int k) {
  BigInt sum = 0;
  for (int u = 0; u <= m; ++u) {
    const BigInt& c1 = small_binomial(u, t);
    if (sgn(c1) == 0) continue;
    const BigInt& c2 = small_binomial(m - 2 * k, m - k - u);
    if (sgn(c2) == 0) continue;
    const BigInt& c3 = small_binomial(m - k - u, i - u);
    if (sgn(c3) == 0) continue;
    const BigInt& c4 = small_binomial(m - k - u, j - u);
    if (sgn(c4) == 0) continue;
    BigInt term = c1 * c2 * c3 * c4;
    if ((t - u) % 2 != 0) sum -= term;
    else sum += term;
  }
  return sum;
}

QExt alpha_coeff(int i, int j, int t, int p, int a, int k, int n) {
  BigInt beta = beta_coeff(n - a, t - a, i - a, j - a, k - a);
  if (sgn(beta) == 0) return QExt();
  BigInt g_sum = 0;
  for (int g = 0; g <= p; ++g) {
    const BigInt& c1 = small_binomial(a, g);
    const BigInt& c2 = small_binomial(t - a, p - g);
    if (sgn(c1) == 0 || sgn(c2) == 0) continue;
    int e = t - a - p + g;
    if (e < 0) continue;
    BigInt term = c1 * c2 * power(2, e);
    if ((a - g) % 2 != 0) g_sum -= term;
    else g_sum += term;
  }
  if (sgn(g_sum) == 0) return QExt();
  // (q-1)^{(i+j)/2 - t} with q = 4
  int twice = i + j - 2 * t;
  if (twice < 0) throw std::invalid_argument("alpha_coeff requires t <= (i+j)/2");
  Rat value(beta * g_sum * power(3, twice / 2));
  if (twice % 2 == 0) return QExt(value);
  return QExt(Rat(0), value);
}

std::string to_string(const BlockIndex& b) { return std::to_string(b.a) + "," + std::to_string(b.k); }

std::vector<BlockIndex> block_indices(int n) {
  std::vector<BlockIndex> out;
  for (int a = 0; a <= n; ++a)
    for (int k = a; 2 * k <= n + a; ++k) out.push_back({a, k});
  return out;
}

std::vector<int> block_labels(const BlockIndex& b, int n, int delta, CodeVariant variant) {
  std::vector<int> out;
  for (int i = b.first(); i <= b.last(n); ++i) {
    if (is_pure_like(variant) && i > 0 && i < delta) continue;
    out.push_back(i);
  }
  return out;
}

std::vector<AlphaTerm> alpha_terms(const IndexQuad& q, int n) {
  std::vector<AlphaTerm> out;
  for (int k = 0; k <= std::min(q.i, q.j); ++k)
    for (int a = std::max(0, std::max(q.i, q.j) + k - n); a <= k; ++a) {
      QExt c = alpha_coeff(q.i, q.j, q.t, q.p, a, k, n);
      if (!c.is_zero()) out.push_back({{a, k}, std::move(c)});
    }
  return out;
}

std::vector<std::pair<BlockIndex, SymMatrixQ>> assemble_blocks(const std::map<IndexQuad, Rat>& x, int n) {
  std::vector<std::pair<BlockIndex, SymMatrixQ>> out;
  std::map<BlockIndex, std::size_t> position;
  for (const auto& b : block_indices(n)) {
    position[b] = out.size();
    out.emplace_back(b, SymMatrixQ(b.full_dim(n)));
  }
  for (const auto& q : index_set(n)) {
    if (q.i < q.j) continue;  // symmetric storage; (j,i) quads give the same entry
    auto rep = canonical_class(q, n);
    if (!rep) continue;
    auto terms = alpha_terms(q, n);
    if (terms.empty()) continue;
    auto it = x.find(*rep);
    if (it == x.end()) throw std::out_of_range("no value for class " + to_string(*rep));
    if (sgn(it->second) == 0) continue;
    for (const auto& term : terms) {
      auto& m = out[position.at(term.block)].second;
      m(q.i - term.block.k, q.j - term.block.k) += term.coeff * QExt(it->second);
    }
  }
  return out;
}

std::map<IndexQuad, Rat> normalized_weights(const MatrixWeights& lambda) {
  std::map<IndexQuad, Rat> x;
  for (const auto& q : index_set(lambda.n)) {
    auto rep = canonical_class(q, lambda.n);
    if (!rep || *rep != q) continue;
    x[q] = lambda.at(q) / orbit_size(q, lambda.n);
  }
  return x;
}

}  // namespace qcert
