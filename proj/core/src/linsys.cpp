#include "tailkit/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "tailkit/errors.hpp"

namespace tailkit {

namespace {

__extension__ using Wide = __int128;

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

// Bareiss elimination in place; returns the rank and the sign of the row
// permutation applied.
unsigned bareiss(BigMatrix& m, int& sign) {
  sign = 1;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  BigInt prev = 1;
  unsigned rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

IntMatrix select_columns(const IntMatrix& m, const std::vector<unsigned>& columns) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (unsigned c : columns) out[i].push_back(m[i][c]);
  }
  return out;
}

// Calls fn(indices) for every j-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(unsigned n, unsigned j, Fn&& fn) {
  if (j > n) return;
  std::vector<unsigned> idx(j);
  for (unsigned i = 0; i < j; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int pos = static_cast<int>(j) - 1;
    while (pos >= 0 && idx[pos] == n - j + static_cast<unsigned>(pos)) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (unsigned i = static_cast<unsigned>(pos) + 1; i < j; ++i) idx[i] = idx[i - 1] + 1;
  }
}

std::int64_t checked_int64(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<std::int64_t>::max()) ||
      v < BigInt(std::numeric_limits<std::int64_t>::min())) {
    throw CapacityError("solution formula coefficients exceed 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace

unsigned integer_rank(const IntMatrix& rows) {
  if (rows.empty()) return 0;
  auto m = to_big(rows);
  int sign = 1;
  return bareiss(m, sign);
}

BigInt integer_determinant(const IntMatrix& square) {
  const std::size_t n = square.size();
  for (const auto& row : square) {
    if (row.size() != n) throw ArgumentError("determinant needs a square matrix");
  }
  if (n == 0) return 1;
  auto m = to_big(square);
  int sign = 1;
  if (bareiss(m, sign) < n) return 0;
  return sign * m[n - 1][n - 1];
}

LinearSystem::LinearSystem(IntMatrix rows) : matrix_(std::move(rows)) {
  if (matrix_.empty() || matrix_.front().empty()) {
    throw ValidationError("linear system needs at least one row and one column");
  }
  const std::size_t k = matrix_.front().size();
  for (const auto& row : matrix_) {
    if (row.size() != k) throw ValidationError("linear system rows differ in length");
  }
  if (matrix_.size() >= k) throw ValidationError("linear system needs l < k");
  if (integer_rank(matrix_) != matrix_.size()) {
    throw ValidationError("linear system matrix must have full row rank");
  }
}

IntMatrix LinearSystem::without_columns(const std::vector<unsigned>& columns) const {
  std::vector<unsigned> keep;
  for (unsigned c = 0; c < cols(); ++c) {
    if (std::find(columns.begin(), columns.end(), c) == columns.end()) keep.push_back(c);
  }
  return select_columns(matrix_, keep);
}

LinearSystem LinearSystem::parse(std::istream& in) {
  std::string line;
  long long l = -1, k = -1;
  IntMatrix rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    if (l < 0) {
      if (!(row >> l >> k) || l <= 0 || k <= 0) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header \"l k\"");
      }
      continue;
    }
    std::vector<std::int64_t> values;
    long long v = 0;
    while (row >> v) values.push_back(v);
    if (!row.eof() || values.size() != static_cast<std::size_t>(k)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(k) +
                       " integers");
    }
    rows.push_back(std::move(values));
  }
  if (l < 0) throw ParseError("missing header \"l k\"");
  if (rows.size() != static_cast<std::size_t>(l)) {
    throw ParseError("expected " + std::to_string(l) + " matrix rows, found " +
                     std::to_string(rows.size()));
  }
  return LinearSystem(std::move(rows));
}

LinearSystem LinearSystem::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse(in);
}

bool check_full_rank_condition(const LinearSystem& a) {
  bool ok = true;
  for_each_subset(a.cols(), a.rows(), [&](const std::vector<unsigned>& cols) {
    if (ok && integer_determinant(select_columns(a.matrix(), cols)) == 0) ok = false;
  });
  return ok;
}

std::vector<Edge> enumerate_solution_sets(const LinearSystem& a, std::uint32_t n,
                                          const Guards& guards) {
  if (!check_full_rank_condition(a)) {
    throw ValidationError("enumeration requires every l x l submatrix to be nonsingular");
  }
  const unsigned l = a.rows();
  const unsigned k = a.cols();
  const unsigned q = a.q();
  if (n < k) return {};
  if (std::pow(static_cast<long double>(n), q) >
      static_cast<long double>(guards.max_solution_grid)) {
    throw CapacityError("solution enumeration grid N^q exceeds the guard");
  }

  // Basis: first l columns. x_B = -adj(B) A_F y / det(B) for free values y.
  std::vector<unsigned> basis(l), free_cols(q);
  for (unsigned i = 0; i < l; ++i) basis[i] = i;
  for (unsigned i = 0; i < q; ++i) free_cols[i] = l + i;
  const IntMatrix b = select_columns(a.matrix(), basis);
  const IntMatrix f = select_columns(a.matrix(), free_cols);
  const BigInt det = integer_determinant(b);

  BigMatrix adj(l, std::vector<BigInt>(l));
  for (unsigned i = 0; i < l; ++i) {
    for (unsigned j = 0; j < l; ++j) {
      IntMatrix minor;
      for (unsigned r = 0; r < l; ++r) {
        if (r == j) continue;
        std::vector<std::int64_t> row;
        for (unsigned c = 0; c < l; ++c) {
          if (c != i) row.push_back(b[r][c]);
        }
        minor.push_back(std::move(row));
      }
      const BigInt cof = integer_determinant(minor);
      adj[i][j] = (i + j) % 2 ? BigInt(-cof) : cof;
    }
  }
  std::vector<std::vector<std::int64_t>> coeff(l, std::vector<std::int64_t>(q));
  for (unsigned i = 0; i < l; ++i) {
    for (unsigned j = 0; j < q; ++j) {
      BigInt s = 0;
      for (unsigned r = 0; r < l; ++r) s -= adj[i][r] * f[r][j];
      coeff[i][j] = checked_int64(s);
    }
  }
  const std::int64_t d = checked_int64(det);

  std::vector<Edge> found;
  std::vector<std::int64_t> y(q, 1);
  Edge x(k);
  Edge sorted(k);
  while (true) {
    bool ok = true;
    for (unsigned i = 0; i < l && ok; ++i) {
      Wide num = 0;
      for (unsigned j = 0; j < q; ++j) num += static_cast<Wide>(coeff[i][j]) * y[j];
      if (num % d != 0) {
        ok = false;
        break;
      }
      const Wide value = num / d;
      if (value < 1 || value > n) {
        ok = false;
        break;
      }
      x[i] = static_cast<Vertex>(value);
    }
    if (ok) {
      for (unsigned j = 0; j < q; ++j) x[l + j] = static_cast<Vertex>(y[j]);
      sorted = x;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
        found.push_back(sorted);
      }
    }
    unsigned pos = 0;
    while (pos < q && y[pos] == static_cast<std::int64_t>(n)) y[pos++] = 1;
    if (pos == q) break;
    ++y[pos];
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

Hypergraph solution_hypergraph(const LinearSystem& a, std::uint32_t n, const Guards& guards) {
  return Hypergraph(n, a.cols(), enumerate_solution_sets(a, n, guards));
}

double solution_density(const LinearSystem& a, const Hypergraph& h) { return h.density(a.q()); }

std::vector<std::uint64_t> prefix_counts(const LinearSystem& a, std::uint32_t n,
                                         const Guards& guards) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (const auto& e : enumerate_solution_sets(a, n, guards)) ++counts[e.back()];
  for (std::uint32_t m = 1; m <= n; ++m) counts[m] += counts[m - 1];
  return counts;
}

DensityFloor measured_density_floor(const LinearSystem& a, std::uint32_t n,
                                    const Guards& guards) {
  DensityFloor floor;
  if (n < a.cols()) return floor;
  const auto counts = prefix_counts(a, n, guards);
  for (std::uint32_t m = a.cols(); m <= n; ++m) {
    const double density = static_cast<double>(counts[m]) / std::pow(double(m), a.q());
    if (floor.at == 0 || density < floor.value) {
      floor.value = density;
      floor.at = m;
    }
  }
  return floor;
}

std::vector<Vertex> PrefixCertificate::members() const {
  std::vector<Vertex> out(m);
  for (std::uint32_t i = 0; i < m; ++i) out[i] = i + 1;
  return out;
}

PrefixCertificate prefix_certificate(const LinearSystem& a, std::uint32_t n, double p, double t,
                                     const Guards& guards) {
  if (!(t > 1.0)) throw ArgumentError("prefix certificate: t must exceed 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
  const auto counts = prefix_counts(a, n, guards);
  const std::uint64_t total = counts[n];
  PrefixCertificate cert;
  cert.required = t * static_cast<double>(total) * std::pow(p, static_cast<double>(a.cols()));
  if (cert.required > static_cast<double>(total)) {
    throw InfeasibleError("t * mu exceeds |H_A(N)|: no prefix hosts enough solutions");
  }
  // counts is nondecreasing in m, so the first hit is found by bisection.
  const auto it = std::lower_bound(counts.begin(), counts.end(), cert.required,
                                   [](std::uint64_t c, double need) { return double(c) < need; });
  cert.m = static_cast<std::uint32_t>(it - counts.begin());
  cert.hosted = counts[cert.m];

  DensityFloor floor;
  for (std::uint32_t m = a.cols(); m <= n; ++m) {
    const double density = static_cast<double>(counts[m]) / std::pow(double(m), a.q());
    if (floor.at == 0 || density < floor.value) floor = {density, m};
  }
  cert.density_floor = floor.value;
  if (floor.value > 0.0) {
    const double analytic = std::ceil(std::pow(cert.required / floor.value, 1.0 / a.q()));
    cert.analytic_m = static_cast<std::uint32_t>(std::min(analytic, static_cast<double>(n)));
  } else {
    cert.analytic_m = n;
  }
  return cert;
}

BigInt theoretical_delta_bound(const LinearSystem& a, unsigned j, std::uint32_t n) {
  if (j > a.cols()) throw ArgumentError("theoretical_delta_bound: j must lie in [0, k]");
  if (!check_full_rank_condition(a)) {
    throw ValidationError("theoretical_delta_bound requires the full rank condition");
  }
  BigInt total = 0;
  for_each_subset(a.cols(), j, [&](const std::vector<unsigned>& cols) {
    const unsigned r = integer_rank(a.without_columns(cols));
    total += boost::multiprecision::pow(BigInt(n), a.cols() - j - r);
  });
  return total;
}

std::string_view to_string(StandardSystem s) {
  switch (s) {
    case StandardSystem::ap:
      return "ap";
    case StandardSystem::schur:
      return "schur";
  }
  return "unknown";
}

LinearSystem standard_system(StandardSystem name, unsigned k) {
  switch (name) {
    case StandardSystem::ap: {
      if (k < 3) throw ArgumentError("arithmetic progressions need k >= 3");
      IntMatrix rows(k - 2, std::vector<std::int64_t>(k, 0));
      for (unsigned i = 0; i + 2 < k; ++i) {
        rows[i][i] = 1;
        rows[i][i + 1] = -2;
        rows[i][i + 2] = 1;
      }
      return LinearSystem(std::move(rows));
    }
    case StandardSystem::schur:
      if (k != 3) throw ArgumentError("Schur triples have k = 3");
      return LinearSystem({{1, 1, -1}});
  }
  throw ArgumentError("unknown standard system");
}

}  // namespace tailkit
