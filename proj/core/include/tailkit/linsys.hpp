#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tailkit/hypergraph.hpp"
#include "tailkit/numeric.hpp"

namespace tailkit {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
unsigned integer_rank(const IntMatrix& rows);

/// Determinant of a square integer matrix, exact.
BigInt integer_determinant(const IntMatrix& square);

/// Homogeneous system A x = 0 with an l x k integer matrix, l < k and rank l.
class LinearSystem {
 public:
  /// Throws ValidationError unless rows are nonempty, rectangular, l < k and
  /// rank(A) = l.
  explicit LinearSystem(IntMatrix rows);

  unsigned rows() const noexcept { return static_cast<unsigned>(matrix_.size()); }
  unsigned cols() const noexcept { return static_cast<unsigned>(matrix_.front().size()); }
  /// Number of free variables, q = k - l.
  unsigned q() const noexcept { return cols() - rows(); }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  /// A with the given columns removed (A_J).
  IntMatrix without_columns(const std::vector<unsigned>& columns) const;

  /// Reads "l k" followed by l rows of k integers; '#' lines are comments.
  static LinearSystem parse(std::istream& in);
  static LinearSystem load(const std::string& path);

  friend bool operator==(const LinearSystem&, const LinearSystem&) = default;

 private:
  IntMatrix matrix_;
};

/// True iff every l x l column selection of A is nonsingular.
bool check_full_rank_condition(const LinearSystem& a);

/// Value sets {x_1..x_k} of solutions of A x = 0 with distinct coordinates
/// in [N], sorted ascending and listed once each, in lexicographic order.
/// Iterates the last q coordinates over [N]^q and solves for the rest
/// exactly. Throws ValidationError if the rank condition fails and
/// CapacityError if N^q exceeds the guard.
std::vector<Edge> enumerate_solution_sets(const LinearSystem& a, std::uint32_t n,
                                          const Guards& guards = {});

/// H_A(N): the k-uniform hypergraph of solution sets on [N].
Hypergraph solution_hypergraph(const LinearSystem& a, std::uint32_t n, const Guards& guards = {});

/// a(N) = |H_A(N)| / N^q.
double solution_density(const LinearSystem& a, const Hypergraph& h);

/// |H_A(m)| for m = 0..N, from a single enumeration at N.
std::vector<std::uint64_t> prefix_counts(const LinearSystem& a, std::uint32_t n,
                                         const Guards& guards = {});

struct DensityFloor {
  double value = 0.0;    ///< min over m in [k, N] of |H_A(m)| / m^q
  std::uint32_t at = 0;  ///< the minimising m
};

/// Empirical floor of |H_A(m)| / m^q over k <= m <= N.
DensityFloor measured_density_floor(const LinearSystem& a, std::uint32_t n,
                                    const Guards& guards = {});

struct PrefixCertificate {
  std::uint32_t m = 0;        ///< certificate is [1..m]
  std::uint64_t hosted = 0;   ///< |H_A(m)|
  double required = 0.0;      ///< t mu
  std::uint32_t analytic_m = 0;  ///< min(ceil((t mu / a0)^{1/q}), N) with measured a0
  double density_floor = 0.0;    ///< the a0 used for analytic_m

  std::vector<Vertex> members() const;
};

/// Smallest prefix [1..m] of [N] hosting at least t mu solution sets, with
/// mu = |H_A(N)| p^k. Throws InfeasibleError when t mu > |H_A(N)|.
PrefixCertificate prefix_certificate(const LinearSystem& a, std::uint32_t n, double p, double t,
                                     const Guards& guards = {});

/// sum over j-sets J of columns of N^{k - j - r(A_J)}: the elementary bound
/// on solutions with j prescribed coordinates. Throws ValidationError if
/// the rank condition fails.
BigInt theoretical_delta_bound(const LinearSystem& a, unsigned j, std::uint32_t n);

enum class StandardSystem { ap, schur };

std::string_view to_string(StandardSystem s);

/// ap: the (k-2) x k system x_i - 2 x_{i+1} + x_{i+2} = 0 (k >= 3).
/// schur: x + y - z = 0 (k must be 3).
LinearSystem standard_system(StandardSystem name, unsigned k);

}  // namespace tailkit
