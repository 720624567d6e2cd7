#pragma once

// Exhaustive small-n analysis of chaotic iterations: the asynchronous
// iteration graph and its strong connectivity, the Markov matrix of random
// single-cell updates, the phase-space metric, and constructive witnesses of
// transitivity and dense periodic points.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ciprng/chaotic.hpp"

namespace ciprng {

/// Asynchronous iteration graph: n labeled arcs x -> F_f(i, x) per vertex.
class IterationGraph {
 public:
  static constexpr unsigned kMaxDim = 16;

  explicit IterationGraph(const BooleanFunction& f);

  [[nodiscard]] unsigned dim() const noexcept { return n_; }
  [[nodiscard]] std::size_t vertex_count() const noexcept { return std::size_t{1} << n_; }
  /// Arc targets of x; element i-1 is the arc labeled i.
  [[nodiscard]] std::span<const StateWord> successors(StateWord x) const {
    return {targets_.data() + x * n_, n_};
  }

 private:
  unsigned n_;
  std::vector<StateWord> targets_;
};

IterationGraph build_iteration_graph(const BooleanFunction& f);

/// Strongly connected components of Γ(f); component[x] is the id of x's SCC.
struct SccCertificate {
  bool strongly_connected = false;
  std::size_t component_count = 0;
  std::vector<std::uint32_t> component;
};

SccCertificate strongly_connected_components(const IterationGraph& g);

/// G_f is chaotic in Devaney's sense iff Γ(f) is strongly connected.
SccCertificate is_devaney_chaotic(const BooleanFunction& f);

/// Transition matrix of the random single-cell update chain, stored exactly as
/// integer numerators over the common denominator n.
class MarkovMatrix {
 public:
  using Numerators = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  static constexpr unsigned kMaxDim = 12;

  MarkovMatrix(unsigned n, Numerators numerators) : n_(n), num_(std::move(numerators)) {}

  [[nodiscard]] unsigned dim() const noexcept { return n_; }
  [[nodiscard]] std::int64_t denominator() const noexcept { return n_; }
  [[nodiscard]] const Numerators& numerators() const noexcept { return num_; }

  template <typename Scalar = double>
  [[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    return num_.cast<Scalar>() / static_cast<Scalar>(n_);
  }

  /// Exact checks on the rational entries.
  [[nodiscard]] bool rows_sum_to_one() const;
  [[nodiscard]] bool is_doubly_stochastic() const;

 private:
  unsigned n_;
  Numerators num_;
};

/// M_xy = (1/n)·[arc x->y] for x != y and M_xx = 1 - sum of the rest.
MarkovMatrix build_markov_matrix(const BooleanFunction& f);

/// Column sums within tol of 1 (row sums are 1 by construction).
template <typename Derived>
bool is_doubly_stochastic(const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar tol) {
  if (m.rows() != m.cols()) return false;
  using Scalar = typename Derived::Scalar;
  const auto sums = m.colwise().sum();
  return ((sums.array() - Scalar(1)).abs() <= tol).all();
}

/// (1/K) Σ_{k=1..K} M^k.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cesaro_average(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, unsigned k_max) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat power = m;
  Mat sum = m;
  for (unsigned k = 2; k <= k_max; ++k) {
    power = (power * m).eval();
    sum += power;
  }
  return sum / static_cast<Scalar>(k_max);
}

/// Largest |A_xy - 2^{-n}| over the Cesàro average A of the Markov matrix.
double cesaro_deviation(const BooleanFunction& f, unsigned k_max);

/// True iff cesaro_deviation(f, K) < tol. Requires n <= 10.
bool stationary_uniformity_check(const BooleanFunction& f, unsigned k_max, double tol);

/// Point (S, E) of the phase space, with S truncated to a finite prefix.
struct PhasePoint {
  unsigned n = 0;
  SubsetStrategy strategy;
  StateWord state = 0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct Distance {
  double value = 0;
  /// Upper bound on the omitted tail of the strategy series.
  double truncation_bound = 0;
  std::uint64_t hamming = 0;
};

/// d = Hamming(E, Ě) + (9/n) Σ_{k=1..K} |S^k Δ Š^k| / 10^k, where S^1 is the
/// first stored term. Both prefixes must hold at least K terms.
Distance distance(const PhasePoint& x, const PhasePoint& y, std::size_t k_terms);
/// Same, over the shorter of the two prefixes.
Distance distance(const PhasePoint& x, const PhasePoint& y);

/// G_f: apply the first strategy term to the state and shift the strategy.
PhasePoint step(const BooleanFunction& f, const PhasePoint& x);
PhasePoint advance(const BooleanFunction& f, PhasePoint x, std::size_t steps);

struct MetricReport {
  std::size_t points = 0;
  std::size_t triples = 0;
  bool identity = true;   ///< d(X,Y) = 0 exactly when prefixes and states agree
  bool symmetry = true;   ///< bit-exact
  bool triangle = true;   ///< within 2·truncation bound
  double max_triangle_excess = 0;
};

/// Checks the metric axioms on every ordered triple drawn from `sample`,
/// using the first `k_terms` strategy terms of each point.
MetricReport metric_axiom_suite(std::span<const PhasePoint> sample, std::size_t k_terms);

struct TransitivityWitness {
  PhasePoint point;         ///< X', within ε of X
  std::size_t steps = 0;    ///< G^steps(X') = Y
  std::size_t k0 = 0;       ///< number of leading terms of S kept
  SubsetMask flip = 0;      ///< s, the cells where G^{k0}(X) and Y disagree
  double distance = 0;      ///< d(X, X') including the truncation bound
  bool verified = false;
};

/// Strong-transitivity witness for the vectorial negation. Applying s to
/// G^{k0}(X) lands on Y's state only when f(E)_j = ¬E_j on s, which is why
/// general f are not supported.
TransitivityWitness transitivity_witness(const PhasePoint& x, const PhasePoint& target, double eps);

struct PeriodicWitness {
  SubsetStrategy period;    ///< one period of the strategy S̃
  std::size_t t1 = 0;       ///< leading terms of S copied into the period
  std::size_t t2 = 0;       ///< length of the return path
  PhasePoint point;         ///< (S̃, E), S̃ unrolled to the length of X's prefix
  double distance = 0;      ///< d(X, (S̃, E)) including the truncation bound
  bool verified = false;
};

/// Periodic point within ε of X, built from a shortest subset-labeled return
/// path from G^{t1}(X)'s state back to E. Requires n <= 10; throws
/// CertificateError when no return path exists.
PeriodicWitness periodic_point_witness(const BooleanFunction& f, const PhasePoint& x, double eps);

/// Leading strategy terms that must agree to stay within ε: max(0, ⌊-log10 ε⌋ + 1).
std::size_t agreement_terms(double eps);

}  // namespace ciprng
