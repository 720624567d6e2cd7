#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "ciprng/chaos_verifier.hpp"
#include "ciprng/errors.hpp"
#include "doctest.h"

using namespace ciprng;

namespace {

PhasePoint random_point(unsigned n, std::size_t len, std::mt19937_64& rng) {
  PhasePoint p{n, {}, rng() & low_mask(n)};
  for (std::size_t k = 0; k < len; ++k) p.strategy.push_back(rng() & low_mask(n));
  return p;
}

BooleanFunction random_function(unsigned n, std::mt19937_64& rng) {
  std::vector<StateWord> t(std::size_t{1} << n);
  for (auto& v : t) v = rng() & low_mask(n);
  return BooleanFunction(n, std::move(t));
}

}  // namespace

TEST_CASE("iteration graph arcs") {
  const IterationGraph id(BooleanFunction::identity(3));
  for (StateWord x = 0; x < 8; ++x) {
    for (StateWord y : id.successors(x)) CHECK(y == x);
  }
  const IterationGraph neg1(BooleanFunction::negation(1));
  CHECK(neg1.successors(0)[0] == 1u);
  CHECK(neg1.successors(1)[0] == 0u);

  const IterationGraph g(BooleanFunction(2, {3, 2, 1, 0}));
  CHECK(g.successors(0)[0] == 1u);
  CHECK(g.successors(0)[1] == 2u);
  CHECK(g.successors(3)[0] == 2u);
  CHECK(g.successors(3)[1] == 1u);

  CHECK_THROWS_AS(IterationGraph(BooleanFunction::identity(17)), ResourceError);
}

TEST_CASE("strong connectivity") {
  for (unsigned n = 1; n <= 10; ++n) {
    const auto cert = is_devaney_chaotic(BooleanFunction::negation(n));
    CHECK(cert.strongly_connected);
    CHECK(cert.component_count == 1u);
  }
  const auto id = is_devaney_chaotic(BooleanFunction::identity(4));
  CHECK_FALSE(id.strongly_connected);
  CHECK(id.component_count == 16u);
  CHECK_FALSE(is_devaney_chaotic(BooleanFunction::constant(2, 0)).strongly_connected);

  // Negation at the enumeration limit still runs iteratively.
  CHECK(is_devaney_chaotic(BooleanFunction::negation(16)).strongly_connected);
}

TEST_CASE("negation graph degrees") {
  for (unsigned n = 1; n <= 10; ++n) {
    const IterationGraph g(BooleanFunction::negation(n));
    std::vector<unsigned> in(g.vertex_count(), 0);
    bool out_ok = true;
    for (StateWord x = 0; x < g.vertex_count(); ++x) {
      std::set<StateWord> distinct(g.successors(x).begin(), g.successors(x).end());
      out_ok &= g.successors(x).size() == n && distinct.size() == n && !distinct.count(x);
      for (StateWord y : g.successors(x)) ++in[y];
    }
    CHECK(out_ok);
    CHECK(std::all_of(in.begin(), in.end(), [n](unsigned d) { return d == n; }));
  }
}

TEST_CASE("SCC labels agree with a reachability closure") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_function(4, rng);
    const IterationGraph g(f);
    bool reach[16][16] = {};
    for (StateWord x = 0; x < 16; ++x) {
      reach[x][x] = true;
      for (StateWord y : g.successors(x)) reach[x][y] = true;
    }
    for (int k = 0; k < 16; ++k)
      for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
    const auto cert = strongly_connected_components(g);
    std::set<std::uint32_t> ids(cert.component.begin(), cert.component.end());
    CHECK(ids.size() == cert.component_count);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) CHECK((cert.component[i] == cert.component[j]) == (reach[i][j] && reach[j][i]));
  }
}

TEST_CASE("Markov matrix") {
  const auto m = build_markov_matrix(BooleanFunction::negation(2));
  Eigen::MatrixXd expected(4, 4);
  expected << 0, .5, .5, 0, .5, 0, 0, .5, .5, 0, 0, .5, 0, .5, .5, 0;
  CHECK(m.dense<double>() == expected);
  CHECK(m.is_doubly_stochastic());

  const auto id = build_markov_matrix(BooleanFunction::identity(3));
  CHECK(id.dense<double>() == Eigen::MatrixXd::Identity(8, 8));
  CHECK(id.is_doubly_stochastic());

  const auto zero = build_markov_matrix(BooleanFunction::constant(2, 0));
  CHECK(zero.rows_sum_to_one());
  CHECK_FALSE(zero.is_doubly_stochastic());
  CHECK(zero.numerators().col(3).sum() < zero.denominator());
  CHECK_FALSE(is_doubly_stochastic(zero.dense<double>(), 1e-12));
  CHECK(is_doubly_stochastic(m.dense<double>(), 1e-12));

  for (unsigned n = 1; n <= 10; ++n) CHECK(build_markov_matrix(BooleanFunction::negation(n)).is_doubly_stochastic());
  CHECK_THROWS_AS(build_markov_matrix(BooleanFunction::negation(13)), ResourceError);
}

TEST_CASE("Cesaro average") {
  const auto avg = cesaro_average<double>(build_markov_matrix(BooleanFunction::negation(1)).dense<double>(), 2);
  CHECK(avg == Eigen::MatrixXd::Constant(2, 2, 0.5));

  CHECK(cesaro_deviation(BooleanFunction::negation(1), 64) == 0.0);
  CHECK(cesaro_deviation(BooleanFunction::negation(2), 64) == 0.0);
  CHECK(cesaro_deviation(BooleanFunction::negation(3), 64) == doctest::Approx(0.00439453125).epsilon(1e-12));
  CHECK(cesaro_deviation(BooleanFunction::negation(4), 64) == doctest::Approx(1.0 / 384).epsilon(1e-12));
  // The negation chain on n >= 3 cells still carries an O(1/K) periodic term at K = 64.
  CHECK_FALSE(stationary_uniformity_check(BooleanFunction::negation(3), 64, 1e-3));
  CHECK_FALSE(stationary_uniformity_check(BooleanFunction::negation(4), 64, 1e-3));
  CHECK(stationary_uniformity_check(BooleanFunction::negation(4), 2048, 1e-3));
  CHECK_FALSE(stationary_uniformity_check(BooleanFunction::identity(3), 64, 1e-3));
  CHECK_THROWS_AS(cesaro_deviation(BooleanFunction::negation(2), 0), DomainError);
}

TEST_CASE("distance") {
  PhasePoint x{4, {1, 2, 3}, 0b0000};
  PhasePoint y = x;
  CHECK(distance(x, y).value == 0.0);
  y.state = 0b0101;
  CHECK(distance(x, y).value == 2.0);
  CHECK(distance(x, y).hamming == 2u);

  PhasePoint a{4, {0b0001, 0, 0}, 5};
  PhasePoint b{4, {0b0011, 0, 0}, 5};
  CHECK(distance(a, b).value == doctest::Approx(0.225).epsilon(1e-15));
  CHECK(distance(a, b).truncation_bound == doctest::Approx(1e-3));

  CHECK_THROWS_AS(distance(PhasePoint{3, {0}, 0}, PhasePoint{4, {0}, 0}), DomainError);
  CHECK_THROWS_AS(distance(x, y, 4), DomainError);
}

TEST_CASE("metric axioms") {
  std::mt19937_64 rng(17);
  std::vector<PhasePoint> sample;
  for (int i = 0; i < 200; ++i) sample.push_back(random_point(4, 12, rng));
  sample.push_back(sample.front());
  const auto r = metric_axiom_suite(sample, 12);
  CHECK(r.identity);
  CHECK(r.symmetry);
  CHECK(r.triangle);
  CHECK(r.max_triangle_excess <= 2e-12);

  const std::vector<PhasePoint> same(3, sample[0]);
  const auto degenerate = metric_axiom_suite(same, 12);
  CHECK(degenerate.identity);
  CHECK(degenerate.max_triangle_excess == 0.0);
}

TEST_CASE("floor and fraction parts of the distance") {
  // Integer part is the Hamming distance of the states, fractional part
  // encodes the strategy terms digit by digit (at most 9/n * n per digit).
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_point(4, 12, rng);
    auto y = random_point(4, 12, rng);
    const auto d = distance(x, y);
    CHECK(std::floor(d.value) == static_cast<double>(d.hamming));
    CHECK(d.value - std::floor(d.value) < 1.0);

    // Agreeing on the first k terms bounds the fraction by 10^-k.
    const std::size_t k = rng() % 12;
    std::copy(x.strategy.begin(), x.strategy.begin() + static_cast<std::ptrdiff_t>(k), y.strategy.begin());
    y.state = x.state;
    CHECK(distance(x, y).value <= std::pow(10.0, -static_cast<double>(k)) * (1 + 1e-12));
  }
  // A difference confined to one term k contributes exactly 9/n * popcount * 10^-(k+1).
  for (std::size_t k = 0; k < 6; ++k) {
    PhasePoint x{4, SubsetStrategy(6, 0), 0};
    PhasePoint y = x;
    y.strategy[k] = 0b1111;
    CHECK(distance(x, y).value == doctest::Approx(9.0 * std::pow(10.0, -static_cast<double>(k + 1))));
  }
}

TEST_CASE("transitivity witnesses") {
  std::mt19937_64 rng(23);
  const double eps_values[] = {1.0, 0.5, 0.1, 0.01, 1e-3, 1e-5};
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_point(4, 12, rng);
    const auto y = random_point(4, 8, rng);
    const double eps = eps_values[trial % 6];
    const auto w = transitivity_witness(x, y, eps);
    CHECK(w.verified);
    CHECK(w.distance < eps);
    CHECK(advance(BooleanFunction::negation(4), w.point, w.steps) == y);
  }
  CHECK(transitivity_witness(PhasePoint{4, {1, 2, 3}, 0}, PhasePoint{4, {}, 0}, 1.0).k0 <= 1u);

  // Target state already reached after k0 steps: no cells to flip.
  const PhasePoint x{4, {1, 2, 4, 8, 3}, 0};
  const double eps = 0.01;
  PhasePoint y{4, {5, 6}, advance(BooleanFunction::negation(4), x, agreement_terms(eps)).state};
  const auto w = transitivity_witness(x, y, eps);
  CHECK(w.flip == 0u);
  CHECK(w.verified);

  CHECK_THROWS_AS(transitivity_witness(x, y, 0.0), DomainError);
  CHECK_THROWS_AS(transitivity_witness(x, y, -1.0), DomainError);
}

TEST_CASE("periodic point witnesses") {
  std::mt19937_64 rng(29);
  const auto neg = BooleanFunction::negation(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_point(4, 12, rng);
    const double eps = std::pow(10.0, -static_cast<double>(trial % 6));
    const auto w = periodic_point_witness(neg, x, eps);
    CHECK(w.verified);
    CHECK(iterate(neg, x.state, w.period).back() == x.state);
    CHECK(advance(neg, w.point, w.period.size()).state == x.state);
  }

  // Identity never leaves E, so the trivial period always exists.
  const PhasePoint still{3, {0b001, 0, 0}, 0b101};
  CHECK(periodic_point_witness(BooleanFunction::identity(3), still, 0.5).verified);
  // Constant zero clears a cell that can never be set again: no path back.
  const PhasePoint moved{3, {0b001, 0, 0}, 0b111};
  CHECK_THROWS_AS(periodic_point_witness(BooleanFunction::constant(3, 0), moved, 0.5), CertificateError);

  // Random strongly connected f on three cells.
  for (int found = 0; found < 10;) {
    const auto f = random_function(3, rng);
    if (!is_devaney_chaotic(f).strongly_connected) continue;
    ++found;
    const auto x = random_point(3, 10, rng);
    const auto w = periodic_point_witness(f, x, 1e-3);
    CHECK(w.verified);
    CHECK(w.distance < 1e-3);
  }
}
