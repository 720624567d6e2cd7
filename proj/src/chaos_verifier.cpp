#include "ciprng/chaos_verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

namespace ciprng {

IterationGraph::IterationGraph(const BooleanFunction& f) : n_(f.dim()) {
  if (n_ > kMaxDim) throw ResourceError("iteration graph: n > 16 is not enumerated");
  const std::size_t count = vertex_count();
  targets_.resize(count * n_);
  for (StateWord x = 0; x < count; ++x) {
    const StateWord fx = f(x);
    for (unsigned i = 0; i < n_; ++i) {
      const StateWord bit = StateWord{1} << i;
      targets_[x * n_ + i] = (x & ~bit) | (fx & bit);
    }
  }
}

IterationGraph build_iteration_graph(const BooleanFunction& f) { return IterationGraph(f); }

SccCertificate strongly_connected_components(const IterationGraph& g) {
  // Iterative Tarjan; recursion depth would reach 2^16 on path-like graphs.
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const std::size_t count = g.vertex_count();
  const unsigned n = g.dim();

  std::vector<std::uint32_t> index(count, kUnvisited), low(count, 0);
  std::vector<bool> on_stack(count, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, unsigned>> call;  // (vertex, next arc)

  SccCertificate cert;
  cert.component.assign(count, 0);
  std::uint32_t next_index = 0;

  for (std::uint32_t root = 0; root < count; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      auto& [v, arc] = call.back();
      if (arc < n) {
        const auto w = static_cast<std::uint32_t>(g.successors(v)[arc++]);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        const auto id = static_cast<std::uint32_t>(cert.component_count++);
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          cert.component[w] = id;
        } while (w != done);
      }
    }
  }
  cert.strongly_connected = cert.component_count == 1;
  return cert;
}

SccCertificate is_devaney_chaotic(const BooleanFunction& f) {
  return strongly_connected_components(build_iteration_graph(f));
}

bool MarkovMatrix::rows_sum_to_one() const {
  return (num_.rowwise().sum().array() == denominator()).all();
}

bool MarkovMatrix::is_doubly_stochastic() const {
  return rows_sum_to_one() && (num_.colwise().sum().array() == denominator()).all();
}

MarkovMatrix build_markov_matrix(const BooleanFunction& f) {
  const unsigned n = f.dim();
  if (n > MarkovMatrix::kMaxDim) throw ResourceError("markov matrix: n > 12 exceeds the dense limit");
  const IterationGraph g(f);
  const auto count = static_cast<Eigen::Index>(g.vertex_count());
  MarkovMatrix::Numerators num = MarkovMatrix::Numerators::Zero(count, count);
  for (Eigen::Index x = 0; x < count; ++x) {
    std::int64_t leaving = 0;
    for (StateWord y : g.successors(static_cast<StateWord>(x))) {
      // Distinct labels reach distinct non-loop targets, so adjacency is 0/1.
      if (static_cast<Eigen::Index>(y) != x && num(x, static_cast<Eigen::Index>(y)) == 0) {
        num(x, static_cast<Eigen::Index>(y)) = 1;
        ++leaving;
      }
    }
    num(x, x) = n - leaving;
  }
  return MarkovMatrix(n, std::move(num));
}

double cesaro_deviation(const BooleanFunction& f, unsigned k_max) {
  if (f.dim() > 10) throw ResourceError("cesaro average: n > 10 is not supported");
  if (k_max == 0) throw DomainError("cesaro average: K must be positive");
  const Eigen::MatrixXd avg = cesaro_average<double>(build_markov_matrix(f).dense<double>(), k_max);
  const double uniform = std::ldexp(1.0, -static_cast<int>(f.dim()));
  return (avg.array() - uniform).abs().maxCoeff();
}

bool stationary_uniformity_check(const BooleanFunction& f, unsigned k_max, double tol) {
  return cesaro_deviation(f, k_max) < tol;
}

Distance distance(const PhasePoint& x, const PhasePoint& y, std::size_t k_terms) {
  if (x.n != y.n || x.n == 0) throw DomainError("distance: points live in different spaces");
  if (x.strategy.size() < k_terms || y.strategy.size() < k_terms) {
    throw DomainError("distance: strategy prefix shorter than K");
  }
  Distance d;
  d.hamming = static_cast<std::uint64_t>(std::popcount(x.state ^ y.state));
  // Sum the series from its least significant term upwards.
  double series = 0;
  for (std::size_t k = k_terms; k-- > 0;) {
    series = (series + std::popcount(x.strategy[k] ^ y.strategy[k])) / 10.0;
  }
  d.value = static_cast<double>(d.hamming) + 9.0 / x.n * series;
  d.truncation_bound = std::pow(10.0, -static_cast<double>(k_terms));
  return d;
}

Distance distance(const PhasePoint& x, const PhasePoint& y) {
  return distance(x, y, std::min(x.strategy.size(), y.strategy.size()));
}

PhasePoint step(const BooleanFunction& f, const PhasePoint& x) {
  if (x.strategy.empty()) throw DomainError("step: strategy prefix exhausted");
  PhasePoint next{x.n, SubsetStrategy(x.strategy.begin() + 1, x.strategy.end()),
                  apply_subset(f, x.strategy.front(), x.state)};
  return next;
}

PhasePoint advance(const BooleanFunction& f, PhasePoint x, std::size_t steps) {
  if (x.strategy.size() < steps) throw DomainError("advance: strategy prefix exhausted");
  StateWord e = x.state;
  for (std::size_t k = 0; k < steps; ++k) e = apply_subset(f, x.strategy[k], e);
  x.strategy.erase(x.strategy.begin(), x.strategy.begin() + static_cast<std::ptrdiff_t>(steps));
  x.state = e;
  return x;
}

MetricReport metric_axiom_suite(std::span<const PhasePoint> sample, std::size_t k_terms) {
  MetricReport report;
  const std::size_t m = sample.size();
  report.points = m;
  report.triples = m * m * m;
  std::vector<double> d(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      d[a * m + b] = distance(sample[a], sample[b], k_terms).value;
    }
  }
  const double slack = 2.0 * std::pow(10.0, -static_cast<double>(k_terms));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const bool same = sample[a].state == sample[b].state &&
                        std::equal(sample[a].strategy.begin(), sample[a].strategy.begin() + k_terms,
                                   sample[b].strategy.begin());
      if ((d[a * m + b] == 0.0) != same || d[a * m + b] < 0) report.identity = false;
      if (d[a * m + b] != d[b * m + a]) report.symmetry = false;
      for (std::size_t c = 0; c < m; ++c) {
        const double excess = d[a * m + c] - (d[a * m + b] + d[b * m + c]);
        report.max_triangle_excess = std::max(report.max_triangle_excess, excess);
        if (excess > slack) report.triangle = false;
      }
    }
  }
  return report;
}

std::size_t agreement_terms(double eps) {
  if (!(eps > 0)) throw DomainError("witness: epsilon must be positive");
  const double t = std::floor(-std::log10(eps)) + 1.0;
  return t <= 0 ? 0 : static_cast<std::size_t>(t);
}

TransitivityWitness transitivity_witness(const PhasePoint& x, const PhasePoint& target, double eps) {
  const std::size_t k0 = agreement_terms(eps);
  if (x.n != target.n) throw DomainError("transitivity witness: points live in different spaces");
  if (x.strategy.size() < k0) throw DomainError("transitivity witness: prefix of X shorter than k0");
  const BooleanFunction neg = BooleanFunction::negation(x.n);

  TransitivityWitness w;
  w.k0 = k0;
  w.flip = advance(neg, x, k0).state ^ target.state;
  w.steps = k0 + 1;
  w.point.n = x.n;
  w.point.state = x.state;
  w.point.strategy.assign(x.strategy.begin(), x.strategy.begin() + static_cast<std::ptrdiff_t>(k0));
  w.point.strategy.push_back(w.flip);
  w.point.strategy.insert(w.point.strategy.end(), target.strategy.begin(), target.strategy.end());

  const Distance d = distance(x, w.point);
  w.distance = d.value + d.truncation_bound;
  w.verified = w.distance < eps && advance(neg, w.point, w.steps) == target;
  return w;
}

PeriodicWitness periodic_point_witness(const BooleanFunction& f, const PhasePoint& x, double eps) {
  const unsigned n = f.dim();
  if (n > 10) throw ResourceError("periodic witness: subset-arc search limited to n <= 10");
  if (x.n != n) throw DomainError("periodic witness: point dimension differs from f");
  const std::size_t t1 = agreement_terms(eps);
  if (x.strategy.size() < t1) throw DomainError("periodic witness: prefix of X shorter than t1");

  const StateWord start = advance(f, x, t1).state;
  const StateWord home = x.state;

  // Breadth-first search over all 2^n subset-labeled arcs from `start`.
  const std::size_t count = std::size_t{1} << n;
  constexpr StateWord kNone = std::numeric_limits<StateWord>::max();
  std::vector<StateWord> parent(count, kNone);
  std::vector<SubsetMask> via(count, 0);
  std::vector<StateWord> frontier{start};
  parent[start] = start;
  for (std::size_t head = 0; head < frontier.size() && parent[home] == kNone; ++head) {
    const StateWord v = frontier[head];
    for (SubsetMask p = 0; p < count; ++p) {
      const StateWord u = apply_subset(f, p, v);
      if (parent[u] == kNone) {
        parent[u] = v;
        via[u] = p;
        frontier.push_back(u);
      }
    }
  }
  if (parent[home] == kNone) throw CertificateError("periodic witness: no return path to the initial state");

  SubsetStrategy back;
  for (StateWord v = home; v != start; v = parent[v]) back.push_back(via[v]);
  std::reverse(back.begin(), back.end());

  PeriodicWitness w;
  w.t1 = t1;
  w.t2 = back.size();
  w.period.assign(x.strategy.begin(), x.strategy.begin() + static_cast<std::ptrdiff_t>(t1));
  w.period.insert(w.period.end(), back.begin(), back.end());
  if (w.period.empty()) w.period.push_back(0);  // E' = E with t1 = 0: the empty-set self-loop

  w.point.n = n;
  w.point.state = home;
  const std::size_t len = std::max(x.strategy.size(), w.period.size());
  w.point.strategy.reserve(len);
  for (std::size_t k = 0; k < len; ++k) w.point.strategy.push_back(w.period[k % w.period.size()]);

  const Distance d = distance(x, w.point);
  w.distance = d.value + d.truncation_bound;
  w.verified = iterate(f, home, w.period).back() == home && w.distance < eps;
  return w;
}

}  // namespace ciprng
