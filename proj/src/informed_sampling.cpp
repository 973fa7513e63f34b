#include "mgpf/informed_sampling.hpp"

#include <cmath>

#include "mgpf/error.hpp"

namespace mgpf {

void OrthogonalMap::apply(std::span<const double> in, std::span<double> out) const {
  for (int r = 0; r < dim_; ++r) {
    double sum = 0.0;
    for (int c = 0; c < dim_; ++c) sum += at(r, c) * in[c];
    out[r] = sum;
  }
}

double OrthogonalMap::determinant() const {
  // Gaussian elimination with partial pivoting on a copy.
  std::vector<double> a = m_;
  const int n = dim_;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

OrthogonalMap rotation_to_world(std::span<const double> a, std::span<const double> b) {
  const double length = heuristic(a, b);
  if (!(length > 0.0)) throw Error(ErrorKind::DegenerateFoci, "foci coincide");
  const int n = static_cast<int>(a.size());
  std::vector<double> u(n);
  for (int k = 0; k < n; ++k) u[k] = (b[k] - a[k]) / length;

  // H = I - 2 v v^T / (v^T v). With v = e1 + u (u1 >= 0) H e1 = -u; with
  // v = e1 - u (u1 < 0) H e1 = u. Either way |v| >= 1, so no cancellation.
  const double sign = u[0] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> v = u;
  for (double& x : v) x *= sign;
  v[0] += 1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;

  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m[r * n + c] = (r == c ? 1.0 : 0.0) - 2.0 * v[r] * v[c] / vv;
  }
  // det H = -1. Negate column 0 (u1 >= 0) to turn -u into u, otherwise
  // column 1; both restore det = +1.
  const int flip = sign > 0.0 ? 0 : 1;
  for (int r = 0; r < n; ++r) m[r * n + flip] = -m[r * n + flip];
  return OrthogonalMap(n, std::move(m));
}

Config sample_informed(const InformedSet& set, const Env& env, Rng& rng) {
  if (!std::isfinite(set.c_best)) return sample_uniform_free(env, rng);
  const double c_min = set.c_min();
  if (set.c_best < c_min - 1e-12) {
    throw Error(ErrorKind::SamplingFailure, "c_best below the Euclidean lower bound of the foci");
  }
  const int n = env.dim();
  const OrthogonalMap rotation = rotation_to_world(set.focus_a, set.focus_b);
  const double slack = set.c_best - c_min;
  const double conjugate = slack <= 1e-12 ? 0.0 : std::sqrt(set.c_best * set.c_best - c_min * c_min) / 2.0;

  Config ball(n), scaled(n), x(n);
  for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
    rng.unit_ball(ball);
    scaled[0] = ball[0] * set.c_best / 2.0;
    for (int k = 1; k < n; ++k) scaled[k] = ball[k] * conjugate;
    rotation.apply(scaled, x);
    for (int k = 0; k < n; ++k) x[k] += 0.5 * (set.focus_a[k] + set.focus_b[k]);
    if (env.is_state_valid(x)) return x;
  }
  throw Error(ErrorKind::SamplingFailure, "informed sampling exceeded its rejection budget");
}

SampleBatch add_samples(const ProbabilityTable& prob, const TerminalGraph& tg,
                        std::span<const Config> terminals, const Env& env, std::size_t n_s, Rng& rng,
                        std::vector<std::size_t>* draws_per_entry) {
  if (prob.empty()) throw Error(ErrorKind::NoActiveEdges, "probability table is empty");
  if (draws_per_entry) draws_per_entry->assign(prob.size(), 0);
  std::vector<double> cumulative(prob.size());
  double total = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    total += prob[i].probability;
    cumulative[i] = total;
  }

  SampleBatch batch;
  batch.reserve(n_s);
  for (std::size_t s = 0; s < n_s; ++s) {
    const double u = rng.uniform01() * total;
    std::size_t pick = prob.size() - 1;
    for (std::size_t i = 0; i < prob.size(); ++i) {
      if (u < cumulative[i]) {
        pick = i;
        break;
      }
    }
    if (draws_per_entry) ++(*draws_per_entry)[pick];
    const TerminalPair e = prob[pick].edge;
    const InformedSet set{terminals[e.a], terminals[e.b], tg.cost(e)};
    batch.push_back(sample_informed(set, env, rng));
  }
  return batch;
}

}  // namespace mgpf
