#include "polydraw/spring.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace polydraw {

namespace {

// Uniform double in [0, 1) from the top 53 bits, independent of the
// standard library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Point3 random_on_sphere(std::mt19937_64& rng) {
  double z = 2 * unit_uniform(rng) - 1;
  double phi = 2 * std::numbers::pi * unit_uniform(rng);
  double s = std::sqrt(std::max(0.0, 1 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

struct Springs {
  std::size_t n = 0;
  std::vector<double> rest;  // n * n, 0 for non-edges
  double step = 0;           // applied step size
};

Springs springs_of(const Graph& g, const SpringParams& params, const SpringInputs& inputs) {
  Springs s;
  s.n = g.num_nodes();
  s.rest.assign(s.n * s.n, 0.0);
  if (inputs.lengths && inputs.lengths->size() != g.num_edges()) {
    throw ValidationError("one desired length per edge required");
  }
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    double l = inputs.lengths ? (*inputs.lengths)[i] : e.length.value_or(params.length);
    if (!(l > 0) || !std::isfinite(l)) throw ValidationError("desired edge lengths must be positive");
    s.rest[e.u * s.n + e.v] = l;
    s.rest[e.v * s.n + e.u] = l;
  }
  // A spring of rest length l has stiffness 1 / l; keep the step below the
  // inverse of the largest total stiffness at a node so stiff springs stay stable.
  double stiffest = 0;
  for (std::size_t v = 0; v < s.n; ++v) {
    double total = 0;
    for (std::size_t w = 0; w < s.n; ++w) {
      if (s.rest[v * s.n + w] > 0) total += 1 / s.rest[v * s.n + w];
    }
    stiffest = std::max(stiffest, total);
  }
  s.step = stiffest > 0 ? std::min(params.step_size, 1 / stiffest) : params.step_size;
  return s;
}

void check_inputs(const Graph& g, const EmbeddingState& state, const SpringInputs& inputs) {
  if (state.current.size() != g.num_nodes() || state.previous.size() != g.num_nodes()) {
    throw ValidationError("embedding state does not match the graph");
  }
  if (inputs.objective && inputs.objective->size() != g.num_nodes()) {
    throw ValidationError("one objective value per node required");
  }
}

struct Singular {
  std::size_t u, v;
};

// Forces on all nodes; returns the first coincident pair instead of throwing.
std::optional<Singular> compute_forces(const Springs& s, const std::vector<Point3>& x, const SpringParams& params,
                                       const SpringInputs& inputs, std::vector<Point3>& out) {
  const std::size_t n = s.n;
  out.assign(n, Point3{0, 0, 0});
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      Point3 d{x[w][0] - x[v][0], x[w][1] - x[v][1], x[w][2] - x[v][2]};
      double dist = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      if (dist < 1e-12) return Singular{v, w};
      double rest = s.rest[v * n + w];
      double c = rest > 0 ? 1 / rest - 1 / dist : -params.delta_rep / (dist * dist * dist);
      for (int k = 0; k < 3; ++k) {
        out[v][k] += c * d[k];
        out[w][k] -= c * d[k];
      }
    }
  }
  if (inputs.objective && params.delta_lin != 0 && n > 0) {
    const auto& lambda = *inputs.objective;
    double mean_lambda = 0, mean_z = 0;
    for (std::size_t v = 0; v < n; ++v) {
      mean_lambda += lambda[v];
      mean_z += x[v][2];
    }
    mean_lambda /= static_cast<double>(n);
    mean_z /= static_cast<double>(n);
    for (std::size_t v = 0; v < n; ++v) {
      out[v][2] += params.delta_lin * ((lambda[v] - mean_lambda) - (x[v][2] - mean_z));
    }
  }
  return std::nullopt;
}

EmbeddingState advance(const EmbeddingState& state, const std::vector<Point3>& f, double h, double visc) {
  EmbeddingState next;
  next.previous = state.current;
  next.current.resize(state.current.size());
  for (std::size_t v = 0; v < state.current.size(); ++v) {
    for (int k = 0; k < 3; ++k) {
      next.current[v][k] = state.current[v][k] + h * f[v][k] + visc * (state.current[v][k] - state.previous[v][k]);
    }
  }
  next.iteration = state.iteration + 1;
  return next;
}

bool all_finite(const std::vector<Point3>& xs) {
  for (const auto& p : xs) {
    for (double c : p) {
      if (!std::isfinite(c)) return false;
    }
  }
  return true;
}

}  // namespace

void SpringParams::validate() const {
  if (!(delta_rep >= 0) || !(delta_visc >= 0) || !(delta_lin >= 0)) {
    throw ValidationError("spring constants must be nonnegative");
  }
  if (!(length > 0) || !std::isfinite(length)) throw ValidationError("default length must be positive");
  if (!(threshold > 0)) throw ValidationError("threshold must be positive");
  if (!(step_size > 0) || !std::isfinite(step_size)) throw ValidationError("step size must be positive");
  if (max_iters == 0) throw ValidationError("max_iters must be positive");
}

EmbeddingState init_random_sphere(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EmbeddingState s;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) s.current.push_back(random_on_sphere(rng));
  s.previous = s.current;
  return s;
}

std::vector<Point3> forces(const Graph& g, const EmbeddingState& state, const SpringParams& params,
                           const SpringInputs& inputs) {
  params.validate();
  check_inputs(g, state, inputs);
  std::vector<Point3> out;
  if (auto bad = compute_forces(springs_of(g, params, inputs), state.current, params, inputs, out)) {
    throw ComputationError("singular configuration: nodes " + std::to_string(bad->u) + " and " +
                           std::to_string(bad->v) + " coincide");
  }
  return out;
}

Point3 force(const Graph& g, const EmbeddingState& state, const SpringParams& params, std::size_t v,
             const SpringInputs& inputs) {
  if (v >= g.num_nodes()) throw ValidationError("node out of range");
  return forces(g, state, params, inputs)[v];
}

EmbeddingState step(const Graph& g, const EmbeddingState& state, const SpringParams& params,
                    const SpringInputs& inputs) {
  return advance(state, forces(g, state, params, inputs), springs_of(g, params, inputs).step, params.delta_visc);
}

double fluctuation(const std::vector<Point3>& a, const std::vector<Point3>& b) {
  double worst = 0;
  for (std::size_t v = 0; v < a.size(); ++v) {
    double d2 = 0;
    for (int k = 0; k < 3; ++k) d2 += (a[v][k] - b[v][k]) * (a[v][k] - b[v][k]);
    worst = std::max(worst, d2);
  }
  return worst;
}

SpringResult run(const Graph& g, const SpringParams& params, const SpringInputs& inputs,
                 std::optional<EmbeddingState> start) {
  params.validate();
  EmbeddingState state = start ? std::move(*start) : init_random_sphere(g, params.seed);
  check_inputs(g, state, inputs);
  const Springs springs = springs_of(g, params, inputs);
  std::mt19937_64 jitter_rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Point3> f;

  // Advances one step, nudging coincident nodes apart first.
  auto next_state = [&](EmbeddingState& s) {
    for (int attempt = 0;; ++attempt) {
      auto bad = compute_forces(springs, s.current, params, inputs, f);
      if (!bad) break;
      if (attempt > 100) {
        throw ComputationError("singular configuration at iteration " + std::to_string(s.iteration));
      }
      Point3 dir = random_on_sphere(jitter_rng);
      for (int k = 0; k < 3; ++k) s.current[bad->v][k] += 1e-6 * dir[k];
    }
    EmbeddingState next = advance(s, f, springs.step, params.delta_visc);
    if (!all_finite(next.current)) {
      throw ComputationError("embedding diverged at iteration " + std::to_string(next.iteration));
    }
    return next;
  };

  SpringResult result;
  if (g.num_nodes() == 0) {
    result.state = state;
    result.converged = true;
    return result;
  }
  EmbeddingState next = next_state(state);
  double fluct = fluctuation(state.current, next.current);
  while (true) {
    if (fluct < params.threshold) {
      EmbeddingState ahead = next_state(next);
      double ahead_fluct = fluctuation(next.current, ahead.current);
      if (ahead_fluct < params.threshold) {
        result.state = std::move(next);
        result.converged = true;
        result.fluctuation = ahead_fluct;
        return result;
      }
      state = std::move(next);
      next = std::move(ahead);
      fluct = ahead_fluct;
    } else {
      state = std::move(next);
      next = next_state(state);
      fluct = fluctuation(state.current, next.current);
    }
    if (state.iteration >= params.max_iters) {
      result.state = std::move(state);
      result.converged = false;
      result.fluctuation = fluct;
      return result;
    }
  }
}

std::vector<double> desired_lengths_from_coords(const Graph& g, const std::vector<std::vector<double>>& coords,
                                                LengthNorm norm) {
  if (coords.size() != g.num_nodes()) throw ValidationError("one coordinate row per node required");
  std::vector<double> out;
  for (const auto& e : g.edges()) {
    const auto& a = coords[e.u];
    const auto& b = coords[e.v];
    if (a.size() != b.size()) throw ValidationError("coordinate rows of different dimension");
    double acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      double d = std::abs(a[k] - b[k]);
      acc = norm == LengthNorm::euclidean ? acc + d * d : std::max(acc, d);
    }
    double l = norm == LengthNorm::euclidean ? std::sqrt(acc) : acc;
    if (!(l > 0)) throw ValidationError("zero-length edge");
    out.push_back(l);
  }
  return out;
}

}  // namespace polydraw
