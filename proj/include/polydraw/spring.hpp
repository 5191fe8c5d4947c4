#pragma once

#include "polydraw/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace polydraw {

using Point3 = std::array<double, 3>;

struct SpringParams {
  double delta_rep = 0.01;
  double delta_visc = 0.85;
  double delta_lin = 0.1;
  double length = 1.0;  // default desired edge length
  double threshold = 1e-10;
  /// Factor applied to the force in each update; 1 is the plain rule
  /// v + f + delta_visc (v - v_prev). The applied step is capped at
  /// 1 / max_v sum_{e at v} 1 / l_e so that short springs stay stable.
  double step_size = 0.1;
  std::size_t max_iters = 10000;
  std::uint64_t seed = 0;

  /// Throws ValidationError for negative constants or nonpositive length/threshold.
  void validate() const;
};

struct EmbeddingState {
  std::vector<Point3> current;
  std::vector<Point3> previous;
  std::size_t iteration = 0;

  bool operator==(const EmbeddingState&) const = default;
};

/// Optional per-node objective values and per-edge desired lengths (indexed
/// like g.edges()). Edges without an entry use their own length, then the
/// default length.
struct SpringInputs {
  std::optional<std::vector<double>> objective;
  std::optional<std::vector<double>> lengths;
};

/// Positions uniform on the unit sphere, previous = current.
EmbeddingState init_random_sphere(const Graph& g, std::uint64_t seed);

/// Total force on node v. Throws ComputationError("singular configuration")
/// when two nodes coincide.
Point3 force(const Graph& g, const EmbeddingState& state, const SpringParams& params, std::size_t v,
             const SpringInputs& inputs = {});

/// Forces on all nodes from the same snapshot.
std::vector<Point3> forces(const Graph& g, const EmbeddingState& state, const SpringParams& params,
                           const SpringInputs& inputs = {});

/// v_{i+1} = v_i + h f(v_i) + delta_visc (v_i - v_{i-1}) for all nodes at once.
EmbeddingState step(const Graph& g, const EmbeddingState& state, const SpringParams& params,
                    const SpringInputs& inputs = {});

/// max_v |a_v - b_v|^2
double fluctuation(const std::vector<Point3>& a, const std::vector<Point3>& b);

struct SpringResult {
  EmbeddingState state;
  bool converged = false;
  double fluctuation = 0;
};

/// Iterates from a random sphere start (or `start`) until the fluctuation
/// drops below the threshold on two consecutive steps, or max_iters. The
/// returned state is the first of those two. Coincident nodes get a seeded
/// jitter of 1e-6. Throws ComputationError on non-finite positions.
SpringResult run(const Graph& g, const SpringParams& params, const SpringInputs& inputs = {},
                 std::optional<EmbeddingState> start = std::nullopt);

enum class LengthNorm { euclidean, maxnorm };

/// Desired edge lengths from coordinates (one row per node).
std::vector<double> desired_lengths_from_coords(const Graph& g, const std::vector<std::vector<double>>& coords,
                                                LengthNorm norm);

}  // namespace polydraw
