#pragma once

#include <cstdint>
#include <vector>

#include "facecap/camera.hpp"
#include "facecap/depthmap.hpp"

namespace facecap {

struct PatchMatchConfig {
  int iterations = 8;
  int window = 11;       // odd, >= 3
  int cost_top_k = 4;    // best source views aggregated per pixel
  double depth_range_frac = 0.05;  // +- search range, fraction of prior_diagonal
  double cost_threshold = 0.6;
  uint64_t rng_seed = 0;

  // Scene scale for the search range: the prior-mesh bounding-box diagonal.
  // 0 derives a fallback scale from the prior depth interval.
  double prior_diagonal = 0;
  // Depth interval used when the prior map is entirely invalid.
  double scene_depth_min = 0, scene_depth_max = 0;

  void validate() const;
};

// Optional introspection of the initialization state (for the
// cost-improvement audit).
struct PatchMatchDebug {
  DepthMap init;  // initial hypotheses with their aggregated costs
};

// Multi-view PatchMatch: per-pixel slanted-plane (depth + camera-frame unit
// normal) minimizing 1 - NCC aggregated over the cost_top_k best source
// views, initialized and bounded by the prior depth map. Red/black
// checkerboard propagation plus shrinking random refinement; only strictly
// better hypotheses are accepted. Bitwise deterministic for a fixed
// rng_seed, independent of the thread count.
DepthMap patchmatch_depth(const Keyframe& ref,
                          const std::vector<Keyframe>& sources,
                          const DepthMap& prior, const PatchMatchConfig& cfg,
                          PatchMatchDebug* debug = nullptr);

// Keeps pixels agreeing with the prior within tau_rel (relative); pixels
// without prior coverage survive only with cost strictly below
// cost_threshold / 2.
DepthMap filter_with_prior(const DepthMap& depth, const DepthMap& prior,
                           double tau_rel = 0.05, double cost_threshold = 0.6);

}  // namespace facecap
