#include "facecap/patchmatch.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "facecap/common.hpp"
#include "facecap/parallel.hpp"
#include "facecap/rng.hpp"

namespace facecap {

void PatchMatchConfig::validate() const {
  check(iterations >= 1, "PatchMatchConfig: iterations must be >= 1");
  check(window >= 3 && window % 2 == 1, "PatchMatchConfig: window odd and >= 3");
  check(cost_top_k >= 1, "PatchMatchConfig: cost_top_k must be >= 1");
  check(depth_range_frac >= 0, "PatchMatchConfig: depth_range_frac >= 0");
  check(cost_threshold > 0, "PatchMatchConfig: cost_threshold > 0");
}

namespace {

constexpr float kBadCost = 2.0f;
constexpr double kVarEps = 1e-12;

struct SourceView {
  Eigen::Matrix3d r_rel;
  Eigen::Vector3d t_rel;
  Eigen::Matrix3d k_src;
  const Image* gray;
  int width, height;
};

struct PixelStats {
  float mean = 0.f;
  float var = 0.f;
  uint8_t dead = 1;  // degenerate texture or too few in-window samples
};

struct Hypothesis {
  double depth;
  Eigen::Vector3d normal;  // camera frame, pointing toward the camera
};

class Matcher {
 public:
  Matcher(const Image& ref_gray, const Intrinsics& intr,
          std::vector<SourceView> sources, const PatchMatchConfig& cfg)
      : ref_(ref_gray), intr_(intr), sources_(std::move(sources)), cfg_(cfg) {
    // Sparse symmetric window sampling, at most ~6 taps per axis.
    const int r = cfg.window / 2;
    const int step = std::max(1, (cfg.window + 4) / 6);
    for (int o = -r; o <= r; o += step) offsets_.push_back(o);
    k_ref_inv_ << 1.0 / intr.fx, 0, -intr.cx / intr.fx,
                  0, 1.0 / intr.fy, -intr.cy / intr.fy,
                  0, 0, 1;
    top_k_ = std::min<int>(cfg.cost_top_k, static_cast<int>(sources_.size()));

    // Reference window statistics; subset = in-bounds taps, fixed per pixel.
    float gmin = std::numeric_limits<float>::max(), gmax = -gmin;
    for (float v : ref_.data) {
      gmin = std::min(gmin, v);
      gmax = std::max(gmax, v);
    }
    const double var_threshold = 1e-8 * std::max(0.0, double(gmax) - gmin);
    const int total = static_cast<int>(offsets_.size() * offsets_.size());
    stats_.resize(static_cast<size_t>(ref_.width) * ref_.height);
    for (int y = 0; y < ref_.height; ++y) {
      for (int x = 0; x < ref_.width; ++x) {
        double s = 0, s2 = 0;
        int n = 0;
        for (int dy : offsets_) {
          const int yy = y + dy;
          if (yy < 0 || yy >= ref_.height) continue;
          for (int dx : offsets_) {
            const int xx = x + dx;
            if (xx < 0 || xx >= ref_.width) continue;
            const double v = ref_.at(xx, yy);
            s += v;
            s2 += v * v;
            ++n;
          }
        }
        PixelStats ps;
        if (n >= (total + 1) / 2) {
          const double mean = s / n;
          const double var = std::max(0.0, s2 / n - mean * mean);
          ps.mean = static_cast<float>(mean);
          ps.var = static_cast<float>(var);
          ps.dead = var < std::max(var_threshold, kVarEps) ? 1 : 0;
        }
        stats_[static_cast<size_t>(y) * ref_.width + x] = ps;
      }
    }
  }

  const std::vector<int>& offsets() const { return offsets_; }
  bool dead(size_t idx) const { return stats_[idx].dead != 0; }

  // Aggregated matching cost of a plane hypothesis at pixel (x, y).
  float cost(int x, int y, const Hypothesis& hyp) const {
    const size_t idx = static_cast<size_t>(y) * ref_.width + x;
    const PixelStats& ps = stats_[idx];
    if (ps.dead) return kBadCost;
    const Eigen::Vector3d ray((x - intr_.cx) / intr_.fx,
                              (y - intr_.cy) / intr_.fy, 1.0);
    const double rho = hyp.normal.dot(ray) * hyp.depth;  // n . X0
    if (std::abs(rho) < 1e-300) return kBadCost;

    float per_source[64];
    const int ns = static_cast<int>(sources_.size());
    for (int s = 0; s < ns; ++s) {
      per_source[s] = source_cost(x, y, hyp, rho, sources_[s], ps);
    }
    // Mean of the top_k_ best views.
    double sum = 0;
    for (int k = 0; k < top_k_; ++k) {
      int best = -1;
      float bv = std::numeric_limits<float>::max();
      for (int s = 0; s < ns; ++s) {
        if (per_source[s] < bv) {
          bv = per_source[s];
          best = s;
        }
      }
      sum += bv;
      per_source[best] = std::numeric_limits<float>::max();
    }
    return static_cast<float>(sum / top_k_);
  }

 private:
  float source_cost(int x, int y, const Hypothesis& hyp, double rho,
                    const SourceView& sv, const PixelStats& ps) const {
    // Plane-induced homography, source pixel = H * (u, v, 1).
    const Eigen::Matrix3d h =
        sv.k_src * (sv.r_rel + (sv.t_rel / rho) * hyp.normal.transpose()) *
        k_ref_inv_;
    // Reject hypotheses whose center lands outside or behind the source.
    const Eigen::Vector3d qc = h * Eigen::Vector3d(x, y, 1.0);
    if (qc.z() <= 1e-12) return kBadCost;
    const double cu = qc.x() / qc.z(), cv = qc.y() / qc.z();
    if (cu < 0 || cu > sv.width - 1 || cv < 0 || cv > sv.height - 1)
      return kBadCost;

    double ss = 0, ss2 = 0, srs = 0;
    int n = 0;
    for (int dy : offsets_) {
      const int yy = y + dy;
      if (yy < 0 || yy >= ref_.height) continue;
      const double hy0 = h(0, 1) * yy + h(0, 2);
      const double hy1 = h(1, 1) * yy + h(1, 2);
      const double hy2 = h(2, 1) * yy + h(2, 2);
      for (int dx : offsets_) {
        const int xx = x + dx;
        if (xx < 0 || xx >= ref_.width) continue;
        const double qz = h(2, 0) * xx + hy2;
        if (qz <= 1e-12) return kBadCost;
        const double qu = (h(0, 0) * xx + hy0) / qz;
        const double qv = (h(1, 0) * xx + hy1) / qz;
        const double r = ref_.at(xx, yy);
        const double sval = sv.gray->bilinear(qu, qv);
        ss += sval;
        ss2 += sval * sval;
        srs += r * sval;
        ++n;
      }
    }
    const double mean_s = ss / n;
    const double var_s = std::max(0.0, ss2 / n - mean_s * mean_s);
    if (var_s < kVarEps) return kBadCost;
    const double cov = srs / n - double(ps.mean) * mean_s;
    const double ncc =
        std::clamp(cov / std::sqrt(double(ps.var) * var_s), -1.0, 1.0);
    return static_cast<float>(1.0 - ncc);
  }

  const Image& ref_;
  const Intrinsics& intr_;
  std::vector<SourceView> sources_;
  PatchMatchConfig cfg_;
  std::vector<int> offsets_;
  std::vector<PixelStats> stats_;
  Eigen::Matrix3d k_ref_inv_;
  int top_k_ = 1;
};

Eigen::Vector3d random_facing_normal(Rng& rng, const Eigen::Vector3d& ray) {
  const Eigen::Vector3d dir = ray.normalized();
  for (int attempt = 0; attempt < 10; ++attempt) {
    Eigen::Vector3d n(rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1));
    const double len = n.norm();
    if (len < 1e-6) continue;
    n /= len;
    if (n.dot(dir) > 0) n = -n;
    if (n.dot(dir) < -0.1) return n;
  }
  return -dir;
}

Eigen::Vector3d perturb_normal(Rng& rng, const Eigen::Vector3d& n,
                               double sigma, const Eigen::Vector3d& ray) {
  Eigen::Vector3d cand =
      n + sigma * Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
  const double len = cand.norm();
  if (len < 1e-9) return n;
  cand /= len;
  if (cand.dot(ray.normalized()) > -0.05) return n;
  return cand;
}

}  // namespace

DepthMap patchmatch_depth(const Keyframe& ref,
                          const std::vector<Keyframe>& sources,
                          const DepthMap& prior, const PatchMatchConfig& cfg,
                          PatchMatchDebug* debug) {
  cfg.validate();
  check(!sources.empty(), "patchmatch_depth: no source views");
  check(sources.size() <= 64, "patchmatch_depth: too many source views");
  check(cfg.cost_top_k <= static_cast<int>(sources.size()),
        "patchmatch_depth: cost_top_k exceeds source count");
  const Intrinsics& intr = ref.intrinsics;
  check(!ref.image.empty(), "patchmatch_depth: reference image missing");
  check(prior.width == intr.width && prior.height == intr.height,
        "patchmatch_depth: prior dimensions mismatch");

  const int w = intr.width, h = intr.height;
  const size_t npx = static_cast<size_t>(w) * h;

  // Search interval per pixel from the prior.
  float prior_lo = std::numeric_limits<float>::max(), prior_hi = 0.f;
  for (size_t i = 0; i < npx; ++i) {
    if (prior.valid[i]) {
      prior_lo = std::min(prior_lo, prior.depth[i]);
      prior_hi = std::max(prior_hi, prior.depth[i]);
    }
  }
  double global_lo, global_hi;
  double scale = cfg.prior_diagonal;
  if (prior_hi <= 0.f) {
    check(cfg.scene_depth_min > 0 && cfg.scene_depth_max > cfg.scene_depth_min,
          "patchmatch_depth: prior empty and no scene depth bounds given");
    std::cerr << "patchmatch_depth: prior depth map is empty; falling back to "
                 "scene depth bounds\n";
    global_lo = cfg.scene_depth_min;
    global_hi = cfg.scene_depth_max;
    if (scale <= 0) scale = global_hi - global_lo;
  } else {
    if (scale <= 0) {
      scale = double(prior_hi) - double(prior_lo);
      if (scale <= 0) scale = 0.1 * prior_hi;
    }
    const double range = cfg.depth_range_frac * scale;
    global_lo = std::max(1e-9, double(prior_lo) - range);
    global_hi = double(prior_hi) + range;
  }
  const double range = cfg.depth_range_frac * scale;

  const Image ref_gray = ref.image.to_gray();
  std::vector<Image> src_gray(sources.size());
  std::vector<SourceView> views(sources.size());
  for (size_t s = 0; s < sources.size(); ++s) {
    check(!sources[s].image.empty(), "patchmatch_depth: source image missing");
    src_gray[s] = sources[s].image.to_gray();
    SourceView sv;
    sv.r_rel = sources[s].pose.rotation * ref.pose.rotation.transpose();
    sv.t_rel = sources[s].pose.translation - sv.r_rel * ref.pose.translation;
    sv.k_src << sources[s].intrinsics.fx, 0, sources[s].intrinsics.cx,
                0, sources[s].intrinsics.fy, sources[s].intrinsics.cy,
                0, 0, 1;
    sv.gray = &src_gray[s];
    sv.width = sources[s].intrinsics.width;
    sv.height = sources[s].intrinsics.height;
    views[s] = sv;
  }
  Matcher matcher(ref_gray, intr, std::move(views), cfg);

  std::vector<double> depth_cur(npx, 0.0);
  std::vector<Eigen::Vector3d> normal_cur(npx, Eigen::Vector3d(0, 0, -1));
  std::vector<float> cost_cur(npx, kBadCost);
  std::vector<float> lo(npx), hi(npx);

  // Initialization: random depth in the per-pixel interval, prior normal
  // (lightly perturbed) where the prior provides one.
  parallel_for(0, h, [&](int64_t y) {
    for (int x = 0; x < w; ++x) {
      const size_t i = static_cast<size_t>(y) * w + x;
      if (prior.valid[i]) {
        lo[i] = static_cast<float>(std::max(1e-9, prior.depth[i] - range));
        hi[i] = static_cast<float>(prior.depth[i] + range);
      } else {
        lo[i] = static_cast<float>(global_lo);
        hi[i] = static_cast<float>(global_hi);
      }
      if (matcher.dead(i)) continue;
      Rng rng(hash_combine(hash_combine(cfg.rng_seed, 0x1217u), i));
      const Eigen::Vector3d ray((x - intr.cx) / intr.fx,
                                (y - intr.cy) / intr.fy, 1.0);
      Hypothesis hyp;
      hyp.depth = rng.uniform(lo[i], hi[i]);
      if (prior.has_normals() && prior.valid[i]) {
        const Eigen::Vector3d pn(prior.normals[3 * i], prior.normals[3 * i + 1],
                                 prior.normals[3 * i + 2]);
        hyp.normal = perturb_normal(rng, pn, 0.05, ray);
      } else {
        hyp.normal = random_facing_normal(rng, ray);
      }
      depth_cur[i] = hyp.depth;
      normal_cur[i] = hyp.normal;
      cost_cur[i] = matcher.cost(x, static_cast<int>(y), hyp);
    }
  });

  if (debug) {
    debug->init = DepthMap(w, h);
    debug->init.allocate_cost(kBadCost);
    debug->init.allocate_normals();
    for (size_t i = 0; i < npx; ++i) {
      debug->init.depth[i] = static_cast<float>(depth_cur[i]);
      debug->init.valid[i] = !matcher.dead(i);
      debug->init.cost[i] = cost_cur[i];
      for (int k = 0; k < 3; ++k)
        debug->init.normals[3 * i + k] = static_cast<float>(normal_cur[i][k]);
    }
  }

  // Checkerboard sweeps: propagation from the 4-neighborhood (opposite
  // color, so phases never race) followed by shrinking random refinement.
  const int dx4[4] = {-1, 1, 0, 0};
  const int dy4[4] = {0, 0, -1, 1};
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (int phase = 0; phase < 2; ++phase) {
      parallel_for(0, h, [&](int64_t y) {
        for (int x = (static_cast<int>(y) + phase) & 1; x < w; x += 2) {
          const size_t i = static_cast<size_t>(y) * w + x;
          if (matcher.dead(i)) continue;
          const Eigen::Vector3d ray((x - intr.cx) / intr.fx,
                                    (y - intr.cy) / intr.fy, 1.0);
          double d_best = depth_cur[i];
          Eigen::Vector3d n_best = normal_cur[i];
          float c_best = cost_cur[i];

          for (int k = 0; k < 4; ++k) {
            const int nx = x + dx4[k], ny = static_cast<int>(y) + dy4[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const size_t j = static_cast<size_t>(ny) * w + nx;
            if (matcher.dead(j) || cost_cur[j] >= kBadCost) continue;
            const Eigen::Vector3d& nn = normal_cur[j];
            const Eigen::Vector3d ray_n((nx - intr.cx) / intr.fx,
                                        (ny - intr.cy) / intr.fy, 1.0);
            const double denom = nn.dot(ray);
            if (std::abs(denom) < 1e-12) continue;
            double d_cand = depth_cur[j] * nn.dot(ray_n) / denom;
            d_cand = std::clamp(d_cand, double(lo[i]), double(hi[i]));
            if (std::abs(d_cand - d_best) <= 1e-9 * d_best &&
                nn.dot(n_best) > 1.0 - 1e-12)
              continue;
            const float c = matcher.cost(x, static_cast<int>(y),
                                         {d_cand, nn});
            if (c < c_best) {
              c_best = c;
              d_best = d_cand;
              n_best = nn;
            }
          }

          if (c_best > 0.02f) {
            Rng rng(hash_combine(
                hash_combine(cfg.rng_seed, 0xAB1Eu + 2 * iter + phase), i));
            double step_d = 0.5 * (double(hi[i]) - lo[i]);
            double step_n = 0.4;
            for (int round = 0; round < 2; ++round) {
              step_d *= 0.5;
              step_n *= 0.5;
              if (step_d > 0) {
                const double d_cand = std::clamp(
                    d_best + rng.uniform(-step_d, step_d), double(lo[i]),
                    double(hi[i]));
                const float c =
                    matcher.cost(x, static_cast<int>(y), {d_cand, n_best});
                if (c < c_best) {
                  c_best = c;
                  d_best = d_cand;
                }
              }
              const Eigen::Vector3d n_cand =
                  perturb_normal(rng, n_best, step_n, ray);
              if (n_cand.dot(n_best) < 1.0 - 1e-12) {
                const float c =
                    matcher.cost(x, static_cast<int>(y), {d_best, n_cand});
                if (c < c_best) {
                  c_best = c;
                  n_best = n_cand;
                }
              }
            }
          }

          depth_cur[i] = d_best;
          normal_cur[i] = n_best;
          cost_cur[i] = c_best;
        }
      });
    }
  }

  DepthMap out(w, h);
  out.allocate_normals();
  out.allocate_cost(kBadCost);
  for (size_t i = 0; i < npx; ++i) {
    out.cost[i] = cost_cur[i];
    if (matcher.dead(i) || cost_cur[i] > cfg.cost_threshold) continue;
    out.valid[i] = 1;
    out.depth[i] = static_cast<float>(depth_cur[i]);
    const Eigen::Vector3d n = normal_cur[i].normalized();
    for (int k = 0; k < 3; ++k)
      out.normals[3 * i + k] = static_cast<float>(n[k]);
  }
  return out;
}

DepthMap filter_with_prior(const DepthMap& depth, const DepthMap& prior,
                           double tau_rel, double cost_threshold) {
  check(depth.width == prior.width && depth.height == prior.height,
        "filter_with_prior: dimension mismatch");
  DepthMap out = depth;
  for (size_t i = 0; i < depth.depth.size(); ++i) {
    if (!depth.valid[i]) continue;
    if (prior.valid[i]) {
      if (std::abs(double(depth.depth[i]) - prior.depth[i]) >
          tau_rel * prior.depth[i])
        out.valid[i] = 0;
    } else {
      const bool keep = depth.has_cost() &&
                        depth.cost[i] < static_cast<float>(cost_threshold / 2);
      if (!keep) out.valid[i] = 0;
    }
  }
  return out;
}

}  // namespace facecap
