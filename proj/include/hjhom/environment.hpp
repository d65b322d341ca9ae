#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hjhom/geometry.hpp"

namespace hjhom {

enum class Orientation { horizontal, vertical };

inline Orientation opposite(Orientation o) {
  return o == Orientation::horizontal ? Orientation::vertical
                                      : Orientation::horizontal;
}

/// Dyadic scale ladder: T_k = 2^k.
inline double dyadic_scale(int k) { return std::ldexp(1.0, k); }

struct EnvParams {
  double lambda = 40.0;   // rectangle length factor
  double mu = 40.0;       // rectangle width
  double eta = 0.4;       // in (0, 1/2)
  double q = 2.0;         // growth exponent, > 1
  double delta = 0.5;     // search radius factor for the nearby-rectangle events
  int k_max = 6;          // scale truncation
  std::uint64_t seed = 0;
  double env_grid_h = 0.125;  // distance-transform grid spacing, <= 1/4

  double rect_length(int k) const { return lambda * dyadic_scale(k) + 1.0; }
  double rect_width() const { return mu + 1.0; }

  /// Throws std::invalid_argument on violated invariants.  The condition
  /// min(lambda, mu) >= 16/eta is what the value-oscillation analysis needs;
  /// probability experiments run at small lambda, mu where the bound algebra
  /// is still valid, so they may opt out of that single check.
  void validate(bool require_min_lambda_mu = true) const;
};

struct Rectangle {
  Orientation orientation = Orientation::horizontal;
  int k = 1;
  long l = 0;
  long m = 0;
  double length = 0.0;  // lambda*T_k + 1, along the long axis
  double width = 0.0;   // mu + 1

  Rectangle() = default;
  Rectangle(Orientation o, int k_, long l_, long m_, const EnvParams& p)
      : orientation(o), k(k_), l(l_), m(m_),
        length(p.rect_length(k_)), width(p.rect_width()) {}

  /// Closed box occupied by the rectangle; long axis is x1 for horizontal,
  /// x2 for vertical.
  Box box() const {
    const double hl = length / 2.0, hw = width / 2.0;
    return orientation == Orientation::horizontal
               ? Box::centered({double(l), double(m)}, hl, hw)
               : Box::centered({double(l), double(m)}, hw, hl);
  }

  bool contains(Vec2 p) const { return box().contains(p); }

  friend bool operator==(const Rectangle& a, const Rectangle& b) {
    return a.orientation == b.orientation && a.k == b.k && a.l == b.l &&
           a.m == b.m;
  }
};

/// Forced Bernoulli outcomes: (orientation, k, l, m) -> present.
/// Entries override the seeded draw for exactly those indices.
struct PlantSpec {
  using Key = std::tuple<int, int, long, long>;  // (j, k, l, m), j in {1,2}
  std::map<Key, bool> entries;

  void set(Orientation o, int k, long l, long m, bool present) {
    entries[{o == Orientation::horizontal ? 1 : 2, k, l, m}] = present;
  }
  const bool* find(Orientation o, int k, long l, long m) const {
    auto it = entries.find({o == Orientation::horizontal ? 1 : 2, k, l, m});
    return it == entries.end() ? nullptr : &it->second;
  }
  bool empty() const { return entries.empty(); }
};

/// Counter-based Bernoulli(T_k^-2) draw: a 64-bit mix of (seed, j, k, l, m)
/// mapped to [0,1) and compared against 2^-2k.  Order-independent, so the
/// sampled field is window-extensible and reproducible.
bool bernoulli_draw(const EnvParams& params, Orientation j, int k, long l,
                    long m, const PlantSpec& plants = {});

/// All rectangles of scale <= k_max whose closure intersects `window`.
std::vector<Rectangle> sample_rectangles(const EnvParams& params,
                                         const Box& window,
                                         const PlantSpec& plants = {});

/// Queryable realization of c^2_omega and c_omega over a bounded window.
/// Immutable after construction; evaluation is pure and thread-safe
/// (the lazy c-grid tile cache is guarded internally).
class Environment {
 public:
  Environment(EnvParams params, Box window, PlantSpec plants = {},
              bool require_min_lambda_mu = true);

  /// Builds an environment from an explicit rectangle set (used by
  /// rotate_environment); the seed is kept only as metadata.
  static Environment from_rectangles(EnvParams params, Box window,
                                     std::vector<Rectangle> rects,
                                     PlantSpec plants = {});

  const EnvParams& params() const { return params_; }
  const Box& window() const { return window_; }
  const std::vector<Rectangle>& rectangles() const { return rects_; }
  const PlantSpec& plants() const { return plants_; }

  /// Phase-2 field, max-rule formulation: the largest covering scale wins,
  /// ties give 0.  Returns a value in {-1/2, 0, +1/2}.
  double c2_value(Vec2 x) const;

  /// Literal scale-by-scale replay of Phases 1-2; test oracle for c2_value.
  /// Works directly off the rectangle list, independent of the spatial index.
  double c2_sequential_oracle(Vec2 x) const;

  /// Phase-3 Lipschitz field via grid distance transforms at spacing
  /// env_grid_h plus bilinear interpolation.  Guaranteed absolute error
  /// <= 2*env_grid_h.  Valid on window shrunk by one env_grid_h margin.
  double c_value(Vec2 x) const;

  /// Max scale of a covering rectangle of the given orientation, 0 if none.
  int max_covering_scale(Orientation o, Vec2 x) const;

  /// True iff no rectangle of the opposite orientation with scale >= r.k
  /// intersects r (within the sampled collection).
  bool is_complete(const Rectangle& r) const;

  /// A-priori bound on P(some rectangle of scale > k_max meets the window),
  /// reported so experiments can state their conditioning error.
  double truncation_probability_bound() const;

  /// c_omega sampled on a regular grid over `region` at spacing `h`
  /// (row-major, ny rows of nx values, y increasing).
  struct GridField {
    int nx = 0, ny = 0;
    double x0 = 0, y0 = 0, h = 0;
    std::vector<double> values;
  };
  GridField c_grid(const Box& region, double h) const;

 private:
  Environment() = default;
  void build_index();

  EnvParams params_;
  Box window_;
  PlantSpec plants_;
  std::vector<Rectangle> rects_;

  // Per (orientation, scale) index keyed by the narrow-axis integer center,
  // holding sorted long-axis centers.  Rectangle centers live on Z^2.
  using RowIndex = std::unordered_map<long, std::vector<long>>;
  std::vector<RowIndex> index_;  // size 2*k_max; [2*(k-1) + j-1]

  const RowIndex& rows(Orientation o, int k) const;
  bool covered_at_scale(Orientation o, int k, Vec2 x) const;

  // Lazy c-grid tiles.  c_omega(x) depends on c^2 only within distance 1 of
  // x (values saturate), so a tile with a >= 1.5 halo reproduces the global
  // distance transform exactly.
  struct Tile;
  std::shared_ptr<const Tile> tile_for(long ti, long tj) const;
  mutable std::unique_ptr<std::mutex> tile_mutex_ =
      std::make_unique<std::mutex>();
  mutable std::map<std::pair<long, long>, std::shared_ptr<const Tile>> tiles_;
};

/// The 90-degree rotation bijection: returns omega_2 with
/// c_{omega_2}(x) = -c_{omega_1}(x_hat), x_hat = (x2, -x1).  Every rectangle
/// centered (l, m) maps to one of the opposite orientation centered (-m, l);
/// applying the map four times restores the original rectangle set.
Environment rotate_environment(const Environment& env);

/// Plant spec realizing the conditioning event "the given rectangle is
/// present and complete": forces the rectangle present and every
/// opposite-orientation rectangle of scale >= k that would intersect it
/// (within the padded window index range) absent.
PlantSpec plant_complete_rectangle(const EnvParams& params, const Box& window,
                                   Orientation o, int k, long l, long m,
                                   PlantSpec base = {});

/// CSV export: orientation,k,l,m,length,width,complete (header row, LF).
std::string rectangles_csv(const Environment& env);

}  // namespace hjhom
