#include "hjhom/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hjhom {

namespace {

constexpr double kTileSize = 4.0;
// c_omega(x) depends on c^2 only within distance 1 of x: every candidate
// term in the inf/sup-convolution saturates beyond that.  Halo 1.5 leaves
// room for the interpolation cell as well.
constexpr double kTileHalo = 1.5;
// Cache cap (~200 MB); on overflow the cache is dropped and tiles are
// recomputed on demand.  Evaluation stays pure either way.
constexpr size_t kMaxCachedTiles = 8192;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, int j, int k, long l, long m) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(j));
  h = mix64(h ^ static_cast<std::uint64_t>(k));
  h = mix64(h ^ static_cast<std::uint64_t>(l));
  h = mix64(h ^ static_cast<std::uint64_t>(m));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

long lfloor(double x) { return static_cast<long>(std::floor(x)); }
long lceil(double x) { return static_cast<long>(std::ceil(x)); }

// Felzenszwalb-Huttenlocher 1-D squared distance transform (lower envelope
// of parabolas).  f and d may alias different buffers; n >= 1.
void dt1d(const double* f, int n, double* d, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s;
    while (true) {
      if (f[v[k]] == kInf) {
        // previous vertex unreachable; drop it
        if (k == 0) { v[0] = q; z[0] = -kInf; z[1] = kInf; s = -kInf; break; }
        --k;
        continue;
      }
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
      if (s <= z[k]) { --k; continue; }
      break;
    }
    if (!(v[k] == q && z[k] == -kInf)) {
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
    }
  }
  if (f[v[0]] == kInf) {
    for (int q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = double(q) - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

// 2-D exact Euclidean squared distance transform, distances in cell units.
void dt2d(std::vector<double>& g, int nx, int ny) {
  const int n = std::max(nx, ny);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  for (int i = 0; i < nx; ++i) {  // columns
    for (int j = 0; j < ny; ++j) f[j] = g[size_t(j) * nx + i];
    dt1d(f.data(), ny, d.data(), v.data(), z.data());
    for (int j = 0; j < ny; ++j) g[size_t(j) * nx + i] = d[j];
  }
  for (int j = 0; j < ny; ++j) {  // rows
    for (int i = 0; i < nx; ++i) f[i] = g[size_t(j) * nx + i];
    dt1d(f.data(), nx, d.data(), v.data(), z.data());
    for (int i = 0; i < nx; ++i) g[size_t(j) * nx + i] = d[i];
  }
}

}  // namespace

void EnvParams::validate(bool require_min_lambda_mu) const {
  if (lambda <= 0.0 || mu <= 0.0)
    throw std::invalid_argument("lambda and mu must be positive");
  if (eta <= 0.0 || eta >= 0.5)
    throw std::invalid_argument("eta must lie in (0, 1/2)");
  if (q <= 1.0) throw std::invalid_argument("q must exceed 1");
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (env_grid_h <= 0.0 || env_grid_h > 0.25)
    throw std::invalid_argument("env_grid_h must lie in (0, 1/4]");
  if (require_min_lambda_mu && std::min(lambda, mu) < 16.0 / eta)
    throw std::invalid_argument("min(lambda, mu) >= 16/eta is required");
}

bool bernoulli_draw(const EnvParams& params, Orientation j, int k, long l,
                    long m, const PlantSpec& plants) {
  if (k < 1 || k > params.k_max)
    throw std::invalid_argument("scale k out of range [1, k_max]");
  if (const bool* forced = plants.find(j, k, l, m)) return *forced;
  const int ji = j == Orientation::horizontal ? 1 : 2;
  const double p = std::ldexp(1.0, -2 * k);  // T_k^{-2}
  return counter_uniform(params.seed, ji, k, l, m) < p;
}

std::vector<Rectangle> sample_rectangles(const EnvParams& params,
                                         const Box& window,
                                         const PlantSpec& plants) {
  std::vector<Rectangle> out;
  for (Orientation o : {Orientation::horizontal, Orientation::vertical}) {
    for (int k = 1; k <= params.k_max; ++k) {
      const double hl = params.rect_length(k) / 2.0;
      const double hw = params.rect_width() / 2.0;
      const double ex = o == Orientation::horizontal ? hl : hw;
      const double ey = o == Orientation::horizontal ? hw : hl;
      const long l_lo = lceil(window.x0 - ex) - 1;
      const long l_hi = lfloor(window.x1 + ex) + 1;
      const long m_lo = lceil(window.y0 - ey) - 1;
      const long m_hi = lfloor(window.y1 + ey) + 1;
      for (long l = l_lo; l <= l_hi; ++l) {
        for (long m = m_lo; m <= m_hi; ++m) {
          if (!bernoulli_draw(params, o, k, l, m, plants)) continue;
          Rectangle r(o, k, l, m, params);
          if (r.box().intersects(window)) out.push_back(r);
        }
      }
    }
  }
  return out;
}

Environment::Environment(EnvParams params, Box window, PlantSpec plants,
                         bool require_min_lambda_mu) {
  params.validate(require_min_lambda_mu);
  params_ = params;
  window_ = window;
  plants_ = std::move(plants);
  rects_ = sample_rectangles(params_, window_, plants_);
  build_index();
}

Environment Environment::from_rectangles(EnvParams params, Box window,
                                         std::vector<Rectangle> rects,
                                         PlantSpec plants) {
  Environment env;
  env.params_ = params;
  env.window_ = window;
  env.plants_ = std::move(plants);
  env.rects_ = std::move(rects);
  env.build_index();
  return env;
}

void Environment::build_index() {
  index_.assign(size_t(2) * params_.k_max, {});
  for (const Rectangle& r : rects_) {
    RowIndex& idx = index_[size_t(2) * (r.k - 1) +
                           (r.orientation == Orientation::horizontal ? 0 : 1)];
    // narrow-axis key, sorted long-axis centers
    if (r.orientation == Orientation::horizontal)
      idx[r.m].push_back(r.l);
    else
      idx[r.l].push_back(r.m);
  }
  for (RowIndex& idx : index_)
    for (auto& [key, v] : idx) std::sort(v.begin(), v.end());
}

const Environment::RowIndex& Environment::rows(Orientation o, int k) const {
  return index_[size_t(2) * (k - 1) + (o == Orientation::horizontal ? 0 : 1)];
}

bool Environment::covered_at_scale(Orientation o, int k, Vec2 x) const {
  const double hl = params_.rect_length(k) / 2.0;
  const double hw = params_.rect_width() / 2.0;
  const double narrow = o == Orientation::horizontal ? x.y : x.x;
  const double along = o == Orientation::horizontal ? x.x : x.y;
  const RowIndex& idx = rows(o, k);
  if (idx.empty()) return false;
  const long key_lo = lceil(narrow - hw);
  const long key_hi = lfloor(narrow + hw);
  const double a_lo = along - hl, a_hi = along + hl;
  auto row_covers = [&](const std::vector<long>& v) {
    auto lb = std::lower_bound(v.begin(), v.end(), lceil(a_lo));
    if (lb != v.end() && double(*lb) <= a_hi) return true;
    // closed box: a center at exactly along - hl also covers
    return lb != v.begin() && double(*(lb - 1)) >= a_lo;
  };
  if (long(idx.size()) < key_hi - key_lo + 1) {
    // sparse index: walking its rows beats probing every candidate key
    for (const auto& [key, v] : idx)
      if (key >= key_lo && key <= key_hi && row_covers(v)) return true;
    return false;
  }
  for (long key = key_lo; key <= key_hi; ++key) {
    auto it = idx.find(key);
    if (it != idx.end() && row_covers(it->second)) return true;
  }
  return false;
}

int Environment::max_covering_scale(Orientation o, Vec2 x) const {
  for (int k = params_.k_max; k >= 1; --k)
    if (covered_at_scale(o, k, x)) return k;
  return 0;
}

double Environment::c2_value(Vec2 x) const {
  if (!window_.contains(x))
    throw std::out_of_range("c2_value: outside sampled window");
  const int kh = max_covering_scale(Orientation::horizontal, x);
  const int kv = max_covering_scale(Orientation::vertical, x);
  if (kh > kv) return -0.5;
  if (kv > kh) return 0.5;
  return 0.0;
}

double Environment::c2_sequential_oracle(Vec2 x) const {
  if (!window_.contains(x))
    throw std::out_of_range("c2_sequential_oracle: outside sampled window");
  int kh = 0;
  std::set<int> vertical_scales;
  for (const Rectangle& r : rects_) {
    if (!r.contains(x)) continue;
    if (r.orientation == Orientation::horizontal)
      kh = std::max(kh, r.k);
    else
      vertical_scales.insert(r.k);
  }
  double c2 = kh > 0 ? -0.5 : 0.0;  // Phase 1
  for (int k : vertical_scales) {   // Phase 2, increasing k
    if (kh > k) continue;           // larger horizontal wins, value kept
    c2 = kh == k ? 0.0 : 0.5;
  }
  return c2;
}

struct Environment::Tile {
  long i0 = 0, j0 = 0;
  int nx = 0, ny = 0;
  std::vector<double> c;
};

std::shared_ptr<const Environment::Tile> Environment::tile_for(long ti,
                                                               long tj) const {
  std::lock_guard<std::mutex> lock(*tile_mutex_);
  auto it = tiles_.find({ti, tj});
  if (it != tiles_.end()) return it->second;

  const double h = params_.env_grid_h;
  auto tile = std::make_shared<Tile>();
  tile->i0 = lfloor((ti * kTileSize - kTileHalo) / h);
  tile->j0 = lfloor((tj * kTileSize - kTileHalo) / h);
  const long i1 = lceil(((ti + 1) * kTileSize + kTileHalo) / h);
  const long j1 = lceil(((tj + 1) * kTileSize + kTileHalo) / h);
  tile->nx = int(i1 - tile->i0 + 1);
  tile->ny = int(j1 - tile->j0 + 1);
  const size_t n = size_t(tile->nx) * tile->ny;

  std::vector<double> c2(n);
  for (int j = 0; j < tile->ny; ++j) {
    for (int i = 0; i < tile->nx; ++i) {
      const Vec2 x{double(tile->i0 + i) * h, double(tile->j0 + j) * h};
      const int kh = max_covering_scale(Orientation::horizontal, x);
      const int kv = max_covering_scale(Orientation::vertical, x);
      c2[size_t(j) * tile->nx + i] = kh > kv ? -0.5 : (kv > kh ? 0.5 : 0.0);
    }
  }

  // Squared distance (cell units) to each of the three level sets.
  auto level_dist = [&](double level) {
    std::vector<double> g(n);
    bool any = false;
    for (size_t idx = 0; idx < n; ++idx) {
      const bool on = c2[idx] == level;
      g[idx] = on ? 0.0 : kInf;
      any = any || on;
    }
    if (any) dt2d(g, tile->nx, tile->ny);
    return g;
  };
  const std::vector<double> d_minus = level_dist(-0.5);
  const std::vector<double> d_zero = level_dist(0.0);
  const std::vector<double> d_plus = level_dist(0.5);

  tile->c.resize(n);
  for (size_t idx = 0; idx < n; ++idx) {
    const double c2v = c2[idx];
    if (c2v == 0.0) {
      tile->c[idx] = 0.0;
      continue;
    }
    // inf over the three levels of c2(y) +/- |x-y|, clamped at 0
    const double dz = d_zero[idx] == kInf ? kInf : h * std::sqrt(d_zero[idx]);
    if (c2v > 0.0) {
      const double dm = d_minus[idx] == kInf ? kInf : h * std::sqrt(d_minus[idx]);
      tile->c[idx] = std::max(std::min({0.5, dz, -0.5 + dm}), 0.0);
    } else {
      const double dp = d_plus[idx] == kInf ? kInf : h * std::sqrt(d_plus[idx]);
      tile->c[idx] = std::min(std::max({-0.5, -dz, 0.5 - dp}), 0.0);
    }
  }

  if (tiles_.size() >= kMaxCachedTiles) tiles_.clear();
  tiles_.emplace(std::make_pair(ti, tj), tile);
  return tile;
}

double Environment::c_value(Vec2 x) const {
  const double h = params_.env_grid_h;
  if (!window_.shrunk(h).contains(x))
    throw std::out_of_range("c_value: outside evaluable region");
  const std::shared_ptr<const Tile> tp =
      tile_for(lfloor(x.x / kTileSize), lfloor(x.y / kTileSize));
  const Tile& t = *tp;
  long i = lfloor(x.x / h);
  long j = lfloor(x.y / h);
  i = std::clamp(i, t.i0, t.i0 + t.nx - 2);
  j = std::clamp(j, t.j0, t.j0 + t.ny - 2);
  const double fx = x.x / h - double(i);
  const double fy = x.y / h - double(j);
  const int ii = int(i - t.i0), jj = int(j - t.j0);
  const double* c = t.c.data();
  const double v00 = c[size_t(jj) * t.nx + ii];
  const double v10 = c[size_t(jj) * t.nx + ii + 1];
  const double v01 = c[size_t(jj + 1) * t.nx + ii];
  const double v11 = c[size_t(jj + 1) * t.nx + ii + 1];
  return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
         fy * ((1.0 - fx) * v01 + fx * v11);
}

bool Environment::is_complete(const Rectangle& r) const {
  const Box rb = r.box();
  const Orientation opp = opposite(r.orientation);
  const double hw = params_.rect_width() / 2.0;
  for (int k = r.k; k <= params_.k_max; ++k) {
    const double hl = params_.rect_length(k) / 2.0;
    // opposite-orientation narrow axis (its width) and long axis
    const double n_lo = (opp == Orientation::vertical ? rb.x0 : rb.y0) - hw;
    const double n_hi = (opp == Orientation::vertical ? rb.x1 : rb.y1) + hw;
    const double a_lo = (opp == Orientation::vertical ? rb.y0 : rb.x0) - hl;
    const double a_hi = (opp == Orientation::vertical ? rb.y1 : rb.x1) + hl;
    const RowIndex& idx = rows(opp, k);
    if (idx.empty()) continue;
    const long key_lo = lceil(n_lo), key_hi = lfloor(n_hi);
    auto row_hits = [&](const std::vector<long>& v) {
      auto lb = std::lower_bound(v.begin(), v.end(), lceil(a_lo));
      if (lb != v.end() && double(*lb) <= a_hi) return true;
      return lb != v.begin() && double(*(lb - 1)) >= a_lo;
    };
    if (long(idx.size()) < key_hi - key_lo + 1) {
      for (const auto& [key, v] : idx)
        if (key >= key_lo && key <= key_hi && row_hits(v)) return false;
      continue;
    }
    for (long key = key_lo; key <= key_hi; ++key) {
      auto it = idx.find(key);
      if (it != idx.end() && row_hits(it->second)) return false;
    }
  }
  return true;
}

double Environment::truncation_probability_bound() const {
  double total = 0.0;
  for (int k = params_.k_max + 1; k <= params_.k_max + 200; ++k) {
    const double hl = params_.lambda * dyadic_scale(k) / 2.0 + 0.5;
    const double hw = params_.rect_width() / 2.0;
    double term = 0.0;
    for (int o = 0; o < 2; ++o) {
      const double ex = o == 0 ? hl : hw;
      const double ey = o == 0 ? hw : hl;
      const double nx = std::floor(window_.x1 + ex) - std::ceil(window_.x0 - ex) + 3;
      const double ny = std::floor(window_.y1 + ey) - std::ceil(window_.y0 - ey) + 3;
      term += nx * ny;
    }
    term *= std::ldexp(1.0, -2 * k);
    total += term;
    if (term < 1e-18 * std::max(total, 1e-300)) break;
  }
  return std::min(total, 1.0);
}

Environment::GridField Environment::c_grid(const Box& region, double h) const {
  GridField f;
  f.x0 = region.x0;
  f.y0 = region.y0;
  f.h = h;
  f.nx = int(std::floor((region.x1 - region.x0) / h)) + 1;
  f.ny = int(std::floor((region.y1 - region.y0) / h)) + 1;
  f.values.resize(size_t(f.nx) * f.ny);
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i)
      f.values[size_t(j) * f.nx + i] =
          c_value({region.x0 + i * h, region.y0 + j * h});
  return f;
}

Environment rotate_environment(const Environment& env) {
  const EnvParams& p = env.params();
  const Box& w = env.window();
  // preimage of the window under x -> x_hat
  const Box rw{-w.y1, w.x0, -w.y0, w.x1};
  std::vector<Rectangle> rects;
  rects.reserve(env.rectangles().size());
  for (const Rectangle& r : env.rectangles())
    rects.emplace_back(opposite(r.orientation), r.k, -r.m, r.l, p);
  PlantSpec plants;
  for (const auto& [key, present] : env.plants().entries) {
    const auto [j, k, l, m] = key;
    plants.entries[{j == 1 ? 2 : 1, k, -m, l}] = present;
  }
  return Environment::from_rectangles(p, rw, std::move(rects),
                                      std::move(plants));
}

PlantSpec plant_complete_rectangle(const EnvParams& params, const Box& window,
                                   Orientation o, int k, long l, long m,
                                   PlantSpec base) {
  PlantSpec plants = std::move(base);
  plants.set(o, k, l, m, true);
  const Box target = Rectangle(o, k, l, m, params).box();
  const Orientation opp = opposite(o);
  for (int kk = k; kk <= params.k_max; ++kk) {
    const double hl = params.rect_length(kk) / 2.0;
    const double hw = params.rect_width() / 2.0;
    const double ex = opp == Orientation::horizontal ? hl : hw;
    const double ey = opp == Orientation::horizontal ? hw : hl;
    // centers whose rectangle could touch both the window scan range and
    // the target rectangle
    const long l_lo = std::max(lceil(window.x0 - ex) - 1, lceil(target.x0 - ex));
    const long l_hi = std::min(lfloor(window.x1 + ex) + 1, lfloor(target.x1 + ex));
    const long m_lo = std::max(lceil(window.y0 - ey) - 1, lceil(target.y0 - ey));
    const long m_hi = std::min(lfloor(window.y1 + ey) + 1, lfloor(target.y1 + ey));
    for (long ll = l_lo; ll <= l_hi; ++ll) {
      for (long mm = m_lo; mm <= m_hi; ++mm) {
        if (!bernoulli_draw(params, opp, kk, ll, mm, plants)) continue;
        if (Rectangle(opp, kk, ll, mm, params).box().intersects(target))
          plants.set(opp, kk, ll, mm, false);
      }
    }
  }
  return plants;
}

std::string rectangles_csv(const Environment& env) {
  std::ostringstream out;
  out << "orientation,k,l,m,length,width,complete\n";
  for (const Rectangle& r : env.rectangles()) {
    out << (r.orientation == Orientation::horizontal ? "horizontal"
                                                     : "vertical")
        << ',' << r.k << ',' << r.l << ',' << r.m << ',' << r.length << ','
        << r.width << ',' << (env.is_complete(r) ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace hjhom
