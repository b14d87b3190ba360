#include "choice_dyn/setdyn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace choice_dyn {

namespace {

constexpr double kEscapeSlackCells = 10.0;
constexpr std::size_t kMaxSeedCells = std::size_t{1} << 27;
constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

struct Lattice {
  std::size_t dim;
  double delta;
  double slack;
  Box bounds;
  Cell lo{};
  Cell hi{};
};

Lattice lattice_for(const ModelSpec& m, const Box& box, double delta) {
  Lattice lat{m.dim, delta, kEscapeSlackCells * delta, m.bounds, {}, {}};
  for (std::size_t k = 0; k < m.dim; ++k) {
    if (delta > 0) {
      lat.lo[k] = static_cast<std::int64_t>(std::ceil(box.lo[k] / delta - 1e-9));
      lat.hi[k] = static_cast<std::int64_t>(std::floor(box.hi[k] / delta + 1e-9));
    } else {
      lat.lo[k] = static_cast<std::int64_t>(std::ceil(box.lo[k]));
      lat.hi[k] = static_cast<std::int64_t>(std::floor(box.hi[k]));
    }
    if (lat.lo[k] > lat.hi[k]) throw std::invalid_argument(m.name + ": region contains no lattice point");
  }
  return lat;
}

Lattice lattice_for(const ModelSpec& m, double delta) { return lattice_for(m, m.bounds, delta); }

[[noreturn]] void report_escape(const ModelSpec& m, const Point& y, std::size_t step) {
  std::ostringstream msg;
  msg.precision(17);
  msg << m.name << ": iterate (";
  for (std::size_t k = 0; k < m.dim; ++k) msg << (k ? ", " : "") << y[k];
  msg << ") left the bounding region at step " << step << " (absorbing-set assumption violated)";
  throw AssumptionViolation(msg.str(), step, y);
}

void check_escape(const ModelSpec& m, const Lattice& lat, const Point& y, std::size_t step) {
  for (std::size_t k = 0; k < lat.dim; ++k) {
    if (!(y[k] >= lat.bounds.lo[k] - lat.slack && y[k] <= lat.bounds.hi[k] + lat.slack)) report_escape(m, y, step);
  }
}

Cell place(const ModelSpec& m, const Lattice& lat, const Point& y, std::size_t step) {
  check_escape(m, lat, y, step);
  Cell c{};
  if (lat.delta > 0) {
    c = snap(y, lat.dim, lat.delta);
  } else {
    for (std::size_t k = 0; k < lat.dim; ++k) {
      const double r = std::round(y[k]);
      if (r != y[k]) throw std::domain_error(m.name + ": discrete map produced a non-lattice state");
      c[k] = static_cast<std::int64_t>(r);
    }
  }
  for (std::size_t k = 0; k < lat.dim; ++k) c[k] = std::clamp(c[k], lat.lo[k], lat.hi[k]);
  return c;
}

// Sort+unique, or a bitmap over the bounded lattice when that is cheaper.
PointCloud canonical_cloud(const Lattice& lat, std::vector<Cell> cells) {
  double total = 1;
  for (std::size_t k = 0; k < lat.dim; ++k) total *= static_cast<double>(lat.hi[k] - lat.lo[k] + 1);
  const double budget = std::max(double(1 << 20), 64.0 * static_cast<double>(cells.size()));
  if (total > budget || total > double(std::size_t{1} << 28)) return PointCloud::from_cells(lat.dim, lat.delta, std::move(cells));

  std::array<std::uint64_t, kMaxDim> extent{};
  for (std::size_t k = 0; k < lat.dim; ++k) extent[k] = static_cast<std::uint64_t>(lat.hi[k] - lat.lo[k] + 1);
  auto index_of = [&](const Cell& c) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < lat.dim; ++k) idx = idx * extent[k] + static_cast<std::uint64_t>(c[k] - lat.lo[k]);
    return idx;
  };
  const auto n = static_cast<std::uint64_t>(total);
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  for (const Cell& c : cells) {
    const auto idx = index_of(c);
    bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (std::uint64_t word = 0; word < bits.size(); ++word) {
    for (std::uint64_t b = bits[word]; b != 0; b &= b - 1) {
      std::uint64_t idx = word * 64 + static_cast<std::uint64_t>(__builtin_ctzll(b));
      Cell c{};
      for (std::size_t k = lat.dim; k-- > 0;) {
        c[k] = lat.lo[k] + static_cast<std::int64_t>(idx % extent[k]);
        idx /= extent[k];
      }
      out.push_back(c);
    }
  }
  return PointCloud::from_sorted_cells(lat.dim, lat.delta, std::move(out));
}

void require_symbols(const ModelSpec& m, Symbol max_symbol, bool nonempty) {
  if (nonempty && max_symbol >= m.alphabet()) {
    throw std::invalid_argument(m.name + ": strategy uses symbol " + std::to_string(max_symbol) +
                                " but the model has " + std::to_string(m.alphabet()) + " maps");
  }
}

double euclid(const Point& a, const Point& b, std::size_t dim) {
  double s = 0;
  for (std::size_t k = 0; k < dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

PointCloud seed_cloud(const ModelSpec& m, double delta) {
  check_resolution(m, delta);
  if (m.discrete) {
    const Lattice lat = lattice_for(m, delta);
    std::vector<Cell> cells;
    for (const Point& s : m.states) cells.push_back(place(m, lat, s, 0));
    return PointCloud::from_cells(m.dim, delta, std::move(cells));
  }
  const Lattice lat = lattice_for(m, m.seed_box.value_or(m.bounds), delta);
  std::size_t total = 1;
  for (std::size_t k = 0; k < m.dim; ++k) {
    const auto extent = static_cast<std::size_t>(lat.hi[k] - lat.lo[k] + 1);
    if (extent > kMaxSeedCells / total) throw std::invalid_argument(m.name + ": seed grid too large for this delta");
    total *= extent;
  }
  std::vector<Cell> cells;
  cells.reserve(total);
  Cell c = lat.lo;
  for (std::size_t i = 0; i < total; ++i) {
    cells.push_back(c);
    for (std::size_t k = m.dim; k-- > 0;) {
      if (++c[k] <= lat.hi[k]) break;
      c[k] = lat.lo[k];
    }
  }
  return PointCloud::from_sorted_cells(m.dim, delta, std::move(cells));
}

PointCloud apply_maps(const ModelSpec& m, std::span<const std::size_t> symbols, const PointCloud& a, std::size_t step) {
  if (a.empty()) throw std::invalid_argument("apply_maps: empty point cloud");
  if (a.dim() != m.dim) throw std::invalid_argument("apply_maps: cloud dimension does not match the model");
  for (std::size_t j : symbols)
    if (j >= m.alphabet()) throw std::invalid_argument(m.name + ": map index out of range");
  const Lattice lat = lattice_for(m, a.delta());
  const auto& src = a.cells();
  const std::size_t nsym = symbols.size();
  const std::size_t n = src.size() * nsym;
  const std::size_t chunks = n >= kParallelThreshold ? detail::worker_count() : 1;

  std::vector<std::vector<Cell>> parts(chunks);
  detail::parallel_chunks(n, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto& out = parts[c];
    out.reserve(end - begin);
    for (std::size_t idx = begin; idx < end; ++idx) {
      const Point x = cell_center(src[idx / nsym], lat.dim, lat.delta);
      out.push_back(place(m, lat, m.maps[symbols[idx % nsym]](x), step));
    }
  });
  std::vector<Cell> all = std::move(parts.front());
  for (std::size_t c = 1; c < chunks; ++c) all.insert(all.end(), parts[c].begin(), parts[c].end());
  return canonical_cloud(lat, std::move(all));
}

PointCloud apply_map(const ModelSpec& m, std::size_t symbol, const PointCloud& a, std::size_t step) {
  const std::size_t one[] = {symbol};
  return apply_maps(m, one, a, step);
}

PointCloud hutchinson_step(const ModelSpec& m, const PointCloud& a, std::size_t step) {
  std::vector<std::size_t> all(m.alphabet());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return apply_maps(m, all, a, step);
}

PointCloud apply_word(const ModelSpec& m, const Word& w, const PointCloud& a) {
  require_symbols(m, w.max_symbol(), !w.empty());
  if (w.empty()) return a;
  const Lattice lat = lattice_for(m, a.delta());
  std::vector<Cell> cells;
  cells.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Point y = a.point(i);
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      y = m.maps[w[k]](y);
      check_escape(m, lat, y, k + 1);
    }
    cells.push_back(place(m, lat, m.maps[w[w.size() - 1]](y), w.size()));
  }
  return canonical_cloud(lat, std::move(cells));
}

double model_directed(const ModelSpec& m, const PointCloud& a, const PointCloud& b) {
  return directed_distance(a, b, m.metric);
}

double model_hausdorff(const ModelSpec& m, const PointCloud& a, const PointCloud& b) {
  return hausdorff(a, b, m.metric);
}

AttractorReport compute_K_from(const ModelSpec& m, PointCloud seed, double tol, std::size_t maxiter) {
  if (seed.empty()) throw std::invalid_argument("compute_K: empty seed cloud");
  AttractorReport report;
  PointCloud current = std::move(seed);
  for (std::size_t it = 1; it <= maxiter; ++it) {
    PointCloud next;
    try {
      next = hutchinson_step(m, current, it);
    } catch (const AssumptionViolation& v) {
      report.violation = ViolationInfo{v.step(), v.point(), v.what()};
      report.iterations = it;
      report.cloud = std::move(current);
      return report;
    }
    report.iterations = it;
    if (next == current) {
      report.residual = 0;
      report.converged = true;
      report.cloud = std::move(next);
      return report;
    }
    report.residual = model_hausdorff(m, current, next);
    current = std::move(next);
    if (report.residual <= tol) {
      report.converged = true;
      break;
    }
  }
  report.cloud = std::move(current);
  return report;
}

AttractorReport compute_K(const ModelSpec& m, double delta, double tol, std::size_t maxiter) {
  if (tol < delta) throw std::invalid_argument("compute_K: tol must be >= delta");
  return compute_K_from(m, seed_cloud(m, delta), tol, maxiter);
}

namespace {

struct TailEntry {
  std::size_t step;
  std::uint64_t hash;
  PointCloud cloud;
};

AttractorReport run_tail(const ModelSpec& m, PointCloud current, const UPString& w, std::size_t burnin,
                         std::size_t window) {
  require_symbols(m, w.max_symbol(), true);
  const std::size_t pre = w.preperiod().size();
  const std::size_t per = w.period().size();
  window = std::max(window, per);

  AttractorReport report;
  std::deque<TailEntry> history;
  const std::size_t budget = burnin + window;
  for (std::size_t n = 1; n <= budget; ++n) {
    try {
      current = apply_map(m, w.letter_at(n - 1), current, n);
    } catch (const AssumptionViolation& v) {
      report.violation = ViolationInfo{v.step(), v.point(), v.what()};
      report.iterations = n;
      report.cloud = std::move(current);
      return report;
    }
    report.iterations = n;
    const std::uint64_t h = current.hash();

    // A repeat at equal phase past the preperiod makes the tail periodic
    // from there on.
    if (n >= pre) {
      for (auto it = history.rbegin(); it != history.rend(); ++it) {
        const std::size_t lag = n - it->step;
        if (it->step < pre || lag % per != 0) continue;
        if (it->hash != h || !(it->cloud == current)) continue;
        std::vector<PointCloud> cycle;
        for (const auto& e : history)
          if (e.step > it->step) cycle.push_back(e.cloud);
        cycle.push_back(current);
        report.cloud = unite(cycle);
        report.cycle_length = lag;
        report.residual = 0;
        report.converged = true;
        return report;
      }
    }
    history.push_back({n, h, current});
    if (history.size() > window) history.pop_front();
  }

  std::vector<PointCloud> tail;
  for (const auto& e : history) tail.push_back(e.cloud);
  report.cloud = unite(tail);
  if (history.size() > per) {
    report.residual = model_hausdorff(m, history.back().cloud, history[history.size() - 1 - per].cloud);
  }
  return report;
}

std::size_t default_burnin(const ModelSpec& m, double delta) {
  if (m.discrete || delta == 0) return 10 * std::max<std::size_t>(1, m.states.size());
  const Box box = m.seed_box.value_or(m.bounds);
  const double diameter = euclid(box.lo, box.hi, m.dim);
  return static_cast<std::size_t>(std::ceil(10.0 * diameter / delta));
}

}  // namespace

AttractorReport individual_attractor(const ModelSpec& m, const UPString& w, double delta, TailOptions opts) {
  return omega_limit(m, seed_cloud(m, delta), w, opts);
}

AttractorReport omega_limit(const ModelSpec& m, const PointCloud& seed, const UPString& w, TailOptions opts) {
  if (seed.empty()) throw std::invalid_argument("omega_limit: empty seed cloud");
  const std::size_t burnin = opts.burnin.value_or(default_burnin(m, seed.delta()));
  const std::size_t window = opts.window.value_or(4 * w.period().size());
  return run_tail(m, seed, w, burnin, window);
}

ChaosResult chaos_game(const ModelSpec& m, const ChaosOptions& opts,
                       const std::function<double(const Point&)>& observable) {
  if (opts.probs.size() != m.alphabet())
    throw std::invalid_argument("chaos_game: need one probability per map");
  double sum = 0;
  for (double p : opts.probs) {
    if (!(p >= 0) || !std::isfinite(p)) throw std::invalid_argument("chaos_game: probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("chaos_game: probabilities must sum to 1");
  if (opts.n <= opts.burnin) throw std::invalid_argument("chaos_game: n must exceed burnin");
  check_resolution(m, opts.delta);

  std::vector<double> cumulative(opts.probs.size());
  std::partial_sum(opts.probs.begin(), opts.probs.end(), cumulative.begin());
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < opts.probs.size(); ++j)
    if (opts.probs[j] > 0) last_positive = j;

  const Lattice lat = lattice_for(m, opts.delta);
  std::mt19937_64 rng(opts.seed);
  Point x = opts.x0;
  double total = 0;
  std::vector<Cell> cells;
  cells.reserve(opts.n - opts.burnin);
  for (std::size_t i = 0; i < opts.n; ++i) {
    // 53 random bits; mt19937_64 output is fully specified, so this is
    // reproducible across platforms.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::size_t j = last_positive;
    for (std::size_t k = 0; k < cumulative.size(); ++k) {
      if (u < cumulative[k]) {
        j = k;
        break;
      }
    }
    x = m.maps[j](x);
    check_escape(m, lat, x, i + 1);
    if (i >= opts.burnin) {
      total += observable(x);
      cells.push_back(place(m, lat, x, i + 1));
    }
  }
  return {canonical_cloud(lat, std::move(cells)), total / static_cast<double>(opts.n - opts.burnin)};
}

double self_map_overshoot(const ModelSpec& m, double delta) {
  const PointCloud seed = seed_cloud(m, delta);
  double worst = 0;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    const Point x = seed.point(i);
    for (const auto& map : m.maps) {
      const Point y = map(x);
      for (std::size_t k = 0; k < m.dim; ++k) {
        worst = std::max({worst, m.bounds.lo[k] - y[k], y[k] - m.bounds.hi[k]});
      }
    }
  }
  return worst;
}

}  // namespace choice_dyn
