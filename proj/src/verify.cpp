#include "choice_dyn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "choice_dyn/restricted.hpp"
#include "choice_dyn/setdyn.hpp"
#include "choice_dyn/sofic.hpp"
#include "json.hpp"

namespace choice_dyn {

namespace {

// Pinned tolerances.
constexpr double kFixedPointTol = 1e-12;
constexpr double kFixedPointBudget = 1e-3;
constexpr double kCantorDelta = 1e-4;
constexpr double kCantorBudget = 10;
constexpr double kMalariaDelta = 1e-3;
constexpr double kInvarianceFactor = 4;
constexpr double kThreePointBudget = 1;
constexpr double kSliceDelta = 0.01;
constexpr std::size_t kSliceBound = 4;
constexpr double kSliceBudget = 60;
constexpr std::size_t kGestaltDepth = 12;
constexpr double kGestaltBudget = 30;
constexpr double kLineDelta = 1e-3;
constexpr std::size_t kLineStepLimit = 25;
constexpr double kLineTol = 1e-9;
constexpr double kLemmaDelta = 0.005;
constexpr std::size_t kLemmaSamples = 20;
constexpr std::uint64_t kLemmaSeed = 20240917;
constexpr std::size_t kChaosSteps = 1'000'000;
constexpr std::size_t kChaosBurnin = 1000;
constexpr double kChaosLo = 0.49, kChaosHi = 0.51;
constexpr double kChaosBudget = 5;

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_point(const Point& p, std::size_t dim) {
  std::string s = "(";
  for (std::size_t k = 0; k < dim; ++k) s += (k ? ", " : "") + fmt(p[k]);
  return s + ")";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared state across criteria: global attractors are expensive, so each
// (model, delta) pair is computed once.
struct Context {
  MalariaParams p0 = kPset0;
  MalariaParams p1 = kPset1;
  std::map<std::pair<std::string, double>, AttractorReport> k_cache;

  const AttractorReport& K(const ModelSpec& m, double delta) {
    auto key = std::make_pair(m.name, delta);
    auto it = k_cache.find(key);
    if (it == k_cache.end()) {
      const double tol = delta > 0 ? delta : 0.0;
      it = k_cache.emplace(key, compute_K(m, delta, tol, 100000)).first;
    }
    return it->second;
  }
};

using Check = std::function<void(Context&, CriterionResult&)>;

// 1. Closed-form fixed points of both parameter sets.
void check_fixed_points(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    MalariaParams p;
    Point expected;
  };
  const Case cases[] = {{ctx.p0, {11.0 / 15, 11.0 / 16, 0}}, {ctx.p1, {7.0 / 25, 7.0 / 12, 0}}};
  bool ok = true;
  std::ostringstream measured;
  double worst = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    const FixedPoints fp = fixed_points(cases[i].p);
    if (!fp.endemic) {
      ok = false;
      measured << "pset" << i << ": no interior fixed point (ab <= rm); ";
      continue;
    }
    const Point P = *fp.endemic;
    const Point SP = malaria_step(cases[i].p, P);
    const double moved = std::hypot(SP[0] - P[0], SP[1] - P[1]);
    const double err = std::hypot(P[0] - cases[i].expected[0], P[1] - cases[i].expected[1]);
    worst = std::max({worst, moved, err});
    if (moved > kFixedPointTol || err > kFixedPointTol) ok = false;
    measured << "pset" << i << ": P=" << fmt_point(P, 2) << " |S(P)-P|=" << fmt(moved) << "; ";
  }
  r.seconds = seconds_since(t0);
  if (r.seconds >= kFixedPointBudget) ok = false;
  measured << "runtime " << fmt(r.seconds) << " s";
  r.passed = ok;
  r.measured = measured.str();
  r.expected = "(11/15, 11/16) and (7/25, 7/12), residual <= 1e-12, runtime < 1 ms";
}

// 2. Admissible step sizes for pset0.
void check_step_bound(Context&, CriterionResult& r) {
  MalariaParams p = kPset0;
  p.dt = 0.05;
  const bool admits = step_admissible(p);
  p.dt = 0.2;
  const bool rejects = !step_admissible(p);
  const double bound = step_bound(kPset0);
  r.passed = admits && rejects && bound == 0.125;
  r.measured = std::string("dt=0.05 ") + (admits ? "admitted" : "rejected") + ", dt=0.2 " +
               (rejects ? "rejected" : "admitted") + ", bound " + fmt(bound);
  r.expected = "dt=0.05 admitted, dt=0.2 rejected, bound 0.125";
}

// Independent oracle: the 2^9 level-9 intervals, built from ternary digits
// {0, 2}, represented by both endpoints.
std::vector<double> cantor_endpoints(std::size_t depth) {
  std::vector<double> out;
  const std::size_t count = std::size_t{1} << depth;
  const double len = std::pow(3.0, -static_cast<double>(depth));
  for (std::size_t code = 0; code < count; ++code) {
    double left = 0, scale = 1;
    for (std::size_t k = 0; k < depth; ++k) {
      scale /= 3;
      if ((code >> (depth - 1 - k)) & 1) left += 2 * scale;
    }
    out.push_back(left);
    out.push_back(left + len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double sorted_directed(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (double x : a) {
    auto it = std::lower_bound(b.begin(), b.end(), x);
    double best = INFINITY;
    if (it != b.end()) best = *it - x;
    if (it != b.begin()) best = std::min(best, x - *std::prev(it));
    worst = std::max(worst, best);
  }
  return worst;
}

// 3. Cantor attractor against the ternary oracle.
void check_cantor(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelSpec m = cantor_model();
  const AttractorReport& k = ctx.K(m, kCantorDelta);
  const auto oracle = cantor_endpoints(9);
  std::vector<double> cloud;
  for (const Point& p : k.cloud.points()) cloud.push_back(p[0]);
  const double d = std::max(sorted_directed(cloud, oracle), sorted_directed(oracle, cloud));
  r.seconds = seconds_since(t0);
  r.passed = k.converged && d <= 2 * kCantorDelta && r.seconds < kCantorBudget;
  r.measured = "d_H=" + fmt(d) + " (" + std::to_string(k.cloud.size()) + " points, " +
               std::to_string(k.iterations) + " iterations, converged=" + (k.converged ? "yes" : "no") +
               "), runtime " + fmt(r.seconds) + " s";
  r.expected = "d_H <= " + fmt(2 * kCantorDelta) + ", runtime < 10 s";
}

// 4. F(K) = K up to snapping for every model with a converged K.
void check_invariance(Context& ctx, CriterionResult& r) {
  struct Case {
    ModelSpec m;
    double delta;
  };
  const Case cases[] = {{malaria_model(ctx.p0, ctx.p1), kMalariaDelta},
                        {cantor_model(), kCantorDelta},
                        {three_point_model(), 0.0}};
  bool ok = true;
  std::ostringstream measured;
  for (const Case& c : cases) {
    const AttractorReport& k = ctx.K(c.m, c.delta);
    const PointCloud fk = hutchinson_step(c.m, k.cloud);
    const double d = model_hausdorff(c.m, fk, k.cloud);
    const double limit = kInvarianceFactor * c.delta;
    if (!k.converged || d > limit) ok = false;
    measured << c.m.name << ": d_H(F(K),K)=" << fmt(d) << (k.converged ? "" : " (not converged)") << "; ";
  }
  r.passed = ok;
  r.measured = measured.str();
  r.expected = "converged and d_H <= 4 delta for each model";
}

std::string label_set(const PointCloud& c) {
  std::vector<std::string> labels;
  for (const Point& p : c.points()) labels.push_back(three_point_label(p));
  std::sort(labels.begin(), labels.end());
  std::string s = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
  return s + "}";
}

// 5. Slices of the three-point model over the golden+even shift.
void check_three_point(Context&, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelSpec m = three_point_model();
  const SoficPresentation p = golden_even();
  const VertexFamily fam = vertex_limits(m, p, 0.0, 0.0, 1000);
  const SliceReport rep = enumerate_slices(m, p, fam, 6);
  std::vector<std::string> got;
  for (const PointCloud& s : rep.slices) got.push_back(label_set(s));
  std::sort(got.begin(), got.end());
  r.seconds = seconds_since(t0);
  const std::vector<std::string> want{"{A,B}", "{B,C}"};
  r.passed = fam.all_converged() && got == want && r.seconds < kThreePointBudget;
  std::string list;
  for (const auto& g : got) list += (list.empty() ? "" : " ") + g;
  r.measured = std::to_string(got.size()) + " slices: " + list + ", runtime " + fmt(r.seconds) + " s";
  r.expected = "2 slices: {A,B} {B,C}, runtime < 1 s";
}

// 6. Malaria model restricted to the golden mean shift.
void check_malaria_slices(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelSpec m = malaria_model(ctx.p0, ctx.p1);
  const AttractorReport& k = ctx.K(m, kSliceDelta);
  const SoficPresentation p = golden_mean();
  const VertexFamily fam = vertex_limits(m, p, kSliceDelta, kSliceDelta, 100000);
  const SliceReport rep = enumerate_slices(m, p, fam, kSliceBound);
  r.seconds = seconds_since(t0);
  bool ok = fam.all_converged() && rep.slices.size() == 2;
  std::ostringstream measured;
  measured << rep.slices.size() << " slices";
  if (rep.slices.size() == 2) {
    const double in0 = directed_distance(rep.slices[0], k.cloud);
    const double in1 = directed_distance(rep.slices[1], k.cloud);
    const std::size_t overlap = intersection(rep.slices[0], rep.slices[1]).size();
    const double gap = directed_distance(k.cloud, unite(rep.slices[0], rep.slices[1]));
    ok = ok && in0 <= 2 * kSliceDelta && in1 <= 2 * kSliceDelta && overlap > 0 && gap > 10 * kSliceDelta;
    measured << "; d(slice_i, K)=" << fmt(in0) << ", " << fmt(in1) << "; shared points " << overlap
             << "; d(K, union)=" << fmt(gap);
  }
  ok = ok && r.seconds < kSliceBudget;
  measured << "; runtime " << fmt(r.seconds) << " s";
  r.passed = ok;
  r.measured = measured.str();
  r.expected = "2 slices, each within 0.02 of K, overlapping, d(K, union) > 0.1, runtime < 60 s";
}

// 7. A point of K outside every periodic individual attractor.
void check_gestalt(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelSpec m = gestalt_model({kGestaltDepth});
  const UPString target = UPString::parse("000(100)");
  const Point u{static_cast<double>(gestalt_encode(target.prefix(kGestaltDepth))), 0, 0};
  const AttractorReport& k = ctx.K(m, 0.0);
  const bool in_k = k.cloud.contains_point(u);
  std::size_t hits = 0, tested = 0;
  std::string hit_list;
  for (std::size_t len = 1; len <= 4; ++len) {
    for (const Word& per : enumerate_words(2, len)) {
      const UPString w(Word{}, per);
      const AttractorReport a = individual_attractor(m, w, 0.0);
      ++tested;
      if (a.cloud.contains_point(u)) {
        ++hits;
        hit_list += " (" + per.str() + ")";
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = in_k && hits == 0 && tested == 30 && r.seconds < kGestaltBudget;
  r.measured = std::string("prefix ") + (in_k ? "in" : "not in") + " K; contained in " + std::to_string(hits) +
               " of " + std::to_string(tested) + " A_w" + hit_list + "; runtime " + fmt(r.seconds) + " s";
  r.expected = "prefix in K, in none of 30 A_w, runtime < 30 s";
}

// 8. Divergence report for the unbounded line model.
void check_counterexample(Context&, CriterionResult& r) {
  const ModelSpec m = line_counterexample();
  const PointCloud seed = PointCloud::from_points(1, kLineDelta, std::vector<Point>{{1, 0, 0}});
  const AttractorReport alt = omega_limit(m, seed, UPString::parse("(01)"));
  bool ok = alt.violation && alt.violation->step <= kLineStepLimit;
  std::ostringstream measured;
  if (alt.violation)
    measured << "(01): violation at step " << alt.violation->step << ", x=" << fmt(alt.violation->point[0]);
  else
    measured << "(01): no violation";
  for (const char* s : {"(0)", "(1)"}) {
    const AttractorReport a = omega_limit(m, seed, UPString::parse(s));
    const PointCloud zero = PointCloud::from_points(1, kLineDelta, std::vector<Point>{{0, 0, 0}});
    const double d = a.cloud.empty() ? INFINITY : hausdorff(a.cloud, zero);
    ok = ok && !a.violation && d <= kLineTol;
    measured << "; " << s << ": d_H(A, {0})=" << fmt(d);
  }
  r.passed = ok;
  r.measured = measured.str();
  r.expected = "(01) violation within 25 steps; (0), (1) -> {0} within 1e-9";
}

// 9. Inclusions between individual attractors, F and K.
void check_lemmas(Context& ctx, CriterionResult& r) {
  const ModelSpec m = malaria_model(ctx.p0, ctx.p1);
  const double delta = kLemmaDelta, lim = 2 * delta;
  const AttractorReport& k = ctx.K(m, delta);
  std::mt19937_64 rng(kLemmaSeed);
  auto random_word = [&](std::size_t lo, std::size_t hi) {
    const std::size_t len = lo + rng() % (hi - lo + 1);
    std::vector<Symbol> letters(len);
    for (auto& s : letters) s = static_cast<Symbol>(rng() % 2);
    return Word(std::move(letters));
  };
  double worst[5] = {0, 0, 0, 0, 0};
  std::size_t failures = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < kLemmaSamples; ++i) {
    const Word pre = i % 2 == 0 ? Word{} : random_word(1, 3);
    const UPString w(pre, random_word(1, 4));
    const AttractorReport aw = individual_attractor(m, w, delta);
    const AttractorReport asw = individual_attractor(m, shift(w), delta);
    const PointCloud faw = hutchinson_step(m, aw.cloud);
    double d[5] = {directed_distance(aw.cloud, faw), directed_distance(faw, k.cloud),
                   directed_distance(aw.cloud, asw.cloud), 0, 0};
    if (w.is_periodic()) {
      const AttractorReport ap = individual_attractor(m, shift(w, w.period().size()), delta);
      d[3] = hausdorff(aw.cloud, ap.cloud);
      d[4] = hausdorff(aw.cloud, asw.cloud);
    }
    bool ok = !aw.violation && !asw.violation;
    for (int j = 0; j < 5; ++j) {
      worst[j] = std::max(worst[j], d[j]);
      if (d[j] > lim) ok = false;
    }
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = " first failure " + w.str();
    }
  }
  r.passed = failures == 0;
  r.measured = "max d(A_w,F(A_w))=" + fmt(worst[0]) + ", d(F(A_w),K)=" + fmt(worst[1]) +
               ", d(A_w,A_sw)=" + fmt(worst[2]) + ", periodic d_H(A_w,A_s^p w)=" + fmt(worst[3]) +
               ", periodic d_H(A_w,A_sw)=" + fmt(worst[4]) + "; " + std::to_string(failures) + " of " +
               std::to_string(kLemmaSamples) + " samples failed" + first_failure;
  r.expected = "all distances <= " + fmt(lim);
}

// 10. Chaos game mean on the Cantor system.
void check_chaos(Context&, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelSpec m = cantor_model();
  ChaosOptions opts;
  opts.probs = {0.5, 0.5};
  opts.x0 = {0.5, 0, 0};
  opts.burnin = kChaosBurnin;
  opts.n = kChaosBurnin + kChaosSteps;
  opts.seed = 1;
  opts.delta = kCantorDelta;
  const ChaosResult res = chaos_game(m, opts, [](const Point& p) { return p[0]; });
  r.seconds = seconds_since(t0);
  r.passed = res.mean >= kChaosLo && res.mean <= kChaosHi && r.seconds < kChaosBudget;
  r.measured = "mean " + fmt(res.mean) + ", runtime " + fmt(r.seconds) + " s";
  r.expected = "mean in [0.49, 0.51], runtime < 5 s";
}

struct Entry {
  CriterionInfo info;
  Check run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{1, "fixed-points", "Malaria fixed points exact"}, check_fixed_points},
      {{2, "step-bound", "Step-size gate"}, check_step_bound},
      {{3, "cantor", "Cantor attractor matches ternary oracle"}, check_cantor},
      {{4, "invariance", "Hutchinson invariance of K"}, check_invariance},
      {{5, "three-point", "Two slices of the three-point model"}, check_three_point},
      {{6, "malaria-slices", "Malaria golden-mean slices"}, check_malaria_slices},
      {{7, "gestalt", "Gestalt effect at depth 12"}, check_gestalt},
      {{8, "counterexample", "Line counterexample diagnostics"}, check_counterexample},
      {{9, "lemmas", "Individual attractor inclusions"}, check_lemmas},
      {{10, "chaos", "Chaos game mean on the Cantor system"}, check_chaos},
  };
  return entries;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> infos = [] {
    std::vector<CriterionInfo> v;
    for (const Entry& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  Context ctx;
  if (opts.pset0) ctx.p0 = *opts.pset0;
  if (opts.pset1) ctx.p1 = *opts.pset1;

  std::vector<CriterionResult> results;
  bool matched = false;
  for (const Entry& e : registry()) {
    if (!opts.only.empty() && opts.only != std::to_string(e.info.id) && opts.only != e.info.tag) continue;
    matched = true;
    CriterionResult r;
    r.id = e.info.id;
    r.tag = e.info.tag;
    r.title = e.info.title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(ctx, r);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.measured = std::string("error: ") + ex.what();
    }
    if (r.seconds == 0) r.seconds = seconds_since(t0);
    results.push_back(std::move(r));
  }
  if (!matched) throw std::invalid_argument("no acceptance criterion matches '" + opts.only + "'");
  return results;
}

std::string results_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json out;
  bool all = true;
  auto arr = nlohmann::ordered_json::array();
  for (const CriterionResult& r : results) {
    all = all && r.passed;
    arr.push_back({{"id", r.id},
                   {"tag", r.tag},
                   {"title", r.title},
                   {"passed", r.passed},
                   {"measured", r.measured},
                   {"expected", r.expected},
                   {"seconds", r.seconds}});
  }
  out["passed"] = all;
  out["criteria"] = arr;
  return out.dump(2);
}

}  // namespace choice_dyn
