#include "fuknagaev/quantile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>

#include "fuknagaev/error.hpp"
#include "fuknagaev/minimize.hpp"

namespace fuknagaev {
namespace {

void require_level(double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw Error(ErrorCode::invalid_level, "level u must lie in (0, 1]");
  }
}

// Index (0-based) of the order statistic equal to Q(u).
std::size_t quantile_index(const EmpiricalSample& sample, double u) {
  const auto values = sample.values();
  const double threshold = u * static_cast<double>(values.size());
  // count_above(values[j]) is nonincreasing in j; find the first j where it drops below uN.
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (static_cast<double>(sample.count_above(values[mid])) < threshold) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::invalid_argument, "sample must be nonempty");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::invalid_argument, "sample values must be finite");
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalSample::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

std::size_t EmpiricalSample::count_above(double t) const {
  return static_cast<std::size_t>(values_.end() - std::upper_bound(values_.begin(), values_.end(), t));
}

EmpiricalSample parse_sample(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t pos = 0;
    while (true) {
      pos = line.find_first_not_of(" \t\r,", pos);
      if (pos == std::string::npos) break;
      std::size_t stop = line.find_first_of(" \t\r,", pos);
      if (stop == std::string::npos) stop = line.size();
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + stop, value);
      if (ec != std::errc() || ptr != line.data() + stop || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "line " << line_no << ": not a finite number: '" << line.substr(pos, stop - pos) << "'";
        throw Error(ErrorCode::invalid_argument, msg.str());
      }
      values.push_back(value);
      pos = stop;
    }
  }
  return EmpiricalSample(std::move(values));
}

EmpiricalSample read_sample_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read sample file " + path.string());
  return parse_sample(in);
}

double quantile_q(const EmpiricalSample& sample, double u) {
  require_level(u);
  return sample.values()[quantile_index(sample, u)];
}

double cvar_integral(const EmpiricalSample& sample, double u) {
  require_level(u);
  const auto values = sample.values();
  const std::size_t n = values.size();
  const double mass = u * static_cast<double>(n);
  const std::size_t full = std::min(n, static_cast<std::size_t>(std::floor(mass)));
  const double frac = full < n ? mass - static_cast<double>(full) : 0.0;
  const double q = values[quantile_index(sample, u)];
  // Accumulate excesses over Q(u) so that the result can never fall below Q(u).
  double excess = 0.0;
  for (std::size_t i = 0; i < full; ++i) excess += values[n - 1 - i] - q;
  if (frac > 0.0) excess += frac * (values[n - 1 - full] - q);
  return std::min(q + excess / mass, sample.max());
}

double cvar_variational(const EmpiricalSample& sample, double u) {
  require_level(u);
  const auto values = sample.values();
  const std::size_t n = values.size();
  const double count = static_cast<double>(n);
  // Suffix sums give E(X - t)_+ at every sample point in O(n).
  double best = std::numeric_limits<double>::infinity();
  double suffix = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double t = values[k];
    const double tail = suffix - static_cast<double>(n - 1 - k) * t;
    best = std::min(best, t + tail / (count * u));
    suffix += values[k];
  }
  return best;
}

double cvar_q1(const EmpiricalSample& sample, double u) {
  const double integral = cvar_integral(sample, u);
  const double variational = cvar_variational(sample, u);
  if (std::fabs(integral - variational) > kCvarAgreementTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "CVaR forms disagree at u=" << u << ": integral " << integral << " vs variational "
        << variational;
    throw Error(ErrorCode::internal_inconsistency, msg.str());
  }
  return integral;
}

QInfinity q_infinity(const EmpiricalSample& sample, double u) {
  require_level(u);
  const auto values = sample.values();
  const double top = sample.max();
  const double count = static_cast<double>(values.size());
  const std::size_t at_top = values.size() - static_cast<std::size_t>(
      std::lower_bound(values.begin(), values.end(), top) - values.begin());

  constexpr double inf = std::numeric_limits<double>::infinity();
  // If P[X = max] >= u every finite t overshoots the max, so the infimum is the t -> inf limit.
  if (static_cast<double>(at_top) >= u * count) return {top, inf, false};
  if (u == 1.0) return {cvar_integral(sample, 1.0), 0.0, false};

  double min_gap = inf;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) min_gap = std::min(min_gap, values[i] - values[i - 1]);
  }
  const double spread = top - sample.min();
  const double log_nu = std::log(count * u);
  auto objective = [&](double t) {
    double s = 0.0;
    for (double x : values) s += std::exp(t * (x - top));
    return top + (std::log(s) - log_nu) / t;
  };
  const auto best = numeric::minimize_log_unimodal(objective, 1e-8 / spread, 1e3 / min_gap);
  QInfinity result{best.value, best.t, best.interior};
  // The t -> inf limit equals the max, approached from below here.
  if (top < result.value) result = {top, inf, false};
  return result;
}

QuantileTriple quantile_triple(const EmpiricalSample& sample, double u) {
  return {quantile_q(sample, u), cvar_q1(sample, u), q_infinity(sample, u).value};
}

// ---------------------------------------------------------------------------

namespace {

class VerdictBuilder {
 public:
  explicit VerdictBuilder(std::string lemma) { verdict_.lemma = std::move(lemma); }

  // Records lhs <= rhs with relative slack.
  void expect_le(double lhs, double rhs, double rel_slack) {
    const double margin = rhs - lhs;
    const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    if (verdict_.checks == 0 || margin < verdict_.worst_margin) verdict_.worst_margin = margin;
    ++verdict_.checks;
    if (margin < -rel_slack * scale) {
      ++verdict_.failures;
      verdict_.passed = false;
    }
  }

  LemmaVerdict take() { return std::move(verdict_); }

 private:
  LemmaVerdict verdict_;
};

EmpiricalSample combine(const CoupledSample& pair, double (*op)(double, double)) {
  std::vector<double> out(pair.x.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = op(pair.x[k], pair.y[k]);
  return EmpiricalSample(std::move(out));
}

}  // namespace

QuantileCounterexample stored_counterexample() {
  QuantileCounterexample c;
  c.pair = {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
  c.u = 0.4;
  const EmpiricalSample x(c.pair.x), y(c.pair.y);
  const EmpiricalSample sum = combine(c.pair, [](double a, double b) { return a + b; });
  c.q_x = quantile_q(x, c.u);
  c.q_y = quantile_q(y, c.u);
  c.q_sum = quantile_q(sum, c.u);
  c.confirmed = c.q_sum > c.q_x + c.q_y;
  return c;
}

QuantileSuiteReport quantile_lemma_suite(std::span<const CoupledSample> samples,
                                         std::span<const double> u_grid, std::size_t walk_steps) {
  if (u_grid.empty()) throw Error(ErrorCode::invalid_argument, "u grid must be nonempty");
  for (double u : u_grid) require_level(u);
  for (const auto& pair : samples) {
    if (pair.x.size() != pair.y.size() || pair.x.empty()) {
      throw Error(ErrorCode::invalid_argument, "coupled samples need equal nonzero lengths");
    }
  }

  VerdictBuilder ordering("quantile bounds: Q <= Q1 <= Qinf");
  VerdictBuilder monotone("monotonicity: X <= Y implies Q_X <= Q_Y");
  VerdictBuilder subadd_q1("subadditivity of Q1");
  VerdictBuilder subadd_qinf("subadditivity of Qinf");
  VerdictBuilder chernoff("Chernoff: P[X > Qinf(u)] <= u");
  VerdictBuilder variational("variational formulation of Q1");
  VerdictBuilder maximal("maximal inequality: Q_{S*} <= Q1_{S_n}");

  auto plus = [](double a, double b) { return a + b; };
  auto lower = [](double a, double b) { return std::min(a, b); };
  auto upper = [](double a, double b) { return std::max(a, b); };

  for (const auto& pair : samples) {
    const EmpiricalSample x(pair.x), y(pair.y);
    const EmpiricalSample sum = combine(pair, plus);
    const EmpiricalSample lo = combine(pair, lower), hi = combine(pair, upper);
    for (double u : u_grid) {
      for (const EmpiricalSample* s : {&x, &y, &sum}) {
        const double q = quantile_q(*s, u);
        const double q1_int = cvar_integral(*s, u);
        const double q1_var = cvar_variational(*s, u);
        const double qinf = q_infinity(*s, u).value;
        ordering.expect_le(q, q1_int, 0.0);
        ordering.expect_le(q1_int, qinf, 0.0);
        variational.expect_le(std::fabs(q1_int - q1_var), kCvarAgreementTolerance, 0.0);
        chernoff.expect_le(static_cast<double>(s->count_above(qinf)) / static_cast<double>(s->size()), u,
                           0.0);
      }
      monotone.expect_le(quantile_q(lo, u), quantile_q(hi, u), 0.0);
      monotone.expect_le(cvar_integral(lo, u), cvar_integral(hi, u), kOrderStatisticSlack);
      monotone.expect_le(q_infinity(lo, u).value, q_infinity(hi, u).value, kQInfinityComparisonSlack);
      subadd_q1.expect_le(cvar_integral(sum, u), cvar_integral(x, u) + cvar_integral(y, u),
                          kOrderStatisticSlack);
      subadd_qinf.expect_le(q_infinity(sum, u).value, q_infinity(x, u).value + q_infinity(y, u).value,
                            kQInfinityComparisonSlack);
    }
  }

  // Exact laws of nonnegative submartingales built from Rademacher walks.
  for (std::size_t n = 1; n <= walk_steps; ++n) {
    const std::size_t outcomes = std::size_t{1} << n;
    std::vector<double> abs_end, abs_max, sq_end, sq_max, pos_end, pos_max;
    for (std::size_t pattern = 0; pattern < outcomes; ++pattern) {
      double m = 0.0, running_abs = 0.0, running_pos = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        m += ((pattern >> i) & 1U) != 0 ? 1.0 : -1.0;
        running_abs = std::max(running_abs, std::fabs(m));
        running_pos = std::max(running_pos, std::max(m, 0.0));
      }
      abs_end.push_back(std::fabs(m));
      abs_max.push_back(running_abs);
      sq_end.push_back(m * m);
      sq_max.push_back(running_abs * running_abs);
      pos_end.push_back(std::max(m, 0.0));
      pos_max.push_back(running_pos);
    }
    const EmpiricalSample ends[] = {EmpiricalSample(abs_end), EmpiricalSample(sq_end),
                                    EmpiricalSample(pos_end)};
    const EmpiricalSample maxima[] = {EmpiricalSample(abs_max), EmpiricalSample(sq_max),
                                      EmpiricalSample(pos_max)};
    for (double u : u_grid) {
      if (u >= 1.0) continue;
      for (int k = 0; k < 3; ++k) {
        maximal.expect_le(quantile_q(maxima[k], u), cvar_integral(ends[k], u), kOrderStatisticSlack);
      }
    }
  }

  QuantileSuiteReport report;
  for (auto* builder : {&ordering, &variational, &monotone, &subadd_q1, &subadd_qinf, &chernoff, &maximal}) {
    report.verdicts.push_back(builder->take());
  }
  report.counterexample = stored_counterexample();
  report.passed = report.counterexample.confirmed &&
                  std::all_of(report.verdicts.begin(), report.verdicts.end(),
                              [](const LemmaVerdict& v) { return v.passed; });
  return report;
}

}  // namespace fuknagaev
