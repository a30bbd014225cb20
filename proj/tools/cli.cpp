#include "cli.hpp"

#include <cstdint>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuknagaev/bounds.hpp"
#include "fuknagaev/error.hpp"
#include "fuknagaev/legendre.hpp"
#include "fuknagaev/quantile.hpp"
#include "fuknagaev/report.hpp"
#include "fuknagaev/verify.hpp"

namespace fuknagaev::cli {
namespace {

using report::format_human;

struct Output {
  std::string path;
  std::string format;
};

struct Options {
  double q = 4.0;
  std::optional<double> D;
  double sigma = 1.0;
  double cq = 1.0;
  std::vector<double> u;
  std::optional<double> t;
  std::optional<std::size_t> n;
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string dist = "rademacher";
  double alpha = 4.5;
  std::size_t dim = 1;
  std::optional<double> p;
  std::string sample_path;
  Output output;
};

const std::vector<double> kDefaultLevels = {0.5, 0.2, 0.1, 0.05, 0.01};
const std::vector<double> kQuantileLevels = {0.9, 0.75, 0.5, 0.25, 0.1, 0.05, 0.02, 0.01, 0.005};

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.output.path, "Write the machine-readable report to this file");
  cmd->add_option("--format", o.output.format, "Report format (csv or json; default json, or csv for *.csv)")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_q(CLI::App* cmd, Options& o) {
  cmd->add_option("--q", o.q, "Moment order q (dimensionless, q > 2)")->capture_default_str();
}

void add_D(CLI::App* cmd, Options& o) {
  cmd->add_option("--D", o.D, "Smoothness constant D (dimensionless, D >= 1; default 1 or the space's constant)");
}

void add_u(CLI::App* cmd, Options& o, const std::string& what) {
  cmd->add_option("--u", o.u, "Failure probability level(s) u in (0, 1); " + what)->delimiter(',');
}

void add_seed(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Base seed (unsigned 64-bit integer; env FUKNAGAEV_SEED)")
      ->envname("FUKNAGAEV_SEED")
      ->capture_default_str();
}

/// Emits machine output to --out, or to stdout when only --format is given.
/// Returns true when the human summary should still be printed.
template <typename Report>
bool emit(const Report& r, const Output& o, std::ostream& out) {
  if (o.path.empty() && o.format.empty()) return true;
  std::string format = o.format;
  if (format.empty()) format = o.path.size() >= 4 && o.path.ends_with(".csv") ? "csv" : "json";
  const std::string text = report::parse_format(format) == report::Format::csv ? report::to_csv(r) : report::to_json(r);
  if (o.path.empty()) {
    out << text;
    return false;
  }
  report::write_file(o.path, text);
  return true;
}

IncrementKind parse_dist(const Options& o) {
  if (o.dist == "rademacher") return RademacherScale{1.0};
  if (o.dist == "pareto") return SymmetricPareto{o.alpha};
  if (o.dist == "student-t") return StudentT{o.alpha};
  if (o.dist == "uniform") return UniformCube{1.0};
  if (o.dist == "gaussian") return Gaussian{1.0};
  throw Error(ErrorCode::invalid_argument, "unknown distribution " + o.dist);
}

int cmd_bound(const Options& o, std::ostream& out) {
  const double D = o.D.value_or(1.0);
  if (o.t && !o.u.empty()) throw Error(ErrorCode::invalid_argument, "give either --u or --t, not both");
  if (!o.t && o.u.size() != 1) throw Error(ErrorCode::invalid_argument, "bound needs exactly one --u or a --t");
  if (!(o.cq >= 0.0) || !(o.sigma >= 0.0)) throw Error(ErrorCode::invalid_argument, "sigma and cq must be nonnegative");
  BoundResult result;
  std::string label;
  if (o.n) {
    if (o.t) throw Error(ErrorCode::invalid_argument, "--t is not available with --n");
    result = independent_sum_bound({o.sigma * o.sigma, std::pow(o.cq, o.q), o.q}, *o.n, D, o.u.front());
    label = "B_n(u)";
  } else {
    MomentProfile profile;
    profile.q = o.q;
    profile.sigma_sq = o.sigma * o.sigma;
    profile.cq_to_q = std::pow(o.cq, o.q);
    result = o.t ? tail_bound(profile, D, *o.t) : confidence_bound(profile, D, o.u.front());
    label = o.t ? "P(t)" : "B(u)";
  }
  if (emit(result, o.output, out)) out << label << " = " << format_human(result.value) << '\n';
  return kExitSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const SmoothSpace space = o.p ? make_lp(o.dim, *o.p) : make_euclidean(o.dim);
  CampaignConfig config{.dist = make_distribution(parse_dist(o), space)};
  config.n = o.n.value_or(50);
  config.trials = o.trials;
  config.q = o.q;
  config.D = o.D.value_or(space.smoothness());
  config.u_grid = o.u.empty() ? kDefaultLevels : o.u;
  config.seed = o.seed;
  const VerificationReport r = verify_confidence(config);
  if (emit(r, o.output, out)) {
    out << "campaign: " << describe(config.dist) << ", n=" << config.n << ", trials=" << config.trials
        << ", seed=" << config.seed << '\n';
    out << std::left << std::setw(10) << "u" << std::setw(14) << "bound" << std::setw(10) << "exceed"
        << std::setw(14) << "rate" << std::setw(14) << "cp_upper" << "verdict\n";
    for (const auto& row : r.rows) {
      out << std::setw(10) << format_human(row.level) << std::setw(14) << format_human(row.bound) << std::setw(10)
          << row.exceed << std::setw(14) << format_human(row.rate) << std::setw(14) << format_human(row.cp_upper)
          << (row.passed ? "pass" : "fail") << '\n';
    }
  }
  return r.passed() ? kExitSuccess : kExitVerificationFailure;
}

int cmd_proofcheck(const Options& o, std::ostream& out) {
  if (o.u.size() != 1) throw Error(ErrorCode::invalid_argument, "proofcheck needs exactly one --u");
  const ProofChainReport r = proof_chain(o.q, o.D.value_or(1.0), o.sigma, o.u.front());
  if (emit(r, o.output, out)) {
    out << "x_hat=" << format_human(r.x_hat) << " L=" << format_human(r.trunc_L)
        << " alpha=" << format_human(r.alpha_qD) << " final_coefficient=" << format_human(r.final_coefficient) << '\n';
    for (const auto& s : r.steps) {
      out << "step " << s.step << "  " << std::left << std::setw(72) << s.claim;
      if (s.applicable) {
        out << std::setw(14) << format_human(s.lhs) << std::setw(14) << format_human(s.rhs)
            << (s.passed ? "pass" : "FAIL") << '\n';
      } else {
        out << "skip\n";
      }
    }
    out << (r.passed() ? "all steps pass" : "failing step " + std::to_string(*r.failing_step)) << '\n';
  }
  return r.passed() ? kExitSuccess : kExitVerificationFailure;
}

int cmd_quantile(const Options& o, std::ostream& out) {
  const EmpiricalSample sample = read_sample_file(o.sample_path);
  std::vector<report::QuantileRow> rows;
  for (double u : o.u.empty() ? kQuantileLevels : o.u) rows.push_back({u, quantile_triple(sample, u)});
  if (emit(rows, o.output, out)) {
    out << "N=" << sample.size() << '\n';
    out << std::left << std::setw(10) << "u" << std::setw(14) << "Q" << std::setw(14) << "Q1" << "Qinf\n";
    for (const auto& r : rows) {
      out << std::setw(10) << format_human(r.level) << std::setw(14) << format_human(r.triple.q) << std::setw(14)
          << format_human(r.triple.q1) << format_human(r.triple.qinf) << '\n';
    }
  }
  return kExitSuccess;
}

int cmd_mcdiarmid(const Options& o, std::ostream& out, bool simulate) {
  const std::size_t inputs = o.n.value_or(10);
  const double D = o.D.value_or(1.0);
  const HolderConstants h = holder_constants(uniform_holder_spec(inputs, 1.0, 1.0, o.q), o.q);
  const std::vector<double> levels = o.u.empty() ? std::vector<double>{0.1, 0.05, 0.01} : o.u;
  if (!simulate) {
    for (double u : levels) {
      const BoundResult b = mcdiarmid_bound(h.sigma_sq, h.cq_to_q, o.q, D, u);
      if (emit(b, o.output, out)) out << "B(" << format_human(u) << ") = " << format_human(b.value) << '\n';
    }
    return kExitSuccess;
  }
  DoobCampaignConfig config;
  config.inputs = inputs;
  config.trials = o.trials;
  config.q = o.q;
  config.D = D;
  config.sigma_sq = h.sigma_sq;
  config.cq_to_q = h.cq_to_q;
  config.u_grid = levels;
  config.seed = o.seed;
  const VerificationReport r = verify_mcdiarmid(config);
  if (emit(r, o.output, out)) {
    out << "sigma^2=" << format_human(h.sigma_sq) << " C_q^q=" << format_human(h.cq_to_q) << '\n';
    for (const auto& row : r.rows) {
      out << "u=" << format_human(row.level) << " bound=" << format_human(row.bound) << " exceed=" << row.exceed
          << " cp_upper=" << format_human(row.cp_upper) << ' ' << (row.passed ? "pass" : "fail") << '\n';
    }
  }
  return r.passed() ? kExitSuccess : kExitVerificationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuk-Nagaev concentration bounds for martingales in (2,D)-smooth spaces", "fuknagaev"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.set_config("--config", "", "INI file; keys in a [subcommand] section act as defaults for its flags");
  app.fallthrough();
  Options o;
  bool simulate = false;

  auto* bound = app.add_subcommand("bound", "Confidence threshold B(u), tail probability, or independent-sum bound");
  add_q(bound, o);
  add_D(bound, o);
  bound->add_option("--sigma", o.sigma, "Variance proxy sigma (norm units, >= 0; per increment with --n)")
      ->capture_default_str();
  bound->add_option("--cq", o.cq, "Moment bound C_q (norm units, >= 0; per increment with --n)")->capture_default_str();
  add_u(bound, o, "exactly one value");
  bound->add_option("--t", o.t, "Threshold t for the tail probability (norm units, > 0)");
  bound->add_option("--n", o.n, "Number of iid increments for the averaged bound (integer >= 1)");
  add_output(bound, o);

  auto* verify = app.add_subcommand("verify", "Monte Carlo coverage campaign for the confidence bound");
  add_q(verify, o);
  add_D(verify, o);
  add_u(verify, o, "comma separated, each in [1e-6, 0.99]; default 0.5,0.2,0.1,0.05,0.01");
  verify->add_option("--n", o.n, "Increments per path (integer >= 1; default 50)");
  verify->add_option("--trials", o.trials, "Simulated paths (integer >= 100)")->capture_default_str();
  add_seed(verify, o);
  verify->add_option("--dist", o.dist, "Increment law")
      ->check(CLI::IsMember({"rademacher", "pareto", "student-t", "uniform", "gaussian"}))
      ->capture_default_str();
  verify->add_option("--alpha", o.alpha, "Pareto tail index or Student-t degrees of freedom (> 2, and > q)")
      ->capture_default_str();
  verify->add_option("--dim", o.dim, "Dimension of the space (integer >= 1)")->capture_default_str();
  verify->add_option("--p", o.p, "Use the l^p norm with this exponent (p >= 2); default Euclidean");
  add_output(verify, o);

  auto* proofcheck = app.add_subcommand("proofcheck", "Numeric check of every step of the constant chain");
  add_q(proofcheck, o);
  add_D(proofcheck, o);
  proofcheck->add_option("--sigma", o.sigma, "Variance proxy sigma under C_q = 1 (> 0)")->capture_default_str();
  add_u(proofcheck, o, "exactly one value");
  add_output(proofcheck, o);

  auto* quantile = app.add_subcommand("quantile", "Quantile Q, CVaR Q1 and exponential quantile Qinf of a sample");
  quantile->add_option("sample", o.sample_path, "Text file of real numbers separated by whitespace or commas")
      ->required();
  add_u(quantile, o, "comma separated; default nine levels from 0.9 to 0.005");
  add_output(quantile, o);

  auto* mcdiarmid = app.add_subcommand(
      "mcdiarmid", "Bound for f(z) = sum z_i^2 over uniform(0,1) inputs via the Hoelder route");
  add_q(mcdiarmid, o);
  add_D(mcdiarmid, o);
  add_u(mcdiarmid, o, "comma separated; default 0.1,0.05,0.01");
  mcdiarmid->add_option("--n", o.n, "Number of inputs (integer >= 1; default 10)");
  mcdiarmid->add_flag("--simulate", simulate, "Check coverage on exact Doob martingale paths");
  mcdiarmid->add_option("--trials", o.trials, "Simulated paths with --simulate (integer >= 100)")
      ->capture_default_str();
  add_seed(mcdiarmid, o);
  add_output(mcdiarmid, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidationError;
  }

  try {
    if (*bound) return cmd_bound(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*proofcheck) return cmd_proofcheck(o, out);
    if (*quantile) return cmd_quantile(o, out);
    return cmd_mcdiarmid(o, out, simulate);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidationError;
  }
}

}  // namespace fuknagaev::cli
