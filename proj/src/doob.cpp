#include <cmath>

#include "fuknagaev/error.hpp"
#include "fuknagaev/stochastic.hpp"

namespace fuknagaev {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct CoordinateMoments {
  double mean;
  double second;
};

// Per-coordinate E Z_c and E Z_c^2 (identical across coordinates for every law here).
CoordinateMoments coordinate_moments(const InputLaw& law) {
  return std::visit(
      overloaded{
          [](const UniformBox& box) {
            return CoordinateMoments{0.5 * (box.lo + box.hi),
                                     (box.lo * box.lo + box.lo * box.hi + box.hi * box.hi) / 3.0};
          },
          [](const IncrementDistribution& dist) {
            const double d = static_cast<double>(dist.space.dimension());
            const bool euclidean_like =
                dist.space.dimension() == 1 || dist.space.norm_kind() == NormKind::euclidean;
            const double second = std::visit(
                overloaded{
                    [](const RademacherScale& k) { return k.scale * k.scale; },
                    [](const UniformCube& k) { return k.half_width * k.half_width / 3.0; },
                    [](const Gaussian& k) { return k.scale * k.scale; },
                    [](const StudentT& k) { return k.dof / (k.dof - 2.0); },
                    [&](const SymmetricPareto& k) {
                      if (!euclidean_like) {
                        throw Error(ErrorCode::unsupported_function,
                                    "coordinate second moment of the l^p Pareto law has no closed form");
                      }
                      return k.alpha / (k.alpha - 2.0) / d;
                    },
                },
                dist.kind);
            return CoordinateMoments{0.0, second};
          },
      },
      law);
}

Vector term_value(const SeparableTerm& term, std::span<const double> z, std::size_t target_dim) {
  switch (term.kind) {
    case TermKind::identity: return Vector(z.begin(), z.end());
    case TermKind::square: {
      Vector out(z.size());
      for (std::size_t c = 0; c < z.size(); ++c) out[c] = z[c] * z[c];
      return out;
    }
    case TermKind::constant: return term.constant.empty() ? Vector(target_dim, 0.0) : term.constant;
  }
  return {};
}

Vector term_mean(const SeparableTerm& term, const InputLaw& law, std::size_t target_dim) {
  switch (term.kind) {
    case TermKind::identity: return Vector(target_dim, coordinate_moments(law).mean);
    case TermKind::square: return Vector(target_dim, coordinate_moments(law).second);
    case TermKind::constant: return term.constant.empty() ? Vector(target_dim, 0.0) : term.constant;
  }
  return {};
}

}  // namespace

std::size_t input_dimension(const InputLaw& law) {
  return std::visit(overloaded{[](const UniformBox& b) { return b.dim; },
                               [](const IncrementDistribution& d) { return d.space.dimension(); }},
                    law);
}

void draw_input(const InputLaw& law, Engine& engine, std::span<double> out) {
  std::visit(overloaded{
                 [&](const UniformBox& b) {
                   for (double& x : out) x = b.lo + (b.hi - b.lo) * uniform_open01(engine);
                 },
                 [&](const IncrementDistribution& d) { draw_increment(d, engine, out); },
             },
             law);
}

Vector SeparableFunction::evaluate(std::span<const Vector> z) const {
  if (z.size() != terms.size()) {
    throw Error(ErrorCode::invalid_argument, "argument count does not match the number of terms");
  }
  Vector out(target.dimension(), 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Vector g = term_value(terms[i], z[i], target.dimension());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += g[c];
  }
  return out;
}

MartingalePath doob_martingale(const FunctionSpec& f, std::span<const InputLaw> inputs,
                               std::span<const Vector> realization) {
  const auto* separable = std::get_if<SeparableFunction>(&f);
  if (separable == nullptr) {
    throw Error(ErrorCode::unsupported_function,
                "exact Doob paths require a coordinate-separable function");
  }
  const std::size_t n = separable->terms.size();
  if (inputs.size() != n || realization.size() != n || n == 0) {
    throw Error(ErrorCode::invalid_argument,
                "terms, input laws and realization must have the same nonzero length");
  }
  const SmoothSpace& target = separable->target;
  const std::size_t d = target.dimension();

  DifferenceSequence diffs{target, {}};
  diffs.increments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& term = separable->terms[i];
    if (term.kind != TermKind::constant && input_dimension(inputs[i]) != d) {
      throw Error(ErrorCode::invalid_argument, "input dimension differs from the target dimension");
    }
    if (term.kind == TermKind::constant && !term.constant.empty() && term.constant.size() != d) {
      throw Error(ErrorCode::invalid_argument, "constant term has the wrong dimension");
    }
    if (realization[i].size() != input_dimension(inputs[i])) {
      throw Error(ErrorCode::invalid_argument, "realization has the wrong dimension");
    }
    // Separability makes the increment depend on Z_i alone: g_i(z_i) - E g_i(Z_i).
    Vector xi = term_value(term, realization[i], d);
    const Vector mean = term_mean(term, inputs[i], d);
    for (std::size_t c = 0; c < d; ++c) xi[c] -= mean[c];
    diffs.increments.push_back(std::move(xi));
  }
  return build_martingale(diffs);
}

}  // namespace fuknagaev
