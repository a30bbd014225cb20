#pragma once

// Data-parallel inner loops used by norm evaluation and Monte Carlo
// campaigns. Each kernel has a scalar reference and, where the target
// supports it, an AVX2 variant selected at runtime. The variants are
// bit-identical: the scalar reductions use the same four-lane association
// as the vector code, and no variant contracts multiply-adds.

#include <cstddef>
#include <span>
#include <string_view>

namespace fuknagaev::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

bool isa_available(Isa isa);

/// Best available ISA, unless the environment variable FUKNAGAEV_ISA=scalar
/// forces the reference path. Chosen once per process.
Isa active_isa();

/// Overrides the dispatch target; throws fuknagaev::Error if unavailable.
void set_active_isa(Isa isa);

/// Strided batch of `lanes` independent paths: the value of coordinate `c`
/// of increment `s` in lane `l` lives at data[(s * dim + c) * lanes + l].
struct PathBatch {
  std::span<const double> data;
  std::size_t steps = 0;
  std::size_t dim = 0;
  std::size_t lanes = 0;
};

struct KernelTable {
  double (*sum_squares)(std::span<const double>);
  double (*sum_abs_pow_int)(std::span<const double>, int);
  std::size_t (*count_greater)(std::span<const double>, double);
  /// out[l] = max over steps s of sum_c |M_{s,c,l}|^p with M the running sum.
  void (*batch_max_power_sum)(const PathBatch&, int, std::span<double>);
};

const KernelTable& table_for(Isa isa);

// Dispatching front ends.

double sum_squares(std::span<const double> x);

/// sum_i |x_i|^p. Integer p in [1, 64] runs through the kernel table;
/// other exponents use std::pow on the scalar path.
double sum_abs_pow(std::span<const double> x, double p);

std::size_t count_greater(std::span<const double> x, double threshold);

void batch_max_power_sum(const PathBatch& batch, double p, std::span<double> out);

/// Returns p as an int when it is an integer in [1, 64], else 0.
int integer_exponent(double p);

}  // namespace fuknagaev::kernels
