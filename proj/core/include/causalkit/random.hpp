#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace causalkit {

/// Splittable deterministic generator built on SplitMix64.
///
/// The whole state is one 64-bit word, so an `Rng` is a plain value that
/// can be copied, compared and sent between threads. Output depends only on
/// the seed and the sequence of calls, never on the platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() noexcept;

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  bool next_bernoulli(double p) noexcept { return next_unit() < p; }

  /// Two child generators derived from the next two outputs. Advances this
  /// generator, so a second split returns a different pair.
  std::pair<Rng, Rng> split() noexcept;

  /// Child stream keyed by `key`. Does not advance this generator; equal
  /// states and keys always yield the same stream.
  Rng derive(std::string_view key) const noexcept;

  std::uint64_t state() const noexcept { return state_; }

  friend bool operator==(const Rng&, const Rng&) = default;

private:
  std::uint64_t state_;
};

/// Finalizer of SplitMix64, exposed for hashing keys into seeds.
std::uint64_t mix64(std::uint64_t value) noexcept;

enum class DistributionKind { uniform_int, uniform, gauss, bernoulli, exponential };

std::string_view to_string(DistributionKind kind) noexcept;
DistributionKind distribution_kind_from_string(std::string_view name);

/// One exogenous noise distribution. Parameters per kind:
/// uniform_int/uniform take `a`, `b`; gauss takes `mu`, `sigma`;
/// bernoulli takes `p`; exponential takes `rate`.
class DistributionSpec {
public:
  /// Throws InvalidParams on missing, extra, or out-of-range parameters.
  DistributionSpec(DistributionKind kind, std::map<std::string, double> params);

  static DistributionSpec uniform_int(double a, double b);
  static DistributionSpec uniform(double a, double b);
  static DistributionSpec gauss(double mu, double sigma);
  static DistributionSpec bernoulli(double p);
  static DistributionSpec exponential(double rate);

  /// Parses the compact `kind:p1,p2` form, e.g. `gauss:0,1` or `bernoulli:0.3`.
  static DistributionSpec parse(std::string_view text);

  DistributionKind kind() const noexcept { return kind_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  double param(const std::string& name) const { return params_.at(name); }

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

private:
  DistributionKind kind_;
  std::map<std::string, double> params_;
};

double draw(const DistributionSpec& spec, Rng& rng);

}  // namespace causalkit
