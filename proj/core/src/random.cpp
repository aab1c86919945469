#include "causalkit/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <vector>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t fnv1a(std::string_view key) noexcept {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : key) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

const std::vector<std::string>& parameter_names(DistributionKind kind) {
  static const std::vector<std::string> interval{"a", "b"};
  static const std::vector<std::string> normal{"mu", "sigma"};
  static const std::vector<std::string> coin{"p"};
  static const std::vector<std::string> rate{"rate"};
  switch (kind) {
    case DistributionKind::uniform_int:
    case DistributionKind::uniform:
      return interval;
    case DistributionKind::gauss:
      return normal;
    case DistributionKind::bernoulli:
      return coin;
    case DistributionKind::exponential:
      return rate;
  }
  return interval;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() noexcept {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double Rng::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t bound) noexcept {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    const std::uint64_t value = next_u64();
    if (value >= limit) return value % bound;
  }
}

std::pair<Rng, Rng> Rng::split() noexcept {
  const std::uint64_t first = next_u64();
  const std::uint64_t second = next_u64();
  return {Rng(mix64(first ^ 0x5851F42D4C957F2DULL)), Rng(mix64(second ^ 0x14057B7EF767814FULL))};
}

Rng Rng::derive(std::string_view key) const noexcept {
  return Rng(mix64(state_ ^ mix64(fnv1a(key) + kGoldenGamma)));
}

std::string_view to_string(DistributionKind kind) noexcept {
  switch (kind) {
    case DistributionKind::uniform_int:
      return "uniform_int";
    case DistributionKind::uniform:
      return "uniform";
    case DistributionKind::gauss:
      return "gauss";
    case DistributionKind::bernoulli:
      return "bernoulli";
    case DistributionKind::exponential:
      return "exponential";
  }
  return "unknown";
}

DistributionKind distribution_kind_from_string(std::string_view name) {
  for (auto kind : {DistributionKind::uniform_int, DistributionKind::uniform, DistributionKind::gauss,
                    DistributionKind::bernoulli, DistributionKind::exponential}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidParams("unknown distribution kind '" + std::string(name) + "'");
}

DistributionSpec::DistributionSpec(DistributionKind kind, std::map<std::string, double> params)
    : kind_(kind), params_(std::move(params)) {
  const auto& names = parameter_names(kind_);
  const std::string kind_name(to_string(kind_));
  for (const auto& name : names) {
    auto it = params_.find(name);
    if (it == params_.end()) throw InvalidParams(kind_name + " requires parameter '" + name + "'");
    if (!std::isfinite(it->second)) throw InvalidParams(kind_name + " parameter '" + name + "' must be finite");
  }
  if (params_.size() != names.size()) {
    for (const auto& [name, value] : params_) {
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw InvalidParams(kind_name + " does not take parameter '" + name + "'");
    }
  }
  switch (kind_) {
    case DistributionKind::uniform_int:
      if (params_["a"] != std::floor(params_["a"]) || params_["b"] != std::floor(params_["b"]))
        throw InvalidParams("uniform_int bounds must be integers");
      [[fallthrough]];
    case DistributionKind::uniform:
      if (!(params_["a"] <= params_["b"])) throw InvalidParams(kind_name + " requires a <= b");
      break;
    case DistributionKind::gauss:
      if (!(params_["sigma"] > 0)) throw InvalidParams("gauss requires sigma > 0");
      break;
    case DistributionKind::bernoulli:
      if (!(params_["p"] >= 0 && params_["p"] <= 1)) throw InvalidParams("bernoulli requires 0 <= p <= 1");
      break;
    case DistributionKind::exponential:
      if (!(params_["rate"] > 0)) throw InvalidParams("exponential requires rate > 0");
      break;
  }
}

DistributionSpec DistributionSpec::uniform_int(double a, double b) {
  return {DistributionKind::uniform_int, {{"a", a}, {"b", b}}};
}
DistributionSpec DistributionSpec::uniform(double a, double b) {
  return {DistributionKind::uniform, {{"a", a}, {"b", b}}};
}
DistributionSpec DistributionSpec::gauss(double mu, double sigma) {
  return {DistributionKind::gauss, {{"mu", mu}, {"sigma", sigma}}};
}
DistributionSpec DistributionSpec::bernoulli(double p) { return {DistributionKind::bernoulli, {{"p", p}}}; }
DistributionSpec DistributionSpec::exponential(double rate) {
  return {DistributionKind::exponential, {{"rate", rate}}};
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = distribution_kind_from_string(text.substr(0, colon));
  std::vector<double> values;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      const auto token = rest.substr(0, comma);
      double value = 0;
      const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || end != token.data() + token.size() || token.empty())
        throw InvalidParams("invalid distribution parameter '" + std::string(token) + "'");
      values.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  const auto& names = parameter_names(kind);
  if (values.size() != names.size())
    throw InvalidParams(std::string(to_string(kind)) + " takes " + std::to_string(names.size()) + " parameter(s)");
  std::map<std::string, double> params;
  for (std::size_t i = 0; i < names.size(); ++i) params[names[i]] = values[i];
  return {kind, std::move(params)};
}

double draw(const DistributionSpec& spec, Rng& rng) {
  const auto& p = spec.params();
  switch (spec.kind()) {
    case DistributionKind::uniform_int: {
      const double a = p.at("a");
      const double b = p.at("b");
      const auto width = static_cast<std::uint64_t>(b - a) + 1;
      return a + static_cast<double>(rng.next_below(width));
    }
    case DistributionKind::uniform: {
      const double a = p.at("a");
      const double b = p.at("b");
      if (a == b) return a;
      return a + (b - a) * rng.next_unit();
    }
    case DistributionKind::gauss: {
      // Marsaglia polar method; the second variate is discarded so each draw
      // consumes a self-contained chunk of the stream.
      double u = 0;
      double v = 0;
      double s = 0;
      do {
        u = 2.0 * rng.next_unit() - 1.0;
        v = 2.0 * rng.next_unit() - 1.0;
        s = u * u + v * v;
      } while (s >= 1.0 || s == 0.0);
      return p.at("mu") + p.at("sigma") * u * std::sqrt(-2.0 * std::log(s) / s);
    }
    case DistributionKind::bernoulli:
      return rng.next_bernoulli(p.at("p")) ? 1.0 : 0.0;
    case DistributionKind::exponential:
      return -std::log1p(-rng.next_unit()) / p.at("rate");
  }
  return 0.0;
}

}  // namespace causalkit
