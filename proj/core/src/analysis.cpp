#include "layerkey/analysis.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "layerkey/error.hpp"

namespace layerkey::analysis {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

double half_search_space(double entropy_bits) { return std::exp2(entropy_bits - 1.0); }

void check_bits_and_tau(double entropy_bits, double tau_seconds) {
  if (!(entropy_bits > 0) || !std::isfinite(entropy_bits)) invalid("entropy bits must be positive");
  if (!(tau_seconds > 0) || !std::isfinite(tau_seconds)) invalid("seconds per hash must be positive");
}

}  // namespace

std::string_view to_string(CostModel model) noexcept {
  switch (model) {
    case CostModel::kSingle: return "single";
    case CostModel::kCluster: return "cluster";
    case CostModel::kMemoryBound: return "memory_bound";
  }
  return "unknown";
}

std::string_view to_string(Adequacy verdict) noexcept {
  switch (verdict) {
    case Adequacy::kInsufficient: return "insufficient";
    case Adequacy::kMinimum: return "minimum";
    case Adequacy::kSecure: return "secure";
  }
  return "unknown";
}

CostEstimate brute_force_estimate(double entropy_bits, double tau_seconds) {
  check_bits_and_tau(entropy_bits, tau_seconds);
  return CostEstimate::from_seconds(half_search_space(entropy_bits) * tau_seconds, CostModel::kSingle);
}

CostEstimate cluster_estimate(const CostEstimate& base, std::uint64_t gpu_count, double overhead) {
  if (gpu_count < 1) invalid("gpu count must be at least 1");
  if (!(overhead >= 0 && overhead < 1)) invalid("coordination overhead must be in [0, 1)");
  return CostEstimate::from_seconds(base.seconds / static_cast<double>(gpu_count) * (1.0 + overhead),
                                    CostModel::kCluster);
}

std::uint64_t memory_bound_instances(std::uint64_t gpu_memory_mib, std::uint64_t memory_per_hash_mib) {
  if (gpu_memory_mib == 0 || memory_per_hash_mib == 0) invalid("memory sizes must be positive");
  return gpu_memory_mib / memory_per_hash_mib;
}

CostEstimate memory_bound_estimate(double entropy_bits, double tau_seconds, std::uint64_t total_instances) {
  check_bits_and_tau(entropy_bits, tau_seconds);
  if (total_instances < 1) invalid("at least one parallel instance is required");
  return CostEstimate::from_seconds(
      half_search_space(entropy_bits) / static_cast<double>(total_instances) * tau_seconds, CostModel::kMemoryBound);
}

RejectionStats rejection_stats(unsigned bits, std::uint64_t range) {
  if (bits < 1 || bits > 63) invalid("sample width must be 1..63 bits");
  const std::uint64_t space = std::uint64_t{1} << bits;
  if (range < 1 || range > space) invalid("range must be in [1, 2^bits]");
  const std::uint64_t threshold = (space / range) * range;
  const double space_d = static_cast<double>(space);
  return {threshold, static_cast<double>(space - threshold) / space_d, space_d / static_cast<double>(threshold)};
}

Adequacy classify_entropy(double bits) noexcept {
  if (bits >= 128) return Adequacy::kSecure;
  if (bits >= 80) return Adequacy::kMinimum;
  return Adequacy::kInsufficient;
}

EntropyGuidance entropy_guidance(SecretSource source, std::uint64_t count) {
  switch (source) {
    case SecretSource::kUrandom16Bytes: return {128, false, classify_entropy(128)};
    case SecretSource::kEffWords: {
      const double bits = static_cast<double>(count) * std::log2(7776.0);
      return {bits, false, classify_entropy(bits)};
    }
    case SecretSource::kCsprngBits: {
      const auto bits = static_cast<double>(count);
      return {bits, false, classify_entropy(bits)};
    }
    case SecretSource::kHumanPassword: return {40, true, Adequacy::kInsufficient};
  }
  throw Error(ErrorCode::kUnknownSource, "unknown secret source");
}

EntropyGuidance entropy_guidance(std::string_view label) {
  if (label == "urandom_16_bytes") return entropy_guidance(SecretSource::kUrandom16Bytes);
  if (label == "human_password") return entropy_guidance(SecretSource::kHumanPassword);
  const auto colon = label.find(':');
  if (colon != std::string_view::npos) {
    const auto name = label.substr(0, colon);
    const auto arg = label.substr(colon + 1);
    std::uint64_t count = 0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), count);
    if (ec == std::errc{} && end == arg.data() + arg.size() && !arg.empty()) {
      if (name == "eff_words") return entropy_guidance(SecretSource::kEffWords, count);
      if (name == "csprng_bits") return entropy_guidance(SecretSource::kCsprngBits, count);
    }
  }
  throw Error(ErrorCode::kUnknownSource, "unknown secret source: " + std::string(label));
}

void AttackScenario::validate() const {
  check_bits_and_tau(entropy_bits, tau_seconds);
  if (gpu_count < 1) invalid("gpu count must be at least 1");
  if (!(coordination_overhead >= 0 && coordination_overhead < 1)) invalid("coordination overhead must be in [0, 1)");
  if (gpu_memory_mib == 0 || memory_per_hash_mib == 0) invalid("memory sizes must be positive");
}

CostReport estimate(const AttackScenario& scenario) {
  scenario.validate();
  CostReport report;
  report.scenario = scenario;
  report.single = brute_force_estimate(scenario.entropy_bits, scenario.tau_seconds);
  report.cluster = cluster_estimate(report.single, scenario.gpu_count, scenario.coordination_overhead);
  report.instances_per_gpu = memory_bound_instances(scenario.gpu_memory_mib, scenario.memory_per_hash_mib);
  report.total_instances = report.instances_per_gpu * scenario.gpu_count;
  // A device too small for one instance still runs one, just slower.
  const std::uint64_t effective = report.total_instances == 0 ? 1 : report.total_instances;
  report.memory_bound = memory_bound_estimate(scenario.entropy_bits, scenario.tau_seconds, effective);
  return report;
}

std::string format_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", value);
  std::string s(buf);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  bool negative = false;
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
    negative = exponent[0] == '-';
    exponent.erase(0, 1);
  }
  const auto first = exponent.find_first_not_of('0');
  exponent = first == std::string::npos ? "0" : exponent.substr(first);
  return mantissa + "e" + (negative ? "-" : "") + exponent;
}

std::string render_text(const CostReport& r) {
  std::ostringstream out;
  const auto& s = r.scenario;
  out << "entropy " << s.entropy_bits << " bits, " << s.tau_seconds << " s per hash\n";
  out << "  single       " << format_sci(r.single.seconds) << " s  " << format_sci(r.single.years) << " years\n";
  out << "  cluster      " << format_sci(r.cluster.seconds) << " s  " << format_sci(r.cluster.years) << " years  ("
      << s.gpu_count << " GPUs, " << s.coordination_overhead * 100 << "% overhead)\n";
  out << "  memory-bound " << format_sci(r.memory_bound.seconds) << " s  " << format_sci(r.memory_bound.years)
      << " years  (" << r.instances_per_gpu << " instances/GPU, " << r.total_instances << " total)\n";
  return out.str();
}

std::string render_key_value(const CostReport& r) {
  std::ostringstream out;
  const auto& s = r.scenario;
  out << "entropy_bits=" << s.entropy_bits << '\n'
      << "tau_seconds=" << s.tau_seconds << '\n'
      << "gpus=" << s.gpu_count << '\n'
      << "overhead=" << s.coordination_overhead << '\n'
      << "single_seconds=" << format_sci(r.single.seconds) << '\n'
      << "single_years=" << format_sci(r.single.years) << '\n'
      << "cluster_seconds=" << format_sci(r.cluster.seconds) << '\n'
      << "cluster_years=" << format_sci(r.cluster.years) << '\n'
      << "instances_per_gpu=" << r.instances_per_gpu << '\n'
      << "total_instances=" << r.total_instances << '\n'
      << "memory_bound_seconds=" << format_sci(r.memory_bound.seconds) << '\n'
      << "memory_bound_years=" << format_sci(r.memory_bound.years) << '\n';
  return out.str();
}

}  // namespace layerkey::analysis
