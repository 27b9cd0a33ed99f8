#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace layerkey::analysis {

/// Julian year.
inline constexpr double kSecondsPerYear = 31'557'600.0;

enum class CostModel { kSingle, kCluster, kMemoryBound };

std::string_view to_string(CostModel model) noexcept;

struct CostEstimate {
  double seconds = 0;
  double years = 0;
  CostModel model = CostModel::kSingle;

  static CostEstimate from_seconds(double seconds, CostModel model) noexcept {
    return {seconds, seconds / kSecondsPerYear, model};
  }
};

/// Average-case exhaustive search: 2^(e-1) * tau seconds.
CostEstimate brute_force_estimate(double entropy_bits, double tau_seconds);

/// Work split over `gpu_count` devices, inflated by the coordination overhead.
CostEstimate cluster_estimate(const CostEstimate& base, std::uint64_t gpu_count, double overhead);

/// floor(gpu_memory / memory_per_hash): concurrent Argon2 instances one device holds.
std::uint64_t memory_bound_instances(std::uint64_t gpu_memory_mib, std::uint64_t memory_per_hash_mib);

/// 2^(e-1) / instances * tau seconds.
CostEstimate memory_bound_estimate(double entropy_bits, double tau_seconds, std::uint64_t total_instances);

struct RejectionStats {
  std::uint64_t threshold = 0;
  double rejection_rate = 0;
  double expected_samples = 0;
};

/// Threshold, rejection probability and mean draws per output for b-bit
/// draws over [0, n). Throws Error(kInvalidArgument) unless 1 <= n <= 2^b.
RejectionStats rejection_stats(unsigned bits, std::uint64_t range);

enum class Adequacy { kInsufficient, kMinimum, kSecure };

std::string_view to_string(Adequacy verdict) noexcept;

/// insufficient < 80 <= minimum < 128 <= secure
Adequacy classify_entropy(double bits) noexcept;

enum class SecretSource { kUrandom16Bytes, kEffWords, kCsprngBits, kHumanPassword };

struct EntropyGuidance {
  double bits = 0;
  bool upper_bound = false;  // true when `bits` is a ceiling ("< 40")
  Adequacy verdict = Adequacy::kInsufficient;
};

/// `count` is the number of words or bits where the source takes one.
EntropyGuidance entropy_guidance(SecretSource source, std::uint64_t count = 0);

/// Accepts "urandom_16_bytes", "human_password", "eff_words:K" and
/// "csprng_bits:K". Throws Error(kUnknownSource) for anything else.
EntropyGuidance entropy_guidance(std::string_view label);

struct AttackScenario {
  double entropy_bits = 80;
  double tau_seconds = 1.25;
  std::uint64_t gpu_count = 1;
  double coordination_overhead = 0;
  std::uint64_t gpu_memory_mib = 40000;
  std::uint64_t memory_per_hash_mib = 128;

  /// Throws Error(kInvalidArgument) on any out-of-range field.
  void validate() const;
};

struct CostReport {
  AttackScenario scenario;
  CostEstimate single;
  CostEstimate cluster;
  std::uint64_t instances_per_gpu = 0;
  std::uint64_t total_instances = 0;
  CostEstimate memory_bound;
};

CostReport estimate(const AttackScenario& scenario);

/// Three significant figures, compact exponent: 2.39e16, 1.00e0.
std::string format_sci(double value);

std::string render_text(const CostReport& report);
/// One key=value pair per line.
std::string render_key_value(const CostReport& report);

}  // namespace layerkey::analysis
