#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "layerkey/error.hpp"
#include "layerkey/kdf.hpp"
#include "layerkey/sampler.hpp"

namespace layerkey::audit {

// ---------------------------------------------------------------------------
// Regression vectors

struct RegressionVector {
  std::string_view id;
  std::string_view master;
  std::vector<std::string_view> layers;
  Profile profile = Profile::kStandard;
  OutputMode mode = OutputMode::kMnemonic;
  std::size_t count = 0;
  std::string_view expected_prefix;  // at most 40 characters
};

/// Pinned vectors; the Paranoid one is marked slow.
const std::vector<RegressionVector>& regression_vectors();
bool is_slow(const RegressionVector& v) noexcept;

struct VectorResult {
  std::string id;
  bool passed = false;
  std::string expected;
  std::string actual;  // first 40 characters of the rendered output
};

/// Full derivation plus rendering for one vector, truncated to 40 characters.
std::string render_prefix(const RegressionVector& v, unsigned threads = 0);

/// Runs the given vectors (all of them by default) and reports each.
std::vector<VectorResult> run_regressions(bool include_slow = true, unsigned threads = 0);

/// Throws VectorMismatch for the first failing result.
void require_passed(const std::vector<VectorResult>& results);

class VectorMismatch : public Error {
 public:
  explicit VectorMismatch(const VectorResult& r)
      : Error(ErrorCode::kVectorMismatch,
              "regression vector " + r.id + " mismatch: expected \"" + r.expected + "\", got \"" + r.actual + "\""),
        result_(r) {}

  [[nodiscard]] const VectorResult& result() const noexcept { return result_; }

 private:
  VectorResult result_;
};

// ---------------------------------------------------------------------------
// Determinism

struct DeterminismReport {
  std::size_t runs = 0;
  std::size_t distinct_outputs = 0;
  std::string digest_hex;  // SHA-256 of the (single) derived key
};

/// Number of distinct keys produced by `runs` derivations of one input.
/// Throws Error(kInvalidArgument) when runs < 2 and
/// Error(kNondeterminismDetected) when more than one key appears.
DeterminismReport determinism_run(std::string_view master, std::span<const std::string_view> layers,
                                  const KdfParams& params, std::size_t runs);

struct DerivationInput {
  std::string_view master;
  std::vector<std::string_view> layers;
};

/// Distinct keys across several configurations under one parameter set.
std::size_t distinct_outputs(std::span<const DerivationInput> inputs, const KdfParams& params);

// ---------------------------------------------------------------------------
// Statistical uniformity

/// Independent 32-byte keys from a BLAKE2b-512 chain over an index counter:
/// s_0 = BLAKE2b-512("layerkey audit key source"),
/// s_{i+1} = BLAKE2b-512(s_i || LE64(i)), key_i = first 32 bytes of s_{i+1}.
/// Stands in for Argon2id outputs where only key uniformity matters.
class IndexedKeySource {
 public:
  IndexedKeySource();
  DerivedKey next();

 private:
  SecretArray<64> state_;
  std::uint64_t index_ = 0;
};

enum class WordSampler {
  kRejection,     // the production sampler
  kModuloBiased,  // r mod 7776 on every 16-bit draw, no rejection
};

struct UniformityReport {
  std::size_t categories = 0;
  std::size_t observations = 0;
  double chi2_statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0;
  bool rejected = false;  // at alpha
  double alpha = 0.05;
};

/// Upper tail of the chi-squared distribution (Wilson-Hilferty).
double chi_squared_upper_tail(double statistic, std::size_t dof);

/// Pearson statistic of `counts` against the uniform distribution.
UniformityReport chi_squared_report(std::span<const std::uint64_t> counts, double alpha = 0.05);

/// Word frequencies over `sample_count` mnemonics of `words_per_sample` words
/// from IndexedKeySource keys, tested against uniform over 7776 categories.
/// Throws Error(kInsufficientSamples) below 10 expected hits per category.
UniformityReport chi_squared_uniformity(std::size_t sample_count, std::size_t words_per_sample,
                                        WordSampler sampler = WordSampler::kRejection, double alpha = 0.05);

struct RejectionObservation {
  std::uint64_t outputs = 0;
  std::uint64_t draws = 0;
  std::uint64_t bytes = 0;
  [[nodiscard]] double rejection_fraction() const noexcept {
    return draws == 0 ? 0 : static_cast<double>(draws - outputs) / static_cast<double>(draws);
  }
  [[nodiscard]] double samples_per_output() const noexcept {
    return outputs == 0 ? 0 : static_cast<double>(draws) / static_cast<double>(outputs);
  }
};

/// Generates `outputs` samples with the mnemonic or password rule, one key per
/// `outputs_per_key`, and counts keystream draws.
RejectionObservation observe_rejection(OutputMode mode, std::uint64_t outputs, std::uint64_t outputs_per_key = 64);

// ---------------------------------------------------------------------------
// Exhaustive small-scale oracle

struct OracleCase {
  unsigned bits = 0;
  std::uint32_t range = 0;
  std::uint32_t threshold = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t min_preimages = 0;
  std::uint64_t max_preimages = 0;
  bool passed = false;
};

/// Enumerates every draw for one rejection rule and checks that each output
/// has exactly floor(2^bits / range) preimages.
OracleCase enumerate_rejection(unsigned bits, std::uint32_t range);

/// (4, 6), (8, 90), (8, 256) and (16, 7776). Throws Error(kOracleMismatch).
std::vector<OracleCase> small_scale_oracle();

// ---------------------------------------------------------------------------
// Aggregate run

enum class FailureClass { kNone, kRegression, kDeterminism, kUniformity, kOracle };

std::string_view to_string(FailureClass c) noexcept;

struct AuditSummary {
  std::vector<VectorResult> regressions;
  DeterminismReport determinism;
  UniformityReport uniformity;
  UniformityReport negative_control;
  std::vector<OracleCase> oracle;
  std::vector<FailureClass> failures;
  std::vector<std::string> log;

  [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

struct AuditOptions {
  bool full = false;  // include the Paranoid regression vector
  std::size_t determinism_runs = 100;
  std::size_t chi_samples = 10000;
  std::size_t chi_words = 8;
  std::size_t control_samples = 100000;
  unsigned threads = 0;
};

/// Runs every audit class and records failures instead of throwing.
AuditSummary run_audit(const AuditOptions& options = {});

}  // namespace layerkey::audit
