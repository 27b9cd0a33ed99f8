#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "layerkey/analysis.hpp"
#include "layerkey/kdf.hpp"
#include "layerkey/sampler.hpp"
#include "layerkey/secure.hpp"

namespace layerkey::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitKdf = 3,
  kExitAudit = 4,
};

inline constexpr std::size_t kMaxWords = 24;
inline constexpr std::size_t kMaxPasswordLength = 64;

struct DeriveConfig {
  Profile profile = Profile::kStandard;
  OutputMode mode = OutputMode::kMnemonic;
  std::optional<std::size_t> count;
  bool non_interactive = false;
  bool quiet = false;
};

/// 8/24 words or 20/48 characters (standard/paranoid) unless set explicitly.
std::size_t resolved_count(const DeriveConfig& config) noexcept;

/// Source of secret lines. Implementations never echo hidden input.
class SecretInput {
 public:
  virtual ~SecretInput() = default;
  /// One line without its terminator; nullopt at end of input.
  virtual std::optional<SecureString> read_line(std::string_view prompt, bool hidden) = 0;
};

/// Reads lines from a stream, writing prompts (if any) to `prompts`.
class StreamInput : public SecretInput {
 public:
  StreamInput(std::istream& in, std::ostream* prompts) : in_(in), prompts_(prompts) {}
  std::optional<SecureString> read_line(std::string_view prompt, bool hidden) override;

 protected:
  std::istream& in_;
  std::ostream* prompts_;
};

/// Standard input; echo is switched off for hidden prompts when it is a terminal.
class TerminalInput : public StreamInput {
 public:
  explicit TerminalInput(std::ostream& prompts);
  std::optional<SecureString> read_line(std::string_view prompt, bool hidden) override;
};

/// Prompts for the master secret (twice when interactive) and for layers
/// until an empty line, then prints the secret on `out` and a summary on `err`.
int derive_flow(const DeriveConfig& config, SecretInput& input, std::ostream& out, std::ostream& err,
                unsigned threads = 0);

int estimate_flow(const analysis::AttackScenario& scenario, bool key_value, std::ostream& out, std::ostream& err);

/// Prints the guidance row for a secret-source label such as "eff_words:11".
int guidance_flow(std::string_view source, std::ostream& out, std::ostream& err);

int audit_flow(bool full, std::ostream& out, std::ostream& err);

struct BenchTiming {
  Profile profile = Profile::kStandard;
  std::size_t layers = 0;
  std::vector<double> samples_ms;
  double median_ms = 0;
};

struct BenchReport {
  std::vector<BenchTiming> timings;

  [[nodiscard]] const BenchTiming* find(Profile profile, std::size_t layers) const noexcept;
  /// Paranoid over Standard, single layer. NaN when either is missing.
  [[nodiscard]] double paranoid_over_standard() const noexcept;
  /// Three layers over one layer for `profile`. NaN when either is missing.
  [[nodiscard]] double layer_ratio(Profile profile) const noexcept;
};

double median(std::vector<double> values);

/// Times derive_chain on throwaway inputs for each profile and layer count.
BenchReport run_bench(std::span<const Profile> profiles, std::span<const std::size_t> layer_counts,
                      std::size_t repeats, unsigned threads = 0);

int bench_flow(std::span<const Profile> profiles, std::span<const std::size_t> layer_counts, std::size_t repeats,
               std::ostream& out, std::ostream& err);

}  // namespace layerkey::cli
