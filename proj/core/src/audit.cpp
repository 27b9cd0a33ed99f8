#include "layerkey/audit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "layerkey/hash.hpp"

namespace layerkey::audit {
namespace {

constexpr std::size_t kPrefixChars = 40;
constexpr std::string_view kKeySourceLabel = "layerkey audit key source";

std::string prefix_of(std::string_view text) { return std::string(text.substr(0, kPrefixChars)); }

bool same_config(const RegressionVector& a, const RegressionVector& b) {
  return a.master == b.master && a.layers == b.layers && a.profile == b.profile;
}

std::string render(const DerivedKey& key, const RegressionVector& v) {
  if (v.mode == OutputMode::kMnemonic) return prefix_of(generate_mnemonic(key, v.count).text());
  return prefix_of(generate_password(key, v.count).text());
}

DerivedKey derive(std::string_view master, std::span<const std::string_view> layers, const KdfParams& params,
                  unsigned threads = 0) {
  return derive_chain(MasterSecret::from_raw(master), LayerSequence::from_raw(layers), params, threads);
}

}  // namespace

const std::vector<RegressionVector>& regression_vectors() {
  // "cafe" + U+0301 COMBINING ACUTE ACCENT, i.e. the NFD spelling of "café".
  static const std::vector<RegressionVector> kVectors{
      {"standard-mnemonic-8", "life", {"out", "of", "balance"}, Profile::kStandard, OutputMode::kMnemonic, 8,
       "eagle-huskiness-septum-defection"},
      {"standard-password-20", "life", {"out", "of", "balance"}, Profile::kStandard, OutputMode::kPassword, 20,
       "6n=rX.k:Qs+)6e5oa-Z:"},
      {"paranoid-mnemonic-24", "life", {"out", "of", "balance"}, Profile::kParanoid, OutputMode::kMnemonic, 24,
       "vigorous-purebred-exclusion-defa"},
      {"unicode-standard-mnemonic-8", "  cafe\xcc\x81 \t", {"exactly-16-bytes", " cafe\xcc\x81"},
       Profile::kStandard, OutputMode::kMnemonic, 8, "drizzle-dehydrate-perjury-companion-upfr"},
      {"unicode-standard-password-20", "  cafe\xcc\x81 \t", {"exactly-16-bytes", " cafe\xcc\x81"},
       Profile::kStandard, OutputMode::kPassword, 20, "Hk{NjeT+Ixt<<c/nZZ3c"},
  };
  return kVectors;
}

bool is_slow(const RegressionVector& v) noexcept { return v.profile == Profile::kParanoid; }

std::string render_prefix(const RegressionVector& v, unsigned threads) {
  return render(derive(v.master, v.layers, KdfParams::of(v.profile), threads), v);
}

std::vector<VectorResult> run_regressions(bool include_slow, unsigned threads) {
  const auto& vectors = regression_vectors();
  std::vector<VectorResult> results;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    if (!include_slow && is_slow(v)) continue;
    // Vectors sharing a configuration are rendered from one derivation.
    bool done = std::any_of(results.begin(), results.end(), [&](const VectorResult& r) { return r.id == v.id; });
    if (done) continue;
    const DerivedKey key = derive(v.master, v.layers, KdfParams::of(v.profile), threads);
    for (std::size_t j = i; j < vectors.size(); ++j) {
      const auto& w = vectors[j];
      if (!same_config(v, w) || (!include_slow && is_slow(w))) continue;
      VectorResult r{std::string(w.id), false, std::string(w.expected_prefix), render(key, w)};
      r.passed = r.actual.starts_with(r.expected);
      results.push_back(std::move(r));
    }
  }
  return results;
}

void require_passed(const std::vector<VectorResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) throw VectorMismatch(r);
  }
}

DeterminismReport determinism_run(std::string_view master, std::span<const std::string_view> layers,
                                  const KdfParams& params, std::size_t runs) {
  if (runs < 2) throw Error(ErrorCode::kInvalidArgument, "determinism check needs at least 2 runs");
  std::set<std::string> digests;
  for (std::size_t i = 0; i < runs; ++i) {
    const DerivedKey key = derive(master, layers, params);
    digests.insert(hash::to_hex(hash::sha256(key.bytes())));
  }
  DeterminismReport report{runs, digests.size(), *digests.begin()};
  if (report.distinct_outputs != 1) {
    throw Error(ErrorCode::kNondeterminismDetected,
                std::to_string(report.distinct_outputs) + " distinct outputs over " + std::to_string(runs) + " runs");
  }
  return report;
}

std::size_t distinct_outputs(std::span<const DerivationInput> inputs, const KdfParams& params) {
  std::set<std::string> digests;
  for (const auto& in : inputs) {
    const DerivedKey key = derive(in.master, in.layers, params);
    digests.insert(hash::to_hex(hash::sha256(key.bytes())));
  }
  return digests.size();
}

IndexedKeySource::IndexedKeySource() {
  hash::blake2b(state_.mutable_bytes(),
                {{reinterpret_cast<const std::uint8_t*>(kKeySourceLabel.data()), kKeySourceLabel.size()}});
}

DerivedKey IndexedKeySource::next() {
  std::array<std::uint8_t, 8> counter{};
  for (int i = 0; i < 8; ++i) counter[i] = static_cast<std::uint8_t>(index_ >> (8 * i));
  ++index_;
  SecretArray<64> next_state;
  hash::blake2b(next_state.mutable_bytes(), {state_.bytes(), counter});
  state_ = std::move(next_state);
  return DerivedKey(state_.bytes().first<kKeyBytes>());
}

double chi_squared_upper_tail(double statistic, std::size_t dof) {
  const double k = static_cast<double>(dof);
  const double variance = 2.0 / (9.0 * k);
  const double z = (std::cbrt(statistic / k) - (1.0 - variance)) / std::sqrt(variance);
  return std::clamp(0.5 * std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

UniformityReport chi_squared_report(std::span<const std::uint64_t> counts, double alpha) {
  UniformityReport report;
  report.categories = counts.size();
  report.alpha = alpha;
  for (auto c : counts) report.observations += c;
  if (report.categories < 2 || report.observations == 0) {
    throw Error(ErrorCode::kInsufficientSamples, "chi-squared test needs observations over at least 2 categories");
  }
  const double expected = static_cast<double>(report.observations) / static_cast<double>(report.categories);
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    report.chi2_statistic += d * d / expected;
  }
  report.degrees_of_freedom = report.categories - 1;
  report.p_value = chi_squared_upper_tail(report.chi2_statistic, report.degrees_of_freedom);
  report.rejected = report.p_value < alpha;
  return report;
}

UniformityReport chi_squared_uniformity(std::size_t sample_count, std::size_t words_per_sample, WordSampler sampler,
                                        double alpha) {
  if (words_per_sample == 0 || sample_count * words_per_sample < 10 * kWordlistSize) {
    throw Error(ErrorCode::kInsufficientSamples, "need at least 10 expected observations per word");
  }
  const auto& list = Wordlist::load_and_verify();
  std::vector<std::uint64_t> counts(kWordlistSize, 0);
  IndexedKeySource keys;
  for (std::size_t s = 0; s < sample_count; ++s) {
    const DerivedKey key = keys.next();
    if (sampler == WordSampler::kRejection) {
      const auto phrase = generate_mnemonic(key, words_per_sample, list);
      for (auto index : phrase.indices()) ++counts[index];
    } else {
      KeystreamReader reader(key.bytes());
      for (std::size_t w = 0; w < words_per_sample; ++w) ++counts[reader.next_u16() % kWordlistSize];
    }
  }
  return chi_squared_report(counts, alpha);
}

RejectionObservation observe_rejection(OutputMode mode, std::uint64_t outputs, std::uint64_t outputs_per_key) {
  if (outputs_per_key == 0) throw Error(ErrorCode::kInvalidArgument, "outputs per key must be positive");
  const auto spec = mode == OutputMode::kMnemonic ? RejectionSpec::mnemonic() : RejectionSpec::password();
  const std::uint64_t bytes_per_draw = spec.bits / 8;
  RejectionObservation obs;
  IndexedKeySource keys;
  while (obs.outputs < outputs) {
    const DerivedKey key = keys.next();
    KeystreamReader reader(key.bytes());
    const std::uint64_t batch = std::min(outputs_per_key, outputs - obs.outputs);
    for (std::uint64_t i = 0; i < batch; ++i) sample_uniform(reader, spec);
    obs.outputs += batch;
    obs.bytes += reader.position();
    obs.draws += reader.position() / bytes_per_draw;
  }
  return obs;
}

OracleCase enumerate_rejection(unsigned bits, std::uint32_t range) {
  const auto spec = RejectionSpec::make(bits, range);
  OracleCase c{bits, range, spec.threshold};
  std::vector<std::uint64_t> preimages(range, 0);
  const std::uint64_t space = std::uint64_t{1} << bits;
  for (std::uint64_t draw = 0; draw < space; ++draw) {
    if (auto value = spec.accept(static_cast<std::uint32_t>(draw))) {
      ++preimages[*value];
      ++c.accepted;
    } else {
      ++c.rejected;
    }
  }
  const auto [lo, hi] = std::minmax_element(preimages.begin(), preimages.end());
  c.min_preimages = *lo;
  c.max_preimages = *hi;
  const std::uint64_t k = space / range;
  c.passed = c.min_preimages == k && c.max_preimages == k && c.accepted == k * range && c.threshold == k * range;
  return c;
}

std::vector<OracleCase> small_scale_oracle() {
  std::vector<OracleCase> cases{enumerate_rejection(4, 6), enumerate_rejection(8, 90), enumerate_rejection(8, 256),
                                enumerate_rejection(16, static_cast<std::uint32_t>(kWordlistSize))};
  for (const auto& c : cases) {
    if (!c.passed) {
      throw Error(ErrorCode::kOracleMismatch, "rejection oracle failed for b=" + std::to_string(c.bits) +
                                                  ", n=" + std::to_string(c.range));
    }
  }
  return cases;
}

std::string_view to_string(FailureClass c) noexcept {
  switch (c) {
    case FailureClass::kNone: return "none";
    case FailureClass::kRegression: return "regression";
    case FailureClass::kDeterminism: return "determinism";
    case FailureClass::kUniformity: return "uniformity";
    case FailureClass::kOracle: return "oracle";
  }
  return "unknown";
}

AuditSummary run_audit(const AuditOptions& options) {
  AuditSummary s;
  auto fail = [&s](FailureClass c, std::string why) {
    if (std::find(s.failures.begin(), s.failures.end(), c) == s.failures.end()) s.failures.push_back(c);
    s.log.push_back(std::string(to_string(c)) + ": " + std::move(why));
  };

  try {
    s.oracle = small_scale_oracle();
  } catch (const Error& e) {
    fail(FailureClass::kOracle, e.what());
  }

  try {
    s.regressions = run_regressions(options.full, options.threads);
    for (const auto& r : s.regressions) {
      if (!r.passed) fail(FailureClass::kRegression, "vector " + r.id + " mismatch");
    }
  } catch (const Error& e) {
    fail(FailureClass::kRegression, e.what());
  }

  try {
    static constexpr std::string_view kLayers[] = {"out", "of", "balance"};
    s.determinism = determinism_run("life", kLayers, KdfParams::test_profile(), options.determinism_runs);
  } catch (const Error& e) {
    fail(FailureClass::kDeterminism, e.what());
  }

  try {
    s.uniformity = chi_squared_uniformity(options.chi_samples, options.chi_words);
    if (s.uniformity.rejected) fail(FailureClass::kUniformity, "sampler output rejected as non-uniform");
    s.negative_control =
        chi_squared_uniformity(options.control_samples, options.chi_words, WordSampler::kModuloBiased);
    if (!s.negative_control.rejected) fail(FailureClass::kUniformity, "biased control was not detected");
  } catch (const Error& e) {
    fail(FailureClass::kUniformity, e.what());
  }

  return s;
}

}  // namespace layerkey::audit
