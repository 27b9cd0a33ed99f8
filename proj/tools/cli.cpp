#include "cli.hpp"

#include <termios.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "layerkey/audit.hpp"
#include "layerkey/error.hpp"

namespace layerkey::cli {
namespace {

std::string_view profile_name(Profile p) { return p == Profile::kParanoid ? "paranoid" : "standard"; }

// Restores terminal echo on scope exit, including when reading throws.
class EchoGuard {
 public:
  EchoGuard() {
    if (::isatty(STDIN_FILENO) && ::tcgetattr(STDIN_FILENO, &saved_) == 0) {
      termios quiet = saved_;
      quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
      active_ = ::tcsetattr(STDIN_FILENO, TCSAFLUSH, &quiet) == 0;
    }
  }
  ~EchoGuard() {
    if (active_) ::tcsetattr(STDIN_FILENO, TCSAFLUSH, &saved_);
  }
  EchoGuard(const EchoGuard&) = delete;
  EchoGuard& operator=(const EchoGuard&) = delete;

  [[nodiscard]] bool active() const noexcept { return active_; }

 private:
  termios saved_{};
  bool active_ = false;
};

std::string fixed1(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << v;
  return s.str();
}

}  // namespace

std::size_t resolved_count(const DeriveConfig& config) noexcept {
  if (config.count) return *config.count;
  const bool paranoid = config.profile == Profile::kParanoid;
  if (config.mode == OutputMode::kMnemonic) return paranoid ? 24 : 8;
  return paranoid ? 48 : 20;
}

std::optional<SecureString> StreamInput::read_line(std::string_view prompt, bool /*hidden*/) {
  if (prompts_ != nullptr && !prompt.empty()) *prompts_ << prompt << std::flush;
  SecureString line;
  bool any = false;
  for (int c = in_.get(); c != std::char_traits<char>::eof(); c = in_.get()) {
    any = true;
    if (c == '\n') break;
    line.push_back(static_cast<char>(c));
  }
  if (!any) return std::nullopt;
  if (!line.empty() && line.view().back() == '\r') {
    SecureString trimmed(line.view().substr(0, line.size() - 1));
    return trimmed;
  }
  return line;
}

TerminalInput::TerminalInput(std::ostream& prompts) : StreamInput(std::cin, &prompts) {}

std::optional<SecureString> TerminalInput::read_line(std::string_view prompt, bool hidden) {
  if (!hidden) return StreamInput::read_line(prompt, false);
  EchoGuard guard;
  auto line = StreamInput::read_line(prompt, true);
  if (guard.active() && prompts_ != nullptr) *prompts_ << '\n' << std::flush;
  return line;
}

int derive_flow(const DeriveConfig& config, SecretInput& input, std::ostream& out, std::ostream& err,
                unsigned threads) {
  const std::size_t count = resolved_count(config);
  const bool mnemonic = config.mode == OutputMode::kMnemonic;
  const std::size_t limit = mnemonic ? kMaxWords : kMaxPasswordLength;
  if (count < 1 || count > limit) {
    err << "error: --count must be in [1, " << limit << "] for " << (mnemonic ? "mnemonic" : "password")
        << " mode\n";
    return kExitUsage;
  }
  const bool interactive = !config.non_interactive;

  try {
    auto master_line = input.read_line(interactive ? "Master secret: " : "", true);
    if (!master_line) {
      err << "error: master secret is empty\n";
      return kExitUsage;
    }
    std::optional<MasterSecret> master;
    try {
      master.emplace(MasterSecret::from_raw(master_line->view()));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEmptyAfterNormalization) {
        err << "error: master secret is empty\n";
        return kExitUsage;
      }
      throw;
    }
    if (interactive) {
      auto confirm = input.read_line("Confirm master secret: ", true);
      if (!confirm || !(normalize(confirm->view()) == normalize(master_line->view()))) {
        err << "error: master secrets do not match\n";
        return kExitUsage;
      }
    }
    master_line->clear();

    std::vector<NormalizedText> layers;
    for (;;) {
      const std::string prompt = "Layer " + std::to_string(layers.size() + 1) + " (empty to finish): ";
      auto line = input.read_line(interactive ? std::string_view(prompt) : std::string_view(), false);
      if (!line || line->empty()) break;
      try {
        layers.push_back(normalize(line->view()));
      } catch (const Error& e) {
        // A whitespace-only line ends entry like an empty one.
        if (e.code() != ErrorCode::kEmptyAfterNormalization) throw;
        break;
      }
    }
    if (layers.empty()) {
      err << "error: at least one layer is required\n";
      return kExitUsage;
    }
    const std::size_t layer_count = layers.size();

    DerivedKey key = [&] {
      try {
        return derive_chain(*master, LayerSequence(std::move(layers)), KdfParams::of(config.profile), threads);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kKdfFailure) throw;
        throw Error(ErrorCode::kKdfFailure, e.what());
      }
    }();

    double bits = 0;
    if (mnemonic) {
      const auto phrase = generate_mnemonic(key, count);
      out << phrase.text() << '\n' << std::flush;
      bits = phrase.entropy_bits();
    } else {
      const auto password = generate_password(key, count);
      out << password.text() << '\n' << std::flush;
      bits = password.entropy_bits();
    }
    if (!config.quiet) {
      err << "entropy: " << fixed1(bits) << " bits (" << count << (mnemonic ? " words" : " characters")
          << "), layers: " << layer_count << ", profile: " << profile_name(config.profile) << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kKdfFailure) {
      err << "error: key derivation failed: " << e.what() << '\n';
      return kExitKdf;
    }
    if (e.code() == ErrorCode::kInvalidUtf8) {
      err << "error: input is not valid UTF-8\n";
      return kExitUsage;
    }
    err << "error: " << to_string(e.code()) << '\n';
    return kExitKdf;
  }
}

int estimate_flow(const analysis::AttackScenario& scenario, bool key_value, std::ostream& out, std::ostream& err) {
  try {
    const auto report = analysis::estimate(scenario);
    out << (key_value ? analysis::render_key_value(report) : analysis::render_text(report));
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int guidance_flow(std::string_view source, std::ostream& out, std::ostream& err) {
  try {
    const auto g = analysis::entropy_guidance(source);
    out << "source " << source << ": " << (g.upper_bound ? "< " : "") << fixed1(g.bits) << " bits, "
        << analysis::to_string(g.verdict) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int audit_flow(bool full, std::ostream& out, std::ostream& err) {
  audit::AuditOptions options;
  options.full = full;
  const auto s = audit::run_audit(options);

  for (const auto& c : s.oracle) {
    out << "oracle      b=" << c.bits << " n=" << c.range << " T=" << c.threshold << " rejected=" << c.rejected
        << " preimages=" << c.min_preimages << ".." << c.max_preimages << (c.passed ? "  ok" : "  FAIL") << '\n';
  }
  for (const auto& r : s.regressions) {
    out << "regression  " << r.id << (r.passed ? "  ok" : "  FAIL") << '\n';
  }
  out << "determinism runs=" << s.determinism.runs << " distinct=" << s.determinism.distinct_outputs << '\n';
  out << "uniformity  chi2=" << std::fixed << std::setprecision(1) << s.uniformity.chi2_statistic
      << " dof=" << s.uniformity.degrees_of_freedom << std::setprecision(4) << " p=" << s.uniformity.p_value
      << (s.uniformity.rejected ? "  rejected" : "  not rejected") << '\n';
  out << "control     chi2=" << std::setprecision(1) << s.negative_control.chi2_statistic
      << " n=" << s.negative_control.observations << std::setprecision(4) << " p=" << s.negative_control.p_value
      << (s.negative_control.rejected ? "  rejected" : "  not rejected") << '\n';
  out << std::defaultfloat;

  for (const auto& line : s.log) err << line << '\n';
  if (!s.passed()) {
    err << "audit failed:";
    for (auto f : s.failures) err << ' ' << audit::to_string(f);
    err << '\n';
    return kExitAudit;
  }
  out << "audit passed\n";
  return kExitOk;
}

const BenchTiming* BenchReport::find(Profile profile, std::size_t layers) const noexcept {
  for (const auto& t : timings) {
    if (t.profile == profile && t.layers == layers) return &t;
  }
  return nullptr;
}

double BenchReport::paranoid_over_standard() const noexcept {
  const auto* p = find(Profile::kParanoid, 1);
  const auto* s = find(Profile::kStandard, 1);
  if (p == nullptr || s == nullptr) return std::numeric_limits<double>::quiet_NaN();
  return p->median_ms / s->median_ms;
}

double BenchReport::layer_ratio(Profile profile) const noexcept {
  const auto* three = find(profile, 3);
  const auto* one = find(profile, 1);
  if (three == nullptr || one == nullptr) return std::numeric_limits<double>::quiet_NaN();
  return three->median_ms / one->median_ms;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

BenchReport run_bench(std::span<const Profile> profiles, std::span<const std::size_t> layer_counts,
                      std::size_t repeats, unsigned threads) {
  if (repeats < 3) throw Error(ErrorCode::kInvalidArgument, "bench needs at least 3 repeats");
  const auto master = MasterSecret::from_raw("bench-master-secret");
  BenchReport report;
  for (auto profile : profiles) {
    for (auto n : layer_counts) {
      std::vector<NormalizedText> names;
      for (std::size_t i = 0; i < n; ++i) names.push_back(normalize("bench-layer-" + std::to_string(i + 1)));
      const LayerSequence layers(std::move(names));
      BenchTiming timing{profile, n, {}, 0};
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const DerivedKey key = derive_chain(master, layers, KdfParams::of(profile), threads);
        const auto stop = std::chrono::steady_clock::now();
        timing.samples_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
      }
      timing.median_ms = median(timing.samples_ms);
      report.timings.push_back(std::move(timing));
    }
  }
  return report;
}

int bench_flow(std::span<const Profile> profiles, std::span<const std::size_t> layer_counts, std::size_t repeats,
               std::ostream& out, std::ostream& err) {
  if (repeats < 3) {
    err << "error: --repeats must be at least 3\n";
    return kExitUsage;
  }
  const auto report = run_bench(profiles, layer_counts, repeats);
  out << std::fixed << std::setprecision(1);
  for (const auto& t : report.timings) {
    out << std::left << std::setw(9) << profile_name(t.profile) << std::right << t.layers << " layer"
        << (t.layers == 1 ? " " : "s") << "  median " << std::setw(9) << t.median_ms << " ms  (" << repeats
        << " runs)\n";
  }
  out << std::setprecision(2);
  const double ps = report.paranoid_over_standard();
  if (!std::isnan(ps)) out << "paranoid/standard (1 layer): " << ps << '\n';
  for (auto p : profiles) {
    const double lr = report.layer_ratio(p);
    if (!std::isnan(lr)) out << profile_name(p) << " 3-layer/1-layer: " << lr << '\n';
  }
  out << std::defaultfloat;
  return kExitOk;
}

}  // namespace layerkey::cli
