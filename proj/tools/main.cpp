#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

using layerkey::OutputMode;
using layerkey::Profile;
namespace cli = layerkey::cli;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layerkey: stateless hierarchical secret derivation"};
  app.require_subcommand(1);

  const std::map<std::string, Profile> profiles{{"standard", Profile::kStandard}, {"paranoid", Profile::kParanoid}};
  const std::map<std::string, OutputMode> modes{{"mnemonic", OutputMode::kMnemonic},
                                                {"password", OutputMode::kPassword}};

  // derive: secrets arrive on stdin or the terminal only, never as arguments.
  cli::DeriveConfig derive;
  std::size_t count = 0;
  auto* derive_cmd = app.add_subcommand("derive", "Derive a mnemonic or password from a master secret and layers");
  derive_cmd->add_option("--profile", derive.profile, "standard | paranoid")
      ->transform(CLI::CheckedTransformer(profiles, CLI::ignore_case));
  derive_cmd->add_option("--mode", derive.mode, "mnemonic | password")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  auto* count_opt = derive_cmd->add_option("--count", count, "Words (1-24) or characters (1-64)");
  derive_cmd->add_flag("--non-interactive", derive.non_interactive,
                       "Read master secret then layers, one per line, from stdin; no confirmation");
  derive_cmd->add_flag("--quiet", derive.quiet, "Print only the secret");

  auto* audit_cmd = app.add_subcommand("audit", "Run the built-in verification suite");
  bool audit_full = false;
  audit_cmd->add_flag("--full", audit_full, "Include the Paranoid regression vector");

  layerkey::analysis::AttackScenario scenario;
  bool key_value = false;
  std::string source;
  auto* estimate_cmd = app.add_subcommand("estimate", "Brute-force cost estimates");
  auto* bits_opt = estimate_cmd->add_option("--entropy-bits", scenario.entropy_bits, "Master secret entropy (bits)");
  auto* tau_opt = estimate_cmd->add_option("--tau", scenario.tau_seconds, "Seconds per Argon2id evaluation");
  estimate_cmd->add_option("--gpus", scenario.gpu_count, "Attacker devices")->capture_default_str();
  estimate_cmd->add_option("--overhead", scenario.coordination_overhead, "Coordination overhead fraction")
      ->capture_default_str();
  estimate_cmd->add_option("--gpu-mem-mib", scenario.gpu_memory_mib, "Memory per device (MiB)")
      ->capture_default_str();
  estimate_cmd->add_option("--mem-per-hash-mib", scenario.memory_per_hash_mib, "Memory per Argon2id instance (MiB)")
      ->capture_default_str();
  estimate_cmd->add_option("--source", source,
                           "Entropy guidance for urandom_16_bytes | eff_words:K | csprng_bits:K | human_password");
  estimate_cmd->add_flag("--key-value", key_value, "Machine-readable key=value output");

  std::size_t repeats = 5;
  std::vector<std::string> bench_profiles{"standard", "paranoid"};
  std::vector<std::size_t> bench_layers{1, 3};
  auto* bench_cmd = app.add_subcommand("bench", "Median derivation time per profile and layer count");
  bench_cmd->add_option("--repeats", repeats, "Runs per configuration (>= 3)")->capture_default_str();
  bench_cmd->add_option("--profile", bench_profiles, "Profiles to time")
      ->check(CLI::IsMember({"standard", "paranoid"}));
  bench_cmd->add_option("--layers", bench_layers, "Layer counts to time")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  if (derive_cmd->parsed()) {
    if (count_opt->count() > 0) derive.count = count;
    if (derive.non_interactive) {
      cli::StreamInput input(std::cin, nullptr);
      return cli::derive_flow(derive, input, std::cout, std::cerr);
    }
    cli::TerminalInput input(std::cerr);
    return cli::derive_flow(derive, input, std::cout, std::cerr);
  }

  if (audit_cmd->parsed()) return cli::audit_flow(audit_full, std::cout, std::cerr);

  if (estimate_cmd->parsed()) {
    if (!source.empty()) {
      const int rc = cli::guidance_flow(source, std::cout, std::cerr);
      if (rc != cli::kExitOk || (bits_opt->count() == 0 && tau_opt->count() == 0)) return rc;
    }
    if (bits_opt->count() == 0 || tau_opt->count() == 0) {
      std::cerr << "error: --entropy-bits and --tau are required\n";
      return cli::kExitUsage;
    }
    return cli::estimate_flow(scenario, key_value, std::cout, std::cerr);
  }

  if (bench_cmd->parsed()) {
    std::vector<Profile> selected;
    for (const auto& p : bench_profiles) selected.push_back(profiles.at(p));
    return cli::bench_flow(selected, bench_layers, repeats, std::cout, std::cerr);
  }
  return cli::kExitUsage;
}
