#include <doctest.h>

#include <sstream>
#include <string>

#include "cli.hpp"

using namespace layerkey;
using namespace layerkey::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run derive(const std::string& stdin_text, DeriveConfig config) {
  std::istringstream in(stdin_text);
  std::ostringstream prompts;
  StreamInput input(in, config.non_interactive ? nullptr : &prompts);
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = derive_flow(config, input, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

DeriveConfig piped() {
  DeriveConfig c;
  c.non_interactive = true;
  return c;
}

}  // namespace

TEST_CASE("default counts") {
  DeriveConfig c;
  CHECK(resolved_count(c) == 8);
  c.mode = OutputMode::kPassword;
  CHECK(resolved_count(c) == 20);
  c.profile = Profile::kParanoid;
  CHECK(resolved_count(c) == 48);
  c.mode = OutputMode::kMnemonic;
  CHECK(resolved_count(c) == 24);
  c.count = 3;
  CHECK(resolved_count(c) == 3);
}

TEST_CASE("piped derivation" * doctest::timeout(120)) {
  const auto r = derive("life\nout\nof\nbalance\n", piped());
  CHECK(r.code == kExitOk);
  CHECK(r.out == "eagle-huskiness-septum-defection-splatter-version-important-stumble\n");
  CHECK(r.err == "entropy: 103.4 bits (8 words), layers: 3, profile: standard\n");
}

TEST_CASE("interactive derivation matches piped and keeps prompts off stdout" * doctest::timeout(120)) {
  DeriveConfig c;
  c.mode = OutputMode::kPassword;
  c.quiet = true;
  const auto r = derive("life\nlife\nout\nof\nbalance\n\n", c);
  CHECK(r.code == kExitOk);
  CHECK(r.out == "6n=rX.k:Qs+)6e5oa-Z:\n");
  CHECK(r.err.empty());
}

TEST_CASE("usage errors") {
  auto c = piped();
  c.count = 0;
  CHECK(derive("life\nout\n", c).code == kExitUsage);
  c.count = 25;
  CHECK(derive("life\nout\n", c).code == kExitUsage);
  c.mode = OutputMode::kPassword;
  c.count = 65;
  CHECK(derive("life\nout\n", c).code == kExitUsage);

  CHECK(derive("", piped()).code == kExitUsage);
  CHECK(derive("   \nout\n", piped()).code == kExitUsage);
  const auto no_layers = derive("life\n", piped());
  CHECK(no_layers.code == kExitUsage);
  CHECK(no_layers.err.find("layer") != std::string::npos);
  CHECK(derive("life\n\xff\n", piped()).code == kExitUsage);
}

TEST_CASE("mismatched confirmation") {
  const auto r = derive("life\nlief\nout\n\n", DeriveConfig{});
  CHECK(r.code == kExitUsage);
  CHECK(r.out.empty());
}

TEST_CASE("secrets never reach the error stream") {
  const auto r = derive("hunter2-master\nsecret-layer\n", piped());
  CHECK(r.err.find("hunter2") == std::string::npos);
  CHECK(r.err.find("secret-layer") == std::string::npos);
}

TEST_CASE("CRLF input is accepted" * doctest::timeout(120)) {
  auto c = piped();
  c.count = 2;
  c.quiet = true;
  CHECK(derive("life\r\nout\r\nof\r\nbalance\r\n", c).out == "eagle-huskiness\n");
}

TEST_CASE("estimate output") {
  analysis::AttackScenario s;
  s.gpu_count = 500;
  s.coordination_overhead = 0.1;
  std::ostringstream out;
  std::ostringstream err;
  CHECK(estimate_flow(s, true, out, err) == kExitOk);
  CHECK(out.str().find("memory_bound_years=1.53e11") != std::string::npos);
  s.gpu_count = 0;
  CHECK(estimate_flow(s, true, out, err) == kExitUsage);
}

TEST_CASE("guidance output") {
  std::ostringstream out;
  std::ostringstream err;
  CHECK(guidance_flow("human_password", out, err) == kExitOk);
  CHECK(out.str() == "source human_password: < 40.0 bits, insufficient\n");
  CHECK(guidance_flow("bogus", out, err) == kExitUsage);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}
