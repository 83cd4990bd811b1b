#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace polytope::cli {

/// A subcommand, the options that must be set by flag or config, and its
/// action. `run` returns the process exit status.
struct Command {
  CLI::App* app = nullptr;
  std::vector<CLI::Option*> required;
  std::function<int()> run;
};

/// Exit status when a checked invariant fails.
inline constexpr int kInvariantViolated = 1;

void add_codec_commands(CLI::App& app, std::vector<Command>& commands);
void add_dss_commands(CLI::App& app, std::vector<Command>& commands);

/// Stream keyed by (seed, tag, words...), independent across keys.
std::mt19937_64 keyed_rng(std::uint64_t seed, std::uint64_t tag, std::initializer_list<std::uint64_t> words = {});

}  // namespace polytope::cli
