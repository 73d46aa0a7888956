#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace graphonlab::cli {

enum class Kind { kSimple, kBipartite, kDirected };

// Everything a command reads. Identical configs give identical output.
struct RunConfig {
  std::string command;
  Kind kind = Kind::kSimple;
  std::vector<std::filesystem::path> patterns;  // -F
  std::vector<std::filesystem::path> hosts;     // -G
  std::optional<std::filesystem::path> graphon;  // -W
  std::optional<std::filesystem::path> graphon2;
  std::optional<std::filesystem::path> reference;
  std::optional<std::filesystem::path> source;
  std::optional<std::filesystem::path> pairs;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 1;
  std::size_t samples = 0;  // 0 selects exact computation where available
  double alpha = 0.01;
  std::size_t n = 0;
  std::size_t n2 = 0;
  std::size_t k = 3;
  std::size_t max_n = 4;
  bool exact = false;
  std::vector<std::size_t> sizes;  // converge --sample-sizes
  std::vector<std::size_t> grid;   // trace-martingale
  unsigned threads = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitInvariant = 4;

int cmd_density(const RunConfig& config, std::ostream& out);
int cmd_sample(const RunConfig& config, std::ostream& out);
int cmd_converge(const RunConfig& config, std::ostream& out);
int cmd_test_exchangeable(const RunConfig& config, std::ostream& out);
int cmd_test_extreme(const RunConfig& config, std::ostream& out);
int cmd_cutdist(const RunConfig& config, std::ostream& out);
int cmd_trace_martingale(const RunConfig& config, std::ostream& out);

// Dispatches on config.command and maps library errors to exit codes,
// writing the diagnostic to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace graphonlab::cli
