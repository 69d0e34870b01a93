#pragma once

#include <cstdint>
#include <string>

namespace partite {

enum class OutputFormat { Json, Dot, Text };

/// Cardinality caps and run parameters. Every exhaustive search checks the
/// relevant cap before enumerating and raises BoundExceeded when it would be
/// crossed.
struct Config {
  std::uint64_t maxHomSet = 100000;
  std::uint64_t maxApex = 10000;
  std::uint64_t maxProduct = 1000000;
  std::uint64_t maxColorings = std::uint64_t{1} << 22;
  std::uint64_t sampleTrials = 1000;
  std::uint64_t rngSeed = 20240601;
  unsigned threads = 0;  // 0 = hardware concurrency
  OutputFormat format = OutputFormat::Json;

  /// Throws SchemaError when a cap is zero.
  void validate() const;
  unsigned thread_count() const;
};

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

}  // namespace partite
