// histogram_io.hpp
// CSV and JSON serialization of convergence histograms.
//
// CSV layout:
//   # key=value            one line per config entry, then terminal_<label>
//                          summaries for backward runs
//   iterations,count
//   <it>,<count>           ascending iteration order
//   -1,<non_converged>     summary row
//
// The JSON mirror carries the same content with a fixed key order. Runtime
// is never written so identical runs give identical bytes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lattes/experiments.hpp"

namespace lattes {

inline constexpr std::int64_t kNonConvergedSentinel = -1;

struct HistogramTable {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
};

// Header = config echo (+ terminal summaries); rows sorted by iteration count.
HistogramTable histogram_to_table(const ConvergenceHistogram& h);

void write_csv(std::ostream& os, const ConvergenceHistogram& h);
std::string to_json(const ConvergenceHistogram& h);

enum class OutputFormat { csv, json };

// Throws std::runtime_error if the file cannot be written.
void write_histogram_file(const std::string& path, const ConvergenceHistogram& h, OutputFormat format);

}  // namespace lattes
