#include "lattes/histogram_io.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace lattes {

HistogramTable histogram_to_table(const ConvergenceHistogram& h) {
  HistogramTable t;
  t.header = h.config;
  for (const auto& [label, c] : h.terminal_counts) t.header.emplace_back("terminal_" + label, std::to_string(c));
  t.rows.assign(h.counts.begin(), h.counts.end());
  return t;
}

void write_csv(std::ostream& os, const ConvergenceHistogram& h) {
  const HistogramTable t = histogram_to_table(h);
  for (const auto& [key, value] : t.header) os << "# " << key << '=' << value << '\n';
  os << "iterations,count\n";
  for (const auto& [it, c] : t.rows) os << it << ',' << c << '\n';
  os << kNonConvergedSentinel << ',' << h.non_converged << '\n';
}

std::string to_json(const ConvergenceHistogram& h) {
  const HistogramTable t = histogram_to_table(h);
  nlohmann::ordered_json j;
  nlohmann::ordered_json header = nlohmann::ordered_json::object();
  for (const auto& [key, value] : t.header) header[key] = value;
  j["header"] = std::move(header);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [it, c] : t.rows) rows.push_back({{"iterations", it}, {"count", c}});
  j["rows"] = std::move(rows);
  j["non_converged"] = {{"iterations", kNonConvergedSentinel}, {"count", h.non_converged}};
  return j.dump(2) + "\n";
}

void write_histogram_file(const std::string& path, const ConvergenceHistogram& h, OutputFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  if (format == OutputFormat::csv) {
    write_csv(out, h);
  } else {
    out << to_json(h);
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace lattes
