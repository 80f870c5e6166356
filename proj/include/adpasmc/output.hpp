#pragma once

#include "adpasmc/config.hpp"
#include "adpasmc/engine.hpp"
#include "adpasmc/smc_airspeed.hpp"

#include <array>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adpasmc {

/// CSV file with one header row. Every `decimate`-th row offered is written.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::span<const std::string_view> header, int decimate = 1);
  void write(std::span<const double> row);
  long rows_written() const { return written_; }

 private:
  std::ofstream out_;
  std::size_t width_;
  int decimate_;
  long offered_ = 0;
  long written_ = 0;
};

/// Same format into any stream, used for in-memory comparisons.
void write_csv_header(std::ostream& out, std::span<const std::string_view> header);
void write_csv_row(std::ostream& out, std::span<const double> row);

inline constexpr std::size_t kSisoColumns = 9;
const std::array<std::string_view, kSisoColumns>& siso_columns();
std::array<double, kSisoColumns> siso_row(const SisoRecord& r);

struct SisoSummary {
  double max_abs_x_after_5 = 0.0;
  double t_max_abs_x_after_5 = 0.0;
  double max_lv = 0.0;
  double rv_at_15 = 0.0;
  double max_rv_before_10 = 0.0;
  double final_x = 0.0;
  long steps = 0;
};

SisoSummary summarize_siso(const std::vector<SisoRecord>& records);

KeyValueList summary_fields(const RunSummary& s);
KeyValueList summary_fields(const SisoSummary& s);

/// Flat "key = value" text: results first, then the effective config under "config.".
void write_summary(std::ostream& out, const KeyValueList& results, const KeyValueList& config);
void write_summary_file(const std::string& path, const KeyValueList& results,
                        const KeyValueList& config);

}  // namespace adpasmc
