#include "adpasmc/output.hpp"

#include "adpasmc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace adpasmc {

void write_csv_header(std::ostream& out, std::span<const std::string_view> header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, std::span<const double> row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << format_double(row[i]);
  }
  out << '\n';
}

CsvWriter::CsvWriter(const std::string& path, std::span<const std::string_view> header,
                     int decimate)
    : out_(path), width_(header.size()), decimate_(decimate) {
  if (!out_) throw std::runtime_error(path + ": cannot open for writing");
  if (decimate_ < 1) throw std::invalid_argument("decimate must be >= 1");
  write_csv_header(out_, header);
}

void CsvWriter::write(std::span<const double> row) {
  if (row.size() != width_) throw std::invalid_argument("CSV row width does not match header");
  if (offered_++ % decimate_ != 0) return;
  write_csv_row(out_, row);
  ++written_;
}

const std::array<std::string_view, kSisoColumns>& siso_columns() {
  static const std::array<std::string_view, kSisoColumns> cols = {
      "t", "x", "u", "d", "lv", "rv", "e_v_bar", "phi_v3", "zv"};
  return cols;
}

std::array<double, kSisoColumns> siso_row(const SisoRecord& r) {
  return {r.t, r.x, r.u, r.d, r.lv, r.rv, r.e_v_bar, r.phi_v3, r.zv};
}

SisoSummary summarize_siso(const std::vector<SisoRecord>& records) {
  SisoSummary s;
  s.steps = static_cast<long>(records.size());
  bool have_15 = false;
  for (const SisoRecord& r : records) {
    if (r.t >= 5.0 && std::abs(r.x) > s.max_abs_x_after_5) {
      s.max_abs_x_after_5 = std::abs(r.x);
      s.t_max_abs_x_after_5 = r.t;
    }
    s.max_lv = std::max(s.max_lv, r.lv);
    if (r.t <= 10.0) s.max_rv_before_10 = std::max(s.max_rv_before_10, r.rv);
    if (!have_15 && r.t >= 15.0 - 1e-9) {
      s.rv_at_15 = r.rv;
      have_15 = true;
    }
  }
  if (!records.empty()) s.final_x = records.back().x;
  return s;
}

KeyValueList summary_fields(const RunSummary& s) {
  const auto f = format_double;
  return {
      {"name", s.name},
      {"status", s.status},
      {"abort_reason", s.abort_reason},
      {"abort_time", f(s.abort_time)},
      {"steps", std::to_string(s.steps)},
      {"final_time", f(s.final_time)},
      {"iae", f(s.iae)},
      {"iacm", f(s.iacm)},
      {"iae_v", f(s.iae_v)},
      {"int_thrust", f(s.int_thrust)},
      {"reaching_time_s", f(s.reaching_time_s)},
      {"reaching_time_sv", f(s.reaching_time_sv)},
      {"max_e_theta_after_20", f(s.max_e_theta_after_20)},
      {"max_e_v_after_20", f(s.max_e_v_after_20)},
      {"final_k1", f(s.final_k1)},
      {"final_l", f(s.final_l)},
      {"final_r", f(s.final_r)},
      {"final_lv", f(s.final_lv)},
      {"final_rv", f(s.final_rv)},
      {"final_wc_norm", f(s.final_wc_norm)},
      {"final_wa_norm", f(s.final_wa_norm)},
  };
}

KeyValueList summary_fields(const SisoSummary& s) {
  const auto f = format_double;
  return {
      {"steps", std::to_string(s.steps)},
      {"max_abs_x_after_5", f(s.max_abs_x_after_5)},
      {"t_max_abs_x_after_5", f(s.t_max_abs_x_after_5)},
      {"max_lv", f(s.max_lv)},
      {"rv_at_15", f(s.rv_at_15)},
      {"max_rv_before_10", f(s.max_rv_before_10)},
      {"final_x", f(s.final_x)},
  };
}

void write_summary(std::ostream& out, const KeyValueList& results, const KeyValueList& config) {
  for (const auto& [k, v] : results) out << k << " = " << v << '\n';
  for (const auto& [k, v] : config) out << "config." << k << " = " << v << '\n';
}

void write_summary_file(const std::string& path, const KeyValueList& results,
                        const KeyValueList& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_summary(out, results, config);
}

}  // namespace adpasmc
