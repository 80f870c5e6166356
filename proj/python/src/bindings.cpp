#include "adpasmc/config.hpp"
#include "adpasmc/engine.hpp"
#include "adpasmc/output.hpp"
#include "adpasmc/selfcheck.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace adpasmc;

namespace {

template <std::size_t N>
py::array_t<double> to_array(const std::vector<std::array<double, N>>& rows) {
  py::array_t<double> out({rows.size(), N});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < N; ++j) view(i, j) = rows[i][j];
  return out;
}

template <std::size_t N>
std::vector<std::string> names(const std::array<std::string_view, N>& cols) {
  return {cols.begin(), cols.end()};
}

py::dict to_dict(const KeyValueList& kv) {
  py::dict d;
  for (const auto& [k, v] : kv) d[py::str(k)] = v;
  return d;
}

py::tuple run(const std::string& path, const std::vector<std::string>& overrides, int decimate) {
  if (decimate < 1) throw py::value_error("decimate must be >= 1");
  const ScenarioConfig cfg = load_scenario(path, overrides);
  std::vector<std::array<double, kRecordColumns>> rows;
  RunSummary summary;
  {
    py::gil_scoped_release release;
    long k = 0;
    summary = run_scenario(cfg, [&](const StepRecord& r) {
      if (k++ % decimate == 0) rows.push_back(r.row());
    });
  }
  return py::make_tuple(to_array(rows), to_dict(summary_fields(summary)), to_dict(describe(cfg)));
}

py::tuple siso_demo(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  const SisoDemoConfig cfg = load_siso_demo(path.value_or(""), overrides);
  std::vector<SisoRecord> records;
  {
    py::gil_scoped_release release;
    records = run_siso_demo(cfg.params, cfg.options);
  }
  std::vector<std::array<double, kSisoColumns>> rows;
  rows.reserve(records.size());
  for (const SisoRecord& r : records) rows.push_back(siso_row(r));
  return py::make_tuple(to_array(rows), to_dict(summary_fields(summarize_siso(records))),
                        to_dict(describe(cfg)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-loop UAV attitude/airspeed simulation core";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("columns", [] { return names(StepRecord::columns()); }, "Scenario CSV column order.");
  m.def("siso_columns", [] { return names(siso_columns()); }, "Scalar demo CSV column order.");
  m.def("scenario_keys", &scenario_keys, "Every accepted scenario config key.");
  m.def("describe_scenario",
        [](const std::string& path, const std::vector<std::string>& overrides) {
          return to_dict(describe(load_scenario(path, overrides)));
        },
        py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
        "Effective config values after validation.");
  m.def("run", &run, py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
        py::arg("decimate") = 1,
        "Run a scenario. Returns (records[n, columns], summary dict, config dict).");
  m.def("siso_demo", &siso_demo, py::arg("path") = std::nullopt,
        py::arg("overrides") = std::vector<std::string>{},
        "Run the scalar demo. Returns (records[n, siso_columns], summary dict, config dict).");
  m.def("selftest",
        [](std::uint64_t seed) {
          py::list out;
          for (const CheckResult& c : run_property_checks(seed))
            out.append(py::make_tuple(c.name, c.passed, c.worst, c.tolerance));
          return out;
        },
        py::arg("seed") = 1, "Algebraic property checks as (name, passed, worst, tolerance).");
}
