// Copyright 2026 The ADLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adla/assess.hpp"
#include "adla/error.hpp"
#include "adla/report.hpp"
#include "adla/simulate.hpp"
#include "adla/stats.hpp"
#include "adla/threshold.hpp"
#include "adla/trace_io.hpp"

namespace py = pybind11;

namespace {

using Matrix = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Vector = py::array_t<double, py::array::c_style | py::array::forcecast>;

adla::TraceSet to_trace_set(const Matrix& m, const std::string& label = {}) {
  if (m.ndim() != 2) throw adla::DomainError("expected a 2-D array (traces x samples)");
  const auto rows = static_cast<std::size_t>(m.shape(0));
  const auto cols = static_cast<std::size_t>(m.shape(1));
  std::vector<double> v(m.data(), m.data() + rows * cols);
  return adla::TraceSet(rows, cols, std::move(v), adla::DType::real64, label);
}

py::array_t<double> to_array(const adla::TraceSet& s) {
  py::array_t<double> out({s.n_traces(), s.n_samples()});
  std::memcpy(out.mutable_data(), s.values().data(), s.values().size() * sizeof(double));
  return out;
}

std::span<const double> as_span(const Vector& v) {
  if (v.ndim() != 1) throw adla::DomainError("expected a 1-D array");
  return {v.data(), static_cast<std::size_t>(v.shape(0))};
}

// Python sees JSON-compatible dicts; parsing goes through the json module.
py::object to_python(const adla::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

adla::Json from_python(const py::object& o) {
  return adla::Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

adla::Parallelism par(unsigned threads) { return {threads}; }

}  // namespace

PYBIND11_MODULE(_adla, m) {
  m.doc() = "TVLA and Anderson-Darling leakage assessment";

  py::register_exception<adla::Error>(m, "AdlaError", PyExc_ValueError);

  m.attr("CANONICAL_ALPHA") = adla::kCanonicalAlpha;

  m.def(
      "welch_t",
      [](const Vector& x, const Vector& y) { return adla::welch_t(as_span(x), as_span(y)).t; },
      py::arg("x"), py::arg("y"));
  m.def(
      "ad_statistic",
      [](const Vector& x, const Vector& y) { return adla::ad_statistic(as_span(x), as_span(y)).a2; },
      py::arg("x"), py::arg("y"));
  m.def("normal_cdf", &adla::normal_cdf, py::arg("z"));
  m.def("normal_quantile", &adla::normal_quantile, py::arg("p"));
  m.def(
      "qq_points",
      [](const Vector& v) {
        const auto pts = adla::qq_points(as_span(v));
        py::array_t<double> out({pts.size(), std::size_t{2}});
        auto w = out.mutable_unchecked<2>();
        for (std::size_t k = 0; k < pts.size(); ++k) {
          w(k, 0) = pts[k].theoretical;
          w(k, 1) = pts[k].empirical;
        }
        return out;
      },
      py::arg("values"), "Rows of (theoretical, empirical) normal Q-Q pairs.");

  m.def("series_sum", &adla::series_sum, py::arg("r"));
  m.def("cumulants", [] {
    const auto L = adla::cumulants();
    return py::dict(py::arg("kappa") = L.kappa, py::arg("mu") = L.mu,
                    py::arg("gamma1") = L.gamma1, py::arg("gamma2") = L.gamma2);
  });
  m.def(
      "pearson_quantile",
      [](double alpha) { return adla::pearson_quantile(adla::cumulants(), alpha); },
      py::arg("alpha"));
  m.def(
      "derive_thresholds",
      [](double alpha, std::optional<std::size_t> mc_draws, std::uint64_t seed, unsigned threads) {
        return to_python(adla::threshold_to_json(
            adla::derive_thresholds(alpha, mc_draws, seed, par(threads))));
      },
      py::arg("alpha") = adla::kCanonicalAlpha, py::arg("mc_draws") = py::none(),
      py::arg("seed") = 1, py::arg("threads") = 0);
  m.def(
      "sample_a2_infinity",
      [](std::size_t count, std::size_t j_max, std::uint64_t seed, unsigned threads) {
        const auto v = adla::sample_a2_infinity_batch(count, j_max, seed, par(threads));
        py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
        std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
        return out;
      },
      py::arg("count"), py::arg("j_max") = adla::kDefaultJMax, py::arg("seed") = 1,
      py::arg("threads") = 0);

  m.def("scenarios", [] {
    std::vector<std::string> names;
    for (const auto& s : adla::scenario_catalog()) names.push_back(s.name);
    return names;
  });
  m.def(
      "simulate",
      [](const std::string& scenario, std::optional<std::size_t> traces,
         std::optional<std::size_t> samples, std::uint64_t seed, unsigned threads) {
        auto cfg = adla::find_scenario(scenario);
        if (traces) cfg.n_traces = *traces;
        if (samples) cfg.n_samples = *samples;
        cfg.seed = seed;
        const auto pair = adla::generate_pair(cfg, par(threads));
        return py::make_tuple(to_array(pair.set_a()), to_array(pair.set_b()));
      },
      py::arg("scenario"), py::arg("traces") = py::none(), py::arg("samples") = py::none(),
      py::arg("seed") = 1, py::arg("threads") = 0,
      "Trace matrices (set_a, set_b) for a named preset.");

  m.def(
      "assess",
      [](const Matrix& a, const Matrix& b, const py::object& thresholds,
         std::optional<std::size_t> traces, unsigned threads) {
        const adla::ThresholdSpec th =
            thresholds.is_none() ? adla::derive_thresholds(adla::kCanonicalAlpha)
                                 : adla::threshold_from_json(from_python(thresholds));
        const adla::TracePair pair(to_trace_set(a), to_trace_set(b));
        const auto report =
            adla::assess_prefix(pair, traces.value_or(pair.n_traces()), th, par(threads));
        return to_python(adla::report_to_json(report));
      },
      py::arg("set_a"), py::arg("set_b"), py::arg("thresholds") = py::none(),
      py::arg("traces") = py::none(), py::arg("threads") = 0);
  m.def(
      "detection_curve",
      [](const Matrix& a, const Matrix& b, const std::vector<std::size_t>& grid,
         const py::object& thresholds, unsigned threads) {
        const adla::ThresholdSpec th =
            thresholds.is_none() ? adla::derive_thresholds(adla::kCanonicalAlpha)
                                 : adla::threshold_from_json(from_python(thresholds));
        const adla::TracePair pair(to_trace_set(a), to_trace_set(b));
        const auto curve = adla::detection_curve(pair, th, grid, par(threads));
        py::array_t<double> out({curve.size(), std::size_t{3}});
        auto w = out.mutable_unchecked<2>();
        for (std::size_t k = 0; k < curve.size(); ++k) {
          w(k, 0) = static_cast<double>(curve[k].n);
          w(k, 1) = curve[k].max_t_norm;
          w(k, 2) = curve[k].max_a2_norm;
        }
        return out;
      },
      py::arg("set_a"), py::arg("set_b"), py::arg("grid"), py::arg("thresholds") = py::none(),
      py::arg("threads") = 0, "Rows of (n, max_t_norm, max_a2_norm).");

  m.def(
      "save_trace_set",
      [](const Matrix& m, const std::string& path, const std::string& label, bool real32) {
        auto s = to_trace_set(m, label);
        if (real32) {
          std::vector<double> v(s.values().begin(), s.values().end());
          s = adla::TraceSet(s.n_traces(), s.n_samples(), std::move(v), adla::DType::real32,
                             label);
        }
        return adla::save_trace_set(s, path);
      },
      py::arg("array"), py::arg("path"), py::arg("label") = "", py::arg("real32") = false);
  m.def(
      "load_trace_set",
      [](const std::string& path) {
        const auto s = adla::load_any(path);
        return py::make_tuple(to_array(s), s.label());
      },
      py::arg("path"), "(array, label) from an ADLA1 or CSV file.");
}
