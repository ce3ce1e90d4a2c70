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

#include "adla/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "adla/error.hpp"

namespace adla {
namespace {

Json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "NaN";
  return v > 0 ? "Infinity" : "-Infinity";
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("expected a real number in report JSON, got " + j.dump());
}

Json optional_index(const std::optional<std::size_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<std::size_t> optional_index_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

ThresholdMethod method_from(const std::string& s) {
  if (s == "pearson_fit") return ThresholdMethod::pearson_fit;
  if (s == "monte_carlo") return ThresholdMethod::monte_carlo;
  if (s == "paper_constant") return ThresholdMethod::paper_constant;
  throw FormatError("unknown threshold method '" + s + "'");
}

PearsonType pearson_type_from(const std::string& s) {
  for (auto t : {PearsonType::normal, PearsonType::I, PearsonType::II,
                 PearsonType::III, PearsonType::IV, PearsonType::V,
                 PearsonType::VI, PearsonType::VII}) {
    if (s == to_string(t)) return t;
  }
  throw FormatError("unknown Pearson type '" + s + "'");
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json threshold_to_json(const ThresholdSpec& spec) {
  Json ledger;
  ledger["kappa"] = Json::array();
  ledger["mu"] = Json::array();
  for (double k : spec.ledger.kappa) ledger["kappa"].push_back(real_to_json(k));
  for (double m : spec.ledger.mu) ledger["mu"].push_back(real_to_json(m));
  ledger["gamma1"] = real_to_json(spec.ledger.gamma1);
  ledger["gamma2"] = real_to_json(spec.ledger.gamma2);

  Json j;
  j["alpha"] = real_to_json(spec.alpha);
  j["tau_t"] = real_to_json(spec.tau_t);
  j["tau_a"] = real_to_json(spec.tau_a);
  j["method"] = to_string(spec.method);
  j["pearson_type"] = to_string(spec.pearson_type);
  j["pearson_criterion"] = real_to_json(spec.pearson_criterion);
  j["ledger"] = std::move(ledger);
  if (spec.mc_check) {
    const auto& mc = *spec.mc_check;
    j["mc_check"] = {{"draws", mc.draws},
                     {"j_max", mc.j_max},
                     {"seed", mc.seed},
                     {"quantile", real_to_json(mc.quantile)},
                     {"discrepancy", real_to_json(mc.discrepancy)}};
  } else {
    j["mc_check"] = nullptr;
  }
  return j;
}

ThresholdSpec threshold_from_json(const Json& j) {
  try {
    ThresholdSpec spec;
    spec.alpha = real_from_json(j.at("alpha"));
    spec.tau_t = real_from_json(j.at("tau_t"));
    spec.tau_a = real_from_json(j.at("tau_a"));
    spec.method = method_from(j.at("method").get<std::string>());
    spec.pearson_type = pearson_type_from(j.at("pearson_type").get<std::string>());
    spec.pearson_criterion = real_from_json(j.at("pearson_criterion"));
    const auto& ledger = j.at("ledger");
    for (std::size_t k = 0; k < 4; ++k) {
      spec.ledger.kappa[k] = real_from_json(ledger.at("kappa").at(k));
      spec.ledger.mu[k] = real_from_json(ledger.at("mu").at(k));
    }
    spec.ledger.gamma1 = real_from_json(ledger.at("gamma1"));
    spec.ledger.gamma2 = real_from_json(ledger.at("gamma2"));
    if (j.contains("mc_check") && !j.at("mc_check").is_null()) {
      const auto& mc = j.at("mc_check");
      spec.mc_check = MonteCarloCheck{
          mc.at("draws").get<std::size_t>(), mc.at("j_max").get<std::size_t>(),
          mc.at("seed").get<std::uint64_t>(), real_from_json(mc.at("quantile")),
          real_from_json(mc.at("discrepancy"))};
    }
    return spec;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed threshold JSON: ") + e.what());
  }
}

Json report_to_json(const AssessmentReport& r,
                    std::optional<std::size_t> per_sample_cap) {
  Json j;
  j["thresholds"] = threshold_to_json(r.thresholds);
  j["n_traces_used"] = r.n_traces_used;
  j["n_samples"] = r.n_samples;
  j["max_t_norm"] = real_to_json(r.max_t_norm);
  j["argmax_t_norm"] = optional_index(r.argmax_t_norm);
  j["max_a2_norm"] = real_to_json(r.max_a2_norm);
  j["argmax_a2_norm"] = optional_index(r.argmax_a2_norm);
  j["tvla_leaks"] = r.tvla_leaks;
  j["adla_leaks"] = r.adla_leaks;
  j["degenerate_samples"] = r.degenerate_samples;
  const bool elide = per_sample_cap && r.per_sample.size() > *per_sample_cap;
  j["per_sample_elided"] = elide;
  j["per_sample"] = Json::array();
  if (!elide) {
    for (const auto& s : r.per_sample) {
      j["per_sample"].push_back({{"sample_index", s.sample_index},
                                 {"t_abs", real_to_json(s.t_abs)},
                                 {"a2", real_to_json(s.a2)},
                                 {"t_norm", real_to_json(s.t_norm)},
                                 {"a2_norm", real_to_json(s.a2_norm)},
                                 {"tvla_detect", s.tvla_detect},
                                 {"adla_detect", s.adla_detect},
                                 {"degenerate", s.degenerate}});
    }
  }
  return j;
}

AssessmentReport report_from_json(const Json& j) {
  try {
    AssessmentReport r;
    r.thresholds = threshold_from_json(j.at("thresholds"));
    r.n_traces_used = j.at("n_traces_used").get<std::size_t>();
    r.n_samples = j.at("n_samples").get<std::size_t>();
    r.max_t_norm = real_from_json(j.at("max_t_norm"));
    r.argmax_t_norm = optional_index_from(j.at("argmax_t_norm"));
    r.max_a2_norm = real_from_json(j.at("max_a2_norm"));
    r.argmax_a2_norm = optional_index_from(j.at("argmax_a2_norm"));
    r.tvla_leaks = j.at("tvla_leaks").get<std::vector<std::size_t>>();
    r.adla_leaks = j.at("adla_leaks").get<std::vector<std::size_t>>();
    r.degenerate_samples =
        j.at("degenerate_samples").get<std::vector<std::size_t>>();
    for (const auto& s : j.at("per_sample")) {
      SampleStatistics st;
      st.sample_index = s.at("sample_index").get<std::size_t>();
      st.t_abs = real_from_json(s.at("t_abs"));
      st.a2 = real_from_json(s.at("a2"));
      st.t_norm = real_from_json(s.at("t_norm"));
      st.a2_norm = real_from_json(s.at("a2_norm"));
      st.tvla_detect = s.at("tvla_detect").get<bool>();
      st.adla_detect = s.at("adla_detect").get<bool>();
      st.degenerate = s.at("degenerate").get<bool>();
      r.per_sample.push_back(st);
    }
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed report JSON: ") + e.what());
  }
}

void write_threshold_text(const ThresholdSpec& spec, std::ostream& out) {
  const auto& l = spec.ledger;
  out << "alpha          " << format_real(spec.alpha) << '\n'
      << "tau_t          " << format_real(spec.tau_t) << '\n'
      << "tau_a          " << format_real(spec.tau_a) << '\n'
      << "method         " << to_string(spec.method) << '\n'
      << "pearson_type   " << to_string(spec.pearson_type) << '\n'
      << "criterion      " << format_real(spec.pearson_criterion) << '\n';
  for (std::size_t k = 0; k < 4; ++k) {
    out << "kappa_" << k + 1 << "        " << format_real(l.kappa[k]) << '\n';
  }
  for (std::size_t k = 0; k < 4; ++k) {
    out << "mu_" << k + 1 << "           " << format_real(l.mu[k]) << '\n';
  }
  out << "gamma1         " << format_real(l.gamma1) << '\n'
      << "gamma2         " << format_real(l.gamma2) << '\n';
  if (spec.mc_check) {
    const auto& mc = *spec.mc_check;
    out << "mc_draws       " << mc.draws << '\n'
        << "mc_j_max       " << mc.j_max << '\n'
        << "mc_seed        " << mc.seed << '\n'
        << "mc_quantile    " << format_real(mc.quantile) << '\n'
        << "mc_discrepancy " << format_real(mc.discrepancy) << '\n';
  }
}

void write_stats_csv(const AssessmentReport& report, std::ostream& out) {
  out << kStatsCsvHeader << '\n';
  for (const auto& s : report.per_sample) {
    out << s.sample_index << ',' << format_real(s.t_abs) << ','
        << format_real(s.a2) << ',' << format_real(s.t_norm) << ','
        << format_real(s.a2_norm) << ',' << int{s.tvla_detect} << ','
        << int{s.adla_detect} << ',' << int{s.degenerate} << '\n';
  }
}

void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out) {
  out << "n,max_t_norm,max_a2_norm\n";
  for (const auto& p : curve) {
    out << p.n << ',' << format_real(p.max_t_norm) << ','
        << format_real(p.max_a2_norm) << '\n';
  }
}

void write_qq_csv(std::span<const QqPoint> points, std::ostream& out) {
  out << "theoretical,empirical\n";
  for (const auto& p : points) {
    out << format_real(p.theoretical) << ',' << format_real(p.empirical)
        << '\n';
  }
}

void write_stats_svg(const AssessmentReport& report, std::ostream& out) {
  constexpr double kWidth = 900.0;
  constexpr double kPanel = 240.0;
  constexpr double kMargin = 50.0;
  const std::size_t n = report.per_sample.size();
  const double height = 2.0 * kPanel + 3.0 * kMargin;

  auto panel = [&](double top, const char* title, auto value) {
    double ymax = 1.2;
    for (const auto& s : report.per_sample) {
      const double v = value(s);
      if (std::isfinite(v)) ymax = std::max(ymax, 1.05 * v);
    }
    const double plot_w = kWidth - 2.0 * kMargin;
    auto px = [&](std::size_t i) {
      return kMargin + (n > 1 ? plot_w * static_cast<double>(i) /
                                    static_cast<double>(n - 1)
                              : 0.0);
    };
    auto py = [&](double v) {
      return top + kPanel - kPanel * std::min(v, ymax) / ymax;
    };
    out << "<text x=\"" << kMargin << "\" y=\"" << top - 8
        << "\" font-size=\"14\">" << title << "</text>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << top << "\" width=\""
        << plot_w << "\" height=\"" << kPanel
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" "
           "points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      const double v = value(report.per_sample[i]);
      out << format_real(px(i)) << ',' << format_real(py(std::isfinite(v) ? v : ymax))
          << ' ';
    }
    out << "\"/>\n";
    out << "<line x1=\"" << kMargin << "\" x2=\"" << kMargin + plot_w
        << "\" y1=\"" << format_real(py(1.0)) << "\" y2=\""
        << format_real(py(1.0))
        << "\" stroke=\"firebrick\" stroke-dasharray=\"6,4\"/>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << format_real(py(1.0) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">1</text>\n";
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kWidth << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  panel(kMargin, "|t| / tau_t", [](const SampleStatistics& s) { return s.t_norm; });
  panel(2.0 * kMargin + kPanel, "A^2 / tau_A",
        [](const SampleStatistics& s) { return s.a2_norm; });
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">time sample (n = "
      << report.n_traces_used << " traces per set)</text>\n";
  out << "</svg>\n";
}

}  // namespace adla
