# Copyright 2026 The ADLA Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""TVLA and Anderson-Darling leakage assessment."""

from ._adla import (
    CANONICAL_ALPHA,
    AdlaError,
    ad_statistic,
    assess,
    cumulants,
    derive_thresholds,
    detection_curve,
    load_trace_set,
    normal_cdf,
    normal_quantile,
    pearson_quantile,
    qq_points,
    sample_a2_infinity,
    save_trace_set,
    scenarios,
    series_sum,
    simulate,
    welch_t,
)

__all__ = [
    "CANONICAL_ALPHA",
    "AdlaError",
    "ad_statistic",
    "assess",
    "cumulants",
    "derive_thresholds",
    "detection_curve",
    "load_trace_set",
    "normal_cdf",
    "normal_quantile",
    "pearson_quantile",
    "qq_points",
    "sample_a2_infinity",
    "save_trace_set",
    "scenarios",
    "series_sum",
    "simulate",
    "welch_t",
]
