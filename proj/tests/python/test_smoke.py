# SPDX-License-Identifier: Apache-2.0
#
# pnmimo: massive MIMO downlink simulation under oscillator phase noise
# Copyright (C) 2026 The pnmimo authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import csv
import io
import math
import os
from pathlib import Path

import pytest

import pnmimo


def reference():
    c = pnmimo.SystemConfig()
    c.M, c.K, c.q0, c.snr_db = 50, 10, 0.9, 10.0
    c.snr_reference = pnmimo.SnrReference.total
    return c


def test_stieltjes_closed_form():
    assert pnmimo.stieltjes_mp(1.0, 1.0) == pytest.approx((math.sqrt(5) - 1) / 2, rel=1e-14)
    with pytest.raises(pnmimo.DomainError):
        pnmimo.stieltjes_mp(-1.0, 1.0)


def test_zf_reference_value():
    c = reference()
    c.sigma_w2 = 0.1
    assert pnmimo.sinr_zf(c).sinr == pytest.approx(18.947368421052632, rel=1e-10)


def test_precoder_ordering_and_alpha():
    c = reference()
    rzf = pnmimo.predict(c, pnmimo.PrecoderKind.rzf)
    assert rzf.sinr >= pnmimo.sinr_zf(c).sinr
    assert rzf.sinr >= pnmimo.sinr_mf(c).sinr
    assert rzf.alpha == pytest.approx(pnmimo.optimal_alpha(c))


def test_tpn_second_moment_limits():
    assert pnmimo.t_pn_second_moment(1, 10, 0.01) == pytest.approx(1.0)
    assert pnmimo.t_pn_second_moment(1000, 10, 0.0) == pytest.approx(1.0)


def test_rates():
    r = pnmimo.rate_report(10.0, 10, 0.01, 0.01, 1)
    assert r.rate_awgn_bound == pytest.approx(math.log2(11.0))
    assert r.rate_min <= r.rate_awgn_bound
    assert r.delta_pn == 1


def test_empirical_sinr_is_seeded():
    c = reference()
    c.n_realizations = 50
    a = pnmimo.empirical_sinr(c, pnmimo.PrecoderKind.zf)
    b = pnmimo.empirical_sinr(c, pnmimo.PrecoderKind.zf)
    assert a.sinr == b.sinr
    assert a.n_realizations == 50


def test_bad_config_raises():
    c = reference()
    c.M_osc = 3
    with pytest.raises(pnmimo.ConfigError):
        c.validate()


def test_presets_and_config_runs():
    names = [n for n, _ in pnmimo.list_presets()]
    assert "fig2" in names
    text = (Path(os.environ.get("PNMIMO_TEST_DATA", Path(__file__).parents[1] / "data")) / "example.cfg").read_text()
    one = pnmimo.run_config(text, realizations=20, parallelism=1)
    four = pnmimo.run_config(text, realizations=20, parallelism=4)
    assert one == four
    rows = list(csv.DictReader(line for line in io.StringIO(one) if not line.startswith("#")))
    assert len(rows) == 3 * (4 + 4)
    assert {r["precoder"] for r in rows} == {"rzf", "zf", "mf"}
