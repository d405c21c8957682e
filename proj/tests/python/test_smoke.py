import json
import math
import os
import subprocess

import pytest

import stylized_facts as sf

TRUTH = sf.GarchParams(0.1, 0.1, 0.8)


def test_distributions():
    assert sf.quantile("normal", 0.975) == pytest.approx(1.959963984540054, abs=1e-12)
    assert sf.cdf("chi2", 4.0, 2) == pytest.approx(1 - math.exp(-2.0), abs=1e-12)
    assert sf.quantile("t", 0.975, 4) == pytest.approx(2.7764451051977987, rel=1e-12)
    with pytest.raises(sf.DomainError):
        sf.quantile("normal", 1.5)


def test_moments_and_normality():
    s = sf.summarize([-1.0, 0.0, 1.0])
    assert s.mean == 0.0 and s.median == 0.0 and s.skewness == 0.0
    assert sf.summarize([-1.0, -1.0, 1.0, 1.0]).kurtosis == pytest.approx(1.0)
    with pytest.raises(sf.DegenerateSeriesError):
        sf.jarque_bera([2.0] * 20)
    with pytest.raises(sf.Error):
        sf.summarize([1.0])


def test_dependence_on_simulated_garch():
    r = sf.garch_simulate(TRUTH, 3746, 1)
    assert len(r) == 3746
    a = sf.acf(r, 21, "square")
    assert len(a.rho) == 21 and a.transform == "square"
    assert sf.ljung_box(r, 21, "square").p_value < 1e-10
    curve = sf.mcleod_li(r, 26)
    assert [m for m, _ in curve] == list(range(1, 27))


def test_density():
    r = sf.garch_simulate(sf.GarchParams(1.0, 0.0, 0.0), 5000, 3)
    k = sf.kde(r)
    area = sum(0.5 * (k["empirical"][i] + k["empirical"][i - 1]) * (k["grid"][i] - k["grid"][i - 1])
               for i in range(1, len(k["grid"])))
    assert abs(area - 1.0) < 0.01
    h = sf.histogram(r, 20)
    assert len(h["bin_edges"]) == 21
    theoretical, sample = sf.qq_points(r, "t", 4)
    assert len(theoretical) == len(sample) == 5000


def test_garch_fit_and_bands():
    r = sf.garch_simulate(TRUTH, 5000, 123)
    fit = sf.garch_fit(r)
    assert fit.converged
    assert fit.params.persistence() < 1.0
    assert abs(fit.params.alpha - 0.1) < 0.05
    normalized, upper = sf.volatility_bands(r, fit, 2.0)
    assert len(normalized) == len(upper) == 5000
    ll, path = sf.garch_loglik([1.0, -1.0], sf.GarchParams(1.0, 0.0, 0.0))
    assert ll == pytest.approx(-(math.log(2 * math.pi) + 1))
    assert path == [1.0, 1.0]


def test_report_roundtrip_and_determinism(tmp_path):
    prices = [100.0]
    for x in sf.garch_simulate(TRUTH, 600, 5):
        prices.append(prices[-1] * math.exp(x / 100))
    csv = tmp_path / "SIM.csv"
    lines = ["date,adj_close"]
    import datetime

    day = datetime.date(2005, 1, 3)
    for p in prices:
        while day.weekday() >= 5:
            day += datetime.timedelta(days=1)
        lines.append(f"{day.isoformat()},{p!r}")
        day += datetime.timedelta(days=1)
    csv.write_text("\n".join(lines) + "\n")

    a = sf.report_file(csv, generated_at="2000-01-01T00:00:00Z")
    b = sf.report_file(csv, generated_at="2000-01-01T00:00:00Z")
    assert a == b
    assert a["schema_version"] == sf.SCHEMA_VERSION == 1
    assert a["instrument_id"] == "SIM"
    assert len(a["log_returns"]) == 600
    assert a["garch"]["garch_fit"]["params"]["alpha"] >= 0.0

    with pytest.raises(sf.IngestError):
        sf.ingest_csv(str(tmp_path / "missing.csv"))


@pytest.mark.skipif(not os.environ.get("STYLIZED_CLI"), reason="command-line tool not built")
def test_cli_matches_bindings(tmp_path):
    cli = os.environ["STYLIZED_CLI"]
    csv = tmp_path / "sim.csv"
    subprocess.run([cli, "simulate", "--n", "400", "--seed", "4", "--out", str(csv)], check=True)
    out = subprocess.run([cli, "summary", str(csv)], check=True, capture_output=True, text=True).stdout
    doc = json.loads(out)
    dates, prices = sf.ingest_csv(str(csv))
    s = sf.summarize(sf.log_returns(prices))
    assert doc["summarize"]["n"] == s.n == 400
    assert doc["summarize"]["mean"] == pytest.approx(s.mean, rel=1e-12)
