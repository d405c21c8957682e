"""Stylized facts of financial return series.

Thin Python layer over the C++ core. Sequences of floats (lists or numpy
arrays) are accepted wherever a return series is expected.
"""

import json as _json

from ._core import (  # noqa: F401
    SCHEMA_VERSION,
    AcfResult,
    DegenerateSeriesError,
    DomainError,
    Error,
    EstimationError,
    GarchFit,
    GarchParams,
    IngestError,
    InsufficientDataError,
    SummaryStats,
    TestResult,
    acf,
    aggregation_scan,
    cdf,
    garch_fit,
    garch_loglik,
    garch_loglik_gradient,
    garch_simulate,
    histogram,
    ingest_csv,
    jarque_bera,
    kde,
    kolmogorov_smirnov,
    ljung_box,
    log_returns,
    mcleod_li,
    pdf,
    qq_points,
    quantile,
    report_json,
    silverman_bandwidth,
    summarize,
    survival,
    volatility_bands,
)


def report(dates, prices, **kwargs):
    """Run the full report and return it as a dict."""
    return _json.loads(report_json(list(dates), [float(p) for p in prices], **kwargs))


def report_file(path, date_col="date", price_col="adj_close", date_format="%Y-%m-%d", **kwargs):
    """Ingest a CSV price file and run the full report on it."""
    import pathlib

    dates, prices = ingest_csv(str(path), date_col, price_col, date_format)
    kwargs.setdefault("instrument_id", pathlib.Path(path).stem)
    return report(dates, prices, **kwargs)
