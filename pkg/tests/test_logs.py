import json
import logging

from components.logs.log import JSONFormatter, Logger, PlainTextFormatter


def record(context=None):
    rec = logging.LogRecord(
        "skt", logging.INFO, __file__, 7, "Fold at d=%s", ("0.03",), None
    )
    if context is not None:
        rec.context = context
    return rec


def test_plain_text_carries_the_bound_context():
    line = PlainTextFormatter(colorize=False).format(record({"branch": 3}))
    assert "INFO" in line
    assert "Fold at d=0.03" in line
    assert line.endswith("[branch=3]")
    assert "[" not in PlainTextFormatter(colorize=False).format(record())


def test_json_lines():
    entry = json.loads(JSONFormatter("skt-bifurcation").format(record({"d12": "10"})))
    assert entry["text"] == "skt-bifurcation"
    assert entry["record"]["message"] == "Fold at d=0.03"
    assert entry["record"]["context"] == {"d12": "10"}
    assert entry["record"]["level"]["name"] == "INFO"


def test_bind_merges_context():
    base = Logger("skt-test").bind(branch=1)
    child = base.bind(d12="3")
    assert child.context == {"branch": 1, "d12": "3"}
    assert base.context == {"branch": 1}
    assert child.logger is base.logger
