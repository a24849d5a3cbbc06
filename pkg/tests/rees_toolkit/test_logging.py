import json
import logging
from io import StringIO

from rees_toolkit.shared.logging import JsonFormatter, configure_logging, get_logger, log_event


def _capture(logger: logging.Logger) -> StringIO:
    stream = StringIO()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(JsonFormatter())
    logging.getLogger("rees_toolkit").addHandler(handler)
    return stream


def test_get_logger_nests_under_the_package() -> None:
    assert get_logger("groebner").name == "rees_toolkit.groebner"
    assert get_logger("rees_toolkit.points").name == "rees_toolkit.points"


def test_log_event_writes_one_json_object() -> None:
    configure_logging("INFO")
    logger = get_logger("tests")
    stream = _capture(logger)
    log_event(logger, "verify.stage", stage="points", skipped=None)
    record = json.loads(stream.getvalue().strip())
    assert record["level"] == "INFO"
    assert record["logger"] == "rees_toolkit.tests"
    payload = json.loads(record["msg"])
    assert payload == {"event": "verify.stage", "stage": "points"}


def test_level_filters_events() -> None:
    configure_logging(logging.WARNING)
    logger = get_logger("tests")
    stream = _capture(logger)
    log_event(logger, "quiet")
    log_event(logger, "loud", level=logging.ERROR)
    lines = stream.getvalue().strip().splitlines()
    assert len(lines) == 1
    assert "loud" in lines[0]


def test_unknown_level_falls_back_to_warning() -> None:
    logger = configure_logging("chatty", json_mode=False)
    assert logger.level == logging.WARNING
    assert len(logger.handlers) == 1
