"""
Unit Tests: Configuration and Logging

Tests dancekit.json loading with environment overrides, and the run id
carried on every log record.
"""

import json
import logging
from unittest.mock import patch

import pytest

from dancekit import logging_config
from dancekit.config import DEFAULT_CONFIG_PATH, REPO_ROOT, load_config
from dancekit.logging_config import RunIdFilter, get_log_format, get_log_level, get_run_id, run_context

pytestmark = pytest.mark.unit


def _write_config(tmp_path, **overrides):
    settings = {
        'census_file': 'data/census_8.csv',
        'report_basename': 'report',
        'jobs': 2,
        'strict': True,
        'max_crossings_exact': 10,
    }
    settings.update(overrides)
    path = tmp_path / 'dancekit.json'
    path.write_text(json.dumps({'version': '1.0.0', 'settings': settings}), encoding='utf-8')
    return path


class TestLoadConfig:
    def test_bundled_config(self):
        with patch.dict('os.environ', {}, clear=True):
            config = load_config()
        assert config.census_file == REPO_ROOT / 'data' / 'census_8.csv'
        assert config.jobs == 1
        assert config.strict is False
        assert DEFAULT_CONFIG_PATH.exists()

    def test_explicit_path(self, tmp_path):
        config = load_config(_write_config(tmp_path))
        assert config.report_basename == 'report'
        assert config.jobs == 2
        assert config.strict is True
        assert config.max_crossings_exact == 10

    def test_config_env_var(self, tmp_path):
        path = _write_config(tmp_path, report_basename='from_env')
        with patch.dict('os.environ', {'DANCEKIT_CONFIG': str(path)}):
            assert load_config().report_basename == 'from_env'

    def test_census_override(self, tmp_path):
        table = tmp_path / 'other.csv'
        with patch.dict('os.environ', {'DANCEKIT_CENSUS': str(table)}):
            assert load_config(_write_config(tmp_path)).census_file == table

    def test_absolute_census_path_kept(self, tmp_path):
        table = tmp_path / 'abs.csv'
        with patch.dict('os.environ', {}, clear=True):
            assert load_config(_write_config(tmp_path, census_file=str(table))).census_file == table

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / 'nope.json')

    def test_missing_settings(self, tmp_path):
        path = tmp_path / 'dancekit.json'
        path.write_text(json.dumps({'settings': {'jobs': 1}}), encoding='utf-8')
        with pytest.raises(ValueError, match='census_file'):
            load_config(path)

    def test_bad_jobs(self, tmp_path):
        with pytest.raises(ValueError, match='jobs'):
            load_config(_write_config(tmp_path, jobs=0))


class TestLogging:
    def test_level_from_env(self):
        with patch.dict('os.environ', {'LOG_LEVEL': 'debug'}):
            assert get_log_level() == logging.DEBUG

    def test_unknown_level_falls_back(self):
        with patch.dict('os.environ', {'LOG_LEVEL': 'chatty'}):
            assert get_log_level() == logging.WARNING

    def test_format_from_env(self):
        with patch.dict('os.environ', {'LOG_FORMAT': 'JSON'}):
            assert get_log_format() == 'json'
        with patch.dict('os.environ', {}, clear=True):
            assert get_log_format() == 'text'

    def test_run_context_nests(self):
        assert get_run_id() is None
        with run_context('outer'):
            with run_context('inner'):
                assert get_run_id() == 'inner'
            assert get_run_id() == 'outer'
        assert get_run_id() is None

    def test_filter_stamps_run_id(self):
        record = logging.LogRecord('dancekit.test', logging.INFO, __file__, 1, 'msg', None, None)
        RunIdFilter().filter(record)
        assert record.run_id == 'N/A'
        with run_context('abc123'):
            RunIdFilter().filter(record)
        assert record.run_id == 'abc123'

    def test_json_handler_writes_run_id(self, capsys):
        handler = logging_config.setup_json_handler(logging.INFO)
        logger = logging.getLogger('dancekit.test_json')
        logger.propagate = False
        logger.addHandler(handler)
        try:
            with run_context('run-1'):
                logger.warning("Census run started", extra={"records": 3})
        finally:
            logger.removeHandler(handler)
        line = capsys.readouterr().err.strip().splitlines()[-1]
        payload = json.loads(line)
        assert payload['message'] == "Census run started"
        assert payload['run_id'] == 'run-1'
        assert payload['records'] == 3
        assert payload['level'] == 'WARNING'

    def test_set_log_level(self):
        root = logging.getLogger('dancekit')
        previous = root.level
        try:
            logging_config.set_log_level(logging.DEBUG)
            assert root.level == logging.DEBUG
            assert all(h.level == logging.DEBUG for h in root.handlers)
        finally:
            logging_config.set_log_level(previous)
