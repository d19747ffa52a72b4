# test_config.py - config.ini defaults, setters and fallbacks for bad values
import configparser

import pytest

from backend import config


def _write(path, text):
    path.write_text(text, encoding='utf-8')


def test_defaults_are_written_on_first_load(isolated_config):
    assert not isolated_config.exists()
    assert config.get_jobs() == 1
    assert isolated_config.exists()
    parser = configparser.ConfigParser()
    parser.read(isolated_config, encoding='utf-8')
    assert parser['compute']['seed'] == str(config.DEFAULT_SEED)
    assert parser['logging']['level'] == 'INFO'


def test_defaults():
    assert config.get_degree_bound() is None
    assert config.get_seed() == config.DEFAULT_SEED
    assert config.get_group_cap() == config.DEFAULT_GROUP_CAP
    assert config.get_epsilon_report() is False
    assert config.get_json_path() is None
    assert config.get_markdown_path() is None
    assert config.get_log_level() == 'INFO'


def test_setters_round_trip(tmp_path):
    config.set_degree_bound(14)
    config.set_jobs(4)
    config.set_seed(7)
    config.set_group_cap(64)
    config.set_epsilon_report(True)
    config.set_log_level('debug')
    config.set_report_paths(json_path=str(tmp_path / "r.json"), markdown_path=str(tmp_path / "r.md"))
    assert config.get_degree_bound() == 14
    assert config.get_jobs() == 4
    assert config.get_seed() == 7
    assert config.get_group_cap() == 64
    assert config.get_epsilon_report() is True
    assert config.get_log_level() == 'DEBUG'
    assert config.get_json_path() == str(tmp_path / "r.json")
    assert config.get_markdown_path() == str(tmp_path / "r.md")


def test_degree_bound_none_restores_automatic():
    config.set_degree_bound(10)
    config.set_degree_bound(None)
    assert config.get_degree_bound() is None


@pytest.mark.parametrize("text,getter,expected", [
    ("[compute]\njobs = many\n", config.get_jobs, 1),
    ("[compute]\njobs = 0\n", config.get_jobs, 1),
    ("[compute]\ndegree_bound = -3\n", config.get_degree_bound, None),
    ("[compute]\nseed = abc\n", config.get_seed, config.DEFAULT_SEED),
    ("[compute]\ngroup_cap = 1.5\n", config.get_group_cap, config.DEFAULT_GROUP_CAP),
    ("[report]\nepsilon_report = perhaps\n", config.get_epsilon_report, False),
    ("[logging]\nlevel =\n", config.get_log_level, 'INFO'),
])
def test_invalid_values_fall_back(isolated_config, text, getter, expected):
    _write(isolated_config, text)
    assert getter() == expected


def test_missing_sections_are_added(isolated_config):
    _write(isolated_config, "[compute]\njobs = 2\n")
    assert config.get_jobs() == 2
    parser = configparser.ConfigParser()
    parser.read(isolated_config, encoding='utf-8')
    assert {'compute', 'report', 'logging'} <= set(parser.sections())
