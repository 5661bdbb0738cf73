import json
import logging
import pickle
from pathlib import Path
from fractions import Fraction

import pytest

import fatcantor

from fatcantor.app_config import RunConfig, ScheduleConfig, StagesConfig, LogConfig
from fatcantor.config import CONFIG_FOLDER, Config
from fatcantor.errors import PreconditionError
from fatcantor.log_config import PACKAGE_LOGGER, get_log_config
from fatcantor.time_record import TimeRecorder


def test_defaults(run_config):
    assert run_config.schedule == ScheduleConfig(1, Fraction(1), Fraction(1, 4))
    assert run_config.stages.stage_cap == 12
    assert run_config.tolerance.tol == Fraction(1, 1024)
    assert run_config.log_config.no_time_record
    assert run_config.log_filename is None


def test_rational_fields_are_coerced():
    schedule = ScheduleConfig(d=2, c='1/2', rho=1)
    assert schedule.c == Fraction(1, 2)
    assert schedule.rho == Fraction(1)
    with pytest.raises(ValueError):
        ScheduleConfig(rho='0.25')
    with pytest.raises(TypeError):
        ScheduleConfig(rho=0.25)


def test_named_tuple_behaviour():
    schedule = ScheduleConfig(2)
    assert schedule.d == 2
    with pytest.raises(AttributeError):
        schedule.d = 3
    with pytest.raises(ValueError):
        ScheduleConfig(unknown=1)
    with pytest.raises(ValueError):
        ScheduleConfig(2, d=3)
    assert schedule.update(d=3).d == 3
    assert schedule.d == 2


def test_update_group_ignores_none(run_config):
    assert run_config.update_group('schedule', d=None) is run_config
    updated = run_config.update_group('stages', stage_cap=5, reference_stage=None)
    assert updated.stages.stage_cap == 5
    assert updated.stages.reference_stage == 4
    assert run_config.stages.stage_cap == 12


@pytest.mark.parametrize('group, values', [
    ('stages', dict(stage_cap=0)),
    ('search', dict(budget=-1)),
    ('tolerance', dict(tol='0')),
    ('stages', dict(witness_margin='1/2')),
])
def test_validation(run_config, group, values):
    with pytest.raises(PreconditionError):
        run_config.update_group(group, **values)


def test_yaml_round_trip(tmp_path, run_config):
    config = run_config.update_group('schedule', d=2, rho='1/8').update_group('output', seed=3)
    path = tmp_path / 'run.yaml'
    config.save_to_config(path)
    assert 'rho: 1/8' in path.read_text()
    assert RunConfig.from_config(str(path)) == config


def test_partial_yaml_keeps_defaults(tmp_path):
    path = tmp_path / 'partial.yaml'
    path.write_text('schedule:\n  d: 2\nstages:\n  stage_cap: 7\n')
    config = RunConfig.from_config(str(path))
    assert config.schedule.d == 2
    assert config.stages == StagesConfig(stage_cap=7)
    assert config.search.budget == 256


def test_bundled_configs():
    assert RunConfig.from_config('default') == RunConfig()
    plane = RunConfig.from_config('plane')
    assert plane.schedule.d == 2
    assert plane.search.exhaustive_limit == 8


def test_config_pickles(run_config):
    config = run_config.update_group('schedule', rho='1/5')
    assert pickle.loads(pickle.dumps(config)) == config
    assert hash(config) == hash(config.copy())


def test_logging_level():
    assert LogConfig(debug=True).logging_level == 10
    assert LogConfig().logging_level == 20


def test_time_recorder(tmp_path):
    recorder = TimeRecorder('measure')
    with recorder('bounds'):
        pass
    with recorder('bounds'):
        pass
    with recorder('search'):
        pass
    assert recorder.num_records() == {'measure/bounds': 2, 'measure/search': 1}
    assert 'Num records' in recorder.get_table_str()

    path = tmp_path / 'records.json'
    recorder.save(str(path))
    saved = json.loads(path.read_text())
    assert saved['command'] == 'measure'
    assert saved['stages']['measure/bounds']['num'] == 2
    assert saved['stages']['measure/bounds']['records'] == recorder.records['measure/bounds']


def test_time_recorder_keeps_failed_stages():
    recorder = TimeRecorder('pack')
    with pytest.raises(PreconditionError):
        with recorder('layout'):
            raise PreconditionError('bad family')
    assert recorder.num_records() == {'pack/layout': 1}


def test_disabled_time_recorder():
    recorder = TimeRecorder('run', no_record=True)
    with recorder('stage'):
        pass
    assert not recorder.records
    assert recorder.total_time == 0


def test_log_config_levels(tmp_path):
    config = get_log_config(logging.DEBUG, str(tmp_path / 'run.log'))
    assert config['loggers'][PACKAGE_LOGGER]['level'] == logging.DEBUG
    assert config['root']['level'] == logging.WARNING
    assert config['handlers']['stderr']['stream'] == 'ext://sys.stderr'
    assert config['handlers']['file']['formatter'] == 'debug'
    quiet = get_log_config(logging.INFO)
    assert 'file' not in quiet['handlers']
    assert quiet['handlers']['stderr']['formatter'] == 'standard'


def test_bundled_configs_ship_with_the_package():
    package_dir = Path(fatcantor.__file__).parent
    assert CONFIG_FOLDER == package_dir / 'config_files'
    assert {p.name for p in CONFIG_FOLDER.glob('*.yaml')} >= {'default.yaml', 'plane.yaml'}
    assert Config.path('plane') == CONFIG_FOLDER / 'plane.yaml'
