"""Test code for qfi_conf.py
   execute 'pytest' to run tests.
"""

import logging
import pytest

import qfiutils.qfi_conf as qc


@pytest.mark.conf
def test_conf_defaults():
    conf = qc.load_conf()
    assert conf['jacobi_sweeps'] == 100
    assert conf['detection_threshold'] == 1e-9
    assert conf['scan_step'] == 1e-2
    assert conf['csv_digits'] == 17
    assert isinstance(conf['hermitian_tol'], float)
    assert conf['log_level'] == 'WARNING'


@pytest.mark.conf
def test_conf_missing_file():
    with pytest.raises(FileNotFoundError):
        qc.load_conf('abcd.yml')


@pytest.mark.conf
def test_conf_override(tmp_path, caplog):
    path = tmp_path / 'conf.yml'
    path.write_text("threshold_tol: 1e-8\njacobi_sweeps: '50'\nbogus: 1\n")
    with caplog.at_level(logging.WARNING, logger='qfiutils.qfi_conf'):
        conf = qc.load_conf(str(path))
    assert conf['threshold_tol'] == 1e-8
    assert conf['jacobi_sweeps'] == 50
    assert conf['qfi_cutoff'] == 1e-12
    assert 'bogus' not in conf
    assert 'bogus' in caplog.text
