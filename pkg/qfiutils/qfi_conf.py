""" Loads numerical tolerances and solver settings from YAML.

    >>> import qfiutils.qfi_conf as qc
    >>> conf = qc.load_conf()
    >>> conf['detection_threshold']
    1e-09
"""

import logging
from importlib.resources import files
import yaml

QFICONF = str(files('qfiutils').joinpath('conf/qfiConfig.yml'))

DEFAULTS = {
    'hermitian_tol': 1e-10,
    'trace_tol': 1e-10,
    'psd_tol': 1e-10,
    'normalization_tol': 1e-12,
    'constraint_tol': 1e-12,
    'jacobi_sweeps': 100,
    'jacobi_offdiag_rel': 1e-14,
    'qfi_cutoff': 1e-12,
    'detection_threshold': 1e-9,
    'scan_step': 1e-2,
    'threshold_tol': 1e-6,
    'csv_digits': 17,
    'log_level': 'WARNING',
    'log_format': '%(asctime)s qfi %(name)s %(funcName)s %(levelname)s %(message)s',
}

INT_KEYS = ('jacobi_sweeps', 'csv_digits')
STR_KEYS = ('log_level', 'log_format')

LOG = logging.getLogger(__name__)


def load_conf(path: str = None) -> dict:
    """Read a configuration file and merge it over the defaults.

    Args
    ----
    path
        YAML file. Defaults to the packaged conf/qfiConfig.yml

    Returns
    -------
    dict
        One entry per key in DEFAULTS, numeric values coerced.

    Raises
    ------
    FileNotFoundError
        If path does not exist.

    """
    if path is None:
        path = QFICONF
    with open(path, 'r') as fh:
        loaded = yaml.safe_load(fh) or {}

    conf = dict(DEFAULTS)
    for key, val in loaded.items():
        if key not in DEFAULTS:
            LOG.warning("Ignoring unknown config key: {}".format(key))
            continue
        if key in INT_KEYS:
            conf[key] = int(val)
        elif key in STR_KEYS:
            conf[key] = str(val)
        else:
            # YAML 1.1 reads '1e-10' as a string
            conf[key] = float(val)
    return conf


CONF = load_conf()
