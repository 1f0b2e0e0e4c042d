"""RIS-aided random access simulator: channel model, access policies, SIC
decoding, power model and Monte Carlo engine.

Configuration is a mapping of dotted keys (``scenario.k``, ``radio.snr_threshold_db``,
...) to values; anything not given takes the baseline default. Values may be
numbers or strings; they are passed on as text so a run can be replayed exactly.
"""

from ._core import (
    CSV_HEADER,
    ConfigError,
    __version__,
    ap_power,
    array_factor,
    carp_probabilities,
    db_to_linear,
    dbm_to_watts,
    dbw_to_watts,
    default_config,
    energy_efficiency,
    expand_values,
    irsap_degree_pmf,
    irsap_mean_degree,
    mtd_power,
    phase_shift_set,
    ris_power,
    sic_decode,
    sscp_select,
    throughput,
)
from . import _core


def _text(config):
    out = {}
    for key, value in (config or {}).items():
        if isinstance(value, bool):
            out[key] = "true" if value else "false"
        else:
            out[key] = str(value)
    return out


def _values(values):
    if values is None:
        return []
    if isinstance(values, str):
        return expand_values(values)
    return [str(v) for v in values]


def resolve_config(config=None):
    """Full validated configuration (strings) with defaults filled in."""
    return _core.resolve_config(_text(config))


def simulate_frame(config=None, trial=0):
    return _core.simulate_frame(_text(config), trial)


def run(config=None, policies=(), workers=0):
    """One row per policy at the configured point."""
    return _core.execute("run", _text(config), list(policies), "", [], workers)


def sweep(axis, values, config=None, policies=(), workers=0):
    """Rows per (policy, value); ``values`` is a list or a ``lo:hi[:step]`` string."""
    return _core.execute("sweep", _text(config), list(policies), axis, _values(values), workers)


def optimal_s(config=None, policies=(), values=None, workers=0):
    """Per-S curve plus ``best_G:<policy>`` and ``best_ee:<policy>`` rows."""
    return _core.execute("optimal-s", _text(config), list(policies), "", _values(values), workers)


def to_csv(command, config=None, policies=(), axis="", values=None, workers=0):
    """The exact CSV text the command-line tool would write."""
    return _core.execute_csv(command, _text(config), list(policies), axis, _values(values),
                             workers)


__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "__version__",
    "ap_power",
    "array_factor",
    "carp_probabilities",
    "db_to_linear",
    "dbm_to_watts",
    "dbw_to_watts",
    "default_config",
    "energy_efficiency",
    "expand_values",
    "irsap_degree_pmf",
    "irsap_mean_degree",
    "mtd_power",
    "optimal_s",
    "phase_shift_set",
    "resolve_config",
    "ris_power",
    "run",
    "sic_decode",
    "simulate_frame",
    "sscp_select",
    "sweep",
    "throughput",
    "to_csv",
]
