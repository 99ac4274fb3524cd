"""Run-time configuration.

Five knobs cover every numeric routine in the package:

    quad.tol         absolute quadrature tolerance per axis     1e-9
    quad.max_depth   adaptive bisection depth cap               4
    support.slack    slack constant in the support cutoffs      4.0
    tf.N             test-function scale N                      4.0
    tf.k             test-function weight k                     10

plus artifact plumbing for the command line: sweep-grid defaults, the
output format (csv or json), the seed for the randomized verification
suite, and the worker count for sweep drivers.

Settings come from three layers, each overriding the previous one:
the built-in defaults above, then a key=value config file, then
command-line flags.  The environment enters only through
SIEGELSUMS_CONFIG, which may hold the config-file *path*; no setting
value is ever read from the environment.
"""

import os
from typing import NamedTuple

from siegelsums.quadrature import TestFunction, default_test_function

ENV_VAR = "SIEGELSUMS_CONFIG"

# ============================================================
# the configuration record
# ============================================================


class RunConfig(NamedTuple):
    """Resolved settings; every field has a documented default."""

    quad_tol: float = 1e-9
    quad_max_depth: int = 4
    support_slack: float = 4.0
    tf_n: float = 4.0
    tf_k: int = 10
    sweep_norm: int = 3
    sweep_xs: tuple = (4.0, 8.0, 16.0)
    output: str = "csv"
    seed: int = 0
    workers: int = 0  # 0 means "number of available cores"


DEFAULTS = RunConfig()


def _parse_xs(text):
    xs = tuple(float(p) for p in text.split(","))
    if not xs:
        raise ValueError("empty grid")
    return xs


def _parse_output(text):
    if text not in ("csv", "json"):
        raise ValueError("output must be csv or json")
    return text


# config-file key -> (field name, converter)
KEYS = {
    "quad.tol": ("quad_tol", float),
    "quad.max_depth": ("quad_max_depth", int),
    "support.slack": ("support_slack", float),
    "tf.N": ("tf_n", float),
    "tf.k": ("tf_k", int),
    "sweep.norm": ("sweep_norm", int),
    "sweep.xs": ("sweep_xs", _parse_xs),
    "output": ("output", _parse_output),
    "seed": ("seed", int),
    "workers": ("workers", int),
}


# ============================================================
# loading
# ============================================================


def parse_config_text(text):
    """Parse key=value lines into a field->value dict.

    Blank lines and #-comments are skipped.  Unknown keys and
    unconvertible values raise ValueError with the offending line
    number.
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError("line %d: expected key=value, got %r" % (lineno, raw))
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in KEYS:
            raise ValueError("line %d: unknown config key %r" % (lineno, key))
        field, conv = KEYS[key]
        try:
            fields[field] = conv(value.strip())
        except ValueError as exc:
            raise ValueError("line %d: bad value for %s: %s" % (lineno, key, exc))
    return fields


def load_config(path=None, env=None):
    """Defaults, overridden by the config file at `path` if given, else
    at $SIEGELSUMS_CONFIG if set.  Returns a RunConfig."""
    if env is None:
        env = os.environ
    if path is None:
        path = env.get(ENV_VAR) or None
    if path is None:
        return DEFAULTS
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return DEFAULTS._replace(**parse_config_text(text))


def test_function_from(config):
    """The TestFunction bundle described by a RunConfig."""
    if not isinstance(config, RunConfig):
        raise ValueError("expected a RunConfig")
    tf = default_test_function(n=config.tf_n, k=config.tf_k)
    assert isinstance(tf, TestFunction)
    return tf
