"""Python bindings for the kolab library.

Bit strings are passed as ``str`` over ``'0'``/``'1'`` (or ``'HEX:LEN'``).
Configuration overrides use the same keys as the ``kolab`` tool's ``--set``.
"""

import json

from ._kolab import (
    KolabError,
    collision_census,
    config_keys,
    decode,
    decode_nat,
    encode_nat,
    from_hex,
    in_halting,
    matvec,
    nth_prime,
    parse_specific,
    prime_index,
    to_hex,
    v_opt,
)
from . import _kolab

__all__ = [
    "KolabError",
    "calibrate",
    "collision_census",
    "complexity",
    "config_keys",
    "decode",
    "decode_nat",
    "encode_nat",
    "from_hex",
    "in_halting",
    "matvec",
    "nth_prime",
    "oracle",
    "parse_specific",
    "prime_index",
    "reduce",
    "spurious_rate",
    "to_hex",
    "v_opt",
]


def _overrides(options):
    return {key: str(value) for key, value in options.items()}


def complexity(machine, x, cond="", bound=12, **options):
    """Minimal description length of x, or None when it exceeds bound."""
    return _kolab.complexity(machine, x, cond, bound, _overrides(options))


def oracle(q, **options):
    """Membership verdict for q in the set of U-random strings."""
    return json.loads(_kolab.oracle_json(q, _overrides(options)))


def reduce(x, **options):
    """Decide whether program x halts using randomness-oracle queries only."""
    return json.loads(_kolab.reduce_json(x, _overrides(options)))


def calibrate(max_len, **options):
    return json.loads(_kolab.calibrate_json(max_len, _overrides(options)))


def spurious_rate(l, k, trials, **options):
    return json.loads(_kolab.spurious_json(l, k, trials, _overrides(options)))
