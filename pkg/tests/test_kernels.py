"""The jitted kernels and the pure-Python fallback compute the same numbers."""

import json
import os
import subprocess
import sys

PROBE = r"""
import json
from qorder._kernels import USE_NUMBA, _gamma, _j_series, _j_asymptotic
from qorder._kernels import osc_tail

out = {"use_numba": USE_NUMBA, "values": []}
for nu, z in ((0.0, 2.0), (0.5, 7.5), (1.0, 25.0), (2.0, 0.3)):
    out["values"].append(_j_series(nu, z)[0])
for nu, z in ((0.0, 40.0), (1.0, 100.0)):
    out["values"].append(_j_asymptotic(nu, z)[0])
for x in (0.5, 4.5, -0.3, -1.7):
    out["values"].append(_gamma(x))
for c, a, q, mode in ((1.0, 1.0, 1.0, 0), (1.5, 2.0, 0.75, 1),
                      (0.8, 1.3, 0.64, 2)):
    v, e, ok, lobes = osc_tail(c, a, q, mode)
    out["values"].append(v)
    out["converged"] = bool(ok)
print(json.dumps(out))
"""


def _run(disable_numba: bool) -> dict:
    env = dict(os.environ)
    env["QORDER_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run([sys.executable, "-c", PROBE], env=env,
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_fallback_matches_jitted_path():
    jitted = _run(disable_numba=False)
    plain = _run(disable_numba=True)
    assert plain["use_numba"] is False
    assert plain["converged"] and jitted["converged"]
    assert len(jitted["values"]) == len(plain["values"])
    for a, b in zip(jitted["values"], plain["values"]):
        # identical source, so only instruction-scheduling noise is allowed
        assert abs(a - b) <= 1e-13 * max(1.0, abs(a), abs(b)), (a, b)


def test_env_flag_selects_fallback():
    plain = _run(disable_numba=True)
    assert plain["use_numba"] is False
