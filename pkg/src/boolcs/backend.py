"""Selects the TriSet kernel: compiled (``_core``) when importable, else Python.

Set ``BOOLCS_BACKEND`` to ``python`` or ``compiled`` to force one.  The
compiled kernel packs monomials into 64-bit words, so larger systems always
run on the Python kernel.
"""

from __future__ import annotations

import logging
import math
import os

from .triset import triset as _py_triset
from .poly import BoolPoly
from .triset import ChooseStrategy

log = logging.getLogger(__name__)

try:
    if os.environ.get("BOOLCS_BACKEND", "auto") == "python":
        raise ImportError("compiled kernel disabled by BOOLCS_BACKEND")
    from . import _core
except ImportError:
    if os.environ.get("BOOLCS_BACKEND") == "compiled":
        raise
    _core = None

HAVE_COMPILED = _core is not None
DEFAULT = "compiled" if HAVE_COMPILED else "python"

_STRATEGY_CODES = {
    ChooseStrategy.INDEX_LEX: 0,
    ChooseStrategy.HIGHEST_CLASS: 1,
    ChooseStrategy.INPUT_ORDER: 2,
}


class PythonKernel:
    name = "python"

    def __init__(self, n: int, check_index: bool = False):
        self.n = n
        self.check_index = check_index

    def prepare(self, polys):
        return list(polys)

    def run(self, system, threshold, strategy):
        return _py_triset(system, threshold, strategy, check_index=self.check_index)

    def polys(self, found) -> list[BoolPoly]:
        return found

    def system_polys(self, system) -> list[BoolPoly]:
        return list(system)


class CompiledKernel:
    name = "compiled"

    def __init__(self, n: int):
        if _core is None:
            raise RuntimeError("compiled kernel is not available")
        if n > _core.MAX_VARS:
            raise ValueError(f"compiled kernel handles at most {_core.MAX_VARS} variables")
        self.n = n

    def prepare(self, polys):
        return _core.CSystem(self.n, [p.termset for p in polys])

    def run(self, system, threshold, strategy):
        t = -1 if threshold is None or threshold == math.inf else int(threshold)
        return _core.run_triset(system, t, _STRATEGY_CODES[strategy])

    def polys(self, found) -> list[BoolPoly]:
        return [BoolPoly._from_set(self.n, frozenset(m)) for m in found]

    def system_polys(self, system) -> list[BoolPoly]:
        return self.polys(system.masks())


def kernel_for(n: int, name: str | None = None, check_index: bool = False):
    """Kernel instance for an ``n``-variable system.

    ``check_index`` (termination-index assertions) is only implemented by the
    Python kernel, so it selects that kernel.
    """
    if check_index or name == "python":
        return PythonKernel(n, check_index=check_index)
    if name == "compiled":
        return CompiledKernel(n)
    if name not in (None, "auto"):
        raise ValueError(f"unknown backend {name!r}")
    if HAVE_COMPILED and n <= _core.MAX_VARS:
        return CompiledKernel(n)
    if HAVE_COMPILED:
        log.info("%d variables exceed the compiled kernel; using Python", n)
    return PythonKernel(n)
