"""Exact variational calculus on jet bundles.

Models use the same text format as the ``varcalc`` command-line tool::

    model = varcalc.Model.from_text(open("particle.model").read())
    result = varcalc.run(model, "verify", "boost", "free")
    result.report["current"]["t"]  # 't*y_t - y'
"""

import json
from typing import NamedTuple

from ._core import Model, canonical, euler_lagrange

__all__ = ["Model", "Result", "canonical", "euler_lagrange", "run"]


class Result(NamedTuple):
    exit_code: int
    report: dict
    diagnostic: str

    @property
    def ok(self) -> bool:
        return self.exit_code == 0


def run(model: Model, command: str, *names: str, order: int = 1) -> Result:
    """Runs one CLI command (el, verify, samelaw, ...) against a model."""
    code, text, diagnostic = model.run_json(command, list(names), order)
    return Result(code, json.loads(text), diagnostic)
