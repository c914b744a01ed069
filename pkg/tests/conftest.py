from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")


@lru_cache(maxsize=None)
def complex_for(name: str, weight_min: int | None = None, degrees=(0, 1, 2)):
    """Controlling algebra of a bundled spec, shared across test modules."""
    from quillendef.complex import assemble_controlling, natural_weight_min
    from quillendef.quillen import build_model
    from quillendef.specfile import load_spec

    model = build_model(load_spec(name))
    if weight_min is None:
        weight_min = natural_weight_min(model, degrees)
    return assemble_controlling(model, degrees, weight_min)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
