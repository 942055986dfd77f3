"""Exhaustive property suites over the shipped fixtures."""

from __future__ import annotations

import time
from typing import Callable

from .core import verify_matroid_axioms
from .engines.registry import engine_k
from .engines.verifier import FORBIDDEN_SETS, MUTANTS, verify_forbidden_property
from .fixtures import load_fixtures
from .layered import coupling_histograms

__all__ = ["COUPLING_MAX_N", "verify_suite"]

COUPLING_MAX_N = {"quick": 5, "full": 6}


def verify_suite(level: str = "quick", inject: str | None = None, echo: Callable[[str], None] = print) -> int:
    """Axioms, forbidden-set properties and coupling fidelity on the fixtures.

    With ``inject`` the named mutant replaces its engine; the suite is then
    expected to fail and print counterexamples.  Returns 0 when every check
    passes and 4 otherwise.
    """
    if inject is not None and inject not in MUTANTS:
        raise ValueError(f"unknown mutant {inject!r}; expected one of {', '.join(sorted(MUTANTS))}")
    fixtures = load_fixtures(level)
    failures = 0
    t0 = time.perf_counter()
    for fx in fixtures:
        ok = verify_matroid_axioms(fx.instance)
        failures += not ok
        echo(f"axioms      {fx.name:20s} n={fx.instance.n} {'ok' if ok else 'FAIL'}")
    for fx in fixtures:
        for engine in fx.engines:
            if engine not in FORBIDDEN_SETS:
                continue
            run = None
            tag = engine
            if inject is not None and MUTANTS[inject][0] == engine:
                run = MUTANTS[inject][1]
                tag = f"{engine}[{inject}]"
            rep = verify_forbidden_property(engine, fx.instance, engine_k(engine, fx.instance), run=run)
            failures += not rep.ok
            echo(f"forbidden   {fx.name:20s} {rep.summary().replace(engine, tag, 1)}")
            for cx in rep.counterexamples:
                echo(f"  counterexample {cx.line()}")
    limit = COUPLING_MAX_N[level]
    for fx in fixtures:
        if fx.instance.n > limit:
            continue
        coupled, sampled = coupling_histograms(fx.instance)
        ok = coupled == sampled
        failures += not ok
        echo(f"coupling    {fx.name:20s} n={fx.instance.n} outcomes={len(coupled)} {'ok' if ok else 'FAIL'}")
    echo(f"{'PASS' if not failures else 'FAIL'}: {failures} failing checks, {time.perf_counter() - t0:.1f}s")
    return 0 if not failures else 4
