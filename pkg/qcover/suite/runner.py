import logging
from typing import Any, Optional, Sequence

import numpy as np

from qcover.algebra.racks import FiniteRack
from qcover.schemas import PropertyOutcome, RunConfig, SuiteSummary
from qcover.suite.properties import PROPERTIES, Failure, Property, Skip, SuiteContext

logger = logging.getLogger(__name__)


def describe(case: Any) -> str:
    if isinstance(case, FiniteRack):
        return f"rack {case.elements} table {case.table_pos.tolist()}"
    return str(case)


def _attempt(prop: Property, case: Any, ctx: SuiteContext) -> Optional[str]:
    """None on success, "skip", or the failure message."""
    try:
        prop.check(case, ctx)
    except Skip:
        return "skip"
    except Failure as exc:
        return str(exc)
    except Exception as exc:
        return f"{type(exc).__name__}: {exc}"
    return None


def _shrink(prop: Property, case: Any, message: str, ctx: SuiteContext) -> tuple[Any, str]:
    improved = True
    while improved:
        improved = False
        for cand in prop.shrink(case):
            result = _attempt(prop, cand, ctx)
            if result is not None and result != "skip":
                case, message, improved = cand, result, True
                break
    return case, message


def sample_count(prop: Property, config: RunConfig) -> int:
    return getattr(config, prop.samples_field) if prop.samples_field else config.samples


def run_property(prop: Property, index: int, ctx: SuiteContext) -> PropertyOutcome:
    # one stream per property so a subset reproduces the same samples
    rng = np.random.default_rng([ctx.config.seed, index])
    passed = failed = skipped = 0
    witness = None
    for k in range(sample_count(prop, ctx.config)):
        try:
            case = prop.generate(rng, ctx)
        except Exception as exc:
            failed += 1
            if witness is None:
                witness = f"generator raised on sample {k}: {type(exc).__name__}: {exc}"
                logger.warning("%s failed: %s", prop.name, witness)
            continue
        result = _attempt(prop, case, ctx)
        if result is None:
            passed += 1
        elif result == "skip":
            skipped += 1
        else:
            failed += 1
            if witness is None:
                case, result = _shrink(prop, case, result, ctx)
                witness = f"{describe(case)}: {result}"
                logger.warning("%s failed: %s", prop.name, witness)
    logger.info("%s: %d passed, %d failed, %d skipped", prop.name, passed, failed, skipped)
    return PropertyOutcome(name=prop.name, module=prop.module, passed=passed,
                           failed=failed, skipped=skipped, witness=witness)


def suite_run(config: RunConfig, mutate: bool = False,
              names: Optional[Sequence[str]] = None) -> SuiteSummary:
    """Run the property batteries, all of them unless ``names`` is given."""
    ctx = SuiteContext(config, mutate)
    outcomes = [run_property(prop, i, ctx) for i, prop in enumerate(PROPERTIES)
                if names is None or prop.name in names]
    return SuiteSummary(seed=config.seed, samples=config.samples, properties=outcomes)


def format_summary(summary: SuiteSummary) -> str:
    lines = []
    for p in summary.properties:
        line = f"{p.module}/{p.name}: {p.passed} passed, {p.failed} failed"
        if p.skipped:
            line += f", {p.skipped} skipped"
        lines.append(line)
        if p.witness:
            lines.append(f"  witness: {p.witness}")
    verdict = "ok" if summary.ok else "FAILED"
    lines.append(f"{len(summary.properties)} properties, seed {summary.seed:#x}: {verdict}")
    return "\n".join(lines) + "\n"
