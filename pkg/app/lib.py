"""Common functions made from the primitives found in lib"""
import random
import time
from pathlib import Path
from typing import Optional

import structlog

from app import schemas
from app.constants import DEFAULT_ENUMERATION_CAP, DEFAULT_RANDOM_PARAM_CAP, DEFAULT_TRIALS
from lib import emit, oracle, parse
from lib.constraints import ConstraintSet, p_abs_R
from lib.model import all_transitions, format_transition
from lib.plattice import box_size
from lib.prefix import CfpResult, Limits, build_cfp, reachable_states
from lib.parse.models import ModelFile

log = structlog.get_logger(__name__)


def load_model(path: str) -> ModelFile:
    text = Path(path).read_text(encoding="utf-8")
    return parse.parse_model(text, name=Path(path).stem)


def constraint_set(
    model: ModelFile, no_constraints: bool = False, minmax: Optional[bool] = None
) -> ConstraintSet:
    """
    The constraint set a command runs with.

    Parameters
    ----------
    model
    :the parsed model file
    no_constraints
    :drop every influence constraint of the file
    minmax
    :override the file's `option minmax`, None keeps it
    """
    if no_constraints:
        model = model.without_constraints()
    R = model.constraint_set
    if minmax is None:
        return R
    return ConstraintSet(R.constraints, minmax)


def run_unfold(
    model: ModelFile,
    limits: Optional[Limits] = None,
    R: Optional[ConstraintSet] = None,
    timing: bool = False,
) -> tuple[CfpResult, emit.RunStats]:
    R = model.constraint_set if R is None else R
    started = time.monotonic()
    result = build_cfp(model.prn, R, model.x0, limits)
    states = reachable_states(result.net)
    elapsed_ms = round((time.monotonic() - started) * 1000)
    stats = emit.RunStats(
        model=model.name,
        nodes=model.prn.node_count,
        events=result.non_cutoff_count,
        events_with_cutoffs=result.event_count,
        conditions=len(result.net.conditions),
        reachable_states=len(states),
        complete=result.complete,
        reason=result.reason,
        runtime_ms=elapsed_ms if timing else None,
    )
    return result, stats


def model_info(model: ModelFile, R: Optional[ConstraintSet] = None) -> schemas.ModelInfo:
    R = model.constraint_set if R is None else R
    prn = model.prn
    per_node = [
        schemas.NodeInfo(
            name=prn.names[v],
            max_value=prn.max_values[v],
            regulators=[prn.names[u] for u in prn.regulators(v)],
            contexts=prn.context_count(v),
        )
        for v in range(prn.node_count)
    ]
    return schemas.ModelInfo(
        model=model.name,
        nodes=prn.node_count,
        influences=len(prn.graph.influences),
        parameters=prn.param_count,
        parametrisations=prn.param_space_size(),
        admitted=box_size(p_abs_R(prn, R, ())),
        states=prn.state_space_size(),
        per_node=per_node,
        constraints=R.render(prn),
        minmax=R.minmax,
        x0=prn.format_state(model.x0),
    )


def reachable(model: ModelFile, R: Optional[ConstraintSet] = None) -> list[str]:
    """Reachable states of the model, one `name=value` line each, in ascending state order"""
    R = model.constraint_set if R is None else R
    result = build_cfp(model.prn, R, model.x0)
    return [model.prn.format_state(x) for x in sorted(reachable_states(result.net))]


def _trial(index: int, verdict: oracle.Verdict, subject: str = "") -> schemas.TrialResult:
    if not verdict:
        log.warning(
            "Check failed",
            trial=index,
            check=verdict.check,
            subject=subject,
            detail=verdict.detail,
        )
    return schemas.TrialResult(
        trial=index,
        check=verdict.check,
        passed=verdict.passed,
        detail=verdict.detail,
        subject=subject,
    )


def verify_model(
    model: ModelFile,
    R: Optional[ConstraintSet] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    limits: Optional[Limits] = None,
) -> schemas.VerifySummary:
    """
    Brute-force checks on one model: the boxes of the empty transition set and of every
    transition leaving the initial state, then prefix completeness from the initial state.
    """
    R = model.constraint_set if R is None else R
    prn = model.prn
    transition_sets = [()] + [(t,) for t in sorted(all_transitions(prn, model.x0))]
    trials = []
    for index, T in enumerate(transition_sets):
        subject = " ".join(format_transition(prn, t) for t in T)
        trials.append(_trial(index, oracle.check_theorem1(prn, T, cap), subject))
        trials.append(_trial(index, oracle.check_theorem2(prn, R, T, cap), subject))
    trials.append(
        _trial(len(transition_sets), oracle.check_cfp_completeness(prn, R, model.x0, cap, limits))
    )
    return schemas.VerifySummary(trials=trials)


def verify_random(
    seed: int,
    trials: int = DEFAULT_TRIALS,
    cap: int = DEFAULT_ENUMERATION_CAP,
    param_cap: int = DEFAULT_RANDOM_PARAM_CAP,
) -> schemas.VerifySummary:
    """Seeded random desk-scale instances, cycling through the constraint modes"""
    rng = random.Random(seed)
    results = []
    for index in range(trials):
        mode = oracle.MODES[index % len(oracle.MODES)]
        instance = oracle.random_instance(rng, mode=mode, param_cap=param_cap)
        prn, R = instance.prn, instance.constraints
        results.append(_trial(index, oracle.check_theorem1(prn, instance.transitions, cap)))
        results.append(
            _trial(index, oracle.check_theorem2(prn, R, instance.transitions, cap))
        )
        results.append(_trial(index, oracle.check_cfp_completeness(prn, R, instance.x0, cap)))
    log.info("Random verification done", seed=seed, trials=trials)
    return schemas.VerifySummary(trials=results)
