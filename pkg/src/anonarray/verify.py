"""Anonymity guarantee computation and validation.

The guarantee r for a maximum credential size t is the smallest number of
rows sharing any appearing size-t credential, minimized over every
allowed t-subset of columns; don't-care credentials are exempt and a hard
constraint appearing anywhere forces r = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .constraints import (
    DONT_CARE,
    EMPTY_CONSTRAINTS,
    SOFT,
    ConstraintSet,
    classify,
)
from .errors import InvalidParameterError
from .model import (
    AccessProfileArray,
    ColumnSet,
    Credential,
    count_credentials,
    credential_count,
    enumerate_column_sets,
)


@dataclass(frozen=True)
class GuaranteeReport:
    t: int
    r: int
    min_witness: Optional[Tuple[ColumnSet, Credential, int]]
    hard_violations: Tuple[Tuple[int, Credential], ...]
    soft_appearances: Tuple[Tuple[Credential, int], ...]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    # (column_set, credential, count, kind) for every appearing credential
    # short of the target; kind annotates soft constraints.
    violations: Tuple[Tuple[Optional[ColumnSet], Credential, int, str], ...]
    report: GuaranteeReport


@dataclass(frozen=True)
class AnonymityProfile:
    entries: Tuple[Tuple[int, int], ...]
    hard_violations: Tuple[Tuple[int, Credential], ...] = ()


def _check_inputs(array: AccessProfileArray, t: int, constraints: ConstraintSet) -> None:
    if not 1 <= t <= array.k:
        raise InvalidParameterError(f"t={t} out of range for k={array.k}")
    try:
        constraints.validate_for(array.schema)
    except InvalidParameterError as exc:
        raise InvalidParameterError(
            f"constraints do not match the array schema: {exc}"
        ) from exc


def _hard_violations(
    array: AccessProfileArray, t: int, constraints: ConstraintSet
) -> Tuple[Tuple[int, Credential], ...]:
    out = []
    active = sorted(h for h in constraints.hard if len(h) <= t)
    for i, row in enumerate(array.rows):
        for h in active:
            if h.contained_in_row(row):
                out.append((i, h))
    return tuple(out)


def compute_guarantee(
    array: AccessProfileArray,
    t: int,
    constraints: ConstraintSet = EMPTY_CONSTRAINTS,
    allowed_column_sets: Optional[Sequence[ColumnSet]] = None,
) -> GuaranteeReport:
    """Largest r for which the array is (r, t)-anonymous; 0 on hard violation.

    `allowed_column_sets` restricts the scan when policies may use only
    some t-subsets of attributes; default is all C(k, t) subsets.
    """
    _check_inputs(array, t, constraints)
    violations = _hard_violations(array, t, constraints)

    if allowed_column_sets is None:
        column_sets = list(enumerate_column_sets(array.k, t))
    else:
        column_sets = [tuple(sorted(cs)) for cs in allowed_column_sets]
        for cs in column_sets:
            if len(cs) != t or any(not 0 <= c < array.k for c in cs):
                raise InvalidParameterError(f"invalid column set {cs} for t={t}")

    best: Optional[int] = None
    witness: Optional[Tuple[ColumnSet, Credential, int]] = None
    for cols in column_sets:
        table = count_credentials(array, cols)
        for values in sorted(table.counts):
            cred = Credential(tuple(zip(cols, values)))
            if classify(cred, constraints) == DONT_CARE:
                continue
            count = table.counts[values]
            if best is None or count < best:
                best = count
                witness = (cols, cred, count)

    soft_appearances = tuple(
        (s, credential_count(array, s))
        for s in sorted(constraints.soft)
        if len(s) <= t and credential_count(array, s) > 0
    )

    if violations:
        return GuaranteeReport(
            t=t,
            r=0,
            min_witness=witness,
            hard_violations=violations,
            soft_appearances=soft_appearances,
        )
    # Every counted credential may be don't-care; the guarantee is then
    # vacuous and reported as N.
    r = best if best is not None else array.n_rows
    return GuaranteeReport(
        t=t,
        r=r,
        min_witness=witness,
        hard_violations=(),
        soft_appearances=soft_appearances,
    )


def validate(
    array: AccessProfileArray,
    r_target: int,
    t: int,
    constraints: ConstraintSet = EMPTY_CONSTRAINTS,
    allowed_column_sets: Optional[Sequence[ColumnSet]] = None,
) -> ValidationResult:
    """Check (r_target, t)-anonymity, listing every short credential.

    Soft constraints must appear zero times or at least r_target times;
    smaller-than-t soft credentials are checked by direct row containment.
    """
    if r_target < 1:
        raise InvalidParameterError("r_target must be at least 1")
    report = compute_guarantee(array, t, constraints, allowed_column_sets)

    violations: List[Tuple[Optional[ColumnSet], Credential, int, str]] = []
    if allowed_column_sets is None:
        column_sets = list(enumerate_column_sets(array.k, t))
    else:
        column_sets = [tuple(sorted(cs)) for cs in allowed_column_sets]
    for cols in column_sets:
        table = count_credentials(array, cols)
        for values in sorted(table.counts):
            cred = Credential(tuple(zip(cols, values)))
            kind = classify(cred, constraints)
            if kind == DONT_CARE:
                continue
            count = table.counts[values]
            if 0 < count < r_target:
                violations.append((cols, cred, count, kind))
    for s in sorted(constraints.soft):
        if len(s) < t:
            count = credential_count(array, s)
            if 0 < count < r_target:
                violations.append((None, s, count, SOFT))

    ok = not report.hard_violations and not violations and report.r >= r_target
    return ValidationResult(ok=ok, violations=tuple(violations), report=report)


def is_anonymizing_for(
    base: AccessProfileArray,
    extended: AccessProfileArray,
    r: int,
    t: int,
    constraints: ConstraintSet = EMPTY_CONSTRAINTS,
) -> bool:
    """True when `extended` contains `base` as a row multiset and is
    (r, t)-anonymous under the constraints."""
    if base.schema != extended.schema:
        raise InvalidParameterError("base and extended arrays must share a schema")
    base_counts = base.row_multiset()
    ext_counts = extended.row_multiset()
    for row, count in base_counts.items():
        if ext_counts.get(row, 0) < count:
            return False
    return validate(extended, r, t, constraints).ok


def anonymity_profile(
    array: AccessProfileArray,
    constraints: ConstraintSet = EMPTY_CONSTRAINTS,
    t_max: Optional[int] = None,
) -> AnonymityProfile:
    """(t, r) pairs for t = 1 upward, stopping at the first r <= 1.

    A hard violation collapses the profile to a single (t, 0) entry with
    the violating rows attached.
    """
    limit = array.k if t_max is None else t_max
    if not 1 <= limit <= array.k:
        raise InvalidParameterError(f"t_max={t_max} out of range for k={array.k}")
    entries: List[Tuple[int, int]] = []
    for t in range(1, limit + 1):
        report = compute_guarantee(array, t, constraints)
        if report.hard_violations:
            return AnonymityProfile(
                entries=((t, 0),), hard_violations=report.hard_violations
            )
        entries.append((t, report.r))
        if report.r <= 1:
            break
    return AnonymityProfile(entries=tuple(entries))
