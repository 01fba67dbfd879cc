"""Local and global homogeneity of an array, plus the multi-hypergraph view.

Rows sharing a size-t credential form a neighborhood (a hyperedge).  The
weight of a pair of rows on a credential is 1/|neighborhood| when both
belong to it; closeness sums weights over all size-t credentials; local
homogeneity averages a row's closeness over its distinct neighbors.  All
arithmetic is exact (fractions); decimals appear only in rendering.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from .errors import InvalidParameterError
from .model import (
    AccessProfileArray,
    ColumnSet,
    Credential,
    count_credentials,
    enumerate_column_sets,
)

HYPERGRAPH_FORMATS = ("structured-json", "graph-description-text")


@dataclass(frozen=True)
class Neighborhood:
    column_set: ColumnSet
    credential: Credential
    members: FrozenSet[int]


@dataclass(frozen=True)
class HomogeneityReport:
    t: int
    local: Tuple[Fraction, ...]
    min: Fraction
    max: Fraction
    global_score: Fraction
    isolated: FrozenSet[int]


def neighborhoods(array: AccessProfileArray, t: int) -> List[Neighborhood]:
    """All neighborhoods, grouped by column set in lexicographic order.

    Multi-edges are preserved: the same member set may recur under
    different credentials.
    """
    if not 1 <= t <= array.k:
        raise InvalidParameterError(f"t={t} out of range for k={array.k}")
    out: List[Neighborhood] = []
    for cols in enumerate_column_sets(array.k, t):
        groups: Dict[tuple, List[int]] = {}
        for i, row in enumerate(array.rows):
            groups.setdefault(tuple(row[c] for c in cols), []).append(i)
        for values in sorted(groups):
            out.append(
                Neighborhood(
                    column_set=cols,
                    credential=Credential(tuple(zip(cols, values))),
                    members=frozenset(groups[values]),
                )
            )
    return out


def weight(i: int, j: int, neighborhood: Neighborhood) -> Fraction:
    """1/|members| when both rows share the credential, else 0."""
    if i == j:
        raise InvalidParameterError("self-weight is undefined")
    if i in neighborhood.members and j in neighborhood.members:
        return Fraction(1, len(neighborhood.members))
    return Fraction(0)


def closeness(i: int, j: int, array: AccessProfileArray, t: int) -> Fraction:
    """Sum of weights over every appearing size-t credential."""
    if i == j:
        raise InvalidParameterError("self-closeness is undefined")
    total = Fraction(0)
    for n in neighborhoods(array, t):
        total += weight(i, j, n)
    return total


def closeness_matrix(array: AccessProfileArray, t: int) -> List[List[Fraction]]:
    """Symmetric N x N closeness matrix with a zero diagonal."""
    n = array.n_rows
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for nb in neighborhoods(array, t):
        members = sorted(nb.members)
        w = Fraction(1, len(members))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                matrix[i][j] += w
                matrix[j][i] += w
    return matrix


def local_homogeneity(array: AccessProfileArray, t: int) -> HomogeneityReport:
    """Per-row homogeneity via the neighborhood accumulation shortcut.

    Each credential of row i with neighborhood size m contributes
    (m - 1)/m; the sum is divided by the number of distinct neighbors.
    Isolated rows receive the sentinel C(k, t) and are listed separately.
    """
    if not 1 <= t <= array.k:
        raise InvalidParameterError(f"t={t} out of range for k={array.k}")
    n = array.n_rows
    accum = [Fraction(0)] * n
    neighbor_sets: List[set] = [set() for _ in range(n)]
    for nb in neighborhoods(array, t):
        m = len(nb.members)
        share = Fraction(m - 1, m)
        for i in nb.members:
            accum[i] += share
            for j in nb.members:
                if j != i:
                    neighbor_sets[i].add(j)

    sentinel = Fraction(math.comb(array.k, t))
    local: List[Fraction] = []
    isolated = set()
    for i in range(n):
        if neighbor_sets[i]:
            local.append(accum[i] / len(neighbor_sets[i]))
        else:
            local.append(sentinel)
            isolated.add(i)
    global_score = sum(local, Fraction(0)) / n
    return HomogeneityReport(
        t=t,
        local=tuple(local),
        min=min(local),
        max=max(local),
        global_score=global_score,
        isolated=frozenset(isolated),
    )


def global_homogeneity(array: AccessProfileArray, t: int) -> Fraction:
    """Mean of the local homogeneity scores."""
    return local_homogeneity(array, t).global_score


def render_score(value: Fraction) -> str:
    """Decimal rendering at 6 significant digits."""
    return f"{float(value):.6g}"


def _vertex_label(array: AccessProfileArray, i: int) -> str:
    if array.row_labels is not None:
        return array.row_labels[i]
    return str(i + 1)


def export_hypergraph(array: AccessProfileArray, t: int, format: str) -> str:
    """Serialize the multi-hypergraph: row vertices, one edge per
    neighborhood labeled with its column set and credential values."""
    if format not in HYPERGRAPH_FORMATS:
        raise InvalidParameterError(
            f"unknown hypergraph format {format!r}; expected one of {HYPERGRAPH_FORMATS}"
        )
    schema = array.schema
    edges = neighborhoods(array, t)
    if format == "structured-json":
        doc = {
            "vertices": [
                {"id": i, "label": _vertex_label(array, i)}
                for i in range(array.n_rows)
            ],
            "edges": [
                {
                    "id": e,
                    "columns": [schema.attributes[c].name for c in nb.column_set],
                    "values": [
                        schema.attributes[a].values[v] for a, v in nb.credential.pairs
                    ],
                    "members": sorted(nb.members),
                }
                for e, nb in enumerate(edges)
            ],
        }
        return json.dumps(doc, indent=2)
    lines = [f"vertices: {array.n_rows}"]
    for e, nb in enumerate(edges):
        members = ",".join(str(m) for m in sorted(nb.members))
        cols = ",".join(schema.attributes[c].name for c in nb.column_set)
        vals = ",".join(schema.attributes[a].values[v] for a, v in nb.credential.pairs)
        lines.append(f"edge {e}: {{{members}}} columns={cols} values={vals}")
    return "\n".join(lines) + "\n"
