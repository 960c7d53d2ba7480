"""Knot and link invariants computed exactly from certified diagrams.

Two independent routes to the same numbers:

* the fast path: linking number as half the signed mutual-crossing count,
  and the second Conway coefficient via a two-arrow Gauss-diagram count
  (quadratic in the crossing number);
* the oracle: full Conway polynomial by crossing-switch/smoothing
  recursion down to descending diagrams, memoized on canonical diagram
  codes.

The fast path is calibrated once against the oracle (see the pattern
constants below) and the two are compared on every audited diagram; a
disagreement is an engine defect, raised as InvariantContractError.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import InvariantContractError, OracleLimitExceeded
from .geometry import IntPoint
from .projection import (
    FRAME_RETRY_LIMIT,
    GaussDiagram,
    LinkDiagram,
    Passage,
    diagram_for,
    gauss_diagram,
)

ORACLE_CROSSING_LIMIT = 20
AUDIT_CROSSING_LIMIT = 12


# ---------------------------------------------------------------------------
# Conway polynomial


@dataclass(frozen=True)
class ConwayPolynomial:
    """Polynomial in z with integer coefficients, constant term first."""

    coefficients: tuple[int, ...]

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    @property
    def a1(self) -> int:
        return self.coefficient(1)

    @property
    def a2(self) -> int:
        return self.coefficient(2)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"


def _poly_trim(cs: list[int]) -> tuple[int, ...]:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_add(a: tuple[int, ...], b: tuple[int, ...], bsign: int) -> tuple[int, ...]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += bsign * c
    return _poly_trim(out)


def _poly_shift(a: tuple[int, ...]) -> tuple[int, ...]:
    return (0,) + a if a else ()


Comps = tuple[tuple[Passage, ...], ...]


def _canonical_code(comps: Comps, signs: dict[int, int]):
    """Relabel crossings by first encounter so equal diagrams share a key."""
    relabel: dict[int, int] = {}
    for ps in comps:
        for cid, _ in ps:
            if cid not in relabel:
                relabel[cid] = len(relabel)
    code = tuple(tuple((relabel[c], o) for c, o in ps) for ps in comps)
    sgn = tuple(s for _, s in sorted((relabel[c], s) for c, s in signs.items()))
    return (code, sgn)


def _first_ascending(comps: Comps):
    """First crossing met on its under-strand before its over-strand."""
    seen: set[int] = set()
    for ci, ps in enumerate(comps):
        for pi, (cid, over) in enumerate(ps):
            if cid in seen:
                continue
            seen.add(cid)
            if not over:
                return ci, pi, cid
    return None


def _locate(comps: Comps, cid: int) -> list[tuple[int, int]]:
    return [
        (ci, pi)
        for ci, ps in enumerate(comps)
        for pi, (c, _) in enumerate(ps)
        if c == cid
    ]


def _switch(comps: Comps, cid: int) -> Comps:
    return tuple(
        tuple((c, (1 - o) if c == cid else o) for c, o in ps) for ps in comps
    )


def _smooth(comps: Comps, cid: int) -> Comps:
    """Orientation-respecting smoothing: split one component or merge two."""
    (ci, pi), (cj, pj) = _locate(comps, cid)
    if ci == cj:
        ps = comps[ci]
        first = ps[pi + 1 : pj]
        second = ps[pj + 1 :] + ps[:pi]
        return comps[:ci] + (first, second) + comps[ci + 1 :]
    x, y = comps[ci], comps[cj]
    merged = x[:pi] + y[pj + 1 :] + y[:pj] + x[pi + 1 :]
    out = list(comps)
    out[ci] = merged
    del out[cj]
    return tuple(out)


_CONWAY_MEMO: dict = {}


def _conway(comps: Comps, signs: dict[int, int]) -> tuple[int, ...]:
    key = _canonical_code(comps, signs)
    hit = _CONWAY_MEMO.get(key)
    if hit is not None:
        return hit
    bad = _first_ascending(comps)
    if bad is None:
        # Descending diagram: an unknot, or a split unlink if several
        # components remain.
        value = (1,) if len(comps) == 1 else ()
    else:
        _, _, cid = bad
        eps = signs[cid]
        switched = _switch(comps, cid)
        sw_signs = dict(signs)
        sw_signs[cid] = -eps
        smoothed = _smooth(comps, cid)
        sm_signs = {c: s for c, s in signs.items() if c != cid}
        a = _conway(switched, sw_signs)
        b = _poly_shift(_conway(smoothed, sm_signs))
        value = _poly_add(a, b, eps)
    _CONWAY_MEMO[key] = value
    return value


def conway_skein_oracle(
    d: LinkDiagram, limit: int = ORACLE_CROSSING_LIMIT
) -> ConwayPolynomial:
    """Full Conway polynomial of a diagram by skein recursion.

    Deliberately the slow, independent route: switch the first crossing
    met under-first (a step toward a descending diagram) and smooth it
    (one crossing fewer), recursing on both.  Intended for diagrams of
    at most `limit` crossings.
    """
    if d.crossing_count > limit:
        raise OracleLimitExceeded(
            f"{d.crossing_count} crossings exceeds oracle limit {limit}"
        )
    counts: dict[int, int] = {}
    for ps in d.passages:
        for cid, _ in ps:
            counts[cid] = counts.get(cid, 0) + 1
    if any(c != 2 for c in counts.values()) or len(counts) != d.crossing_count:
        raise ValueError("every crossing must be passed exactly twice")
    signs = {cid: d.signs[cid] for cid in range(d.crossing_count)}
    return ConwayPolynomial(_conway(d.passages, signs))


# ---------------------------------------------------------------------------
# Linking number


def linking_number(d: LinkDiagram) -> int:
    """Half the signed count of crossings between the two components."""
    if d.component_count != 2:
        raise ValueError("linking number needs a two-component diagram")
    comps_of: dict[int, set[int]] = {}
    for ci, ps in enumerate(d.passages):
        for cid, _ in ps:
            comps_of.setdefault(cid, set()).add(ci)
    total = sum(d.signs[cid] for cid, cs in comps_of.items() if len(cs) == 2)
    if total % 2 != 0:
        raise InvariantContractError("odd signed mutual-crossing total")
    return total // 2


# ---------------------------------------------------------------------------
# Second Conway coefficient from the Gauss diagram

# A two-arrow pattern is (first_over, second_over): an interleaved arrow
# pair contributes when the earlier-starting arrow is first met on its
# over (resp. under) strand per first_over, and likewise for the later
# one; contributions are products of crossing signs, scaled by A2_SIGN.
# Calibration against the skein oracle on both chiralities of the (2,3),
# (2,5), (2,7) torus diagrams, a figure-eight polygon, and a randomized
# 120-polygon suite leaves exactly the two mirror-dual patterns
# ((True, False), +1) and ((False, True), +1); the first is fixed here
# and the tests lock the choice in.
A2_PATTERN = (True, False)
A2_SIGN = 1

_ALL_PATTERNS = [
    ((f, s), g) for f in (False, True) for s in (False, True) for g in (1, -1)
]


def _a2_with_pattern(g: GaussDiagram, pattern: tuple[bool, bool], sign: int) -> int:
    arrows = g.arrows
    total = 0
    for i in range(len(arrows)):
        oi, ui, si = arrows[i]
        a1, a2 = (oi, ui) if oi < ui else (ui, oi)
        a_first_over = oi < ui
        for j in range(len(arrows)):
            if j == i:
                continue
            oj, uj, sj = arrows[j]
            b1, b2 = (oj, uj) if oj < uj else (uj, oj)
            if not (a1 < b1 < a2 < b2):
                continue
            # arrows i and j interleave with i starting first
            b_first_over = oj < uj
            if a_first_over == pattern[0] and b_first_over == pattern[1]:
                total += si * sj
    return sign * total


def a2_gauss_formula(g: GaussDiagram) -> int:
    """Second Conway coefficient by the calibrated two-arrow count.

    Quadratic in the number of crossings; evaluated at the diagram's
    stored basepoint.  Equality with the oracle's z^2 coefficient is
    asserted on every audited diagram rather than assumed.
    """
    return _a2_with_pattern(g, A2_PATTERN, A2_SIGN)


def calibrate_a2_patterns(
    samples: Iterable[tuple[GaussDiagram, int]]
) -> list[tuple[tuple[bool, bool], int]]:
    """All two-arrow patterns reproducing the expected value on every sample."""
    survivors = list(_ALL_PATTERNS)
    for g, expected in samples:
        survivors = [
            (p, s) for p, s in survivors if _a2_with_pattern(g, p, s) == expected
        ]
        if not survivors:
            break
    return survivors


# ---------------------------------------------------------------------------
# Stick-number consequences


def stick_bound_a2(n: int) -> int:
    """Largest second Conway coefficient an n-stick polygon can carry."""
    if n < 6:
        raise ValueError("bound defined for n >= 6")
    return (n - 3) ** 2 * (n - 4) ** 2 // 32


def classify_triangle_triangle(lk_value: int, rectilinear: bool) -> str:
    """Classify a triangle-triangle pair by linking number.

    Six-stick pairs in a straight-edge embedding are trivial or Hopf, so
    |lk| >= 2 under the rectilinear flag is impossible and is reported as
    "other" for the caller to surface as a contract violation.
    """
    if lk_value == 0:
        return "trivial"
    if abs(lk_value) == 1:
        return "hopf"
    return "other" if rectilinear else "nontrivial"


# ---------------------------------------------------------------------------
# Frame-verified invariant records


@dataclass(frozen=True)
class InvariantRecord:
    """One cycle's (or pair's) invariant with its certification context.

    `value` was computed from the first accepted frame (index
    `frame_index` in the deterministic sequence) and reproduced
    identically on `verified_frames` further accepted frames;
    `crossing_count` is from the first accepted diagram.  `audited` marks
    diagrams small enough for the oracle cross-check, which then also
    agreed.
    """

    subject: tuple
    value: int
    crossing_count: int
    frame_index: int
    verified_frames: int
    audited: bool


def _a2_of_diagram(d: LinkDiagram) -> int:
    return a2_gauss_formula(gauss_diagram(d))


def _audit_knot(d: LinkDiagram, value: int) -> None:
    oracle = conway_skein_oracle(d)
    if oracle.a2 != value:
        raise InvariantContractError(
            f"gauss-formula a2 {value} != oracle a2 {oracle.a2}"
        )


def _audit_link(d: LinkDiagram, value: int) -> None:
    oracle = conway_skein_oracle(d)
    if oracle.a1 != value:
        raise InvariantContractError(
            f"linking number {value} != oracle z^1 coefficient {oracle.a1}"
        )


def _verified_value(
    curves: Sequence[tuple[IntPoint, ...]],
    evaluate: Callable[[LinkDiagram], int],
    audit: Callable[[LinkDiagram, int], None] | None,
    seed,
    verify_frames: int,
    retry_limit: int,
) -> tuple[int, int, int, bool]:
    value = None
    first_count = 0
    first_index = 0
    audited = False
    accepted = 0
    for dia, index in diagram_for(curves, seed, retry_limit):
        v = evaluate(dia)
        if value is None:
            value, first_count, first_index = v, dia.crossing_count, index
            if audit is not None and dia.crossing_count <= AUDIT_CROSSING_LIMIT:
                audit(dia, v)
                audited = True
        elif v != value:
            raise InvariantContractError(
                f"frame {index} disagrees: {v} != {value} (frame {first_index})"
            )
        accepted += 1
        if accepted > verify_frames:
            break
    return value, first_count, first_index, audited


def knot_invariant(
    points: tuple[IntPoint, ...],
    seed,
    verify_frames: int = 1,
    retry_limit: int = FRAME_RETRY_LIMIT,
    audit: bool = False,
) -> tuple[int, int, int, bool]:
    """(a2, crossing count, frame index, audited) for one closed polygon."""
    return _verified_value(
        (points,),
        _a2_of_diagram,
        _audit_knot if audit else None,
        seed,
        verify_frames,
        retry_limit,
    )


def link_invariant(
    points_a: tuple[IntPoint, ...],
    points_b: tuple[IntPoint, ...],
    seed,
    verify_frames: int = 1,
    retry_limit: int = FRAME_RETRY_LIMIT,
    audit: bool = False,
) -> tuple[int, int, int, bool]:
    """(lk, crossing count, frame index, audited) for a curve pair."""
    return _verified_value(
        (points_a, points_b),
        linking_number,
        _audit_link if audit else None,
        seed,
        verify_frames,
        retry_limit,
    )
