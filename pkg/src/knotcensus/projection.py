"""Certified-generic projections of spatial curves to link diagrams.

A projection frame is an integer right-handed triple (u, v, d): points
map to (u.p, v.p) in the diagram plane and d.p is the height used to
resolve over/under at each crossing.  A frame is accepted only if the
kernel's exactness checks all pass (no degenerate segment, no coincident
or incident corner projections, all crossings transverse, no two
crossings at the same point); otherwise the caller advances along a
deterministic frame sequence.

Every numeric decision in this pipeline is an integer sign test, so an
accepted diagram is certified correct, not approximately correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from random import Random
from typing import Iterator, Sequence

from . import kernels
from .errors import GenericityExhausted, GenericityFailure
from .geometry import IntPoint, _cross, _dot, _is_zero

FRAME_RETRY_LIMIT = 64

_FAIL_NAMES = {
    kernels.FAIL_DEGENERATE_SEGMENT: "degenerate-segment",
    kernels.FAIL_VERTEX_COINCIDE: "vertex-coincide",
    kernels.FAIL_VERTEX_ON_SEGMENT: "vertex-on-segment",
}


@dataclass(frozen=True)
class ProjectionFrame:
    """Right-handed integer frame: plane axes u, v and view direction d."""

    axis_u: IntPoint
    axis_v: IntPoint
    direction: IntPoint

    def __post_init__(self):
        d = _dot(_cross(self.axis_u, self.axis_v), self.direction)
        if d <= 0:
            raise ValueError("frame must be right-handed")


def _reduce(p: IntPoint) -> IntPoint:
    g = gcd(gcd(abs(p[0]), abs(p[1])), abs(p[2]))
    return p if g in (0, 1) else (p[0] // g, p[1] // g, p[2] // g)


def frame_from_direction(d: IntPoint) -> ProjectionFrame:
    """Complete a nonzero integer direction to a right-handed frame.

    u is d crossed with whichever coordinate axis is least aligned with
    d, and v = d x u; then det(u, v, d) = |u|^2 |d|^2 ... > 0.  Axes are
    gcd-reduced: rescaling u or v by a positive factor rescales one
    projected coordinate, which changes no sign test.
    """
    d = _reduce(d)
    if _is_zero(d):
        raise ValueError("direction must be nonzero")
    ax = min(range(3), key=lambda i: abs(d[i]))
    e = tuple(1 if i == ax else 0 for i in range(3))
    u = _reduce(_cross(e, d))
    v = _reduce(_cross(d, u))
    return ProjectionFrame(u, v, d)


def frame_sequence(seed) -> Iterator[ProjectionFrame]:
    """Deterministic infinite sequence of candidate frames.

    Directions are drawn from a seeded generator, small components first
    so the compiled kernel's fixed-width budget is generous; after a few
    dozen failures the pool widens.  The same seed always yields the
    same sequence, on every platform.
    """
    rng = Random(f"frames:{seed}")
    emitted = 0
    seen: set[IntPoint] = set()
    while True:
        bound = 9 if emitted < 32 else 99
        d = (rng.randint(-bound, bound), rng.randint(-bound, bound), rng.randint(-bound, bound))
        if d == (0, 0, 0):
            continue
        d = _reduce(d)
        if d in seen:
            continue
        seen.add(d)
        emitted += 1
        yield frame_from_direction(d)


@dataclass(frozen=True)
class Crossing:
    """One transverse crossing of a regular diagram.

    Segments are global indices into the concatenated walk of all
    components; parameters locate the crossing exactly within each
    segment, strictly between its ends.
    """

    over_segment: int
    under_segment: int
    sign: int
    over_param: Fraction
    under_param: Fraction


Passage = tuple[int, int]  # (crossing id, 1 if passing over else 0)


@dataclass(frozen=True)
class LinkDiagram:
    """A regular diagram: oriented components with ordered passages.

    `passages[c]` lists, in traversal order from component c's basepoint,
    the crossings met along c with an over/under flag; `signs[i]` is the
    sign of crossing i.  `components` keeps the projected source polygons
    when the diagram came from geometry, and is None for diagrams built
    combinatorially (the skein oracle needs only passages and signs).
    """

    passages: tuple[tuple[Passage, ...], ...]
    signs: tuple[int, ...]
    crossings: tuple[Crossing, ...] | None = None
    components: tuple[tuple[IntPoint, ...], ...] | None = None

    @property
    def component_count(self) -> int:
        return len(self.passages)

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    def writhe_partition(self) -> tuple[int, int]:
        """(sum of self-crossing signs, sum of mutual-crossing signs)."""
        comp_of: dict[int, set[int]] = {}
        for ci, ps in enumerate(self.passages):
            for cid, _ in ps:
                comp_of.setdefault(cid, set()).add(ci)
        self_sum = sum(self.signs[c] for c, cs in comp_of.items() if len(cs) == 1)
        mutual_sum = sum(self.signs[c] for c, cs in comp_of.items() if len(cs) == 2)
        return self_sum, mutual_sum


def project(curves: Sequence[tuple[IntPoint, ...]], frame: ProjectionFrame) -> LinkDiagram:
    """Project closed integer polygons through a frame to a diagram.

    Raises GenericityFailure when the frame is not generic for these
    curves, and ValueError if the curves actually touch in 3-space.
    """
    polys = tuple(tuple(map(tuple, c)) for c in curves)
    if not 1 <= len(polys) <= 2:
        raise ValueError("expected one or two closed curves")
    for p in polys:
        if len(p) < 3:
            raise ValueError("a closed polygon needs at least 3 points")
    status, payload = kernels.find_crossings(
        polys, frame.axis_u, frame.axis_v, frame.direction
    )
    if status == kernels.FAIL_INTERSECT_3D:
        raise ValueError(f"curves intersect in 3-space near segments {payload}")
    if status != kernels.OK:
        raise GenericityFailure(_FAIL_NAMES[status], payload)
    return _assemble(polys, payload)


def _assemble(polys, raw) -> LinkDiagram:
    nseg = sum(len(p) for p in polys)
    on_segment: list[list[tuple[int, int, int]]] = [[] for _ in range(nseg)]
    for idx, (si, sj, tn, sn, den, i_over, sign) in enumerate(raw):
        on_segment[si].append((tn, den, idx))
        on_segment[sj].append((sn, den, idx))

    # Exact parameter sort along each segment; a tie is two crossings at
    # one diagram point, which a generic frame must not produce.
    for s, items in enumerate(on_segment):
        items.sort(key=lambda it: Fraction(it[0], it[1]))
        for (n1, d1, a), (n2, d2, b) in zip(items, items[1:]):
            if n1 * d2 == n2 * d1:
                raise GenericityFailure("triple-point", (s, a, b))

    seg_of_curve: list[range] = []
    base = 0
    for p in polys:
        seg_of_curve.append(range(base, base + len(p)))
        base += len(p)

    # Walk the components; relabel crossings by first encounter.
    relabel: dict[int, int] = {}
    passages: list[tuple[Passage, ...]] = []
    for ci, segs in enumerate(seg_of_curve):
        ps: list[Passage] = []
        for s in segs:
            for _, _, idx in on_segment[s]:
                cid = relabel.setdefault(idx, len(relabel))
                over = 1 if (raw[idx][5] == 1) == (raw[idx][0] == s) else 0
                ps.append((cid, over))
        passages.append(tuple(ps))

    signs = [0] * len(raw)
    crossings: list[Crossing | None] = [None] * len(raw)
    for idx, (si, sj, tn, sn, den, i_over, sign) in enumerate(raw):
        cid = relabel.setdefault(idx, len(relabel))
        signs[cid] = sign
        if i_over:
            crossings[cid] = Crossing(si, sj, sign, Fraction(tn, den), Fraction(sn, den))
        else:
            crossings[cid] = Crossing(sj, si, sign, Fraction(sn, den), Fraction(tn, den))

    diagram = LinkDiagram(
        passages=tuple(passages),
        signs=tuple(signs),
        crossings=tuple(crossings),
        components=polys,
    )
    if diagram.component_count == 2:
        mutual = sum(
            1
            for cid in range(diagram.crossing_count)
            if sum(any(c == cid for c, _ in ps) for ps in diagram.passages) == 2
        )
        if mutual % 2 != 0:
            raise AssertionError("odd number of mutual crossings in a closed-curve diagram")
    return diagram


def diagram_for(
    curves: Sequence[tuple[IntPoint, ...]],
    seed,
    retry_limit: int = FRAME_RETRY_LIMIT,
) -> Iterator[tuple[LinkDiagram, int]]:
    """Yield certified diagrams of the curves along the frame sequence.

    Yields (diagram, frame_index) for each accepted frame; raises
    GenericityExhausted once `retry_limit` frames have failed in total.
    """
    failures = 0
    last: GenericityFailure | None = None
    for index, frame in enumerate(frame_sequence(seed)):
        try:
            yield project(curves, frame), index
        except GenericityFailure as exc:
            failures += 1
            last = exc
            if failures >= retry_limit:
                raise GenericityExhausted(failures, last) from exc


@dataclass(frozen=True)
class GaussDiagram:
    """Chord diagram of a knot diagram read from its basepoint.

    Arrow i is (over_pos, under_pos, sign): the two walk positions (in
    0..2c-1) at which crossing i is passed over and under.
    """

    arrows: tuple[tuple[int, int, int], ...]

    @property
    def length(self) -> int:
        return 2 * len(self.arrows)


def gauss_diagram(d: LinkDiagram) -> GaussDiagram:
    """Gauss diagram of a one-component diagram."""
    if d.component_count != 1:
        raise ValueError("gauss diagram needs a knot diagram (one component)")
    over_pos: dict[int, int] = {}
    under_pos: dict[int, int] = {}
    for pos, (cid, over) in enumerate(d.passages[0]):
        (over_pos if over else under_pos)[cid] = pos
    if set(over_pos) != set(under_pos):
        raise ValueError("every crossing must be passed once over and once under")
    arrows = tuple(
        (over_pos[c], under_pos[c], d.signs[c]) for c in sorted(over_pos)
    )
    return GaussDiagram(arrows)
