"""Kauffman bracket evaluation on planar diagrams, plus diagram builders.

Diagrams are PD-coded: each crossing is a 4-tuple of arc labels listed
counterclockwise starting from the inbound under-strand, so the under-strand
occupies slots 0 and 2.  Crossing-free unknot components are carried in a
separate counter since they never touch an arc label.

The evaluator is a frontier state sum: crossings are resolved one at a time
and partial resolutions are merged whenever they induce the same planar
matching on the dangling arc ends.  Loop closures contribute delta = -A^2 -
A^-2, and the empty diagram evaluates to 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from .cyclotomic import CycContext, CycNum
from .laurent import IntLaurent, ONE


class LaurentCoeffs:
    """Coefficient adapter for generic evaluation over Z[A, A^-1]."""

    one = ONE
    delta = IntLaurent({2: -1, -2: -1})

    @staticmethod
    def a_pow(k: int) -> IntLaurent:
        return IntLaurent.monomial(1, k)


class RootCoeffs:
    """Coefficient adapter for evaluation with A specialized to a root of unity."""

    def __init__(self, ctx: CycContext):
        self.ctx = ctx
        self.one = ctx.one
        self.delta = -(ctx.A_pow(2) + ctx.A_pow(-2))

    def a_pow(self, k: int) -> CycNum:
        return self.ctx.A_pow(k)


class CapExceeded(Exception):
    """Raised when a diagram exceeds the configured crossing cap."""


@dataclass(frozen=True)
class LinkDiagram:
    """A PD-coded link diagram with an explicit count of crossing-free loops."""

    pd: tuple[tuple[int, int, int, int], ...]
    loops: int = 0

    def __post_init__(self):
        counts: dict[int, int] = {}
        for cr in self.pd:
            if len(cr) != 4:
                raise ValueError("PD crossings must be 4-tuples")
            for a in cr:
                counts[a] = counts.get(a, 0) + 1
        bad = [a for a, c in counts.items() if c != 2]
        if bad:
            raise ValueError(f"arcs must appear exactly twice, offenders: {sorted(bad)}")
        if self.loops < 0:
            raise ValueError("loop count must be nonnegative")

    @property
    def crossings(self) -> int:
        return len(self.pd)

    def components(self) -> list[tuple[int, ...]]:
        """Arc sets of the link components; crossing-free loops come last as ()."""
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for cr in self.pd:
            for a in cr:
                parent.setdefault(a, a)
        for a, b, c, d in self.pd:
            union(a, c)
            union(b, d)
        groups: dict[int, list[int]] = {}
        for a in parent:
            groups.setdefault(find(a), []).append(a)
        comps = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda t: t[0])
        return comps + [()] * self.loops

    @property
    def mu(self) -> int:
        return len(self.components())

    def to_json(self) -> dict:
        return {"pd": [list(cr) for cr in self.pd], "loops": self.loops}

    @staticmethod
    def from_json(obj: dict) -> "LinkDiagram":
        return LinkDiagram(
            tuple(tuple(int(x) for x in cr) for cr in obj.get("pd", [])),
            int(obj.get("loops", 0)),
        )


def _crossing_order(pd: Sequence[tuple[int, int, int, int]]) -> list[int]:
    # Greedy ordering that keeps the dangling frontier small: always pick the
    # crossing sharing the most arcs with those already resolved.
    remaining = set(range(len(pd)))
    seen: set[int] = set()
    order: list[int] = []
    while remaining:
        best = max(
            sorted(remaining),
            key=lambda i: sum(1 for a in pd[i] if a in seen),
        )
        order.append(best)
        remaining.discard(best)
        seen.update(pd[best])
    return order


def kauffman_bracket(diagram: LinkDiagram, coeffs=LaurentCoeffs, max_crossings: int | None = None):
    """Evaluate the bracket; <empty> = 1 and each loop closure contributes delta."""
    if max_crossings is not None and diagram.crossings > max_crossings:
        raise CapExceeded(f"{diagram.crossings} crossings exceeds cap {max_crossings}")
    pd = diagram.pd
    order = _crossing_order(pd)

    # Ends of an arc are (arc, 0) and (arc, 1), numbered in processing order.
    occ: dict[int, int] = {}
    slot_ends: list[tuple] = []
    for idx in order:
        ends = []
        for a in pd[idx]:
            k = occ.get(a, 0)
            occ[a] = k + 1
            ends.append((a, k))
        slot_ends.append(tuple(ends))

    def other(e):
        return (e[0], 1 - e[1])

    def apply_pair(m: dict, u, v) -> int:
        # Connect free ends u and v; returns 1 if this closes a loop.
        if u in m:
            pu = m.pop(u)
            del m[pu]
        else:
            pu = other(u)
        if pu == v:
            return 1
        if v in m:
            pv = m.pop(v)
            del m[pv]
        else:
            pv = other(v)
        m[pu] = pv
        m[pv] = pu
        return 0

    delta = coeffs.delta
    weight_a = coeffs.a_pow(1)
    weight_b = coeffs.a_pow(-1)
    states = {frozenset(): coeffs.one}
    for ends in slot_ends:
        e0, e1, e2, e3 = ends
        new_states: dict[frozenset, object] = {}
        for key, val in states.items():
            for pairs, w in (((e0, e1, e2, e3), weight_a), ((e0, e3, e1, e2), weight_b)):
                m = dict(key)
                closed = apply_pair(m, pairs[0], pairs[1])
                closed += apply_pair(m, pairs[2], pairs[3])
                term = val * w
                for _ in range(closed):
                    term = term * delta
                k2 = frozenset(m.items())
                if k2 in new_states:
                    new_states[k2] = new_states[k2] + term
                else:
                    new_states[k2] = term
        states = new_states
    assert len(states) == 1 and frozenset() in states
    out = states[frozenset()]
    for _ in range(diagram.loops):
        out = out * delta
    return out


# ---------------------------------------------------------------------------
# braid closures


def _check_word(word: Sequence[int], strands: int):
    if strands < 1:
        raise ValueError("need at least one strand")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise ValueError(f"bad generator {g} for {strands} strands")


def braid_pd(word: Sequence[int], strands: int) -> LinkDiagram:
    """Plat-free closure of a braid word; generator ±i crosses strands i, i+1."""
    _check_word(word, strands)
    current = list(range(1, strands + 1))
    fresh = strands + 1
    crossings: list[tuple[int, int, int, int]] = []
    for g in word:
        i = abs(g)
        x, y = current[i - 1], current[i]
        u, v = fresh, fresh + 1
        fresh += 2
        if g > 0:
            crossings.append((x, u, v, y))
        else:
            crossings.append((y, x, u, v))
        current[i - 1], current[i] = u, v

    # Closure identifies the bottom label at each position with the top label.
    parent = {a: a for a in range(1, fresh)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pos in range(strands):
        ra, rb = find(pos + 1), find(current[pos])
        if ra != rb:
            parent[ra] = rb
    pd = tuple(tuple(find(a) for a in cr) for cr in crossings)
    used = {a for cr in pd for a in cr}
    roots = {find(a) for a in range(1, fresh)}
    loops = sum(1 for r in roots if r not in used)
    return LinkDiagram(pd, loops)


def braid_permutation(word: Sequence[int], strands: int) -> list[int]:
    """perm[i] = final position of the strand starting at position i (0-based)."""
    _check_word(word, strands)
    pos = list(range(strands))  # pos[p] = strand currently at position p
    for g in word:
        i = abs(g) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    perm = [0] * strands
    for p, s in enumerate(pos):
        perm[s] = p
    return perm


def braid_components(word: Sequence[int], strands: int) -> list[tuple[int, ...]]:
    """Components of the closure as cycles of starting positions (0-based)."""
    perm = braid_permutation(word, strands)
    seen = [False] * strands
    comps = []
    for s in range(strands):
        if seen[s]:
            continue
        cyc = []
        t = s
        while not seen[t]:
            seen[t] = True
            cyc.append(t)
            t = perm[t]
        comps.append(tuple(sorted(cyc)))
    return sorted(comps)


def braid_linking_matrix(word: Sequence[int], strands: int) -> list[list[int]]:
    """Pairwise linking numbers of the closure components (diagonal = writhe)."""
    comps = braid_components(word, strands)
    comp_of = {}
    for ci, cyc in enumerate(comps):
        for s in cyc:
            comp_of[s] = ci
    n = len(comps)
    half = [[0] * n for _ in range(n)]
    pos = list(range(strands))
    for g in word:
        i = abs(g) - 1
        s1, s2 = pos[i], pos[i + 1]
        c1, c2 = comp_of[s1], comp_of[s2]
        sign = 1 if g > 0 else -1
        half[c1][c2] += sign
        if c1 != c2:
            half[c2][c1] += sign
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    # Inter-component crossings pair up; self-crossings count once for writhe.
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[a][b] = half[a][b] // 2 if a != b else half[a][b]
    return out


def cable_braid(word: Sequence[int], strands: int, widths: Sequence[int]) -> tuple[list[int], int]:
    """Replace each strand by parallel copies; widths are per starting strand.

    All strands of a closure component must share a width.  A width may be 0,
    which deletes the strand (used nowhere for colors, but harmless).
    """
    _check_word(word, strands)
    if len(widths) != strands or any(w < 0 for w in widths):
        raise ValueError("need one nonnegative width per strand")
    for cyc in braid_components(word, strands):
        if len({widths[s] for s in cyc}) != 1:
            raise ValueError("cable widths must be constant on components")
    cur = [widths[s] for s in range(strands)]
    out: list[int] = []
    for g in word:
        i = abs(g)
        u, v = cur[i - 1], cur[i]
        base = 1 + sum(cur[: i - 1])
        block = [base + u - 1 - k + l for k in range(u) for l in range(v)]
        if g > 0:
            out.extend(block)
        else:
            out.extend(-b for b in reversed(block))
        cur[i - 1], cur[i] = v, u
    return out, sum(widths)


# ---------------------------------------------------------------------------
# component deletion and sublink sums


def delete_components(diagram: LinkDiagram, kill: Iterable[int]) -> LinkDiagram:
    """Remove the named components (indices into diagram.components())."""
    comps = diagram.components()
    kill = set(kill)
    for k in kill:
        if not 0 <= k < len(comps):
            raise ValueError(f"no component {k}")
    dead_arcs = {a for k in kill for a in comps[k]}

    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    kept: list[tuple[int, int, int, int]] = []
    for a, b, c, d in diagram.pd:
        under_dead = a in dead_arcs
        over_dead = b in dead_arcs
        if under_dead and over_dead:
            continue
        if under_dead:
            union(b, d)
        elif over_dead:
            union(a, c)
        else:
            kept.append((a, b, c, d))
    pd = tuple(tuple(find(x) for x in cr) for cr in kept)
    used = {a for cr in pd for a in cr}
    # Surviving crossing components that lost every crossing become bare loops.
    freed = 0
    for ci, arcs in enumerate(comps):
        if ci in kill or not arcs:
            continue
        if not any(find(a) in used for a in arcs):
            freed += 1
    surviving_loops = sum(1 for ci in range(len(comps)) if ci not in kill and not comps[ci])
    return LinkDiagram(pd, freed + surviving_loops)


def bracket_z_plus_const(diagram: LinkDiagram, const, coeffs=LaurentCoeffs,
                         max_crossings: int | None = None):
    """Bracket with every component colored z + const, via the sublink sum.

    Coloring a component by z keeps the curve; the constant term deletes it.
    Summing over the 2^mu choices needs no cabling.
    """
    comps = diagram.components()
    mu = len(comps)
    total = None
    for mask in range(1 << mu):
        kill = [i for i in range(mu) if mask >> i & 1]
        term = kauffman_bracket(delete_components(diagram, kill), coeffs, max_crossings)
        for _ in kill:
            term = term * const
        total = term if total is None else total + term
    return total


def bracket_z_plus_2(diagram: LinkDiagram, max_crossings: int | None = None) -> IntLaurent:
    return bracket_z_plus_const(diagram, IntLaurent.monomial(2, 0), LaurentCoeffs, max_crossings)


def bracket_z_plus_q2(diagram: LinkDiagram, max_crossings: int | None = None) -> IntLaurent:
    """Variant coloring z + [2], with [2] = A^2 + A^-2."""
    two_q = IntLaurent({2: 1, -2: 1})
    return bracket_z_plus_const(diagram, two_q, LaurentCoeffs, max_crossings)


def divisibility_certificate(diagram: LinkDiagram, variant: str = "z+2",
                             max_crossings: int | None = None) -> dict:
    """Certify (1+A)^mu | <L(z+2)> (or the z+[2] variant); quotient included."""
    if variant == "z+2":
        f = bracket_z_plus_2(diagram, max_crossings)
    elif variant == "z+[2]":
        f = bracket_z_plus_q2(diagram, max_crossings)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    mu = diagram.mu
    quotient = f
    for _ in range(mu):
        quotient = quotient.try_div_one_plus_var()
        if quotient is None:
            val, _ = f.val_one_plus_var()
            return {
                "claim": f"(1+A)^mu divides <L({variant})>",
                "mu": mu,
                "ok": False,
                "refutation": {"value": f.to_json(), "attained_valuation": val},
            }
    return {
        "claim": f"(1+A)^mu divides <L({variant})>",
        "mu": mu,
        "ok": True,
        "value": f.to_json(),
        "quotient": quotient.to_json(),
    }


def derivative_congruences(f: IntLaurent, mu: int, p: int) -> bool:
    """True iff f^(k)(-1) = 0 mod p for all 0 <= k < mu; requires mu < p."""
    if not 0 <= mu < p:
        raise ValueError("need 0 <= mu < p")
    g = f
    for _ in range(mu):
        val = g.evaluate(-1)
        assert val.denominator == 1
        if val.numerator % p:
            return False
        g = g.derivative()
    return True


def root_divisibility(f: IntLaurent, mu: int, ctx: CycContext) -> bool:
    """True iff (1+A)^mu divides f(A) at the root of unity of ctx."""
    value = ctx.from_A_laurent(f)
    if value == ctx.zero:
        return True
    val, _ = value.valuation_one_minus_q()
    return val >= mu


# ---------------------------------------------------------------------------
# necklace diagrams: meridian circles threaded by closed cores


def necklace_pd(circle_widths: Sequence[int], cores: Sequence[Iterable[int]]) -> LinkDiagram:
    """Cabled meridian circles in a row, threaded by width-1 closed cores.

    Circle c is drawn as circle_widths[c] concentric vertical loops at
    horizontal position c.  Each core names the subset of circles it threads
    (0-based, in increasing order); it runs left to right through those
    circles and returns below everything.  Entering a circle the circle lanes
    pass over the core, leaving it the core passes over the lanes, so each
    threading links core and circle once.  A circle of width 0 vanishes (its
    zero-cable is empty); a core threading nothing is still a bare loop.
    """
    widths = list(circle_widths)
    if any(w < 0 for w in widths):
        raise ValueError("circle widths must be nonnegative")
    tracks = [sorted(set(core)) for core in cores]
    for tr in tracks:
        if tr and not (0 <= tr[0] and tr[-1] < len(widths)):
            raise ValueError("core threads a missing circle")

    fresh = [1]

    def new_arc() -> int:
        fresh[0] += 1
        return fresh[0] - 1

    loops = sum(1 for tr in tracks if not tr)

    # Crossing grid per circle: left side then right side, lanes outer->inner
    # on entry and inner->outer on exit along each track.
    threaders = [[t for t, tr in enumerate(tracks) if c in tr] for c in range(len(widths))]

    # Arc segments along each circle lane.  The lane meets, in cyclic order,
    # the left-side crossings of its threading tracks top to bottom, then the
    # right-side crossings bottom to top.
    lane_arcs: dict[tuple[int, int], list[int]] = {}
    lane_events: dict[tuple[int, int], list[tuple[int, str]]] = {}
    for c, w in enumerate(widths):
        ts = threaders[c]
        for j in range(w):
            events = [(t, "L") for t in ts] + [(t, "R") for t in reversed(ts)]
            lane_events[(c, j)] = events
            lane_arcs[(c, j)] = [new_arc() for _ in events] if events else []
            if not events:
                loops += 1

    crossings: list[tuple[int, int, int, int]] = []
    for t, tr in enumerate(tracks):
        if not tr:
            continue
        # The track's own segments, one per crossing it meets, in travel order.
        n_cross = sum(2 * widths[c] for c in tr)
        if n_cross == 0:
            loops += 1
            continue
        track_arcs = [new_arc() for _ in range(n_cross)]
        k = 0
        for c in tr:
            w = widths[c]
            # entry: lanes outermost (j = w-1) down to innermost (j = 0)
            for j in range(w - 1, -1, -1):
                a_in = track_arcs[k - 1] if k else track_arcs[-1]
                a_out = track_arcs[k]
                k += 1
                ev = lane_events[(c, j)].index((t, "L"))
                arcs = lane_arcs[(c, j)]
                lane_before = arcs[ev - 1] if ev else arcs[-1]
                lane_after = arcs[ev]
                # Core is the under-strand, heading east; the lane segment
                # south of the crossing follows it in counterclockwise order.
                crossings.append((a_in, lane_after, a_out, lane_before))
            # exit: innermost out to outermost
            for j in range(w):
                a_in = track_arcs[k - 1]
                a_out = track_arcs[k]
                k += 1
                ev = lane_events[(c, j)].index((t, "R"))
                arcs = lane_arcs[(c, j)]
                lane_before = arcs[ev - 1]
                lane_after = arcs[ev]
                # Lane is the under-strand, heading north up the right side.
                crossings.append((lane_before, a_out, lane_after, a_in))
    return LinkDiagram(tuple(crossings), loops)


# ---------------------------------------------------------------------------
# bundled link corpus


_CORPUS_KEYS = {"name", "braid", "strands", "pd", "loops", "mu", "crossings"}


def load_corpus(path: str | None = None) -> list[dict]:
    """Load the link corpus, validating its structure before returning it.

    With no path the bundled corpus ships with the package.  Any structural
    problem raises ValueError up front so a caller never sees partial data.
    """
    if path is None:
        text = resources.files("skeinlat").joinpath("data/corpus.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"corpus is not valid JSON: {exc}") from exc
    links = obj.get("links") if isinstance(obj, dict) else None
    if not isinstance(links, list) or not links:
        raise ValueError("corpus must be an object with a nonempty 'links' list")
    for entry in links:
        if not isinstance(entry, dict) or not _CORPUS_KEYS <= set(entry):
            raise ValueError(f"corpus entry missing keys: {entry!r:.80}")
        diag = LinkDiagram.from_json(entry)
        if diag.mu != entry["mu"] or diag.crossings != entry["crossings"]:
            raise ValueError(f"corpus entry {entry['name']!r} is inconsistent")
    return links
