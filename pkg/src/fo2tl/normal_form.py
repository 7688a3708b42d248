"""One-block existential normal form and its closure operations.

An EA formula asserts a strictly increasing tuple of points x_0 < ... <
x_n with a temporal label on each point, a temporal label holding on
every open interval between consecutive points, one label holding
everywhere before x_0 and one everywhere after x_n, plus a binding of
each free variable to one of the points.  Labels are whole temporal
formulas: booleans of temporal formulas are temporal formulas, so a
single label type covers every "quantifier-free" alphabet the pipeline
needs.

A Dea is a finite disjunction of EA formulas over a shared ordered
scope; the empty disjunction is FALSE, and `top_dea` builds TRUE as one
all-true disjunct per weak ordering of the scope.

Everything is immutable and deterministic: disjunct lists are kept
sorted by their debug serialization.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Sequence

from . import tl
from .chains import Assignment, Chain, EvalError

VariableOrder = tuple[str, ...]


class ScopeError(ValueError):
    """Scope mismatch between Dea operands."""


def make_scope(names: Iterable[str]) -> VariableOrder:
    scope = tuple(sorted(set(names)))
    if not all(scope):
        raise ValueError("variable names must be nonempty")
    return scope


class EaFormula:
    """One existential block.  `bindings` maps free-variable names to
    point indices; distinct variables may share a point (that encodes
    equality)."""

    __slots__ = ("points", "intervals", "bindings", "_bmap", "_hash", "__weakref__")

    def __init__(
        self,
        points: Sequence[tl.TlFormula],
        intervals: Sequence[tl.TlFormula],
        bindings: Mapping[str, int] | Iterable[tuple[str, int]],
    ):
        pts = tuple(points)
        ivs = tuple(intervals)
        bmap = dict(bindings)
        if len(ivs) != len(pts) + 1:
            raise ValueError(
                f"need {len(pts) + 1} interval labels for {len(pts)} points, got {len(ivs)}"
            )
        if not pts:
            raise ValueError("an EA formula has at least one point")
        for var, idx in bmap.items():
            if not 0 <= idx < len(pts):
                raise ValueError(f"binding {var}->{idx} outside point range")
        self.points = pts
        self.intervals = ivs
        self.bindings = tuple(sorted(bmap.items()))
        self._bmap = bmap
        self._hash = hash((pts, ivs, self.bindings))

    def binding(self, var: str) -> int:
        return self._bmap[var]

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(self._bmap)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EaFormula)
            and self._hash == other._hash
            and self.points == other.points
            and self.intervals == other.intervals
            and self.bindings == other.bindings
        )

    def __repr__(self) -> str:
        return format_ea(self)


def format_ea(e: EaFormula) -> str:
    """Bracket debug form: `[b0 | a0 | b1 | a1 | b2] @ {z0->0, z1->1}`."""
    parts = [tl.print_tl(e.intervals[0])]
    for i, point in enumerate(e.points):
        parts.append(tl.print_tl(point))
        parts.append(tl.print_tl(e.intervals[i + 1]))
    binds = ", ".join(f"{v}->{i}" for v, i in e.bindings)
    return "[" + " | ".join(parts) + "] @ {" + binds + "}"


class Dea:
    """Disjunction of EA formulas over a shared scope."""

    __slots__ = ("scope", "disjuncts", "_hash", "__weakref__")

    def __init__(self, scope: Iterable[str], disjuncts: Iterable[EaFormula]):
        scope_t = tuple(scope)
        if len(set(scope_t)) != len(scope_t):
            raise ValueError(f"scope has duplicate variables: {scope_t}")
        wanted = set(scope_t)
        items = tuple(disjuncts)
        for e in items:
            if e.variables != wanted:
                raise ScopeError(
                    f"disjunct binds {sorted(e.variables)}, scope is {sorted(wanted)}"
                )
        self.scope = scope_t
        self.disjuncts = items
        self._hash = hash((scope_t, items))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Dea)
            and self.scope == other.scope
            and self.disjuncts == other.disjuncts
        )

    def __repr__(self) -> str:
        body = " v ".join(format_ea(e) for e in self.disjuncts) or "FALSE"
        return f"Dea({','.join(self.scope)}: {body})"


def format_dea(d: Dea) -> str:
    if not d.disjuncts:
        return "FALSE"
    return "\n".join(format_ea(e) for e in d.disjuncts)


def false_dea(scope: Iterable[str]) -> Dea:
    return Dea(make_scope(scope), ())


def top_dea(scope: Iterable[str]) -> Dea:
    """TRUE over the scope: one all-true disjunct per weak ordering
    (ordered set partition) of the scope variables."""
    scope_t = make_scope(scope)
    if not scope_t:
        raise ScopeError("TRUE over an empty scope is not representable; keep an anchor variable")
    orderings: list[list[list[str]]] = [[]]
    for var in scope_t:
        grown: list[list[list[str]]] = []
        for blocks in orderings:
            for i in range(len(blocks)):
                grown.append([b + [var] if j == i else b for j, b in enumerate(blocks)])
            for gap in range(len(blocks) + 1):
                grown.append(blocks[:gap] + [[var]] + blocks[gap:])
        orderings = grown
    disjuncts = []
    for blocks in orderings:
        k = len(blocks)
        bindings = {v: i for i, block in enumerate(blocks) for v in block}
        disjuncts.append(EaFormula((tl.TRUE,) * k, (tl.TRUE,) * (k + 1), bindings))
    return Dea(scope_t, disjuncts)


def eval_ea(m: Chain, assignment: Assignment, e: EaFormula) -> bool:
    """Brute force per the definition: some strictly increasing tuple of
    positions realizes the bindings, the point labels, and the interval
    labels."""
    ev = m.evaluator()
    n = len(e.points)
    fixed: dict[int, int] = {}
    for var, idx in e.bindings:
        if var not in assignment:
            raise EvalError(f"variable {var!r} is not assigned")
        p = assignment[var]
        if not 0 <= p < m.size:
            raise EvalError(f"position {p} for {var!r} outside chain of size {m.size}")
        if fixed.setdefault(idx, p) != p:
            return False
    order = sorted(fixed.items())
    for (i1, p1), (i2, p2) in zip(order, order[1:]):
        if p1 >= p2:
            return False

    points = e.points
    intervals = e.intervals
    size = m.size

    def place(idx: int, low: int) -> bool:
        if idx == n:
            return True
        if idx in fixed:
            candidates: Iterable[int] = (fixed[idx],)
        else:
            candidates = range(low, size)
        for p in candidates:
            if p < low:
                continue
            if not ev.value(points[idx], p):
                continue
            prev = low - 1
            if not ev.all_true(intervals[idx], prev + 1, p):
                continue
            if idx == n - 1 and not ev.all_true(intervals[n], p + 1, size):
                continue
            if place(idx + 1, p + 1):
                return True
        return False

    # `low - 1` above reconstructs the previous point; seed with -1 so the
    # leading region is [0, x_0).
    return place(0, 0)


def eval_dea(m: Chain, assignment: Assignment, d: Dea) -> bool:
    for var in d.scope:
        if var not in assignment:
            raise EvalError(f"variable {var!r} is not assigned")
    return any(eval_ea(m, assignment, e) for e in d.disjuncts)


def _merged_pairs(e1: EaFormula, e2: EaFormula) -> Iterator[EaFormula]:
    """All order-preserving merges of two point sequences.  At every step
    the next point comes from the left side, the right side, or both at
    once (the two points coincide); a point taken from one side alone
    must satisfy the other side's covering interval label.

    Shared variables force their two points to coincide; those forced
    identifications are checked up front and enforced during the walk, so
    only binding-consistent merges are ever materialized.  Branches whose
    merged point label collapses to false are pruned as well.
    """
    p1, p2 = e1.points, e2.points
    u, v = e1.intervals, e2.intervals
    n1, n2 = len(p1), len(p2)

    forced1: dict[int, int] = {}  # point of e1 -> point of e2 it must equal
    forced2: dict[int, int] = {}
    for var in e1.variables & e2.variables:
        i, j = e1.binding(var), e2.binding(var)
        if forced1.setdefault(i, j) != j or forced2.setdefault(j, i) != i:
            return  # one point would have to equal two distinct points
    ordered = sorted(forced1.items())
    if any(b[1] <= a[1] for a, b in zip(ordered, ordered[1:])):
        return  # forced identifications cross: no order-preserving merge

    results: list[EaFormula] = []

    def emit(points, intervals, slots1, slots2):
        bindings = {var: slots1[idx] for var, idx in e1.bindings}
        bindings.update({var: slots2[idx] for var, idx in e2.bindings})
        results.append(EaFormula(points, intervals + [tl.conj(u[n1], v[n2])], bindings))

    def step(i, j, points, intervals, slots1, slots2):
        if i == n1 and j == n2:
            emit(points, intervals, slots1, slots2)
            return
        gap = tl.conj(u[i], v[j])
        slot = len(points)
        if i < n1 and i not in forced1:
            label = tl.conj(p1[i], v[j])
            if not tl.is_false(label):
                step(i + 1, j, points + [label], intervals + [gap],
                     slots1 + [slot], slots2)
        if j < n2 and j not in forced2:
            label = tl.conj(p2[j], u[i])
            if not tl.is_false(label):
                step(i, j + 1, points + [label], intervals + [gap],
                     slots1, slots2 + [slot])
        if i < n1 and j < n2 and forced1.get(i, j) == j and forced2.get(j, i) == i:
            label = tl.conj(p1[i], p2[j])
            if not tl.is_false(label):
                step(i + 1, j + 1, points + [label], intervals + [gap],
                     slots1 + [slot], slots2 + [slot])

    step(0, 0, [], [], [], [])
    yield from results


def ea_and(d1: Dea, d2: Dea) -> Dea:
    """Conjunction: enumerate all binding-consistent merges of every pair
    of disjuncts.  No deduplication here; `simplify` does that."""
    if d1.scope != d2.scope:
        raise ScopeError(f"conjunction over different scopes {d1.scope} and {d2.scope}")
    out: list[EaFormula] = []
    for e1 in d1.disjuncts:
        for e2 in d2.disjuncts:
            out.extend(_merged_pairs(e1, e2))
    return Dea(d1.scope, out)


def ea_and_all(ds: Sequence[Dea]) -> Dea:
    if not ds:
        raise ValueError("need at least one Dea")
    acc = ds[0]
    for d in ds[1:]:
        acc = simplify(ea_and(acc, d))
    return acc


def ea_or(d1: Dea, d2: Dea) -> Dea:
    if d1.scope != d2.scope:
        raise ScopeError(f"disjunction over different scopes {d1.scope} and {d2.scope}")
    return Dea(d1.scope, d1.disjuncts + d2.disjuncts)


def ea_or_all(scope: Iterable[str], ds: Iterable[Dea]) -> Dea:
    scope_t = make_scope(scope)
    items: list[EaFormula] = []
    for d in ds:
        if d.scope != scope_t:
            raise ScopeError(f"disjunction over different scopes {d.scope} and {scope_t}")
        items.extend(d.disjuncts)
    return Dea(scope_t, items)


def chain_deas(d1: Dea, d2: Dea, shared: str) -> Dea:
    """Conjunction of two Deas whose scopes overlap exactly in `shared`,
    where every left disjunct binds `shared` to its last point under a
    true trailing label and every right disjunct binds it to its first
    point under a true leading label.  Each pair then fuses at the shared
    point: no merge enumeration is needed."""
    overlap = set(d1.scope) & set(d2.scope)
    if overlap != {shared}:
        raise ScopeError(f"scopes {d1.scope} and {d2.scope} must overlap exactly in {shared!r}")
    scope = make_scope(set(d1.scope) | set(d2.scope))
    out = []
    for e1 in d1.disjuncts:
        k = e1.binding(shared)
        if k != len(e1.points) - 1 or not tl.is_true(e1.intervals[-1]):
            raise ValueError("left operand is not anchored at the shared variable")
        for e2 in d2.disjuncts:
            if e2.binding(shared) != 0 or not tl.is_true(e2.intervals[0]):
                raise ValueError("right operand is not anchored at the shared variable")
            fused = tl.conj(e1.points[-1], e2.points[0])
            if tl.is_false(fused):
                continue
            points = e1.points[:-1] + (fused,) + e2.points[1:]
            intervals = e1.intervals[:-1] + e2.intervals[1:]
            bindings = dict(e1.bindings)
            offset = len(e1.points) - 1
            for var, idx in e2.bindings:
                bindings[var] = idx + offset
            out.append(EaFormula(points, intervals, bindings))
    return Dea(scope, out)


def ea_exists(var: str, d: Dea) -> Dea:
    """Existential quantification: drop the binding, keep the point."""
    if var not in d.scope:
        raise ScopeError(f"variable {var!r} not in scope {d.scope}")
    scope = tuple(s for s in d.scope if s != var)
    disjuncts = [
        EaFormula(e.points, e.intervals, [(v, i) for v, i in e.bindings if v != var])
        for e in d.disjuncts
    ]
    return Dea(scope, disjuncts)


def ea_split_pairs(e: EaFormula) -> list[EaFormula]:
    """Cut at the bound points: a one-variable prefix, a two-variable
    piece per consecutive pair of bound points (an equality-style piece
    when they share an index), and a one-variable suffix.  The
    conjunction of the pieces is equivalent to e.  With at most one
    bound variable there is nothing to cut."""
    items = sorted(e.bindings, key=lambda vi: (vi[1], vi[0]))
    if len(items) <= 1:
        return [e]
    points, intervals = e.points, e.intervals
    pieces: list[EaFormula] = []
    first_var, first_idx = items[0]
    pieces.append(
        EaFormula(
            points[: first_idx + 1],
            intervals[: first_idx + 1] + (tl.TRUE,),
            {first_var: first_idx},
        )
    )
    for (va, ia), (vb, ib) in zip(items, items[1:]):
        if ia == ib:
            pieces.append(EaFormula((points[ia],), (tl.TRUE, tl.TRUE), {va: 0, vb: 0}))
        else:
            pieces.append(
                EaFormula(
                    points[ia : ib + 1],
                    (tl.TRUE,) + intervals[ia + 1 : ib + 1] + (tl.TRUE,),
                    {va: 0, vb: ib - ia},
                )
            )
    last_var, last_idx = items[-1]
    pieces.append(
        EaFormula(points[last_idx:], (tl.TRUE,) + intervals[last_idx + 1 :], {last_var: 0})
    )
    return pieces


def _insert_var(e: EaFormula, var: str) -> list[EaFormula]:
    n = len(e.points)
    out = []
    for i in range(n):  # coincide with an existing point
        bindings = dict(e.bindings)
        bindings[var] = i
        out.append(EaFormula(e.points, e.intervals, bindings))
    for region in range(n + 1):  # strictly inside a region
        beta = e.intervals[region]
        points = e.points[:region] + (beta,) + e.points[region:]
        intervals = e.intervals[:region] + (beta, beta) + e.intervals[region + 1 :]
        bindings = {v: (i + 1 if i >= region else i) for v, i in e.bindings}
        bindings[var] = region
        out.append(EaFormula(points, intervals, bindings))
    return out


def embed(d: Dea, scope: Iterable[str]) -> Dea:
    """Widen to a larger scope without constraining the new variables:
    each new variable may land on any existing point or strictly inside
    any region (where it must satisfy that region's interval label)."""
    scope_t = make_scope(scope)
    missing = sorted(set(scope_t) - set(d.scope))
    if not set(d.scope) <= set(scope_t):
        raise ScopeError(f"scope {scope_t} does not contain {d.scope}")
    disjuncts = list(d.disjuncts)
    for var in missing:
        disjuncts = [e2 for e in disjuncts for e2 in _insert_var(e, var)]
    return Dea(scope_t, disjuncts)


def _ea_order_key(e: EaFormula) -> tuple:
    """Cheap deterministic ordering for internal normalization (the
    printable serialization order is applied once, at emission)."""
    return (
        len(e.points),
        e.bindings,
        tuple(tl.order_key(p) for p in e.points),
        tuple(tl.order_key(b) for b in e.intervals),
    )


def ea_implies(strong: EaFormula, weak: EaFormula) -> bool:
    """True when every model of `strong` satisfies `weak`, witnessed by
    an order-preserving embedding of `weak`'s points into `strong`'s:
    bindings must map onto each other, each point label of `weak` must
    be entailed by the label of the point it lands on, and each region
    label of `weak` must be entailed by everything `strong` asserts on
    the corresponding stretch (a false interval entails anything, since
    it forces the stretch empty).  Conservative: label entailment is the
    cheap structural check."""
    sp, si = strong.points, strong.intervals
    wp, wi = weak.points, weak.intervals
    n, m = len(sp), len(wp)
    if m > n or strong.variables != weak.variables:
        return False
    required: dict[int, int] = {}
    for var, widx in weak.bindings:
        sidx = strong.binding(var)
        if required.setdefault(widx, sidx) != sidx:
            return False

    impl = tl.implies_structurally

    def stretch_ok(label: tl.TlFormula, lo: int, hi: int) -> bool:
        # strong's content strictly between its points lo-1 and hi (the
        # intervals si[lo..hi] and points sp[lo..hi-1]) must entail label
        for t in range(lo, hi + 1):
            if not impl(si[t], label):
                return False
        for t in range(lo, hi):
            if not impl(sp[t], label):
                return False
        return True

    # frontier[i] = True: weak's points 0..j-1 embedded, last one at i-1
    frontier = [False] * (n + 1)
    for i in range(1, n + 1):
        if 0 in required and required[0] != i - 1:
            continue
        if impl(sp[i - 1], wp[0]) and stretch_ok(wi[0], 0, i - 1):
            frontier[i] = True
    for j in range(1, m):
        nxt = [False] * (n + 1)
        for i in range(1, n + 1):
            if not frontier[i]:
                continue
            for i2 in range(i + 1, n + 1):
                if j in required and required[j] != i2 - 1:
                    continue
                if impl(sp[i2 - 1], wp[j]) and stretch_ok(wi[j], i, i2 - 1):
                    nxt[i2] = True
        frontier = nxt
    return any(
        frontier[i] and stretch_ok(wi[m], i, n) for i in range(1, n + 1)
    )


def simplify(d: Dea) -> Dea:
    """Semantics-preserving cleanup: constant-fold every label, drop
    disjuncts with an unsatisfiable point label, deduplicate, drop
    disjuncts another same-shape disjunct subsumes, and sort into the
    canonical (serialization) order.  Interval labels folding to false
    are kept -- they just force the region empty, which is
    model-dependent."""
    seen: dict[EaFormula, None] = {}
    for e in d.disjuncts:
        points = tuple(tl.fold(p) for p in e.points)
        if any(tl.is_false(p) for p in points):
            continue
        intervals = tuple(tl.fold(b) for b in e.intervals)
        seen.setdefault(EaFormula(points, intervals, e.bindings), None)
    # Embedding subsumption is quadratic in the disjunct count; past the
    # cap, keep dedup only (sound, just less tidy).
    candidates = sorted(seen, key=_ea_order_key)
    if len(candidates) > 600:
        return Dea(d.scope, candidates)
    kept: list[EaFormula] = []
    for e in candidates:
        if any(ea_implies(e, k) for k in kept):
            continue  # e is at most as permissive as something kept
        kept = [k for k in kept if not ea_implies(k, e)]
        kept.append(e)
    return Dea(d.scope, kept)


def rename_vars(d: Dea, mapping: Mapping[str, str]) -> Dea:
    """Simultaneous renaming of scope variables."""
    new_scope = make_scope(mapping.get(v, v) for v in d.scope)
    if len(new_scope) != len(d.scope):
        raise ValueError(f"renaming {mapping} collapses scope {d.scope}")
    disjuncts = [
        EaFormula(e.points, e.intervals, {mapping.get(v, v): i for v, i in e.bindings})
        for e in d.disjuncts
    ]
    return Dea(new_scope, disjuncts)


def dea_size(d: Dea) -> int:
    """Total label size over all disjuncts; the budget/trace metric."""
    return sum(
        sum(tl.size(p) for p in e.points) + sum(tl.size(b) for b in e.intervals)
        for e in d.disjuncts
    )
