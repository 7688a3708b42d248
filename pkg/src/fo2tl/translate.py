"""The translation pipeline from first-order formulas to Until/Since
temporal formulas.

The route: a first-order formula is rewritten by structural induction
into a Dea (atoms directly, disjunction by union, conjunction by merge
enumeration, existentials by dropping a binding).  Negation is the hard
case: each disjunct is split into pieces with at most two free
variables, one-variable pieces negate into a single relabeled point,
and two-variable pieces reduce to negating an endpoint-anchored
interval pattern.  That negation runs the three-way case analysis with
the "no increasing occurrence sequence" ladder underneath, recursing on
strictly shorter patterns.  A one-variable Dea finally flattens into
nested Until/Since chains.

Everything is deterministic: disjuncts stay sorted, recursions are
memoized on canonical variable names and renamed on the way out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import fo, tl
from .normal_form import (
    Dea,
    EaFormula,
    ScopeError,
    _merged_pairs,
    chain_deas,
    dea_size,
    ea_and,
    ea_exists,
    ea_or_all,
    ea_split_pairs,
    embed,
    false_dea,
    make_scope,
    rename_vars,
    simplify,
    top_dea,
)


class ArityError(ValueError):
    """Wrong number of free variables for an operation."""


class BudgetExceeded(RuntimeError):
    """Translation grew past the configured node budget."""

    def __init__(self, size: int, budget: int):
        super().__init__(f"translation size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class IntervalPattern:
    """An endpoint-anchored pattern `[a0, b1, a1, ..., bn, an](z0, z1)`:
    z0 and z1 are the outermost points, with n-1 existential points in
    between; there are no outer interval labels."""

    __slots__ = ("points", "intervals", "_hash", "__weakref__")

    def __init__(self, points: Sequence[tl.TlFormula], intervals: Sequence[tl.TlFormula]):
        pts = tuple(points)
        ivs = tuple(intervals)
        if not pts or len(pts) != len(ivs) + 1:
            raise ValueError(
                f"need k+1 point labels and k interval labels, got {len(pts)} and {len(ivs)}"
            )
        self.points = pts
        self.intervals = ivs
        self._hash = hash((pts, ivs))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntervalPattern)
            and self.points == other.points
            and self.intervals == other.intervals
        )

    def __repr__(self) -> str:
        inner: list[str] = []
        for i, p in enumerate(self.points):
            if i:
                inner.append(tl.print_tl(self.intervals[i - 1]))
            inner.append(tl.print_tl(p))
        return "[" + ", ".join(inner) + "]"


@dataclass(frozen=True)
class TraceStep:
    pass_name: str
    input_summary: str
    output_summary: str
    disjunct_count: int
    size: int


class TranslationTrace:
    """Append-only log of pipeline passes, for the stats/trace CLI."""

    def __init__(self):
        self.steps: list[TraceStep] = []

    def record(self, pass_name: str, input_summary: str, output_summary: str,
               disjunct_count: int, size: int):
        self.steps.append(
            TraceStep(pass_name, _clip(input_summary), _clip(output_summary),
                      disjunct_count, size)
        )

    def max_disjuncts(self) -> int:
        return max((s.disjunct_count for s in self.steps), default=0)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


def _clip(text: str, limit: int = 72) -> str:
    return text if len(text) <= limit else text[: limit - 3] + "..."


# Canonical internal variable names (lexicographically ordered).
_L, _M, _R = "zL", "zM", "zR"
_SCOPE2 = (_L, _R)
_SCOPE3 = (_L, _M, _R)
_BIND2 = {_L: 0, _R: 1}


def _pair_ea(first: tl.TlFormula, second: tl.TlFormula, lo: str, hi: str,
             between: tl.TlFormula = tl.TRUE) -> EaFormula:
    """lo < hi with the given point labels and interior label."""
    return EaFormula((first, second), (tl.TRUE, between, tl.TRUE), {lo: 0, hi: 1})


def _empty_interval_ea(lo: str = _L, hi: str = _R) -> EaFormula:
    """lo < hi with nothing strictly between them."""
    return _pair_ea(tl.TRUE, tl.TRUE, lo, hi, between=tl.FALSE)


def _nonempty_dea() -> Dea:
    """zL < zR with at least one interior point."""
    return Dea(_SCOPE2, [EaFormula((tl.TRUE,) * 3, (tl.TRUE,) * 4, {_L: 0, _R: 2})])


def _require_nonempty(d: Dea) -> Dea:
    """Constrain an endpoint-anchored Dea to assignments whose interior
    (zL, zR) is nonempty.  Disjuncts with interior points already imply
    it; a two-point disjunct grows a witness point carrying its interior
    label (equivalent to, but much smaller than, conjoining the generic
    nonempty-interval Dea)."""
    out = []
    for e in d.disjuncts:
        if len(e.points) >= 3:
            out.append(e)
            continue
        beta = e.intervals[1]
        if tl.is_false(beta):
            continue
        out.append(
            EaFormula(
                (e.points[0], beta, e.points[1]),
                (e.intervals[0], beta, beta, e.intervals[2]),
                {var: (0 if idx == 0 else 2) for var, idx in e.bindings},
            )
        )
    return Dea(d.scope, out)


def _inf_ea(p: tl.TlFormula) -> EaFormula:
    """zM is the infimum of the p-points after zL: no p strictly between
    zL and zM, and p (or its right-limit) at zM; zM lies in (zL, zR)."""
    return EaFormula(
        (tl.TRUE, tl.Or(p, tl.k_plus(p)), tl.TRUE),
        (tl.TRUE, tl.Not(p), tl.TRUE, tl.TRUE),
        {_L: 0, _M: 1, _R: 2},
    )


def ea1_to_tl(e: EaFormula) -> tl.TlFormula:
    """Flatten a one-variable EA into the conjunction of a forward
    nested-Until chain and a backward nested-Since chain, both rooted at
    the bound point."""
    if len(e.bindings) != 1:
        raise ArityError(f"expected one bound variable, found {[v for v, _ in e.bindings]}")
    (_, k), = e.bindings
    pts, ivs = e.points, e.intervals
    n = len(pts) - 1
    forward = tl.globally(ivs[n + 1])
    for i in range(n, k, -1):
        forward = tl.Until(ivs[i], tl.conj(pts[i], forward))
    backward = tl.historically(ivs[0])
    for i in range(1, k + 1):
        backward = tl.Since(ivs[i], tl.conj(pts[i - 1], backward))
    return tl.fold(tl.conj(pts[k], tl.conj(forward, backward)))


def dea1_to_tl(d: Dea) -> tl.TlFormula:
    """Disjunction of the flattened disjuncts, in serialization order so
    emitted formulas are byte-stable; FALSE for the empty Dea."""
    if len(d.scope) != 1:
        raise ArityError(f"expected a one-variable scope, found {d.scope}")
    from .normal_form import format_ea

    ordered = sorted(d.disjuncts, key=format_ea)
    return tl.fold(tl.big_or(ea1_to_tl(e) for e in ordered))


def _pair_top(lo: str, hi: str) -> Dea:
    """lo < hi with nothing else asserted (used as the inert half of a
    chained conjunction, where the order is already pinned)."""
    return Dea((lo, hi) if lo < hi else (hi, lo), [_pair_ea(tl.TRUE, tl.TRUE, lo, hi)])


def _inf_left(p: tl.TlFormula) -> Dea:
    """The (zL, zM) half of the infimum pattern: no p in (zL, zM) and p
    or its right-limit at zM."""
    return Dea(
        (_L, _M),
        [
            EaFormula(
                (tl.TRUE, tl.Or(p, tl.k_plus(p))),
                (tl.TRUE, tl.Not(p), tl.TRUE),
                {_L: 0, _M: 1},
            )
        ],
    )


@lru_cache(maxsize=None)
def _oc(preds: tuple[tl.TlFormula, ...]) -> Dea:
    head, rest = preds[0], preds[1:]
    no_head = Dea(_SCOPE2, [_pair_ea(tl.TRUE, tl.TRUE, _L, _R, between=tl.Not(head))])
    if not rest:
        return simplify(no_head)
    empty = Dea(_SCOPE2, [_empty_interval_ea()])
    at_left_limit = ea_and(
        Dea(_SCOPE2, [_pair_ea(tl.k_plus(head), tl.TRUE, _L, _R)]), _oc(rest)
    )
    tail = rename_vars(_oc(rest), {_L: _M})  # over (zM, zR)
    first_occurrence = ea_exists(_M, simplify(chain_deas(_inf_left(head), tail, _M)))
    return simplify(
        ea_or_all(_SCOPE2, [empty, no_head, simplify(at_left_limit), first_occurrence])
    )


def oc(preds: Sequence[tl.TlFormula], z0: str = "z0", z1: str = "z1") -> Dea:
    """Dea equivalent (for z0 < z1) to: there is NO increasing sequence
    x_1 < ... < x_n inside (z0, z1) with preds[i] at x_i.  Recursion:
    either the interval is empty, or preds[0] never occurs there, or its
    first occurrence (infimum) is found and the rest recurses after it.
    """
    if not preds:
        raise ArityError("need at least one predicate label")
    return rename_vars(_oc(tuple(preds)), {_L: z0, _R: z1})


def inf_pattern(p: tl.TlFormula, z0: str = "z0", r0: str = "r0", z1: str = "z1") -> Dea:
    """The infimum-defining Dea: z0 < r0 < z1, no p in (z0, r0), and p or
    its right-limit at r0."""
    return rename_vars(Dea(_SCOPE3, [_inf_ea(p)]), {_L: z0, _M: r0, _R: z1})


@lru_cache(maxsize=None)
def _neb_left(points: tuple[tl.TlFormula, ...], intervals: tuple[tl.TlFormula, ...]) -> Dea:
    # One-point patterns are degenerate: the pattern pins its single point
    # to the left endpoint, so "some z in (z0,z1) realizes it" just means
    # the point label holds at z0 and the interval is nonempty.
    if len(points) == 1:
        return simplify(
            Dea(_SCOPE2, [_pair_ea(tl.Not(points[0]), tl.TRUE, _L, _R), _empty_interval_ea()])
        )
    chain = points[-1]
    chains = [chain]
    for i in range(len(points) - 2, -1, -1):
        chain = tl.conj(points[i], tl.Until(intervals[i], chain))
        chains.append(chain)
    chains.reverse()  # chains[i] now holds the nested-Until formula rooted at point i
    not_rooted = Dea(_SCOPE2, [_pair_ea(tl.Not(chains[0]), tl.TRUE, _L, _R)])
    return simplify(ea_or_all(_SCOPE2, [not_rooted, _oc(tuple(chains[1:]))]))


def _mirror_dea(d: Dea) -> Dea:
    out = []
    for e in d.disjuncts:
        n = len(e.points)
        points = tuple(tl.mirror(p) for p in reversed(e.points))
        intervals = tuple(tl.mirror(b) for b in reversed(e.intervals))
        bindings = {v: n - 1 - i for v, i in e.bindings}
        out.append(EaFormula(points, intervals, bindings))
    return Dea(d.scope, out)


def _neb_right(points: tuple[tl.TlFormula, ...], intervals: tuple[tl.TlFormula, ...]) -> Dea:
    mirrored = _neb_left(
        tuple(tl.mirror(p) for p in reversed(points)),
        tuple(tl.mirror(b) for b in reversed(intervals)),
    )
    return rename_vars(_mirror_dea(mirrored), {_L: _R, _R: _L})


def neg_exists_between_left(pat: IntervalPattern, z0: str = "z0", z1: str = "z1") -> Dea:
    """Dea equivalent (for z0 < z1) to: no z in (z0, z1) satisfies
    pat(z0, z).  Built from the nested-Until family rooted at each
    pattern point plus the occurrence ladder."""
    return rename_vars(_neb_left(pat.points, pat.intervals), {_L: z0, _R: z1})


def neg_exists_between_right(pat: IntervalPattern, z0: str = "z0", z1: str = "z1") -> Dea:
    """Mirror image: no z in (z0, z1) satisfies pat(z, z1)."""
    return rename_vars(_neb_right(pat.points, pat.intervals), {_L: z0, _R: z1})


def _case_condition_deas(
    a: tuple[tl.TlFormula, ...], b: tuple[tl.TlFormula, ...]
) -> tuple[Dea, Dea, Dea]:
    not_b1 = tl.Not(b[0])
    cond1 = Dea(
        _SCOPE2,
        [
            _pair_ea(tl.Not(a[0]), tl.TRUE, _L, _R),
            _pair_ea(tl.k_plus(not_b1), tl.TRUE, _L, _R),
        ],
    )
    cond2 = Dea(_SCOPE2, [_pair_ea(a[0], tl.TRUE, _L, _R, between=b[0])])
    guard = tl.conj(a[0], tl.Not(tl.k_plus(not_b1)))
    inf = _inf_ea(not_b1)
    cond3 = ea_exists(
        _M,
        Dea(_SCOPE3, [EaFormula((guard,) + inf.points[1:], inf.intervals, dict(inf.bindings))]),
    )
    return simplify(cond1), simplify(cond2), simplify(cond3)


def _chain_pair_eas(left: EaFormula, right: EaFormula) -> Optional[EaFormula]:
    """Fuse a (zL, zM)-anchored piece with a (zM, zR)-anchored piece at
    the shared zM point."""
    fused = tl.conj(left.points[-1], right.points[0])
    if tl.is_false(fused):
        return None
    points = left.points[:-1] + (fused,) + right.points[1:]
    intervals = left.intervals[:-1] + right.intervals[1:]
    bindings = dict(left.bindings)
    offset = len(left.points) - 1
    for var, idx in right.bindings:
        bindings[var] = idx + offset
    return EaFormula(points, intervals, bindings)


def _prune_pairs(pairs: list[tuple[EaFormula, EaFormula]]) -> list[tuple[EaFormula, EaFormula]]:
    """Deduplicate and drop componentwise-subsumed (left, right) pairs;
    deterministic order."""
    from .normal_form import _ea_order_key, ea_implies

    seen = dict.fromkeys(pairs)
    kept: list[tuple[EaFormula, EaFormula]] = []
    for l, r in sorted(seen, key=lambda p: (_ea_order_key(p[0]), _ea_order_key(p[1]))):
        if any(ea_implies(l, kl) and ea_implies(r, kr) for kl, kr in kept):
            continue
        kept = [
            (kl, kr) for kl, kr in kept if not (ea_implies(kl, l) and ea_implies(kr, r))
        ]
        kept.append((l, r))
    return kept


def _form3(a: tuple[tl.TlFormula, ...], b: tuple[tl.TlFormula, ...]) -> Dea:
    """The case-3 body: some z in (z0, z1) is the infimum of the points
    violating the first interval label, and no witnessing configuration
    puts z on one of its points or inside one of its intervals.

    Every conjunct splits into a (zL, z) half and a (z, zR) half.
    Conjunction distributes componentwise over that split (the halves
    cannot interleave across z), so the fold keeps a list of half-pairs
    and only ever merges two-variable pieces."""
    n = len(b)
    to_m = {_R: _M}
    from_m = {_L: _M}
    top_l = _pair_ea(tl.TRUE, tl.TRUE, _L, _M)
    top_r = _pair_ea(tl.TRUE, tl.TRUE, _M, _R)

    conjuncts: list[tuple[tuple[EaFormula, ...], tuple[EaFormula, ...]]] = []
    for i in range(1, n):
        # z coincides with point i: negate the prefix up to i and the
        # suffix from i, each a strictly shorter pattern.
        neg_prefix = rename_vars(_neg_interval_c(a[: i + 1], b[:i]), to_m)
        neg_suffix = rename_vars(_neg_interval_c(a[i:], b[i:]), from_m)
        conjuncts.append((neg_prefix.disjuncts, neg_suffix.disjuncts))
    for i in range(2, n):
        # z lies strictly inside interval i (1-based); both halves carry
        # the interval label at z and are strictly shorter.
        neg_left = rename_vars(_neg_interval_c(a[:i] + (b[i - 1],), b[: i - 1] + (b[i - 1],)), to_m)
        neg_right = rename_vars(_neg_interval_c((b[i - 1],) + a[i:], (b[i - 1],) + b[i:]), from_m)
        conjuncts.append((neg_left.disjuncts, neg_right.disjuncts))
    # z inside interval 1 is impossible at an infimum point (the first
    # interval label would have to hold at and right of z), so that
    # conjunct is absorbed by the infimum disjunct and dropped.
    if n >= 2:
        # z inside the last interval: the right half is one interval
        # long; the left half is full length, but under the infimum's
        # "b[0] holds along (zL, z)" premise it reduces to the negated
        # head label or to no interior start point for its tail.
        tail_points = a[1:n] + (b[n - 1],)
        tail_intervals = b[1:]
        left_reduced = simplify(
            ea_or_all(
                (_L, _M),
                [
                    Dea((_L, _M), [_pair_ea(tl.Not(a[0]), tl.TRUE, _L, _M)]),
                    rename_vars(_neb_right(tail_points, tail_intervals), to_m),
                ],
            )
        )
        neg_right = rename_vars(_neg_interval_c((b[n - 1], a[n]), (b[n - 1],)), from_m)
        conjuncts.append((left_reduced.disjuncts, neg_right.disjuncts))

    conjuncts.sort(key=lambda lr: len(lr[0]) + len(lr[1]))
    state = [(_inf_left(tl.Not(b[0])).disjuncts[0], top_r)]
    for lefts, rights in conjuncts:
        grown: list[tuple[EaFormula, EaFormula]] = []
        for l, r in state:
            for cand in lefts:
                grown.extend((lm, r) for lm in _merged_pairs(l, cand))
            for cand in rights:
                grown.extend((l, rm) for rm in _merged_pairs(r, cand))
        state = _prune_pairs(grown)
        if not state:
            break
    fused = [e for e in (_chain_pair_eas(l, r) for l, r in state) if e is not None]
    return simplify(ea_exists(_M, Dea(_SCOPE3, fused)))


@lru_cache(maxsize=None)
def _neg_interval_c(a: tuple[tl.TlFormula, ...], b: tuple[tl.TlFormula, ...]) -> Dea:
    n = len(b)
    if n == 0:
        # the pattern pins z0 = z1, which z0 < z1 already refutes
        return Dea(_SCOPE2, [_pair_ea(tl.TRUE, tl.TRUE, _L, _R)])
    # complement on empty interiors: with one interval the pattern only
    # asserts its endpoint labels there; with more it needs an interior
    # point, so its negation holds outright.
    if n == 1:
        empty_part = [
            _pair_ea(tl.Not(a[0]), tl.TRUE, _L, _R, between=tl.FALSE),
            _pair_ea(tl.TRUE, tl.Not(a[1]), _L, _R, between=tl.FALSE),
        ]
    else:
        empty_part = [_empty_interval_ea()]
    # Case 1 is its own contribution (its form is TRUE).  The case-2 and
    # case-3 forms already entail their guards' effect under a nonempty
    # interior, so conjoining the guards would only multiply disjuncts:
    # form 2 forbids any interior start of the tail configuration, and
    # form 3 carries the infimum witness inside its existential.
    cond1, _, _ = _case_condition_deas(a, b)
    contrib2 = _neb_right(a[1:], b[1:])
    contrib3 = _form3(a, b)
    cases = ea_or_all(_SCOPE2, [cond1, contrib2, contrib3])
    nonempty_cases = _require_nonempty(cases)
    return simplify(ea_or_all(_SCOPE2, [Dea(_SCOPE2, empty_part), nonempty_cases]))


def neg_interval(pat: IntervalPattern, z0: str = "z0", z1: str = "z1") -> Dea:
    """Dea equivalent to: z0 < z1 and pat(z0, z1) fails.  Case split on
    the left endpoint: the pattern dies at z0 itself, or its first
    interval label holds throughout, or that label first fails at a
    definable infimum point and the recursion works there."""
    return rename_vars(_neg_interval_c(pat.points, pat.intervals), {_L: z0, _R: z1})


def case_conditions(pat: IntervalPattern, z0: str = "z0", z1: str = "z1") -> tuple[Dea, Dea, Dea]:
    """The three case guards used by neg_interval; on every chain and
    every z0 < z1 with a nonempty interior at least one of them holds."""
    mapping = {_L: z0, _R: z1}
    return tuple(
        rename_vars(d, mapping) for d in _case_condition_deas(pat.points, pat.intervals)
    )


def neg_ea2(e: EaFormula) -> Dea:
    """Negate an EA with one or two free variables.  One variable: the
    flattened formula becomes a single negated point label.  Two
    variables on one point: relabel plus the two strict-order escapes.
    Otherwise: split off the one-variable prefix and suffix, negate the
    interval pattern between the bound points, and add the order
    escapes."""
    names = sorted(e.variables)
    if not 1 <= len(names) <= 2:
        raise ArityError(f"expected one or two free variables, found {names}")
    if len(names) == 1:
        var = names[0]
        label = tl.fold(tl.Not(ea1_to_tl(e)))
        return simplify(Dea((var,), [EaFormula((label,), (tl.TRUE, tl.TRUE), {var: 0})]))
    va, vb = names
    ia, ib = e.binding(va), e.binding(vb)
    scope = (va, vb)
    if ia == ib:
        label = tl.fold(tl.Not(ea1_to_tl(EaFormula(e.points, e.intervals, {va: ia}))))
        return simplify(
            Dea(
                scope,
                [
                    _pair_ea(tl.TRUE, tl.TRUE, va, vb),
                    _pair_ea(tl.TRUE, tl.TRUE, vb, va),
                    EaFormula((label,), (tl.TRUE, tl.TRUE), {va: 0, vb: 0}),
                ],
            )
        )
    lo_var, lo, hi_var, hi = (va, ia, vb, ib) if ia < ib else (vb, ib, va, ia)
    prefix = EaFormula(e.points[: lo + 1], e.intervals[: lo + 1] + (tl.TRUE,), {lo_var: lo})
    suffix = EaFormula(e.points[hi:], (tl.TRUE,) + e.intervals[hi + 1 :], {hi_var: 0})
    middle = IntervalPattern(e.points[lo : hi + 1], e.intervals[lo + 1 : hi + 1])
    not_prefix = tl.fold(tl.Not(ea1_to_tl(prefix)))
    not_suffix = tl.fold(tl.Not(ea1_to_tl(suffix)))
    parts = [
        Dea(
            scope,
            [
                _pair_ea(tl.TRUE, tl.TRUE, hi_var, lo_var),
                EaFormula((tl.TRUE,), (tl.TRUE, tl.TRUE), {va: 0, vb: 0}),
                _pair_ea(not_prefix, tl.TRUE, lo_var, hi_var),
                _pair_ea(tl.TRUE, not_suffix, lo_var, hi_var),
            ],
        ),
        neg_interval(middle, z0=lo_var, z1=hi_var),
    ]
    return simplify(ea_or_all(scope, parts))


@lru_cache(maxsize=None)
def _neg_piece(piece: EaFormula) -> Dea:
    return neg_ea2(piece)


def neg_dea(d: Dea, budget: Optional[int] = None) -> Dea:
    """Complement by De Morgan: negate every disjunct (split into small
    pieces, negate each, re-embed) and conjoin the results.

    The conjunction is folded separately inside each weak ordering of
    the scope variables: pinning the variable order up front kills
    incompatible merge branches immediately and keeps the intermediate
    disjunct counts small; slices that empty out stop early."""
    if not d.disjuncts:
        return top_dea(d.scope)
    factors = []
    for e in d.disjuncts:
        parts = [embed(_neg_piece(piece), d.scope) for piece in ea_split_pairs(e)]
        factors.append(simplify(ea_or_all(d.scope, parts)))
    factors.sort(key=lambda f: len(f.disjuncts))  # stable: ties keep input order
    slices = []
    for ordering in top_dea(d.scope).disjuncts:
        acc = Dea(d.scope, [ordering])
        for factor in factors:
            acc = simplify(ea_and(acc, factor))
            if not acc.disjuncts:
                break
            _check_budget(acc, budget)
        slices.append(acc)
    return simplify(ea_or_all(d.scope, slices))


def _check_budget(d: Dea, budget: Optional[int]):
    if budget is not None:
        size = dea_size(d)
        if size > budget:
            raise BudgetExceeded(size, budget)


def fo_to_dea(
    f: fo.FoFormula,
    anchor: str,
    trace: Optional[TranslationTrace] = None,
    budget: Optional[int] = None,
) -> Dea:
    """Structural induction on the (standardized, forall-free) formula.
    The anchor variable stays in every scope so closed subformulas keep a
    point of evaluation."""
    prepared = fo.eliminate_foralls(fo.standardize_apart(f, reserved=(anchor,)))

    def record(name: str, g: fo.FoFormula, d: Dea) -> Dea:
        _check_budget(d, budget)
        if trace is not None:
            trace.record(
                name,
                fo.print_fo(g),
                f"dea over ({', '.join(d.scope)})",
                len(d.disjuncts),
                dea_size(d),
            )
        return d

    def walk(g: fo.FoFormula) -> Dea:
        if isinstance(g, fo.AtomPred):
            base = Dea(
                (g.var,),
                [EaFormula((tl.Atom(g.atom),), (tl.TRUE, tl.TRUE), {g.var: 0})],
            )
            return record("atomic", g, simplify(embed(base, make_scope((g.var, anchor)))))
        if isinstance(g, fo.Less):
            scope = make_scope((g.left, g.right, anchor))
            if g.left == g.right:
                return record("atomic", g, false_dea(scope))
            base = Dea((g.left, g.right), [_pair_ea(tl.TRUE, tl.TRUE, g.left, g.right)])
            return record("atomic", g, simplify(embed(base, scope)))
        if isinstance(g, fo.Equal):
            scope = make_scope((g.left, g.right, anchor))
            bindings = {g.left: 0, g.right: 0}
            base = Dea(
                make_scope((g.left, g.right)),
                [EaFormula((tl.TRUE,), (tl.TRUE, tl.TRUE), bindings)],
            )
            return record("atomic", g, simplify(embed(base, scope)))
        if isinstance(g, fo.Or):
            d1, d2 = walk(g.left), walk(g.right)
            scope = make_scope(set(d1.scope) | set(d2.scope))
            merged = ea_or_all(scope, [embed(d1, scope), embed(d2, scope)])
            return record("or", g, simplify(merged))
        if isinstance(g, fo.And):
            d1, d2 = walk(g.left), walk(g.right)
            scope = make_scope(set(d1.scope) | set(d2.scope))
            merged = ea_and(embed(d1, scope), embed(d2, scope))
            return record("and", g, simplify(merged))
        if isinstance(g, fo.Not):
            return record("neg", g, neg_dea(walk(g.sub), budget=budget))
        if isinstance(g, fo.Exists):
            d = walk(g.body)
            if g.var in d.scope:
                # evaluation always happens at a point, so the chain is
                # nonempty and a vacuous existential is the identity
                d = simplify(ea_exists(g.var, d))
            return record("exists", g, d)
        raise TypeError(f"unexpected formula {g!r}")

    return walk(prepared)


def _sole_free_variable(f: fo.FoFormula) -> str:
    free = sorted(fo.free_vars(f))
    if len(free) != 1:
        raise ArityError(
            f"need exactly one free variable, found {{{', '.join(free)}}}"
        )
    return free[0]


def fo_to_tl(f: fo.FoFormula, budget: Optional[int] = None) -> tl.TlFormula:
    """The top-level translation: a first-order formula with exactly one
    free variable becomes an equivalent temporal formula (equivalent at
    every position of every finite chain)."""
    anchor = _sole_free_variable(f)
    return dea1_to_tl(fo_to_dea(f, anchor, budget=budget))


def translate_with_trace(
    f: fo.FoFormula, budget: Optional[int] = None
) -> tuple[tl.TlFormula, TranslationTrace]:
    """As fo_to_tl, recording per-pass disjunct counts and sizes."""
    anchor = _sole_free_variable(f)
    trace = TranslationTrace()
    d = fo_to_dea(f, anchor, trace=trace, budget=budget)
    result = dea1_to_tl(d)
    trace.record(
        "emit",
        f"dea with {len(d.disjuncts)} disjunct(s)",
        tl.print_tl(result),
        len(d.disjuncts),
        tl.size(result),
    )
    return result, trace
