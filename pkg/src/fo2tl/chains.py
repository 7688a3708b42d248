"""Finite labeled linear orders and brute-force evaluators for both
logics.

A chain of size N has positions 0..N-1 in the usual order; each atom is
interpreted as a subset of positions.  Finite linear orders are Dedekind
complete, so every equivalence the translation pipeline promises must
hold exactly here -- this module is the ground truth the rest of the
library is tested against.

Temporal evaluation labels every position of a chain in one bottom-up
pass per distinct subformula (memoized per chain); the memoization is
invisible to callers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from . import fo, tl


class EvalError(ValueError):
    """Evaluation outside a chain or with an incomplete assignment."""


class ChainFormatError(ValueError):
    """Malformed chain text."""


Assignment = Mapping[str, int]


class Chain:
    """A finite labeled linear order.  Immutable; atoms with empty label
    sets are dropped so equal interpretations compare equal."""

    __slots__ = ("size", "labels", "_hash", "_eval", "__weakref__")

    def __init__(self, size: int, labels: Mapping[str, Iterable[int]] | None = None):
        if size < 0:
            raise ValueError("chain size must be nonnegative")
        normalized: dict[str, frozenset[int]] = {}
        for atom, positions in (labels or {}).items():
            ps = frozenset(positions)
            for p in ps:
                if not 0 <= p < size:
                    raise ValueError(f"position {p} of atom {atom} outside chain of size {size}")
            if ps:
                normalized[atom] = ps
        self.size = size
        self.labels = normalized
        self._hash = hash((size, tuple(sorted((a, tuple(sorted(ps))) for a, ps in normalized.items()))))
        self._eval: Optional[_TlEvaluator] = None

    def positions(self, atom: str) -> frozenset[int]:
        return self.labels.get(atom, frozenset())

    def evaluator(self) -> "_TlEvaluator":
        if self._eval is None:
            self._eval = _TlEvaluator(self)
        return self._eval

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chain)
            and self.size == other.size
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"Chain({format_chain(self)!r})"


def reverse_chain(m: Chain) -> Chain:
    n = m.size
    return Chain(n, {atom: {n - 1 - p for p in ps} for atom, ps in m.labels.items()})


def parse_chain(text: str) -> Chain:
    """Parse the `n=5; P=0,2,4; Q=1` format (whitespace-insensitive)."""
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts:
        raise ChainFormatError("empty chain description")
    head = parts[0].replace(" ", "")
    if not head.startswith("n="):
        raise ChainFormatError("chain must start with 'n=SIZE'")
    try:
        size = int(head[2:])
    except ValueError:
        raise ChainFormatError(f"bad chain size {head[2:]!r}") from None
    labels: dict[str, set[int]] = {}
    for part in parts[1:]:
        name, sep, rest = part.partition("=")
        name = name.strip()
        if not sep or not name or not name.replace("_", "a").isalnum() or name[0].isdigit():
            raise ChainFormatError(f"bad atom entry {part!r}")
        positions: set[int] = set()
        rest = rest.strip()
        if rest:
            for piece in rest.split(","):
                try:
                    positions.add(int(piece.strip()))
                except ValueError:
                    raise ChainFormatError(f"bad position {piece.strip()!r} for atom {name}") from None
        labels.setdefault(name, set()).update(positions)
    try:
        return Chain(size, labels)
    except ValueError as exc:
        raise ChainFormatError(str(exc)) from None


def format_chain(m: Chain) -> str:
    parts = [f"n={m.size}"]
    for atom in sorted(m.labels):
        parts.append(f"{atom}=" + ",".join(str(p) for p in sorted(m.labels[atom])))
    return "; ".join(parts)


class _TlEvaluator:
    """Per-chain labeling: for each distinct subformula, the vector of
    truth values at every position, computed once."""

    def __init__(self, chain: Chain):
        self.chain = chain
        self._vectors: dict[tl.TlFormula, list[bool]] = {}
        self._cums: dict[tl.TlFormula, list[int]] = {}

    def vector(self, f: tl.TlFormula) -> list[bool]:
        vectors = self._vectors
        if f in vectors:
            return vectors[f]
        stack = [f]
        while stack:
            g = stack[-1]
            if g in vectors:
                stack.pop()
                continue
            if isinstance(g, (tl.Tru, tl.Atom)):
                vectors[g] = self._leaf(g)
                stack.pop()
                continue
            if isinstance(g, tl.Not):
                children = (g.sub,)
            else:
                children = (g.left, g.right)
            missing = [c for c in children if c not in vectors]
            if missing:
                stack.extend(missing)
                continue
            vectors[g] = self._combine(g)
            stack.pop()
        return vectors[f]

    def _leaf(self, g: tl.TlFormula) -> list[bool]:
        n = self.chain.size
        if isinstance(g, tl.Tru):
            return [True] * n
        ps = self.chain.positions(g.name)
        return [t in ps for t in range(n)]

    def _combine(self, g: tl.TlFormula) -> list[bool]:
        n = self.chain.size
        vectors = self._vectors
        if isinstance(g, tl.Not):
            return [not v for v in vectors[g.sub]]
        a, b = vectors[g.left], vectors[g.right]
        if isinstance(g, tl.And):
            return [x and y for x, y in zip(a, b)]
        if isinstance(g, tl.Or):
            return [x or y for x, y in zip(a, b)]
        out = [False] * n
        if isinstance(g, tl.Until):
            # strict: out[t] iff some t' > t has b, with a on all of (t, t')
            for t in range(n - 2, -1, -1):
                out[t] = b[t + 1] or (a[t + 1] and out[t + 1])
        else:  # Since, mirrored
            for t in range(1, n):
                out[t] = b[t - 1] or (a[t - 1] and out[t - 1])
        return out

    def cum(self, f: tl.TlFormula) -> list[int]:
        """Prefix counts of true positions, for O(1) interval checks."""
        if f not in self._cums:
            total = 0
            acc = [0]
            for v in self.vector(f):
                total += v
                acc.append(total)
            self._cums[f] = acc
        return self._cums[f]

    def value(self, f: tl.TlFormula, t: int) -> bool:
        return self.vector(f)[t]

    def all_true(self, f: tl.TlFormula, lo: int, hi: int) -> bool:
        """True iff f holds at every position in [lo, hi)."""
        if lo >= hi:
            return True
        c = self.cum(f)
        return c[hi] - c[lo] == hi - lo


def eval_tl(m: Chain, t: int, f: tl.TlFormula) -> bool:
    if not 0 <= t < m.size:
        raise EvalError(f"position {t} outside chain of size {m.size}")
    return m.evaluator().value(f, t)


def eval_fo(m: Chain, assignment: Assignment, f: fo.FoFormula) -> bool:
    """Standard Tarskian evaluation; quantifiers range over positions."""

    def lookup(var: str, env: Mapping[str, int]) -> int:
        if var not in env:
            raise EvalError(f"variable {var!r} is not assigned")
        p = env[var]
        if not 0 <= p < m.size:
            raise EvalError(f"position {p} for {var!r} outside chain of size {m.size}")
        return p

    def walk(g: fo.FoFormula, env: dict[str, int]) -> bool:
        if isinstance(g, fo.AtomPred):
            return lookup(g.var, env) in m.positions(g.atom)
        if isinstance(g, fo.Less):
            return lookup(g.left, env) < lookup(g.right, env)
        if isinstance(g, fo.Equal):
            return lookup(g.left, env) == lookup(g.right, env)
        if isinstance(g, fo.Not):
            return not walk(g.sub, env)
        if isinstance(g, fo.And):
            return walk(g.left, env) and walk(g.right, env)
        if isinstance(g, fo.Or):
            return walk(g.left, env) or walk(g.right, env)
        if isinstance(g, fo.Exists):
            saved = env.get(g.var)
            for p in range(m.size):
                env[g.var] = p
                if walk(g.body, env):
                    _restore(env, g.var, saved)
                    return True
            _restore(env, g.var, saved)
            return False
        if isinstance(g, fo.Forall):
            saved = env.get(g.var)
            for p in range(m.size):
                env[g.var] = p
                if not walk(g.body, env):
                    _restore(env, g.var, saved)
                    return False
            _restore(env, g.var, saved)
            return True
        raise TypeError(f"not a FoFormula: {g!r}")

    return walk(f, dict(assignment))


def _restore(env: dict[str, int], var: str, saved: Optional[int]):
    if saved is None:
        env.pop(var, None)
    else:
        env[var] = saved


def fo_sat_table(m: Chain, f: fo.FoFormula) -> tuple[tuple[str, ...], set[tuple[int, ...]]]:
    """Bottom-up satisfying-assignment tables: the set of tuples (aligned
    with the sorted free-variable list) making f true on m.  Equivalent
    to eval_fo but far faster when a formula is queried at many points.
    """
    n = m.size

    def full(vs: tuple[str, ...]) -> set[tuple[int, ...]]:
        return set(itertools.product(range(n), repeat=len(vs)))

    def expand(vs_from, table, vs_to):
        if vs_from == vs_to:
            return table
        idx = []
        for v in vs_to:
            idx.append(vs_from.index(v) if v in vs_from else -1)
        extra = sum(1 for i in idx if i < 0)
        out = set()
        for t in table:
            for fills in itertools.product(range(n), repeat=extra):
                it = iter(fills)
                out.add(tuple(t[i] if i >= 0 else next(it) for i in idx))
        return out

    def walk(g: fo.FoFormula) -> tuple[tuple[str, ...], set[tuple[int, ...]]]:
        if isinstance(g, fo.AtomPred):
            return (g.var,), {(t,) for t in m.positions(g.atom)}
        if isinstance(g, (fo.Less, fo.Equal)):
            op = (lambda a, b: a < b) if isinstance(g, fo.Less) else (lambda a, b: a == b)
            if g.left == g.right:
                vs = (g.left,)
                return vs, {(t,) for t in range(n) if op(t, t)}
            vs = tuple(sorted((g.left, g.right)))
            li, ri = vs.index(g.left), vs.index(g.right)
            return vs, {t for t in full(vs) if op(t[li], t[ri])}
        if isinstance(g, fo.Not):
            vs, table = walk(g.sub)
            return vs, full(vs) - table
        if isinstance(g, (fo.And, fo.Or)):
            lv, lt = walk(g.left)
            rv, rt = walk(g.right)
            vs = tuple(sorted(set(lv) | set(rv)))
            lt = expand(lv, lt, vs)
            rt = expand(rv, rt, vs)
            return vs, (lt & rt) if isinstance(g, fo.And) else (lt | rt)
        if isinstance(g, (fo.Exists, fo.Forall)):
            sv, st = walk(g.body)
            if g.var not in sv:
                if isinstance(g, fo.Exists):
                    return sv, st if n > 0 else set()
                return sv, st if n > 0 else full(sv)
            k = sv.index(g.var)
            vs = sv[:k] + sv[k + 1 :]
            if isinstance(g, fo.Exists):
                return vs, {t[:k] + t[k + 1 :] for t in st}
            counts: dict[tuple[int, ...], int] = {}
            for t in st:
                key = t[:k] + t[k + 1 :]
                counts[key] = counts.get(key, 0) + 1
            return vs, {key for key, c in counts.items() if c == n}
        raise TypeError(f"not a FoFormula: {g!r}")

    return walk(f)


def fo_position_vector(m: Chain, f: fo.FoFormula, var: str) -> list[bool]:
    """Truth value of f at every position, with var as the evaluation
    point.  Requires free_vars(f) a subset of {var}."""
    extra = fo.free_vars(f) - {var}
    if extra:
        raise EvalError(f"unexpected free variables {sorted(extra)}")
    vs, table = fo_sat_table(m, f)
    if not vs:
        value = () in table
        return [value] * m.size
    return [(t,) in table for t in range(m.size)]


def enumerate_chains(max_size: int, atoms: Sequence[str]) -> Iterator[Chain]:
    """Every chain of size 0..max_size over the given atoms, exactly
    once, in a fixed order: sizes ascending, then labelings with the
    first atom's subset varying slowest and subsets in binary order."""
    if max_size < 0:
        raise ValueError("max_size must be nonnegative")
    names = list(atoms)
    for size in range(max_size + 1):
        subsets = [[p for p in range(size) if mask >> p & 1] for mask in range(1 << size)]
        for choice in itertools.product(subsets, repeat=len(names)):
            yield Chain(size, dict(zip(names, choice)))


def random_chain(seed: int, size: int, atoms: Sequence[str], density: Fraction | float = Fraction(1, 2)) -> Chain:
    """Deterministic for a fixed seed: each (atom, position) pair is
    labeled independently with the given probability."""
    if size < 0:
        raise ValueError("size must be nonnegative")
    rng = random.Random(seed)
    labels = {
        atom: {p for p in range(size) if rng.random() < density}
        for atom in sorted(atoms)
    }
    return Chain(size, labels)


@dataclass(frozen=True)
class Counterexample:
    chain: Chain
    position: int
    fo_value: bool
    tl_value: bool


@dataclass(frozen=True)
class EquivResult:
    passed: bool
    chains_checked: int
    positions_checked: int
    counterexample: Optional[Counterexample] = None

    def __bool__(self) -> bool:
        return self.passed


def check_equiv_fo_tl(
    formula: fo.FoFormula,
    var: str,
    temporal: tl.TlFormula,
    chains: Iterable[Chain],
) -> EquivResult:
    """PASS iff the two formulas agree at every position of every chain;
    otherwise reports the first disagreement in (chain order, position)."""
    free = fo.free_vars(formula)
    if free != {var}:
        raise EvalError(f"expected exactly the free variable {var!r}, found {sorted(free)}")
    chains_checked = 0
    positions_checked = 0
    for m in chains:
        chains_checked += 1
        if m.size == 0:
            continue
        fo_vec = fo_position_vector(m, formula, var)
        tl_vec = m.evaluator().vector(temporal)
        positions_checked += m.size
        if fo_vec != tl_vec:
            t = next(i for i, (a, b) in enumerate(zip(fo_vec, tl_vec)) if a != b)
            return EquivResult(
                False,
                chains_checked,
                positions_checked,
                Counterexample(m, t, fo_vec[t], tl_vec[t]),
            )
    return EquivResult(True, chains_checked, positions_checked)
