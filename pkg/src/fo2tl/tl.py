"""Temporal formulas over strict Until and strict Since.

The core grammar is true | atom | ! | & | "|" | U | S.  Everything else
(G, H, K+, K-, false, ->) is an abbreviation expanded at construction
time, so the rest of the library only ever sees the seven core
constructors.

Nodes are immutable, structurally hashable (the hash is computed once at
construction), and shared freely; all functions here are pure.
"""

from __future__ import annotations

import itertools
import weakref
from typing import Iterable, Iterator

# Nodes are hash-consed: structurally equal formulas are the same object,
# so equality is (almost always) identity and memo tables stay O(1) even
# for huge formulas.  The serial number gives a cheap deterministic total
# order for canonical sorting.
_interned: "weakref.WeakValueDictionary[tuple, TlFormula]" = weakref.WeakValueDictionary()
_serials = itertools.count()


class TlFormula:
    """Base class for temporal formulas."""

    __slots__ = ("_hash", "_serial", "__weakref__")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (
            self.__class__ is other.__class__
            and self._hash == other._hash
            and self._key() == other._key()
        )

    def _key(self) -> tuple:
        raise NotImplementedError

    def __repr__(self) -> str:
        return print_tl(self)


def _intern(key: tuple, make) -> TlFormula:
    node = _interned.get(key)
    if node is None:
        node = make()
        node._hash = hash(key)
        node._serial = next(_serials)
        _interned[key] = node
    return node


class Tru(TlFormula):
    __slots__ = ()

    def __new__(cls):
        def make():
            return object.__new__(cls)

        return _intern(("true",), make)

    def _key(self):
        return ("true",)


class Atom(TlFormula):
    __slots__ = ("name",)

    def __new__(cls, name: str):
        if not name:
            raise ValueError("atom name must be nonempty")

        def make():
            node = object.__new__(cls)
            node.name = name
            return node

        return _intern(("atom", name), make)

    def _key(self):
        return ("atom", self.name)


class Not(TlFormula):
    __slots__ = ("sub",)

    def __new__(cls, sub: TlFormula):
        def make():
            node = object.__new__(cls)
            node.sub = sub
            return node

        return _intern(("not", sub), make)

    def _key(self):
        return ("not", self.sub)


class _Binary(TlFormula):
    __slots__ = ("left", "right")
    _tag = ""

    def __new__(cls, left: TlFormula, right: TlFormula):
        def make():
            node = object.__new__(cls)
            node.left = left
            node.right = right
            return node

        return _intern((cls._tag, left, right), make)

    def _key(self):
        return (self._tag, self.left, self.right)


class And(_Binary):
    __slots__ = ()
    _tag = "and"


class Or(_Binary):
    __slots__ = ()
    _tag = "or"


class Until(_Binary):
    __slots__ = ()
    _tag = "until"


class Since(_Binary):
    __slots__ = ()
    _tag = "since"


def order_key(f: TlFormula) -> int:
    """Deterministic total order on formulas (creation order; identical
    structures share a node, hence a key)."""
    return f._serial


TRUE = Tru()
FALSE = Not(TRUE)


def is_true(f: TlFormula) -> bool:
    return isinstance(f, Tru)


def is_false(f: TlFormula) -> bool:
    return isinstance(f, Not) and isinstance(f.sub, Tru)


# Derived modalities.  G/H are the usual "everywhere after/before"
# abbreviations.  K+/K- are the limit modalities: K+(f) holds at t iff t
# is the infimum of the later f-points.  The textbook abbreviation
# !((!f) U true) alone misfires at a maximal point (no strict future
# means the Until is vacuously false), so we conjoin "some point lies
# strictly ahead"; on orders without endpoints the conjunct is inert.

def globally(f: TlFormula) -> TlFormula:
    return Not(Until(TRUE, Not(f)))


def historically(f: TlFormula) -> TlFormula:
    return Not(Since(TRUE, Not(f)))


def k_plus(f: TlFormula) -> TlFormula:
    return And(Not(Until(Not(f), TRUE)), Until(TRUE, TRUE))


def k_minus(f: TlFormula) -> TlFormula:
    return And(Not(Since(Not(f), TRUE)), Since(TRUE, TRUE))


def implies(left: TlFormula, right: TlFormula) -> TlFormula:
    return Or(Not(left), right)


def mirror(f: TlFormula) -> TlFormula:
    """Time reversal: swap every Until with Since.  Involutive."""
    if isinstance(f, (Tru, Atom)):
        return f
    if isinstance(f, Not):
        return Not(mirror(f.sub))
    if isinstance(f, And):
        return And(mirror(f.left), mirror(f.right))
    if isinstance(f, Or):
        return Or(mirror(f.left), mirror(f.right))
    if isinstance(f, Until):
        return Since(mirror(f.left), mirror(f.right))
    if isinstance(f, Since):
        return Until(mirror(f.left), mirror(f.right))
    raise TypeError(f"not a TlFormula: {f!r}")


def subformulas(f: TlFormula) -> Iterator[TlFormula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.sub)
        elif isinstance(g, _Binary):
            stack.append(g.left)
            stack.append(g.right)


def atoms(f: TlFormula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


_sizes: "weakref.WeakKeyDictionary[TlFormula, int]" = weakref.WeakKeyDictionary()


def size(f: TlFormula) -> int:
    """Node count of the core tree (computed in DAG time: shared
    subterms are measured once but counted per occurrence)."""
    got = _sizes.get(f)
    if got is None:
        if isinstance(f, Not):
            got = 1 + size(f.sub)
        elif isinstance(f, _Binary):
            got = 1 + size(f.left) + size(f.right)
        else:
            got = 1
        _sizes[f] = got
    return got


def conj(left: TlFormula, right: TlFormula) -> TlFormula:
    """Conjunction with unit/zero/complement absorption, used to keep
    labels small and to let merge enumeration prune dead branches."""
    if is_true(left):
        return right
    if is_true(right):
        return left
    if is_false(left) or is_false(right):
        return FALSE
    if left == right:
        return left
    if isinstance(left, Not) and left.sub == right:
        return FALSE
    if isinstance(right, Not) and right.sub == left:
        return FALSE
    return And(left, right)


def disj(left: TlFormula, right: TlFormula) -> TlFormula:
    if is_false(left):
        return right
    if is_false(right):
        return left
    if is_true(left) or is_true(right):
        return TRUE
    if left == right:
        return left
    return Or(left, right)


_conjunct_sets: "weakref.WeakKeyDictionary[TlFormula, frozenset]" = weakref.WeakKeyDictionary()


def conjuncts(f: TlFormula) -> frozenset[TlFormula]:
    """The non-conjunction leaves of f's And-tree (f itself if it is not
    a conjunction).  Cached per node; nodes are interned so lookups are
    cheap."""
    got = _conjunct_sets.get(f)
    if got is None:
        if isinstance(f, And):
            got = conjuncts(f.left) | conjuncts(f.right)
        else:
            got = frozenset((f,))
        _conjunct_sets[f] = got
    return got


def implies_structurally(a: TlFormula, b: TlFormula) -> bool:
    """Sound, cheap approximation of "a entails b": conjunct-set
    membership on the left, disjunct/conjunct decomposition on the
    right.  False negatives are fine; used only to discard redundant
    disjuncts."""
    if a is b or is_true(b) or is_false(a):
        return True
    if b in conjuncts(a):
        return True
    if isinstance(b, And):
        return implies_structurally(a, b.left) and implies_structurally(a, b.right)
    return isinstance(b, Or) and (
        implies_structurally(a, b.left) or implies_structurally(a, b.right)
    )


def big_and(items: Iterable[TlFormula]) -> TlFormula:
    """Balanced conjunction (keeps tree depth logarithmic)."""
    parts = list(items)
    if not parts:
        return TRUE
    while len(parts) > 1:
        parts = [
            conj(parts[i], parts[i + 1]) if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0]


def big_or(items: Iterable[TlFormula]) -> TlFormula:
    parts = list(items)
    if not parts:
        return FALSE
    while len(parts) > 1:
        parts = [
            disj(parts[i], parts[i + 1]) if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0]


_folded: "weakref.WeakSet[TlFormula]" = weakref.WeakSet()


def fold(f: TlFormula) -> TlFormula:
    """Constant folding: boolean units/zeros, double negation,
    complementary pairs, and Until/Since with an unsatisfiable goal.
    Semantics preserving on every chain; idempotent.
    """
    if f in _folded:
        return f
    out = _fold(f)
    _folded.add(out)
    return out


def _fold(f: TlFormula) -> TlFormula:
    if isinstance(f, (Tru, Atom)):
        return f
    if isinstance(f, Not):
        sub = fold(f.sub)
        if is_false(sub):
            return TRUE
        if isinstance(sub, Not):  # double negation; !true stays canonical false
            return sub.sub
        return f if sub is f.sub else Not(sub)
    left = fold(f.left)
    right = fold(f.right)
    if isinstance(f, And):
        if is_false(left) or is_false(right):
            return FALSE
        if is_true(left):
            return right
        if is_true(right):
            return left
        if left == right:
            return left
        if left == Not(right) or right == Not(left):
            return FALSE
    elif isinstance(f, Or):
        if is_true(left) or is_true(right):
            return TRUE
        if is_false(left):
            return right
        if is_false(right):
            return left
        if left == right:
            return left
        if left == Not(right) or right == Not(left):
            return TRUE
    else:  # Until / Since: an unreachable goal makes the whole thing false
        if is_false(right):
            return FALSE
    if left is f.left and right is f.right:
        return f
    return f.__class__(left, right)


def print_tl(f: TlFormula) -> str:
    """Canonical concrete syntax; `parse_tl(print_tl(f)) == f`."""
    if isinstance(f, Tru):
        return "true"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return f"!{print_tl(f.sub)}"  # binaries print parenthesized already
    op = {And: "&", Or: "|", Until: "U", Since: "S"}[f.__class__]
    return f"({print_tl(f.left)} {op} {print_tl(f.right)})"


def sexpr_tl(f: TlFormula) -> str:
    if isinstance(f, Tru):
        return "true"
    if isinstance(f, Atom):
        return f"(atom {f.name})"
    if isinstance(f, Not):
        return f"(not {sexpr_tl(f.sub)})"
    op = {And: "and", Or: "or", Until: "until", Since: "since"}[f.__class__]
    return f"({op} {sexpr_tl(f.left)} {sexpr_tl(f.right)})"
