"""First-order monadic logic of order: unary predicates, < and = on
first-order variables, booleans, and quantifiers.

Implication has no constructor; the parser desugars `a -> b` into
`!a | b`.  Nodes are immutable and structurally hashable, like the
temporal ASTs.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class FoFormula:
    """Base class for first-order formulas."""

    __slots__ = ("_hash", "__weakref__")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if self.__class__ is not other.__class__ or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def _fields(self) -> tuple:
        raise NotImplementedError

    def __repr__(self) -> str:
        return print_fo(self)


class AtomPred(FoFormula):
    __slots__ = ("atom", "var")

    def __init__(self, atom: str, var: str):
        if not atom or not var:
            raise ValueError("atom and variable names must be nonempty")
        self.atom = atom
        self.var = var
        self._hash = hash(("fo.pred", atom, var))

    def _fields(self):
        return (self.atom, self.var)


class Less(FoFormula):
    __slots__ = ("left", "right")

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        self._hash = hash(("fo.less", left, right))

    def _fields(self):
        return (self.left, self.right)


class Equal(FoFormula):
    __slots__ = ("left", "right")

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        self._hash = hash(("fo.equal", left, right))

    def _fields(self):
        return (self.left, self.right)


class Not(FoFormula):
    __slots__ = ("sub",)

    def __init__(self, sub: FoFormula):
        self.sub = sub
        self._hash = hash(("fo.not", sub._hash))

    def _fields(self):
        return (self.sub,)


class _Binary(FoFormula):
    __slots__ = ("left", "right")
    _tag = ""

    def __init__(self, left: FoFormula, right: FoFormula):
        self.left = left
        self.right = right
        self._hash = hash((self._tag, left._hash, right._hash))

    def _fields(self):
        return (self.left, self.right)


class And(_Binary):
    __slots__ = ()
    _tag = "fo.and"


class Or(_Binary):
    __slots__ = ()
    _tag = "fo.or"


class _Quant(FoFormula):
    __slots__ = ("var", "body")
    _tag = ""

    def __init__(self, var: str, body: FoFormula):
        if not var:
            raise ValueError("variable name must be nonempty")
        self.var = var
        self.body = body
        self._hash = hash((self._tag, var, body._hash))

    def _fields(self):
        return (self.var, self.body)


class Exists(_Quant):
    __slots__ = ()
    _tag = "fo.exists"


class Forall(_Quant):
    __slots__ = ()
    _tag = "fo.forall"


def implies(left: FoFormula, right: FoFormula) -> FoFormula:
    return Or(Not(left), right)


def subformulas(f: FoFormula) -> Iterator[FoFormula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.sub)
        elif isinstance(g, _Binary):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, _Quant):
            stack.append(g.body)


def free_vars(f: FoFormula) -> frozenset[str]:
    if isinstance(f, AtomPred):
        return frozenset((f.var,))
    if isinstance(f, (Less, Equal)):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_vars(f.sub)
    if isinstance(f, _Binary):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, _Quant):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a FoFormula: {f!r}")


def atoms(f: FoFormula) -> frozenset[str]:
    return frozenset(g.atom for g in subformulas(f) if isinstance(g, AtomPred))


def size(f: FoFormula) -> int:
    """Node count; atoms count their symbol and argument(s) individually."""
    if isinstance(f, (AtomPred, Less, Equal)):
        return 3
    if isinstance(f, Not):
        return 1 + size(f.sub)
    if isinstance(f, _Binary):
        return 1 + size(f.left) + size(f.right)
    return 2 + size(f.body)


def standardize_apart(f: FoFormula, reserved: Iterable[str] = ()) -> FoFormula:
    """Rename bound variables so that no name is bound twice and no bound
    name collides with a free or reserved one.  Keeps original names when
    possible."""
    used = set(free_vars(f)) | set(reserved)

    def fresh(base: str) -> str:
        i = 2
        while f"{base}_{i}" in used:
            i += 1
        return f"{base}_{i}"

    def walk(g: FoFormula, env: dict[str, str]) -> FoFormula:
        if isinstance(g, AtomPred):
            return AtomPred(g.atom, env.get(g.var, g.var))
        if isinstance(g, Less):
            return Less(env.get(g.left, g.left), env.get(g.right, g.right))
        if isinstance(g, Equal):
            return Equal(env.get(g.left, g.left), env.get(g.right, g.right))
        if isinstance(g, Not):
            return Not(walk(g.sub, env))
        if isinstance(g, _Binary):
            return g.__class__(walk(g.left, env), walk(g.right, env))
        name = g.var
        if name in used:
            name = fresh(name)
        used.add(name)
        env2 = dict(env)
        env2[g.var] = name
        return g.__class__(name, walk(g.body, env2))

    return walk(f, {})


def eliminate_foralls(f: FoFormula) -> FoFormula:
    """Rewrite every universal quantifier as a negated existential."""
    if isinstance(f, (AtomPred, Less, Equal)):
        return f
    if isinstance(f, Not):
        return Not(eliminate_foralls(f.sub))
    if isinstance(f, _Binary):
        return f.__class__(eliminate_foralls(f.left), eliminate_foralls(f.right))
    if isinstance(f, Exists):
        return Exists(f.var, eliminate_foralls(f.body))
    return Not(Exists(f.var, Not(eliminate_foralls(f.body))))


def print_fo(f: FoFormula) -> str:
    """Canonical concrete syntax; `parse_fo(print_fo(f)) == f`.

    Binary connectives and quantified formulas always print their own
    parentheses, so operator precedence never has to be reconstructed.
    """
    if isinstance(f, AtomPred):
        return f"{f.atom}({f.var})"
    if isinstance(f, Less):
        return f"{f.left} < {f.right}"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Not):
        sub = print_fo(f.sub)
        if isinstance(f.sub, (Less, Equal)):
            return f"!({sub})"
        return f"!{sub}"
    if isinstance(f, And):
        return f"({print_fo(f.left)} & {print_fo(f.right)})"
    if isinstance(f, Or):
        return f"({print_fo(f.left)} | {print_fo(f.right)})"
    q = "E" if isinstance(f, Exists) else "A"
    return f"({q} {f.var}. {print_fo(f.body)})"
