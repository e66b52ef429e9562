"""ASTs, parsing and printing for lambda terms and intersection types.

Surface syntax is plain ASCII: ``\\x. M`` for abstraction, ``->`` for the
function arrow, ``&`` for intersection, ``omega`` and ``nu`` for the two
distinguished atoms.  ``&`` binds tighter than ``->``; ``->`` associates to
the right; application associates to the left.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, UnknownAtomError

OMEGA = "omega"
NU = "nu"


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class Type:
    def __str__(self):
        return print_type(self)


@dataclass(frozen=True)
class Atom(Type):
    name: str


@dataclass(frozen=True)
class Arrow(Type):
    dom: Type
    cod: Type


@dataclass(frozen=True)
class Inter(Type):
    left: Type
    right: Type


def type_size(t: Type) -> int:
    match t:
        case Atom():
            return 1
        case Arrow(d, c) | Inter(d, c):
            return 1 + type_size(d) + type_size(c)
    raise TypeError(t)


def type_atoms(t: Type) -> frozenset[str]:
    match t:
        case Atom(name):
            return frozenset({name})
        case Arrow(d, c) | Inter(d, c):
            return type_atoms(d) | type_atoms(c)
    raise TypeError(t)


def conjuncts(t: Type) -> list[Type]:
    """Flatten a binary intersection tree into its non-intersection leaves."""
    if isinstance(t, Inter):
        return conjuncts(t.left) + conjuncts(t.right)
    return [t]


def inter_of(parts) -> Type:
    """Right-nested intersection of a nonempty list of types."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty intersection")
    acc = parts[-1]
    for p in reversed(parts[:-1]):
        acc = Inter(p, acc)
    return acc


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Term:
    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    binder: str
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(x):
            return frozenset({x})
        case Lam(x, body):
            return free_vars(body) - {x}
        case App(f, a):
            return free_vars(f) | free_vars(a)
    raise TypeError(t)


def alpha_eq(a: Term, b: Term) -> bool:
    """Equality up to consistent renaming of bound variables."""

    def go(a, b, env_a, env_b, depth):
        match a, b:
            case Var(x), Var(y):
                bx, by = env_a.get(x), env_b.get(y)
                if bx is None and by is None:
                    return x == y
                return bx == by
            case Lam(x, m), Lam(y, n):
                ea = dict(env_a)
                eb = dict(env_b)
                ea[x] = depth
                eb[y] = depth
                return go(m, n, ea, eb, depth + 1)
            case App(f, u), App(g, v):
                return go(f, g, env_a, env_b, depth) and go(u, v, env_a, env_b, depth)
        return False

    return go(a, b, {}, {}, 0)


def canonical_term(t: Term) -> Term:
    """Rename bound variables to a de-Bruijn-indexed scheme; alpha-canonical."""

    def go(t, env, depth):
        match t:
            case Var(x):
                return Var(env.get(x, x))
            case Lam(x, body):
                fresh = f"_{depth}"
                return Lam(fresh, go(body, {**env, x: fresh}, depth + 1))
            case App(f, a):
                return App(go(f, env, depth), go(a, env, depth))
        raise TypeError(t)

    return go(t, {}, 0)


# ---------------------------------------------------------------- lexer

_SYMBOLS = ("->", "\\", ".", "(", ")", "&")


def _tokenize(src: str):
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha():
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(("ident", src[i:j], i))
            i = j
            continue
        for sym in _SYMBOLS:
            if src.startswith(sym, i):
                toks.append((sym, sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], expected=kind)
        return tok

    def done(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], expected="end of input")


def parse_term(src: str) -> Term:
    """Parse ``term ::= lam | app``; application is left-associative and a
    lambda body extends as far right as possible."""
    p = _Parser(src)
    t = _term(p)
    p.done()
    return t


def _term(p):
    if p.peek()[0] == "\\":
        p.next()
        binder = p.expect("ident")[1]
        p.expect(".")
        return Lam(binder, _term(p))
    return _app(p)


def _app(p):
    t = _atom_term(p)
    while p.peek()[0] in ("ident", "("):
        t = App(t, _atom_term(p))
    return t


def _atom_term(p):
    kind, value, offset = p.next()
    if kind == "ident":
        return Var(value)
    if kind == "(":
        t = _term(p)
        p.expect(")")
        return t
    raise ParseError(f"unexpected {value or 'end of input'!r}", offset, expected="term")


def parse_type(src: str, spec=None) -> Type:
    """Parse a type; when ``spec`` is given, every atom must belong to its
    constant set."""
    p = _Parser(src)
    t = _type(p)
    p.done()
    if spec is not None:
        for name in sorted(type_atoms(t)):
            if name not in spec.atoms:
                raise UnknownAtomError(name)
    return t


def _type(p):
    left = _inter(p)
    if p.peek()[0] == "->":
        p.next()
        return Arrow(left, _type(p))
    return left


def _inter(p):
    t = _prim(p)
    while p.peek()[0] == "&":
        p.next()
        t = Inter(t, _prim(p))
    return t


def _prim(p):
    kind, value, offset = p.next()
    if kind == "ident":
        return Atom(value)
    if kind == "(":
        t = _type(p)
        p.expect(")")
        return t
    raise ParseError(f"unexpected {value or 'end of input'!r}", offset, expected="type")


# ---------------------------------------------------------------- printers

def print_term(t: Term) -> str:
    match t:
        case Var(x):
            return x
        case Lam(x, body):
            return f"\\{x}. {print_term(body)}"
        case App(f, a):
            fs = print_term(f)
            if isinstance(f, Lam):
                fs = f"({fs})"
            arg = print_term(a)
            if isinstance(a, (App, Lam)):
                arg = f"({arg})"
            return f"{fs} {arg}"
    raise TypeError(t)


def print_type(t: Type) -> str:
    # Grammar: '&' is left-associative and tighter than '->'; '->' is
    # right-associative.  Parenthesize exactly where the tree shape would
    # otherwise be lost, so parse(print(t)) == t.
    match t:
        case Atom(name):
            return name
        case Arrow(d, c):
            ds = print_type(d)
            if isinstance(d, Arrow):
                ds = f"({ds})"
            return f"{ds} -> {print_type(c)}"
        case Inter(l, r):
            ls = print_type(l)
            if isinstance(l, Arrow):
                ls = f"({ls})"
            rs = print_type(r)
            if isinstance(r, (Arrow, Inter)):
                rs = f"({rs})"
            return f"{ls} & {rs}"
    raise TypeError(t)
