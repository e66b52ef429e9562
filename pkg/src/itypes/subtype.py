"""Subtype decision procedure for theories validating the base rule set.

``leq`` decides A <= B by flattening intersections and reducing arrow goals
to a subset selection over the left side's "arrow heads" (explicit arrow
conjuncts, atom-equation expansions, and the omega->omega contributions of
the omega-eta / omega-lazy axioms).  Every positive answer carries a proof
trace: a tree of primitive rule applications that ``check_proof`` can verify
without trusting the algorithm.

``leq_oracle`` is the independent safety net: it saturates the subtype
relation over a finite universe of types and answers from the closure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import ResourceLimit, UnsupportedTheory
from .syntax import (
    Arrow,
    Atom,
    Inter,
    NU,
    OMEGA,
    Type,
    conjuncts,
    inter_of,
    print_type,
)
from .theory import Rule, TheorySpec, validates_ba

# ---------------------------------------------------------------- proofs


@dataclass(frozen=True)
class Proof:
    """One node of an inequational derivation: ``lhs <= rhs`` by ``rule``."""

    rule: str
    lhs: Type
    rhs: Type
    premises: tuple["Proof", ...] = ()


def _refl(a):
    return Proof("refl", a, a)


def _trans(p, q):
    if p.rule == "refl":
        return q
    if q.rule == "refl":
        return p
    return Proof("trans", p.lhs, q.rhs, (p, q))


def _mon(p, q):
    return Proof("mon", Inter(p.lhs, q.lhs), Inter(p.rhs, q.rhs), (p, q))


def _eta(pdom, pcod):
    # contravariant in the domain: pdom proves rhs.dom <= lhs.dom
    return Proof("eta", Arrow(pdom.rhs, pcod.lhs), Arrow(pdom.lhs, pcod.rhs), (pdom, pcod))


def check_proof(spec: TheorySpec, p: Proof) -> bool:
    """Verify that every node is a correct instance of a primitive rule."""
    rules = spec.rules
    match p.rule:
        case "refl":
            return p.lhs == p.rhs and not p.premises
        case "trans":
            if len(p.premises) != 2:
                return False
            q, r = p.premises
            return (
                q.lhs == p.lhs and q.rhs == r.lhs and r.rhs == p.rhs
                and check_proof(spec, q) and check_proof(spec, r)
            )
        case "idem":
            return p.rhs == Inter(p.lhs, p.lhs) and not p.premises
        case "incl-l":
            return isinstance(p.lhs, Inter) and p.lhs.left == p.rhs and not p.premises
        case "incl-r":
            return isinstance(p.lhs, Inter) and p.lhs.right == p.rhs and not p.premises
        case "mon":
            if len(p.premises) != 2 or not isinstance(p.lhs, Inter) or not isinstance(p.rhs, Inter):
                return False
            q, r = p.premises
            return (
                q.lhs == p.lhs.left and r.lhs == p.lhs.right
                and q.rhs == p.rhs.left and r.rhs == p.rhs.right
                and check_proof(spec, q) and check_proof(spec, r)
            )
        case "eta":
            if Rule.ETA not in rules or len(p.premises) != 2:
                return False
            if not isinstance(p.lhs, Arrow) or not isinstance(p.rhs, Arrow):
                return False
            pdom, pcod = p.premises
            return (
                pdom.lhs == p.rhs.dom and pdom.rhs == p.lhs.dom
                and pcod.lhs == p.lhs.cod and pcod.rhs == p.rhs.cod
                and check_proof(spec, pdom) and check_proof(spec, pcod)
            )
        case "arrow-inter":
            if Rule.ARROW_INTER not in rules or p.premises:
                return False
            match p.lhs, p.rhs:
                case Inter(Arrow(a1, b), Arrow(a2, c)), Arrow(a3, Inter(b2, c2)):
                    return a1 == a2 == a3 and b == b2 and c == c2
            return False
        case "omega-top":
            return Rule.OMEGA_TOP in rules and p.rhs == Atom(OMEGA) and not p.premises
        case "nu-top":
            return (
                Rule.NU_TOP in rules and isinstance(p.lhs, Arrow)
                and p.rhs == Atom(NU) and not p.premises
            )
        case "omega-eta":
            omega = Atom(OMEGA)
            return (
                Rule.OMEGA_ETA in rules and p.lhs == omega
                and p.rhs == Arrow(omega, omega) and not p.premises
            )
        case "omega-lazy":
            omega = Atom(OMEGA)
            return (
                Rule.OMEGA_LAZY in rules and isinstance(p.lhs, Arrow)
                and p.rhs == Arrow(omega, omega) and not p.premises
            )
        case "eq-unfold":
            return (
                isinstance(p.lhs, Atom)
                and spec.equation_for(p.lhs.name) == p.rhs and not p.premises
            )
        case "eq-fold":
            return (
                isinstance(p.rhs, Atom)
                and spec.equation_for(p.rhs.name) == p.lhs and not p.premises
            )
    return False


def proof_to_json(p: Proof) -> dict:
    return {
        "rule": p.rule,
        "lhs": print_type(p.lhs),
        "rhs": print_type(p.rhs),
        "premises": [proof_to_json(q) for q in p.premises],
    }


# --------------------------------------------------------- proof combinators


def _conjuncts_with_paths(t: Type):
    """All non-intersection leaves of t, with the incl-projection path."""
    out = []

    def go(t, path):
        if isinstance(t, Inter):
            go(t.left, path + ("l",))
            go(t.right, path + ("r",))
        else:
            out.append((path, t))

    go(t, ())
    return out


def _project(t: Type, path) -> Proof:
    """t <= (conjunct of t at path), by a chain of incl projections."""
    proof = _refl(t)
    cur = t
    for step in path:
        if step == "l":
            proof = _trans(proof, Proof("incl-l", cur, cur.left))
            cur = cur.left
        else:
            proof = _trans(proof, Proof("incl-r", cur, cur.right))
            cur = cur.right
    return proof


def _leq_parts(a: Type, proofs) -> Proof:
    """a <= t1 & ... & tn (right-nested), from proofs of a <= t_i.  The
    result's rhs has exactly the ``inter_of`` shape over the t_i."""
    if len(proofs) == 1:
        return proofs[0]
    rest = _leq_parts(a, proofs[1:])
    return _trans(Proof("idem", a, Inter(a, a)), _mon(proofs[0], rest))


def _arrow_family(t: Type) -> Proof:
    """For t an intersection of arrows: t <= (inter of doms) -> (inter of cods)."""
    if isinstance(t, Arrow):
        return _refl(t)
    assert isinstance(t, Inter)
    head = t.left
    assert isinstance(head, Arrow)
    p_rest = _arrow_family(t.right)
    rest_arrow = p_rest.rhs  # (∩A') -> (∩B')
    lifted = _mon(_refl(head), p_rest)  # t <= head ∩ rest_arrow
    dom = Inter(head.dom, rest_arrow.dom)
    q1 = _eta(Proof("incl-l", dom, head.dom), _refl(head.cod))
    q2 = _eta(Proof("incl-r", dom, rest_arrow.dom), _refl(rest_arrow.cod))
    weakened = _mon(q1, q2)
    ai = Proof(
        "arrow-inter",
        weakened.rhs,
        Arrow(dom, Inter(head.cod, rest_arrow.cod)),
    )
    return _trans(lifted, _trans(weakened, ai))


# ---------------------------------------------------------------- leq


@dataclass(frozen=True)
class _Head:
    arrow: Arrow
    proof: Proof  # a <= arrow


def _arrow_heads(spec: TheorySpec, a: Type) -> list[_Head]:
    heads = []
    for path, leaf in _conjuncts_with_paths(a):
        if isinstance(leaf, Arrow):
            heads.append(_Head(leaf, _project(a, path)))
        elif isinstance(leaf, Atom):
            rhs = spec.equation_for(leaf.name)
            if rhs is not None:
                base = _trans(_project(a, path), Proof("eq-unfold", leaf, rhs))
                for qpath, arr in _conjuncts_with_paths(rhs):
                    heads.append(_Head(arr, _trans(base, _project(rhs, qpath))))
    omega = Atom(OMEGA)
    oo = Arrow(omega, omega)
    if Rule.OMEGA_ETA in spec.rules:
        heads.append(
            _Head(oo, _trans(Proof("omega-top", a, omega), Proof("omega-eta", omega, oo)))
        )
    elif Rule.OMEGA_LAZY in spec.rules and heads:
        first = heads[0]
        heads.append(
            _Head(oo, _trans(first.proof, Proof("omega-lazy", first.arrow, oo)))
        )
    return heads


@lru_cache(maxsize=None)
def _prove(spec: TheorySpec, a: Type, b: Type):
    if a == b:
        return _refl(a)
    if isinstance(b, Inter):
        pl = _prove(spec, a, b.left)
        if pl is None:
            return None
        pr = _prove(spec, a, b.right)
        if pr is None:
            return None
        return _trans(Proof("idem", a, Inter(a, a)), _mon(pl, pr))

    leaves = _conjuncts_with_paths(a)
    if isinstance(b, Atom):
        if spec.has_omega and b.name == OMEGA:
            return Proof("omega-top", a, b)
        for path, leaf in leaves:
            if leaf == b:
                return _project(a, path)
        if spec.has_nu and b.name == NU:
            heads = _arrow_heads(spec, a)
            if heads:
                h = heads[0]
                return _trans(h.proof, Proof("nu-top", h.arrow, b))
            return None
        rhs = spec.equation_for(b.name)
        if rhs is not None:
            p = _prove(spec, a, rhs)
            if p is not None:
                return _trans(p, Proof("eq-fold", rhs, b))
        return None

    assert isinstance(b, Arrow)
    c, d = b.dom, b.cod
    omega = Atom(OMEGA)
    if spec.has_omega:
        p_od = _prove(spec, omega, d)  # d ~ omega?
        if p_od is not None:
            oo = Arrow(omega, omega)
            tail = _eta(Proof("omega-top", c, omega), p_od)  # Ω→Ω <= c→d
            if Rule.OMEGA_ETA in spec.rules:
                return _trans(
                    Proof("omega-top", a, omega),
                    _trans(Proof("omega-eta", omega, oo), tail),
                )
            if Rule.OMEGA_LAZY in spec.rules:
                heads = _arrow_heads(spec, a)
                if heads:
                    h = heads[0]
                    return _trans(
                        h.proof, _trans(Proof("omega-lazy", h.arrow, oo), tail)
                    )

    # beta-soundness step: take every head whose domain absorbs c
    selected = []
    for h in _arrow_heads(spec, a):
        pc = _prove(spec, c, h.arrow.dom)
        if pc is not None:
            selected.append((h, pc))
    if not selected:
        return None
    cods = inter_of([h.arrow.cod for h, _ in selected])
    pd = _prove(spec, cods, d)
    if pd is None:
        return None
    p1 = _leq_parts(a, [h.proof for h, _ in selected])
    p2 = _arrow_family(p1.rhs)
    pc_all = _leq_parts(c, [pc for _, pc in selected])
    return _trans(p1, _trans(p2, _eta(pc_all, pd)))


def _require_ba(spec):
    if not validates_ba(spec):
        raise UnsupportedTheory(
            "the subtype decision procedure needs the arrow-inter and eta rules"
        )


def leq_trace(spec: TheorySpec, a: Type, b: Type):
    """Decide a <= b; returns the proof trace on success, None on failure."""
    _require_ba(spec)
    return _prove(spec, a, b)


def leq(spec: TheorySpec, a: Type, b: Type) -> bool:
    return leq_trace(spec, a, b) is not None


def eq(spec: TheorySpec, a: Type, b: Type) -> bool:
    return leq(spec, a, b) and leq(spec, b, a)


# ---------------------------------------------------------------- normal forms


@dataclass(frozen=True)
class NAtom:
    name: str


@dataclass(frozen=True)
class NArrow:
    dom: "NormalType"
    cod: "NormalType"


@dataclass(frozen=True)
class NormalType:
    conjuncts: tuple

    @property
    def is_top(self) -> bool:
        return self.conjuncts == (NAtom(OMEGA),)


def _item_key(item):
    if isinstance(item, NAtom):
        return (0, item.name)
    return (1, print_type(denorm(item.dom)), print_type(denorm(item.cod)))


def normalize(spec: TheorySpec, t: Type) -> NormalType:
    """Flatten intersections, dedupe, drop redundant omega conjuncts, sort."""
    items = []
    for leaf in conjuncts(t):
        if isinstance(leaf, Atom):
            items.append(NAtom(leaf.name))
        else:
            items.append(NArrow(normalize(spec, leaf.dom), normalize(spec, leaf.cod)))
    seen = []
    for item in items:
        if item not in seen:
            seen.append(item)
    if spec.has_omega and len(seen) > 1:
        seen = [i for i in seen if i != NAtom(OMEGA)] or [NAtom(OMEGA)]
    return NormalType(tuple(sorted(seen, key=_item_key)))


def denorm(nt) -> Type:
    if isinstance(nt, NAtom):
        return Atom(nt.name)
    if isinstance(nt, NArrow):
        return Arrow(denorm(nt.dom), denorm(nt.cod))
    return inter_of([denorm(i) for i in nt.conjuncts])


def canonical(spec: TheorySpec, t: Type) -> Type:
    return denorm(normalize(spec, t))


# ---------------------------------------------------------------- enumeration


def enumerate_types(atom_names, max_size: int) -> list[Type]:
    """Every type of node count <= max_size over the given atoms, in a fixed
    deterministic order (by size, then construction order)."""
    by_size = {1: [Atom(n) for n in sorted(atom_names)]}
    for n in range(2, max_size + 1):
        acc = []
        for i in range(1, n - 1):
            j = n - 1 - i
            for d in by_size.get(i, ()):
                for c in by_size.get(j, ()):
                    acc.append(Arrow(d, c))
            for d in by_size.get(i, ()):
                for c in by_size.get(j, ()):
                    acc.append(Inter(d, c))
        by_size[n] = acc
    out = []
    for n in range(1, max_size + 1):
        out.extend(by_size.get(n, ()))
    return out


def canonical_types(spec: TheorySpec, atom_names, max_size: int) -> list[Type]:
    """Canonical representatives (one per normal form) of the enumerated types."""
    out = []
    seen = set()
    for t in enumerate_types(atom_names, max_size):
        ct = canonical(spec, t)
        if ct not in seen:
            seen.add(ct)
            out.append(ct)
    return out


# ---------------------------------------------------------------- oracle


class OracleResult(enum.Enum):
    YES = "yes"
    NOT_FOUND = "not-found"


DEFAULT_UNIVERSE_CAP = 20000


def _universe_atoms(spec: TheorySpec, extra) -> frozenset[str]:
    atoms = set(extra)
    if spec.has_omega:
        atoms.add(OMEGA)
    if spec.has_nu:
        atoms.add(NU)
    return frozenset(atoms)


@lru_cache(maxsize=32)
def _closure(spec: TheorySpec, atoms: frozenset, bound: int, cap: int):
    universe = enumerate_types(atoms, bound)
    if len(universe) > cap:
        raise ResourceLimit(
            f"oracle universe has {len(universe)} types (cap {cap})"
        )
    index = {t: i for i, t in enumerate(universe)}
    n = len(universe)
    succ = [0] * n  # succ[i] bit j set <=> universe[i] <= universe[j]

    def add(i, j):
        succ[i] |= 1 << j

    omega = Atom(OMEGA)
    oo = Arrow(omega, omega)
    nu = Atom(NU)
    rules = spec.rules
    arrows = [(i, t) for i, t in enumerate(universe) if isinstance(t, Arrow)]
    inters = [(i, t) for i, t in enumerate(universe) if isinstance(t, Inter)]

    for i, t in enumerate(universe):
        add(i, i)
        dbl = Inter(t, t)
        if dbl in index:
            add(i, index[dbl])
        if Rule.OMEGA_TOP in rules and omega in index:
            add(i, index[omega])
    for i, t in inters:
        add(i, index[t.left])
        add(i, index[t.right])
        # arrow-inter instances
        if (
            Rule.ARROW_INTER in rules
            and isinstance(t.left, Arrow)
            and isinstance(t.right, Arrow)
            and t.left.dom == t.right.dom
        ):
            target = Arrow(t.left.dom, Inter(t.left.cod, t.right.cod))
            if target in index:
                add(i, index[target])
    for i, t in arrows:
        if Rule.NU_TOP in rules and nu in index:
            add(i, index[nu])
        if Rule.OMEGA_LAZY in rules and oo in index:
            add(i, index[oo])
    if Rule.OMEGA_ETA in rules and omega in index and oo in index:
        add(index[omega], index[oo])
    for name, rhs in spec.atom_equations:
        at = Atom(name)
        if at in index and rhs in index:
            add(index[at], index[rhs])
            add(index[rhs], index[at])

    while True:
        # transitive closure over the current edge set
        dirty = True
        while dirty:
            dirty = False
            for i in range(n):
                acc = succ[i]
                rest = acc
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    acc |= succ[j]
                if acc != succ[i]:
                    succ[i] = acc
                    dirty = True
        # pairing (derivable from idem + mon, but stays inside the universe)
        grew = False
        for j, u in inters:
            li, ri = index[u.left], index[u.right]
            for i in range(n):
                if not (succ[i] >> j) & 1:
                    if (succ[i] >> li) & 1 and (succ[i] >> ri) & 1:
                        add(i, j)
                        grew = True
        # mon
        for i, t in inters:
            li, ri = index[t.left], index[t.right]
            for j, u in inters:
                if not (succ[i] >> j) & 1:
                    if (succ[li] >> index[u.left]) & 1 and (succ[ri] >> index[u.right]) & 1:
                        add(i, j)
                        grew = True
        # eta
        if Rule.ETA in rules:
            for i, t in arrows:
                di, ci = index[t.dom], index[t.cod]
                for j, u in arrows:
                    if not (succ[i] >> j) & 1:
                        if (succ[index[u.dom]] >> di) & 1 and (succ[ci] >> index[u.cod]) & 1:
                            add(i, j)
                            grew = True
        if not grew:
            return index, succ


def oracle_relation(spec: TheorySpec, atoms, bound: int, cap: int = DEFAULT_UNIVERSE_CAP):
    """The saturated subtype relation over the finite universe, for bulk tests.

    Returns (index map type->i, successor bitmasks)."""
    return _closure(spec, _universe_atoms(spec, frozenset(atoms)), bound, cap)


def leq_oracle(
    spec: TheorySpec,
    a: Type,
    b: Type,
    universe_bound: int,
    cap: int = DEFAULT_UNIVERSE_CAP,
) -> OracleResult:
    """Semi-decision by saturation: YES is sound; NOT_FOUND only means no
    derivation fits inside the universe."""
    from .syntax import type_atoms

    atoms = _universe_atoms(spec, type_atoms(a) | type_atoms(b))
    index, succ = _closure(spec, atoms, universe_bound, cap)
    if a not in index or b not in index:
        return OracleResult.NOT_FOUND
    if (succ[index[a]] >> index[b]) & 1:
        return OracleResult.YES
    return OracleResult.NOT_FOUND
