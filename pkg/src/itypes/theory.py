"""Intersection-type theories as data: constant sets, rule flags, atom equations.

A theory is a finite constant set together with a selection of the special
subtyping axioms/rules (omega-top, nu-top, omega-eta, omega-lazy, arrow-inter,
eta) and an optional table equating atoms with intersections of arrows.
"""

from __future__ import annotations

import enum
import json
import string
from dataclasses import dataclass

from .syntax import (
    Arrow,
    Atom,
    Inter,
    NU,
    OMEGA,
    Type,
    conjuncts,
    parse_type,
    print_type,
    type_atoms,
)


class Rule(enum.Enum):
    OMEGA_TOP = "omega-top"
    NU_TOP = "nu-top"
    OMEGA_ETA = "omega-eta"
    OMEGA_LAZY = "omega-lazy"
    ARROW_INTER = "arrow-inter"
    ETA = "eta"


BA_RULES = frozenset({Rule.ARROW_INTER, Rule.ETA})


class NamedTheory(enum.Enum):
    BA = "ba"
    EHR = "ehr"
    AO = "ao"
    BCD = "bcd"


@dataclass(frozen=True)
class TheorySpec:
    atoms: frozenset[str]
    rules: frozenset[Rule]
    atom_equations: tuple[tuple[str, Type], ...] = ()
    name: str | None = None

    @property
    def has_omega(self) -> bool:
        return OMEGA in self.atoms

    @property
    def has_nu(self) -> bool:
        return NU in self.atoms

    def equation_for(self, atom: str) -> Type | None:
        for name, rhs in self.atom_equations:
            if name == atom:
                return rhs
        return None

    def cache_key(self):
        return (
            tuple(sorted(self.atoms)),
            tuple(sorted(r.value for r in self.rules)),
            self.atom_equations,
        )


def make_spec(atoms, rules, equations=None, name=None) -> TheorySpec:
    eqs = tuple(sorted((equations or {}).items()))
    return TheorySpec(frozenset(atoms), frozenset(rules), eqs, name)


def named_theory(n: NamedTheory, extra_atoms: int = 0) -> TheorySpec:
    """The four standard theories; ``extra_atoms`` adds fresh atoms a, b, c,
    ... as a finite stand-in for an infinite supply of plain atoms."""
    if extra_atoms > 26:
        raise ValueError("at most 26 fresh atoms")
    fresh = {string.ascii_lowercase[i] for i in range(extra_atoms)}
    match n:
        case NamedTheory.BA:
            return make_spec(fresh, BA_RULES, name="ba")
        case NamedTheory.EHR:
            return make_spec({NU} | fresh, BA_RULES | {Rule.NU_TOP}, name="ehr")
        case NamedTheory.AO:
            return make_spec(
                {OMEGA} | fresh,
                BA_RULES | {Rule.OMEGA_TOP, Rule.OMEGA_LAZY},
                name="ao",
            )
        case NamedTheory.BCD:
            return make_spec(
                {OMEGA} | fresh,
                BA_RULES | {Rule.OMEGA_TOP, Rule.OMEGA_ETA},
                name="bcd",
            )
    raise ValueError(n)


# ---------------------------------------------------------------- validation

class Violation(enum.Enum):
    OMEGA_NU_CONFLICT = "OmegaNuConflict"
    MISSING_ASSUMPTION_1 = "MissingAssumption1"
    MISSING_ASSUMPTION_2 = "MissingAssumption2"
    OMEGA_RULE_WITHOUT_OMEGA = "OmegaRuleWithoutOmega"
    NU_RULE_WITHOUT_NU = "NuRuleWithoutNu"
    BAD_EQUATION_KEY = "BadEquationKey"
    BAD_EQUATION_RHS = "BadEquationRhs"
    CYCLIC_EQUATIONS = "CyclicEquations"
    BAD_ATOM_NAME = "BadAtomName"


def validate(spec: TheorySpec) -> list[Violation]:
    """Well-formedness check; an empty list means the spec is usable."""
    out = []
    for a in spec.atoms:
        if not a or not a[0].isalpha() or not all(c.isalnum() or c == "_" for c in a):
            out.append(Violation.BAD_ATOM_NAME)
            break
    if spec.has_omega and spec.has_nu:
        out.append(Violation.OMEGA_NU_CONFLICT)
    if spec.has_omega and Rule.OMEGA_TOP not in spec.rules:
        out.append(Violation.MISSING_ASSUMPTION_1)
    if spec.has_nu and Rule.NU_TOP not in spec.rules:
        out.append(Violation.MISSING_ASSUMPTION_2)
    if (Rule.OMEGA_ETA in spec.rules or Rule.OMEGA_LAZY in spec.rules
            or Rule.OMEGA_TOP in spec.rules) and not spec.has_omega:
        out.append(Violation.OMEGA_RULE_WITHOUT_OMEGA)
    if Rule.NU_TOP in spec.rules and not spec.has_nu:
        out.append(Violation.NU_RULE_WITHOUT_NU)

    deps: dict[str, set[str]] = {}
    for key, rhs in spec.atom_equations:
        if key not in spec.atoms or key in (OMEGA, NU):
            out.append(Violation.BAD_EQUATION_KEY)
            continue
        if not type_atoms(rhs) <= spec.atoms:
            out.append(Violation.BAD_EQUATION_RHS)
            continue
        if not all(isinstance(c, Arrow) for c in conjuncts(rhs)):
            out.append(Violation.BAD_EQUATION_RHS)
            continue
        deps[key] = set(type_atoms(rhs))

    # equation graph must be acyclic so expansion terminates
    eq_keys = set(deps)
    visiting: set[str] = set()
    done: set[str] = set()

    def cyclic(a):
        if a in done:
            return False
        if a in visiting:
            return True
        visiting.add(a)
        bad = any(cyclic(b) for b in deps.get(a, ()) if b in eq_keys)
        visiting.discard(a)
        done.add(a)
        return bad

    if any(cyclic(a) for a in eq_keys):
        out.append(Violation.CYCLIC_EQUATIONS)
    return out


def validates_ba(spec: TheorySpec) -> bool:
    return BA_RULES <= spec.rules


def validates_ao(spec: TheorySpec) -> bool:
    # omega-eta counts: together with (eta) it yields the lazy axiom.
    return (
        validates_ba(spec)
        and spec.has_omega
        and Rule.OMEGA_TOP in spec.rules
        and (Rule.OMEGA_LAZY in spec.rules or Rule.OMEGA_ETA in spec.rules)
    )


# ---------------------------------------------------------------- JSON format

def spec_to_json(spec: TheorySpec) -> dict:
    return {
        "name": spec.name,
        "atoms": sorted(a for a in spec.atoms if a not in (OMEGA, NU)),
        "omega": spec.has_omega,
        "nu": spec.has_nu,
        "rules": sorted(r.value for r in spec.rules),
        "equations": {k: print_type(v) for k, v in spec.atom_equations},
    }


def spec_from_json(data: dict) -> TheorySpec:
    atoms = set(data.get("atoms", []))
    if data.get("omega"):
        atoms.add(OMEGA)
    if data.get("nu"):
        atoms.add(NU)
    rules = frozenset(Rule(r) for r in data.get("rules", []))
    probe = TheorySpec(frozenset(atoms), rules)
    equations = {
        k: parse_type(v, probe) for k, v in (data.get("equations") or {}).items()
    }
    return make_spec(atoms, rules, equations, data.get("name"))


def load_spec(path) -> TheorySpec:
    with open(path) as f:
        return spec_from_json(json.load(f))
