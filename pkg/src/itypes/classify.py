"""Classification of theories: strictness, naturality, the functional-type
predicate, F-type theories, and an adequacy report for the three semantics
(type inference, simple, and the functional one).

F-type status is a three-valued answer: the general definition quantifies over
all types, so outside the recognized shapes and syntactic sufficient
conditions the honest verdict is Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .assign import SuiteReport, Verdict
from .errors import UnsupportedTheory
from .filters import FiniteFilter, phi_membership
from .subtype import _arrow_heads, eq, leq
from .syntax import Arrow, Atom, Inter, NU, OMEGA, Type, inter_of, print_type
from .theory import (
    BA_RULES,
    Rule,
    TheorySpec,
    validate,
    validates_ao,
    validates_ba,
)


def _require_valid(spec: TheorySpec):
    violations = validate(spec)
    if violations:
        raise UnsupportedTheory(f"invalid theory spec: {violations}")


def is_strict(spec: TheorySpec) -> bool:
    _require_valid(spec)
    return not spec.has_omega and validates_ba(spec)


def is_natural(spec: TheorySpec) -> bool:
    _require_valid(spec)
    return spec.has_omega and validates_ao(spec)


def _tri_or(a: Verdict, b: Verdict) -> Verdict:
    if Verdict.YES in (a, b):
        return Verdict.YES
    if a is Verdict.NO and b is Verdict.NO:
        return Verdict.NO
    return Verdict.UNKNOWN


def fun_predicate(spec: TheorySpec, a: Type) -> Verdict:
    """Whether a is a functional type: an arrow, an intersection with a
    functional conjunct, or an atom equivalent to one."""
    match a:
        case Arrow():
            return Verdict.YES
        case Inter(left, right):
            return _tri_or(fun_predicate(spec, left), fun_predicate(spec, right))
        case Atom(name):
            if spec.has_nu and eq(spec, a, Atom(NU)):
                return Verdict.YES
            if spec.equation_for(name) is not None:
                return Verdict.YES
            if Rule.OMEGA_ETA in spec.rules and eq(spec, a, Atom(OMEGA)):
                return Verdict.YES
            return Verdict.NO
    raise TypeError(a)


def _plain_atoms(spec: TheorySpec):
    return sorted(a for a in spec.atoms if a not in (OMEGA, NU))


def is_f_type_theory(spec: TheorySpec) -> Verdict:
    """Whether every type's functional behaviour is witnessed by arrows."""
    _require_valid(spec)
    strict = is_strict(spec)
    natural = is_natural(spec)
    if not strict and not natural:
        return Verdict.NO
    if natural and Rule.OMEGA_ETA in spec.rules:
        # omega itself decomposes via omega ~ omega -> omega; every other
        # atom needs an explicit arrow equation
        ok = all(spec.equation_for(a) is not None for a in _plain_atoms(spec))
        return Verdict.YES if ok else Verdict.NO
    if strict and spec.has_nu:
        ok = all(
            leq(spec, Atom(NU), Atom(a)) or spec.equation_for(a) is not None
            for a in _plain_atoms(spec)
        )
        return Verdict.YES if ok else Verdict.NO
    if strict and spec.rules == BA_RULES and not spec.atom_equations:
        # plain-atom theories over the base rules are known to qualify
        return Verdict.YES
    if natural and spec.atoms == frozenset({OMEGA}) and not spec.atom_equations:
        # the lazy theory over omega alone is known to qualify
        return Verdict.YES
    if all(spec.equation_for(a) is not None for a in _plain_atoms(spec)):
        return Verdict.YES
    return Verdict.UNKNOWN


def _arrow_decomposition(spec: TheorySpec, a: Type) -> Type | None:
    """An intersection of arrows equivalent to a, if the arrow heads of a
    already suffice; None otherwise."""
    heads = [h.arrow for h in _arrow_heads(spec, a)]
    if not heads:
        return None
    candidate = inter_of(heads)
    return candidate if eq(spec, a, candidate) else None


def fun_alternative_check(spec: TheorySpec, corpus) -> SuiteReport:
    """Cross-check the recursive predicate against its semantic alternative:
    fun(A) iff A is equivalent to nu or to an intersection of arrows."""
    report = SuiteReport()
    for a in corpus:
        report.checked += 1
        rec = fun_predicate(spec, a)
        if rec is Verdict.UNKNOWN:
            continue
        alt = (spec.has_nu and eq(spec, a, Atom(NU))) or (
            _arrow_decomposition(spec, a) is not None
        )
        if (rec is Verdict.YES) != alt:
            report.counterexamples.append((print_type(a), rec.value, alt))
    return report


@dataclass
class AdequacyReport:
    strict: bool
    natural: bool
    inference_adequate: bool
    simple_adequate: bool
    f_type_theory: Verdict
    f_adequate: Verdict
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "strict": self.strict,
            "natural": self.natural,
            "inference_adequate": self.inference_adequate,
            "simple_adequate": self.simple_adequate,
            "f_type_theory": self.f_type_theory.value,
            "f_adequate": self.f_adequate.value,
            "notes": list(self.notes),
        }


def adequacy_report(spec: TheorySpec) -> AdequacyReport:
    _require_valid(spec)
    strict = is_strict(spec)
    natural = is_natural(spec)
    inference = strict or natural
    simple = (strict and not spec.has_nu) or (
        natural and Rule.OMEGA_ETA in spec.rules
    )
    f_type = is_f_type_theory(spec)

    notes = []
    if strict:
        notes.append("strict: no omega and the base arrow rules hold")
    elif natural:
        notes.append("natural: omega is a top type and abstractions are lazily typed")
    else:
        notes.append("neither strict nor natural: no adequacy guarantees apply")
    notes.append(
        "type inference semantics: adequate iff the theory is strict or natural"
    )
    if simple:
        notes.append(
            "simple semantics: adequate (strict without nu, or natural with "
            "omega equivalent to omega -> omega)"
        )
    else:
        notes.append(
            "simple semantics: not adequate (nu distinguishes abstractions, or "
            "omega is not equivalent to omega -> omega)"
        )
    match f_type:
        case Verdict.YES:
            notes.append(
                "functional semantics: adequate; every functional type is "
                "witnessed by arrows"
            )
        case Verdict.NO:
            notes.append(
                "functional semantics: not adequate; some atom has functional "
                "behaviour with no arrow decomposition"
            )
        case Verdict.UNKNOWN:
            notes.append(
                "functional semantics: undetermined for this spec shape"
            )
    return AdequacyReport(strict, natural, inference, simple, f_type, f_type, notes)


def fun_implies_phi_check(spec: TheorySpec, corpus) -> SuiteReport:
    """In an F-type theory, a filter generated by a functional type is in the
    functionality set."""
    report = SuiteReport()
    for a in corpus:
        if fun_predicate(spec, a) is not Verdict.YES:
            continue
        report.checked += 1
        if not phi_membership(spec, FiniteFilter(a)):
            report.counterexamples.append((print_type(a),))
    return report
