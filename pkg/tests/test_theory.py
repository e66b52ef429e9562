import json

import pytest

from itypes.syntax import NU, OMEGA, parse_type
from itypes.theory import (
    BA_RULES,
    NamedTheory,
    Rule,
    Violation,
    load_spec,
    make_spec,
    named_theory,
    spec_from_json,
    spec_to_json,
    validate,
    validates_ao,
    validates_ba,
)


def test_named_theories_have_expected_constants(all_theories):
    assert not all_theories["ba"].has_omega and not all_theories["ba"].has_nu
    assert all_theories["ehr"].has_nu and not all_theories["ehr"].has_omega
    assert all_theories["ao"].has_omega and not all_theories["ao"].has_nu
    assert all_theories["bcd"].has_omega and not all_theories["bcd"].has_nu


def test_named_theories_have_expected_rules(all_theories):
    for spec in all_theories.values():
        assert BA_RULES <= spec.rules
    assert Rule.NU_TOP in all_theories["ehr"].rules
    assert Rule.OMEGA_LAZY in all_theories["ao"].rules
    assert Rule.OMEGA_ETA in all_theories["bcd"].rules
    assert Rule.OMEGA_ETA not in all_theories["ao"].rules


def test_named_theories_validate(all_theories):
    for spec in all_theories.values():
        assert validate(spec) == []
        assert validates_ba(spec)
    assert validates_ao(all_theories["ao"])
    assert validates_ao(all_theories["bcd"])
    assert not validates_ao(all_theories["ba"])


def test_extra_atoms_are_letters():
    spec = named_theory(NamedTheory.BCD, 3)
    assert {"a", "b", "c"} <= spec.atoms


def test_omega_nu_conflict():
    spec = make_spec({OMEGA, NU}, BA_RULES | {Rule.OMEGA_TOP, Rule.NU_TOP})
    assert Violation.OMEGA_NU_CONFLICT in validate(spec)


def test_constant_requires_its_axiom():
    assert Violation.MISSING_ASSUMPTION_1 in validate(make_spec({OMEGA}, BA_RULES))
    assert Violation.MISSING_ASSUMPTION_2 in validate(make_spec({NU}, BA_RULES))


def test_rule_requires_its_constant():
    spec = make_spec({"a"}, BA_RULES | {Rule.OMEGA_ETA})
    assert Violation.OMEGA_RULE_WITHOUT_OMEGA in validate(spec)
    spec = make_spec({"a"}, BA_RULES | {Rule.NU_TOP})
    assert Violation.NU_RULE_WITHOUT_NU in validate(spec)


def test_equation_rhs_must_be_arrows_over_known_atoms():
    bad = make_spec({"a", "b"}, BA_RULES, {"a": parse_type("b")})
    assert Violation.BAD_EQUATION_RHS in validate(bad)
    bad = make_spec({"a"}, BA_RULES, {"a": parse_type("b -> b")})
    assert Violation.BAD_EQUATION_RHS in validate(bad)
    ok = make_spec({"a", "b"}, BA_RULES, {"a": parse_type("(b -> b) & (b -> b -> b)")})
    assert validate(ok) == []


def test_cyclic_equations_rejected():
    spec = make_spec(
        {"a", "b"},
        BA_RULES,
        {"a": parse_type("b -> b"), "b": parse_type("a -> a")},
    )
    assert Violation.CYCLIC_EQUATIONS in validate(spec)


def test_acyclic_equation_chain_accepted():
    spec = make_spec(
        {"a", "b", "c"},
        BA_RULES,
        {"a": parse_type("b -> b"), "b": parse_type("c -> c")},
    )
    assert validate(spec) == []


def test_json_roundtrip(all_theories, tmp_path):
    for name, spec in all_theories.items():
        data = spec_to_json(spec)
        assert spec_from_json(data) == spec
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data))
        assert load_spec(path) == spec


def test_json_roundtrip_with_equations():
    spec = make_spec(
        {"a", "b", OMEGA},
        BA_RULES | {Rule.OMEGA_TOP, Rule.OMEGA_ETA},
        {"a": parse_type("b -> b")},
        name="custom",
    )
    assert spec_from_json(spec_to_json(spec)) == spec


def test_json_omits_distinguished_atoms_from_atom_list(bcd):
    data = spec_to_json(bcd)
    assert OMEGA not in data["atoms"]
    assert data["omega"] is True
    assert data["nu"] is False
