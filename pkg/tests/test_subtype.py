import pytest

from itypes.errors import ResourceLimit, UnsupportedTheory
from itypes.subtype import (
    OracleResult,
    Proof,
    canonical,
    canonical_types,
    check_proof,
    enumerate_types,
    eq,
    leq,
    leq_oracle,
    leq_trace,
    normalize,
)
from itypes.syntax import Arrow, Atom, Inter, parse_type as P, print_type
from itypes.theory import BA_RULES, Rule, make_spec


# ---------------------------------------------------------------- golden table


def test_bcd_omega_equals_omega_arrow_omega(bcd):
    assert eq(bcd, P("omega"), P("omega -> omega"))


def test_arrow_intersection_distributes(bcd):
    assert leq(bcd, P("(a -> b) & (a -> c)"), P("a -> b & c"))


def test_ao_lazy_axiom(ao):
    assert leq(ao, P("a -> b"), P("omega -> omega"))
    assert not leq(ao, P("omega"), P("omega -> omega"))


def test_ehr_arrows_below_nu(ehr):
    assert leq(ehr, P("a -> b"), P("nu"))
    assert not leq(ehr, P("a"), P("nu"))


def test_ba_distinct_atoms_unrelated(ba):
    assert not leq(ba, P("a"), P("b"))
    assert not leq(ba, P("b"), P("a"))


# ---------------------------------------------------------------- structure


def test_eta_contravariance(ba):
    assert leq(ba, P("a -> b"), P("a & b -> b"))
    assert not leq(ba, P("a & b -> b"), P("a -> b"))


def test_intersection_projections(ba):
    t = P("a & (a -> b)")
    assert leq(ba, t, P("a"))
    assert leq(ba, t, P("a -> b"))
    assert not leq(ba, P("a"), t)


def test_beta_soundness_needs_joint_selection(bcd):
    # only the union of both arrows reaches b & c
    assert leq(bcd, P("(a -> b) & (a -> c)"), P("a -> b & c"))
    assert not leq(bcd, P("a -> b"), P("a -> b & c"))


def test_omega_codomain_shortcut(bcd, ao):
    assert leq(bcd, P("a"), P("b -> omega"))
    # lazy theories need an arrow on the left first
    assert not leq(ao, P("a"), P("b -> omega"))
    assert leq(ao, P("a -> b"), P("c -> omega"))


def test_atom_equations_unfold_both_ways():
    spec = make_spec({"a", "b"}, BA_RULES, {"a": P("b -> b")})
    assert eq(spec, P("a"), P("b -> b"))
    assert leq(spec, P("a & b"), P("b -> b"))
    assert leq(spec, P("(b -> b) & b"), P("a"))


def test_equation_chain_composes():
    spec = make_spec(
        {"a", "b", "c"},
        BA_RULES,
        {"a": P("b -> b"), "b": P("c -> c")},
    )
    assert eq(spec, P("a"), P("b -> b"))
    assert leq(spec, P("a"), P("(c -> c) -> b"))


def test_non_ba_spec_rejected():
    spec = make_spec({"a"}, frozenset({Rule.ETA}))
    with pytest.raises(UnsupportedTheory):
        leq(spec, P("a"), P("a"))


# ---------------------------------------------------------------- traces


def test_positive_answers_carry_checkable_traces(bcd):
    pairs = [
        ("omega", "omega -> omega"),
        ("(a -> b) & (a -> c)", "a -> b & c"),
        ("a & b", "b & a"),
        ("a -> b", "a & c -> b"),
    ]
    for lhs, rhs in pairs:
        p = leq_trace(bcd, P(lhs), P(rhs))
        assert p is not None
        assert p.lhs == P(lhs) and p.rhs == P(rhs)
        assert check_proof(bcd, p)


def test_trace_is_none_on_failure(ba):
    assert leq_trace(ba, P("a"), P("b")) is None


def test_checker_rejects_wrong_rule_instances(ba, bcd):
    bogus = Proof("omega-top", P("a"), P("omega"))
    assert not check_proof(ba, bogus)  # rule not in theory
    assert check_proof(bcd, bogus)
    assert not check_proof(bcd, Proof("omega-top", P("a"), P("b")))
    assert not check_proof(ba, Proof("refl", P("a"), P("b")))
    assert not check_proof(ba, Proof("incl-l", P("a & b"), P("b")))


def test_checker_rejects_bad_transitivity(ba):
    a, b = P("a"), P("b")
    bad = Proof("trans", a, b, (Proof("refl", a, a), Proof("refl", b, b)))
    assert not check_proof(ba, bad)


# ---------------------------------------------------------------- normal forms


def test_normalize_flattens_and_sorts(bcd):
    assert canonical(bcd, P("(a & b) & a")) == canonical(bcd, P("b & a"))
    assert normalize(bcd, P("a & a")) == normalize(bcd, P("a"))


def test_normalize_drops_redundant_omega(bcd):
    assert canonical(bcd, P("omega & a")) == P("a")
    assert canonical(bcd, P("omega & omega")) == P("omega")


def test_canonical_preserves_equivalence(bcd):
    for src in ("a & b -> c", "(a -> b) & (b -> a)", "omega & (a -> omega)"):
        t = P(src)
        assert eq(bcd, t, canonical(bcd, t))


def test_canonical_is_idempotent(bcd):
    for t in enumerate_types({"a", "b", "omega"}, 4):
        ct = canonical(bcd, t)
        assert canonical(bcd, ct) == ct


# ---------------------------------------------------------------- enumeration


def test_enumerate_types_is_exhaustive_and_deterministic():
    types = enumerate_types({"a"}, 3)
    assert types == [Atom("a"), Arrow(Atom("a"), Atom("a")), Inter(Atom("a"), Atom("a"))]
    assert enumerate_types({"a"}, 3) == types


def test_enumerate_types_size_counts():
    # t(1)=2, t(3)=8, t(5)=64 over two atoms; even sizes are empty
    assert len(enumerate_types({"a", "b"}, 5)) == 2 + 8 + 64


def test_canonical_types_are_unique(bcd):
    out = canonical_types(bcd, {"a", "omega"}, 4)
    assert len(out) == len(set(out))
    for t in out:
        assert canonical(bcd, t) == t


# ---------------------------------------------------------------- oracle


def test_oracle_confirms_decision_procedure(bcd):
    assert leq_oracle(bcd, P("omega"), P("omega -> omega"), 5) is OracleResult.YES
    assert leq_oracle(bcd, P("a & b"), P("b & a"), 5) is OracleResult.YES
    assert leq_oracle(bcd, P("a -> b"), P("a & b -> b"), 5) is OracleResult.YES


def test_oracle_not_found_is_not_a_refutation(bcd):
    # the pair holds but the witness universe is too small to see it
    assert leq_oracle(bcd, P("omega"), P("omega -> omega"), 1) is OracleResult.NOT_FOUND
    assert leq(bcd, P("omega"), P("omega -> omega"))


def test_oracle_respects_universe_cap(bcd):
    with pytest.raises(ResourceLimit):
        leq_oracle(bcd, P("a"), P("b"), 9, cap=100)


def test_oracle_finds_nu_top(ehr):
    assert leq_oracle(ehr, P("a -> b"), P("nu"), 5) is OracleResult.YES
