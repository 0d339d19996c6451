"""Index maps, word closure, bit counters, guard saturation sentences,
alternating machines, and the satisfiability encoding."""

import itertools
from pathlib import Path

import pytest

import afkit.hardness as H
import afkit.semantics as M
import afkit.syntax as S
import afkit.words as W

DATA = Path(__file__).parent / "data"


def _machine(name):
    return H.parse_atm((DATA / f"{name}.atm").read_text(), name=name)


# ---------------------------------------------------------------------------
# Index maps and closure

def test_lambda_walks():
    assert H.lambda_walk(0, 2) == (1, 2, 3, 4)
    assert H.lambda_apply(0, "abcd") == tuple("abcd")
    assert H.lambda_apply(1, "abcd") == tuple("abbc")
    assert H.lambda_apply(2, "abcd") == tuple("abab")
    assert H.lambda_apply(3, "abcd") == tuple("abcc")
    for i in range(4):
        assert W.is_adjacent(H.lambda_walk(i, 3))
    with pytest.raises(S.FormulaError):
        H.lambda_walk(4, 2)


def test_closure_small():
    got = H.closure_W(1, {("0", "1", "0")})
    # Images: (0,1,1) by map 1, (0,1,0) by maps 0/3, then (0,1,1) is stable.
    assert got == {("0", "1", "0"), ("0", "1", "1")}
    # Closing the full 01-prefixed seed reaches every 01-prefixed word.
    m = 3
    seed = {("0", "1") + t for t in itertools.product("01", repeat=m)}
    assert H.closure_W(m, seed) == seed
    with pytest.raises(W.WordError):
        H.closure_W(2, {("0", "1")})


# ---------------------------------------------------------------------------
# Bit counters

def _counter_structure(m, left, right):
    domain = [f"a{i}" for i in range(2 * m)]
    ones = [d for d, bit in zip(domain, left + right) if bit]
    return M.make_structure(domain, {(H.O_PRED, 1): [(d,) for d in ones]}), domain


@pytest.mark.parametrize("m", [1, 2, 3])
def test_counters_sample(m):
    fs = H.build_counters(m)
    for lv, rv in itertools.product(range(1 << m), repeat=2):
        left = [(lv >> i) & 1 for i in range(m)]
        right = [(rv >> i) & 1 for i in range(m)]
        s, domain = _counter_structure(m, left, right)
        asg = dict(zip((S.var(i) for i in range(1, 2 * m + 1)), domain))
        assert M.evaluate(s, fs["less"], asg) == (lv < rv)
        assert M.evaluate(s, fs["eq"], asg) == (lv == rv)
        assert M.evaluate(s, fs["succ+1"], asg) == (lv == rv + 1)
        assert M.evaluate(s, fs["succ-1"], asg) == (lv == rv - 1)


def test_counters_literal_variant_is_modular():
    m = 2
    literal = H.build_counters(m, literal=True)
    for lv, rv in itertools.product(range(1 << m), repeat=2):
        left = [(lv >> i) & 1 for i in range(m)]
        right = [(rv >> i) & 1 for i in range(m)]
        s, domain = _counter_structure(m, left, right)
        asg = dict(zip((S.var(i) for i in range(1, 2 * m + 1)), domain))
        assert M.evaluate(s, literal["succ+1"], asg) == (
            lv == (rv + 1) % (1 << m))
        assert M.evaluate(s, literal["succ-1"], asg) == (
            rv == (lv + 1) % (1 << m))


def test_bin_word_and_bit_value():
    assert H.bin_word("z", "o", 5, 4) == ("o", "z", "o", "z")
    s = M.make_structure(["z", "o"], {(H.O_PRED, 1): [("o",)]})
    for v in range(16):
        assert H.bit_value(s, H.bin_word("z", "o", v, 4)) == v
    with pytest.raises(S.FormulaError):
        H.bin_word("z", "o", 4, 2)


# ---------------------------------------------------------------------------
# Guard saturation sentences

def test_saturation_sentences_are_guarded_adjacent():
    for m in (1, 2):
        assert S.classify(H.build_zeta("V", "G", m)).adjacent
        assert S.classify(H.build_zeta("V", "G", m)).guarded_adjacent
        assert S.classify(H.build_epsilon("E", "F", m)).adjacent
        assert S.classify(H.build_epsilon("E", "F", m)).guarded_adjacent


def test_zeta_forces_closure_of_pair_words():
    m = 1
    zeta = H.build_zeta("V", "G", m)
    s = M.make_structure(
        ["a", "b"],
        {("V", 2): [("a", "b")],
         ("G", m + 2): [("a", "b") + t
                        for t in itertools.product("ab", repeat=m)]})
    assert M.evaluate(s, zeta)
    # Dropping one saturated tuple breaks the sentence.
    broken = M.make_structure(
        ["a", "b"],
        {("V", 2): [("a", "b")], ("G", m + 2): [("a", "b", "b")]})
    assert not M.evaluate(broken, zeta)


# ---------------------------------------------------------------------------
# Machine parsing and simulation

def test_parse_atm_errors():
    with pytest.raises(H.MachineError):
        H.parse_atm("alphabet: _ 1\ninitial: q0\n")
    with pytest.raises(H.MachineError):
        H.parse_atm("states: q0:E\nalphabet: _ 1\ninitial: q9\n")
    with pytest.raises(H.MachineError):
        H.parse_atm("states: q0:E\nalphabet: _ 1\ninitial: q0\n"
                    "deltaL: q0 1 -> q0 1 2\n")
    with pytest.raises(H.MachineError):
        H.parse_atm("states: q0:X\nalphabet: _ 1\ninitial: q0\n")


def test_simulate_machines():
    status, tree = H.simulate_atm(_machine("hop"), "1")
    assert status == "accept" and tree.size() == 2

    status, tree = H.simulate_atm(_machine("fork"), "1")
    assert status == "accept" and tree.size() == 3

    status, tree = H.simulate_atm(_machine("dodge"), "1")
    assert status == "accept"
    # The existential root backtracks past the rejecting left branch.
    (side, _tau, _child), = tree.root.children
    assert side == "r"

    status, tree = H.simulate_atm(_machine("sink"), "1")
    assert status == "reject" and tree is None


# ---------------------------------------------------------------------------
# Encoding

def test_encoding_shape():
    machine = _machine("fork")
    enc = H.encode_atm(machine, "1")
    names = [name for name, _ in enc.conjuncts]
    assert names == ["phi1", "phi2", "phi3", "phi4", "phi5", "phi6",
                     "phi7", "phi8", "phi9", "zeta_V_n", "zeta_V_2n",
                     "epsilon_El_n", "epsilon_Er_n"]
    assert enc.n == 1
    assert enc.signature["V"] == 2
    assert enc.signature[H.F_N] == 2 * enc.n + 4
    for _, f in enc.conjuncts:
        assert S.classify(f).guarded_adjacent
    literal = H.encode_atm(machine, "1", literal_succ=True)
    assert S.node_count(literal.sentence()) != S.node_count(enc.sentence())


def test_verify_encoding_passes():
    report = H.verify_encoding(_machine("hop"), "1")
    assert report["pass"]
    assert {r["conjunct"] for r in report["conjuncts"]} == {
        name for name, _ in H.encode_atm(_machine("hop"), "1").conjuncts}
    assert all(r["millis"] >= 0 for r in report["conjuncts"])


def test_verify_encoding_rejecting_machine():
    with pytest.raises(H.MachineError):
        H.verify_encoding(_machine("sink"), "1")


def test_fault_injection_fails_a_conjunct():
    machine = _machine("hop")
    status, tree = H.simulate_atm(machine, "1")
    assert status == "accept"
    enc = H.encode_atm(machine, "1")
    structure = H.embed_and_expand(tree, 1)
    # Corrupt the head predicate: move the root's head marker.
    exts = dict(structure.extensions)
    key = ("H", 1)
    (old,) = [t for t in exts[key] if t[0].endswith("v0")]
    exts[key] = frozenset(t for t in exts[key] if t != old)
    broken = M.Structure(structure.domain, exts)
    report = H.check_conjuncts(enc, broken)
    assert not report["pass"]
