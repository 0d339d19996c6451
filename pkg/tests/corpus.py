"""Shared test corpora.

Classification entries carry hand-derived verdicts: ``adjacent`` and, when
the formula is adjacent, the least level ``min_k`` admitting it.  The
normal-form corpora are written directly in the two-shape layout (witness
conjuncts, then a universal matrix) with deliberately constraining matrices
so that the type pools stay small.  Expected verdicts are hand-derived;
the oracle cross-checks live in the acceptance tests.
"""

# (formula text, adjacent, min_k or None)
CLASSIFY_CORPUS = [
    ("forall x1 exists x2 r(x1,x2)", True, 0),
    ("forall x1 r(x1,x1)", True, 0),
    ("forall x1 forall x2 (r(x1,x2) -> r(x2,x1))", True, 0),
    ("forall x1 forall x2 forall x3 ((r(x1,x2) & r(x2,x3)) -> r(x1,x3))",
     False, None),
    ("forall x1 forall x2 forall x3 exists x4 forall x5 "
     "(p(x1,x2,x3,x2,x3,x4,x5) -> p(x1,x2,x3,x4,x3,x4,x5))", True, 0),
    ("q", True, 0),
    ("forall x1 p(x1)", True, 0),
    ("exists x1 exists x2 exists x3 t(x1,x2,x3)", True, 0),
    ("exists x1 exists x2 t(x1,x2,x1)", True, 0),
    ("exists x1 exists x2 t(x2,x1,x2)", True, 0),
    ("exists x1 exists x2 t(x1,x1,x2)", True, 0),
    ("exists x1 exists x2 r(x2,x2)", True, 0),
    ("exists x1 exists x2 exists x3 t(x1,x3,x2)", False, None),
    ("forall x1 (p(x1) -> exists x2 r(x1,x2))", True, 0),
    ("forall x1 exists x2 (r(x1,x2) & exists x3 r(x2,x3))", True, 0),
    ("forall x1 exists x2 (r(x1,x2) & exists x3 r(x1,x3))", False, None),
    ("forall x2 exists x1 r(x2,x1)", True, 0),
    ("forall x3 p(x3)", True, 0),
    ("exists x2 r(x2,x2)", True, 0),
    ("r(x1,x2)", True, 2),
    ("r(x2,x1)", True, 2),
    ("t(x2,x3,x3)", True, 3),
    ("exists x3 t(x2,x3,x2)", True, 2),
    ("exists x2 r(x1,x2)", True, 1),
    ("p(x1) & exists x2 r(x1,x2)", True, 1),
    ("r(x1,x1)", True, 1),
    ("r(x1,x2) & r(x2,x1)", True, 2),
    ("r(x1,x3)", False, None),
    ("q(x1,x2,x3,x4)", True, 4),
    ("q(x4,x3,x2,x1)", True, 4),
    ("q(x1,x2,x1,x2)", True, 2),
    ("q(x2,x1,x1,x2)", True, 2),
    ("q(x1,x2,x2,x3)", True, 3),
    ("q(x1,x1,x1,x1)", True, 1),
    ("q(x1,x3,x2,x1)", False, None),
    ("forall x1 forall x2 (r(x1,x2) -> (p(x1) | p(x2)))", True, 0),
    ("forall x1 forall x2 (r(x1,x2) -> t(x1,x2,x2))", True, 0),
    ("forall x1 forall x2 (p(x1) -> p(x2))", True, 0),
    ("forall x1 forall x2 s(x1,x2)", True, 0),
    ("forall x1 forall x2 s(x2,x1)", True, 0),
    ("forall x1 exists x2 exists x3 (t(x1,x2,x3) & r(x3,x3))", True, 0),
    ("forall x1 exists x2 forall x3 (t(x1,x2,x3) -> t(x2,x2,x3))", True, 0),
    ("forall x1 exists x2 forall x3 (t(x1,x2,x3) -> t(x3,x2,x1))", True, 0),
    ("forall x1 exists x2 forall x3 (t(x1,x2,x3) -> t(x1,x3,x2))",
     False, None),
    ("(forall x1 p(x1)) | (exists x1 r(x1,x1))", True, 0),
    ("forall x1 forall x2 p(x1)", True, 0),
    ("exists x4 q(x3,x4,x4,x3)", True, 3),
    ("exists x4 exists x5 q(x3,x4,x5,x4)", True, 3),
    ("forall x1 exists x2 forall x3 exists x4 q(x1,x2,x3,x4)", True, 0),
    ("forall x1 exists x2 forall x3 exists x4 q(x1,x2,x4,x3)", False, None),
]

# Three-variable normal-form sentences: each entry is
# (witness conjunct bodies over x1..x3, universal matrix over x1..x3,
#  hand-derived satisfiability).
AF3_CORPUS = [
    (["r(x2,x3)"], "true", True),
    (["r(x2,x3)"], "!r(x1,x2)", False),
    (["r(x2,x3)"], "r(x1,x2) -> r(x2,x1)", True),
    (["r(x2,x3)"], "r(x1,x2) -> !r(x2,x1)", True),
    (["r(x2,x3) & !r(x3,x2)"], "true", True),
    (["r(x2,x3) & r(x3,x2)"], "!r(x1,x1)", True),
    (["r(x2,x3) & r(x3,x2)"], "r(x1,x2) -> !r(x2,x1)", False),
    (["r(x2,x3)"], "r(x1,x1)", True),
    ([], "r(x1,x2) | r(x2,x1)", True),
    ([], "r(x1,x2) & !r(x1,x2)", False),
    (["r(x2,x3) & p(x3)"], "p(x1) -> !r(x1,x1)", True),
    (["r(x2,x3) & p(x3)", "r(x2,x3) & !p(x3)"], "r(x1,x2) -> r(x2,x1)",
     True),
    (["r(x2,x3) & p(x3)"], "!p(x1)", False),
    (["r(x2,x3)"], "(p(x1) -> r(x1,x1)) & (r(x1,x1) -> p(x1))", True),
    (["!r(x2,x3)"], "r(x1,x2)", False),
    (["r(x2,x3) & !r(x3,x3)"], "r(x1,x2) | r(x2,x1)", False),
    (["r(x2,x3) & !r(x3,x3)"], "r(x1,x1) -> r(x1,x2)", True),
    (["p(x3)"], "!p(x1)", False),
    (["p(x3)", "!p(x3)"], "true", True),
    (["r(x2,x3) & q"], "q", True),
    ([], "q & !q", False),
    (["t(x2,x3,x3)"], "t(x1,x2,x2)", True),
    (["t(x1,x2,x3)"], "t(x1,x2,x3)", True),
    (["t(x1,x2,x3)"], "!t(x1,x2,x3)", False),
    (["t(x2,x2,x3)"], "t(x1,x2,x1)", True),
    (["t(x2,x3,x3)"], "t(x1,x2,x2) & !r(x1,x2)", True),
    (["t(x2,x3,x3)"], "t(x1,x2,x2) & !t(x2,x1,x1)", False),
    (["r(x2,x3) & r(x3,x2) & !r(x3,x3)"],
     "(r(x1,x2) & r(x2,x1)) -> (r(x1,x1) | r(x2,x2))", False),
    (["r(x2,x3)", "!r(x2,x3)"], "true", True),
    (["r(x2,x3)", "!p(x3)"], "r(x1,x2) -> (p(x1) & p(x2))", False),
]

# Four-variable normal-form sentences: (witness bodies over x1..x4,
# universal matrix over x1..x4, hand-derived satisfiability).
AF4_CORPUS = [
    (["r(x3,x4)"], "r(x1,x2)", True),
    (["r(x3,x4)"], "!r(x1,x2)", False),
    (["r(x3,x4) & p(x4)"], "r(x1,x2) & p(x1)", True),
    (["r(x3,x4) & !p(x4)"], "r(x1,x2) & p(x1)", False),
    ([], "r(x2,x3) & (r(x1,x2) -> r(x2,x1))", True),
    (["!r(x3,x4)"], "r(x1,x2)", False),
    (["p(x4) & r(x3,x4)"], "r(x1,x2)", True),
    (["p(x4) & r(x3,x4)"], "r(x1,x2) & !p(x2)", False),
    (["t(x2,x3,x4)"], "t(x1,x2,x3)", True),
    (["!t(x2,x3,x4)"], "t(x1,x2,x3)", False),
]

# Equality-free formulas over one binary predicate for the product and
# agreement checks; free variables range over x1, x2.
PRODUCT_CORPUS = [
    "r(x1,x1)",
    "r(x1,x2)",
    "r(x2,x1)",
    "!r(x1,x2)",
    "r(x1,x2) & r(x2,x1)",
    "r(x1,x2) | r(x2,x1)",
    "r(x1,x2) -> r(x2,x1)",
    "r(x1,x2) <-> r(x2,x2)",
    "exists x2 r(x1,x2)",
    "exists x2 !r(x1,x2)",
    "exists x2 (r(x1,x2) & r(x2,x1))",
    "forall x2 r(x1,x2)",
    "forall x2 (r(x1,x2) -> r(x2,x1))",
    "exists x2 (r(x1,x2) & forall x3 r(x2,x3))",
    "forall x2 exists x3 (r(x1,x2) -> r(x2,x3))",
    "r(x1,x2) & exists x3 r(x2,x3)",
    "r(x2,x1) | exists x3 !r(x2,x3)",
    "forall x1 r(x1,x1)",
    "exists x1 !r(x1,x1)",
    "forall x1 exists x2 r(x1,x2)",
    "exists x1 forall x2 r(x1,x2)",
    "forall x1 forall x2 (r(x1,x2) -> r(x2,x1))",
    "forall x1 forall x2 (r(x1,x2) -> exists x3 r(x2,x3))",
    "exists x1 exists x2 (r(x1,x2) & !r(x2,x1))",
    "forall x1 (r(x1,x1) -> exists x2 (r(x1,x2) & !r(x2,x2)))",
    "exists x1 exists x2 exists x3 (r(x1,x2) & r(x2,x3))",
    "forall x1 exists x2 (r(x1,x2) & exists x3 (r(x2,x3) & r(x3,x3)))",
    "(forall x1 exists x2 r(x1,x2)) -> (exists x1 r(x1,x1))",
    "(exists x1 r(x1,x1)) <-> (exists x1 exists x2 r(x1,x2))",
    "forall x1 ((exists x2 r(x1,x2)) -> (exists x2 r(x2,x1)))",
]

# Quantifier-free adjacent formulas used for the substitution/walk bridge.
BRIDGE_CORPUS = [
    ("r(x1,x2)", 2),
    ("r(x2,x1) & r(x1,x1)", 2),
    ("r(x1,x2) -> r(x2,x2)", 2),
    ("t(x1,x2,x3) | t(x3,x2,x1)", 3),
    ("t(x1,x2,x2) & !t(x2,x2,x3)", 3),
    ("r(x1,x2) & r(x2,x3) & r(x3,x3)", 3),
    ("t(x2,x1,x1) <-> r(x3,x3)", 3),
    ("q(x1,x2,x3,x4) -> q(x4,x3,x2,x1)", 4),
    ("q(x1,x1,x2,x3) & r(x3,x4)", 4),
    ("!q(x2,x3,x4,x4) | t(x1,x2,x3)", 4),
]

# Two-variable sentences over a ternary predicate: every queried tuple has
# primitive length at most 2, so structures agreeing up to level 2 cannot
# distinguish them.
LEVEL2_CORPUS = [
    "forall x1 exists x2 t(x1,x2,x2)",
    "forall x1 t(x1,x1,x1)",
    "exists x1 exists x2 t(x1,x2,x1)",
    "forall x1 forall x2 (t(x1,x2,x2) -> t(x2,x1,x1))",
    "forall x1 exists x2 (t(x1,x2,x1) & !t(x2,x2,x2))",
    "exists x1 forall x2 (t(x2,x1,x2) | t(x1,x1,x2))",
    "forall x1 forall x2 (t(x1,x1,x2) -> t(x2,x2,x1))",
    "exists x1 (t(x1,x1,x1) & forall x2 t(x1,x2,x2))",
]


def nf_text(gammas, delta, ell):
    """Render a normal-form corpus entry as one sentence."""
    xs = [f"x{i}" for i in range(1, ell + 2)]
    uni = " ".join(f"forall {x}" for x in xs[:-1])
    parts = [f"({uni} exists {xs[-1]} ({g}))" for g in gammas]
    parts.append("({} forall {} ({}))".format(uni, xs[-1], delta))
    return " & ".join(parts)
