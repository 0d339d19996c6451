"""Satisfiability pipeline for adjacent sentences: normal form, adjacent
closure, variable-count reduction, the certificate decider for the
three-variable case with model construction, and a brute-force oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import aftypes as T
from . import semantics as M
from . import syntax as S
from . import words as W
from .aftypes import AdjType, ConnectorType, TypeResourceError, consistent
from .syntax import Formula, FormulaError, ResourceError


@dataclass(frozen=True)
class NormalFormFormula:
    """A sentence of the shape: for each i, all x1..xl have an x_{l+1}
    satisfying gamma_i; and delta holds for all x1..x_{l+1}."""

    ell: int
    gammas: tuple
    delta: Formula
    fresh: tuple = ()  # ((name, rendered replaced subformula), ...)

    def __post_init__(self):
        for g in self.gammas:
            if not S.is_quantifier_free(g):
                raise FormulaError("gamma conjuncts must be quantifier-free")
        if not S.is_quantifier_free(self.delta):
            raise FormulaError("delta must be quantifier-free")

    @property
    def variables(self) -> int:
        return self.ell + 1

    def sentence(self) -> Formula:
        conjuncts = []
        for g in self.gammas:
            body: Formula = S.Exists(S.var(self.ell + 1), g)
            for k in range(self.ell, 0, -1):
                body = S.Forall(S.var(k), body)
            conjuncts.append(body)
        body = self.delta
        for k in range(self.ell + 1, 0, -1):
            body = S.Forall(S.var(k), body)
        conjuncts.append(body)
        return S.make_and(conjuncts)

    def signature(self) -> dict:
        return S.signature(self.sentence())


@dataclass
class SatResult:
    satisfiable: bool
    certificate: Optional[tuple] = None  # tuple of ConnectorType
    model: Optional[M.Structure] = None
    trace: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"


# ---------------------------------------------------------------------------
# Normal form

def _split_quantifier_prefix(f: Formula):
    """(number of leading universals, had_existential, matrix) when f is a
    universal prefix, optionally one existential, then a quantifier-free
    matrix with canonically indexed variables; None otherwise."""
    k = 0
    g = f
    while isinstance(g, S.Forall) and S.var_index(g.var) == k + 1:
        k += 1
        g = g.body
    ex = False
    if isinstance(g, S.Exists) and S.var_index(g.var) == k + 1:
        ex = True
        g = g.body
    if not S.is_quantifier_free(g):
        return None
    return k, ex, g


def _as_normal_form(f: Formula) -> Optional[NormalFormFormula]:
    """Recognize shape-(2) sentences, padding conjuncts to a common depth."""
    conjuncts = f.args if isinstance(f, S.And) else (f,)
    gammas = []  # (depth of universal prefix, matrix)
    deltas = []
    for c in conjuncts:
        split = _split_quantifier_prefix(c)
        if split is None:
            return None
        k, ex, matrix = split
        if S.max_index(matrix) > k + (1 if ex else 0):
            return None
        if ex:
            gammas.append((k, matrix))
        else:
            deltas.append((k, matrix))
    ell = max([2] + [k for k, _ in gammas] + [k - 1 for k, _ in deltas])
    padded_gammas = tuple(S.shift_up(m, ell - k) if ell > k else m
                          for k, m in gammas)
    padded_delta = S.make_and(
        [S.shift_up(m, ell + 1 - k) if ell + 1 > k else m for k, m in deltas]
        or [S.TRUE])
    return NormalFormFormula(ell, padded_gammas, padded_delta)


def normalize(f: Formula, min_ell: int = 2) -> NormalFormFormula:
    """Bring an adjacent sentence to shape (2) by replacing innermost
    quantified subformulas with fresh predicates plus bridging conjuncts.
    Satisfiable over exactly the same domains as the input."""
    if S.free_vars(f):
        raise FormulaError("normalization requires a sentence")
    normal = S.index_normal(f)
    if normal is None or not S.classify(f).adjacent:
        raise FormulaError("normalization requires an adjacent sentence")
    f = normal

    direct = _as_normal_form(f)
    if direct is not None and direct.ell >= min_ell:
        return direct

    fresh: list = []
    counter = itertools.count(1)
    gammas: list = []  # (prefix depth k, matrix over x1..x_{k+1})
    deltas: list = []  # (variable count, matrix)

    def replace_innermost(g: Formula) -> Formula:
        """Replace one innermost quantified subformula; None if none left."""
        if isinstance(g, (S.Forall, S.Exists)):
            if S.is_quantifier_free(g.body):
                k = S.var_index(g.var) - 1
                name = f"_nf{next(counter)}"
                fresh.append((name, S.render(g)))
                head = S.Atom(name, tuple(S.var(i) for i in range(1, k + 1)))
                chi = g.body
                if isinstance(g, S.Exists):
                    gammas.append((k, S.Implies(head, chi)))
                    deltas.append((k + 1, S.Implies(chi, head)))
                else:
                    deltas.append((k + 1, S.Implies(head, chi)))
                    gammas.append((k, S.Implies(chi, head)))
                return head
            return S.rebuild(g, [replace_innermost(g.body)])
        return S.rebuild(g, [replace_innermost(c) for c in S.children(g)])

    while not S.is_quantifier_free(f):
        f = replace_innermost(f)
    deltas.append((0, f))  # the residual propositional sentence

    ell = max([min_ell] + [k for k, _ in gammas] + [n - 1 for n, _ in deltas])
    padded_gammas = tuple(S.shift_up(m, ell - k) if ell > k else m
                          for k, m in gammas)
    padded_delta = S.make_and(
        [S.shift_up(m, ell + 1 - n) if ell + 1 > n else m for n, m in deltas])
    return NormalFormFormula(ell, padded_gammas, padded_delta, tuple(fresh))


# ---------------------------------------------------------------------------
# Adjacent closure

def adjacent_closure(nf: NormalFormFormula) -> NormalFormFormula:
    """The consequence of identifying universally quantified variables in
    every adjacency-preserving way; a normal-form sentence one variable
    down."""
    ell = nf.ell
    if ell < 2:
        raise FormulaError("closure requires at least 3 variables")
    new_ell = ell - 1
    gammas = []
    for gamma in nf.gammas:
        for k in range(1, ell):
            for f in W.walks(ell, k, end_at=k):
                f_plus = tuple(f) + (k + 1,)
                body = S.substitute_walk(gamma, f_plus)
                gammas.append(S.shift_up(body, new_ell - k) if new_ell > k
                              else body)
    deltas = []
    for k in range(1, ell + 1):
        for g in W.walks(ell + 1, k):
            body = S.substitute_walk(nf.delta, g)
            deltas.append(S.shift_up(body, new_ell + 1 - k)
                          if new_ell + 1 > k else body)
    return NormalFormFormula(new_ell, tuple(gammas),
                             S.make_and(deltas or [S.TRUE]), nf.fresh)


# ---------------------------------------------------------------------------
# Variable-count reduction

def reduce_step(nf: NormalFormFormula, atom_cap: int = T.DEFAULT_ATOM_CAP,
                counter: Optional[itertools.count] = None,
                prune: bool = True) -> NormalFormFormula:
    """Reduce an (l+1)-variable normal-form sentence (l >= 3) to an
    equisatisfiable l-variable one: the adjacent closure plus guard
    predicates recording which l-types have a left extension."""
    ell = nf.ell
    if ell < 3:
        raise FormulaError("reduction requires at least 4 variables")
    closure = adjacent_closure(nf)
    sent = nf.sentence()
    keys_ell = T.relevant_atoms(sent, ell)
    if len(keys_ell) > atom_cap:
        raise TypeResourceError(
            f"{len(keys_ell)} relevant atoms at width {ell} exceeds cap {atom_cap}")
    delta_hat = S.hat(nf.delta, ell + 1)
    # An l-tuple realized in any model satisfies every universal instance,
    # so types failing those constraints need no guard conjuncts.
    universal = [S.substitute_walk(nf.delta, g) for g in W.walks(ell + 1, ell)]
    counter = counter or itertools.count(1)
    fresh = list(nf.fresh)
    gammas = list(closure.gammas)
    deltas = [closure.delta]
    new_ell = ell - 1
    for zeta in T.enumerate_types(keys_ell, atom_cap):
        if prune and not consistent([zeta] + universal, atom_cap):
            continue
        name = f"_pz{next(counter)}"
        fresh.append((name, zeta.render()))
        head_tail = S.Atom(name, tuple(S.var(i) for i in range(2, ell + 1)))
        head_front = S.Atom(name, tuple(S.var(i) for i in range(1, ell)))
        deltas.append(S.Implies(zeta.formula(), head_tail))
        for gamma in nf.gammas:
            proj = T.project_circ([zeta.formula(), delta_hat, gamma],
                                  keys_ell, ell, atom_cap)
            gammas.append(S.Implies(head_front, proj))
        proj_univ = T.project_circ([zeta.formula(), delta_hat],
                                   keys_ell, ell, atom_cap)
        deltas.append(S.Implies(head_front, proj_univ))
    return NormalFormFormula(new_ell, tuple(gammas), S.make_and(deltas),
                             tuple(fresh))


# ---------------------------------------------------------------------------
# The three-variable decider

DEFAULT_POOL_CAP = 1 << 22


def decide_af3(nf: NormalFormFormula, atom_cap: int = T.DEFAULT_ATOM_CAP,
               pool_cap: int = DEFAULT_POOL_CAP, want_model: bool = False,
               reduced_j: bool = True, trace: Optional[list] = None) -> SatResult:
    """Certificate search for 3-variable normal-form sentences: SAT iff a
    non-empty coherent set of compatible connector-types exists."""
    if nf.ell != 2:
        raise FormulaError("the decider handles 3-variable normal form")
    trace = trace if trace is not None else []
    sent = nf.sentence()
    keys2 = T.sort_keys(T.relevant_atoms(sent, 2))
    if len(keys2) > atom_cap:
        raise TypeResourceError(
            f"{len(keys2)} relevant atoms exceeds cap {atom_cap}")
    delta = nf.delta
    delta_hat = S.hat(delta, 3)
    stall_instances = [S.substitute_walk(delta, f) for f in W.walks(3, 2)]

    # Admissible 2-types: those satisfying every stalled universal instance.
    all_types = list(T.enumerate_types(keys2, atom_cap))
    admissible = [t for t in all_types
                  if all(t.entails(inst) for inst in stall_instances)]
    index = {t: i for i, t in enumerate(admissible)}
    inv = [index.get(t.inverse(2)) for t in admissible]
    trace.append({"stage": "types", "count": len(all_types),
                  "admissible": len(admissible)})

    n = len(admissible)
    start_masks = []
    for gamma in nf.gammas:
        g112 = S.substitute_walk(gamma, (1, 1, 2))
        mask = 0
        for i, t in enumerate(admissible):
            if t.entails(g112):
                mask |= 1 << i
        start_masks.append(mask)
    link = [0] * n
    wit = [[0] * n for _ in nf.gammas]
    for zi, z in enumerate(admissible):
        for ei, e in enumerate(admissible):
            eplus = e.shift_up()
            if consistent([z, eplus, delta_hat], atom_cap):
                link[zi] |= 1 << ei
                for gi, gamma in enumerate(nf.gammas):
                    if consistent([z, eplus, gamma, delta_hat], atom_cap):
                        wit[gi][zi] |= 1 << ei

    # Group admissible types by their 1-type and enumerate compatible
    # connector-types per group.
    groups: dict = {}
    for i, t in enumerate(admissible):
        groups.setdefault(T.restrict_to_ones(t), []).append(i)
    pool: list = []  # bitmasks over the global admissible list
    budget = pool_cap
    for pi in sorted(groups, key=lambda p: p.bits):
        members = groups[pi]
        pi2 = T.one_type_squared(pi, keys2)
        if pi2 not in index or index[pi2] not in members:
            continue
        base = 1 << index[pi2]
        rest = [i for i in members if (1 << i) != base]
        if (1 << len(rest)) > budget:
            raise ResourceError(
                f"connector-type pool would exceed the cap of {pool_cap}")
        budget -= 1 << len(rest)
        for bits in range(1 << len(rest)):
            omega = base
            b = bits
            for i in rest:
                if b & 1:
                    omega |= 1 << i
                b >>= 1
            if _mask_compatible(omega, n, inv, start_masks, wit, link):
                pool.append(omega)
    pool.sort()
    trace.append({"stage": "pool", "compatible": len(pool)})

    # Greatest coherence-closed subset under the existential condition: a
    # connector-type survives iff the inverse of each member still occurs
    # somewhere in the pool, i.e. in the union of the surviving masks.
    need = {}
    for om in pool:
        req = 0
        for i in _bits(om):
            if inv[i] is None:
                req = -1
                break
            req |= 1 << inv[i]
        if req >= 0:
            need[om] = req
    pool_set = set(need)
    while True:
        union = 0
        for om in pool_set:
            union |= om
        keep = {om for om in pool_set if need[om] & ~union == 0}
        if keep == pool_set:
            break
        pool_set = keep
    # Few-membered connector-types first: they yield smaller witness models.
    pruned = sorted(pool_set, key=lambda m: (bin(m).count("1"), m))
    trace.append({"stage": "closure", "remaining": len(pruned)})

    cert_masks = _find_certificate(pruned, n, inv)
    if cert_masks is None:
        trace.append({"stage": "certificate", "size": 0,
                      "reason": ("empty pool after closure" if not pruned
                                 else "no coherent clique")})
        return SatResult(False, trace=trace)
    certificate = tuple(
        ConnectorType(frozenset(admissible[i] for i in _bits(om)))
        for om in cert_masks)
    trace.append({"stage": "certificate", "size": len(certificate)})
    result = SatResult(True, certificate=certificate, trace=trace)
    if want_model:
        result.model = build_model(certificate, nf,
                                   ModelParams(reduced_j=reduced_j),
                                   atom_cap=atom_cap)
    return result


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_compatible(omega: int, n: int, inv, start_masks, wit, link) -> bool:
    for mask in start_masks:
        if not mask & omega:
            return False
    m = omega
    while m:
        low = m & -m
        ei = low.bit_length() - 1
        m ^= low
        zi = inv[ei]
        if zi is None:
            return False
        if (link[zi] & omega) != omega:
            return False
        for gmask in wit:
            if not gmask[zi] & omega:
                return False
    return True


def _find_certificate(pool: list, n: int, inv) -> Optional[list]:
    """Smallest-first search for a non-empty subset of the pool that is
    closed under inverses and pairwise linked in both directions."""
    if not pool:
        return None
    link_memo: dict = {}

    def linked(a: int, b: int) -> bool:
        got = link_memo.get((a, b))
        if got is None:
            got = False
            for i in _bits(a):
                if inv[i] is not None and b & (1 << inv[i]):
                    got = True
                    break
            link_memo[(a, b)] = got
        return got

    usable = [om for om in pool if linked(om, om)]
    by_bit: dict = {}
    for om in usable:
        for i in _bits(om):
            by_bit.setdefault(i, []).append(om)
    seen: set = set()

    def closed(sel: frozenset) -> bool:
        union = 0
        for om in sel:
            union |= om
        for i in _bits(union):
            if inv[i] is None or not any((1 << inv[i]) & om for om in sel):
                return False
        return True

    def needed(sel: frozenset) -> Optional[int]:
        for om in sorted(sel):
            for i in _bits(om):
                if inv[i] is None:
                    return -1
                if not any((1 << inv[i]) & o2 for o2 in sel):
                    return inv[i]
        return None

    def search(sel: frozenset) -> Optional[list]:
        if sel in seen:
            return None
        seen.add(sel)
        miss = needed(sel)
        if miss is None:
            return sorted(sel)
        if miss == -1:
            return None
        for om in by_bit.get(miss, ()):
            if om in sel:
                continue
            if all(linked(om, o2) and linked(o2, om) for o2 in sel):
                found = search(sel | {om})
                if found is not None:
                    return found
        return None

    for seed in usable:
        found = search(frozenset([seed]))
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# Model construction

def _qf_array(f: Formula, tables: dict, grids, cache: dict):
    """Evaluate a quantifier-free formula as a boolean array whose axes are
    the variables x1..xn, for bulk model verification."""
    import numpy as np
    if isinstance(f, S.Atom):
        word = tuple(S.var_index(a) for a in f.args)
        key = (f.pred, word)
        if key not in cache:
            table = tables[f.pred]
            if not word:
                cache[key] = np.bool_(table)
            else:
                cache[key] = table[tuple(grids[i - 1] for i in word)]
        return cache[key]
    if isinstance(f, S.Unit):
        return _qf_array(f.body, tables, grids, cache)
    if isinstance(f, S.Not):
        return ~_qf_array(f.body, tables, grids, cache)
    if isinstance(f, S.And):
        out = np.bool_(True)
        for c in f.args:
            out = out & _qf_array(c, tables, grids, cache)
        return out
    if isinstance(f, S.Or):
        out = np.bool_(False)
        for c in f.args:
            out = out | _qf_array(c, tables, grids, cache)
        return out
    if isinstance(f, S.Implies):
        return (~_qf_array(f.left, tables, grids, cache)
                | _qf_array(f.right, tables, grids, cache))
    if isinstance(f, S.Iff):
        return (_qf_array(f.left, tables, grids, cache)
                == _qf_array(f.right, tables, grids, cache))
    raise FormulaError(f"not quantifier-free: {S.render(f)}")


def verify_normal_form(nf: NormalFormFormula, model: M.Structure) -> bool:
    """Direct check that a structure satisfies a normal-form sentence;
    equivalent to evaluate on the rebuilt sentence, but vectorized."""
    import numpy as np
    n = len(model.domain)
    index = {a: i for i, a in enumerate(model.domain)}
    tables: dict = {}
    for (name, arity), ext in model.extensions.items():
        if arity == 0:
            tables[name] = () in ext
            continue
        table = np.zeros((n,) * arity, dtype=bool)
        for args in ext:
            table[tuple(index[x] for x in args)] = True
        tables[name] = table
    nvars = nf.ell + 1
    grids = np.ix_(*([np.arange(n)] * nvars))
    cache: dict = {}
    full = np.zeros((n,) * nvars, dtype=bool)
    for gamma in nf.gammas:
        arr = full | _qf_array(gamma, tables, grids, cache)
        if not arr.any(axis=-1).all():
            return False
    delta = full | _qf_array(nf.delta, tables, grids, cache)
    return bool(delta.all())


@dataclass(frozen=True)
class ModelParams:
    """Construction parameters: three witnessing phases and a placement
    index set with its fresh-choice function."""

    h_size: int = 3
    j_size: int = 343
    reduced_j: bool = False


def _placement(params: ModelParams):
    """(J elements, g: J x J -> J) with the fresh-choice properties, both
    verified for the reduced set."""
    if params.reduced_j:
        size, table = W.small_pair_placement()
        return list(range(size)), lambda j1, j2: table[(j1, j2)]
    fc = W.fresh_choice(2)
    elems = list(fc.domain())
    return elems, lambda j1, j2: fc((j1, j2))


def build_model(certificate: Sequence, nf: NormalFormFormula,
                params: ModelParams = ModelParams(),
                atom_cap: int = T.DEFAULT_ATOM_CAP,
                verify: bool = True) -> M.Structure:
    """Three-stage construction of a finite model from a certificate,
    always verified against the sentence before being returned."""
    if nf.ell != 2:
        raise FormulaError("model construction handles 3-variable normal form")
    omegas = sorted(certificate, key=lambda om: om.serialize())
    sent = nf.sentence()
    keys1 = T.sort_keys(T.relevant_atoms(sent, 1))
    keys2 = T.sort_keys(T.relevant_atoms(sent, 2))
    keys3 = T.sort_keys(T.relevant_atoms(sent, 3))
    delta_hat = S.hat(nf.delta, 3)
    two_types = sorted({t for om in omegas for t in om.types},
                      key=lambda t: t.bits)
    gamma_index = list(range(len(nf.gammas))) or [0]
    js, g_place = _placement(params)

    om_id = {om: i for i, om in enumerate(omegas)}
    t_id = {t: i for i, t in enumerate(two_types)}
    domain = [
        (om_id[om], t_id[t], h, i, j)
        for om in omegas for t in two_types
        for h in range(params.h_size) for i in gamma_index
        for j in range(len(js))
    ]
    om_of = {a: omegas[a[0]] for a in domain}

    facts: dict = {}

    def set_fact(name: str, args: tuple, value: bool) -> None:
        prev = facts.get((name, args))
        if prev is not None and prev != value:
            raise RuntimeError(
                f"internal consistency failure: {name}{args!r} assigned twice")
        facts[(name, args)] = value

    def write_type(t: AdjType, elems: tuple, surjective_only: bool) -> None:
        k = len(elems)
        for (name, word), value in t.items():
            if surjective_only and set(word) != set(range(1, k + 1)):
                continue
            set_fact(name, tuple(W.apply_walk(elems, word)) if word else (),
                     value)

    # Stage 1: unary facts from each element's shared 1-type.
    for a in domain:
        pi = om_of[a].tp
        for (name, word), value in pi.items():
            set_fact(name, tuple(a for _ in word), value)

    # Stage 2: circular witnessing, then a linking fill.
    pair_type: dict = {}
    witness_omega: dict = {}  # (omega id, 2-type id) -> omega id holding inverse
    sorted_members = {om: sorted(om.types, key=lambda t: t.bits)
                      for om in omegas}
    for om in omegas:
        for eta in sorted_members[om]:
            inv_eta = eta.inverse(2)
            target = next(o2 for o2 in omegas if inv_eta in o2.types)
            witness_omega[(om_id[om], t_id[eta])] = om_id[target]
    for a in domain:
        om = om_of[a]
        h = a[2]
        for eta in sorted_members[om]:
            target = witness_omega[(a[0], t_id[eta])]
            for i in gamma_index:
                for j in range(len(js)):
                    b = (target, t_id[eta], (h + 1) % params.h_size, i, j)
                    pair_type[(a, b)] = eta
    for a, b in itertools.combinations(domain, 2):
        if (a, b) in pair_type or (b, a) in pair_type:
            continue
        om, om2 = om_of[a], om_of[b]
        eta = next(t for t in sorted_members[om]
                   if t.inverse(2) in om2.types)
        pair_type[(a, b)] = eta
    for (a, b), eta in pair_type.items():
        write_type(eta, (a, b), surjective_only=True)

    def tp_pair(a, b) -> AdjType:
        if (a, b) in pair_type:
            return pair_type[(a, b)]
        return pair_type[(b, a)].inverse(2)

    # Stage 3: adjacent 3-types, witnesses first, then the universal fill.
    theta_cache: dict = {}

    def first_type(parts: tuple) -> Optional[AdjType]:
        if parts not in theta_cache:
            found = None
            for cand in T.enumerate_types(keys3, atom_cap):
                if consistent(list(parts) + [cand], atom_cap):
                    found = cand
                    break
            theta_cache[parts] = found
        return theta_cache[parts]

    assigned: set = set()
    eta_cache: dict = {}

    def pick_eta(zeta: AdjType, om2, gi: int, gamma) -> AdjType:
        key = (zeta, id(om2), gi)
        if key not in eta_cache:
            eta_cache[key] = next(
                t for t in sorted_members[om2]
                if consistent([zeta, t.shift_up(), gamma, delta_hat],
                              atom_cap))
        return eta_cache[key]

    for a in domain:
        for b in domain:
            if a == b:
                continue
            zeta = tp_pair(a, b)
            om2 = om_of[b]
            for gi, gamma in enumerate(nf.gammas):
                eta = pick_eta(zeta, om2, gi, gamma)
                theta = first_type((zeta, eta.shift_up(), gamma, delta_hat))
                if theta is None:
                    raise RuntimeError(
                        "internal consistency failure: no witnessing type")
                target = witness_omega[(b[0], t_id[eta])]
                c = (target, t_id[eta], (b[2] + 1) % params.h_size, gi,
                     g_place(a[4], b[4]))
                if c == a or c == b:
                    raise RuntimeError("internal consistency failure: "
                                       "witness placement collided")
                write_type(theta, (a, b, c), surjective_only=True)
                assigned.add((a, b, c))
                assigned.add((c, b, a))
    # The joining fill only ever writes atoms whose word covers all three
    # positions; without such keys the facts are already complete.
    surjective3 = [key for key in keys3 if set(key[1]) == {1, 2, 3}]
    for a, b, c in itertools.permutations(domain, 3) if surjective3 else ():
        if (a, b, c) in assigned or (c, b, a) in assigned:
            continue
        zeta = tp_pair(a, b)
        eta = tp_pair(b, c)
        theta = first_type((zeta, eta.shift_up(), delta_hat))
        if theta is None:
            raise RuntimeError("internal consistency failure: no joining type")
        write_type(theta, (a, b, c), surjective_only=True)
        assigned.add((a, b, c))
        assigned.add((c, b, a))

    exts: dict = {}
    for name, arity in S.signature(sent).items():
        exts[(name, arity)] = frozenset(
            args for (n2, args), v in facts.items() if n2 == name and v)
    model = M.Structure(tuple(domain), exts)
    if verify and not verify_normal_form(nf, model):
        raise RuntimeError(
            "internal consistency failure: constructed model fails the sentence")
    return model


def rename_model(model: M.Structure) -> M.Structure:
    """A copy whose elements are e0, e1, ... for serialization."""
    names = {a: f"e{i}" for i, a in enumerate(model.domain)}
    exts = {key: frozenset(tuple(names[x] for x in t) for t in ext)
            for key, ext in model.extensions.items()}
    return M.Structure(tuple(names[a] for a in model.domain), exts)


# ---------------------------------------------------------------------------
# Pipeline and oracle

def decide(f: Formula, atom_cap: int = T.DEFAULT_ATOM_CAP,
           pool_cap: int = DEFAULT_POOL_CAP, want_model: bool = False,
           reduced_j: bool = True, max_variables: int = 6) -> SatResult:
    """Normalize, reduce the variable count to three, then run the
    certificate decider."""
    trace: list = []
    nf = normalize(f)
    trace.append({"stage": "normalize", "variables": nf.variables,
                  "gammas": len(nf.gammas)})
    if nf.variables > max_variables:
        raise ResourceError(
            f"{nf.variables} variables exceeds the pipeline cap of {max_variables}")
    counter = itertools.count(1)
    while nf.ell > 2:
        nf = reduce_step(nf, atom_cap, counter)
        trace.append({"stage": "reduce", "variables": nf.variables,
                      "gammas": len(nf.gammas)})
    result = decide_af3(nf, atom_cap, pool_cap, want_model=want_model,
                        reduced_j=reduced_j, trace=trace)
    return result


def _sensitive_ground_atoms(f: Formula, domain: tuple) -> list:
    """Ground atoms reachable as substitution instances of f's atom words."""
    out = set()
    for a in S.atoms(f):
        h = tuple(S.var_index(n) for n in a.args)
        j = max(h, default=0)
        for tup in itertools.product(domain, repeat=j):
            out.add((a.pred, tuple(tup[i - 1] for i in h)))
    return sorted(out)


def _ground(f: Formula, domain: tuple, env: dict):
    """Ground a sentence to a propositional tree over ground-atom keys."""
    if isinstance(f, S.Atom):
        return ("atom", (f.pred, tuple(env[x] for x in f.args)))
    if isinstance(f, S.Unit):
        return _ground(f.body, domain, env)
    if isinstance(f, S.Not):
        return ("not", _ground(f.body, domain, env))
    if isinstance(f, S.And):
        return ("and", tuple(_ground(c, domain, env) for c in f.args))
    if isinstance(f, S.Or):
        return ("or", tuple(_ground(c, domain, env) for c in f.args))
    if isinstance(f, S.Implies):
        return ("or", (("not", _ground(f.left, domain, env)),
                       _ground(f.right, domain, env)))
    if isinstance(f, S.Iff):
        a, b = _ground(f.left, domain, env), _ground(f.right, domain, env)
        return ("iff", (a, b))
    if isinstance(f, S.Forall):
        return ("and", tuple(_ground(f.body, domain, {**env, f.var: d})
                             for d in domain))
    return ("or", tuple(_ground(f.body, domain, {**env, f.var: d})
                        for d in domain))


def _eval_ground(node, assign: dict) -> Optional[bool]:
    kind, payload = node
    if kind == "atom":
        return assign.get(payload)
    if kind == "not":
        v = _eval_ground(payload, assign)
        return None if v is None else not v
    if kind == "iff":
        a = _eval_ground(payload[0], assign)
        b = _eval_ground(payload[1], assign)
        return None if a is None or b is None else a == b
    if kind == "and":
        out: Optional[bool] = True
        for c in payload:
            v = _eval_ground(c, assign)
            if v is False:
                return False
            if v is None:
                out = None
        return out
    out = False
    for c in payload:
        v = _eval_ground(c, assign)
        if v is True:
            return True
        if v is None:
            out = None
    return out


def brute_force_sat(f: Formula, max_n: int = 3) -> Optional[M.Structure]:
    """Search for a model over domains e1..en for n = 1..max_n, restricting
    predicate extensions to substitution instances of the formula's atom
    words.  Returns the canonically first model found, or None.  A None
    result is evidence only, never an UNSAT verdict."""
    if S.free_vars(f):
        raise FormulaError("the oracle requires a sentence")
    for n in range(1, max_n + 1):
        domain = tuple(f"e{i}" for i in range(1, n + 1))
        tree = _ground(f, domain, {})
        keys = _sensitive_ground_atoms(f, domain)
        assign: dict = {}

        def dpll(i: int) -> bool:
            v = _eval_ground(tree, assign)
            if v is not None:
                return v
            key = keys[i]
            for choice in (False, True):
                assign[key] = choice
                if dpll(i + 1):
                    return True
            del assign[key]
            return False

        if dpll(0):
            exts: dict = {}
            for name, arity in S.signature(f).items():
                exts[(name, arity)] = frozenset(
                    args for (n2, args), v in assign.items()
                    if n2 == name and v)
            model = M.Structure(domain, exts)
            assert M.evaluate(model, f)
            return model
    return None
