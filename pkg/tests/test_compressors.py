import itertools
import math
import random

import pytest

from slpforge import zoo
from slpforge.classify import Config
from slpforge.compressors import (
    adapt_subnormal,
    build_cube,
    build_derived_adapted_set,
    build_polycyclic_set,
    compress,
    compress_bounded_diameter,
    compress_general,
    compress_group_reachability,
    compress_group_solvable,
    compress_group_solvable_bounded,
    compress_normal_band,
    compress_permutative,
    emit_delta_program,
    ideal_generators,
    minimize_exponents,
    nilpotent_peel,
    solvable_plan,
)
from slpforge.errors import (
    DiameterExceededError,
    NotInSubgroupError,
    NotSolvableError,
    UnreachableError,
)
from slpforge.groups import derived_series, group_view, is_adapted, subgroup_closure
from slpforge.semigroup import closure, ideal_power, shortest_word
from slpforge.slp import Slp, eliminate_inverses, evaluate

from conftest import py_shortest_words, table_of


# -- bounded diameter ----------------------------------------------------------


def test_bounded_diameter_rb():
    R = zoo.make_rectangular_band(2, 3)
    gens = list(range(6))
    for t in range(6):
        slp = compress_bounded_diameter(R, gens, t, D=3)
        assert evaluate(R, slp).output_value == t
        assert slp.length <= 3 and slp.width <= 2


def test_bounded_diameter_exceeded():
    Z9 = zoo.make_cyclic(9)
    with pytest.raises(DiameterExceededError):
        compress_bounded_diameter(Z9, [1], 5, D=2)
    with pytest.raises(DiameterExceededError):
        compress_bounded_diameter(zoo.make_cyclic(6), [2], 1, D=10)


# -- permutative ----------------------------------------------------------------


def _brute_force_min_exponents(S, prefix, order, suffix, t, caps):
    best = None
    for exps in itertools.product(*[range(c + 1) for c in caps]):
        seq = list(prefix)
        for s, e in zip(order, exps):
            seq.extend([s] * e)
        seq.extend(suffix)
        if not seq:
            continue
        if S.word_value(seq) == t and (best is None or exps < best):
            best = exps
    return best


def test_minimize_exponents_matches_brute_force():
    cases = []
    Z8 = zoo.make_abelian([2, 2, 2])
    cases.append((Z8, [], [4, 2, 1], [], 7))
    cases.append((Z8, [], [4, 2, 1], [], 5))
    Z9 = zoo.make_cyclic(9)
    cases.append((Z9, [], [1], [], 7))
    sl = zoo.make_subset_semilattice(3).semigroup
    cases.append((sl, [], [0, 2], [], 2))      # {1} and {1,2}: lex prefers (0,1)
    S, gens, _ = zoo.build_family("rb-x-cyclic", [2, 2, 3])
    cases.append((S, [gens[0]], [gens[1], gens[0]], [gens[1]], int(S.table[gens[0], gens[1]])))
    for S_, prefix, order, suffix, t in cases:
        caps = [int(S_.omega_exponents[s] + S_.periods[s] - 1) for s in order]
        expect = _brute_force_min_exponents(S_, prefix, order, suffix, t, caps)
        if expect is None:
            with pytest.raises(UnreachableError):
                minimize_exponents(S_, prefix, order, suffix, t)
            continue
        nf = minimize_exponents(S_, prefix, order, suffix, t)
        got = []
        i = 0
        for s in order:
            if i < len(nf.order) and nf.order[i] == s:
                got.append(nf.exponents[i])
                i += 1
            else:
                got.append(0)
        assert tuple(got) == expect, (S_.name, t)
        assert all(e >= 1 for e in nf.exponents)
        assert nf.value(S_) == t


def test_minimize_exponents_examples():
    Z8 = zoo.make_abelian([2, 2, 2])
    nf = minimize_exponents(Z8, [], [4, 2, 1], [], 7)
    assert nf.exponents == [1, 1, 1]
    Z9 = zoo.make_cyclic(9)
    nf = minimize_exponents(Z9, [], [1], [], 7)
    assert nf.exponents == [7]
    sl = zoo.make_subset_semilattice(3).semigroup
    # target {1,2} over order ({1}, {1,2}): lex minimum zeroes the first slot
    nf = minimize_exponents(sl, [], [0, 2], [], 2)
    assert nf.order == [2] and nf.exponents == [1]


def test_minimize_exponents_brute_force_sweep():
    rng = random.Random(17)
    structures = [
        zoo.make_cyclic(12),
        zoo.make_abelian([3, 3]),
        zoo.make_subset_semilattice(3).semigroup,
        zoo.make_rectangular_band(2, 3),
    ]
    for S in structures:
        assert S.n <= 40
        elems = list(range(S.n))
        for _ in range(30):
            m = rng.randrange(1, 4)
            order = rng.sample(elems, m)
            prefix = [rng.choice(elems)] if rng.random() < 0.5 else []
            suffix = [rng.choice(elems)] if rng.random() < 0.5 else []
            t = rng.choice(elems)
            caps = [int(S.omega_exponents[s] + S.periods[s] - 1) for s in order]
            expect = _brute_force_min_exponents(S, prefix, order, suffix, t, caps)
            if expect is None:
                with pytest.raises(UnreachableError):
                    minimize_exponents(S, prefix, order, suffix, t)
                continue
            nf = minimize_exponents(S, prefix, order, suffix, t)
            got, i = [], 0
            for s in order:
                if i < len(nf.order) and nf.order[i] == s:
                    got.append(nf.exponents[i])
                    i += 1
                else:
                    got.append(0)
            assert tuple(got) == expect


def test_permutative_width_two_families():
    cases = [
        (zoo.make_abelian([2] * 6), None),
        (zoo.make_abelian([3, 9]), None),
        (zoo.make_subset_semilattice(6).semigroup, zoo.make_subset_semilattice(6).generators),
    ]
    for S, gens in cases:
        if gens is None:
            gens = zoo._abelian_unit_generators([2] * 6 if S.n == 64 else [3, 9])
        for t in range(0, S.n, max(1, S.n // 17)):
            slp = compress_permutative(S, gens, t)
            assert evaluate(S, slp).output_value == t
            assert slp.width <= 2


def test_permutative_single_generator_reduces_to_fast_exp():
    Z1000 = zoo.make_cyclic(1000)
    slp = compress_permutative(Z1000, [1], 999)
    assert evaluate(Z1000, slp).output_value == 999
    assert slp.length <= 2 * math.floor(math.log2(999)) + 1 + 4
    assert slp.width == 2


def test_permutative_normal_band_level_one():
    S, gens, _ = zoo.build_family("rb-x-cyclic", [2, 2, 9])
    for t in range(S.n):
        slp = compress_permutative(S, gens, t, kstar=1)
        assert evaluate(S, slp).output_value == t
        assert slp.width <= 2


# -- nilpotent peel -------------------------------------------------------------


def _extension_over_band():
    base = zoo.make_rectangular_band(2, 2)
    T, _ = zoo.make_nilpotent_extension(base, 2, [0, 3], 3)
    return T


def test_ideal_generators_cover():
    T = _extension_over_band()
    gens = [0, 1]
    delta = ideal_generators(T, gens, 3)
    sk = ideal_power(T, 3)
    vals = [v for v, _ in delta]
    assert closure(T, vals) == sk
    for v, w in delta:
        assert 1 <= len(w) <= 5
        assert T.word_value(w) == v


def test_nilpotent_peel_shallow_target():
    T = _extension_over_band()
    gens = [0, 1]
    sk = ideal_power(T, 3)
    outside = [t for t in range(T.n) if t not in sk and t in closure(T, gens)]
    for t in outside:
        slp = nilpotent_peel(T, gens, t, 3, lambda *a: None)
        assert evaluate(T, slp).output_value == t
        assert slp.length <= 2 * 3 - 3


def test_nilpotent_peel_deep_target_width():
    T = _extension_over_band()
    gens = [0, 1]
    sk = ideal_power(T, 3)

    def inner(sub, delta, t_sub):
        return compress_bounded_diameter(sub, delta, t_sub, D=sub.n)

    for t in closure(T, gens):
        if t not in sk:
            continue
        slp = nilpotent_peel(T, gens, t, 3, inner)
        assert evaluate(T, slp).output_value == t
        assert slp.width <= 3  # inner width 2 plus one shared scratch


# -- reachability ----------------------------------------------------------------


def test_cube_doubles_every_round():
    S = zoo.make_abelian([2] * 6)
    gens = zoo._abelian_unit_generators([2] * 6)
    G = group_view(S)
    t = S.n - 1
    prog, state = compress_group_reachability(G, gens, t)
    assert state.doubling_log == [2 ** (i + 1) for i in range(len(state.doubling_log))]
    assert state.rounds == 6  # the cube is exactly the spanned subspace
    assert evaluate(S, prog, group=G).output_value == t
    assert prog.width <= state.rounds + 3


def test_reachability_a5():
    A5 = zoo.make_alt(5)
    gens = zoo._alt_generators(5)
    G = group_view(A5)
    rng = random.Random(3)
    for t in rng.sample(range(60), 12):
        prog, state = compress_group_reachability(G, gens, t)
        assert state.rounds <= math.ceil(math.log2(60))
        assert evaluate(A5, prog, group=G).output_value == t
        plain = eliminate_inverses(G, prog)
        assert evaluate(A5, plain).output_value == t


def test_reachability_outside_subgroup():
    S4 = zoo.make_sym(4)
    G = group_view(S4)
    # <(12)> has order 2; pick a target outside
    swap = zoo.perm_index(4, (1, 0, 2, 3))
    cycle = zoo.perm_index(4, (1, 2, 3, 0))
    with pytest.raises(NotInSubgroupError):
        compress_group_reachability(G, [swap], cycle)


def test_reachability_identity_target():
    Z6 = zoo.make_cyclic(6)
    G = group_view(Z6)
    prog, state = compress_group_reachability(G, [1], 0)
    assert evaluate(Z6, prog, group=G).output_value == 0


# -- adapted series / solvable ----------------------------------------------------


def test_adapt_subnormal_s3():
    S = zoo.make_sym(3)
    G = group_view(S)
    swap = zoo.perm_index(3, (1, 0, 2))
    cycle = zoo.perm_index(3, (1, 2, 0))
    chain = derived_series(G)
    for t in range(6):
        prog = adapt_subnormal(G, [swap, cycle], chain, t, "abelian")
        assert evaluate(S, prog).output_value == t


def test_adapt_subnormal_rejects_unadapted():
    S = zoo.make_sym(3)
    G = group_view(S)
    swap = zoo.perm_index(3, (1, 0, 2))
    chain = derived_series(G)
    from slpforge.errors import NotAdaptedError

    with pytest.raises(NotAdaptedError):
        adapt_subnormal(G, [swap], chain, swap, "abelian")


def test_adapt_subnormal_cyclic_chain():
    S = zoo.make_dihedral(4)
    G = group_view(S)
    gens = zoo.dihedral_generators(4)
    pcs = build_polycyclic_set(G, gens)
    sigma = [r.value for r in pcs.chain_records()]
    for t in range(S.n):
        prog = adapt_subnormal(G, sigma, pcs.chain, t, "cyclic")
        assert evaluate(S, prog).output_value == t


def test_derived_adapted_set_levels():
    S = zoo.make_sym(4)
    G = group_view(S)
    gens = [zoo.perm_index(4, (1, 0, 2, 3)), zoo.perm_index(4, (1, 2, 3, 0))]
    chain = derived_series(G)
    assert len(chain.terms) == 4        # S4 > A4 > V4 > 1
    delta = build_derived_adapted_set(G, gens, chain)
    assert is_adapted(G, delta.values, chain)
    # adaptedness per level, stated as closure equality
    for i, term in enumerate(chain.terms[:-1]):
        part = [v for v in delta.values if v in term]
        assert subgroup_closure(G, part) == term, i
    # every record value is rederivable from its provenance
    reg = {}
    for rec in delta.records:
        if rec.kind == "gen":
            val = rec.value
        elif rec.kind == "conj":
            val = G.conjugate(rec.g, rec.h)
        else:
            val = G.commutator(rec.g, rec.h)
        assert val == rec.value
        reg[rec.value] = val


def test_delta_program_computes_all_records():
    S = zoo.make_heisenberg(3)
    G = group_view(S)
    gens = zoo.heisenberg_generators(3)
    delta, chain, dprog = solvable_plan(G, gens)
    trace = evaluate(S, dprog, group=G)
    for rec in delta.records:
        assert rec.value in trace.value_set


def test_solvable_not_solvable():
    A5 = zoo.make_alt(5)
    G = group_view(A5)
    with pytest.raises(NotSolvableError):
        compress_group_solvable(G, zoo._alt_generators(5), 1)
    with pytest.raises(NotSolvableError):
        compress_group_solvable_bounded(G, zoo._alt_generators(5), 1)


def test_solvable_heisenberg_adapted_per_level():
    S = zoo.make_heisenberg(3)
    G = group_view(S)
    gens = zoo.heisenberg_generators(3)
    chain = derived_series(G)
    delta = build_derived_adapted_set(G, gens, chain)
    for i in range(len(chain.terms) - 1):
        part = [v for v in delta.values if v in chain.terms[i]]
        assert subgroup_closure(G, part) == chain.terms[i]


def test_polycyclic_set_dihedral():
    S = zoo.make_dihedral(4)
    G = group_view(S)
    pcs = build_polycyclic_set(G, zoo.dihedral_generators(4))
    # chain descends with cyclic quotients down to the trivial subgroup
    sizes = [t.cardinality for t in pcs.chain.terms]
    assert sizes[0] == 8 and sizes[-1] == 1
    for a, b in zip(sizes, sizes[1:]):
        assert a % b == 0 and a > b
    # commutator layer lands inside <r^2>
    r, f = zoo.dihedral_generators(4)
    r2 = int(S.table[r, r])
    layer1 = [rec for rec in pcs.records if rec.layer == 1]
    sub = subgroup_closure(G, [r2])
    for rec in layer1:
        assert rec.value in sub


def test_polycyclic_layers_in_derived_terms(zoo_small):
    for name, (S, gens, _) in zoo_small.items():
        try:
            G = group_view(S)
        except Exception:
            continue
        chain = derived_series(G)
        if not chain.is_trivial_terminal:
            continue
        pcs = build_polycyclic_set(G, gens)
        for rec in pcs.records:
            if rec.layer < len(chain.terms):
                assert rec.value in chain.terms[rec.layer], name
        # provenance reproduces every record value
        for rec in pcs.records:
            if rec.layer == 0:
                val = rec.base
                for h in rec.u_word:
                    pass
                hval = G.identity
                for letter in rec.u_word:
                    hval = int(S.table[hval, letter])
                assert rec.value == G.conjugate(rec.base, hval), name
            else:
                parent = pcs.records[rec.parent]
                vval = G.identity
                for letter in rec.v_word:
                    vval = int(S.table[vval, letter])
                uval = G.identity
                for letter in rec.u_word:
                    uval = int(S.table[uval, letter])
                gt = G.conjugate(parent.value, vval)
                comm = G.commutator(parent.value, gt)
                assert rec.value == G.conjugate(comm, uval), name


def test_solvable_bounded_width_and_value():
    cases = [
        (zoo.make_dihedral(8), zoo.dihedral_generators(8)),
        (zoo.make_heisenberg(3), zoo.heisenberg_generators(3)),
        (zoo.make_sym(4), [zoo.perm_index(4, (1, 0, 2, 3)), zoo.perm_index(4, (1, 2, 3, 0))]),
    ]
    for S, gens in cases:
        G = group_view(S)
        pcs = build_polycyclic_set(G, gens)
        for t in range(S.n):
            slp, _ = compress_group_solvable_bounded(G, gens, t, pcs=pcs)
            assert evaluate(S, slp).output_value == t, (S.name, t)
            assert slp.width <= 5
            assert not any(ins[0] == "I" for ins in slp.instructions)


def test_solvable_cyclic_collapses_to_fast_exp():
    Z = zoo.make_cyclic(97)
    G = group_view(Z)
    slp, pcs = compress_group_solvable_bounded(G, [1], 55)
    assert evaluate(Z, slp).output_value == 55
    assert slp.width == 2
    assert len(pcs.chain_indices) == 1


# -- normal band ----------------------------------------------------------------


def test_normal_band_group_degenerate():
    S = zoo.make_cyclic(9)
    bc = compress_normal_band(S, [1], 7, "auto", "wide")
    assert evaluate(S, bc.slp).output_value == 7
    assert bc.alpha == 0


def test_normal_band_modes_and_widths():
    S, gens, _ = zoo.build_family("rb-x-cyclic", [2, 2, 9])
    for mode, extra in (("wide", 2), ("narrow", 1)):
        for t in range(S.n):
            bc = compress_normal_band(S, gens, t, "auto", mode)
            assert evaluate(S, bc.slp).output_value == t
            assert bc.slp.width <= max(bc.group_width + extra, 3), (mode, t)


def test_normal_band_sigma_alpha_closure_every_class():
    from slpforge.compressors import class_generators
    from slpforge.decomposition import band_of_groups_decomposition

    for family, params in (("rb-x-cyclic", [2, 2, 9]), ("clifford-z4-z2", [])):
        S, gens, _ = zoo.build_family(family, params)
        dec = band_of_groups_decomposition(S)
        for alpha in range(dec.class_count):
            vals, wits = class_generators(S, dec, gens, alpha)
            assert closure(S, vals) == dec.carriers[alpha], (family, alpha)


def test_clifford_bottom_class_generators_via_products():
    S, gens, _ = zoo.build_family("clifford-z4-z2", [])
    from slpforge.compressors import class_generators
    from slpforge.decomposition import band_of_groups_decomposition

    dec = band_of_groups_decomposition(S)
    bottom = dec.class_of(S.n - 1)
    vals, wits = class_generators(S, dec, gens, bottom)
    assert any(len(w) == 2 for w in wits)
    assert closure(S, vals) == dec.carriers[bottom]


# -- general pipeline --------------------------------------------------------------


def test_general_on_extension():
    base, bgens, _ = zoo.build_family("rb-x-cyclic", [2, 2, 9])
    T, _ = zoo.make_nilpotent_extension(base, len(bgens), bgens, 3)
    gens = list(range(len(bgens)))
    members = closure(T, gens)
    for t in members:
        gc = compress_general(T, gens, t)
        assert evaluate(T, gc.slp).output_value == t
        if gc.group_width is not None:
            assert gc.slp.width <= gc.group_width + 3


def test_general_leaf_substitution_equality():
    base, bgens, _ = zoo.build_family("rb-x-cyclic", [2, 2, 9])
    T, _ = zoo.make_nilpotent_extension(base, len(bgens), bgens, 3)
    gens = list(range(len(bgens)))
    found = 0
    for t in closure(T, gens):
        gc = compress_general(T, gens, t)
        if gc.band is None or gc.tilde_value is None:
            continue
        found += 1
        # the tilde-side product wrapped in u, v also evaluates to the target
        lhs = T.word_value([gc.left, gc.tilde_value, gc.right])
        assert lhs == t
    assert found >= 3


def test_general_not_eligible():
    from slpforge.errors import NotEligibleError

    w = zoo.make_obstruction_witness("T", 12)
    with pytest.raises(NotEligibleError):
        compress_general(w.semigroup, w.generators, w.target, Config(kmax=3))


# -- dispatcher ---------------------------------------------------------------------


def test_compress_reports_and_verifies(zoo_small):
    for name, (S, gens, _) in zoo_small.items():
        members = sorted(closure(S, gens))
        for t in members[:: max(1, len(members) // 7)]:
            rep = compress(S, gens, t, "auto")
            assert rep.verified, (name, t)
            assert rep.length == rep.slp.length and rep.width == rep.slp.width


def test_compress_unreachable():
    Z6 = zoo.make_cyclic(6)
    with pytest.raises(UnreachableError):
        compress(Z6, [2], 1)


def test_compress_inside_proper_subsemigroup():
    Z12 = zoo.make_cyclic(12)
    rep = compress(Z12, [4], 8, "auto")
    assert rep.verified and set(rep.slp.alphabet) <= {4}
