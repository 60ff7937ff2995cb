"""Cross-checks of the matrix assembly against a brute-force reference.

The reference implementations below recompute coface and codegeneracy
matrices directly from their defining evaluation rules, one (target, source)
basis pair at a time, with none of the engine's caching or expansion
shortcuts. Agreement on assorted setups pins the optimized assembly.
"""

import itertools

import pytest

from helpers import (
    coefficient_module,
    cubic_truncation,
    dual_numbers,
    space_and_partition,
)
from hhx import CochainSetup, classical_hochschild_dims, multiplication_module
from hhx.actions import reduce_slot, sweep_closure
from hhx.exactlinalg import Matrix
from hhx.simplicial import parse_space


def unit_vec(F, d, t):
    return tuple(F.one if s == t else F.zero for s in range(d))


def slow_coface(setup, n, i):
    space = setup.space
    alg = setup.algebra
    module = setup.module
    F = alg.field
    d = alg.dim
    m = module.dim
    src = setup.basis(n)
    tgt = setup.basis(n + 1)
    entries = {}
    for bt in itertools.product(range(d), repeat=len(tgt)):
        composite = Matrix.identity(F, m)
        for p, s in enumerate(tgt):
            face = space.face(s, i)
            if space.is_basepoint(face):
                slot = reduce_slot(space, s, i)
                composite = composite @ module.act(
                    setup.action_key(slot), unit_vec(F, d, bt[p])
                )
        grouped = []
        for source_simplex in src:
            coords = alg.unit
            for p, s in enumerate(tgt):
                face = space.face(s, i)
                if not space.is_basepoint(face) and face == source_simplex:
                    coords = alg.multiply(coords, unit_vec(F, d, bt[p]))
            grouped.append(coords)
        row_value = 0
        for digit in bt:
            row_value = row_value * d + digit
        for bs in itertools.product(range(d), repeat=len(src)):
            coeff = F.one
            for q, digit in enumerate(bs):
                coeff = F.mul(coeff, grouped[q][digit])
                if coeff == 0:
                    break
            if coeff == 0:
                continue
            col_value = 0
            for digit in bs:
                col_value = col_value * d + digit
            for (r, u), v in composite.entries.items():
                entries[(row_value * m + r, col_value * m + u)] = F.mul(coeff, v)
    return Matrix(F, setup.hom_dimension(n + 1), setup.hom_dimension(n), entries)


def slow_codegeneracy(setup, n, i):
    space = setup.space
    F = setup.algebra.field
    d = setup.algebra.dim
    m = setup.module.dim
    src = setup.basis(n)
    up = setup.basis(n + 1)
    entries = {}
    for b in itertools.product(range(d), repeat=len(src)):
        argument = []
        for target in up:
            hits = [
                b[q]
                for q, s in enumerate(src)
                if space.degeneracy(s, i) == target
            ]
            assert len(hits) <= 1
            argument.append(hits[0] if hits else 0)
        row_value = 0
        for digit in b:
            row_value = row_value * d + digit
        col_value = 0
        for digit in argument:
            col_value = col_value * d + digit
        for u in range(m):
            entries[(row_value * m + u, col_value * m + u)] = F.one
    return Matrix(F, setup.hom_dimension(n), setup.hom_dimension(n + 1), entries)


REFERENCE_SETUPS = [
    ("circle", dual_numbers, "twisted", 2),
    ("circle", cubic_truncation, "regular", 2),
    ("sphere2", dual_numbers, "end", 2),
    ("pinched-torus", dual_numbers, "twisted", 1),
]


@pytest.mark.parametrize("name,alg_fn,kind,top", REFERENCE_SETUPS)
def test_cofaces_match_reference(name, alg_fn, kind, top):
    algebra = alg_fn()
    space, partition = space_and_partition(name)
    module = coefficient_module(algebra, partition, kind)
    setup = CochainSetup(space, algebra, module, partition, top)
    for n in range(top + 1):
        for i in range(n + 2):
            assert setup.coface(n, i) == slow_coface(setup, n, i), (name, n, i)


@pytest.mark.parametrize("name,alg_fn,kind,top", REFERENCE_SETUPS)
def test_codegeneracies_match_reference(name, alg_fn, kind, top):
    algebra = alg_fn()
    space, partition = space_and_partition(name)
    module = coefficient_module(algebra, partition, kind)
    setup = CochainSetup(space, algebra, module, partition, top)
    for n in range(top + 1):
        for i in range(n + 1):
            assert setup.codegeneracy(n, i) == slow_codegeneracy(setup, n, i), (
                name,
                n,
                i,
            )


def test_override_cofaces_match_reference():
    algebra = dual_numbers()
    space, partition = space_and_partition("sphere2")
    twist = [[1, 0], [0, -1]]
    module = multiplication_module(
        algebra, {"sigma.0": None, "sigma.1": twist, "sigma.2": twist}
    )
    setup = CochainSetup(space, algebra, module, partition, 2, override_slots=True)
    for n in range(3):
        for i in range(n + 2):
            assert setup.coface(n, i) == slow_coface(setup, n, i)


# -- known cohomology values ---------------------------------------------------


def test_cubic_truncation_circle_known_dims():
    # for a truncated polynomial algebra of length 3 in characteristic 0 the
    # periodic resolution gives HH^0 = 3 and HH^n = 2 for n >= 1
    algebra = cubic_truncation()
    space, partition = space_and_partition("circle")
    module = coefficient_module(algebra, partition, "regular")
    setup = CochainSetup(space, algebra, module, partition, 3)
    dims = setup.cohomology_dims()
    assert dims == [3, 2, 2, 2]
    assert dims == classical_hochschild_dims(algebra, module, "e.0", "e.1", 3)


def test_characteristic_two_circle_dims():
    # in characteristic 2 the dual-number differentials vanish entirely, so
    # every degree contributes the full module
    algebra = dual_numbers({"Fp": 2})
    space, partition = space_and_partition("circle")
    module = coefficient_module(algebra, partition, "regular")
    setup = CochainSetup(space, algebra, module, partition, 3)
    dims = setup.cohomology_dims()
    assert dims == [2, 2, 2, 2]
    assert dims == classical_hochschild_dims(algebra, module, "e.0", "e.1", 3)


# -- non-builtin spaces --------------------------------------------------------


WEDGE_DOC = {
    "name": "wedge-of-circles",
    "basepoint": "pt",
    "simplices": [
        {"name": "pt", "dim": 0},
        {"name": "e", "dim": 1, "faces": [["pt", []], ["pt", []]]},
        {"name": "f", "dim": 1, "faces": [["pt", []], ["pt", []]]},
    ],
}

# a triangle with one side collapsed onto a degenerate non-basepoint vertex
BALLOON_DOC = {
    "name": "balloon",
    "basepoint": "p",
    "simplices": [
        {"name": "p", "dim": 0},
        {"name": "q", "dim": 0},
        {"name": "f", "dim": 1, "faces": [["q", []], ["p", []]]},
        {"name": "Z", "dim": 2, "faces": [["q", [0]], ["f", []], ["f", []]]},
    ],
}


def test_wedge_four_classes_identities_hold():
    from hhx.actions import paranoid_closure

    space = parse_space(WEDGE_DOC)
    partition = sweep_closure(space)
    assert partition.class_count == 4
    assert paranoid_closure(space, 4).same_classes(partition)
    algebra = dual_numbers()
    module = coefficient_module(algebra, partition, "regular")
    setup = CochainSetup(space, algebra, module, partition, 2)
    assert setup.t == [0, 2, 4, 6]
    assert setup.check_cosimplicial_identities() == []
    for n in range(2):
        assert (setup.differential(n + 1) @ setup.differential(n)).is_zero()


def test_balloon_space_with_degenerate_face_target():
    from hhx.actions import paranoid_closure

    space = parse_space(BALLOON_DOC)
    z = space.generator("Z")
    assert z.faces[0].is_degenerate and not space.is_basepoint(z.faces[0])
    partition = sweep_closure(space)
    assert [s.id for s in partition.slots] == ["f.1"]
    assert partition.class_count == 1
    assert paranoid_closure(space, 4).same_classes(partition)
    algebra = dual_numbers()
    module = coefficient_module(algebra, partition, "regular")
    setup = CochainSetup(space, algebra, module, partition, 2)
    assert setup.check_cosimplicial_identities() == []
    for n in range(2):
        assert (setup.differential(n + 1) @ setup.differential(n)).is_zero()
    for n in range(2):
        for i in range(n + 2):
            assert setup.coface(n, i) == slow_coface(setup, n, i)
