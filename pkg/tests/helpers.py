"""Shared fixtures-in-code: algebra documents, module builders, oracles."""

import random

from hhx import (
    MultiModule,
    builtin_space,
    endomorphism_module,
    multiplication_module,
    parse_algebra,
    sweep_closure,
    validate_module,
)
from hhx.exactlinalg import Matrix

DUAL_DOC = {
    "field": "Q",
    "basis": ["1", "x"],
    "mul": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
}

# Q[x]/x^3 with basis 1, x, x^2
CUBIC_DOC = {
    "field": "Q",
    "basis": ["1", "x", "x2"],
    "mul": [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    ],
}

GROUND_DOC = {"field": "Q", "basis": ["1"], "mul": [[[1]]]}


def dual_numbers(field_doc="Q"):
    doc = dict(DUAL_DOC)
    doc["field"] = field_doc
    return parse_algebra(doc)


def cubic_truncation():
    return parse_algebra(CUBIC_DOC)


def ground_field():
    return parse_algebra(GROUND_DOC)


def negating_twist(algebra):
    """The algebra map x -> -x as a coordinate-column matrix."""
    d = algebra.dim
    cols = []
    for t in range(d):
        # basis element t is x^t in the truncation algebras used here
        sign = 1 if t % 2 == 0 else -1
        cols.append([sign if s == t else 0 for s in range(d)])
    # stored column-major: twist[s][t] = coord s of phi(e_t)
    return [[cols[t][s] for t in range(d)] for s in range(d)]


def coefficient_module(algebra, partition, kind):
    """regular / twisted / end coefficients keyed by the partition's classes."""
    ids = partition.class_ids
    if kind == "regular":
        module = multiplication_module(algebra, {cid: None for cid in ids})
    elif kind == "twisted":
        if len(ids) != 2:
            raise ValueError("twisted coefficients need exactly 2 classes")
        twist = negating_twist(algebra)
        module = multiplication_module(algebra, {ids[0]: None, ids[1]: twist})
    elif kind == "end":
        rho = multiplication_module(algebra, {"v": None}).actions["v"]
        module = endomorphism_module(algebra, rho, partition)
    else:
        raise ValueError(kind)
    validate_module(module, algebra, ids)
    return module


def identity_module(field, m, keys):
    """dim-m module over the 1-dimensional algebra: every key acts trivially."""
    return MultiModule(m, {key: (Matrix.identity(field, m),) for key in keys})


def space_and_partition(name):
    space = builtin_space(name)
    return space, sweep_closure(space)


def random_f5_bimodules(count, seed=20240803):
    """Valid (algebra, module) pairs for the circle over F_5, d and m <= 2.

    Pairs of commuting square-zero actions of the dual numbers, found by
    rejection sampling, plus one trivial pair over the ground field.
    """
    rng = random.Random(seed)
    out = []
    f5 = {"Fp": 5}
    ground = parse_algebra({"field": f5, "basis": ["1"], "mul": [[[1]]]})
    g_mod = MultiModule(
        2,
        {
            "e.0": (Matrix.identity(ground.field, 2),),
            "e.1": (Matrix.identity(ground.field, 2),),
        },
    )
    validate_module(g_mod, ground, ["e.0", "e.1"])
    out.append((ground, g_mod))
    dual = dual_numbers(f5)
    F = dual.field
    while len(out) < count:
        m = rng.choice([1, 2])
        rows = lambda: [[rng.randrange(5) for _ in range(m)] for _ in range(m)]
        xl = Matrix.from_rows(F, rows())
        xr = Matrix.from_rows(F, rows())
        if not (xl @ xl).is_zero() or not (xr @ xr).is_zero():
            continue
        if xl @ xr != xr @ xl:
            continue
        ident = Matrix.identity(F, m)
        module = MultiModule(m, {"e.0": (ident, xl), "e.1": (ident, xr)})
        validate_module(module, dual, ["e.0", "e.1"])
        out.append((dual, module))
    return out
