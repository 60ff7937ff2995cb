"""Action slots of a pointed space and their equivalence closure.

A slot is a pair (non-degenerate simplex, face index) whose indexed face is
the basepoint; slots on degenerate simplices reduce to slots on their
underlying generator. Scanning every generator of dimension >= 2 produces
forced identifications between slots; their union-find closure is the finest
partition compatible with a cosimplicial structure, and its class count says
what kind of coefficient module the space admits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InternalError
from .simplicial import Generator, Simplex, SimplicialSpace


@dataclass(frozen=True)
class ActionSlot:
    """A generator together with a face index pointing at the basepoint."""

    generator: Generator
    index: int

    @property
    def key(self) -> tuple[str, int]:
        return (self.generator.name, self.index)

    @property
    def id(self) -> str:
        return f"{self.generator.name}.{self.index}"

    def describe(self) -> str:
        """Slot id, annotated forward/backward on edges."""
        if self.generator.dim == 1:
            return f"{self.id} ({'forward' if self.index == 0 else 'backward'})"
        return self.id

    def __repr__(self):
        return f"ActionSlot({self.id})"


class UnionFind:
    """Plain union-find with path compression over hashable items."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


class ActionPartition:
    """Slots partitioned into classes; class id = smallest member's id."""

    def __init__(self, slots, classes):
        self.slots = tuple(sorted(slots, key=lambda s: s.key))
        self.classes = tuple(
            sorted(
                (tuple(sorted(cls, key=lambda s: s.key)) for cls in classes),
                key=lambda cls: cls[0].key,
            )
        )
        covered = [s for cls in self.classes for s in cls]
        if sorted(covered, key=lambda s: s.key) != list(self.slots):
            raise InternalError("classes do not partition the slot set")
        self._class_of = {}
        for cls in self.classes:
            cid = cls[0].id
            for slot in cls:
                self._class_of[slot] = cid

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def class_ids(self) -> tuple[str, ...]:
        return tuple(cls[0].id for cls in self.classes)

    def class_of(self, slot: ActionSlot) -> str:
        try:
            return self._class_of[slot]
        except KeyError:
            raise InternalError(f"{slot!r} is not a slot of this space") from None

    def members(self, class_id: str) -> tuple[ActionSlot, ...]:
        for cls in self.classes:
            if cls[0].id == class_id:
                return cls
        raise KeyError(class_id)

    def coefficient_kind(self) -> str:
        k = self.class_count
        if k == 1:
            return "uni-module"
        if k == 2:
            return "bi-module"
        return f"{k}-multi-module"

    def to_report(self) -> dict:
        return {
            "slots": [s.id for s in self.slots],
            "classes": [
                {"id": cls[0].id, "members": [s.id for s in cls]}
                for cls in self.classes
            ],
            "class_count": self.class_count,
            "coefficient_kind": self.coefficient_kind(),
        }

    def same_classes(self, other: "ActionPartition") -> bool:
        return self.slots == other.slots and self.classes == other.classes

    def __repr__(self):
        return f"ActionPartition({self.class_count} classes on {len(self.slots)} slots)"


def enumerate_slots(space: SimplicialSpace) -> list[ActionSlot]:
    """All (generator, i) with the i-th face at the basepoint, in order."""
    slots = []
    for g in sorted(space.generators, key=lambda g: g.name):
        if g is space.basepoint or g.dim == 0:
            continue
        s = Simplex((), g)
        for i in range(g.dim + 1):
            if space.is_basepoint(space.face(s, i)):
                slots.append(ActionSlot(g, i))
    return slots


def reduce_slot(space: SimplicialSpace, s: Simplex, i: int) -> ActionSlot:
    """The slot on the underlying generator carrying the same action.

    Peels the degeneracy word outermost-first: an index below the layer is
    kept, an index above layer+1 shifts down by one, and hitting the layer
    (where the face map cancels the degeneracy) means the face was never the
    basepoint, so the call was inconsistent.
    """
    if space.is_basepoint(s):
        raise ValueError(f"{s!r} is the basepoint and carries no actions")
    if not space.is_basepoint(space.face(s, i)):
        raise ValueError(f"face {i} of {s!r} is not the basepoint")
    k = i
    for j in s.word:
        if k < j:
            pass
        elif k > j + 1:
            k -= 1
        else:
            raise InternalError(
                f"slot ({s!r}, {i}) hit the cancelling layer s{j}; "
                "the indexed face cannot be the basepoint"
            )
    slot = ActionSlot(s.base, k)
    if not space.is_basepoint(space.face(Simplex((), s.base), k)):
        raise InternalError(f"reduced slot {slot!r} does not point at the basepoint")
    return slot


def _pairs_from(space: SimplicialSpace, s: Simplex):
    """Identifications forced by one simplex of dimension >= 2."""
    pairs = []
    n = s.dim
    faces = [space.face(s, i) for i in range(n + 1)]
    star = [space.is_basepoint(f) for f in faces]
    for j in range(1, n + 1):
        for i in range(j):
            fi, fj = faces[i], faces[j]
            if star[i] and star[j]:
                # both faces hit the basepoint: the simplex's two slots agree
                pairs.append((reduce_slot(space, s, i), reduce_slot(space, s, j)))
            elif star[j]:
                # the slot transfers onto the i-th face with a shifted index
                pairs.append((reduce_slot(space, s, j), reduce_slot(space, fi, j - 1)))
            elif star[i]:
                pairs.append((reduce_slot(space, s, i), reduce_slot(space, fj, i)))
            else:
                if space.is_basepoint(space.face(fj, i)):
                    # the two faces share a basepoint face, forced equal by
                    # d_{j-1} d_i = d_i d_j
                    if not space.is_basepoint(space.face(fi, j - 1)):
                        raise InternalError(
                            f"faces {i},{j} of {s!r} break the simplicial identity"
                        )
                    pairs.append(
                        (reduce_slot(space, fj, i), reduce_slot(space, fi, j - 1))
                    )
    return pairs


def closure_pairs(space: SimplicialSpace) -> list[tuple[ActionSlot, ActionSlot]]:
    """All identifications from scanning the generators of dimension >= 2."""
    pairs = []
    for g in sorted(space.generators, key=lambda g: g.name):
        if g.dim >= 2:
            pairs.extend(_pairs_from(space, Simplex((), g)))
    return pairs


def partition_from_pairs(slots, pairs) -> ActionPartition:
    uf = UnionFind(slots)
    for a, b in pairs:
        uf.union(a, b)
    return ActionPartition(slots, uf.classes())


def sweep_closure(space: SimplicialSpace) -> ActionPartition:
    """The finest slot partition closed under the face-scan identifications."""
    return partition_from_pairs(enumerate_slots(space), closure_pairs(space))


def paranoid_closure(space: SimplicialSpace, dim_cap: int) -> ActionPartition:
    """Same closure, but scanning every simplex (degenerate included).

    Scans dimensions 2..dim_cap and reduces each slot to its generator; the
    result should always equal sweep_closure, which only trusts generators.
    """
    if dim_cap < space.max_dim + 1:
        raise ValueError(
            f"dim_cap {dim_cap} must be at least max generator dimension + 1 "
            f"({space.max_dim + 1})"
        )
    pairs = []
    for n in range(2, dim_cap + 1):
        for s in space.simplices(n):
            if not space.is_basepoint(s):
                pairs.extend(_pairs_from(space, s))
    return partition_from_pairs(enumerate_slots(space), pairs)


def shuffled_closure(space: SimplicialSpace, seed: int) -> ActionPartition:
    """sweep_closure with the identification scan applied in random order."""
    pairs = closure_pairs(space)
    random.Random(seed).shuffle(pairs)
    return partition_from_pairs(enumerate_slots(space), pairs)
