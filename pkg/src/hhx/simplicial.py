"""Finite pointed simplicial sets with a unique normal form per simplex.

Every simplex is stored as a pair (word, base): a strictly decreasing tuple
of degeneracy indices applied to a non-degenerate generator. The word
(j_0 > j_1 > ... > j_{r-1}) denotes s_{j_0} . s_{j_1} . ... . s_{j_{r-1}}
applied to the generator, leftmost applied last; a simplex is non-degenerate
iff its word is empty. Faces and degeneracies of arbitrary simplices are
computed by pushing maps through the word with the simplicial identities and
renormalizing, so equality of simplices is plain structural equality.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field

from .errors import FormatError, ValidationError


class Generator:
    """A non-degenerate simplex: a name, a dimension and a face table.

    Faces are Simplex values of dimension dim-1 (possibly degenerate),
    listed in order d_0 .. d_dim; the table is empty for dim 0. Face tables
    are attached after all generators of a space exist, then never mutated.
    """

    __slots__ = ("name", "dim", "faces")

    def __init__(self, name: str, dim: int):
        self.name = name
        self.dim = dim
        self.faces: tuple[Simplex, ...] = ()

    def __repr__(self):
        return f"Generator({self.name!r}, dim={self.dim})"


@dataclass(frozen=True)
class Simplex:
    """Normal form (degeneracy word, generator); dim = base.dim + len(word)."""

    word: tuple[int, ...]
    base: Generator
    dim: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", self.base.dim + len(self.word))

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)

    def label(self) -> str:
        if not self.word:
            return self.base.name
        return "".join(f"s{j}" for j in self.word) + "." + self.base.name

    def __repr__(self):
        return f"Simplex({self.label()})"


def word_is_valid(word: tuple[int, ...], base_dim: int) -> bool:
    """True when word is strictly decreasing and each index is applicable.

    The t-th index (outermost first) is applied to a simplex of dimension
    base_dim + len(word) - 1 - t, so it must not exceed that.
    """
    r = len(word)
    for t, j in enumerate(word):
        if j < 0 or j > base_dim + r - 1 - t:
            return False
        if t + 1 < r and word[t + 1] >= j:
            return False
    return True


class SimplicialSpace:
    """A finite pointed simplicial set given by generators and face tables."""

    def __init__(self, name: str, generators, basepoint: Generator):
        self.name = name
        self.generators = tuple(generators)
        self.basepoint = basepoint
        self._by_name = {g.name: g for g in self.generators}
        self._levels: dict[int, tuple[Simplex, ...]] = {}

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise FormatError(f"unknown generator {name!r}") from None

    @property
    def max_dim(self) -> int:
        return max(g.dim for g in self.generators)

    def is_basepoint(self, s: Simplex) -> bool:
        # every degeneracy of the basepoint normalizes to a word over it,
        # so basepoint-ness is just a base check
        return s.base is self.basepoint

    def basepoint_simplex(self, n: int) -> Simplex:
        return Simplex(tuple(range(n - 1, -1, -1)), self.basepoint)

    def face(self, s: Simplex, i: int) -> Simplex:
        """d_i(s) in normal form."""
        n = s.dim
        if n == 0:
            raise ValueError(f"{s!r} has no faces")
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for dim {n}")
        if s.word:
            j = s.word[0]
            rest = Simplex(s.word[1:], s.base)
            if i == j or i == j + 1:
                return rest
            if i < j:
                return self.degeneracy(self.face(rest, i), j - 1)
            return self.degeneracy(self.face(rest, i - 1), j)
        return s.base.faces[i]

    def degeneracy(self, s: Simplex, i: int) -> Simplex:
        """s_i(s) in normal form (sorted insertion into the word)."""
        if not 0 <= i <= s.dim:
            raise ValueError(f"degeneracy index {i} out of range for dim {s.dim}")
        head = []
        tail = s.word
        for t, j in enumerate(s.word):
            if i <= j:
                head.append(j + 1)
            else:
                tail = s.word[t:]
                break
        else:
            tail = ()
        return Simplex(tuple(head) + (i,) + tail, s.base)

    def simplices(self, n: int) -> tuple[Simplex, ...]:
        """All n-simplices, ordered by (generator name, word); cached.

        Includes the degenerate ones and the basepoint simplex (recognizable
        via is_basepoint).
        """
        cached = self._levels.get(n)
        if cached is None:
            out = []
            for g in sorted(self.generators, key=lambda g: g.name):
                r = n - g.dim
                if r < 0:
                    continue
                if r == 0:
                    out.append(Simplex((), g))
                    continue
                for combo in itertools.combinations(range(n), r):
                    word = combo[::-1]
                    if word_is_valid(word, g.dim):
                        out.append(Simplex(word, g))
            cached = tuple(out)
            self._levels[n] = cached
        return cached

    def nondegenerate_simplices(self, n: int) -> tuple[Simplex, ...]:
        return tuple(s for s in self.simplices(n) if not s.is_degenerate)


def enumerate_simplices(space: SimplicialSpace, n: int):
    return space.simplices(n)


def apply_face(space: SimplicialSpace, s: Simplex, i: int) -> Simplex:
    return space.face(s, i)


def apply_degeneracy(space: SimplicialSpace, s: Simplex, i: int) -> Simplex:
    return space.degeneracy(s, i)


def validate_space(space: SimplicialSpace) -> list[tuple[str, int, int]]:
    """Check d_i d_j = d_{j-1} d_i (i < j) on every generator of dim >= 2.

    Returns the list of violations as (generator name, i, j); empty = pass.
    """
    violations = []
    for g in space.generators:
        if g.dim < 2:
            continue
        s = Simplex((), g)
        for j in range(1, g.dim + 1):
            for i in range(j):
                lhs = space.face(space.face(s, j), i)
                rhs = space.face(space.face(s, i), j - 1)
                if lhs != rhs:
                    violations.append((g.name, i, j))
    return violations


def _parse_word(raw, context: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(
        isinstance(j, int) and not isinstance(j, bool) for j in raw
    ):
        raise FormatError(f"{context}: degeneracy word must be a list of naturals")
    return tuple(raw)


def parse_space(doc, *, validate: bool = True) -> SimplicialSpace:
    """Build a space from its JSON document form.

    Face references may point at degenerate simplices (generator + word);
    they are stored as given, already in normal form. With validate=True
    (the default) a simplicial-identity violation raises ValidationError.
    """
    if not isinstance(doc, dict):
        raise FormatError("space document must be a JSON object")
    name = doc.get("name")
    if not isinstance(name, str):
        raise FormatError('space document needs a string "name"')
    entries = doc.get("simplices")
    if not isinstance(entries, list) or not entries:
        raise FormatError('space document needs a non-empty "simplices" list')

    generators = []
    by_name = {}
    for entry in entries:
        if not isinstance(entry, dict):
            raise FormatError("each simplex entry must be an object")
        gname = entry.get("name")
        gdim = entry.get("dim")
        if not isinstance(gname, str) or not gname:
            raise FormatError("simplex entry needs a string name")
        if not isinstance(gdim, int) or isinstance(gdim, bool) or gdim < 0:
            raise FormatError(f"simplex {gname!r}: dim must be a natural number")
        if gname in by_name:
            raise FormatError(f"duplicate generator name {gname!r}")
        g = Generator(gname, gdim)
        by_name[gname] = g
        generators.append(g)

    bp_name = doc.get("basepoint")
    if not isinstance(bp_name, str) or bp_name not in by_name:
        raise FormatError('space document needs a "basepoint" naming a generator')
    basepoint = by_name[bp_name]
    if basepoint.dim != 0:
        raise FormatError(f"basepoint {bp_name!r} must have dimension 0")

    for entry, raw in zip(generators, entries):
        raw_faces = raw.get("faces", [])
        if entry.dim == 0:
            if raw_faces:
                raise FormatError(f"generator {entry.name!r} has dim 0 but lists faces")
            continue
        if not isinstance(raw_faces, list) or len(raw_faces) != entry.dim + 1:
            raise FormatError(
                f"generator {entry.name!r} needs exactly {entry.dim + 1} faces"
            )
        faces = []
        for i, ref in enumerate(raw_faces):
            if not (isinstance(ref, list) and len(ref) == 2 and isinstance(ref[0], str)):
                raise FormatError(
                    f"face {i} of {entry.name!r}: expected [generator, [word...]]"
                )
            target_name, raw_word = ref
            target = by_name.get(target_name)
            if target is None:
                raise FormatError(
                    f"face {i} of {entry.name!r}: unknown generator {target_name!r}"
                )
            word = _parse_word(raw_word, f"face {i} of {entry.name!r}")
            if not word_is_valid(word, target.dim):
                raise FormatError(
                    f"face {i} of {entry.name!r}: word {list(word)} is not in "
                    f"normal form over {target_name!r}"
                )
            if target.dim + len(word) != entry.dim - 1:
                raise FormatError(
                    f"face {i} of {entry.name!r}: has dimension "
                    f"{target.dim + len(word)}, expected {entry.dim - 1}"
                )
            faces.append(Simplex(word, target))
        entry.faces = tuple(faces)

    space = SimplicialSpace(name, generators, basepoint)
    if validate:
        violations = validate_space(space)
        if violations:
            listing = ", ".join(f"({g}, d{i}, d{j})" for g, i, j in violations)
            err = ValidationError(f"simplicial identities violated: {listing}")
            err.violations = violations
            raise err
    return space


def load_space(path: str, *, validate: bool = True) -> SimplicialSpace:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return parse_space(doc, validate=validate)


def _builtin_doc(name: str):
    if name == "circle":
        return {
            "name": "circle",
            "basepoint": "pt",
            "simplices": [
                {"name": "pt", "dim": 0},
                {"name": "e", "dim": 1, "faces": [["pt", []], ["pt", []]]},
            ],
        }
    m = re.fullmatch(r"sphere(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise FormatError("sphere dimension must be at least 1")
        bp = ["pt", list(range(n - 2, -1, -1))]
        return {
            "name": name,
            "basepoint": "pt",
            "simplices": [
                {"name": "pt", "dim": 0},
                {"name": "sigma", "dim": n, "faces": [bp] * (n + 1)},
            ],
        }
    if name == "torus":
        edge = {"faces": [["pt", []], ["pt", []]]}
        return {
            "name": "torus",
            "basepoint": "pt",
            "simplices": [
                {"name": "pt", "dim": 0},
                {"name": "a", "dim": 1, **edge},
                {"name": "b", "dim": 1, **edge},
                {"name": "c", "dim": 1, **edge},
                {"name": "sigma", "dim": 2,
                 "faces": [["c", []], ["b", []], ["a", []]]},
                {"name": "tau", "dim": 2,
                 "faces": [["a", []], ["b", []], ["c", []]]},
            ],
        }
    if name == "pinched-torus":
        edge = {"faces": [["pt", []], ["pt", []]]}
        collapsed = ["pt", [0]]
        return {
            "name": "pinched-torus",
            "basepoint": "pt",
            "simplices": [
                {"name": "pt", "dim": 0},
                {"name": "a", "dim": 1, **edge},
                {"name": "c", "dim": 1, **edge},
                {"name": "sigma", "dim": 2,
                 "faces": [["c", []], collapsed, ["a", []]]},
                {"name": "tau", "dim": 2,
                 "faces": [["a", []], collapsed, ["c", []]]},
            ],
        }
    raise FormatError(f"unknown builtin space {name!r}")


BUILTIN_NAMES = ("circle", "sphere<n>", "torus", "pinched-torus")


def builtin_space(name: str) -> SimplicialSpace:
    """One of the built-in minimal pointed spaces.

    circle: one vertex and one edge. sphere<n> (n >= 1): one vertex and one
    n-cell with every face at the (degenerate) basepoint. torus: one vertex,
    edges a, b, c and triangles sigma = [c, b, a], tau = [a, b, c].
    pinched-torus: the torus with b collapsed to the basepoint.
    """
    return parse_space(_builtin_doc(name))
