"""The cosimplicial vector space of a (space, algebra, multi-module) triple.

Degree n is Hom(A^{t_n}, M) where t_n counts the non-basepoint n-simplices
(degenerate ones included). A hom basis element is a pair (assignment of an
algebra basis index to every such simplex, module basis index); its flat
column index is value(assignment) * m + module_index, where value reads the
assignment as a base-d number with the first simplex most significant.

A coface at index i sends a target assignment to: the composite of the
class actions of all (n+1)-simplices whose i-th face is the basepoint,
applied to the source evaluated at the per-simplex products grouped by the
i-th face (empty product = unit). A codegeneracy places each source factor
at the i-th degeneracy of its simplex and fills every other slot with the
unit. The alternating sum of cofaces is the differential; cohomology
dimensions come from exact rank/kernel computations.
"""

from __future__ import annotations

import itertools

from .actions import ActionPartition, reduce_slot
from .coeffalg import Algebra, MultiModule
from .errors import BudgetError, InternalError, ValidationError
from .exactlinalg import Matrix
from .simplicial import SimplicialSpace

DEFAULT_BUDGET = 200_000


class CochainSetup:
    """Space + algebra + multi-module + degree cap, with cached matrices.

    All coface/codegeneracy/differential matrices for degrees up to the cap
    are derived (and memoized) from here. Construction fails fast with
    BudgetError if any hom space within the cap exceeds the column budget.
    """

    def __init__(
        self,
        space: SimplicialSpace,
        algebra: Algebra,
        module: MultiModule,
        partition: ActionPartition,
        max_degree: int,
        *,
        budget: int = DEFAULT_BUDGET,
        override_slots: bool = False,
    ):
        if max_degree < 1:
            raise ValidationError("max degree must be at least 1")
        self.space = space
        self.algebra = algebra
        self.module = module
        self.partition = partition
        self.max_degree = max_degree
        self.budget = budget
        self.override_slots = override_slots
        self._basis = {}
        self._coface = {}
        self._codegeneracy = {}
        self._differential = {}
        d = algebra.dim
        m = module.dim
        self.t = []
        self.hom_dims = []
        for n in range(max_degree + 2):
            basis = tuple(
                s for s in space.simplices(n) if not space.is_basepoint(s)
            )
            self._basis[n] = basis
            self.t.append(len(basis))
            dim = m * d ** len(basis)
            if dim > budget:
                raise BudgetError(n, dim, budget)
            self.hom_dims.append(dim)

    def basis(self, n: int):
        """The non-basepoint n-simplices indexing the tensor factors."""
        self._check_degree(n)
        return self._basis[n]

    def hom_dimension(self, n: int) -> int:
        self._check_degree(n)
        return self.hom_dims[n]

    def _check_degree(self, n: int):
        if not 0 <= n <= self.max_degree + 1:
            raise ValueError(
                f"degree {n} outside 0..{self.max_degree + 1} for this setup"
            )

    def action_key(self, slot) -> str:
        return slot.id if self.override_slots else self.partition.class_of(slot)

    def flat_index(self, n: int, assignment, module_index: int) -> int:
        """Column index of the hom basis element (assignment, module index)."""
        d = self.algebra.dim
        m = self.module.dim
        if len(assignment) != self.t[n]:
            raise ValueError(f"assignment must cover the {self.t[n]} tensor factors")
        if not 0 <= module_index < m:
            raise ValueError("module index out of range")
        value = 0
        for digit in assignment:
            if not 0 <= digit < d:
                raise ValueError("algebra basis index out of range")
            value = value * d + digit
        return value * m + module_index

    def basis_element(self, n: int, flat: int):
        """Inverse of flat_index: (assignment tuple, module index)."""
        d = self.algebra.dim
        m = self.module.dim
        if not 0 <= flat < self.hom_dimension(n):
            raise ValueError("flat index out of range")
        value, module_index = divmod(flat, m)
        digits = []
        for _ in range(self.t[n]):
            value, digit = divmod(value, d)
            digits.append(digit)
        return tuple(reversed(digits)), module_index

    # -- matrices ---------------------------------------------------------

    def coface(self, n: int, i: int) -> Matrix:
        self._check_degree(n + 1)
        if not 0 <= i <= n + 1:
            raise ValueError(f"coface index {i} out of range 0..{n + 1}")
        key = (n, i)
        if key not in self._coface:
            self._coface[key] = self._build_coface(n, i)
        return self._coface[key]

    def codegeneracy(self, n: int, i: int) -> Matrix:
        self._check_degree(n + 1)
        if not 0 <= i <= n:
            raise ValueError(f"codegeneracy index {i} out of range 0..{n}")
        key = (n, i)
        if key not in self._codegeneracy:
            self._codegeneracy[key] = self._build_codegeneracy(n, i)
        return self._codegeneracy[key]

    def differential(self, n: int) -> Matrix:
        """Alternating sum of the cofaces out of degree n."""
        if n < 0:
            return Matrix(self.algebra.field, self.hom_dims[0], 0)
        if n not in self._differential:
            F = self.algebra.field
            acc = {}
            add = F.add
            neg = F.neg
            for i in range(n + 2):
                for pos, v in self.coface(n, i).entries.items():
                    term = v if i % 2 == 0 else neg(v)
                    cur = acc.get(pos)
                    acc[pos] = term if cur is None else add(cur, term)
            self._differential[n] = Matrix(
                F, self.hom_dims[n + 1], self.hom_dims[n], acc
            )
        return self._differential[n]

    def _build_coface(self, n: int, i: int) -> Matrix:
        space = self.space
        alg = self.algebra
        F = alg.field
        d = alg.dim
        m = self.module.dim
        src = self._basis[n]
        tgt = self._basis[n + 1]
        rows = self.hom_dims[n + 1]
        cols = self.hom_dims[n]
        if m == 0:
            return Matrix(F, rows, cols)

        src_pos = {s: q for q, s in enumerate(src)}
        star_positions = []
        star_mats = []
        groups = [[] for _ in src]
        for p, s in enumerate(tgt):
            f = space.face(s, i)
            if space.is_basepoint(f):
                slot = reduce_slot(space, s, i)
                mats = self.module.actions.get(self.action_key(slot))
                if mats is None:
                    raise InternalError(
                        f"no action supplied for {self.action_key(slot)!r}"
                    )
                star_positions.append(p)
                star_mats.append(mats)
            else:
                groups[src_pos[f]].append(p)

        # composite action for each choice of basis elements on the star
        # positions, stored as a nonzero-triple list
        star_table = {}
        for combo in itertools.product(range(d), repeat=len(star_positions)):
            mat = None
            for k, t in enumerate(combo):
                mat = star_mats[k][t] if mat is None else mat @ star_mats[k][t]
            if mat is None:
                items = [(u, u, F.one) for u in range(m)]
            else:
                items = [(r, c, v) for (r, c), v in sorted(mat.entries.items())]
            star_table[combo] = items

        # per-source-simplex expansion of the grouped product into basis
        # coordinates, for each choice of factors
        varying = [q for q in range(len(src)) if groups[q]]
        group_tables = []
        for q in varying:
            table = {}
            for combo in itertools.product(range(d), repeat=len(groups[q])):
                coords = alg.unit
                for t in combo:
                    coords = alg.multiply(coords, _basis_vector(F, d, t))
                table[combo] = [(t, c) for t, c in enumerate(coords) if c != 0]
            group_tables.append(table)

        # source-index place value of each varying position (first simplex
        # most significant); non-varying positions keep the unit index 0
        t_src = len(src)
        place = [d ** (t_src - 1 - q) for q in varying]

        entries = {}
        mul = F.mul
        for b in itertools.product(range(d), repeat=len(tgt)):
            p_items = star_table[tuple(b[p] for p in star_positions)]
            if not p_items:
                continue
            expansions = []
            for k, q in enumerate(varying):
                terms = group_tables[k][tuple(b[p] for p in groups[q])]
                if not terms:
                    break
                expansions.append(terms)
            else:
                row_value = 0
                for digit in b:
                    row_value = row_value * d + digit
                row_base = row_value * m
                for chosen in itertools.product(*expansions):
                    col_value = 0
                    coeff = F.one
                    for k, (t, c) in enumerate(chosen):
                        col_value += t * place[k]
                        if c != 1:
                            coeff = mul(coeff, c)
                    col_base = col_value * m
                    if coeff == 1:
                        for r, c_idx, v in p_items:
                            entries[(row_base + r, col_base + c_idx)] = v
                    else:
                        for r, c_idx, v in p_items:
                            entries[(row_base + r, col_base + c_idx)] = mul(coeff, v)
        return Matrix(F, rows, cols, entries)

    def _build_codegeneracy(self, n: int, i: int) -> Matrix:
        space = self.space
        F = self.algebra.field
        d = self.algebra.dim
        m = self.module.dim
        src = self._basis[n]
        up = self._basis[n + 1]
        rows = self.hom_dims[n]
        cols = self.hom_dims[n + 1]
        if m == 0:
            return Matrix(F, rows, cols)
        up_pos = {s: p for p, s in enumerate(up)}
        t_up = len(up)
        image_place = []
        seen = set()
        for s in src:
            target = space.degeneracy(s, i)
            p = up_pos.get(target)
            if p is None or p in seen:
                raise InternalError("degeneracy image not found or not injective")
            seen.add(p)
            image_place.append(d ** (t_up - 1 - p))
        one = F.one
        entries = {}
        for b in itertools.product(range(d), repeat=len(src)):
            row_value = 0
            for digit in b:
                row_value = row_value * d + digit
            col_value = 0
            for q, digit in enumerate(b):
                col_value += digit * image_place[q]
            row_base = row_value * m
            col_base = col_value * m
            for u in range(m):
                entries[(row_base + u, col_base + u)] = one
        return Matrix(F, rows, cols, entries)

    # -- checks and cohomology --------------------------------------------

    def check_cosimplicial_identities(self) -> list[dict]:
        """Every identity instance whose matrices fit inside the degree cap.

        Returns failing instances as {"relation", "n", "i", "j"}; empty
        means the cosimplicial structure is consistent.
        """
        failures = []
        N = self.max_degree
        for n in range(N):
            for j in range(1, n + 3):
                for i in range(j):
                    lhs = self.coface(n + 1, j) @ self.coface(n, i)
                    rhs = self.coface(n + 1, i) @ self.coface(n, j - 1)
                    if lhs != rhs:
                        failures.append({"relation": "a", "n": n, "i": i, "j": j})
        for n in range(1, N + 1):
            for i in range(1, n + 1):
                for j in range(i):
                    lhs = self.codegeneracy(n - 1, j) @ self.codegeneracy(n, i)
                    rhs = self.codegeneracy(n - 1, i - 1) @ self.codegeneracy(n, j)
                    if lhs != rhs:
                        failures.append({"relation": "b", "n": n, "i": i, "j": j})
        for n in range(N + 1):
            for i in range(n + 2):
                for j in range(n + 1):
                    lhs = self.codegeneracy(n, j) @ self.coface(n, i)
                    if i == j or i == j + 1:
                        rhs = Matrix.identity(self.algebra.field, self.hom_dims[n])
                    elif i < j:
                        rhs = self.coface(n - 1, i) @ self.codegeneracy(n - 1, j - 1)
                    else:
                        rhs = self.coface(n - 1, i - 1) @ self.codegeneracy(n - 1, j)
                    if lhs != rhs:
                        failures.append({"relation": "c", "n": n, "i": i, "j": j})
        return failures

    def cohomology_dims(self) -> list[int]:
        """[HH^0 .. HH^N] by kernel/rank of the alternating-sum differentials."""
        dims = []
        prev_rank = 0
        for n in range(self.max_degree + 1):
            delta = self.differential(n)
            hh = delta.kernel_dim() - prev_rank
            if hh < 0:
                raise InternalError(f"negative cohomology dimension in degree {n}")
            dims.append(hh)
            prev_rank = delta.rank()
        return dims

    def report(self, *, with_cohomology: bool = True) -> dict:
        failures = self.check_cosimplicial_identities()
        out = {
            "space": self.space.name,
            "t": list(self.t),
            "hom_dims": list(self.hom_dims),
            "identities": "pass" if not failures else failures,
        }
        if with_cohomology and not failures:
            out["hh_dims"] = self.cohomology_dims()
        return out


def _basis_vector(F, d, t):
    return tuple(F.one if s == t else F.zero for s in range(d))


def classical_hochschild_dims(
    algebra: Algebra,
    module: MultiModule,
    left_key: str,
    right_key: str,
    max_degree: int,
) -> list[int]:
    """Classical two-sided bar-complex cohomology dimensions (test oracle).

    Degree n is Hom(A^n, M); the differential acts by the left action on the
    first factor, successive neighbor products with alternating signs, and
    the right action on the last factor. Coded independently of the
    cosimplicial assembly above so the two can check each other.
    """
    F = algebra.field
    d = algebra.dim
    m = module.dim
    left = module.actions[left_key]
    right = module.actions[right_key]
    add = F.add
    mul = F.mul
    neg = F.neg

    def put(acc, key, val):
        cur = acc.get(key)
        acc[key] = val if cur is None else add(cur, val)

    def diff(n):
        rows = m * d ** (n + 1)
        cols = m * d**n
        acc = {}
        for b in itertools.product(range(d), repeat=n + 1):
            row_value = 0
            for digit in b:
                row_value = row_value * d + digit
            row_base = row_value * m
            # drop the first factor through the left action
            col_value = 0
            for digit in b[1:]:
                col_value = col_value * d + digit
            for (r, c), v in left[b[0]].entries.items():
                put(acc, (row_base + r, col_value * m + c), v)
            # contract neighbors k-1, k
            for k in range(1, n + 1):
                sign = k % 2 == 1
                coords = algebra.mul[b[k - 1]][b[k]]
                for t, cval in enumerate(coords):
                    if cval == 0:
                        continue
                    col_value = 0
                    for digit in b[: k - 1] + (t,) + b[k + 1:]:
                        col_value = col_value * d + digit
                    val = neg(cval) if sign else cval
                    col_base = col_value * m
                    for u in range(m):
                        put(acc, (row_base + u, col_base + u), val)
            # drop the last factor through the right action
            col_value = 0
            for digit in b[:-1]:
                col_value = col_value * d + digit
            last_sign = (n + 1) % 2 == 1
            for (r, c), v in right[b[n]].entries.items():
                put(acc, (row_base + r, col_value * m + c), neg(v) if last_sign else v)
        return Matrix(F, rows, cols, acc)

    dims = []
    prev_rank = 0
    for n in range(max_degree + 1):
        delta = diff(n)
        dims.append(delta.kernel_dim() - prev_rank)
        prev_rank = delta.rank()
    return dims
