"""Pointed finite covers of a genus-g surface as permutation representations.

A cover of degree d is a tuple of 2g permutations of {0..d-1}, one per
generator, acting on sheets on the right: a word acts letter by letter,
leftmost letter first.  Sheet 0 is the basepoint sheet.  Serialization is
1-indexed; everything in memory is 0-indexed.

Pointed isomorphism is relabeling of the sheets other than 0.  Each class
contains exactly one labeling whose breadth-first discovery order (positive
generators in index order, then inverses) is 0,1,2,...; that labeling is the
canonical form.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    BadDegree,
    BaseMismatch,
    GenusMismatch,
    IncompatibleTower,
    InvalidIdentification,
    NotTransitive,
    RelatorNotTrivial,
    SearchBudgetExceeded,
)
from .surface import Word, free_reduce, generator_count, inverse_word, surface_relator

Perm = tuple[int, ...]

DEFAULT_BUDGET = 1_000_000


def search_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("COVERTOWER_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Permutation doing p first, then q."""
    return tuple(q[x] for x in p)


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


@dataclass(frozen=True)
class SurfaceCover:
    genus: int
    degree: int
    perms: tuple[Perm, ...]

    def __post_init__(self) -> None:
        g, d = self.genus, self.degree
        if g < 2:
            raise BadDegree(f"base genus must be at least 2, got {g}")
        if d < 1:
            raise BadDegree(f"degree must be at least 1, got {d}")
        if len(self.perms) != generator_count(g):
            raise BadDegree(
                f"expected {generator_count(g)} permutations, got {len(self.perms)}"
            )
        for p in self.perms:
            if len(p) != d or sorted(p) != list(range(d)):
                raise BadDegree(f"{p} is not a permutation of 0..{d - 1}")
        if self.word_permutation(surface_relator(g)) != identity_perm(d):
            raise RelatorNotTrivial("surface relator does not act as the identity")
        if len(_bfs_order(self.perms, d)) != d:
            raise NotTransitive("permutation action is not transitive on sheets")

    @cached_property
    def inverse_perms(self) -> tuple[Perm, ...]:
        return tuple(perm_inverse(p) for p in self.perms)

    @property
    def total_genus(self) -> int:
        """Genus of the covering surface, by the degree formula."""
        return self.degree * (self.genus - 1) + 1

    def act_letter(self, letter: int, sheet: int) -> int:
        idx = abs(letter) - 1
        if letter > 0:
            return self.perms[idx][sheet]
        return self.inverse_perms[idx][sheet]

    def act(self, word, sheet: int) -> int:
        for letter in word:
            sheet = self.act_letter(letter, sheet)
        return sheet

    def word_permutation(self, word) -> Perm:
        out = identity_perm(self.degree)
        for letter in word:
            idx = abs(letter) - 1
            out = perm_mul(out, self.perms[idx] if letter > 0 else self.inverse_perms[idx])
        return out

    def stabilizes_basepoint(self, word) -> bool:
        return self.act(word, 0) == 0

    def is_canonical(self) -> bool:
        return _bfs_order(self.perms, self.degree) == list(range(self.degree))

    def canonical(self) -> "SurfaceCover":
        order = _bfs_order(self.perms, self.degree)
        if order == list(range(self.degree)):
            return self
        new_of_old = [0] * self.degree
        for new, old in enumerate(order):
            new_of_old[old] = new
        return self.relabel(tuple(new_of_old))

    def relabel(self, new_of_old: tuple[int, ...]) -> "SurfaceCover":
        perms = []
        for p in self.perms:
            q = [0] * self.degree
            for s in range(self.degree):
                q[new_of_old[s]] = new_of_old[p[s]]
            perms.append(tuple(q))
        return SurfaceCover(self.genus, self.degree, tuple(perms))


def _bfs_order(perms: tuple[Perm, ...], degree: int) -> list[int]:
    """Sheets in breadth-first discovery order from sheet 0.

    Exploration order at each sheet: positive generators by index, then
    inverse generators by index.  Stops at the reachable component.
    """
    inv = [perm_inverse(p) for p in perms]
    seen = [False] * degree
    seen[0] = True
    order = [0]
    head = 0
    while head < len(order):
        s = order[head]
        head += 1
        for p in perms:
            t = p[s]
            if not seen[t]:
                seen[t] = True
                order.append(t)
        for p in inv:
            t = p[s]
            if not seen[t]:
                seen[t] = True
                order.append(t)
    return order


def trivial_cover(genus: int) -> SurfaceCover:
    n = generator_count(genus)
    return SurfaceCover(genus, 1, tuple(((0,),) * n))


def double_cover_from_signs(genus: int, signs) -> SurfaceCover:
    """Degree-2 cover from a nonzero vector of Z/2 sign bits, one per generator."""
    signs = tuple(int(x) % 2 for x in signs)
    if len(signs) != generator_count(genus) or not any(signs):
        raise BadDegree("need one sign per generator, not all zero")
    swap, ident = (1, 0), (0, 1)
    return SurfaceCover(genus, 2, tuple(swap if b else ident for b in signs))


# ---------------------------------------------------------------------------
# Enumeration

def _discovery_is_identity(perms: list[Perm], degree: int) -> bool:
    """True iff breadth-first discovery visits sheets exactly in order 0,1,2,...

    Implies transitivity.  Aborts at the first out-of-order discovery.
    """
    inv = [perm_inverse(p) for p in perms]
    seen = [False] * degree
    seen[0] = True
    count = 1
    head = 0
    while head < count:
        s = head
        head += 1
        for p in perms:
            t = p[s]
            if not seen[t]:
                if t != count:
                    return False
                seen[t] = True
                count += 1
        for p in inv:
            t = p[s]
            if not seen[t]:
                if t != count:
                    return False
                seen[t] = True
                count += 1
    return count == degree


def _interleave(pairs: list[tuple[Perm, Perm]]) -> tuple[Perm, ...]:
    out: list[Perm] = []
    for a, b in pairs:
        out.append(a)
        out.append(b)
    return tuple(out)


def _enumeration_shard(genus: int, degree: int, shard: int, jobs: int) -> list[tuple[Perm, ...]]:
    """Canonical transitive representation tuples whose first free pair falls in this shard.

    The relator forces the product of per-handle commutators to be trivial, so
    the first g-1 handle pairs range freely and the last handle's commutator is
    determined; a table from commutator values to the pairs producing them
    completes each partial assignment.
    """
    all_perms = list(itertools.permutations(range(degree)))
    inv = {p: perm_inverse(p) for p in all_perms}
    pair_comm: list[tuple[Perm, Perm, Perm]] = []
    comm_to_pairs: dict[Perm, list[tuple[Perm, Perm]]] = {}
    for p in all_perms:
        pi = inv[p]
        for q in all_perms:
            qi = inv[q]
            c = tuple(qi[pi[q[p[x]]]] for x in range(degree))
            pair_comm.append((p, q, c))
            comm_to_pairs.setdefault(c, []).append((p, q))

    found: list[tuple[Perm, ...]] = []
    for k, (p1, q1, c1) in enumerate(pair_comm):
        if k % jobs != shard:
            continue
        for rest in itertools.product(pair_comm, repeat=genus - 2):
            running = c1
            for _, _, c in rest:
                running = perm_mul(running, c)
            target = perm_inverse(running)
            for plast, qlast in comm_to_pairs.get(target, ()):
                pairs = [(p1, q1)] + [(p, q) for p, q, _ in rest] + [(plast, qlast)]
                perms = list(_interleave(pairs))
                if _discovery_is_identity(perms, degree):
                    found.append(tuple(perms))
    return found


@lru_cache(maxsize=None)
def _enumerate_cached(genus: int, degree: int, budget: int) -> tuple[SurfaceCover, ...]:
    return _enumerate_impl(genus, degree, budget, 1)


def _enumerate_impl(genus: int, degree: int, budget: int, jobs: int) -> tuple[SurfaceCover, ...]:
    if degree == 1:
        return (trivial_cover(genus),)
    import math

    n_perms = math.factorial(degree)
    candidates = n_perms ** (2 * (genus - 1))
    if candidates > budget:
        raise SearchBudgetExceeded(
            f"enumeration would examine {candidates} candidate assignments, "
            f"budget is {budget}; raise COVERTOWER_BUDGET to override"
        )
    if jobs <= 1:
        tuples = _enumeration_shard(genus, degree, 0, 1)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_enumeration_shard, *zip(*[(genus, degree, k, jobs) for k in range(jobs)]))
            tuples = [t for part in parts for t in part]
    tuples.sort()
    return tuple(SurfaceCover(genus, degree, t) for t in tuples)


def enumerate_covers(genus: int, degree: int, budget: int | None = None, jobs: int = 1) -> tuple[SurfaceCover, ...]:
    """All pointed-isomorphism classes of degree-d covers, canonical, sorted.

    Results are deterministic and identical for any job count.
    """
    if jobs <= 1:
        return _enumerate_cached(genus, degree, search_budget(budget))
    return _enumerate_impl(genus, degree, search_budget(budget), jobs)


# ---------------------------------------------------------------------------
# Schreier graph: spanning tree, loop words, stabilizer rewriting

@lru_cache(maxsize=None)
def tree_data(cover: SurfaceCover):
    """Breadth-first spanning tree of the Schreier graph.

    Returns (tree_edges, sheet_words): tree_edges is a frozenset of edges
    (generator index, source sheet); sheet_words[s] is the path word from
    sheet 0 to sheet s through the tree.
    """
    d = cover.degree
    words: list[Word | None] = [None] * d
    words[0] = ()
    tree: set[tuple[int, int]] = set()
    order = [0]
    head = 0
    while head < len(order):
        s = order[head]
        head += 1
        for i, p in enumerate(cover.perms):
            t = p[s]
            if words[t] is None:
                words[t] = words[s] + (i + 1,)
                tree.add((i, s))
                order.append(t)
        for i, p in enumerate(cover.inverse_perms):
            t = p[s]
            if words[t] is None:
                words[t] = words[s] + (-(i + 1),)
                tree.add((i, t))
                order.append(t)
    return frozenset(tree), tuple(words)


@lru_cache(maxsize=None)
def nontree_edges(cover: SurfaceCover) -> tuple[tuple[int, int], ...]:
    """Edges outside the spanning tree, in (generator, sheet) order.

    These index the Schreier generators of the basepoint stabilizer; the
    count is 2*g*d - d + 1.
    """
    tree, _ = tree_data(cover)
    n = generator_count(cover.genus)
    return tuple(
        (i, s)
        for i in range(n)
        for s in range(cover.degree)
        if (i, s) not in tree
    )


def schreier_loop(cover: SurfaceCover, edge: tuple[int, int]) -> Word:
    """Basepoint loop through one Schreier edge: tree path, edge, tree path back."""
    _, words = tree_data(cover)
    i, s = edge
    t = cover.perms[i][s]
    return free_reduce(words[s] + (i + 1,) + inverse_word(words[t]))


def rewrite_in_schreier(cover: SurfaceCover, word) -> tuple[int, ...]:
    """Express a basepoint-stabilizing word over the Schreier generators.

    Output letters are signed 1-based indices into nontree_edges(cover).
    """
    tree, _ = tree_data(cover)
    index = {e: k for k, e in enumerate(nontree_edges(cover))}
    out: list[int] = []
    s = 0
    for letter in word:
        i = abs(letter) - 1
        if letter > 0:
            edge = (i, s)
            s = cover.perms[i][s]
            if edge not in tree:
                out.append(index[edge] + 1)
        else:
            s = cover.inverse_perms[i][s]
            edge = (i, s)
            if edge not in tree:
                out.append(-(index[edge] + 1))
    if s != 0:
        raise ValueError("word does not stabilize the basepoint sheet")
    return tuple(out)


# ---------------------------------------------------------------------------
# Arrows, fiber products, induced covers

@dataclass(frozen=True)
class CoverArrow:
    """Pointed factoring map between covers of the same base."""

    source: SurfaceCover
    target: SurfaceCover
    sheet_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source.genus != self.target.genus:
            raise BaseMismatch("arrow endpoints have different base surfaces")
        if len(self.sheet_map) != self.source.degree:
            raise IncompatibleTower("sheet map has wrong length")
        if any(not 0 <= t < self.target.degree for t in self.sheet_map):
            raise IncompatibleTower("sheet map hits sheets outside the target")
        if self.sheet_map[0] != 0:
            raise IncompatibleTower("arrow must preserve the basepoint sheet")
        if self.source.degree % self.target.degree != 0:
            raise IncompatibleTower("source degree not a multiple of target degree")
        for i, p in enumerate(self.source.perms):
            q = self.target.perms[i]
            for s in range(self.source.degree):
                if self.sheet_map[p[s]] != q[self.sheet_map[s]]:
                    raise IncompatibleTower("sheet map is not equivariant")


def identity_arrow(cover: SurfaceCover) -> CoverArrow:
    return CoverArrow(cover, cover, tuple(range(cover.degree)))


def factors_through(fine: SurfaceCover, coarse: SurfaceCover) -> CoverArrow | None:
    """The unique pointed arrow fine -> coarse, or None.

    Exists iff every Schreier generator of fine's basepoint stabilizer also
    stabilizes coarse's basepoint; the map transports sheet 0 along tree words.
    """
    if fine.genus != coarse.genus:
        raise BaseMismatch("covers have different base surfaces")
    for edge in nontree_edges(fine):
        if not coarse.stabilizes_basepoint(schreier_loop(fine, edge)):
            return None
    _, words = tree_data(fine)
    sheet_map = tuple(coarse.act(w, 0) for w in words)
    return CoverArrow(fine, coarse, sheet_map)


@dataclass(frozen=True)
class FiberProduct:
    cover: SurfaceCover
    to_first: CoverArrow
    to_second: CoverArrow


@lru_cache(maxsize=None)
def fiber_product(first: SurfaceCover, second: SurfaceCover) -> FiberProduct:
    """Pointed component of the diagonal action on sheet pairs.

    The result's stabilizer is the intersection of the two stabilizers.
    Sheets are labeled in breadth-first discovery order, so the cover is
    canonical by construction.
    """
    if first.genus != second.genus:
        raise BaseMismatch("covers have different base surfaces")
    n = generator_count(first.genus)
    start = (0, 0)
    label = {start: 0}
    states = [start]
    head = 0
    while head < len(states):
        s, t = states[head]
        head += 1
        for i in range(n):
            for step in (
                (first.perms[i][s], second.perms[i][t]),
                (first.inverse_perms[i][s], second.inverse_perms[i][t]),
            ):
                if step not in label:
                    label[step] = len(states)
                    states.append(step)
    perms = []
    for i in range(n):
        p = [0] * len(states)
        for k, (s, t) in enumerate(states):
            p[k] = label[(first.perms[i][s], second.perms[i][t])]
        perms.append(tuple(p))
    cover = SurfaceCover(first.genus, len(states), tuple(perms))
    to_first = CoverArrow(cover, first, tuple(s for s, _ in states))
    to_second = CoverArrow(cover, second, tuple(t for _, t in states))
    return FiberProduct(cover, to_first, to_second)


@dataclass(frozen=True)
class InducedCover:
    """Cover built from a word-table homomorphism on a stabilizer.

    Sheets are the discovered pairs (outer sheet, target sheet); the arrow
    projects to the outer cover.
    """

    cover: SurfaceCover
    states: tuple[tuple[int, int], ...]
    to_outer: CoverArrow


def induced_cover(outer: SurfaceCover, table, target: SurfaceCover) -> InducedCover:
    """Cover whose stabilizer is the table-preimage of target's stabilizer.

    table maps each Schreier edge index of outer to a base word; the induced
    action moves (t, s) along a generator by moving t in outer and moving s in
    target by the word of the traversed Schreier loop.  table must represent a
    homomorphism into the surface group (the relator must die), otherwise
    construction fails validation.
    """
    if outer.genus != target.genus:
        raise BaseMismatch("outer and target covers have different base surfaces")
    n = generator_count(outer.genus)
    tree, _ = tree_data(outer)
    index = {e: k for k, e in enumerate(nontree_edges(outer))}

    def forward(i: int, t: int, s: int) -> tuple[int, int]:
        edge = (i, t)
        t2 = outer.perms[i][t]
        if edge in tree:
            return t2, s
        return t2, target.act(table[index[edge]], s)

    def backward(i: int, t: int, s: int) -> tuple[int, int]:
        t2 = outer.inverse_perms[i][t]
        edge = (i, t2)
        if edge in tree:
            return t2, s
        return t2, target.act(inverse_word(table[index[edge]]), s)

    start = (0, 0)
    label = {start: 0}
    states = [start]
    head = 0
    while head < len(states):
        t, s = states[head]
        head += 1
        for i in range(n):
            for step in (forward(i, t, s), backward(i, t, s)):
                if step not in label:
                    label[step] = len(states)
                    states.append(step)
    perms = []
    for i in range(n):
        p = [0] * len(states)
        for k, (t, s) in enumerate(states):
            p[k] = label[forward(i, t, s)]
        perms.append(tuple(p))
    cover = SurfaceCover(outer.genus, len(states), tuple(perms))
    to_outer = CoverArrow(cover, outer, tuple(t for t, _ in states))
    return InducedCover(cover, tuple(states), to_outer)


# ---------------------------------------------------------------------------
# Composition of covers

@dataclass(frozen=True)
class ComposedCover:
    cover: SurfaceCover
    to_bottom: CoverArrow
    states: tuple[tuple[int, int], ...]


def compose_covers(top: SurfaceCover, bottom: SurfaceCover, ident) -> ComposedCover:
    """Compose a cover of the covering surface with a cover of the base.

    bottom covers the base; its covering surface has genus d*(g-1)+1, and top
    is a cover of that surface given in a standard marking.  ident supplies
    the identification: for every Schreier edge (generator index, sheet) of
    bottom, the word in the marking that spells that lift of the base
    generator.  Edge-path words must therefore compose; in particular the
    relator lift at each sheet must spell a trivially-acting word.
    """
    if bottom.genus < 2:
        raise GenusMismatch("bottom cover must have base genus at least 2")
    if top.genus != bottom.total_genus:
        raise GenusMismatch(
            f"top cover has base genus {top.genus}, "
            f"bottom covering surface has genus {bottom.total_genus}"
        )
    n = generator_count(bottom.genus)
    missing = [
        (i, s)
        for i in range(n)
        for s in range(bottom.degree)
        if (i, s) not in ident
    ]
    if missing:
        raise InvalidIdentification(f"identification missing edges {missing}")

    tree, _ = tree_data(bottom)
    # Accumulated identification word along the tree path into each sheet.
    path_word: list[Word | None] = [None] * bottom.degree
    path_word[0] = ()
    order = [0]
    head = 0
    while head < len(order):
        s = order[head]
        head += 1
        for i in range(n):
            t = bottom.perms[i][s]
            if (i, s) in tree and path_word[t] is None:
                path_word[t] = free_reduce(path_word[s] + tuple(ident[(i, s)]))
                order.append(t)
            u = bottom.inverse_perms[i][s]
            if (i, u) in tree and path_word[u] is None:
                path_word[u] = free_reduce(path_word[s] + inverse_word(ident[(i, u)]))
                order.append(u)

    def loop_word(i: int, s: int) -> Word:
        t = bottom.perms[i][s]
        return free_reduce(path_word[s] + tuple(ident[(i, s)]) + inverse_word(path_word[t]))

    _check_marking_surjective(top, bottom, loop_word)

    start = (0, 0)
    label = {start: 0}
    states = [start]
    head = 0
    while head < len(states):
        s, z = states[head]
        head += 1
        for i in range(n):
            fwd = (bottom.perms[i][s], top.act(loop_word(i, s), z))
            u = bottom.inverse_perms[i][s]
            bwd = (u, top.act(inverse_word(loop_word(i, u)), z))
            for step in (fwd, bwd):
                if step not in label:
                    label[step] = len(states)
                    states.append(step)
    expected = bottom.degree * top.degree
    if len(states) != expected:
        raise InvalidIdentification(
            f"composite has {len(states)} sheets, expected {expected}; "
            "identification words do not generate the covering surface group"
        )
    perms = []
    for i in range(n):
        p = [0] * len(states)
        for k, (s, z) in enumerate(states):
            p[k] = label[(bottom.perms[i][s], top.act(loop_word(i, s), z))]
        perms.append(tuple(p))
    try:
        cover = SurfaceCover(bottom.genus, len(states), tuple(perms))
    except RelatorNotTrivial as exc:
        raise InvalidIdentification(
            "identification words do not kill the lifted relator"
        ) from exc
    to_bottom = CoverArrow(cover, bottom, tuple(s for s, _ in states))
    return ComposedCover(cover, to_bottom, tuple(states))


def _check_marking_surjective(top: SurfaceCover, bottom: SurfaceCover, loop_word) -> None:
    """Necessary homology check on the identification words.

    The Schreier loops generate the covering surface group, so their
    identification words must generate its abelianization: the matrix of
    exponent vectors must have full column rank with unit elementary divisors.
    """
    from .exact_linalg import smith_normal_form
    from .surface import abelianized

    rows = [
        list(abelianized(loop_word(i, s), top.genus))
        for i in range(generator_count(bottom.genus))
        for s in range(bottom.degree)
    ]
    divisors, _, _ = smith_normal_form(rows)
    n = generator_count(top.genus)
    if len(divisors) != n or any(e != 1 for e in divisors):
        raise InvalidIdentification(
            "identification words do not span the covering surface homology"
        )
