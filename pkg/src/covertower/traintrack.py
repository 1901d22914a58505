"""Train tracks with switch-condition cones, lifting, and carrying matrices.

A track is combinatorial: switches with two ordered sides of half-branch
slots, branches joining half-branches, and per-branch embedding words in the
one-vertex skeleton of the base surface.  Weights are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .covers import SurfaceCover, CoverArrow
from .errors import (
    BaseMismatch,
    ConeViolation,
    DimensionMismatch,
    NegativeWeight,
    NonIntegerWeights,
    SwitchViolation,
)
from .exact_linalg import extreme_rays, mat_mul, mat_vec, rational_rank
from .surface import Word, abelianized


HalfBranch = tuple[int, int]  # (branch index, end 0 or 1)


@dataclass(frozen=True)
class Switch:
    side_a: tuple[HalfBranch, ...]
    side_b: tuple[HalfBranch, ...]


@dataclass(frozen=True)
class TrainTrack:
    genus: int
    switches: tuple[Switch, ...]
    branch_words: tuple[Word, ...]
    # branch_ends[b] = (switch of end 0, switch of end 1), derived in __post_init__

    def __post_init__(self) -> None:
        seen: dict[HalfBranch, int] = {}
        for k, sw in enumerate(self.switches):
            for half in sw.side_a + sw.side_b:
                if half in seen:
                    raise DimensionMismatch(f"half-branch {half} used twice")
                seen[half] = k
        expected = {(b, end) for b in range(len(self.branch_words)) for end in (0, 1)}
        if set(seen) != expected:
            raise DimensionMismatch("half-branches do not match the branch list")
        object.__setattr__(
            self,
            "branch_ends",
            tuple(
                (seen[(b, 0)], seen[(b, 1)]) for b in range(len(self.branch_words))
            ),
        )

    @property
    def n_branches(self) -> int:
        return len(self.branch_words)

    def switch_matrix(self):
        rows = []
        for sw in self.switches:
            row = [0] * self.n_branches
            for b, _ in sw.side_a:
                row[b] += 1
            for b, _ in sw.side_b:
                row[b] -= 1
            rows.append(row)
        return rows

    def validate_weights(self, weights) -> None:
        if len(weights) != self.n_branches:
            raise DimensionMismatch(
                f"expected {self.n_branches} weights, got {len(weights)}"
            )
        weights = [Fraction(w) for w in weights]
        for b, w in enumerate(weights):
            if w < 0:
                raise NegativeWeight(f"branch {b} has negative weight {w}")
        for k, row in enumerate(self.switch_matrix()):
            total = sum(r * w for r, w in zip(row, weights))
            if total != 0:
                raise SwitchViolation(f"switch {k} unbalanced by {total}")

    def chart_dimension(self) -> int:
        return self.n_branches - rational_rank(self.switch_matrix())

    def cone_rays(self, budget: int = 200_000):
        return extreme_rays(self.switch_matrix(), self.n_branches, budget)

    def homology_class(self, weights):
        """Weighted sum of branch word classes; weights must be integers."""
        out = [0] * (2 * self.genus)
        for b, w in enumerate(weights):
            w = Fraction(w)
            if w.denominator != 1:
                raise NonIntegerWeights(f"branch {b} weight {w} is not an integer")
            vec = abelianized(self.branch_words[b], self.genus)
            out = [x + int(w) * y for x, y in zip(out, vec)]
        return tuple(out)


def three_branch_example() -> TrainTrack:
    """Two switches, three branches, both conditions w0 = w1 + w2.

    Branch 0 and 1 run along the first handle loop, branch 2 is trivial in
    the skeleton; the chart cone is two dimensional.
    """
    s0 = Switch(side_a=((0, 0),), side_b=((1, 0), (2, 0)))
    s1 = Switch(side_a=((0, 1),), side_b=((1, 1), (2, 1)))
    return TrainTrack(
        genus=2,
        switches=(s0, s1),
        branch_words=((1,), (1,), ()),
    )


@dataclass(frozen=True)
class LiftedTrack:
    """Full preimage of a track in a cover.

    Lifted branches are pairs (base branch, starting sheet); the lift of
    branch b starting at sheet s ends at the sheet its word sends s to.
    Lifted switches are pairs (base switch, sheet).
    """

    base: TrainTrack
    cover: SurfaceCover

    @property
    def branches(self) -> tuple[tuple[int, int], ...]:
        d = self.cover.degree
        return tuple((b, s) for b in range(self.base.n_branches) for s in range(d))

    @property
    def switches(self) -> tuple[tuple[int, int], ...]:
        d = self.cover.degree
        return tuple((k, s) for k in range(len(self.base.switches)) for s in range(d))

    def branch_index(self, b: int, s: int) -> int:
        return b * self.cover.degree + s

    def branch_endpoints(self, b: int, s: int):
        """Lifted switches at the two ends of lifted branch (b, s)."""
        sw0, sw1 = self.base.branch_ends[b]
        return (sw0, s), (sw1, self.cover.act(self.base.branch_words[b], s))

    def lifted_switch_sides(self, k: int, s: int):
        """Half-branches of the lifted switch (k, s), both sides.

        A base half-branch (b, 0) at the switch lifts to ((b, s), 0); a base
        half-branch (b, 1) lifts to ((b, t), 1) where the branch word maps t
        to s (the lift that arrives at sheet s).
        """
        def lift_half(half: HalfBranch):
            b, end = half
            if end == 0:
                return (self.branch_index(b, s), 0)
            word = self.base.branch_words[b]
            t = s
            for letter in reversed(word):
                t = self.cover.act_letter(-letter, t)
            return (self.branch_index(b, t), 1)

        sw = self.base.switches[k]
        return (
            tuple(lift_half(h) for h in sw.side_a),
            tuple(lift_half(h) for h in sw.side_b),
        )

    def as_track(self) -> TrainTrack:
        """The lifted track as a plain TrainTrack.

        Branch words are kept as base words for homology bookkeeping at the
        base; positional structure (which sheet) lives in the branch order.
        """
        switches = tuple(
            Switch(*self.lifted_switch_sides(k, s)) for (k, s) in self.switches
        )
        words = tuple(self.base.branch_words[b] for (b, _) in self.branches)
        return TrainTrack(genus=self.base.genus, switches=switches, branch_words=words)

    def switch_matrix(self):
        return self.as_track().switch_matrix()

    def validate_weights(self, weights) -> None:
        self.as_track().validate_weights(weights)

    def chart_dimension(self) -> int:
        return self.as_track().chart_dimension()

    def cycle_chain(self, weights):
        """Integer-weighted lifted branches as an edge chain on the cover."""
        from .homology import surface_complex

        cplx = surface_complex(self.cover)
        chain = cplx.zero_chain()
        for (b, s), w in zip(self.branches, weights):
            w = Fraction(w)
            if w.denominator != 1:
                raise NonIntegerWeights(f"lifted branch ({b},{s}) weight {w}")
            if w:
                path = cplx.word_path_chain(self.base.branch_words[b], s)
                for e, val in enumerate(path):
                    chain[e] += int(w) * val
        return chain


@dataclass(frozen=True)
class CarryingMatrix:
    """Nonnegative integer matrix mapping one weight cone into another.

    Rows are indexed by target branches, columns by source branches; weights
    map by matrix-vector product.
    """

    source_matrix: tuple[tuple[int, ...], ...]  # source switch matrix
    target_matrix: tuple[tuple[int, ...], ...]  # target switch matrix
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n_src = len(self.source_matrix[0]) if self.source_matrix else (
            len(self.matrix[0]) if self.matrix else 0
        )
        n_tgt = len(self.target_matrix[0]) if self.target_matrix else len(self.matrix)
        if len(self.matrix) != n_tgt or any(len(row) != n_src for row in self.matrix):
            raise DimensionMismatch("carrying matrix shape does not match the tracks")
        for row in self.matrix:
            for x in row:
                if x != int(x):
                    raise NonIntegerWeights("carrying matrix entries must be integers")
                if x < 0:
                    raise ConeViolation("carrying matrix entries must be nonnegative")
        self._check_cone()

    def _check_cone(self) -> None:
        n_src = len(self.matrix[0]) if self.matrix else 0
        rays = extreme_rays([list(r) for r in self.source_matrix], n_src)
        for ray in rays:
            image = mat_vec([list(r) for r in self.matrix], ray)
            for k, row in enumerate(self.target_matrix):
                if sum(r * x for r, x in zip(row, image)) != 0:
                    raise ConeViolation(
                        f"extreme ray {ray} maps outside the target cone at switch {k}"
                    )

    def apply(self, weights):
        return mat_vec([list(r) for r in self.matrix], list(weights))


def _freeze(mat):
    return tuple(tuple(int(x) for x in row) for row in mat)


def lift_track(track: TrainTrack, cover: SurfaceCover):
    """Lift a track through a cover; returns the lift and its 0/1 matrix.

    The matrix maps base weights to lifted weights: every lifted copy of a
    branch inherits the base weight, so each column has exactly degree-many
    ones.
    """
    if not isinstance(cover, SurfaceCover):
        raise BaseMismatch("cover expected")
    if track.genus != cover.genus:
        raise BaseMismatch("track and cover have different base surfaces")
    lifted = LiftedTrack(base=track, cover=cover)
    rows = []
    for (b, _) in lifted.branches:
        row = [0] * track.n_branches
        row[b] = 1
        rows.append(row)
    matrix = CarryingMatrix(
        source_matrix=_freeze(track.switch_matrix()),
        target_matrix=_freeze(lifted.switch_matrix()),
        matrix=_freeze(rows),
    )
    return lifted, matrix


def arrow_step_matrix(lifted: LiftedTrack, arrow: CoverArrow) -> CarryingMatrix:
    """Matrix refining a lift along an arrow of covers.

    For an arrow from a finer cover to the lifted track's cover, each branch
    lifted to the finer cover lies over the branch at the image sheet.
    """
    if arrow.target != lifted.cover:
        raise BaseMismatch("arrow target is not the lifted track's cover")
    finer = LiftedTrack(base=lifted.base, cover=arrow.source)
    rows = []
    for (b, s) in finer.branches:
        row = [0] * len(lifted.branches)
        row[lifted.branch_index(b, arrow.sheet_map[s])] = 1
        rows.append(row)
    return CarryingMatrix(
        source_matrix=_freeze(lifted.switch_matrix()),
        target_matrix=_freeze(finer.switch_matrix()),
        matrix=_freeze(rows),
    )


def carrying_compose(first: CarryingMatrix, second: CarryingMatrix) -> CarryingMatrix:
    """Apply first, then second; revalidates the cone invariant."""
    if len(second.matrix[0]) != len(first.matrix):
        raise DimensionMismatch("carrying matrices do not compose")
    if second.source_matrix != first.target_matrix:
        raise DimensionMismatch("second matrix's source track is not first's target")
    product = mat_mul([list(r) for r in second.matrix], [list(r) for r in first.matrix])
    return CarryingMatrix(
        source_matrix=first.source_matrix,
        target_matrix=second.target_matrix,
        matrix=_freeze(product),
    )


def identity_carrying(track: TrainTrack) -> CarryingMatrix:
    n = track.n_branches
    sm = _freeze(track.switch_matrix())
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return CarryingMatrix(source_matrix=sm, target_matrix=sm, matrix=eye)
