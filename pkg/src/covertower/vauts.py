"""Virtual automorphisms as two-arrow diagrams of covers.

A virtual automorphism is an isomorphism between the stabilizers of two
covers with the same total surface.  It is stored as the two covers plus
the isomorphism in both directions, each direction given by one image word
per Schreier generator of the source stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .characteristic import SurfaceAutomorphism, mod2_homology_cover
from .covers import (
    SurfaceCover,
    factors_through,
    fiber_product,
    induced_cover,
    nontree_edges,
    rewrite_in_schreier,
    schreier_loop,
    trivial_cover,
)
from .errors import (
    BaseMismatch,
    DimensionMismatch,
    GenusMismatch,
    IncompatibleTower,
    InvalidAutomorphism,
    KindMismatch,
)
from .exact_linalg import solve_exact_many
from .homology import surface_complex, transfer_along_arrow
from .limits import LimitElement, homology_shadow, normalized_pairing
from .surface import Word, free_reduce, inverse_word

__all__ = [
    "TwoArrowVaut",
    "apply_edge_word_map",
    "vaut_act",
    "vaut_act_track",
    "vaut_compose",
    "vaut_inverse",
    "identity_vaut",
    "vaut_from_automorphism",
    "restrict_vaut",
    "is_mapping_class_like",
    "pairing_preserved",
    "certified_in_caut",
]


def apply_edge_word_map(cover: SurfaceCover, table, word) -> Word:
    """Push a stabilizer word through a Schreier-generator substitution.

    The word must stabilize the cover's basepoint; it is rewritten in the
    cover's Schreier generators and each generator is replaced by its table
    entry.
    """
    out: list[int] = []
    for symbol in rewrite_in_schreier(cover, word):
        piece = table[abs(symbol) - 1]
        if symbol < 0:
            piece = inverse_word(piece)
        out.extend(piece)
    return free_reduce(out)


def _loop_class_matrix(cover: SurfaceCover):
    """Rows: homology coordinates of each Schreier generator's loop."""
    cx = surface_complex(cover)
    return [
        list(cx.class_coordinates(cx.word_path_chain(schreier_loop(cover, e), 0)))
        for e in nontree_edges(cover)
    ]


def _image_class_matrix(cover: SurfaceCover, words):
    cx = surface_complex(cover)
    return [list(cx.class_coordinates(cx.word_path_chain(w, 0))) for w in words]


def _induced_matrix(a, f, columns: int):
    """Solve a @ x = f for every column at once; None when inconsistent."""
    x_cols = solve_exact_many(a, [[row[j] for row in f] for j in range(columns)])
    if any(col is None for col in x_cols):
        return None
    return [[x_cols[j][i] for j in range(columns)] for i in range(columns)]


@dataclass(frozen=True)
class TwoArrowVaut:
    """Two covers with identified total surfaces.

    fwd maps each Schreier generator of the left stabilizer to a word in
    the right stabilizer; bwd is the inverse direction.  Construction
    checks that the tables take values in the right subgroups and that the
    two induced maps on the homology of the total surface are inverse
    integer matrices.  That check is a strong necessary condition; word
    problems beyond it are out of scope.
    """

    left: SurfaceCover
    right: SurfaceCover
    fwd: tuple[Word, ...]
    bwd: tuple[Word, ...]

    def __post_init__(self) -> None:
        if self.left.genus != self.right.genus:
            raise BaseMismatch("arrows must cover the same base surface")
        if self.left.total_genus != self.right.total_genus:
            raise GenusMismatch("the two arrows have different total surfaces")
        fwd = tuple(free_reduce(w) for w in self.fwd)
        bwd = tuple(free_reduce(w) for w in self.bwd)
        object.__setattr__(self, "fwd", fwd)
        object.__setattr__(self, "bwd", bwd)
        if len(fwd) != len(nontree_edges(self.left)):
            raise DimensionMismatch("need one image per left Schreier generator")
        if len(bwd) != len(nontree_edges(self.right)):
            raise DimensionMismatch("need one image per right Schreier generator")
        for w in fwd:
            if not self.right.stabilizes_basepoint(w):
                raise InvalidAutomorphism(
                    "forward image does not lie in the right stabilizer"
                )
        for w in bwd:
            if not self.left.stabilizes_basepoint(w):
                raise InvalidAutomorphism(
                    "backward image does not lie in the left stabilizer"
                )
        t = 2 * self.left.total_genus
        x = _induced_matrix(
            _loop_class_matrix(self.left), _image_class_matrix(self.right, fwd), t
        )
        y = _induced_matrix(
            _loop_class_matrix(self.right), _image_class_matrix(self.left, bwd), t
        )
        if x is None or y is None:
            raise InvalidAutomorphism(
                "identification does not induce a linear map on homology"
            )
        for matrix in (x, y):
            for row in matrix:
                for entry in row:
                    if entry.denominator != 1:
                        raise InvalidAutomorphism(
                            "induced homology map is not integral"
                        )
        for a, b in ((x, y), (y, x)):
            for i in range(t):
                for j in range(t):
                    prod = sum(a[i][k] * b[k][j] for k in range(t))
                    if prod != (1 if i == j else 0):
                        raise InvalidAutomorphism(
                            "identification is not invertible on homology"
                        )

    @property
    def base_genus(self) -> int:
        return self.left.genus

    @property
    def total_genus(self) -> int:
        return self.left.total_genus

    def forward_word(self, word) -> Word:
        """Image of a left-stabilizer word under the identification."""
        return apply_edge_word_map(self.left, self.fwd, word)

    def backward_word(self, word) -> Word:
        return apply_edge_word_map(self.right, self.bwd, word)


def vaut_act(vaut: TwoArrowVaut, element: LimitElement) -> LimitElement:
    """Action on a cycle-kind tower element.

    The element is lifted to the fiber product with the left cover, its
    chain is decomposed over Schreier loops there, each loop is pushed
    through the identification, and the images are traced out on the cover
    induced through the right arrow.
    """
    if element.kind != "cycle":
        raise KindMismatch("vaut_act moves cycle elements; see vaut_act_track")
    if element.base_genus != vaut.base_genus:
        raise BaseMismatch("element and vaut live over different bases")
    w = fiber_product(element.cover, vaut.left)
    chain = transfer_along_arrow(w.to_first, element.payload)
    cx_w = surface_complex(w.cover)
    image = induced_cover(vaut.right, vaut.bwd, w.cover)
    cx_v = surface_complex(image.cover)
    out = [0] * cx_v.n_edges
    for edge in nontree_edges(w.cover):
        coeff = chain[cx_w.edge_index(*edge)]
        if coeff == 0:
            continue
        moved = vaut.forward_word(schreier_loop(w.cover, edge))
        piece = cx_v.word_path_chain(moved, 0)
        for k, value in enumerate(piece):
            out[k] += coeff * value
    return LimitElement("cycle", image.cover, tuple(out))


def vaut_act_track(vaut: TwoArrowVaut, element: LimitElement) -> LimitElement:
    """Action on a weighted-track element through its homology shadow.

    Integer weights give an integer cycle payload, so integrality is
    preserved on the nose.  Carrying the track structure itself across the
    identification is out of scope; only the shadow moves.
    """
    return vaut_act(vaut, homology_shadow(element))


def vaut_inverse(vaut: TwoArrowVaut) -> TwoArrowVaut:
    return TwoArrowVaut(vaut.right, vaut.left, vaut.bwd, vaut.fwd)


def vaut_compose(outer: TwoArrowVaut, inner: TwoArrowVaut) -> TwoArrowVaut:
    """Composite acting as inner first, then outer.

    The fiber product of outer's left cover with inner's right cover is a
    common total surface; both identifications transport its stabilizer,
    giving the two arrows of the composite.
    """
    if outer.base_genus != inner.base_genus:
        raise BaseMismatch("vauts live over different bases")
    mid = fiber_product(outer.left, inner.right)
    new_left = induced_cover(inner.left, inner.fwd, mid.cover)
    new_right = induced_cover(outer.right, outer.bwd, mid.cover)
    fwd = tuple(
        outer.forward_word(inner.forward_word(schreier_loop(new_left.cover, e)))
        for e in nontree_edges(new_left.cover)
    )
    bwd = tuple(
        inner.backward_word(outer.backward_word(schreier_loop(new_right.cover, e)))
        for e in nontree_edges(new_right.cover)
    )
    return TwoArrowVaut(new_left.cover, new_right.cover, fwd, bwd)


@lru_cache(maxsize=None)
def identity_vaut(genus: int) -> TwoArrowVaut:
    cover = trivial_cover(genus)
    table = tuple(schreier_loop(cover, e) for e in nontree_edges(cover))
    return TwoArrowVaut(cover, cover, table, table)


def vaut_from_automorphism(aut: SurfaceAutomorphism) -> TwoArrowVaut:
    """Mapping-class-like vaut with both arrows trivial."""
    cover = trivial_cover(aut.genus)
    loops = [schreier_loop(cover, e) for e in nontree_edges(cover)]
    fwd = tuple(aut.apply(w) for w in loops)
    bwd = tuple(aut.apply_inverse(w) for w in loops)
    return TwoArrowVaut(cover, cover, fwd, bwd)


def restrict_vaut(vaut: TwoArrowVaut, finer: SurfaceCover) -> TwoArrowVaut:
    """Representative of the same virtual automorphism over a finer left cover.

    The finer cover must factor through the current left cover; the new
    right cover is induced through the backward table.
    """
    if factors_through(finer, vaut.left) is None:
        raise IncompatibleTower("cover does not factor through the vaut's left arrow")
    new_right = induced_cover(vaut.right, vaut.bwd, finer)
    fwd = tuple(
        vaut.forward_word(schreier_loop(finer, e)) for e in nontree_edges(finer)
    )
    bwd = tuple(
        vaut.backward_word(schreier_loop(new_right.cover, e))
        for e in nontree_edges(new_right.cover)
    )
    return TwoArrowVaut(finer, new_right.cover, fwd, bwd)


def is_mapping_class_like(vaut: TwoArrowVaut) -> bool:
    """Whether this representative has pointed-equal arrows.

    Decided after canonical relabeling.  False only means not witnessed by
    this representative; a finer one may still exhibit it.
    """
    return vaut.left.canonical() == vaut.right.canonical()


def pairing_preserved(
    vaut: TwoArrowVaut, e1: LimitElement, e2: LimitElement
) -> bool:
    """Exact equality of normalized pairings before and after acting."""
    before = normalized_pairing(e1, e2)
    after = normalized_pairing(vaut_act(vaut, e1), vaut_act(vaut, e2))
    return before == after


def _restricts_to(vaut: TwoArrowVaut, characteristic: SurfaceCover) -> bool:
    refined = fiber_product(vaut.left, characteristic).cover
    restricted = restrict_vaut(vaut, refined)
    return factors_through(restricted.right, characteristic) is not None


def certified_in_caut(vaut: TwoArrowVaut, depth: int = 1) -> bool:
    """Depth-bounded certificate that the vaut descends to characteristic covers.

    Depth 0 checks the trivial cover, depth 1 adds the mod-2 homology
    cover.  True certifies a representative over each tested characteristic
    cover in both directions; False is inconclusive beyond the tested depth.
    """
    candidates = [trivial_cover(vaut.base_genus)]
    if depth >= 1:
        candidates.append(mod2_homology_cover(vaut.base_genus))
    for cover in candidates:
        if not _restricts_to(vaut, cover):
            return False
        if not _restricts_to(vaut_inverse(vaut), cover):
            return False
    return True
