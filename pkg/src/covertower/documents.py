"""JSON document formats for covers, cycles, tracks, vauts, and certificates.

All documents carry the schema tag "covertower/1".  Sheets, generators,
and branches are 1-based on the wire and 0-based in memory.  Serialized
output is deterministic: sorted keys, compact separators, one trailing
newline.  Rationals travel as "p/q" strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .covers import SurfaceCover, nontree_edges, schreier_loop, tree_data
from .errors import CovertowerError
from .homology import surface_complex
from .limits import LimitElement, cycle_element, track_element
from .surface import Word, free_reduce, inverse_word
from .traintrack import LiftedTrack, Switch, TrainTrack
from .vauts import TwoArrowVaut
from .characteristic import SurfaceAutomorphism

SCHEMA = "covertower/1"


class DocumentError(CovertowerError):
    """Malformed or mistyped input document."""


def dumps_canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _expect(doc, doc_type: str) -> None:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise DocumentError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("type") != doc_type:
        raise DocumentError(f"expected a {doc_type!r} document, got {doc.get('type')!r}")


def _word_out(word) -> list[int]:
    return [int(x) for x in word]


def _word_in(data) -> Word:
    try:
        word = tuple(int(x) for x in data)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"bad word {data!r}") from exc
    if any(x == 0 for x in word):
        raise DocumentError("word letters are nonzero signed integers")
    return word


def rational_str(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {text!r}") from exc


# -- covers

def cover_document(cover: SurfaceCover) -> dict:
    return {
        "schema": SCHEMA,
        "type": "cover",
        "genus": cover.genus,
        "degree": cover.degree,
        "perms": [[s + 1 for s in p] for p in cover.perms],
    }


def parse_cover(doc) -> SurfaceCover:
    _expect(doc, "cover")
    try:
        genus = int(doc["genus"])
        degree = int(doc["degree"])
        perms = tuple(tuple(int(s) - 1 for s in p) for p in doc["perms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad cover document: {exc}") from exc
    return SurfaceCover(genus, degree, perms)


# -- cycle elements

def cycle_document(element: LimitElement) -> dict:
    if element.kind != "cycle":
        raise DocumentError("cycle document needs a cycle-kind element")
    cx = surface_complex(element.cover)
    edges = []
    for e, coeff in enumerate(element.payload):
        if coeff:
            i, s = cx.edge_of_index(e)
            edges.append([i + 1, s + 1, int(coeff)])
    return {
        "schema": SCHEMA,
        "type": "cycle",
        "cover": cover_document(element.cover),
        "edges": edges,
    }


def parse_cycle(doc) -> LimitElement:
    _expect(doc, "cycle")
    cover = parse_cover(doc.get("cover"))
    cx = surface_complex(cover)
    chain = cx.zero_chain()
    try:
        for i, s, coeff in doc["edges"]:
            chain[cx.edge_index(int(i) - 1, int(s) - 1)] += int(coeff)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise DocumentError(f"bad cycle document: {exc}") from exc
    return cycle_element(cover, chain)


# -- train tracks

def track_document(track: TrainTrack) -> dict:
    return {
        "schema": SCHEMA,
        "type": "track",
        "genus": track.genus,
        "branch_words": [_word_out(w) for w in track.branch_words],
        "switches": [
            {
                "side_a": [[b + 1, end] for b, end in sw.side_a],
                "side_b": [[b + 1, end] for b, end in sw.side_b],
            }
            for sw in track.switches
        ],
    }


def parse_track(doc) -> TrainTrack:
    _expect(doc, "track")
    try:
        genus = int(doc["genus"])
        words = tuple(_word_in(w) for w in doc["branch_words"])
        switches = tuple(
            Switch(
                tuple((int(b) - 1, int(end)) for b, end in sw["side_a"]),
                tuple((int(b) - 1, int(end)) for b, end in sw["side_b"]),
            )
            for sw in doc["switches"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad track document: {exc}") from exc
    return TrainTrack(genus, switches, words)


def lifted_track_document(lifted: LiftedTrack, matrix) -> dict:
    return {
        "schema": SCHEMA,
        "type": "lifted-track",
        "base": track_document(lifted.base),
        "cover": cover_document(lifted.cover),
        "branches": [[b + 1, s + 1] for b, s in lifted.branches],
        "matrix": [list(row) for row in matrix.matrix],
        "chart_dimension": lifted.chart_dimension(),
    }


# -- weighted track elements

def track_element_document(element: LimitElement) -> dict:
    if element.kind != "track":
        raise DocumentError("track-element document needs a track-kind element")
    track, weights = element.payload
    return {
        "schema": SCHEMA,
        "type": "track-element",
        "cover": cover_document(element.cover),
        "track": track_document(track),
        "weights": [rational_str(w) for w in weights],
    }


def parse_track_element(doc) -> LimitElement:
    _expect(doc, "track-element")
    cover = parse_cover(doc.get("cover"))
    track = parse_track(doc.get("track"))
    try:
        weights = tuple(parse_rational(w) for w in doc["weights"])
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"bad track-element document: {exc}") from exc
    return track_element(track, cover, weights)


def parse_element(doc) -> LimitElement:
    """Cycle or track element, dispatched on the type field."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    kind = doc.get("type")
    if kind == "cycle":
        return parse_cycle(doc)
    if kind == "track-element":
        return parse_track_element(doc)
    raise DocumentError(f"not a limit element document: {kind!r}")


def element_document(element: LimitElement) -> dict:
    return (
        cycle_document(element)
        if element.kind == "cycle"
        else track_element_document(element)
    )


# -- vauts

def vaut_document(vaut: TwoArrowVaut) -> dict:
    return {
        "schema": SCHEMA,
        "type": "vaut",
        "base_genus": vaut.base_genus,
        "left": cover_document(vaut.left),
        "right": cover_document(vaut.right),
        "identification": {
            "fwd": [_word_out(w) for w in vaut.fwd],
            "bwd": [_word_out(w) for w in vaut.bwd],
        },
    }


def _tables_from_sheet_map(left: SurfaceCover, right: SurfaceCover, sheet_map):
    """Word tables for a cellular identification given as a sheet bijection.

    The list sends left sheet s to right sheet sheet_map[s] and must be
    equivariant for the two actions; the induced subgroup isomorphism is
    conjugation by the right tree word reaching sheet_map[0].
    """
    if sorted(sheet_map) != list(range(left.degree)):
        raise DocumentError("identification list is not a sheet bijection")
    for i in range(len(left.perms)):
        for s in range(left.degree):
            if right.perms[i][sheet_map[s]] != sheet_map[left.perms[i][s]]:
                raise DocumentError(
                    "identification list does not commute with the actions"
                )
    _, sheet_words = tree_data(right)
    conj = sheet_words[sheet_map[0]]
    conj_inv = inverse_word(conj)
    fwd = tuple(
        free_reduce(conj + schreier_loop(left, e) + conj_inv)
        for e in nontree_edges(left)
    )
    bwd = tuple(
        free_reduce(conj_inv + schreier_loop(right, e) + conj)
        for e in nontree_edges(right)
    )
    return fwd, bwd


def parse_vaut(doc) -> TwoArrowVaut:
    _expect(doc, "vaut")
    left = parse_cover(doc.get("left"))
    right = parse_cover(doc.get("right"))
    ident = doc.get("identification")
    if isinstance(ident, dict):
        try:
            fwd = tuple(_word_in(w) for w in ident["fwd"])
            bwd = tuple(_word_in(w) for w in ident["bwd"])
        except (KeyError, TypeError) as exc:
            raise DocumentError(f"bad identification tables: {exc}") from exc
    elif isinstance(ident, list):
        try:
            sheet_map = [int(t) - 1 for t in ident]
        except (TypeError, ValueError) as exc:
            raise DocumentError("identification list must hold sheet numbers") from exc
        fwd, bwd = _tables_from_sheet_map(left, right, sheet_map)
    else:
        raise DocumentError("identification must be word tables or a sheet map")
    vaut = TwoArrowVaut(left, right, fwd, bwd)
    if "base_genus" in doc and int(doc["base_genus"]) != vaut.base_genus:
        raise DocumentError("base_genus disagrees with the covers")
    return vaut


# -- automorphism lists

def automorphisms_document(automorphisms) -> dict:
    return {
        "schema": SCHEMA,
        "type": "automorphisms",
        "genus": automorphisms[0].genus,
        "items": [
            {
                "name": aut.name,
                "images": [_word_out(w) for w in aut.images],
                "inverse_images": [_word_out(w) for w in aut.inverse_images],
            }
            for aut in automorphisms
        ],
    }


def parse_automorphisms(doc) -> tuple[SurfaceAutomorphism, ...]:
    _expect(doc, "automorphisms")
    try:
        genus = int(doc["genus"])
        items = doc["items"]
        return tuple(
            SurfaceAutomorphism(
                genus,
                tuple(_word_in(w) for w in item["images"]),
                tuple(_word_in(w) for w in item["inverse_images"]),
                str(item.get("name", "")),
            )
            for item in items
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad automorphisms document: {exc}") from exc


# -- counterexamples

def counterexample_document(suite: str, data: dict) -> dict:
    return {
        "schema": SCHEMA,
        "type": "counterexample",
        "suite": suite,
        "data": data,
    }


def parse_counterexample(doc) -> tuple[str, dict]:
    _expect(doc, "counterexample")
    suite = doc.get("suite")
    data = doc.get("data")
    if not isinstance(suite, str) or not isinstance(data, dict):
        raise DocumentError("counterexample document needs suite and data fields")
    return suite, data
