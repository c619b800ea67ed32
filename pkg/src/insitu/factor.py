"""Compile arbitrary mappings by factoring through a collapse step.

Every mapping e factors as post o collapse o pre, where `pre` is a
bijection packing each preimage class of e into a run of consecutive
indices, `collapse` sends the t-th run onto the single index t, and
`post` is a bijection placing the collapsed points on the actual images.
The outer bijections compile to 2n - 1 steps each; `collapse` never
moves an index by more than one per input step, which lets a single
ascending sweep of assignments (signature 1, 2, ..., n) compute it.

Compilers built on this factorization:
  compile_general5        length <= 5n - 4, signature 1..n..1..n..1..n
  compile_general4_sorted length <= 4n - 3, signature 1..n..1..n..1
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from . import benes
from .core import (
    Alphabet,
    Assignment,
    InSituError,
    InSituProgram,
    Mapping,
    concat,
    merge_adjacent,
)


class NotDistanceCompatible(InSituError):
    """Consecutive inputs must have images at index distance at most 1."""


class NotOrderPreserving(InSituError):
    """The restricted mapping must be strictly increasing."""


class InvalidOrdering(InSituError):
    """The class ordering must list every distinct image exactly once."""


class SizesDoNotSum(InSituError):
    """Run sizes must add up to the size of the index space."""


def collapse_mapping(sizes: Sequence[int], alphabet: Alphabet) -> Mapping:
    """Mapping sending the t-th run of consecutive indices onto index t.

    sizes[t] is the length of run t; runs of size zero are allowed and
    simply skip an image.
    """
    total = sum(sizes)
    if total != alphabet.size:
        raise SizesDoNotSum(f"sizes sum to {total}, index space has {alphabet.size}")
    images: list[int] = []
    for t, v in enumerate(sizes):
        if v < 0:
            raise SizesDoNotSum(f"negative run size {v}")
        if v and t >= alphabet.size:
            raise ValueError(f"run {t} is outside the index space")
        images.extend([t] * v)
    return Mapping(alphabet, tuple(images))


def is_distance_compatible(mapping: Mapping) -> bool:
    """True iff images of consecutive indices differ by at most 1."""
    imgs = mapping.images
    return all(abs(imgs[x + 1] - imgs[x]) <= 1 for x in range(len(imgs) - 1))


def forward_program(mapping: Mapping) -> InSituProgram:
    """Ascending sweep (signature 1, 2, ..., n) computing a
    distance-compatible mapping.

    Component i is assigned its final value while the later components
    still hold their input values; distance compatibility guarantees the
    required partial tables never conflict.  Entries not constrained by
    any input are filled with the identity.
    """
    if not is_distance_compatible(mapping):
        raise NotDistanceCompatible("images of neighbours differ by more than 1")
    return _sweep_program(mapping.alphabet, mapping.images)


def _sweep_program(alphabet: Alphabet, targets: Sequence[int]) -> InSituProgram:
    s = alphabet.s
    n = alphabet.n
    size = alphabet.size
    pows = alphabet.powers()
    tables = [[v // pw % s for v in range(size)] for pw in pows]
    written = [bytearray(size) for _ in range(n)]
    for x in range(size):
        y = targets[x]
        cur = x
        for j in range(n):
            pw = pows[j]
            yd = y // pw % s
            if written[j][cur]:
                if tables[j][cur] != yd:
                    raise InSituError("conflicting table entries; precondition violated")
            else:
                written[j][cur] = 1
                tables[j][cur] = yd
            cur += (yd - cur // pw % s) * pw
    steps = tuple(Assignment(j + 1, table=tuple(tab)) for j, tab in enumerate(tables))
    return InSituProgram(alphabet, steps)


def backward_restricted_program(mapping: Mapping, lo: int, hi: int) -> InSituProgram:
    """Descending sweep (signature n, ..., 2, 1) computing `mapping` on the
    index range [lo, hi], on which it must be strictly increasing.

    Outside the range the program's behavior is unspecified (tables are
    completed with the identity).  Built by inverting, step by step, the
    ascending sweep of a distance-compatible completion of the inverse.
    """
    a = mapping.alphabet
    size = a.size
    if not 0 <= lo <= hi < size:
        raise ValueError(f"bad range [{lo}, {hi}] for index space of size {size}")
    ms = [mapping.images[j] for j in range(lo, hi + 1)]
    for prev, cur in zip(ms, ms[1:]):
        if cur <= prev:
            raise NotOrderPreserving("images must be strictly increasing on the range")

    # staircase completion of the inverse: constant before the first image,
    # stepping up by at most one at each image, hence distance-compatible
    completion = [lo + max(bisect_right(ms, t) - 1, 0) for t in range(size)]
    sweep = forward_program(Mapping(a, tuple(completion)))

    s = a.s
    n = a.n
    pows = a.powers()
    tables = [[v // pw % s for v in range(size)] for pw in pows]
    written = [bytearray(size) for _ in range(n)]
    for j0, start in enumerate(ms):
        cur = start
        for j in range(n):
            pw = pows[j]
            old = cur // pw % s
            new = sweep.assignments[j].table[cur]
            nxt = cur + (new - old) * pw
            if written[j][nxt]:
                if tables[j][nxt] != old:
                    raise InSituError("conflicting table entries; precondition violated")
            else:
                written[j][nxt] = 1
                tables[j][nxt] = old
            cur = nxt
        if cur != lo + j0:
            raise InSituError("completion sweep did not land on the expected index")
    steps = tuple(Assignment(j + 1, table=tuple(tables[j])) for j in range(n - 1, -1, -1))
    return InSituProgram(a, steps)


@dataclass(frozen=True)
class ClassFactorisation:
    """e = post o collapse o pre with bijective pre and post.

    `slots` records which image each run was assigned to (None for runs
    of size zero).
    """

    pre: Mapping
    collapse: Mapping
    post: Mapping
    slots: tuple[int | None, ...]


def preimage_classes(e: Mapping) -> dict[int, list[int]]:
    """Image -> ascending list of its preimages, keyed in ascending order."""
    classes: dict[int, list[int]] = {}
    for x, y in enumerate(e.images):
        classes.setdefault(y, []).append(x)
    return {y: classes[y] for y in sorted(classes)}


def factor_by_classes(e: Mapping, slots: Sequence[int | None] | None = None) -> ClassFactorisation:
    """Factor e as post o collapse o pre.

    `slots` fixes the order in which the preimage classes are packed;
    entry t names the image whose class occupies run t, or None for an
    empty run.  Default: distinct images in ascending order, no empty runs.
    """
    a = e.alphabet
    classes = preimage_classes(e)
    if slots is None:
        slots = tuple(sorted(classes))
    else:
        slots = tuple(slots)
        named = [y for y in slots if y is not None]
        if sorted(named) != sorted(classes):
            raise InvalidOrdering("slots must name every distinct image exactly once")
        if len(slots) > a.size:
            raise InvalidOrdering(f"{len(slots)} runs do not fit an index space of {a.size}")

    sizes = [len(classes[y]) if y is not None else 0 for y in slots]
    pre_images = [0] * a.size
    offset = 0
    for y, v in zip(slots, sizes):
        if y is not None:
            for rank, x in enumerate(classes[y]):
                pre_images[x] = offset + rank
        offset += v

    collapse = collapse_mapping(sizes, a)

    post_images: list[int | None] = [None] * a.size
    for t, y in enumerate(slots):
        if y is not None:
            post_images[t] = y
    spare = iter(sorted(set(range(a.size)) - set(classes)))
    filled = tuple(y if y is not None else next(spare) for y in post_images)
    return ClassFactorisation(Mapping(a, tuple(pre_images)), collapse, Mapping(a, filled), slots)


def compile_general5(e: Mapping, slots: Sequence[int | None] | None = None) -> InSituProgram:
    """Any mapping in at most 5n - 4 steps, signature 1..n..1..n..1..n.

    The classes may be packed in any order (`slots`, no empty runs); the
    final bijection is compiled with the mirrored signature n..1..n so the
    three legs fuse at both junctions.
    """
    fac = factor_by_classes(e, slots)
    if any(y is None for y in fac.slots):
        raise InvalidOrdering("empty runs are not allowed here")
    g = benes.route_bijection(fac.pre)
    i = forward_program(fac.collapse)
    f = benes.route_bijection_reversed(fac.post)
    return merge_adjacent(concat(g, i, f))


def compile_general4_sorted(e: Mapping) -> InSituProgram:
    """Any mapping in at most 4n - 3 steps, signature 1..n..1..n..1.

    Classes are packed in ascending image order, so after the collapse the
    remaining work is a strictly increasing placement on the first k+1
    indices, which a single descending sweep finishes.
    """
    fac = factor_by_classes(e)
    g = benes.route_bijection(fac.pre)
    i = forward_program(fac.collapse)
    k = len(fac.slots) - 1
    f = backward_restricted_program(fac.post, 0, k)
    return merge_adjacent(concat(g, i, f))
