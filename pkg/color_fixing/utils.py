# color_fixing/utils.py
import logging
import time
from contextlib import contextmanager
from typing import Iterator, List, Optional, Tuple

from .errors import MalformedInputError
from .models import ColorLists, Coloring

logger = logging.getLogger(__name__)


def mask_of(vertices) -> int:
    """Bitmask with bit v-1 set for every vertex v."""
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask: int) -> List[int]:
    """Vertices (1-based) of a bitmask, increasing."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of mask, from mask itself down to 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def allowed_colors(v: int, r: int, lists: Optional[ColorLists] = None) -> Tuple[int, ...]:
    """Colours available to v: its list cut to the palette, or the whole palette."""
    if lists is None:
        return tuple(range(1, r + 1))
    return tuple(c for c in sorted(lists.allowed(v)) if c <= r)


def resolve_palette(phi: Coloring, r: Optional[int] = None) -> Coloring:
    """phi re-read over palette [r]; r defaults to phi's own palette."""
    if r is None or r == phi.r:
        return phi
    if r < 1:
        raise MalformedInputError(f"palette size must be at least 1, got {r}")
    return phi.with_palette(r)


@contextmanager
def timed(label: str):
    """Log the wall time spent inside the block at INFO."""
    start = time.perf_counter()
    clock = {"seconds": 0.0}
    try:
        yield clock
    finally:
        clock["seconds"] = time.perf_counter() - start
        logger.info("%s took %.3fs", label, clock["seconds"])
