"""Plain incidence structures and their line-oriented file format.

The format is `v b k` on the first line, then b lines of k ascending
0-based point ids.  It is both the export format for enumerated chain lists
and the import format for checking externally produced designs.
"""

from __future__ import annotations

from .errors import BadSpec


class Incidence:
    """A point count plus a list of uniform-size blocks (sorted id tuples)."""

    def __init__(self, v: int, blocks):
        blocks = [tuple(sorted(b)) for b in blocks]
        if not blocks:
            raise BadSpec("incidence structure needs at least one block")
        k = len(blocks[0])
        for b in blocks:
            if len(b) != k or len(set(b)) != k:
                raise BadSpec("blocks must have one uniform size, no repeats")
            if b[0] < 0 or b[-1] >= v:
                raise BadSpec(f"block {b} out of range for v={v}")
        self.v = v
        self.k = k
        self.blocks = blocks

    @property
    def b(self):
        return len(self.blocks)

    def masks(self):
        out = []
        for blk in self.blocks:
            m = 0
            for i in blk:
                m |= 1 << i
            out.append(m)
        return out

    def point_block_masks(self):
        """For each point, the bitmask of blocks containing it."""
        out = [0] * self.v
        for bi, blk in enumerate(self.blocks):
            for p in blk:
                out[p] |= 1 << bi
        return out

    def write(self, fp):
        fp.write(f"{self.v} {self.b} {self.k}\n")
        for blk in self.blocks:
            fp.write(" ".join(str(i) for i in blk) + "\n")

    @classmethod
    def read(cls, text: str) -> "Incidence":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise BadSpec("empty incidence file")
        try:
            v, b, k = (int(t) for t in lines[0].split())
        except ValueError:
            raise BadSpec(f"bad incidence header {lines[0]!r}") from None
        if len(lines) != b + 1:
            raise BadSpec(f"expected {b} block lines, got {len(lines) - 1}")
        blocks = []
        for ln in lines[1:]:
            try:
                ids = tuple(int(t) for t in ln.split())
            except ValueError:
                raise BadSpec(f"bad block line {ln!r}") from None
            if len(ids) != k or list(ids) != sorted(set(ids)):
                raise BadSpec(f"block {ln!r} must hold {k} ascending distinct ids")
            blocks.append(ids)
        return cls(v, blocks)
