"""Set families over an atom universe with one homogeneous block.

A family lives over m labelled atoms (1..m) plus one designated block H,
standing for "all remaining ground elements" (at least two of them).  Every
member either avoids H entirely (a "small" member) or contains all of H
(a "large" member), so a member is just a bitmask over the atoms plus one
flag.  Containment, chains, antichains and layer peeling computed on this
representation agree with the concrete ground-set poset for every
realization of H, which keeps all structural checks independent of the
ambient ground-set size n.

Canonical member order is (has_H, atom count, atom mask); proper
containment is strictly monotone in this key, so sorting doubles as a
topological order of the containment DAG.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_ATOMS = 62


class FamilyFormatError(ValueError):
    """Malformed family text; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Member:
    """One set: the atoms it contains, and whether it contains the block H."""

    atom_mask: int
    has_H: bool

    @property
    def atom_count(self) -> int:
        return self.atom_mask.bit_count()

    @property
    def is_small(self) -> bool:
        return not self.has_H

    @property
    def is_large(self) -> bool:
        return self.has_H

    def cosize(self, m: int) -> int:
        """Atoms missing from the member; for a large member this equals
        n - |S| on every realization of H."""
        return m - self.atom_count

    def atoms(self) -> tuple[int, ...]:
        return atoms_of_mask(self.atom_mask)

    def issubset(self, other: "Member") -> bool:
        return (self.atom_mask & ~other.atom_mask) == 0 and (other.has_H or not self.has_H)

    def is_proper_subset(self, other: "Member") -> bool:
        return self != other and self.issubset(other)

    def key(self) -> tuple[bool, int, int]:
        return (self.has_H, self.atom_count, self.atom_mask)

    def __str__(self) -> str:
        if self.atom_mask == 0 and not self.has_H:
            return "empty"
        parts = [str(a) for a in self.atoms()]
        if self.has_H:
            parts.append("H")
        return " ".join(parts)


def atoms_of_mask(mask: int) -> tuple[int, ...]:
    """1-based atom indices of a bitmask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def mask_of_atoms(atoms) -> int:
    mask = 0
    for a in atoms:
        mask |= 1 << (a - 1)
    return mask


@dataclass(frozen=True)
class Family:
    """A duplicate-free set of members over a fixed atom universe.

    Members are stored in canonical order, so two equal families compare
    and hash identically regardless of construction order.
    """

    m: int
    members: tuple[Member, ...]

    def __post_init__(self):
        if not 0 <= self.m <= MAX_ATOMS:
            raise ValueError(f"universe size must be in [0, {MAX_ATOMS}], got {self.m}")
        ordered = tuple(sorted(self.members, key=Member.key))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate member")
        top = 1 << self.m
        for mem in ordered:
            if not 0 <= mem.atom_mask < top:
                raise ValueError(f"member {mem} uses atoms outside universe of size {self.m}")
        object.__setattr__(self, "members", ordered)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def smalls(self) -> tuple[Member, ...]:
        return tuple(mem for mem in self.members if mem.is_small)

    def larges(self) -> tuple[Member, ...]:
        return tuple(mem for mem in self.members if mem.is_large)

    def without(self, member: Member) -> "Family":
        if member not in self.members:
            raise ValueError(f"{member} is not a member")
        return Family(self.m, tuple(mem for mem in self.members if mem != member))


@dataclass(frozen=True)
class LayerDecomposition:
    """Antichain layers obtained by iteratively peeling minimal members."""

    layers: tuple[Family, ...]
    source: Family

    @property
    def layer_count(self) -> int:
        return len(self.layers)


def complement_member(x: Member, m: int) -> Member:
    """Complement within the ground set: flip every atom and the H flag."""
    if x.atom_mask >> m:
        raise ValueError("member uses atoms outside the universe")
    return Member(((1 << m) - 1) ^ x.atom_mask, not x.has_H)


def complement_family(f: Family) -> Family:
    return Family(f.m, tuple(complement_member(mem, f.m) for mem in f.members))


def strict_containment_matrix(members) -> np.ndarray:
    """Boolean matrix with [i, j] true iff members[i] is a proper subset of
    members[j].  Members must be duplicate-free."""
    count = len(members)
    masks = np.array([mem.atom_mask for mem in members], dtype=np.uint64)
    flags = np.array([mem.has_H for mem in members], dtype=bool)
    masks = masks.reshape(count)
    sub = (masks[:, None] & ~masks[None, :]) == 0
    sub &= flags[None, :] | ~flags[:, None]
    if count:
        np.fill_diagonal(sub, False)
    return sub


def is_antichain(f: Family) -> bool:
    """No member properly contains another."""
    mems = f.members
    # canonical order: containment can only point forward
    for i, a in enumerate(mems):
        for b in mems[i + 1:]:
            if a.is_proper_subset(b):
                return False
    return True


def member_depths(members) -> np.ndarray:
    """depth[i] = number of members on the longest chain ending at members[i].
    Members must be sorted in canonical order."""
    strict = strict_containment_matrix(members)
    depth = np.zeros(len(members), dtype=np.int64)
    for j in range(len(members)):
        preds = strict[:, j]
        depth[j] = 1 + (depth[preds].max() if preds.any() else 0)
    return depth


def longest_chain_length(f: Family) -> int:
    """Maximum number of members on a chain under proper containment."""
    if not f.members:
        return 0
    return int(member_depths(f.members).max())


def canonical_decomposition(f: Family) -> LayerDecomposition:
    """Peel minimal members into layers: layer i collects the members whose
    longest chain from below has exactly i+1 members.  Layers are antichains,
    pairwise disjoint, cover the family, and every member of layer i (i >= 1)
    properly contains a member of layer i-1."""
    if not f.members:
        raise ValueError("cannot decompose an empty family")
    depth = member_depths(f.members)
    layers = []
    for level in range(1, int(depth.max()) + 1):
        layers.append(Family(f.m, tuple(mem for mem, d in zip(f.members, depth) if d == level)))
    return LayerDecomposition(tuple(layers), f)


def is_layered(layers, *, small_only: bool = False) -> bool:
    """Every member of layer i properly contains some member of layer i-1.

    With small_only=True only the small members participate on both sides,
    which is the criterion that transfers layering through saturated
    antichains sharing the block H.
    """
    layers = list(layers)
    for prev, cur in zip(layers, layers[1:]):
        if prev.m != cur.m:
            raise ValueError("layers live on different universes")
        below = prev.smalls() if small_only else prev.members
        for mem in (cur.smalls() if small_only else cur.members):
            if not any(b.is_proper_subset(mem) for b in below):
                return False
    return True


def parse_family(text) -> Family:
    """Parse the family text format.

    Lines whose first non-blank character is '#' are comments; blank lines
    are skipped.  The first significant line must be 'universe <m>'.  Every
    other significant line is one member: the word 'empty', or atom indices
    (1..m) plus at most one 'H' token, whitespace-separated.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    m = None
    members = []
    seen: set[Member] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if m is None:
            if len(tokens) != 2 or tokens[0] != "universe":
                raise FamilyFormatError("expected 'universe <m>' header", lineno)
            try:
                m = int(tokens[1])
            except ValueError:
                raise FamilyFormatError(f"bad universe size {tokens[1]!r}", lineno) from None
            if not 0 <= m <= MAX_ATOMS:
                raise FamilyFormatError(f"universe size must be in [0, {MAX_ATOMS}]", lineno)
            continue
        if tokens == ["empty"]:
            member = Member(0, False)
        elif "empty" in tokens:
            raise FamilyFormatError("'empty' cannot be combined with other tokens", lineno)
        else:
            mask = 0
            has_h = False
            for tok in tokens:
                if tok == "H":
                    if has_h:
                        raise FamilyFormatError("duplicate 'H' token", lineno)
                    has_h = True
                    continue
                try:
                    atom = int(tok)
                except ValueError:
                    raise FamilyFormatError(f"malformed token {tok!r}", lineno) from None
                if not 1 <= atom <= m:
                    raise FamilyFormatError(f"atom {atom} outside universe of size {m}", lineno)
                bit = 1 << (atom - 1)
                if mask & bit:
                    raise FamilyFormatError(f"duplicate atom {atom}", lineno)
                mask |= bit
            member = Member(mask, has_h)
        if member in seen:
            raise FamilyFormatError(f"duplicate member '{member}'", lineno)
        seen.add(member)
        members.append(member)
    if m is None:
        raise FamilyFormatError("missing 'universe <m>' header", max(1, text.count("\n") + 1))
    return Family(m, tuple(members))


def serialize_family(f: Family) -> str:
    """Canonical text form: header, then one member per line in canonical order."""
    lines = [f"universe {f.m}"]
    lines.extend(str(mem) for mem in f.members)
    return "\n".join(lines) + "\n"
