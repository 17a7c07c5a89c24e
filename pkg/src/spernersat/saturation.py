"""Saturation tests for antichain layers and whole systems.

An antichain layer over m atoms is saturated when every subset T of the
atom universe contains some small member or fits inside some large one.
Checking all 2^m subsets is exact: a candidate set meeting only part of H
compares to smalls and larges exactly as its atom part does.  A system is
a saturated k-Sperner family precisely when its canonical decomposition
has exactly k layers and each layer passes this test.

The module also carries the fully concrete side: instantiating the block H
as h real elements, recovering the atom structure of a concrete family
from membership fingerprints, and a brute-force saturation oracle that
works on raw subsets of {1..n} and never consults the layer machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .family import (
    Family,
    FamilyFormatError,
    LayerDecomposition,
    Member,
    atoms_of_mask,
    canonical_decomposition,
    is_antichain,
)

# 2^m exhaustive scans and 2^n oracle tables stay tractable up to here.
SCAN_MAX_ATOMS = 24
ORACLE_MAX_GROUND = 24


def _subset_closure(seed: np.ndarray, m: int) -> np.ndarray:
    """In place: seed[T] true iff some originally-true S is a subset of T."""
    for b in range(m):
        view = seed.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return seed


def _superset_closure(seed: np.ndarray, m: int) -> np.ndarray:
    """In place: seed[T] true iff some originally-true S is a superset of T."""
    for b in range(m):
        view = seed.reshape(-1, 2, 1 << b)
        view[:, 0, :] |= view[:, 1, :]
    return seed


def is_saturated_antichain(layer: Family) -> tuple[bool, int | None]:
    """Exhaustive test over all 2^m atom subsets.

    Returns (True, None) or (False, witness) where the witness is the mask
    of the first uncovered subset in canonical order (atom count, then
    numeric value).  Raises ValueError if the input is not an antichain or
    the universe is too large to scan.
    """
    if not is_antichain(layer):
        raise ValueError("input is not an antichain")
    if layer.m > SCAN_MAX_ATOMS:
        raise ValueError(f"universe of size {layer.m} is too large for the exhaustive scan")
    size = 1 << layer.m
    covered = np.zeros(size, dtype=bool)
    small_masks = [mem.atom_mask for mem in layer.smalls()]
    if small_masks:
        up = np.zeros(size, dtype=bool)
        up[small_masks] = True
        covered |= _subset_closure(up, layer.m)
    large_masks = [mem.atom_mask for mem in layer.larges()]
    if large_masks:
        down = np.zeros(size, dtype=bool)
        down[large_masks] = True
        covered |= _superset_closure(down, layer.m)
    if covered.all():
        return True, None
    holes = np.nonzero(~covered)[0]
    witness = min((int(t) for t in holes), key=lambda t: (t.bit_count(), t))
    return False, witness


WRONG_LAYER_COUNT = "WRONG_LAYER_COUNT"
LAYER_NOT_SATURATED = "LAYER_NOT_SATURATED"


@dataclass(frozen=True)
class LayerReport:
    index: int
    size: int
    small: int
    large: int
    antichain: bool
    saturated: bool
    witness_mask: int | None


@dataclass(frozen=True)
class Reason:
    code: str
    layer: int | None = None
    witness_mask: int | None = None

    def describe(self) -> str:
        if self.code == WRONG_LAYER_COUNT:
            return self.code
        witness = "empty" if self.witness_mask == 0 else " ".join(
            str(a) for a in atoms_of_mask(self.witness_mask or 0))
        return f"{self.code} layer={self.layer} witness=[{witness}]"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the layer-based saturation check for one (family, k)."""

    verdict: bool
    k: int
    layer_count: int
    layers: tuple[LayerReport, ...]
    reasons: tuple[Reason, ...]
    decomposition: LayerDecomposition

    @property
    def failure_witness_mask(self) -> int | None:
        for reason in self.reasons:
            if reason.witness_mask is not None:
                return reason.witness_mask
        return None

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "verdict": self.verdict,
            "k": self.k,
            "layer_count": self.layer_count,
            "layers": [
                {
                    "index": lr.index,
                    "size": lr.size,
                    "small": lr.small,
                    "large": lr.large,
                    "antichain": lr.antichain,
                    "saturated": lr.saturated,
                    "witness": None if lr.witness_mask is None else list(atoms_of_mask(lr.witness_mask)),
                }
                for lr in self.layers
            ],
            "reasons": [
                {
                    "code": r.code,
                    "layer": r.layer,
                    "witness": None if r.witness_mask is None else list(atoms_of_mask(r.witness_mask)),
                }
                for r in self.reasons
            ],
        }


def verify_saturated_k_sperner(f: Family, k: int) -> VerificationReport:
    """Verdict is true iff the canonical decomposition has exactly k layers
    and every layer is a saturated antichain."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not f.members:
        raise ValueError("family is empty")
    decomposition = canonical_decomposition(f)
    layer_reports = []
    reasons = []
    all_saturated = True
    for index, layer in enumerate(decomposition.layers):
        saturated, witness = is_saturated_antichain(layer)
        layer_reports.append(LayerReport(
            index=index,
            size=layer.size,
            small=len(layer.smalls()),
            large=len(layer.larges()),
            antichain=True,
            saturated=saturated,
            witness_mask=witness,
        ))
        if not saturated:
            all_saturated = False
            reasons.append(Reason(LAYER_NOT_SATURATED, layer=index, witness_mask=witness))
    layer_count = decomposition.layer_count
    if layer_count != k:
        reasons.insert(0, Reason(WRONG_LAYER_COUNT))
    verdict = layer_count == k and all_saturated
    return VerificationReport(
        verdict=verdict,
        k=k,
        layer_count=layer_count,
        layers=tuple(layer_reports),
        reasons=tuple(reasons),
        decomposition=decomposition,
    )


@dataclass(frozen=True)
class LayerSizeDiagnostics:
    index: int
    small_count: int
    large_count: int
    small_min_size_ok: bool   # every small has at least `index` atoms
    large_cosize_ok: bool     # every large misses at least k-1-index atoms
    flat: bool                # smalls share one size, larges one co-size


@dataclass(frozen=True)
class SizeDiagnostics:
    """Structural facts that hold for minimum-size systems; informational
    for everything else, so no verdict is attached."""

    k: int
    bottom_is_empty: bool
    top_is_full: bool
    layer1_small_singletons: bool
    layer1_small_count_ok: bool   # at least k-2 smalls in layer 1
    layer1_single_large: bool
    per_layer: tuple[LayerSizeDiagnostics, ...]


def size_bounds_check(d: LayerDecomposition, k: int) -> SizeDiagnostics:
    if d.layer_count != k:
        raise ValueError(f"expected {k} layers, found {d.layer_count}")
    m = d.source.m
    per_layer = []
    for index, layer in enumerate(d.layers):
        smalls = layer.smalls()
        larges = layer.larges()
        small_sizes = {mem.atom_count for mem in smalls}
        large_cosizes = {mem.cosize(m) for mem in larges}
        per_layer.append(LayerSizeDiagnostics(
            index=index,
            small_count=len(smalls),
            large_count=len(larges),
            small_min_size_ok=all(s >= index for s in small_sizes),
            large_cosize_ok=all(c >= k - 1 - index for c in large_cosizes),
            flat=len(small_sizes) <= 1 and len(large_cosizes) <= 1,
        ))
    bottom = d.layers[0]
    top = d.layers[-1]
    bottom_is_empty = bottom.members == (Member(0, False),)
    top_is_full = top.members == (Member(d.source.full_mask, True),)
    if k >= 2:
        layer1 = d.layers[1]
        smalls1 = layer1.smalls()
        layer1_small_singletons = all(mem.atom_count == 1 for mem in smalls1)
        layer1_small_count_ok = len(smalls1) >= k - 2
        layer1_single_large = len(layer1.larges()) == 1
    else:
        layer1_small_singletons = layer1_small_count_ok = layer1_single_large = True
    return SizeDiagnostics(
        k=k,
        bottom_is_empty=bottom_is_empty,
        top_is_full=top_is_full,
        layer1_small_singletons=layer1_small_singletons,
        layer1_small_count_ok=layer1_small_count_ok,
        layer1_single_large=layer1_single_large,
        per_layer=tuple(per_layer),
    )


@dataclass(frozen=True)
class ConcreteFamily:
    """Subsets of {1..n} as bitmasks, duplicate-free, canonical order."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= 62:
            raise ValueError(f"ground set size must be in [0, 62], got {self.n}")
        ordered = tuple(sorted(self.members, key=lambda t: (t.bit_count(), t)))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate member")
        top = 1 << self.n
        for mask in ordered:
            if not 0 <= mask < top:
                raise ValueError("member uses elements outside the ground set")
        object.__setattr__(self, "members", ordered)

    @property
    def size(self) -> int:
        return len(self.members)


def instantiate(f: Family, h: int) -> ConcreteFamily:
    """Realize H as elements {m+1 .. m+h}.  Requires h >= 2 and m+h <= 24
    so the result stays inside the oracle's reach."""
    if h < 2:
        raise ValueError("H must contain at least 2 elements")
    n = f.m + h
    if n > ORACLE_MAX_GROUND:
        raise ValueError(f"ground set of size {n} exceeds the oracle limit {ORACLE_MAX_GROUND}")
    h_mask = ((1 << h) - 1) << f.m
    members = tuple(
        mem.atom_mask | (h_mask if mem.has_H else 0)
        for mem in f.members
    )
    return ConcreteFamily(n, members)


def parse_concrete(text) -> ConcreteFamily:
    """Concrete family text: 'universe <n>' then element lists, 'empty' for
    the empty set.  No 'H' token exists at this level."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    members = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "universe":
                raise FamilyFormatError("expected 'universe <n>' header", lineno)
            try:
                n = int(tokens[1])
            except ValueError:
                raise FamilyFormatError(f"bad ground set size {tokens[1]!r}", lineno) from None
            if not 0 <= n <= 62:
                raise FamilyFormatError("ground set size must be in [0, 62]", lineno)
            continue
        if tokens == ["empty"]:
            mask = 0
        elif "empty" in tokens:
            raise FamilyFormatError("'empty' cannot be combined with other tokens", lineno)
        else:
            mask = 0
            for tok in tokens:
                try:
                    elem = int(tok)
                except ValueError:
                    raise FamilyFormatError(f"malformed token {tok!r}", lineno) from None
                if not 1 <= elem <= n:
                    raise FamilyFormatError(f"element {elem} outside ground set of size {n}", lineno)
                bit = 1 << (elem - 1)
                if mask & bit:
                    raise FamilyFormatError(f"duplicate element {elem}", lineno)
                mask |= bit
        if mask in seen:
            raise FamilyFormatError("duplicate member", lineno)
        seen.add(mask)
        members.append(mask)
    if n is None:
        raise FamilyFormatError("missing 'universe <n>' header", max(1, text.count("\n") + 1))
    return ConcreteFamily(n, tuple(members))


@dataclass(frozen=True)
class AtomPartition:
    """Partition of {1..n} by membership fingerprint.  Elements in one class
    hit exactly the same members; classes of size >= 2 are homogeneous."""

    n: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def homogeneous(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.classes if len(c) >= 2)


def find_atoms(c: ConcreteFamily) -> AtomPartition:
    groups: dict[tuple[int, ...], list[int]] = {}
    for elem in range(1, c.n + 1):
        fingerprint = tuple((mask >> (elem - 1)) & 1 for mask in c.members)
        groups.setdefault(fingerprint, []).append(elem)
    classes = sorted((tuple(v) for v in groups.values()), key=lambda cls: cls[0])
    return AtomPartition(c.n, tuple(classes))


def _max_closure_subset(seed: np.ndarray, n: int) -> np.ndarray:
    for b in range(n):
        view = seed.reshape(-1, 2, 1 << b)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return seed


def _max_closure_superset(seed: np.ndarray, n: int) -> np.ndarray:
    for b in range(n):
        view = seed.reshape(-1, 2, 1 << b)
        np.maximum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return seed


def _strict_from_inclusive(incl: np.ndarray, n: int, toward_subsets: bool) -> np.ndarray:
    """strict[T] = max of incl over proper subsets (or supersets) of T."""
    strict = np.zeros_like(incl)
    for b in range(n):
        view_s = strict.reshape(-1, 2, 1 << b)
        view_i = incl.reshape(-1, 2, 1 << b)
        if toward_subsets:
            np.maximum(view_s[:, 1, :], view_i[:, 0, :], out=view_s[:, 1, :])
        else:
            np.maximum(view_s[:, 0, :], view_i[:, 1, :], out=view_s[:, 0, :])
    return strict


def brute_force_saturated(c: ConcreteFamily, k: int) -> bool:
    """Ground-truth saturation check on a concrete family.

    True iff the family has no chain of k+1 members and, for every absent
    subset S of {1..n}, inserting S would close a chain of k+1 sets:
    1 + (longest chain strictly below S) + (longest chain strictly above S)
    must reach k+1.  Works directly on subset masks; independent of the
    layer-based verifier.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if c.n > ORACLE_MAX_GROUND:
        raise ValueError(f"ground set of size {c.n} exceeds the oracle limit {ORACLE_MAX_GROUND}")
    mems = c.members  # sorted by popcount: topological for containment
    count = len(mems)
    down = [1] * count
    up = [1] * count
    for j in range(count):
        best = 0
        mj = mems[j]
        for i in range(j):
            if mems[i] != mj and (mems[i] & ~mj) == 0 and down[i] > best:
                best = down[i]
        down[j] = 1 + best
    for j in range(count - 1, -1, -1):
        best = 0
        mj = mems[j]
        for i in range(count - 1, j, -1):
            if mems[i] != mj and (mj & ~mems[i]) == 0 and up[i] > best:
                best = up[i]
        up[j] = 1 + best
    longest = max((down[i] + up[i] - 1 for i in range(count)), default=0)
    if longest > k:
        return False
    size = 1 << c.n
    below_incl = np.zeros(size, dtype=np.int16)
    for mask, d in zip(mems, down):
        below_incl[mask] = d
    below_strict = _strict_from_inclusive(_max_closure_subset(below_incl, c.n), c.n, toward_subsets=True)
    above_incl = np.zeros(size, dtype=np.int16)
    for mask, u in zip(mems, up):
        above_incl[mask] = u
    above_strict = _strict_from_inclusive(_max_closure_superset(above_incl, c.n), c.n, toward_subsets=False)
    closes = below_strict.astype(np.int32) + above_strict.astype(np.int32) >= k
    closes[np.array(mems, dtype=np.int64)] = True
    return bool(closes.all())


def eps_of(i: int, k: int) -> float:
    """Bias used to weight layer i of a k-layer system: (ln 2 / 2) * (1 - 2i/(k-1))."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return (math.log(2.0) / 2.0) * (1.0 - 2.0 * i / (k - 1))


def expected_hits(layer: Family, q: float) -> float:
    """Expected number of covering members when each atom is kept with
    probability q: sum of q^|S| over smalls plus (1-q)^cosize over larges.
    At least 1 for every saturated antichain and every 0 < q < 1."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must be strictly between 0 and 1")
    total = 0.0
    for mem in layer.members:
        if mem.is_small:
            total += q ** mem.atom_count
        else:
            total += (1.0 - q) ** mem.cosize(layer.m)
    return total
