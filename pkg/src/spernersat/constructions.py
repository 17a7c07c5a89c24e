"""Builders for saturated k-Sperner systems and the antichain reduction.

The power-set construction gives 2^(k-1) members for every k >= 2.  The
hand-built 7-layer system on 7 atoms has 56 members, beating 2^6 = 64;
composing it with itself and with the 4-member 3-layer system yields
systems of degree 5j+2+s and size 2^(s+1) * 28^j, which is where the
improved upper-bound exponent comes from.

reduce_antichain implements the rewriting that turns any saturated
antichain into one whose small members are singletons, without growing it:
pick an atom inside a non-singleton small member, shrink that member to
the bare atom, delete the atom everywhere else, then resolve the
containments this creates (keep minimal smalls, maximal larges; a small
inside a large redirects the rewrite to one of its atoms).  Each round
retires one atom for good, which bounds the work by m * |input|.
"""

from __future__ import annotations

from dataclasses import dataclass

from .family import (
    Family,
    Member,
    complement_member,
    mask_of_atoms,
)
from .saturation import is_saturated_antichain


def trivial_construction(k: int) -> Family:
    """All subsets of k-2 atoms as smalls, plus their complements: the
    2^(k-1)-member baseline, saturated with k layers."""
    if k < 2:
        raise ValueError("k must be >= 2")
    m = k - 2
    smalls = [Member(mask, False) for mask in range(1 << m)]
    members = smalls + [complement_member(mem, m) for mem in smalls]
    return Family(m, tuple(members))


def three_sperner() -> Family:
    """Minimum 3-layer system: empty set, one atom, H, and their union."""
    return trivial_construction(3)


def _members(small_atom_sets, large_atom_sets) -> list[Member]:
    out = [Member(mask_of_atoms(s), False) for s in small_atom_sets]
    out += [Member(mask_of_atoms(s), True) for s in large_atom_sets]
    return out


def seven56() -> Family:
    """The 56-member system on 7 atoms with 7 layers.

    Layer 1 keeps five of the seven atoms as singletons; the two missing
    ones reappear in the single large member.  Layer 2 takes the cyclically
    consecutive pairs and the size-3 atom sets with no consecutive pair;
    layer 3 takes a projective-plane line set and the complements of its
    lines.  Layers 4-6 are the complements of layers 2-0, so the family is
    closed under complement.
    """
    layer0 = _members([()], [])
    layer1 = _members([(2,), (3,), (5,), (6,), (7,)], [(1, 4)])
    pairs = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 7)]
    spread = [(3, 5, 7), (1, 4, 6), (2, 5, 7), (1, 3, 6), (2, 4, 7), (1, 3, 5), (2, 4, 6)]
    layer2 = _members(pairs, spread)
    lines = [(1, 2, 6), (2, 3, 7), (1, 3, 4), (2, 4, 5), (3, 5, 6), (4, 6, 7), (1, 5, 7)]
    line_members = _members(lines, [])
    layer3 = line_members + [complement_member(mem, 7) for mem in line_members]
    lower = layer0 + layer1 + layer2
    upper = [complement_member(mem, 7) for mem in lower]
    return Family(7, tuple(lower + layer3 + upper))


def compose(f1: Family, f2: Family) -> Family:
    """Product on disjoint atom universes: smalls pair with smalls, larges
    with larges (their H blocks merge).  Degrees add as k1 + k2 - 2 and the
    size is |s1||s2| + |l1||l2|."""
    m = f1.m + f2.m
    if m > 62:
        raise ValueError(f"composed universe needs {m} atoms, limit is 62")
    shift = f1.m
    members = [
        Member(a.atom_mask | (b.atom_mask << shift), False)
        for a in f1.smalls() for b in f2.smalls()
    ]
    members += [
        Member(a.atom_mask | (b.atom_mask << shift), True)
        for a in f1.larges() for b in f2.larges()
    ]
    return Family(m, tuple(members))


@dataclass(frozen=True)
class CompositionPlan:
    """Factorization k = 5j + 2 + s realized as j seven-atom blocks plus s
    single-atom blocks."""

    k: int
    j: int
    s: int
    factors: tuple[str, ...]

    @property
    def predicted_size(self) -> int:
        return 2 ** (self.s + 1) * 28 ** self.j

    @property
    def composed_degree(self) -> int:
        degrees = {"seven56": 7, "three": 3}
        return sum(degrees[f] for f in self.factors) - 2 * (len(self.factors) - 1) if self.factors else 2

    @property
    def atoms_needed(self) -> int:
        return 7 * self.j + self.s


def bootstrapped(k: int) -> tuple[Family | None, CompositionPlan]:
    """Best available construction for degree k: fold the composition over
    j copies of the 56-member system and s copies of the 4-member system.
    For k < 7 this reproduces the power-set construction exactly.  When the
    composed universe would exceed 62 atoms only the plan is returned."""
    if k < 2:
        raise ValueError("k must be >= 2")
    j, s = divmod(k - 2, 5)
    plan = CompositionPlan(k=k, j=j, s=s, factors=("seven56",) * j + ("three",) * s)
    if plan.atoms_needed > 62:
        return None, plan
    family = trivial_construction(2)
    for _ in range(j):
        family = compose(family, seven56())
    for _ in range(s):
        family = compose(family, three_sperner())
    return family, plan


@dataclass(frozen=True)
class TraceStep:
    index: int
    action: str          # choose | replace | strip | merge | drop_small_superset | drop_large_subset | reassign
    before: Member | None
    after: Member | None
    atom: int | None = None

    def describe(self) -> str:
        parts = [f"{self.index}", self.action]
        if self.atom is not None:
            parts.append(f"atom={self.atom}")
        if self.before is not None:
            parts.append(f"before=[{self.before}]")
        if self.after is not None:
            parts.append(f"after=[{self.after}]")
        return " ".join(parts)


@dataclass(frozen=True)
class ReductionTrace:
    """Replayable log: applying the removals and insertions in order to the
    input membership reproduces the output."""

    steps: tuple[TraceStep, ...]

    def describe(self) -> str:
        return "\n".join(step.describe() for step in self.steps)

    def replay(self, start: Family) -> Family:
        current = set(start.members)
        for step in self.steps:
            if step.action in ("choose", "reassign"):
                continue
            if step.before is not None:
                current.discard(step.before)
            if step.after is not None:
                current.add(step.after)
        return Family(start.m, tuple(current))


def _lowest_atom(member: Member) -> int:
    return (member.atom_mask & -member.atom_mask).bit_length()


def _first_contained_pair(ordered: list[Member]) -> tuple[Member, Member] | None:
    # canonical order: a proper subset always precedes its superset
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a.is_proper_subset(b):
                return a, b
    return None


def reduce_antichain(a: Family) -> tuple[Family, ReductionTrace]:
    """Rewrite a saturated antichain until every small member is a singleton.

    Never grows the family, preserves saturation, and leaves an input whose
    smalls already are singletons untouched.  Raises ValueError if the input
    is not a saturated antichain and RuntimeError if any postcondition fails
    (a defect, not an input error).
    """
    saturated, _ = is_saturated_antichain(a)
    if not saturated:
        raise ValueError("input antichain is not saturated")
    working = set(a.members)
    steps: list[TraceStep] = []

    def log(action, before=None, after=None, atom=None):
        steps.append(TraceStep(len(steps), action, before, after, atom))

    had_multi_atom_small = any(mem.is_small and mem.atom_count > 1 for mem in working)
    step_budget = a.m * a.size
    rewrites = 0
    while True:
        multi = sorted((mem for mem in working if mem.is_small and mem.atom_count > 1),
                       key=Member.key)
        if not multi:
            break
        target = multi[0]
        atom = _lowest_atom(target)
        log("choose", before=target, atom=atom)
        while True:
            rewrites += 1
            if rewrites > step_budget:
                raise RuntimeError("reduction exceeded its iteration bound; this is a defect")
            singleton = Member(1 << (atom - 1), False)
            if target != singleton:
                working.discard(target)
                working.add(singleton)
                log("replace", before=target, after=singleton, atom=atom)
            bit = 1 << (atom - 1)
            for mem in sorted(working, key=Member.key):
                if mem != singleton and mem.atom_mask & bit:
                    working.remove(mem)
                    stripped = Member(mem.atom_mask & ~bit, mem.has_H)
                    if stripped in working:
                        log("merge", before=mem, after=stripped, atom=atom)
                    else:
                        working.add(stripped)
                        log("strip", before=mem, after=stripped, atom=atom)
            reassigned = False
            while True:
                pair = _first_contained_pair(sorted(working, key=Member.key))
                if pair is None:
                    break
                inner, outer = pair
                if inner.is_small and outer.is_small:
                    working.remove(outer)
                    log("drop_small_superset", before=outer)
                elif inner.is_large and outer.is_large:
                    working.remove(inner)
                    log("drop_large_subset", before=inner)
                else:
                    atom = _lowest_atom(inner)
                    target = inner
                    log("reassign", before=inner, atom=atom)
                    reassigned = True
                    break
            if not reassigned:
                break
    result = Family(a.m, tuple(working))
    if result.size > a.size:
        raise RuntimeError("reduction grew the family; this is a defect")
    ok, _ = is_saturated_antichain(result)
    if not ok:
        raise RuntimeError("reduction lost saturation; this is a defect")
    if any(mem.atom_count > 1 for mem in result.smalls()):
        raise RuntimeError("reduction left a multi-atom small; this is a defect")
    if not had_multi_atom_small and result != a:
        raise RuntimeError("reduction changed an already-reduced input; this is a defect")
    return result, ReductionTrace(tuple(steps))
