"""Deriving the blob stream for a game session from a verdict.

Blob color encodes the teacher's formula M (red = M violated, the datum
is corrupt); marking encodes the student's formula S (marked = S rejects
it, the scanner flags it). The two discriminating quadrants force
mandatory blobs: a satisfiable !M&S yields at least one unmarked red blob
(corruption slips past the scanner), a satisfiable M&!S at least one
marked blue blob (good data wrongly flagged).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rng import SplitMix64
from .verdict import SideVerdict, Verdict

# quadrant -> blob kind; red <=> !M, marked <=> !S
KIND_FOR_QUADRANT = {
    "MS": "blueUnmarked",
    "MnS": "blueMarked",
    "nMS": "redUnmarked",
    "nMnS": "redMarked",
}
QUADRANT_FOR_KIND = {v: k for k, v in KIND_FOR_QUADRANT.items()}


@dataclass(frozen=True)
class BlobEntry:
    kind: str  # redUnmarked | blueMarked | redMarked | blueUnmarked
    witness: dict
    side: str  # "input" | "output"
    mandatory: bool = False


@dataclass(frozen=True)
class BlobPlan:
    entries: tuple  # of BlobEntry
    mix: dict  # kind -> filler ratio actually used

    def kinds_present(self, side: str | None = None):
        return {e.kind for e in self.entries if side is None or e.side == side}


DEFAULT_FILLER_COUNT = 10
# filler blobs prefer clean traffic so a correct spec still has a lively board
DEFAULT_MIX = {"blueUnmarked": 0.6, "redMarked": 0.4, "blueMarked": 0.0, "redUnmarked": 0.0}


def _witness_pool(side: SideVerdict, quadrant: str):
    pool = []
    st = side.quadrants[quadrant]
    if st.status == "sat" and st.witness is not None:
        pool.append(st.witness)
    for w in side.extra_witnesses.get(quadrant, []):
        if w not in pool:
            pool.append(w)
    return pool


def plan_side(side: SideVerdict, side_name: str, rng: SplitMix64,
              filler_count: int = DEFAULT_FILLER_COUNT, mix: dict = None):
    mix = dict(DEFAULT_MIX if mix is None else mix)
    entries = []
    # mandatory blobs for the discriminating quadrants
    for quadrant in ("nMS", "MnS"):
        if side.quadrants[quadrant].status == "sat":
            pool = _witness_pool(side, quadrant)
            if pool:
                entries.append(BlobEntry(KIND_FOR_QUADRANT[quadrant], pool[0],
                                         side_name, mandatory=True))
    # fillers drawn from satisfiable quadrants proportionally to the mix
    weighted = []
    for kind, ratio in mix.items():
        quadrant = QUADRANT_FOR_KIND[kind]
        if ratio <= 0 or side.quadrants[quadrant].status != "sat":
            continue
        pool = _witness_pool(side, quadrant)
        if pool:
            weighted.append((kind, ratio, pool))
    total = sum(r for _, r, _ in weighted)
    if total > 0:
        for _ in range(filler_count):
            pick = rng.float01() * total
            acc = 0.0
            for kind, ratio, pool in weighted:
                acc += ratio
                if pick < acc or (kind, ratio, pool) is weighted[-1]:
                    entries.append(BlobEntry(kind, pool[rng.below(len(pool))], side_name))
                    break
    return entries, mix


def plan_to_json(plan: BlobPlan) -> dict:
    return {
        "entries": [
            {"kind": e.kind, "witness": e.witness, "side": e.side,
             "mandatory": e.mandatory}
            for e in plan.entries
        ],
        "mix": plan.mix,
    }


def plan_from_json(d: dict) -> BlobPlan:
    entries = tuple(
        BlobEntry(e["kind"], e["witness"], e["side"], e.get("mandatory", False))
        for e in d["entries"]
    )
    return BlobPlan(entries=entries, mix=dict(d.get("mix", {})))


def plan_blobs(verdict: Verdict, seed: int = 0,
               filler_count: int = DEFAULT_FILLER_COUNT,
               mix: dict = None) -> BlobPlan:
    """Deterministic blob plan: input-side blobs from the pre verdict,
    output-side blobs from the post verdict."""
    rng = SplitMix64(seed)
    pre_entries, mix_used = plan_side(verdict.pre, "input", rng, filler_count, mix)
    post_entries, _ = plan_side(verdict.post, "output", rng, filler_count, mix)
    return BlobPlan(entries=tuple(pre_entries + post_entries), mix=mix_used)
