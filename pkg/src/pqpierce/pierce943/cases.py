"""Left-to-right order of witness traces on ``Z`` and the transversal table.

Each witness set contributes one token per component of its remainder
outside ``R1``.  Roles ``1, 2, 3`` are assigned to the witnesses, the token
sequence is written as a pattern such as ``1 31 2 32`` and looked up in
``CASE_TABLE``.  Patterns not listed are mirror images of listed ones.

Transversal specs:

``("r", k)``  supporting line of role ``k`` at the right end of its trace
``("l", k)``  same at the left end
``("S", k)``  the ``S'`` polyline of role ``k`` (two components)
``("sep", i, j)``  right line of the first part of ``i``, else left line of
                   the second part of ``j``, whichever covers the class
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import OrderAmbiguous

CASE_TABLE = {
    1: {
        "1 2 3": ("1", ("r", 1), ("r", 2)),
    },
    2: {
        "1 2 31 32": ("2.1", ("r", 1), ("r", 2)),
        "1 31 2 32": ("2.2", ("S", 3), ("r", 1)),
        "1 31 32 2": ("2.3", ("r", 1), ("l", 2)),
        "31 1 2 32": ("2.4", ("S", 3), ("r", 1)),
    },
    3: {
        "1 21 31 32 22": ("3.1", ("r", 1), ("S", 2)),
        "1 21 31 22 32": ("3.2", ("r", 1), ("sep", 2, 3)),
        "21 1 31 32 22": ("3.3", ("r", 1), ("S", 2)),
        "21 1 31 22 32": ("3.4", ("r", 1), ("sep", 2, 3)),
        "21 31 1 32 22": ("3.5", ("S", 2), ("S", 3)),
        "21 31 1 22 32": ("3.6", ("S", 2), ("S", 3)),
    },
    4: {
        "11 21 31 32 22 12": ("4.1", ("S", 1), ("S", 2)),
        "11 21 31 32 12 22": ("4.2", ("S", 1), ("S", 2)),
        "11 21 31 12 22 32": ("4.3", ("S", 2), ("sep", 1, 3)),
        "11 21 31 22 32 12": ("4.4", ("S", 1), ("sep", 2, 3)),
        "11 21 31 22 12 32": ("4.5", ("S", 1), ("sep", 2, 3)),
    },
}


@dataclass(frozen=True)
class Token:
    owner: int   # family index of the witness set
    part: int    # 0: single component; 1, 2: first/second component
    lo: object
    hi: object


@dataclass(frozen=True)
class Classification:
    case: str
    roles: dict          # role -> owner
    pattern: str
    t1: tuple
    t2: tuple


def interval_order(traces: dict) -> list:
    """Tokens sorted along ``Z``.

    ``traces`` maps each witness to the list of its component intervals.
    Witness traces are pairwise disjoint, so the order is strict; overlap
    raises ``OrderAmbiguous``.
    """
    tokens = []
    for owner, ivs in traces.items():
        if len(ivs) == 1:
            tokens.append(Token(owner, 0, *ivs[0]))
        else:
            tokens.extend(Token(owner, k + 1, lo, hi) for k, (lo, hi) in enumerate(ivs))
    tokens.sort(key=lambda t: (t.lo, t.hi))
    for a, b in zip(tokens, tokens[1:]):
        if a.owner != b.owner and a.hi >= b.lo:
            raise OrderAmbiguous(f"traces of sets {a.owner} and {b.owner} overlap on Z")
    return tokens


def _roles(tokens: list) -> dict:
    firsts = {}
    for pos, t in enumerate(tokens):
        firsts.setdefault(t.owner, pos)
    split = {t.owner for t in tokens if t.part}
    whole = sorted((o for o in firsts if o not in split), key=firsts.get)
    twos = sorted(split, key=firsts.get)
    order = whole + twos
    return {k + 1: o for k, o in enumerate(order)}


def classify(tokens: list) -> Optional[Classification]:
    """Case entry for the token order, or ``None`` if only its mirror is listed."""
    roles = _roles(tokens)
    role_of = {o: k for k, o in roles.items()}
    pattern = " ".join(f"{role_of[t.owner]}{t.part or ''}" for t in tokens)
    n_split = sum(1 for t in tokens if t.part == 1)
    entry = CASE_TABLE[n_split + 1].get(pattern)
    if entry is None:
        return None
    case, t1, t2 = entry
    return Classification(case, roles, pattern, t1, t2)
