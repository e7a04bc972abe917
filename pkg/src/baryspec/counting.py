"""Exact f-vector dynamics under barycentric refinement.

A k-simplex of the refinement is a chain ``x_0 < x_1 < ... < x_k`` of faces.
Chains whose top element is a fixed j-simplex correspond to ordered set
partitions of its j+1 vertices into k+1 blocks, so

    v_k(G_1) = sum_j (k+1)! * S(j+1, k+1) * v_j(G)

with S the Stirling numbers of the second kind. Everything here is integer
or rational arithmetic.
"""

from __future__ import annotations

import io
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

FVector = tuple[int, ...]


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    # iterative row build keeps deep n off the recursion stack
    row = [1] + [0] * k
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def transfer_matrix(d: int) -> list[list[int]]:
    """Upper-triangular ``(d+1) x (d+1)`` matrix with entry
    ``(k+1)! * S(j+1, k+1)`` in row k, column j."""
    if d < 0:
        raise ValueError("dimension must be >= 0")
    return [[factorial(k + 1) * stirling2(j + 1, k + 1) if j >= k else 0 for j in range(d + 1)]
            for k in range(d + 1)]


def step(f: Sequence[int]) -> FVector:
    s = transfer_matrix(len(f) - 1)
    return tuple(sum(a * b for a, b in zip(row, f)) for row in s)


def evolve(f: Sequence[int], m: int) -> FVector:
    if m < 0:
        raise ValueError("m must be >= 0")
    out = tuple(int(v) for v in f)
    for _ in range(m):
        out = step(out)
    return out


def trajectory(f: Sequence[int], m: int) -> list[FVector]:
    """``[f, step(f), ..., step^m(f)]``."""
    out = [tuple(int(v) for v in f)]
    for _ in range(m):
        out.append(step(out[-1]))
    return out


def alternating_sum(f: Sequence[int]) -> int:
    return sum((-1) ** k * v for k, v in enumerate(f))


# closed forms for the two families that have them; Fraction keeps m=0 exact
def _k2_closed(m: int) -> FVector:
    return (1 + 2 ** m, 2 ** m)


def _k3_closed(m: int) -> FVector:
    h = Fraction(2) ** (m - 1)
    v0 = 1 - 3 * h + 3 * 2 ** m + h * 3 ** m
    v1 = 3 * (-h + 2 ** m + h * 3 ** m)
    v2 = Fraction(6) ** m
    assert v0.denominator == v1.denominator == v2.denominator == 1
    return (int(v0), int(v1), int(v2))


CLOSED_FORMS = {"K2": ((2, 1), _k2_closed), "K3": ((3, 3, 1), _k3_closed)}


def closed_form_check(family: str, m: int) -> dict:
    if family not in CLOSED_FORMS:
        raise ValueError(f"closed forms exist only for {sorted(CLOSED_FORMS)}")
    if m < 0:
        raise ValueError("m must be >= 0")
    start, formula = CLOSED_FORMS[family]
    closed = formula(m)
    evolved = evolve(start, m)
    return {"family": family, "m": m, "closed": closed, "evolved": evolved, "ok": closed == evolved}


def growth_ratios(f0: Sequence[int], m_max: int) -> list[dict]:
    """Exact ratios ``v0(m+1)/v0(m)`` and their distance to ``(d+1)!``."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    limit = factorial(len(f0))
    traj = trajectory(f0, m_max)
    out = []
    for m in range(1, m_max + 1):
        r = Fraction(traj[m][0], traj[m - 1][0])
        out.append({"m": m, "ratio": r, "distance": abs(r - limit)})
    return out


def fvector_csv(f0: Sequence[int], m_max: int) -> str:
    traj = trajectory(f0, m_max)
    buf = io.StringIO()
    buf.write(",".join(["m"] + [f"v{k}" for k in range(len(f0))] + ["ratio_num", "ratio_den"]) + "\n")
    for m, f in enumerate(traj):
        if m == 0:
            tail = ["", ""]
        else:
            r = Fraction(f[0], traj[m - 1][0])
            tail = [str(r.numerator), str(r.denominator)]
        buf.write(",".join([str(m), *map(str, f), *tail]) + "\n")
    return buf.getvalue()
