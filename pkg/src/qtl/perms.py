"""Small 1-based permutation toolkit.

Permutations on [1, r] are tuples ``sigma`` of length r with
``sigma[k-1]`` the image of k.  Everything here is 1-based because the
interval bookkeeping downstream (block shifts by s, interval maps) is
1-based throughout.
"""

from __future__ import annotations

from itertools import permutations as _it_permutations


def identity(r: int) -> tuple:
    return tuple(range(1, r + 1))


def apply(sigma: tuple, k: int) -> int:
    return sigma[k - 1]


def inverse(sigma: tuple) -> tuple:
    inv = [0] * len(sigma)
    for k, v in enumerate(sigma, start=1):
        inv[v - 1] = k
    return tuple(inv)


def compose(sigma: tuple, tau: tuple) -> tuple:
    """sigma after tau: (compose(s, t))(k) = s(t(k))."""
    return tuple(sigma[t - 1] for t in tau)


def cycles(sigma: tuple, include_fixed: bool = True) -> list:
    """Cycle decomposition, each cycle starting at its minimal element."""
    r = len(sigma)
    seen = [False] * r
    out = []
    for start in range(1, r + 1):
        if seen[start - 1]:
            continue
        cyc = [start]
        seen[start - 1] = True
        nxt = sigma[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt - 1] = True
            nxt = sigma[nxt - 1]
        if include_fixed or len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def sign(sigma: tuple) -> int:
    return -1 if (len(sigma) - len(cycles(sigma))) % 2 else 1


def from_cycles(cycs, r: int) -> tuple:
    img = list(range(1, r + 1))
    for cyc in cycs:
        for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
            if not (1 <= a <= r):
                raise ValueError(f"cycle entry {a} outside [1,{r}]")
            img[a - 1] = b
    return tuple(img)


def transposition(a: int, b: int, r: int) -> tuple:
    return from_cycles([(a, b)], r)


def all_permutations(r: int):
    """All of S_r as image tuples (r! of them; keep r small)."""
    return (tuple(p) for p in _it_permutations(range(1, r + 1)))


def parse_cycles(text: str, r: int) -> tuple:
    """Parse cycle notation like '(1726)(354)' or '(1 7 2 6)(3 5 4)'.

    Single-digit runs without separators are split digit by digit; use
    spaces or commas once entries reach 10.
    """
    s = text.strip()
    if not s:
        return identity(r)
    if s in ("id", "e", "()"):
        return identity(r)
    cycs = []
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"cycle notation must be parenthesized: {text!r}")
    for chunk in s[1:-1].split(")("):
        chunk = chunk.strip()
        if not chunk:
            continue
        if any(sep in chunk for sep in (" ", ",")):
            entries = [int(tok) for tok in chunk.replace(",", " ").split()]
        else:
            entries = [int(ch) for ch in chunk]
        cycs.append(tuple(entries))
    return from_cycles(cycs, r)


def format_cycles(sigma: tuple, include_fixed: bool = False) -> str:
    cycs = cycles(sigma, include_fixed=include_fixed)
    if not cycs:
        return "id"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)
