"""Closed words in the doubled quiver and multilinear trace products.

A word is a tuple of letters in *written order*: the word (x1, ..., xk)
stands for the matrix product Z(x1) * ... * Z(xk), where a barred letter
evaluates to the transpose of its arrow's matrix.  Two adjacent factors
Z(x) Z(y) compose exactly when the end of y is the origin of x, and a
word is admissible when every cyclically adjacent pair composes, i.e.
when it traces a closed path.

Trace products are the numbered cousins used by the multilinear
calculus: factors are cyclic sequences of (number, barred) symbols, each
number used exactly once overall.  ``right_record`` is their canonical
form.
"""

from __future__ import annotations

from .errors import DuplicateSymbol, EmptyWord, NotAdmissible
from .quiver import DoubledQuiver, Letter

Word = tuple  # tuple of Letter


def word(*letters) -> Word:
    """Build a word from 'a' / ('a', True) / Letter entries."""
    out = []
    for x in letters:
        if isinstance(x, Letter):
            out.append(x)
        elif isinstance(x, str):
            if x.endswith("'"):
                out.append(Letter(x[:-1], True))
            elif x.endswith("_bar"):
                out.append(Letter(x[:-4], True))
            else:
                out.append(Letter(x, False))
        else:
            base, barred = x
            out.append(Letter(base, bool(barred)))
    return tuple(out)


def parse_word(text: str) -> Word:
    """Parse the serialized form, e.g. "c,b'" -> (c, b-bar)."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise EmptyWord("empty word text")
    return word(*parts)


def format_word(w: Word) -> str:
    return ",".join(l.base + ("'" if l.barred else "") for l in w)


def is_linked(dq: DoubledQuiver, first: Letter, second: Letter) -> bool:
    """Does Z(first) Z(second) compose, i.e. end(second) == origin(first)?"""
    return dq.end(second) == dq.origin(first)


def is_admissible(dq: DoubledQuiver, w: Word) -> bool:
    if not w:
        raise EmptyWord("admissibility of the empty word is undefined")
    k = len(w)
    return all(is_linked(dq, w[i], w[(i + 1) % k]) for i in range(k))


def base_vertex(dq: DoubledQuiver, w: Word):
    """Vertex where the closed word starts and ends (end of its first letter)."""
    if not is_admissible(dq, w):
        raise NotAdmissible(format_word(w))
    return dq.end(w[0])


def transpose_word(w: Word) -> Word:
    """Reverse the order and toggle every bar; an involution."""
    return tuple(l.bar() for l in reversed(w))


def rotations(w: Word):
    return [w[i:] + w[:i] for i in range(len(w))]


def canonical_word(w: Word, dedupe: str = "rotation+transpose") -> Word:
    """Lexicographically least rotation, optionally also over the transpose."""
    candidates = rotations(w)
    if dedupe == "rotation+transpose":
        candidates += rotations(transpose_word(w))
    elif dedupe != "rotation":
        raise ValueError(f"unknown dedupe mode {dedupe!r}")
    return min(candidates, key=lambda v: tuple(l.key() for l in v))


def word_content(w: Word) -> dict:
    """Multiset of base arrows used (bars count toward the same arrow)."""
    out: dict = {}
    for l in w:
        out[l.base] = out.get(l.base, 0) + 1
    return out


def enumerate_closed_words(dq: DoubledQuiver, max_len: int,
                           dedupe: str = "rotation+transpose"):
    """One canonical representative per class of admissible closed words.

    Exhaustive for lengths 1..max_len; returns an empty list when
    max_len < 1.  ``dedupe`` is "rotation" or "rotation+transpose".
    """
    letters = dq.letters()
    found = set()
    out = []

    def extend(seq, first):
        # close the cycle when the wrap-around pair composes
        if is_linked(dq, seq[-1], first):
            w = tuple(seq)
            c = canonical_word(w, dedupe)
            if c not in found:
                found.add(c)
                out.append(c)
        if len(seq) == max_len:
            return
        for nxt in letters:
            # appending nxt on the right needs end(nxt) == origin(seq[-1])
            if dq.end(nxt) == dq.origin(seq[-1]):
                seq.append(nxt)
                extend(seq, first)
                seq.pop()

    for start in letters:
        extend([start], start)
    out.sort(key=lambda w: (len(w), tuple(l.key() for l in w)))
    return out


# -- trace products --------------------------------------------------------

Symbol = tuple  # (number, barred)


def trace_product(*factors) -> tuple:
    """Build a trace product from factors of (number, barred) symbols.

    Accepts e.g. trace_product([(1, False), (6, True)], [(2, False)]) or
    strings like "1 6' 3' 5".
    """
    out = []
    for f in factors:
        if isinstance(f, str):
            syms = []
            for tok in f.replace(",", " ").split():
                if tok.endswith("'"):
                    syms.append((int(tok[:-1]), True))
                else:
                    syms.append((int(tok), False))
            out.append(tuple(syms))
        else:
            out.append(tuple((int(n), bool(b)) for n, b in f))
    return tuple(out)


def product_numbers(tp: tuple):
    nums = [n for f in tp for (n, _) in f]
    if len(nums) != len(set(nums)):
        raise DuplicateSymbol("a numbered letter appears more than once")
    return nums


def transpose_factor(factor: tuple) -> tuple:
    return tuple((n, not b) for (n, b) in reversed(factor))


def right_record(tp: tuple) -> tuple:
    """Canonical form of a multilinear trace product.

    In each factor the maximal number goes first and unbarred
    (transposing the factor if needed); factors are sorted by their
    associated (maximal) number, ascending.  Idempotent.
    """
    product_numbers(tp)
    fixed = []
    for factor in tp:
        if not factor:
            raise DuplicateSymbol("empty trace factor")
        top = max(n for (n, _) in factor)
        pos = next(i for i, (n, _) in enumerate(factor) if n == top)
        if factor[pos][1]:
            factor = transpose_factor(factor)
            pos = next(i for i, (n, _) in enumerate(factor) if n == top)
        factor = factor[pos:] + factor[:pos]
        fixed.append((top, factor))
    fixed.sort(key=lambda t: t[0])
    return tuple(f for _, f in fixed)


def format_trace_product(tp: tuple) -> str:
    return "".join(
        "(" + " ".join(f"{n}'" if b else str(n) for (n, b) in f) + ")"
        for f in tp)
