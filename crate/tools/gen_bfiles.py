#!/usr/bin/env python3
"""Writes b-files of first-occurrence positions of prime-tower tree shapes.

Independent reference for the Rust implementation: factorization comes from
sympy and trees are built as nested tuples, not strings or exponent keys.

usage: gen_bfiles.py BOUND OUTDIR
"""
import sys
from functools import lru_cache

from sympy import factorint


@lru_cache(maxsize=None)
def planar(n):
    if n == 1:
        return ()
    return tuple(planar(e) for _, e in sorted(factorint(n).items()))


def unordered(t):
    return tuple(sorted((unordered(c) for c in t), key=render_key))


def render(t):
    return "(" + "".join(render(c) for c in t) + ")"


def render_key(t):
    s = render(t)
    return (len(s), s)


def main():
    bound, outdir = int(sys.argv[1]), sys.argv[2]
    seen_p, seen_u = set(), set()
    first_p, first_u = [], []
    for n in range(1, bound + 1):
        t = planar(n)
        if t not in seen_p:
            seen_p.add(t)
            first_p.append(n)
        u = unordered(t)
        if u not in seen_u:
            seen_u.add(u)
            first_u.append(n)
    for name, terms in (("b284456.txt", first_p), ("b279686.txt", first_u)):
        with open(f"{outdir}/{name}", "w") as f:
            f.write(f"# first occurrences up to {bound}, generated by tools/gen_bfiles.py (sympy oracle)\n")
            for i, v in enumerate(terms, 1):
                f.write(f"{i} {v}\n")


if __name__ == "__main__":
    main()
