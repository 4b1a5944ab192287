#!/usr/bin/env python3
"""Independent enumeration oracle for the verification corpus.

Counts, by brute force and without importing the package, the instances the
acceptance suite iterates over:

  * difunctional relations between sets of size m and n (elementwise
    quadruple condition, all 2^(m*n) matrices checked);
  * set partitions of an n-element set (recursive block enumeration).

The printed numbers are frozen as regression constants in the test suite.
"""

from __future__ import annotations

import itertools
from math import comb, factorial


def is_difunctional_bruteforce(m: int, n: int, matrix: tuple[int, ...]) -> bool:
    # matrix is row-major over m rows, n columns
    def rel(a: int, b: int) -> int:
        return matrix[a * n + b]

    for a in range(m):
        for b in range(n):
            for a2 in range(m):
                for b2 in range(n):
                    if rel(a, b) and rel(a, b2) and rel(a2, b) and not rel(a2, b2):
                        return False
    return True


def count_difunctional(m: int, n: int) -> int:
    total = 0
    for bits in itertools.product((0, 1), repeat=m * n):
        if is_difunctional_bruteforce(m, n, bits):
            total += 1
    return total


def count_difunctional_formula(m: int, n: int) -> int:
    # Independent cross-check: a difunctional relation is a bijection between
    # k disjoint blocks on each side, summed over k.
    def stirling2(a: int, k: int) -> int:
        if k == 0:
            return 1 if a == 0 else 0
        return sum(
            (-1) ** (k - j) * comb(k, j) * j**a for j in range(k + 1)
        ) // factorial(k)

    def partial_blocks(a: int, k: int) -> int:
        return sum(comb(a, j) * stirling2(j, k) for j in range(a + 1))

    return sum(
        partial_blocks(m, k) * partial_blocks(n, k) * factorial(k)
        for k in range(min(m, n) + 1)
    )


def partitions(items: list[str]):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]
        yield [[head]] + part


def main() -> None:
    print("difunctional relation counts (rows m = |A|, cols n = |B|):")
    totals = {}
    for bound in (2, 3):
        total = 0
        for m in range(bound + 1):
            for n in range(bound + 1):
                total += count_difunctional(m, n)
        totals[bound] = total
    for m in range(4):
        row = []
        for n in range(4):
            brute = count_difunctional(m, n)
            formula = count_difunctional_formula(m, n)
            assert brute == formula, (m, n, brute, formula)
            row.append(brute)
        print(f"  m={m}: {row}")
    print(f"total over all size pairs <= 2: {totals[2]}")
    print(f"total over all size pairs <= 3: {totals[3]}")

    print("set partition counts (Bell numbers):")
    bells = []
    for n in range(6):
        count = sum(1 for _ in partitions([f"x{i}" for i in range(n)]))
        bells.append(count)
    print(f"  sizes 0..5: {bells}")
    print(f"total partitions over sizes <= 5: {sum(bells)}")


if __name__ == "__main__":
    main()
