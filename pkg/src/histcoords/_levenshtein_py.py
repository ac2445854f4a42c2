"""Pure-Python Levenshtein distance, same interface as the compiled module."""

from __future__ import annotations

from typing import List


def distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    row = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        prev_diag, row[0] = row[0], i
        for j, cb in enumerate(b, 1):
            cur = row[j]
            row[j] = min(prev_diag + (ca != cb), cur + 1, row[j - 1] + 1)
            prev_diag = cur
    return row[-1]


def distances(golds: List[str], preds: List[str]) -> List[int]:
    if len(golds) != len(preds):
        raise ValueError("golds and preds differ in length")
    return [distance(g, p) for g, p in zip(golds, preds)]
