#!/usr/bin/env python3
# Copyright 2026 The modeval Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the image goldens from small.poly by direct substitution."""

from pathlib import Path

HERE = Path(__file__).resolve().parent
BETA = (3, 5)
T = 4


def main() -> None:
    lines = (HERE / "small.poly").read_text().splitlines()
    p = int(lines[1].split()[1])
    terms = [tuple(map(int, line.split())) for line in lines[4:] if line.strip()]
    csv = ["t,d,e,c"]
    jsonl = []
    for t in range(1, T + 1):
        groups = {}
        for c, d, e, *xs in terms:
            v = c
            for b, x in zip(BETA, xs):
                v = v * pow(b, t * x, p) % p
            groups[(d, e)] = (groups.get((d, e), 0) + v) % p
        for (d, e) in sorted(groups, reverse=True):
            c = groups[(d, e)]
            if c:
                csv.append(f"{t},{d},{e},{c}")
                jsonl.append(f'{{"t":{t},"d":{d},"e":{e},"c":{c}}}')
    (HERE / "small_images.csv").write_text("\n".join(csv) + "\n")
    (HERE / "small_images.jsonl").write_text("\n".join(jsonl) + "\n")


if __name__ == "__main__":
    main()
