#!/usr/bin/env python3
"""Build data/transitive_groups.json from GAP's transitive groups library.

The generator lists and names come from the `transgrp` package data files
(trans.grp for degrees <= 7, data/transN.grp.gz for N >= 8). Group orders
are computed here with sympy so the C++ loader has a declared order to
validate against.

Usage:
    gen_catalog.py --transgrp <path-to-transgrp> [--min 4] [--max 15] [-o out.json]
"""

import argparse
import gzip
import json
import pathlib
import re
import sys

from sympy.combinatorics import Permutation, PermutationGroup


def read_degree_block(transgrp: pathlib.Path, degree: int) -> str:
    if degree <= 7:
        text = (transgrp / "lib" / "trans.grp").read_text(encoding="latin-1")
        start = text.index("TRANSGRP := [")
        end = text.index("TRANSPROPERTIES", start)
        body = text[start + len("TRANSGRP := ["):end]
        # Degree blocks are the top-level [...] lists in order 1, 2, 3, ...
        blocks = top_level_lists(body)
        return blocks[degree - 1]
    path = transgrp / "data" / f"trans{degree}.grp.gz"
    text = gzip.open(path, "rt", encoding="latin-1").read()
    start = text.index(f"TRANSGRP[{degree}]:=")
    end = text.index("TRANSPROPERTIES", start)
    body = text[start + len(f"TRANSGRP[{degree}]:="):end].strip()
    return top_level_lists(body)[0]


def top_level_lists(body: str) -> list:
    out, depth, begin, in_str = [], 0, None, False
    for i, ch in enumerate(body):
        if ch == '"':
            in_str = not in_str
        if in_str:
            continue
        if ch == "[":
            if depth == 0:
                begin = i + 1
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                out.append(body[begin:i])
    return out


def parse_groups(block: str):
    """Yields (generator cycle strings, name) per group record."""
    for rec in top_level_lists(block):
        rec = rec.replace("\n", "")
        name_match = re.search(r'"([^"]*)"', rec)
        name = name_match.group(1) if name_match else ""
        perms_part = rec[: name_match.start()] if name_match else rec
        perms_part = re.sub(r"\s+", "", perms_part)
        gens = re.findall(r"((?:\([0-9,]*\))+)", perms_part)
        yield gens, name


def to_sympy(cycles: str, degree: int) -> Permutation:
    perm = Permutation(degree - 1)
    for cyc in re.findall(r"\(([0-9,]*)\)", cycles):
        if not cyc:
            continue
        pts = [int(x) - 1 for x in cyc.split(",")]
        perm = perm * Permutation([pts], size=degree)
    return perm


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--transgrp", required=True, type=pathlib.Path)
    ap.add_argument("--min", type=int, default=4)
    ap.add_argument("--max", type=int, default=15)
    ap.add_argument("-o", "--output", type=pathlib.Path,
                    default=pathlib.Path("data/transitive_groups.json"))
    args = ap.parse_args()

    records = []
    for degree in range(args.min, args.max + 1):
        block = read_degree_block(args.transgrp, degree)
        for index, (gens, name) in enumerate(parse_groups(block), start=1):
            group = PermutationGroup([to_sympy(g, degree) for g in gens])
            if not group.is_transitive():
                raise SystemExit(f"t{degree}n{index} is not transitive")
            records.append({
                "degree": degree,
                "index": index,
                "name": name,
                "order": int(group.order()),
                "generators": gens,
            })
        print(f"degree {degree}: {index} groups", file=sys.stderr)

    with open(args.output, "w") as fh:
        fh.write("[\n")
        fh.write(",\n".join(json.dumps(r) for r in records))
        fh.write("\n]\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
