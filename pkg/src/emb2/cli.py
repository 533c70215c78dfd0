"""Command-line driver.

Subcommands: validate, classify, pi1, generate, selftest.  Exit codes:
0 success, 1 invalid input, 2 internal assertion failure.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time

from . import pi1 as pi1_mod
from .catalog import CATALOG_NAMES, catalog_entry
from .classify import classify_embedding_space
from .documents import (
    build_report,
    document_from_text,
    generate_example,
    parse_input,
    serialize_document,
)
from .errors import Emb2Error, InternalError, InvalidInput
from .surface import build_and_validate, ValidationReport
from .subcomplex import embed_subcomplex
from .words import concat, inv


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_validate(args) -> int:
    text = _read(args.file)
    doc = document_from_text(text)
    result = build_and_validate(doc.triangles, doc.vertices)
    if isinstance(result, ValidationReport):
        for condition, simplex in result.failures:
            print(f"invalid: {condition} at {simplex}", file=sys.stderr)
        return 1
    embed_subcomplex(result, doc.sub_vertices, doc.sub_edges, doc.sub_triangles)
    print("valid")
    return 0


def cmd_classify(args) -> int:
    text = _read(args.file)
    doc = document_from_text(text)
    surface, x = parse_input(text)
    t0 = time.perf_counter()
    descriptor, trace = classify_embedding_space(surface, x)
    ms = (time.perf_counter() - t0) * 1000
    report = build_report(doc, descriptor, trace, timing_ms=ms)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.human_text(explain=args.explain))
    return 0


def cmd_pi1(args) -> int:
    text = _read(args.file)
    surface, x = parse_input(text)
    from .subcomplex import regular_neighborhood, spine_with_loops

    decomp = regular_neighborhood(surface, x)
    pres = pi1_mod.presentation(decomp.host2, decomp.x2.basepoint)
    spine = spine_with_loops(decomp, pres)
    gens = pi1_mod.induced_subgroup(decomp.host2, pres, spine)
    cls = (
        pi1_mod.classify_subgroup(pres, gens)
        if gens
        else pi1_mod.SubgroupClass("Trivial")
    )
    if args.json:
        import json

        out = {
            "strategy": pres.strategy,
            "surface": pres.surface_type.describe(),
            "generator_count": pres.generator_count(),
            "induced_generators": [list(g) for g in gens],
            "subgroup": cls.verdict,
            "witness": [list(w) for w in cls.witness],
        }
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        print(f"surface: {pres.surface_type.describe()} (strategy {pres.strategy})")
        print(f"presentation generators: {pres.generator_count()}")
        print(f"induced subgroup generators: {[list(g) for g in gens]}")
        print(f"subgroup class: {cls.verdict}")
    return 0


def cmd_generate(args) -> int:
    doc = generate_example(args.name)
    text = serialize_document(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _selftest_fuzz(seed: int) -> None:
    """Small seeded word-problem fuzz across strategies."""
    from .catalog import torus7, klein8
    from .surface import require_surface

    rng = random.Random(seed)
    for builder in (torus7, klein8):
        surface = require_surface(*builder())
        pres = pi1_mod.presentation(surface, 0)
        n = pres.generator_count()
        for _ in range(25):
            w = tuple(
                rng.choice([1, -1]) * rng.randint(1, n)
                for _ in range(rng.randint(1, 12))
            )
            assert pi1_mod.is_trivial_word(pres, concat(w, inv(w)))
            verdict = pi1_mod.is_trivial_word(pres, w)
            conj = tuple(
                rng.choice([1, -1]) * rng.randint(1, n) for _ in range(4)
            )
            assert pi1_mod.is_trivial_word(pres, concat(conj, w, inv(conj))) == verdict


def cmd_selftest(_args) -> int:
    seed = int(os.environ.get("EMB2_SEED", "0"))
    failures = 0
    print(f"{'example':34s} {'verdict':40s} {'case':20s} status")
    for name in CATALOG_NAMES:
        entry = catalog_entry(name)
        doc = generate_example(name)
        surface, x = parse_input(serialize_document(doc))
        descriptor, trace = classify_embedding_space(surface, x)
        ok = (
            descriptor.display() == entry["expected_tag"]
            and trace.case == entry["expected_case"]
        )
        failures += not ok
        print(
            f"{name:34s} {descriptor.display():40s} {trace.case:20s} "
            f"{'ok' if ok else 'FAIL'}"
        )
    _selftest_fuzz(seed)
    print(f"fuzz (seed {seed}): ok")
    if failures:
        print(f"{failures} mismatches", file=sys.stderr)
        return 2
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emb2",
        description=(
            "Classify the homotopy type of the component of the inclusion in "
            "the space of embeddings of a subcomplex into a surface."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="classify an embedding space")
    p.add_argument("file")
    p.add_argument("--explain", action="store_true", help="include the decision trace")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pi1", help="show the induced subgroup data")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("generate", help="write a catalog example document")
    p.add_argument("name", choices=sorted(CATALOG_NAMES))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("selftest", help="run the catalog verdict table")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInput, Emb2Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
