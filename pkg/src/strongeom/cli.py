"""Command line interface.

Exit codes: 0 success, 1 disagreement or identity violations, 2 syntax
error in an input file, 3 dimension mismatch, 4 degenerate configuration,
5 non-generic shadow, 6 search too large, 7 malformed diagram.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .chirotope import AFFINE, LINEAR, PointConfig, chirotope
from .errors import (
    DegenerateConfiguration,
    DimensionMismatch,
    GaussSyntaxError,
    MalformedDiagram,
    NonGeneric,
    PointFileError,
    SearchTooLarge,
    ValidationError,
)
from .gauss import parse as parse_gauss
from .gauss import serialize
from .graph import extract_graphoid, extract_graphoid_geometric, parse_graph, validate_graph
from .knot import PolygonalKnot, extract_gauss_combinatorial, extract_gauss_geometric, validate_input
from .pointfile import read_points
from .reconstruct import check_realizable, faces
from .rng import SplitMix64
from .wedge import (
    compare_strong_geometries,
    random_rational_config,
    strong_geometry,
    verify_dimension_reduction,
    verify_parity_invariance,
    verify_rank3_identity,
    verify_recover4,
    verify_wit2,
)

EXIT_CODES = (
    (GaussSyntaxError, 2),
    (PointFileError, 2),
    (DimensionMismatch, 3),
    (DegenerateConfiguration, 4),
    (NonGeneric, 5),
    (SearchTooLarge, 6),
    (ValidationError, 7),
    (MalformedDiagram, 7),
)


def _sign_str(s: int) -> str:
    return "+1" if s > 0 else "-1" if s < 0 else "0"


def cmd_chirotope(args, out) -> int:
    X = read_points(args.points, args.mode)
    for t, s in chirotope(X).items():
        out.write(" ".join(map(str, t)) + ": " + _sign_str(s) + "\n")
    return 0


def _rotate(X: PointConfig, start: int) -> PointConfig:
    return X.relabeled([(start + i) % X.n for i in range(X.n)])


def _knot_code(X: PointConfig, path: str):
    """Returns (code text, error text)."""
    K = PolygonalKnot(X)
    validate_input(K)
    codes = {}
    if path in ("combinatorial", "both"):
        codes["combinatorial"] = serialize(extract_gauss_combinatorial(strong_geometry(X, eager=False)))
    if path in ("geometric", "both"):
        codes["geometric"] = serialize(extract_gauss_geometric(K))
    vals = set(codes.values())
    if len(vals) > 1:
        return None, "\n".join(f"{k}: {v}" for k, v in codes.items())
    return vals.pop(), None


def cmd_gauss(args, out) -> int:
    X = read_points(args.points, AFFINE)
    if X.dim != 3:
        raise DimensionMismatch(f"knots live in R^3, got dimension {X.dim}")
    if not 0 <= args.start < X.n:
        raise DimensionMismatch(f"label {args.start} out of range")
    code, err = _knot_code(_rotate(X, args.start), args.path)
    if code is None:
        sys.stderr.write("paths disagree\n" + err + "\n")
        return 1
    out.write(code + "\n")
    return 0


def _read_map(path: str, n: int) -> list:
    perm = [None] * n
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            a, sep, b = line.partition(":")
            try:
                i, j = int(a), int(b)
            except ValueError:
                raise PointFileError(lineno, "expected 'LABEL: LABEL'") from None
            if not sep or not 0 <= i < n or not 0 <= j < n:
                raise PointFileError(lineno, "expected 'LABEL: LABEL' with labels in range")
            perm[i] = j
    if sorted(p for p in perm if p is not None) != list(range(n)):
        raise PointFileError(1, "map is not a bijection")
    return perm


def _dihedral(perm: Sequence[int]) -> bool:
    n = len(perm)
    if n < 3:
        return True
    step = (perm[1] - perm[0]) % n
    if step not in (1, n - 1):
        return False
    return all((perm[i + 1] - perm[i]) % n == step for i in range(n - 1))


def cmd_compare(args, out) -> int:
    A = read_points(args.a, AFFINE)
    B = read_points(args.b, AFFINE)
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
    if A.n != B.n:
        out.write(f"not-certified\nsizes differ: {A.n} vs {B.n}\n")
        return 0
    SA, SB = strong_geometry(A, eager=False), strong_geometry(B, eager=False)
    if args.map:
        perm = _read_map(args.map, A.n)
        res = compare_strong_geometries(SA, SB, perm)
    elif args.search:
        res = compare_strong_geometries(SA, SB, None, args.search_limit)
    else:
        res = compare_strong_geometries(SA, SB, list(range(A.n)))
    if not res.isomorphic:
        out.write("not-certified\n")
        if res.witness:
            part, t, sa, sb = res.witness
            out.write(f"first disagreement: {part} {t} A={_sign_str(sa) if isinstance(sa, int) else sa} "
                      f"B={_sign_str(sb) if isinstance(sb, int) else sb}\n")
        return 0
    perm = res.bijection
    if A.dim != 3:
        out.write(f"strong-geometries-isomorphic\nmap: {' '.join(map(str, perm))}\n")
        return 0
    if not _dihedral(perm):
        out.write("not-certified\nstrong geometries isomorphic, but the label map does not preserve the knot's vertex cycle\n")
        return 0
    Bre = B.relabeled(perm)
    ca, err_a = _knot_code(A, "both")
    cb, err_b = _knot_code(Bre, "both")
    out.write("isotopic-certified\n")
    out.write(f"map: {' '.join(map(str, perm))}\n")
    out.write(f"A: {ca}\nB: {cb}\n")
    return 0


def cmd_verify(args, out) -> int:
    rng = SplitMix64(args.seed)
    reports = []
    if args.identity == "rank3":
        for t in range(args.trials):
            X = random_rational_config(rng, rng.randint(5, 8), 2)
            reports.append(verify_rank3_identity(X))
    elif args.identity == "linwit":
        form = args.form or "omega-first"
        if form not in ("omega-first", "omega-last"):
            sys.stderr.write(f"--form {form} does not apply to linwit\n")
            return 2
        rep = verify_dimension_reduction(args.dimension, args.trials, args.seed)
        if form == "omega-last":
            rep.violations = rep.extra["omega_last_violations"]
            rep.examples = rep.extra["omega_last_examples"]
            rep.name += " (omega last)"
        reports.append(rep)
    elif args.identity in ("wit2", "recover4"):
        form = args.form or "negated"
        if args.identity == "wit2" and form not in ("negated", "plain"):
            sys.stderr.write(f"--form {form} does not apply to wit2\n")
            return 2
        if args.points:
            configs = [read_points(args.points, AFFINE)]
        else:
            configs = [random_rational_config(rng, 6, 3) for _ in range(args.trials)]
        for X in configs:
            if X.dim != 3:
                raise DimensionMismatch("this identity needs points in R^3")
            reports.append(verify_wit2(X, form) if args.identity == "wit2" else verify_recover4(X))
    elif args.identity == "parity":
        reports.append(verify_parity_invariance(args.dimension, args.trials, args.seed))
    checked = sum(r.checked for r in reports)
    violations = sum(r.violations for r in reports)
    name = reports[0].name if reports else args.identity
    out.write(f"{name}: instances={len(reports)} checked={checked} violations={violations}\n")
    for r in reports:
        for ex in r.examples[:3]:
            out.write(f"  violation: {ex}\n")
    return 1 if violations else 0


def cmd_reconstruct(args, out) -> int:
    with open(args.gauss, encoding="utf-8") as fh:
        G = parse_gauss(fh.read())
    pm = faces(G)
    verdict = check_realizable(G)
    out.write(pm.dump() + "\n")
    out.write("realizable\n" if verdict.realizable else f"not realizable: {verdict.reason}\n")
    return 0


def cmd_graphoid(args, out) -> int:
    with open(args.graph, encoding="utf-8") as fh:
        R = parse_graph(fh.read())
    validate_graph(R)
    x0 = args.start or R.graph.vertices[0]
    codes = {}
    if args.path in ("combinatorial", "both"):
        codes["combinatorial"] = serialize(extract_graphoid(strong_geometry(R.config, eager=False), R.graph, x0))
    if args.path in ("geometric", "both"):
        codes["geometric"] = serialize(extract_graphoid_geometric(R, x0))
    if len(set(codes.values())) > 1:
        sys.stderr.write("paths disagree\n" + "\n".join(f"{k}:\n{v}" for k, v in codes.items()) + "\n")
        return 1
    out.write(next(iter(codes.values())) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongeom", description="Chirotopes, wedge chirotopes and Gauss codes of polygonal knots.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chirotope", help="list the chirotope of a point file")
    c.add_argument("points")
    c.add_argument("--mode", choices=(LINEAR, AFFINE), default=AFFINE)
    c.set_defaults(func=cmd_chirotope)

    g = sub.add_parser("gauss", help="knotoid Gauss code of a polygonal knot projected from a vertex")
    g.add_argument("points")
    g.add_argument("--from", dest="start", type=int, default=0, help="witness vertex label (default 0)")
    g.add_argument("--path", choices=("combinatorial", "geometric", "both"), default="both")
    g.set_defaults(func=cmd_gauss)

    m = sub.add_parser("compare", help="compare the strong geometries of two point files")
    m.add_argument("a")
    m.add_argument("b")
    grp = m.add_mutually_exclusive_group()
    grp.add_argument("--map", help="file of 'LABEL: LABEL' lines mapping labels of A to labels of B")
    grp.add_argument("--search", action="store_true", help="search all label bijections")
    m.add_argument("--search-limit", type=int, default=9)
    m.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify", help="check an identity on seeded random instances")
    v.add_argument("--identity", choices=("rank3", "linwit", "wit2", "recover4", "parity"), required=True)
    v.add_argument("--dimension", type=int, default=3)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--points", help="point file (wit2, recover4)")
    v.add_argument("--form", choices=("omega-first", "omega-last", "negated", "plain"),
                   help="linwit: omega-first (default) or omega-last; wit2: negated (default) or plain")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reconstruct", help="faces and realizability of a Gauss diagram")
    r.add_argument("gauss")
    r.set_defaults(func=cmd_reconstruct)

    gr = sub.add_parser("graphoid", help="graphoid Gauss diagram of a linear spatial graph")
    gr.add_argument("graph")
    gr.add_argument("--from", dest="start", help="witness vertex name (default: first vertex)")
    gr.add_argument("--path", choices=("combinatorial", "geometric", "both"), default="both")
    gr.set_defaults(func=cmd_graphoid)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except tuple(cls for cls, _ in EXIT_CODES) as exc:
        for cls, code in EXIT_CODES:
            if isinstance(exc, cls):
                sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
