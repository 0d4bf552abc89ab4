"""Command-line surface: generate code sets, verify properties, print the
coset-count table, dump correlation profiles, and evaluate PMEPR.

Exit codes: 0 success / all checks pass, 1 property failure, 2 usage or
input error.  JSON documents are deterministic: fixed key order, no
timestamps, integers only in phase arrays.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import ParameterError, Params, PhaseSequence
from .construct import (
    CodeMatrix,
    CodeSet,
    ConstraintError,
    Partition,
    build_ccc,
    build_cczcz_theorem1,
    build_cczcz_theorem2,
    build_pmepr_reduced,
)
from .correlation import accf_profile, factor_prime_power, pccf_profile
from .grm import count_coset_reps, count_sets_in_coset, grm_min_distance
from .pmepr import OFDMConfig, column_pmepr_report, row_pmepr_report
from .verify import (
    classify_optimality,
    measure_zcz,
    verify_ccc,
    verify_cczcz,
    verify_gcs,
    verify_golay_zcz,
)

SCHEMA_VERSION = "1"

_BUILDERS = {
    "ccc": build_ccc,
    "thm1": build_cczcz_theorem1,
    "thm2": build_cczcz_theorem2,
    "pmepr-reduced": build_pmepr_reduced,
}


class InputError(ValueError):
    """Malformed document or flag combination (exit code 2)."""


def parse_partition(spec: str) -> list:
    """Partition grammar: blocks separated by '|', each block the ordered
    list pi(1),...,pi(n) as comma-separated integers."""
    try:
        paths = [tuple(int(x) for x in blk.split(",")) for blk in spec.split("|")]
    except ValueError as exc:
        raise InputError(f"bad partition spec {spec!r}: {exc}") from None
    if not paths or any(not p for p in paths):
        raise InputError(f"bad partition spec {spec!r}")
    return paths


def document_from_codeset(S: CodeSet) -> dict:
    prov = S.provenance
    doc = {
        "schema_version": SCHEMA_VERSION,
        "builder": prov["builder"],
        "params": {
            "p": prov["p"],
            "n": prov["n"],
            "lambda": prov["p"] ** prov["n"],
            "m": prov["m"],
            "k": prov["k"],
        },
        "partition": {
            "blocks": [sorted(path) for path in prov["paths"]],
            "permutations": [list(path) for path in prov["paths"]],
        },
        "g": list(prov["g"]),
        "b0": prov["b0"],
    }
    if "strict" in prov:
        doc["strict"] = prov["strict"]
    if S.claimed_Z is not None:
        doc["claimed_Z"] = S.claimed_Z
    if prov["builder"] == "pmepr-reduced":
        doc["pi_prime"] = list(prov["pi_prime"])
        doc["t"] = prov["t"]
        doc["l"] = prov["l"]
    doc["codes"] = [[row.phases.tolist() for row in c.rows] for c in S.codes]
    return doc


def codeset_from_document(doc: dict) -> CodeSet:
    """Reconstruct a CodeSet from a document without re-running the builder."""
    try:
        if doc["schema_version"] != SCHEMA_VERSION:
            raise InputError(f"unsupported schema_version {doc['schema_version']!r}")
        params = doc["params"]
        lam = params["lambda"]
        if lam != params["p"] ** params["n"]:
            raise InputError("lambda does not equal p**n")
        prov = {
            "builder": doc["builder"],
            "p": params["p"],
            "n": params["n"],
            "m": params["m"],
            "k": params["k"],
            "paths": [list(path) for path in doc["partition"]["permutations"]],
            "g": list(doc["g"]),
            "b0": doc["b0"],
        }
        for key in ("strict", "pi_prime", "t", "l"):
            if key in doc:
                prov[key] = doc[key]
        claimed = doc.get("claimed_Z")
        codes = []
        for u, mat in enumerate(doc["codes"]):
            rows = tuple(PhaseSequence(np.array(r, dtype=np.int64), lam) for r in mat)
            if any((r.phases < 0).any() for r in rows):
                raise InputError("negative phase entry")
            codes.append(CodeMatrix(rows, label=u, provenance=prov))
        if not codes:
            raise InputError("document has no codes")
        return CodeSet(tuple(codes), claimed_Z=claimed, provenance=prov)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed document: {exc}") from None


def rebuild_from_document(doc: dict) -> CodeSet:
    """Re-run the recorded builder on the embedded parameters."""
    params = doc["params"]
    prm = Params(p=params["p"], m=params["m"], k=params["k"], n=params["n"])
    part = Partition(prm, tuple(tuple(p) for p in doc["partition"]["permutations"]))
    builder = doc["builder"]
    kwargs = {}
    if builder in ("thm1", "thm2"):
        kwargs["strict"] = doc.get("strict", True)
    if builder == "pmepr-reduced":
        kwargs.update(pi_prime=doc["pi_prime"], t=doc["t"], l=doc["l"])
    return _BUILDERS[builder](part, doc["g"], doc["b0"], **kwargs)


def write_csv(S: CodeSet, fh) -> None:
    """Lossy CSV export: structural header, then one row per sequence."""
    K = len(S.codes)
    M, L = S.codes[0].shape
    fh.write(f"{K},{M},{L},{S.lam}\n")
    for c in S.codes:
        for row in c.rows:
            fh.write(",".join(str(int(x)) for x in row.phases) + "\n")


def read_csv(fh) -> CodeSet:
    try:
        header = fh.readline().strip().split(",")
        K, M, L, lam = (int(x) for x in header)
        p, n = factor_prime_power(lam)
        m = round(np.log(L) / np.log(p))
        k = round(np.log(K) / np.log(p))
        if p**m != L or p**k != K:
            raise InputError("CSV dimensions are not powers of the alphabet prime")
        rows = [np.array([int(x) for x in line.strip().split(",")], dtype=np.int64)
                for line in fh if line.strip()]
        if len(rows) != K * M or any(len(r) != L for r in rows):
            raise InputError("CSV body does not match its header")
        prov = {"builder": "csv-import", "p": p, "n": n, "m": m, "k": k,
                "paths": [], "g": [], "b0": 0}
        codes = tuple(
            CodeMatrix(tuple(PhaseSequence(r, lam) for r in rows[u * M:(u + 1) * M]),
                       label=u, provenance=prov)
            for u in range(K)
        )
        return CodeSet(codes, claimed_Z=None, provenance=prov)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed CSV: {exc}") from None


def load_codeset(path: str) -> CodeSet:
    try:
        with open(path) as fh:
            if path.endswith(".csv"):
                return read_csv(fh)
            return codeset_from_document(json.load(fh))
    except OSError as exc:
        raise InputError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    prm = Params(p=args.p, m=args.m, k=args.k, n=args.n)
    part = Partition(prm, tuple(tuple(b) for b in parse_partition(args.partition)))
    g = [int(x) for x in args.g.split(",")] if args.g else None
    if args.builder == "ccc":
        S = build_ccc(part, g, args.b0)
    elif args.builder == "thm1":
        S = build_cczcz_theorem1(part, g, args.b0, strict=args.strict)
    elif args.builder == "thm2":
        S = build_cczcz_theorem2(part, g, args.b0, strict=args.strict)
    else:
        pi_prime = [int(x) for x in args.pi_prime.split(",")] if args.pi_prime else None
        S = build_pmepr_reduced(part, g, args.b0, pi_prime=pi_prime, t=args.t, l=args.l)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "json":
            out.write(json.dumps(document_from_codeset(S), indent=2) + "\n")
        else:
            write_csv(S, out)
    finally:
        if args.out:
            out.close()
    return 0


def _verify_lines(S: CodeSet, requested: str, measure: bool, claimed_override: int | None):
    claimed = claimed_override if claimed_override is not None else S.claimed_Z
    lines, reports, ok = [], {}, True
    want = (
        ["gcs", "ccc"] + (["golay-zcz", "cc-zcz"] if claimed is not None else [])
        if requested == "all"
        else [requested]
    )
    for prop in want:
        if prop == "gcs":
            reps = [verify_gcs(c) for c in S.codes]
            ok &= all(r.passed for r in reps)
            for i, r in enumerate(reps):
                lines.append(f"gcs code={i}: {'PASS' if r.passed else 'FAIL'}")
            reports["gcs"] = [r.__dict__ for r in reps]
        elif prop == "ccc":
            r = verify_ccc(S)
            ok &= r.passed
            lines.append(f"ccc ({len(S.codes)} codes): {'PASS' if r.passed else 'FAIL'}")
            reports["ccc"] = r.__dict__
        elif prop in ("zcz", "golay-zcz", "cc-zcz"):
            if claimed is None:
                raise InputError(f"--property {prop} needs claimed_Z (document or --claimed-z)")
            if prop == "zcz":
                zs = [measure_zcz(c.rows) for c in S.codes]
                passed = all(z >= claimed for z in zs)
                ok &= passed
                lines.append(
                    f"zcz claimed={claimed} measured={min(zs)}: {'PASS' if passed else 'FAIL'}"
                )
                reports["zcz"] = {"claimed_Z": claimed, "Z_measured": min(zs), "passed": passed}
            elif prop == "golay-zcz":
                reps = [verify_golay_zcz(c, claimed) for c in S.codes]
                ok &= all(r.passed for r in reps)
                for i, r in enumerate(reps):
                    lines.append(
                        f"golay-zcz code={i} Z={r.measured['Z_measured']}: "
                        f"{'PASS' if r.passed else 'FAIL'}"
                    )
                reports["golay-zcz"] = [r.__dict__ for r in reps]
            else:
                S2 = S if claimed_override is None else CodeSet(S.codes, claimed, S.provenance)
                r = verify_cczcz(S2)
                ok &= r.passed
                lines.append(
                    f"cc-zcz claimed={claimed} measured={r.measured['Z_measured']}: "
                    f"{'PASS' if r.passed else 'FAIL'}"
                )
                reports["cc-zcz"] = r.__dict__
        else:
            raise InputError(f"unknown property {prop!r}")
    if requested == "all" and claimed is not None:
        K = len(S.codes)
        M, L = S.codes[0].shape
        z = min(measure_zcz(c.rows) for c in S.codes)
        try:
            verdict = classify_optimality(K, L, z, S.provenance["p"])
            lines.append(f"optimality: {verdict}")
            reports["optimality"] = {"kind": verdict.kind, "ratio": str(verdict.ratio)}
        except ValueError as exc:
            lines.append(f"optimality: {exc}")
    if measure:
        zs = [measure_zcz(c.rows) for c in S.codes]
        lines.append(f"Z_measured per code: {zs}")
        reports["Z_measured"] = zs
    return lines, reports, ok


def cmd_verify(args) -> int:
    S = load_codeset(args.infile)
    lines, reports, ok = _verify_lines(S, args.property, args.measure_zcz, args.claimed_z)
    for ln in lines:
        print(ln)
    if args.json:
        payload = json.dumps({"passed": ok, "reports": reports}, indent=2, default=str)
        if args.json == "-":
            print(payload)
        else:
            with open(args.json, "w") as fh:
                fh.write(payload + "\n")
    return 0 if ok else 1


def _parse_range(spec: str) -> list:
    if "-" in spec:
        lo, hi = spec.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def cmd_table1(args) -> int:
    p = args.p
    header = f"{'m':>3} {'k':>3} {'(K,K,L,Z)':>18} {'N(Q1)':>7} {'N(CZ)':>7} {'N(GZ)':>7} {'d':>6}"
    print(header)
    for m in _parse_range(args.m_range):
        ks = _parse_range(args.k_range) if args.k_range else range(1, m)
        for k in ks:
            if not 1 <= k <= m - 1:
                print(f"{m:>3} {k:>3} {'infeasible':>18}")
                continue
            K = p**k
            L = p**m
            Z = (p - 1) * p ** (m - k - 1)
            nq1 = count_coset_reps(p, m, k, "theorem1")
            ncz, ngz = count_sets_in_coset(p, m, k)
            d = grm_min_distance(p, m, 1)
            print(
                f"{m:>3} {k:>3} {f'({K},{K},{L},{Z})':>18} {nq1:>7} {ncz:>7} {ngz:>7} {d:>6}"
            )
    return 0


def cmd_profile(args) -> int:
    S = load_codeset(args.infile)
    if not 0 <= args.code < len(S.codes):
        raise InputError(f"code index {args.code} out of range")
    C = S.codes[args.code]
    auto = args.type in ("aacf", "pacf")
    if auto:
        i = j = args.row
    else:
        if not args.pair:
            raise InputError(f"--pair i,j required for type {args.type}")
        i, j = (int(x) for x in args.pair.split(","))
    M = len(C.rows)
    if not (0 <= i < M and 0 <= j < M):
        raise InputError(f"row index out of range 0..{M - 1}")
    prof = (
        accf_profile(C.rows[i], C.rows[j])
        if args.type in ("aacf", "accf")
        else pccf_profile(C.rows[i], C.rows[j])
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        out.write("shift,real,imag,exact_is_zero\n")
        for shift, val in zip(prof.shifts, prof.values):
            z = val.embed()
            out.write(f"{shift},{z.real:.12g},{z.imag:.12g},{int(val.is_zero)}\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_pmepr(args) -> int:
    S = load_codeset(args.infile)
    cfg = OFDMConfig(oversampling=args.oversampling)
    worst = 0.0
    for idx, C in enumerate(S.codes):
        rep = row_pmepr_report(C, cfg) if args.axis == "row" else column_pmepr_report(C, cfg)
        worst = max(worst, rep.max)
        verdict = "" if rep.within_bound is None else f" bound={rep.bound} {'OK' if rep.within_bound else 'EXCEEDED'}"
        print(f"code={idx} axis={args.axis} max_pmepr={rep.max:.4f}{verdict}")
    print(f"overall max_pmepr={worst:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cczcz",
        description="Construct and verify complementary / zero-correlation-zone code sets.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a code set and emit a document")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--builder", choices=sorted(_BUILDERS), required=True)
    g.add_argument("--partition", required=True, help="e.g. '5,3,1|4,2'")
    g.add_argument("--g", default=None, help="comma-separated linear coefficients")
    g.add_argument("--b0", type=int, default=0)
    g.add_argument("--strict", action="store_true")
    g.add_argument("--pi-prime", default=None, help="pmepr-reduced block permutation")
    g.add_argument("--t", type=int, default=0)
    g.add_argument("--l", type=int, default=0)
    g.add_argument("--out", default=None)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="verify properties of a document")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument(
        "--property",
        choices=("gcs", "ccc", "zcz", "golay-zcz", "cc-zcz", "all"),
        default="all",
    )
    v.add_argument("--measure-zcz", action="store_true")
    v.add_argument("--claimed-z", type=int, default=None)
    v.add_argument("--json", default=None, help="write machine report here ('-' = stdout)")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table1", help="coset-representative and set counts")
    t.add_argument("--p", type=int, default=3)
    t.add_argument("--m-range", default="3-5")
    t.add_argument("--k-range", default=None)
    t.set_defaults(func=cmd_table1)

    pr = sub.add_parser("profile", help="dump a correlation profile as CSV")
    pr.add_argument("--in", dest="infile", required=True)
    pr.add_argument("--code", type=int, required=True)
    pr.add_argument("--row", type=int, default=0)
    pr.add_argument("--pair", default=None)
    pr.add_argument("--type", choices=("aacf", "accf", "pacf", "pccf"), required=True)
    pr.add_argument("--out", default=None)
    pr.set_defaults(func=cmd_profile)

    pm = sub.add_parser("pmepr", help="row/column PMEPR of a document")
    pm.add_argument("--in", dest="infile", required=True)
    pm.add_argument("--axis", choices=("row", "column"), required=True)
    pm.add_argument("--oversampling", type=int, default=16)
    pm.set_defaults(func=cmd_pmepr)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParameterError, ConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
