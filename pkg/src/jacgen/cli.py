"""Command-line interface: ``jacgen <verb> [subcommand] [flags]``.

Verbs: ``gf`` and ``table`` emit series, ``necklace`` and ``universal`` run the
combinatorial classification, ``cache`` manages stored series.

Exit codes: 0 success, 2 invalid flags or input (or an unwritable cache
directory), 3 degenerate wall or polarisation, 4 outside the Tate range.
Output is assembled in memory and written only on success; ``--output``
files are replaced atomically.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cache, genfun, necklace, universal
from .errors import (
    DegeneratePolarisation,
    DegenerateWall,
    JacgenError,
    NonTateRegime,
)
from .symfun import change_basis, to_document

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_NON_TATE = 4


class UsageError(Exception):
    pass


# -- parsing helpers ---------------------------------------------------------


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _frac_list(text: str) -> tuple:
    try:
        return tuple(Fraction(t) for t in text.replace(" ", "").split(",") if t)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated fractions, got {text!r}")


def _frac(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _vec(v) -> str:
    return "(" + ",".join(_frac(x) for x in v) + ")"


def _dump(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def _load_f(source: str, n: int) -> universal.FFunction:
    if source == "exotic":
        return universal.exotic_f(n)
    if source == "zero":
        return universal.FFunction.zero(n)
    try:
        doc = json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read f from {source!r}: {exc}")
    f = universal.FFunction.from_document(doc)
    if f.n != n:
        raise UsageError(f"file describes n={f.n}, but --n {n} was given")
    return f


# -- series -----------------------------------------------------------------


def _series(args):
    return genfun.series(args.series, args.max_n, use_cache=not args.no_cache)


def _pretty_rows(s, basis):
    for lam, v in change_basis(s, basis, integral=(basis == "schur")):
        yield f"n={sum(lam)} [{','.join(map(str, lam))}] {v.pretty()}"


def cmd_gf(args) -> str:
    s = _series(args)
    if args.format == "structured":
        return _dump(to_document(s, args.basis))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "partition", "L_coeffs_ascending"])
        for lam, v in change_basis(s, args.basis, integral=(args.basis == "schur")):
            coeffs = json.dumps(v.to_json(), separators=(",", ":"))
            w.writerow([sum(lam), json.dumps(list(lam), separators=(",", ":")), coeffs])
        return buf.getvalue()
    return "".join(row + "\n" for row in _pretty_rows(s, args.basis))


def cmd_table(args) -> str:
    s = _series(args)
    rows = change_basis(s, args.basis, integral=(args.basis == "schur"))
    by_degree: dict = {}
    for lam, v in rows:
        by_degree.setdefault(sum(lam), []).append((lam, v))
    out = []
    for n in range(args.min_n, args.max_n + 1):
        entries = by_degree.get(n, [])
        out.append(f"{args.series}  n = {n}")
        width = max((len(_bracket(lam)) for lam, _ in entries), default=0)
        for lam, v in entries:
            out.append(f"  {_bracket(lam).ljust(width)}  {v.pretty()}")
        out.append("")
    return "\n".join(out)


def _bracket(lam) -> str:
    return "[" + ",".join(map(str, lam)) + "]"


# -- necklace ---------------------------------------------------------------


def _cycle_str(c) -> str:
    return "(" + " ".join(map(str, c)) + ")"


def cmd_necklace_enumerate(args) -> str:
    if args.n < 1:
        raise UsageError("--n must be positive")
    fcjs = necklace.enumerate_smoothable(args.n, args.degree)
    if args.format == "structured":
        docs = []
        for fc in fcjs:
            doc = fc.to_document()
            doc["cycle"] = list(necklace.to_cycle(fc))
            docs.append(doc)
        return _dump(docs)
    out = []
    for fc in fcjs:
        cols = [_cycle_str(necklace.to_cycle(fc))] + [_vec(c) for c in fc.components]
        cols.append(_vec(necklace.polarisation_of(fc).phi))
        out.append("  ".join(cols))
    return "\n".join(out) + "\n"


def cmd_necklace_validate(args) -> str:
    seq = _int_list(args.seq)
    res = necklace.validate_seq(args.n, seq)
    doc = {"n": args.n, "seq": list(seq), "valid": res.valid, "rho": res.rho, "reason": res.reason}
    if res.valid:
        base = _int_list(args.base) if args.base else necklace.normalized_base(args.n, args.degree)
        fc = necklace.build_fcj(args.n, sum(base), base, seq)
        doc.update({k: v for k, v in fc.to_document().items() if k not in doc})
    else:
        doc["smoothable"] = False
    return _dump(doc)


def cmd_necklace_stable(args) -> str:
    pol = necklace.Polarisation(_frac_list(args.phi))
    degs = sorted(necklace.stable_multidegrees(pol))
    return _dump({"phi": [_frac(v) for v in pol.phi], "multidegrees": [list(d) for d in degs]})


# -- universal --------------------------------------------------------------


def cmd_universal_check_f(args) -> str:
    f = _load_f(args.f, args.n)
    rec = universal.pair_check(f, universal.GFunction.zero(args.n))
    return _dump({
        "n": args.n,
        "mildly_superadditive": rec.valid,
        "violation": None if rec.violation is None else [list(s) for s in rec.violation],
    })


def cmd_universal_realizable(args) -> str:
    f = _load_f(args.f, args.n)
    res = universal.realizable_phi(f)
    head = "feasible" if res.feasible else "infeasible"
    return head + "\n" + _dump(res.to_document())


def cmd_universal_exotic(args) -> str:
    f = universal.exotic_f(args.n)
    doc = {"f": f.to_document()}
    if args.check:
        ok, pair = universal.is_mildly_superadditive(f)
        doc["mildly_superadditive"] = ok
        doc["violation"] = None if pair is None else [list(s) for s in pair]
        res = universal.realizable_phi(f)
        doc["realizable"] = res.to_document()
        if res.certificate is not None:
            doc["certificate_verified"] = universal.verify_certificate(f, res.certificate)
    return _dump(doc)


def cmd_universal_count(args) -> str:
    return f"{universal.count_translation_classes(args.n, bound=args.bound)}\n"


def cmd_universal_f_from_phi(args) -> str:
    return _dump(universal.f_from_phi(_frac_list(args.x)).to_document())


# -- cache --------------------------------------------------------------------


def cmd_cache_status(args) -> str:
    root = cache.cache_dir()
    out = [f"cache directory: {root}"]
    rows = cache.entries()
    if not rows:
        out.append("no cached series")
    for name, size in rows:
        stem = name[: -len(cache.SUFFIX)]
        tag, deg, version = stem.rsplit("-", 2)
        out.append(f"{tag}-{deg}  version {version[1:]}  {size} bytes")
    return "\n".join(out) + "\n"


def cmd_cache_clear(args) -> str:
    try:
        removed = cache.clear()
    except OSError as exc:
        raise UsageError(f"cannot clear cache directory: {exc}")
    return f"removed {removed} cached series\n"


def cmd_cache_warm(args) -> str:
    sid = genfun.SeriesId(args.series, args.max_n)
    sid.check_guard()
    path = cache.cache_dir() / sid.filename
    if path.is_file():
        return f"{sid.filename} already cached\n"
    s = genfun.series(sid.tag, sid.max_degree, use_cache=False)
    try:
        cache.atomic_write(path, cache.dumps(s))
    except OSError as exc:
        raise UsageError(f"cache directory is not writable: {exc}")
    return f"wrote {sid.filename}\n"


# -- parser -----------------------------------------------------------------


def _add_series_flags(p):
    p.add_argument("--series", required=True, help="series tag: " + ", ".join(genfun.TAGS))
    p.add_argument("--max-n", type=int, required=True, help="truncation degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacgen", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True)

    gf = verbs.add_parser("gf", help="emit a generating function")
    _add_series_flags(gf)
    gf.add_argument("--basis", choices=("schur", "powersum", "homogeneous"), default="schur")
    gf.add_argument("--format", choices=("pretty", "csv", "structured"), default="pretty")
    gf.add_argument("--output", help="write to this file instead of stdout")
    gf.add_argument("--no-cache", action="store_true", help="ignore the on-disk cache")
    gf.set_defaults(func=cmd_gf)

    table = verbs.add_parser("table", help="print a series as per-degree tables")
    _add_series_flags(table)
    table.add_argument("--min-n", type=int, default=1)
    table.add_argument("--basis", choices=("schur", "powersum", "homogeneous"), default="schur")
    table.add_argument("--output")
    table.add_argument("--no-cache", action="store_true")
    table.set_defaults(func=cmd_table)

    neck = verbs.add_parser("necklace", help="compactified Jacobians of necklace curves")
    nsub = neck.add_subparsers(dest="sub", required=True)
    en = nsub.add_parser("enumerate", help="all smoothable Jacobians, one per n-cycle")
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--degree", type=int, default=0)
    en.add_argument("--format", choices=("pretty", "structured"), default="pretty")
    en.add_argument("--output")
    en.set_defaults(func=cmd_necklace_enumerate)
    va = nsub.add_parser("validate", help="check a node sequence")
    va.add_argument("--n", type=int, required=True)
    va.add_argument("--seq", required=True, help="comma-separated node indices")
    va.add_argument("--degree", type=int, default=0)
    va.add_argument("--base", help="comma-separated base multidegree (default degree*e_1)")
    va.add_argument("--output")
    va.set_defaults(func=cmd_necklace_validate)
    st = nsub.add_parser("stable", help="stable multidegrees of a polarisation")
    st.add_argument("--phi", required=True, help="comma-separated fractions")
    st.add_argument("--output")
    st.set_defaults(func=cmd_necklace_stable)

    uni = verbs.add_parser("universal", help="the (f, g) classification")
    usub = uni.add_subparsers(dest="sub", required=True)
    for name, func, help_ in (
        ("check-f", cmd_universal_check_f, "mild superadditivity of f"),
        ("realizable", cmd_universal_realizable, "decide whether f comes from a polarisation"),
    ):
        p = usub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--f", required=True, help="'exotic', 'zero', or a JSON file")
        p.add_argument("--output")
        p.set_defaults(func=func)
    ex = usub.add_parser("exotic", help="the non-polarisable example")
    ex.add_argument("--n", type=int, default=6)
    ex.add_argument("--check", action="store_true", help="verify and print a certificate")
    ex.add_argument("--output")
    ex.set_defaults(func=cmd_universal_exotic)
    co = usub.add_parser("count", help="translation classes with zero singleton values")
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--bound", type=int, default=universal.DEFAULT_COUNT_BOUND)
    co.add_argument("--output")
    co.set_defaults(func=cmd_universal_count)
    fp = usub.add_parser("f-from-phi", help="floor of subset sums of x")
    fp.add_argument("--x", required=True, help="comma-separated fractions")
    fp.add_argument("--output")
    fp.set_defaults(func=cmd_universal_f_from_phi)

    ca = verbs.add_parser("cache", help="manage the series cache")
    csub = ca.add_subparsers(dest="sub", required=True)
    csub.add_parser("status").set_defaults(func=cmd_cache_status, output=None)
    csub.add_parser("clear").set_defaults(func=cmd_cache_clear, output=None)
    wa = csub.add_parser("warm")
    _add_series_flags(wa)
    wa.set_defaults(func=cmd_cache_warm, output=None)
    return parser


def _emit(text: str, output):
    if output:
        try:
            cache.atomic_write(Path(output), text)
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc}")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
        _emit(text, getattr(args, "output", None))
    except NonTateRegime as exc:
        print(f"jacgen: {exc}", file=sys.stderr)
        return EXIT_NON_TATE
    except (DegenerateWall, DegeneratePolarisation) as exc:
        print(f"jacgen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, JacgenError, ValueError) as exc:
        print(f"jacgen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
