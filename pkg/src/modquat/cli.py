"""Command-line front end.

Exit codes: 0 no obstruction (or success), 2 bad input, 3 excluded,
4 no applicable criterion.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import jsonschema

from .criteria import (
    EXCLUDED,
    NO_OBSTRUCTION,
    ModularTriplet,
    RunOptions,
    check_theorem_Sh,
    compute_exceptional_set,
    compute_kappa_B,
    run_all,
)
from .quad_field import QQ, AlgInt, FieldDesc
from .quaternion_alg import QuatDisc, quat_discriminant
from .rational_arith import is_prime
from .table1 import FAIL, load_fixture, verify_fixture

EXIT_OK, EXIT_INPUT, EXIT_EXCLUDED, EXIT_NOT_APPLICABLE = 0, 2, 3, 4

CSV_HEADER = "M,N,status,witness_criterion,witness_ell"


class InputError(ValueError):
    """Malformed command-line or file input; maps to exit code 2."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("modquat").joinpath(f"data/{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate(obj: object, name: str) -> None:
    """Raise InputError naming the JSON pointer of the first schema violation."""
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        raise InputError(f"{name} schema violation at {pointer}: {err.message}")


# ---------------------------------------------------------------------------
# argument parsing helpers

_FIELD_RE = re.compile(r"Q\(sqrt\(?(\d+)\)?\)")


def parse_field(text: str) -> FieldDesc:
    """Accepts Q, Q(sqrtD), Q(sqrt(D)) or a JSON object like {"degree":2,"D":5}."""
    text = text.strip()
    try:
        if text == "Q":
            return QQ
        match = _FIELD_RE.fullmatch(text.replace(" ", ""))
        if match:
            return FieldDesc.quadratic(int(match.group(1)))
        obj = json.loads(text)
        if not isinstance(obj, dict):
            raise InputError(f"field must be a JSON object, got {text!r}")
        validate({"field": obj, "m": {"x": 1}, "disc": [{"p": 2}], "d": 1}, "triplet")
        return FieldDesc.from_json(obj)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse field {text!r}: {exc.msg}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_element(F: FieldDesc, text: str) -> AlgInt:
    """'x' or 'x,y' in the integral basis {1, w}."""
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise InputError(f"element must be 'x' or 'x,y', got {text!r}") from exc
    if len(parts) == 1:
        parts.append(0)
    if len(parts) != 2 or (F.degree == 1 and parts[1]):
        raise InputError(f"element must be 'x' or 'x,y', got {text!r}")
    return AlgInt(F, *parts)


def parse_disc(F: FieldDesc, text: str) -> QuatDisc:
    """A JSON list of prime objects, or comma-separated rational primes over Q."""
    text = text.strip()
    if text.startswith("["):
        try:
            entries = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"cannot parse discriminant: {exc.msg}") from exc
    else:
        try:
            entries = [{"p": int(p)} for p in text.split(",")]
        except ValueError as exc:
            raise InputError(f"discriminant must be a JSON list or '2,3', got {text!r}") from exc
    obj = {"field": F.to_json(), "m": {"x": 1}, "disc": entries, "d": 1}
    validate(obj, "triplet")
    try:
        return ModularTriplet.from_json(obj).disc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_range(text: str) -> list[int]:
    """'a:b' (inclusive) or a comma list; only odd primes are kept."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            values = range(lo, hi + 1)
        else:
            values = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"range must be 'a:b' or a comma list, got {text!r}") from exc
    out = [v for v in values if v > 2 and is_prime(v)]
    if not out:
        raise InputError(f"range {text!r} contains no odd prime")
    return out


def load_triplet(path: str, override_maximal: bool | None) -> ModularTriplet:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    validate(obj, "triplet")
    if override_maximal is not None:
        obj["assume_locally_maximal"] = override_maximal
    try:
        return ModularTriplet.from_json(obj)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _ell(text: str) -> int:
    value = int(text)
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def _bound(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("the bound must be at least 2")
    return value


def _bool(text: str) -> bool:
    if text.lower() in ("true", "1", "yes"):
        return True
    if text.lower() in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


# ---------------------------------------------------------------------------
# subcommands


def _emit(obj: object) -> None:
    print(json.dumps(obj, sort_keys=False))


def cmd_nset(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    S = compute_exceptional_set(F, args.ell, args.variant)
    if args.format == "text":
        print(f"{S.variant} exceptional set of ell = {S.ell} over {F}:")
        for P in S:
            print(f"  {P!s:<16} norm {P.q}")
    else:
        _emit(S.to_json())
    return EXIT_OK


def cmd_kappa(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    B = parse_disc(F, args.disc)
    _emit({"disc": B.to_json(), "kappa_B": compute_kappa_B(B)})
    return EXIT_OK


def cmd_disc(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    m = parse_element(F, args.m)
    try:
        B = quat_discriminant(args.d, m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(B.to_json())
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    t = load_triplet(args.triplet, args.assume_locally_maximal)
    verdict = run_all(t, RunOptions(args.ell_bound, args.eq1, args.sy))
    out = verdict.to_json()
    validate(out, "verdict")
    _emit(out)
    if verdict.status == EXCLUDED:
        return EXIT_EXCLUDED
    if verdict.status == NO_OBSTRUCTION:
        return EXIT_OK
    return EXIT_NOT_APPLICABLE


def sieve_row(job: tuple[int, int, int]) -> str:
    M, N, bound = job
    v = check_theorem_Sh(M, N, bound)
    if v.witness is None:
        return f"{M},{N},{v.status},,"
    ell = "" if v.witness.ell is None else v.witness.ell
    return f"{M},{N},{v.status},{v.witness.criterion},{ell}"


def sieve_lines(Ms: Sequence[int], Ns: Sequence[int], ell_bound: int, jobs: int) -> Iterable[str]:
    """CSV lines in input order; identical for every value of jobs."""
    work = [(M, N, ell_bound) for M in Ms for N in Ns if M != N]
    if jobs <= 1:
        rows = [sieve_row(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(sieve_row, work, chunksize=max(1, len(work) // (8 * jobs))))
    counts: dict[str, int] = {}
    for row in rows:
        status = row.split(",")[2]
        counts[status] = counts.get(status, 0) + 1
    yield CSV_HEADER
    yield from rows
    summary = ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
    yield f"# summary: pairs={len(rows)}, {summary}" if rows else "# summary: pairs=0"


def write_atomic(path: Path, lines: Iterable[str]) -> None:
    """Write lines to a temporary sibling and rename; no partial file survives a failure."""
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cmd_sieve_sh(args: argparse.Namespace) -> int:
    Ms, Ns = parse_range(args.M_range), parse_range(args.N_range)
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    lines = sieve_lines(Ms, Ns, args.ell_bound, args.jobs)
    if args.output in (None, "-"):
        for line in lines:
            sys.stdout.write(line + "\n")
    else:
        write_atomic(Path(args.output), lines)
    return EXIT_OK


def cmd_verify_table1(args: argparse.Namespace) -> int:
    try:
        fixture = load_fixture(args.fixture)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot load fixture: {exc}") from exc
    reports = verify_fixture(fixture)
    for r in reports:
        print(r.line())
    failed = [r for r in reports if r.status == FAIL]
    print(f"{len(reports) - len(failed)}/{len(reports)} rows without failures")
    return 1 if failed else EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 like every other input error
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="modquat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("nset", help="exceptional prime ideals for a prime ell")
    s.add_argument("--field", default="Q")
    s.add_argument("--ell", type=_ell, required=True)
    s.add_argument("--variant", choices=("full", "reduced"), default="full")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_nset)

    s = sub.add_parser("kappa", help="the root-of-unity bound kappa(B) of a discriminant")
    s.add_argument("--field", default="Q")
    s.add_argument("--disc", required=True, help="'2,3' over Q, or a JSON list of prime objects")
    s.set_defaults(func=cmd_kappa)

    s = sub.add_parser("disc", help="reduced discriminant of (-d, m / F)")
    s.add_argument("--field", default="Q")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", required=True, help="'x' or 'x,y' meaning x + y*w")
    s.set_defaults(func=cmd_disc)

    s = sub.add_parser("check", help="run every criterion on a triplet JSON file ('-' for stdin)")
    s.add_argument("triplet")
    s.add_argument("--ell-bound", type=_bound, default=100)
    s.add_argument("--assume-locally-maximal", type=_bool, default=None,
                   help="override the flag stored in the triplet")
    s.add_argument("--eq1", action="store_true", help="also require D = disc(-d, m / F)")
    s.add_argument("--sy", action="store_true", help="also require D = (m) or (mN) over Q")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("sieve-sh", help="sieve pairs (M, N) of odd primes into CSV")
    s.add_argument("--M-range", required=True, help="'a:b' inclusive or '3,7,11'")
    s.add_argument("--N-range", required=True)
    s.add_argument("--ell-bound", type=_bound, default=100)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--output", "-o", default=None)
    s.set_defaults(func=cmd_sieve_sh)

    s = sub.add_parser("verify-table1", help="check the stored table of known modular pairs")
    s.add_argument("fixture", nargs="?", default=None)
    s.set_defaults(func=cmd_verify_table1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
