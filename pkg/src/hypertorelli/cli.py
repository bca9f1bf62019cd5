"""Command line entry point: matrices, complexes and verification suites."""

from __future__ import annotations

import json
import sys
import time
from typing import Dict, Iterable, List, Optional, Tuple

import click

from . import __version__
from .braid_burau import burau_symplectic, lift_class, parse_braid, unreduced_burau_t_minus1
from .complexes import ResourceBoundExceeded, build_ib_f2, build_ibhat_f2, build_tits_f2, homology_profile
from .exact_linalg import as_matrix, matrix_to_json
from .marked_disk import parse_curve
from .reporting import RunManifest, write_report
from .suites import SUITES, run_suite as _run_one
from .symplectic import (
    enumerate_sp_f2,
    lift_mod2,
    lift_mod2_stabilizer,
    reduce_mod2,
    stabilizer_corrector_pair,
    stabilizer_corrector_single,
)

__all__ = ["main", "run_suite", "run_all", "SUITE_RANGES"]

# genus values each suite supports; None means the suite takes no genus
SUITE_RANGES: Dict[str, Optional[Tuple[int, int]]] = {
    "sp-relations": (3, 5),
    "reducibility": (3, 5),
    "q-shadow": (3, 4),
    "the-fact": (3, 5),
    "burau-kernel": (1, 4),
    "alg-intersection": (3, 5),
    "enumeration": (1, 3),
    "complex-homology": (1, 3),
    "abelianization": None,
    "sphere-filling": None,
    "constructive": None,
    "setsofvec": None,
}

# sizes used when a suite is run without a --g option
DEFAULT_G: Dict[str, List[int]] = {
    "sp-relations": [3, 4, 5],
    "reducibility": [3, 4, 5],
    "q-shadow": [3, 4],
    "the-fact": [3, 4],
    "burau-kernel": [1, 2, 3, 4],
    "alg-intersection": [3, 4],
    "enumeration": [1, 2, 3],
    "complex-homology": [1, 2, 3],
}


class UsageError(click.UsageError):
    pass


def parse_g_range(text: str) -> List[int]:
    """'3' -> [3]; '3..5' -> [3, 4, 5]; '3,5' -> [3, 5]."""
    out: List[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                if lo > hi:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad genus range {text!r}")
    return sorted(set(out))


def run_suite(name: str, g_values: Optional[Iterable[int]] = None, seed: int = 0, **params) -> RunManifest:
    """Run one suite over the given genus values and collect a manifest."""
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    span = SUITE_RANGES[name]
    if span is None:
        gs: List[Optional[int]] = [None]
    else:
        gs = list(g_values) if g_values is not None else DEFAULT_G[name]
        bad = [g for g in gs if not span[0] <= g <= span[1]]
        if bad:
            raise UsageError(f"{name} supports g in {span[0]}..{span[1]}, got {bad}")
    t0 = time.perf_counter()
    manifest = RunManifest(name, [g for g in gs if g is not None], seed, __version__)
    for g in gs:
        kw = dict(params, seed=seed)
        if g is not None:
            kw["g"] = g
        manifest.reports.append(_run_one(name, **kw))
    manifest.elapsed_ms = int(1000 * (time.perf_counter() - t0))
    return manifest


def run_all(g_max: int, seed: int = 0) -> RunManifest:
    """Every suite at every supported genus up to g_max; unsupported sizes are recorded as skips."""
    if not 1 <= g_max <= 5:
        raise UsageError("g_max must be between 1 and 5")
    t0 = time.perf_counter()
    manifest = RunManifest("all", list(range(1, g_max + 1)), seed, __version__)
    for name in SUITES:
        span = SUITE_RANGES[name]
        if span is None:
            manifest.reports.append(_run_one(name, seed=seed))
            continue
        for g in range(span[0], g_max + 1):
            if g > span[1]:
                manifest.skipped.append({"suite": name, "g": g, "reason": _skip_reason(name)})
                continue
            manifest.reports.append(_run_one(name, g=g, seed=seed))
    manifest.elapsed_ms = int(1000 * (time.perf_counter() - t0))
    return manifest


def _skip_reason(name: str) -> str:
    if name == "complex-homology":
        return "resource gate: complexes over F2 are built for g <= 3"
    if name == "enumeration":
        return "resource gate: Sp(F2) closure is limited to g <= 3"
    return f"{name} is defined for g <= {SUITE_RANGES[name][1]}"


# ------------------------------------------------------------------ output


class Output:
    def __init__(self, quiet: bool, verbose: bool, timing: bool):
        self.quiet = quiet
        self.verbose = verbose
        self.timing = timing

    def say(self, text: str) -> None:
        if not self.quiet:
            click.echo(text)

    def detail(self, text: str) -> None:
        if self.verbose and not self.quiet:
            click.echo(text)

    def json(self, payload) -> None:
        click.echo(json.dumps(payload, sort_keys=True))


def _emit_manifest(out: Output, manifest: RunManifest, report: Optional[str]) -> None:
    payload = manifest.to_json(timing=out.timing)
    for r in manifest.reports:
        tag = "PASS" if r.ok else "FAIL"
        g = "" if r.g is None else f" g={r.g}"
        ms = f" {r.elapsed_ms} ms" if out.timing else ""
        out.say(f"{tag} {r.suite}{g}: {r.total_cases} cases, {len(r.failures)} failures{ms}")
        for f in r.failures[:5] if not out.verbose else r.failures:
            out.detail(f"  {f['case_id']}: expected {f['expected']}, got {json.dumps(f['got'])[:200]}")
    for s in manifest.skipped:
        out.say(f"SKIP {s['suite']} g={s['g']}: {s['reason']}")
    if report:
        for p in write_report(report, payload):
            out.detail(f"wrote {p}")
    if out.quiet:
        return
    out.say("ok" if manifest.ok else f"{len(manifest.failures)} failures")


def _load_matrix(text: str) -> Tuple[Tuple[int, ...], ...]:
    """A matrix as a JSON list of rows or a {dims, entries} object."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix is not valid JSON: {exc}")
    rows = obj["entries"] if isinstance(obj, dict) else obj
    try:
        m = as_matrix(rows)
    except (TypeError, ValueError):
        raise UsageError("matrix entries must be integers")
    if not m or any(len(r) != len(m) for r in m) or len(m) % 2:
        raise UsageError("matrix must be square of even size")
    return m


# -------------------------------------------------------------------- click


def _output_options(f):
    """Let --quiet/--verbose/--no-timing also follow the subcommand name."""

    def merge(ctx: click.Context, param: click.Parameter, value):
        out = ctx.find_object(Output)
        if value and out is not None:
            if param.name == "quiet":
                out.quiet = True
            elif param.name == "verbose":
                out.verbose = True
            else:
                out.timing = False
        return value

    for name, text in (
        ("no_timing", "Zero every elapsed_ms."),
        ("verbose", "List failing cases and written files."),
        ("quiet", "Suppress the summary lines."),
    ):
        flag = "--" + name.replace("_", "-")
        f = click.option(flag, name, is_flag=True, expose_value=False, callback=merge, help=text)(f)
    return f


@click.group()
@click.version_option(__version__, prog_name="hypertorelli")
@click.option("--quiet", "verbosity", flag_value="quiet", help="Only the exit code and requested JSON.")
@click.option("--verbose", "verbosity", flag_value="verbose", help="List failing cases and written files.")
@click.option("--no-timing", is_flag=True, help="Zero every elapsed_ms so reports are byte-identical across runs.")
@click.pass_context
def cli(ctx: click.Context, verbosity: Optional[str], no_timing: bool) -> None:
    """Hyperelliptic Torelli toolkit: Burau images, Sp(2g) constructions,
    arithmetic complexes and exhaustive verification suites."""
    ctx.obj = Output(verbosity == "quiet", verbosity == "verbose", not no_timing)


@cli.command()
@click.argument("word")
@click.option("--n", "n", type=int, required=True, help="Number of strands.")
@click.option("--unreduced", is_flag=True, help="Full n x n Burau matrix at t = -1 instead.")
@_output_options
@click.pass_obj
def burau(out: Output, word: str, n: int, unreduced: bool) -> None:
    """Matrix of a braid word such as 's1 s2^-1 s1'."""
    try:
        w = parse_braid(n, word)
        m = unreduced_burau_t_minus1(w) if unreduced else burau_symplectic(w)
    except ValueError as exc:
        raise UsageError(str(exc))
    out.json(matrix_to_json(m))


@cli.command()
@click.argument("curve")
@click.option("--n", "n", type=int, required=True, help="Number of marked points.")
@_output_options
@click.pass_obj
def liftclass(out: Output, curve: str, n: int) -> None:
    """Lift class of an even convex curve such as 'c{1,2,3,4}'."""
    try:
        v = lift_class(n, parse_curve(curve))
    except ValueError as exc:
        raise UsageError(str(exc))
    out.json(list(v))


@cli.group()
def sp() -> None:
    """Constructions in Sp(2g, Z) in standard coordinates."""


@sp.command("lift-mod2")
@click.argument("matrix")
@click.option("--fix", default=None, help="JSON list of a-vectors the lift must fix.")
@click.option("--fix-b", default=None, help="JSON list of b-vectors the lift must fix.")
@_output_options
@click.pass_obj
def sp_lift_mod2(out: Output, matrix: str, fix: Optional[str], fix_b: Optional[str]) -> None:
    """Integral symplectic lift of a matrix over F2."""
    n = reduce_mod2(_load_matrix(matrix))
    try:
        if fix or fix_b:
            a = [tuple(v) for v in json.loads(fix or "[]")]
            b = [tuple(v) for v in json.loads(fix_b or "[]")]
            m = lift_mod2_stabilizer(n, a, b)
        else:
            m = lift_mod2(n)
    except (ValueError, AssertionError) as exc:
        raise UsageError(str(exc))
    out.json(matrix_to_json(m))


@sp.command("corrector")
@click.argument("matrix")
@click.option("--step", type=click.Choice(["2", "3"]), required=True, help="2: Y fixes a1; 3: Y also fixes a2.")
@_output_options
@click.pass_obj
def sp_corrector(out: Output, matrix: str, step: str) -> None:
    """Sp[2] element Z with Z Y (b1) = b1 for a level-2 stabilizer Y."""
    y = _load_matrix(matrix)
    try:
        z = stabilizer_corrector_single(y) if step == "2" else stabilizer_corrector_pair(y)
    except (ValueError, AssertionError) as exc:
        raise UsageError(str(exc))
    out.json(matrix_to_json(z))


@sp.command("enumerate")
@click.option("--g", "g", type=click.IntRange(1, 3), required=True)
@_output_options
@click.pass_obj
def sp_enumerate(out: Output, g: int) -> None:
    """Order of Sp(2g, F2) by closure from transvections."""
    out.json({"g": g, "order": enumerate_sp_f2(g).order})


@cli.group()
def complex() -> None:
    """Arithmetic complexes over F2."""


_BUILDERS = {"tits": build_tits_f2, "ib": build_ib_f2, "ibhat": build_ibhat_f2}


@complex.command("build")
@click.option("--which", type=click.Choice(sorted(_BUILDERS)), required=True)
@click.option("--g", "g", type=click.IntRange(1, 3), required=True)
@click.option("--homology", type=click.Choice(["z", "f2", "both"]), default=None)
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="JSON report path; a PNG is written next to it.")
@_output_options
@click.pass_obj
def complex_build(out: Output, which: str, g: int, homology: Optional[str], report: Optional[str]) -> None:
    """Build a complex, print simplex counts and optionally reduced homology."""
    try:
        X = _BUILDERS[which](g)
    except ValueError as exc:
        raise UsageError(str(exc))
    except ResourceBoundExceeded as exc:
        click.echo(f"resource gate: {exc}", err=True)
        sys.exit(1)
    payload: Dict = {"complex": which, "g": g, "counts": X.counts(), "closed": X.is_closed()}
    ok = payload["closed"]
    if homology:
        prof = homology_profile(X, homology)
        payload["profile"] = prof.to_json()
        payload["euler_check"] = prof.euler_check()
        ok = ok and payload["euler_check"]
    out.json(payload)
    if report:
        for p in write_report(report, payload):
            out.detail(f"wrote {p}")
    sys.exit(0 if ok else 1)


@cli.command()
@click.argument("suite")
@click.option("--g", "g_text", default=None, help="Genus or range, e.g. 3, 3..5, 3,5.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=None, help="Sample count for randomized suites.")
@click.option("--report", type=click.Path(dir_okay=False), default=None)
@_output_options
@click.pass_obj
def verify(out: Output, suite: str, g_text: Optional[str], seed: int, samples: Optional[int], report: Optional[str]) -> None:
    """Run one verification suite; exit 0 iff it has no failures."""
    params = {}
    if samples is not None:
        if suite == "constructive":
            params = {"correctors": samples, "lifts": samples, "matches": samples}
        else:
            params = {"samples": samples}
    g_values = parse_g_range(g_text) if g_text else None
    manifest = run_suite(suite, g_values, seed, **params)
    _emit_manifest(out, manifest, report)
    sys.exit(0 if manifest.ok else 1)


@cli.command("all")
@click.option("--g-max", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--report", type=click.Path(dir_okay=False), default=None)
@_output_options
@click.pass_obj
def all_suites(out: Output, g_max: int, seed: int, report: Optional[str]) -> None:
    """Every suite up to g_max."""
    manifest = run_all(g_max, seed)
    _emit_manifest(out, manifest, report)
    sys.exit(0 if manifest.ok else 1)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="hypertorelli", standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    return int(rv or 0)


if __name__ == "__main__":
    sys.exit(main())
