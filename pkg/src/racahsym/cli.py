"""Command-line verification harness and artifact exporter.

Subcommands:

* ``verify <suite>`` runs one verification suite (or ``all``) and writes a
  JSON (or CSV) report.  Exit code 0 means every case passed, 1 means at
  least one identity failed, 2 means the configuration was invalid.
* ``transition`` exports the transition matrix of a degree slice.
* ``basis`` exports the orthogonal basis polynomials with their norms.
* ``racah-tab`` tabulates Racah polynomial values and weights on a lattice.

Reports are deterministic for a fixed (configuration, seed) apart from the
``elapsed_s`` timing fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .duality import check_basis_action, check_duality, check_transition, transition_direct
from .racah import check_racah_suite, lattice_points, racah_value, racah_weight
from .rational import DegeneracyError, parse_rational
from .report import VerificationReport, encode_rationals
from .sampling import ParameterSampler
from .simplex import (check_orthogonality, check_selfadjoint, check_spectral,
                      indices_up_to, jacobi_basis, jacobi_norm_sq)
from .symalg import SymmetryContext, check_commutation, check_fourth_order, \
    check_gaudin, check_generator_span


class UsageError(ValueError):
    """Invalid configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    suite: str = "all"
    dim: int = 2
    degree: int = 2
    rank: int | None = None
    lattice_size: int | None = None
    gamma: tuple[Fraction, ...] | None = None
    beta: tuple[Fraction, ...] | None = None
    samples: int = 2
    seed: int = 1

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise UsageError("--dim must be at least 2")
        if self.degree < 0:
            raise UsageError("--degree must be nonnegative")
        if self.samples < 1:
            raise UsageError("--samples must be positive")
        if self.rank is not None and self.rank < 1:
            raise UsageError("--rank must be positive")
        if self.lattice_size is not None and self.lattice_size < 1:
            raise UsageError("--lattice-size must be positive")
        if self.gamma is not None and len(self.gamma) != self.dim + 1:
            raise UsageError(
                f"--gamma needs {self.dim + 1} entries for --dim {self.dim}")
        if self.gamma is not None and any(g in (1, -1) for g in self.gamma):
            raise UsageError("--gamma entries must avoid +1 and -1")

    @property
    def racah_rank(self) -> int:
        return self.rank if self.rank is not None else max(1, min(self.dim - 1, 3))

    @property
    def racah_size(self) -> int:
        return self.lattice_size if self.lattice_size is not None \
            else max(2, self.degree)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite, "dim": self.dim, "degree": self.degree,
            "rank": self.racah_rank, "lattice_size": self.racah_size,
            "gamma": None if self.gamma is None else encode_rationals(self.gamma),
            "beta": None if self.beta is None else encode_rationals(self.beta),
            "samples": self.samples, "seed": self.seed,
        }


def _merge(dst: VerificationReport, src: VerificationReport, prefix: str) -> None:
    for case in src.cases:
        case.case = f"{prefix}:{case.case}"
        dst.cases.append(case)
    for note in src.notes:
        if note not in dst.notes:
            dst.notes.append(note)


def _gammas(cfg: RunConfig, kind: str, suite: str) -> list[tuple]:
    if cfg.gamma is not None:
        return [cfg.gamma]
    sampler = ParameterSampler(f"{cfg.seed}:{suite}")
    draw = sampler.gamma_generic if kind == "generic" else sampler.gamma_orthogonal
    return [draw(cfg.dim) for _ in range(cfg.samples)]


def _betas(cfg: RunConfig, suite: str) -> list[tuple]:
    if cfg.beta is not None:
        if len(cfg.beta) < cfg.racah_rank + 2:
            raise UsageError(
                f"--beta needs at least {cfg.racah_rank + 2} entries "
                f"for rank {cfg.racah_rank}")
        return [cfg.beta]
    sampler = ParameterSampler(f"{cfg.seed}:{suite}")
    return [sampler.beta_ascending(cfg.racah_rank) for _ in range(cfg.samples)]


def reduction_assignments(d: int) -> list[tuple[int, int, int, int]]:
    """Index assignments (i,j,k,l) for the fourth-order reduction.

    For d = 3 this is every assignment up to the i<->j and k<->l symmetries;
    for larger d a deterministic spread of two assignments per 4-subset.
    """
    out: list[tuple[int, int, int, int]] = []
    for sub in combinations(range(1, d + 2), 4):
        splits = []
        for pair in combinations(range(4), 2):
            rest = tuple(p for p in range(4) if p not in pair)
            splits.append((sub[pair[0]], sub[pair[1]], sub[rest[0]], sub[rest[1]]))
        out.extend(splits if d == 3 else splits[:2])
    return out


# -- suite runners ------------------------------------------------------------

def run_commutation(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="commutation")
    for idx, gamma in enumerate(_gammas(cfg, "generic", "commutation")):
        _merge(report, check_commutation(SymmetryContext(cfg.dim, gamma)),
               f"sample{idx}")
    return report


def run_generator_reduction(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="generator-reduction")
    if cfg.dim < 3:
        raise UsageError("the fourth-order reduction needs --dim >= 3")
    for idx, gamma in enumerate(_gammas(cfg, "generic", "generator-reduction")):
        ctx = SymmetryContext(cfg.dim, gamma)
        for i, j, k, l in reduction_assignments(cfg.dim):
            _merge(report, check_fourth_order(ctx, i, j, k, l), f"sample{idx}")
    return report


def run_gaudin(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="gaudin")
    for idx, gamma in enumerate(_gammas(cfg, "generic", "gaudin")):
        _merge(report, check_gaudin(SymmetryContext(cfg.dim, gamma)), f"sample{idx}")
    return report


def run_generator_span(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="generator-span")
    for idx, gamma in enumerate(_gammas(cfg, "generic", "generator-span")):
        _merge(report, check_generator_span(SymmetryContext(cfg.dim, gamma)),
               f"sample{idx}")
    return report


def run_spectral(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="spectral")
    for idx, gamma in enumerate(_gammas(cfg, "orthogonal", "spectral")):
        _merge(report, check_spectral(SymmetryContext(cfg.dim, gamma), cfg.degree),
               f"sample{idx}")
    return report


def run_selfadjoint(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="self-adjoint")
    for idx, gamma in enumerate(_gammas(cfg, "orthogonal", "self-adjoint")):
        _merge(report, check_selfadjoint(SymmetryContext(cfg.dim, gamma), cfg.degree),
               f"sample{idx}")
    return report


def run_orthogonality(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="orthogonality")
    for idx, gamma in enumerate(_gammas(cfg, "orthogonal", "orthogonality")):
        _merge(report, check_orthogonality(SymmetryContext(cfg.dim, gamma), cfg.degree),
               f"sample{idx}")
    return report


def run_racah(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="racah")
    for idx, beta in enumerate(_betas(cfg, "racah")):
        _merge(report, check_racah_suite(cfg.racah_rank, cfg.racah_size, beta),
               f"sample{idx}")
    return report


def run_transition(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="transition")
    for idx, gamma in enumerate(_gammas(cfg, "orthogonal", "transition")):
        ctx = SymmetryContext(cfg.dim, gamma)
        for n in range(cfg.degree + 1):
            _merge(report, check_transition(ctx, n), f"sample{idx}:n{n}")
    return report


def run_basis_action(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="basis-action")
    for idx, gamma in enumerate(_gammas(cfg, "orthogonal", "basis-action")):
        ctx = SymmetryContext(cfg.dim, gamma)
        for n in range(1, cfg.degree + 1):
            _merge(report, check_basis_action(ctx, n), f"sample{idx}:n{n}")
    return report


def run_duality(cfg: RunConfig) -> VerificationReport:
    report = VerificationReport(suite="duality")
    for idx, gamma in enumerate(_gammas(cfg, "orthogonal", "duality")):
        ctx = SymmetryContext(cfg.dim, gamma)
        for n in range(1, cfg.degree + 1):
            _merge(report, check_duality(ctx, n), f"sample{idx}:n{n}")
    return report


SUITES = {
    "commutation": run_commutation,
    "generator-reduction": run_generator_reduction,
    "gaudin": run_gaudin,
    "spectral": run_spectral,
    "self-adjoint": run_selfadjoint,
    "orthogonality": run_orthogonality,
    "racah": run_racah,
    "transition": run_transition,
    "basis-action": run_basis_action,
    "generator-span": run_generator_span,
    "duality": run_duality,
}


def run_suite(cfg: RunConfig) -> dict:
    """Run the configured suite(s); returns the full report envelope."""
    if cfg.suite != "all" and cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; "
                         f"choose from {', '.join(SUITES)} or 'all'")
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    skipped = []
    if cfg.suite == "all" and cfg.dim < 3:
        names.remove("generator-reduction")
        skipped.append("generator-reduction (needs dim >= 3)")
    reports = []
    for name in names:
        sub = cfg if name == cfg.suite else _with_suite(cfg, name)
        t0 = time.perf_counter()
        rep = SUITES[name](sub)
        rep.elapsed_s = time.perf_counter() - t0
        reports.append(rep)
    envelope = {
        "racahsym_report": 1,
        "config": cfg.to_dict(),
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    if skipped:
        envelope["skipped"] = skipped
    return envelope


def _with_suite(cfg: RunConfig, name: str) -> RunConfig:
    return RunConfig(suite=name, dim=cfg.dim, degree=cfg.degree, rank=cfg.rank,
                     lattice_size=cfg.lattice_size, gamma=cfg.gamma,
                     beta=cfg.beta, samples=cfg.samples, seed=cfg.seed)


# -- exporters -----------------------------------------------------------------

def export_transition(cfg: RunConfig) -> dict:
    gamma = cfg.gamma or ParameterSampler(f"{cfg.seed}:transition-export") \
        .gamma_orthogonal(cfg.dim)
    ctx = SymmetryContext(cfg.dim, gamma)
    entries = []
    matrix = transition_direct(ctx, cfg.degree)
    for (nu, mu), val in sorted(matrix.items()):
        entries.append({"nu": list(nu), "mu": list(mu), **val.to_dict()})
    return {"d": cfg.dim, "n": cfg.degree, "gamma": encode_rationals(gamma),
            "entries": entries}


def export_basis(cfg: RunConfig) -> list[dict]:
    gamma = cfg.gamma or ParameterSampler(f"{cfg.seed}:basis-export") \
        .gamma_orthogonal(cfg.dim)
    ctx = SymmetryContext(cfg.dim, gamma)
    out = []
    for nu in indices_up_to(cfg.dim, cfg.degree):
        out.append({
            "nu": list(nu),
            "poly": jacobi_basis(ctx, nu).to_records(),
            "norm_sq": str(jacobi_norm_sq(ctx, nu)),
        })
    return out


def export_racah_table(cfg: RunConfig) -> list[dict]:
    beta = _betas(cfg, "racah-export")[0]
    k, size = cfg.racah_rank, cfg.racah_size
    rows = []
    for n in range(size + 1):
        for nu in _rank_indices(k, n):
            for z in lattice_points(k, size):
                rows.append({
                    **{f"z_{m + 1}": str(z[m]) for m in range(k + 1)},
                    **{f"nu_{m + 1}": str(nu[m]) for m in range(k)},
                    "R": str(Fraction(racah_value(k, nu, z, beta))),
                    "weight": str(Fraction(racah_weight(k, z, beta))),
                })
    return rows


def _rank_indices(k: int, n: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _rank_indices(k - 1, n - first):
            yield (first,) + rest


# -- output plumbing --------------------------------------------------------------

def _report_csv(envelope: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["suite", "case", "pass", "params", "witness"])
    for rep in envelope["reports"]:
        for case in rep["cases"]:
            writer.writerow([
                rep["suite"], case["case"], case["pass"],
                json.dumps(case["params"], sort_keys=True),
                json.dumps(case.get("witness"), sort_keys=True),
            ])
    return buf.getvalue()


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, default=2, help="ambient dimension d")
    parser.add_argument("--degree", type=int, default=2,
                        help="maximum total degree n")
    parser.add_argument("--rank", type=int, default=None,
                        help="difference-operator rank k (default: min(d-1, 3))")
    parser.add_argument("--lattice-size", type=int, default=None,
                        help="lattice size N (default: max(2, degree))")
    parser.add_argument("--gamma", type=str, default=None,
                        help="explicit parameters, comma-separated p/q values")
    parser.add_argument("--beta", type=str, default=None,
                        help="explicit lattice parameters, comma-separated p/q")
    parser.add_argument("--samples", type=int, default=2,
                        help="number of sampled parameter vectors")
    parser.add_argument("--seed", type=int, default=1, help="sampling seed")
    parser.add_argument("--out", type=str, default=None, help="output path")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json", help="output format")


def _parse_rational_list(text: str | None) -> tuple[Fraction, ...] | None:
    if text is None:
        return None
    try:
        return tuple(parse_rational(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _config_from_args(args: argparse.Namespace, suite: str) -> RunConfig:
    return RunConfig(
        suite=suite, dim=args.dim, degree=args.degree, rank=args.rank,
        lattice_size=args.lattice_size,
        gamma=_parse_rational_list(args.gamma),
        beta=_parse_rational_list(args.beta),
        samples=args.samples, seed=args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racahsym",
        description="exact verification of simplex symmetry-operator identities")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    _add_common(p_verify)

    for name, blurb in (("transition", "export a transition matrix"),
                        ("basis", "export basis polynomials and norms"),
                        ("racah-tab", "tabulate lattice values and weights")):
        p = sub.add_parser(name, help=blurb)
        _add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            cfg = _config_from_args(args, args.suite)
            envelope = run_suite(cfg)
            if args.fmt == "csv":
                _emit(_report_csv(envelope), args.out)
            else:
                _emit(json.dumps(envelope, indent=2), args.out)
            return 0 if envelope["passed"] else 1
        if args.command == "transition":
            cfg = _config_from_args(args, "transition")
            _emit(json.dumps(export_transition(cfg), indent=2), args.out)
            return 0
        if args.command == "basis":
            cfg = _config_from_args(args, "basis")
            _emit(json.dumps(export_basis(cfg), indent=2), args.out)
            return 0
        if args.command == "racah-tab":
            cfg = _config_from_args(args, "racah-tab")
            rows = export_racah_table(cfg)
            if args.fmt == "json":
                _emit(json.dumps(rows, indent=2), args.out)
            else:
                _emit(_rows_csv(rows), args.out)
            return 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegeneracyError as exc:
        print(f"parameter degeneracy: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable command dispatch")


if __name__ == "__main__":
    sys.exit(main())
