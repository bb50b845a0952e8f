"""Command-line interface: ``ddinfer <command> ...``.

Exit codes: 0 success, 2 malformed input, 3 row-sum violation, 4 solver
failure, 5 range inversion failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import completeness as cpl
from . import io as dio
from . import qubit, simplex2d
from .linalg import ContractViolation
from .mvee import (DEFAULT_EPS, DEFAULT_MAX_ITER, DEFAULT_TOL_AFF, SolverError, _reduced_mvee,
                   ddi_spherical_detailed, ellipsoid_volume)

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_ROW_SUM = 3
EXIT_SOLVER = 4
EXIT_INVERSION = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class InferenceReport:
    """Everything ``infer``/``reconstruct`` know about one table."""

    rows: Optional[int]
    cols: int
    row_sum_residuals: Optional[list]
    renormalized: bool
    frame_dim: int
    t: list
    Q: list
    rank: int
    volume: float
    povm: Optional[dict] = None
    valid: Optional[bool] = None
    failure: Optional[str] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "input": {"rows": self.rows, "cols": self.cols,
                      "row_sum_residuals": self.row_sum_residuals,
                      "renormalized": self.renormalized},
            "frame": {"d": self.frame_dim},
            "ellipsoid": {"n": self.cols, "t": self.t, "Q": self.Q,
                          "rank": self.rank, "volume": self.volume},
            "povm": self.povm,
            "diagnostics": {"valid": self.valid, "failure": self.failure, "detail": self.detail},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InferenceReport":
        try:
            inp, ell, diag = d["input"], d["ellipsoid"], d["diagnostics"]
            return cls(
                rows=inp["rows"], cols=ell["n"], row_sum_residuals=inp["row_sum_residuals"],
                renormalized=inp["renormalized"], frame_dim=d["frame"]["d"],
                t=ell["t"], Q=ell["Q"], rank=ell["rank"], volume=ell["volume"],
                povm=d.get("povm"), valid=diag["valid"], failure=diag["failure"],
                detail=diag.get("detail", ""),
            )
        except (KeyError, TypeError) as exc:
            raise dio.MalformedInput(f"not an inference report: missing {exc}") from exc

    def dumps(self) -> str:
        return dio.dumps(self.to_dict())


def _check_rows(T: np.ndarray, row_tol: float, renormalize: bool):
    sums = T.sum(axis=1)
    residuals = sums - 1.0
    if np.any(T < -row_tol):
        raise CliError("table has negative frequencies", EXIT_MALFORMED)
    if renormalize:
        if np.any(sums <= 0):
            raise CliError("cannot renormalize a row with zero total", EXIT_ROW_SUM)
        return T / sums[:, None], residuals
    bad = np.flatnonzero(np.abs(residuals) > row_tol)
    if bad.size:
        raise CliError(f"row {int(bad[0])} sums to {sums[bad[0]]:.17g} "
                       f"(tolerance {row_tol:g}); use --renormalize", EXIT_ROW_SUM)
    return T, residuals


def infer_table(T: np.ndarray, row_tol: float = 1e-6, renormalize: bool = False,
                eps: float = DEFAULT_EPS, tol_aff: float = DEFAULT_TOL_AFF,
                max_iter: int = DEFAULT_MAX_ITER):
    T, residuals = _check_rows(T, row_tol, renormalize)
    try:
        frame, Z, E = ddi_spherical_detailed(T, eps=eps, tol_aff=tol_aff, max_iter=max_iter)
    except SolverError as exc:
        raise CliError(str(exc), EXIT_SOLVER) from exc
    rank, vol = ellipsoid_volume(E)
    report = InferenceReport(
        rows=T.shape[0], cols=T.shape[1], row_sum_residuals=residuals.tolist(),
        renormalized=renormalize, frame_dim=frame.d, t=E.t.tolist(), Q=E.Q.tolist(),
        rank=rank, volume=vol,
    )
    return report, E, Z


def _diagnose(report: InferenceReport, E, povm_tol: float) -> Optional[qubit.QubitPovm]:
    try:
        P = qubit.range_invert(E, tol=povm_tol)
    except qubit.InversionError as exc:
        report.valid, report.failure, report.detail = False, exc.reason, exc.detail
        return None
    report.valid, report.failure, report.detail = True, None, ""
    return P


def _emit(text: str, out: Optional[str]):
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _plot(path: str, Z: np.ndarray, frame_dim: int):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(4, 4))
    Z2 = np.zeros((len(Z), 2))
    Z2[:, : min(2, Z.shape[1])] = Z[:, :2]
    ax.plot(Z2[:, 0], Z2[:, 1], "o", color="k", label="data")
    if frame_dim >= 1:
        c, cov = _reduced_mvee(Z, DEFAULT_EPS, 10**6)
        cov2 = np.zeros((2, 2))
        k = min(2, frame_dim)
        cov2[:k, :k] = cov[:k, :k]
        w, U = np.linalg.eigh(cov2)
        ang = np.linspace(0, 2 * np.pi, 200)
        circ = np.stack([np.cos(ang), np.sin(ang)])
        pts = (U @ (np.sqrt(np.maximum(w, 0))[:, None] * circ)).T
        c2 = np.zeros(2)
        c2[:k] = c[:k]
        ax.plot(pts[:, 0] + c2[0], pts[:, 1] + c2[1], "-", label="inferred range")
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize="small")
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_infer(args) -> int:
    T = dio.read_table(args.table)
    report, E, Z = infer_table(T, args.row_tol, args.renormalize, args.eps, args.tol_aff,
                               args.max_iter)
    _diagnose(report, E, args.povm_tol)
    if args.plot:
        _plot(args.plot, Z, report.frame_dim)
    _emit(report.dumps(), args.output)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    if args.from_range:
        doc = dio.read_json(args.from_range)
        if "ellipsoid" in doc and "input" in doc:
            report = InferenceReport.from_dict(doc)
            E = dio.ellipsoid_from_dict(doc["ellipsoid"])
        else:
            E = dio.ellipsoid_from_dict(doc)
            rank, vol = ellipsoid_volume(E)
            report = InferenceReport(None, E.n, None, False, E.rank, E.t.tolist(),
                                     E.Q.tolist(), rank, vol)
    elif args.table:
        T = dio.read_table(args.table)
        report, E, _ = infer_table(T, args.row_tol, args.renormalize, args.eps, args.tol_aff,
                                   args.max_iter)
    else:
        raise CliError("reconstruct needs a table or --from-range", EXIT_MALFORMED)
    if E.n < 2:
        raise CliError("range inversion needs at least two outcomes", EXIT_MALFORMED)
    P = _diagnose(report, E, args.povm_tol)
    report.povm = dio.povm_to_dict(P) if P is not None else None
    _emit(report.dumps(), args.output)
    if P is None:
        print(f"the inference fails: {report.failure} ({report.detail})", file=sys.stderr)
        return EXIT_INVERSION
    return EXIT_OK


def _resolve_seed(seed: Optional[int]) -> Optional[int]:
    if seed is not None:
        return seed
    env = os.environ.get("DDI_SEED")
    if env is None:
        return None
    try:
        return int(env, 0)
    except ValueError as exc:
        raise CliError(f"DDI_SEED is not an integer: {env!r}", EXIT_MALFORMED) from exc


def cmd_simulate(args) -> int:
    try:
        P = dio.povm_from_dict(dio.read_json(args.povm)).validate()
    except qubit.InvalidPovm as exc:
        raise CliError(f"invalid POVM: {exc}", EXIT_MALFORMED) from exc
    S = dio.states_from_dict(dio.read_json(args.states))
    if args.shots < 0:
        raise CliError("--shots must be >= 0", EXIT_MALFORMED)
    if args.shots == 0:
        freqs = qubit.born_table(P, S)
        counts = None
        header = "exact Born probabilities; rows = states, columns = outcomes"
    else:
        seed = _resolve_seed(args.seed)
        if seed is None:
            raise CliError("simulate needs --seed (or DDI_SEED) when --shots > 0", EXIT_MALFORMED)
        counts, freqs = qubit.simulate_counts(P, S, args.shots, seed)
        header = f"frequencies from {args.shots} shots, seed {seed}; rows = states, columns = outcomes"
    _emit(dio.format_table(freqs, header), args.output)
    if args.counts:
        if counts is None:
            raise CliError("--counts needs --shots > 0", EXIT_MALFORMED)
        with open(args.counts, "w", encoding="utf-8") as fh:
            fh.write(dio.format_table(counts, f"counts from {args.shots} shots"))
    return EXIT_OK


def _verdict_dict(mode: str, v: cpl.CompletenessVerdict) -> dict:
    out = {"mode": mode, "verdict": v.verdict, "witness": None}
    if not v.verdict:
        if isinstance(v.witness, int):
            out["witness"] = {"affine_dimension": v.witness}
        else:
            out["witness"] = {"mvee": dio.ellipsoid_to_dict(v.witness)}
    return out


def cmd_check(args) -> int:
    S = dio.states_from_dict(dio.read_json(args.states))
    if args.mode == "ic":
        v = cpl.is_informationally_complete(S, tol=args.ic_tol)
    elif args.mode == "oc":
        v = cpl.is_observationally_complete(S, tol=args.tol)
    else:
        if not args.projector:
            raise CliError("--mode oc-support needs --projector", EXIT_MALFORMED)
        try:
            Pi = cpl.SubspaceProjector(dio.projector_from_json(dio.read_json(args.projector)))
        except ContractViolation as exc:
            raise CliError(str(exc), EXIT_MALFORMED) from exc
        v = cpl.is_oc_for_support(S, Pi, tol=args.tol)
    _emit(dio.dumps(_verdict_dict(args.mode, v)), args.output)
    return EXIT_OK


def cmd_equiv(args) -> int:
    P1 = dio.povm_from_dict(dio.read_json(args.povm_a))
    P2 = dio.povm_from_dict(dio.read_json(args.povm_b))
    if P1.n != P2.n:
        raise CliError(f"outcome counts differ: {P1.n} vs {P2.n}", EXIT_MALFORMED)
    E1, E2 = qubit.povm_range(P1), qubit.povm_range(P2)
    out = {
        "equivalent": qubit.gauge_equivalent(P1, P2, args.tol),
        "dQ_max": float(np.max(np.abs(E1.Q - E2.Q))),
        "dt_max": float(np.max(np.abs(E1.t - E2.t))),
        "gauge": None,
    }
    if out["equivalent"]:
        G = qubit.find_gauge(P1, P2)
        out["gauge"] = {"O": G.O.tolist(), "det": G.det,
                        "class": "unitary" if G.det > 0 else "anti-unitary"}
    _emit(dio.dumps(out), args.output)
    return EXIT_OK


def cmd_demo_nonunique(args) -> int:
    if args.hexagon:
        pts = simplex2d.regular_hexagon()
    elif args.points:
        pts = dio.points_from_text(dio.read_text(args.points))
    else:
        raise CliError("demo-nonunique needs a points file or --hexagon", EXIT_MALFORMED)
    try:
        sol = simplex2d.min_area_enclosing_triangle(pts)
        pair = simplex2d.nonuniqueness_witness(pts, tol=args.tol)
    except simplex2d.DegenerateInput as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    out = {
        "area": sol.area,
        "triangle": sol.triangle.vertices.tolist(),
        "flush_edge": sol.flush_edge,
        "unique": pair is None,
        "witness": None if pair is None else [
            {"vertices": T.vertices.tolist(), "area": T.area} for T in pair],
    }
    _emit(dio.dumps(out), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ddinfer", description=(
        "Minimum-volume inference of qubit measurements from outcome statistics."))
    sub = p.add_subparsers(dest="command", required=True)

    def common_inference(sp):
        sp.add_argument("--row-tol", type=float, default=1e-6)
        sp.add_argument("--renormalize", action="store_true")
        sp.add_argument("--eps", type=float, default=DEFAULT_EPS, help="MVEE solver accuracy")
        sp.add_argument("--tol-aff", type=float, default=DEFAULT_TOL_AFF,
                        help="affine-hull membership tolerance")
        sp.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER,
                        help="iteration budget of the MVEE solver")
        sp.add_argument("--povm-tol", type=float, default=0.02,
                        help="tolerance of the POVM validity checks")
        sp.add_argument("-o", "--output")

    sp = sub.add_parser("infer", help="infer the measurement range of a table")
    sp.add_argument("table", help="CSV file, or - for stdin")
    common_inference(sp)
    sp.add_argument("--plot", metavar="SVG", help="write a 2D picture of the fit")
    sp.set_defaults(func=cmd_infer)

    sp = sub.add_parser("reconstruct", help="infer and invert into a POVM")
    sp.add_argument("table", nargs="?")
    sp.add_argument("--from-range", metavar="JSON", help="start from an infer report or ellipsoid")
    common_inference(sp)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("simulate", help="sample outcome frequencies")
    sp.add_argument("povm")
    sp.add_argument("states")
    sp.add_argument("--shots", type=int, default=8192, help="0 writes exact probabilities")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--counts", metavar="CSV", help="also write raw counts here")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("check", help="completeness verdict for a state set")
    sp.add_argument("states")
    sp.add_argument("--mode", choices=("oc", "ic", "oc-support"), default="oc")
    sp.add_argument("--projector")
    sp.add_argument("--tol", type=float, default=cpl.DEFAULT_TOL)
    sp.add_argument("--ic-tol", type=float, default=1e-9)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("equiv", help="gauge equivalence of two POVMs")
    sp.add_argument("povm_a")
    sp.add_argument("povm_b")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("demo-nonunique", help="co-optimal minimum-area triangles")
    sp.add_argument("points", nargs="?")
    sp.add_argument("--hexagon", action="store_true")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_demo_nonunique)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ddinfer: {exc}", file=sys.stderr)
        return exc.code
    except (dio.MalformedInput, ContractViolation) as exc:
        print(f"ddinfer: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except SolverError as exc:
        print(f"ddinfer: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
