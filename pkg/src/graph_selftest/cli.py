"""Command-line entry point.

JSON goes to stdout (or ``--out``); one-line human summaries go to stderr.
Exit codes: 0 ok, 1 check/bound failed, 2 graph error, 3 certificate error,
4 provider error, 5 degenerate junk during extraction.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .certificates import CertificateError, make_certificate, verify_certificate
from .dense import SimulationLimitError
from .devices import IncompatibleProviderError, NOISE_MODELS, build_quantum_box, compute_epsilon, parse_noise
from .extraction import DegenerateJunkError, equivalence_distances
from .graph import Graph, GraphError, find_odd_induced_cycle, parse_graph
from .lhv import LHVProvider, bipartite_completeness_check, nonbipartite_violation

EXIT_OK, EXIT_FAIL, EXIT_GRAPH, EXIT_CERT, EXIT_PROVIDER, EXIT_DEGENERATE = 0, 1, 2, 3, 4, 5


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    graph_path: Path
    kind: int = 1
    anchor: Optional[tuple[int, ...]] = None
    provider: str = "quantum"
    noise: Optional[str] = None
    dim: int = 2
    pad: float = 1.0
    threshold: float = 1e-9
    trials: Optional[int] = None
    seed: int = 0
    out: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise CLIError("--dim must be at least 2", EXIT_PROVIDER)
        if self.provider == "lhv" and (self.noise or self.dim != 2 or self.pad != 1.0):
            raise CLIError("--noise/--dim/--pad apply to quantum providers only", EXIT_PROVIDER)
        if self.provider == "quantum" and self.trials is not None:
            raise CLIError("--trials applies to the lhv provider only", EXIT_PROVIDER)
        if self.noise is not None:
            try:
                parse_noise(self.noise)
            except ValueError as exc:
                raise CLIError(str(exc), EXIT_PROVIDER) from None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        anchor = None
        if getattr(args, "anchor", None):
            try:
                anchor = tuple(int(a) for a in args.anchor.replace(",", " ").split())
            except ValueError:
                raise CLIError(f"bad --anchor {args.anchor!r}", EXIT_CERT) from None
        return cls(
            graph_path=Path(args.graph),
            kind=getattr(args, "kind", 1),
            anchor=anchor,
            provider=getattr(args, "provider", "quantum"),
            noise=getattr(args, "noise", None),
            dim=getattr(args, "dim", 2),
            pad=getattr(args, "pad", 1.0),
            threshold=getattr(args, "threshold", 1e-9),
            trials=getattr(args, "trials", None),
            seed=getattr(args, "seed", 0),
            out=Path(args.out) if args.out else None,
        )


def load_graph(path: Path) -> Graph:
    try:
        return parse_graph(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}", EXIT_GRAPH) from None
    except GraphError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_GRAPH) from None


def _certificate(cfg: RunConfig):
    g = load_graph(cfg.graph_path)
    try:
        return make_certificate(g, cfg.kind, cfg.anchor)
    except GraphError as exc:
        raise CLIError(str(exc), EXIT_GRAPH) from None
    except CertificateError as exc:
        raise CLIError(str(exc), EXIT_CERT) from None


def _provider(cfg: RunConfig, cert):
    if cfg.provider == "lhv":
        return LHVProvider(cert.graph, cfg.trials, cfg.seed)
    return build_quantum_box(cert, cfg.noise, cfg.dim, cfg.pad)


def _emit(payload: dict, cfg: RunConfig) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text, encoding="utf-8")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_certificate(cfg: RunConfig) -> int:
    cert = _certificate(cfg)
    _emit(cert.to_dict(), cfg)
    _note(f"experiment {cert.kind} certificate: {len(cert.rows)} rows, anchor {list(cert.anchor)}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    cert = _certificate(cfg)
    report = verify_certificate(cert)
    _emit(report.to_dict(), cfg)
    _note(f"verify: max residual {report.max_residual:.3g} -> {'ok' if report.passed else 'FAILED'}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check(cfg: RunConfig) -> int:
    cert = _certificate(cfg)
    provider = _provider(cfg, cert)
    try:
        report = compute_epsilon(provider, cert)
    except IncompatibleProviderError as exc:
        raise CLIError(str(exc), EXIT_PROVIDER) from None
    payload = report.to_dict()
    if cfg.provider == "lhv" and cfg.trials is not None:
        payload["seed"] = cfg.seed
        payload["trials"] = cfg.trials
    _emit(payload, cfg)
    ok = report.epsilon <= cfg.threshold
    _note(f"check[{report.provider}]: epsilon {report.epsilon:.6g} (threshold {cfg.threshold:g}) -> "
          f"{'ok' if ok else 'exceeds'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_extract(cfg: RunConfig) -> int:
    if cfg.provider != "quantum":
        raise CLIError("extraction needs a quantum device model", EXIT_PROVIDER)
    cert = _certificate(cfg)
    box = _provider(cfg, cert)
    try:
        report = equivalence_distances(box, cert)
    except DegenerateJunkError as exc:
        raise CLIError(str(exc), EXIT_DEGENERATE) from None
    _emit(report.to_dict(), cfg)
    _note(f"extract[{box.name}]: max distance {report.max_distance:.3g}, epsilon {report.epsilon:.3g}, "
          f"delta {report.delta_bound if report.delta_bound is None else f'{report.delta_bound:.3g}'}")
    return EXIT_OK if report.bound_satisfied else EXIT_FAIL


def cmd_lhv(cfg: RunConfig) -> int:
    g = load_graph(cfg.graph_path)
    try:
        if find_odd_induced_cycle(g) is None:
            report = bipartite_completeness_check(g)
            _note(f"lhv: bipartite, complete={report.complete} over {report.settings_checked} settings")
        else:
            report = nonbipartite_violation(g)
            _note(f"lhv: violation on {report.row}: lhv {report.lhv:+g} vs quantum {report.quantum:+g}")
    except GraphError as exc:
        raise CLIError(str(exc), EXIT_GRAPH) from None
    _emit(report.to_dict(), cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graph-selftest", description="Self-testing certificates for graph states.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kind=True):
        p.add_argument("--graph", required=True, help="edge-list file")
        if kind:
            p.add_argument("--kind", type=int, choices=(1, 2), default=1, help="reference experiment")
            p.add_argument("--anchor", help="odd cycle (kind 1) or edge u,v (kind 2), comma separated")
        p.add_argument("--out", help="write JSON here instead of stdout")

    def device(p):
        p.add_argument("--provider", choices=("quantum", "lhv"), default="quantum")
        p.add_argument("--noise", help=f"noise model NAME:THETA, NAME in {sorted(NOISE_MODELS)}")
        p.add_argument("--dim", type=int, default=2, help="local dimension of each device")
        p.add_argument("--pad", type=float, choices=(1.0, -1.0), default=1.0,
                       help="sign of the observables on the extra levels when --dim > 2")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("certificate", help="emit the reference experiment")
    common(p)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("verify", help="cross-check certificate values with both simulators")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="compute epsilon for a device model")
    common(p)
    device(p)
    p.add_argument("--trials", type=int, help="sample the lhv model instead of using exact values")
    p.add_argument("--threshold", type=float, default=1e-9)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extract", help="run the extraction isometry and compare with delta(epsilon)")
    common(p)
    device(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("lhv", help="hidden variable model: completeness or violation")
    common(p, kind=False)
    p.set_defaults(func=cmd_lhv)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(cfg)
    except CLIError as exc:
        _note(f"error: {exc}")
        return exc.code
    except SimulationLimitError as exc:
        _note(f"error: {exc}")
        return EXIT_GRAPH


if __name__ == "__main__":
    sys.exit(main())
