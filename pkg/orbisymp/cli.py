import argparse
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError

from orbisymp.cocycle.io import load_cocycle, save_cocycle
from orbisymp.cocycle.spaces import coboundary_space, h1_par_complement, z1_par_basis
from orbisymp.errors import InvalidSignature, OrbisympError
from orbisymp.flows import FlowSpec, build_graph, moment_map, twist_flow
from orbisymp.orbifold.io import dump_json, load_signature, load_splitting_file, read_structured, splitting_summary
from orbisymp.orbifold.models import OrbifoldSignature, SplittingFile
from orbisymp.orbifold.signature import dimension_closed, validate
from orbisymp.orbifold.splitting import build_splitting
from orbisymp.rep.evaluate import relation_residual
from orbisymp.rep.fuchsian import fuchsian_cone_sphere, fuchsian_surface, fuchsian_triangle, pants_representation
from orbisymp.rep.io import load_rep, save_rep
from orbisymp.rep.models import FuchsianSeed, GroupRep
from orbisymp.symplectic.pairing import pairing_report
from orbisymp.utils.env import load_env_file
from orbisymp.utils.logging import get_logger, setup_logging
from orbisymp.verify import UnknownSuite, resolve_suites, run_suites

INPUT_ERRORS = (OSError, ValidationError, ValueError, yaml.YAMLError, UnknownSuite)


def _ensure_parent(path: Path) -> None:
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)


def _print_json(data: Any) -> None:
    print(dump_json(data))


def _write_json(path: Path, data: Any) -> None:
    _ensure_parent(path)
    path.write_text(dump_json(data) + "\n", encoding="utf-8")


def _fuchsian_rep(sig: OrbifoldSignature, seed: FuchsianSeed) -> GroupRep:
    validate(sig)
    if sig.genus == 0 and sig.boundary == 0 and sig.cone_count == 3 and seed == FuchsianSeed():
        return fuchsian_triangle(*sig.cone_orders)
    if sig.genus == 0 and sig.boundary == 0:
        return fuchsian_cone_sphere(sig.cone_orders, seed)
    if sig == OrbifoldSignature(genus=2):
        return fuchsian_surface(2)
    if sig == OrbifoldSignature(boundary=3):
        return pants_representation(jitter=seed.jitter or 0.05, seed=seed.seed)
    raise InvalidSignature(f"no Fuchsian seed for {sig.label()}: use a cone sphere, genus 2 or the pants")


def _splitting_request(path: Optional[str]) -> SplittingFile:
    return load_splitting_file(Path(path)) if path else SplittingFile()


def _dims(args: argparse.Namespace) -> Dict[str, Any]:
    sig = load_signature(Path(args.orbifold))
    payload: Dict[str, Any] = {"signature": sig.label(), "chi": str(sig.euler_characteristic())}
    payload["formula"] = dimension_closed(sig) if sig.boundary == 0 else None
    if args.rep:
        rep = load_rep(Path(args.rep))
        if rep.signature != sig:
            raise ValueError(f"representation is for {rep.signature.label()}, not {sig.label()}")
        payload["numeric"] = z1_par_basis(rep).dimension - coboundary_space(rep).dimension
    return payload


def _basis(args: argparse.Namespace, logger) -> Dict[str, Any]:
    rep = load_rep(Path(args.rep))
    words = None
    if args.splitting:
        words = build_splitting(rep.signature, _splitting_request(args.splitting)).parabolic_words()
    space = h1_par_complement(rep, words)
    out_dir = Path(args.out_dir)
    written = []
    for index, u in enumerate(space.basis):
        written.append(str(save_cocycle(u, out_dir / f"u{index}.json", kind=space.kind)))
    logger.info("Wrote cocycle basis", extra={"dimension": space.dimension, "out_dir": str(out_dir)})
    return {"dimension": space.dimension, "files": written}


def _flow(args: argparse.Namespace) -> Dict[str, Any]:
    rep = load_rep(Path(args.rep))
    splitting = build_splitting(rep.signature, _splitting_request(args.splitting))
    graph = build_graph(rep.signature, splitting)
    if args.spec:
        spec = FlowSpec.model_validate(read_structured(Path(args.spec)))
    else:
        spec = FlowSpec(curve=args.curve, flavor=args.flavor, t=args.t)
    flowed = twist_flow(rep, graph, spec)
    save_rep(flowed, Path(args.out))
    return {
        "flow": spec.model_dump(mode="json"),
        "out": args.out,
        "residual": relation_residual(flowed),
        "moment_before": dict(moment_map(rep, graph)),
        "moment_after": dict(moment_map(flowed, graph)),
    }


def _verify(args: argparse.Namespace, logger) -> int:
    suites = resolve_suites(args.suite)
    report = run_suites(suites, seed=args.seed, samples=args.samples, threads=args.threads, timing=not args.no_timing)
    payload = report.model_dump(mode="json")
    if args.report:
        _write_json(Path(args.report), payload)
        logger.info("Wrote verification report", extra={"path": args.report})
    counts = report.counts()
    print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
    for check in report.checks:
        if check.status == "fail":
            print(f"FAIL {check.name}: max_error={check.max_error} tolerance={check.tolerance}", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbisymp")
    sub = parser.add_subparsers(dest="cmd", required=True)

    dims = sub.add_parser("dims", help="Dimension of the deformation space of an orbifold")
    dims.add_argument("orbifold", help="Orbifold signature file (YAML or JSON)")
    dims.add_argument("--rep", help="Representation file; adds the numeric dimension at that point")

    fuchsian = sub.add_parser("fuchsian", help="Write a Fuchsian (or pants) representation")
    fuchsian.add_argument("orbifold", help="Orbifold signature file")
    fuchsian.add_argument("--out", required=True, help="Output representation JSON")
    fuchsian.add_argument("--radius-scale", type=float, default=1.0, help="Scale of the rotation centres")
    fuchsian.add_argument("--jitter", type=float, default=0.0, help="Seeded perturbation size")
    fuchsian.add_argument("--seed", type=int, default=0, help="Seed of the perturbation")

    basis = sub.add_parser("basis", help="Write an H1_par complement basis as cocycle files")
    basis.add_argument("rep", help="Representation file")
    basis.add_argument("--out-dir", required=True, help="Directory for u<i>.json files")
    basis.add_argument("--splitting", help="Splitting file; its curves become parabolic constraints")

    pairing = sub.add_parser("pairing", help="Evaluate the pairing of two cocycles both ways")
    pairing.add_argument("rep", help="Representation file")
    pairing.add_argument("u", help="First cocycle file")
    pairing.add_argument("v", help="Second cocycle file")
    pairing.add_argument("--out", help="Optional pairing report JSON")

    flow = sub.add_parser("flow", help="Apply a twist or bulge flow along a splitting curve")
    flow.add_argument("rep", help="Representation file")
    flow.add_argument("splitting", help="Splitting file")
    flow.add_argument("--spec", help="Flow file {curve, flavor, t}; overrides --curve/--flavor/-t")
    flow.add_argument("--curve", type=int, default=0, help="0-based curve index")
    flow.add_argument("--flavor", choices=("L", "M"), default="L")
    flow.add_argument("-t", type=float, default=0.0, help="Flow time")
    flow.add_argument("--out", required=True, help="Output representation JSON")

    split = sub.add_parser("split", help="Describe the pieces and curves of a splitting")
    split.add_argument("orbifold", help="Orbifold signature file")
    split.add_argument("splitting", nargs="?", help="Splitting file; defaults to the pants decomposition")
    split.add_argument("--out", help="Optional summary JSON")

    verify = sub.add_parser("verify", help="Run verification suites")
    verify.add_argument("--suite", default="all", help="fox, dims, pairing, decomposition, flows or all")
    verify.add_argument("--seed", type=int, default=0, help="Run seed; every check derives its own seed")
    verify.add_argument("--samples", type=int, help="Cap on per-check sample counts")
    verify.add_argument("--threads", type=int, help="Concurrent checks (default ORBISYMP_THREADS)")
    verify.add_argument("--report", help="Report JSON path")
    verify.add_argument("--no-timing", action="store_true", help="Write runtime_ms = 0 for byte-stable reports")
    return parser


def main(argv: Optional[list] = None) -> None:
    load_env_file()
    setup_logging(service="orbisymp-cli")
    logger = get_logger(__name__)
    args = build_parser().parse_args(argv)

    try:
        if args.cmd == "dims":
            _print_json(_dims(args))
        elif args.cmd == "fuchsian":
            sig = load_signature(Path(args.orbifold))
            seed = FuchsianSeed(radius_scale=args.radius_scale, jitter=args.jitter, seed=args.seed)
            rep = _fuchsian_rep(sig, seed)
            save_rep(rep, Path(args.out))
            _print_json({"signature": sig.label(), "out": args.out, "residual": relation_residual(rep)})
        elif args.cmd == "basis":
            _print_json(_basis(args, logger))
        elif args.cmd == "pairing":
            rep = load_rep(Path(args.rep))
            report = pairing_report(rep, load_cocycle(Path(args.u)), load_cocycle(Path(args.v)))
            payload = report.model_dump(mode="json")
            if args.out:
                _write_json(Path(args.out), payload)
            _print_json({key: payload[key] for key in ("value_closed", "value_cycle", "discrepancy")})
        elif args.cmd == "flow":
            _print_json(_flow(args))
        elif args.cmd == "split":
            sig = load_signature(Path(args.orbifold))
            request = _splitting_request(args.splitting) if args.splitting else SplittingFile(pants=True)
            summary = splitting_summary(build_splitting(sig, request))
            if args.out:
                _write_json(Path(args.out), summary)
            _print_json(summary)
        elif args.cmd == "verify":
            sys.exit(_verify(args, logger))
    except OrbisympError as exc:
        logger.error("Command failed: %s", exc, extra={"command": args.cmd, "error": type(exc).__name__})
        sys.exit(1)
    except INPUT_ERRORS as exc:
        logger.error("Invalid input: %s", exc, extra={"command": args.cmd})
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)


if __name__ == "__main__":
    main()
