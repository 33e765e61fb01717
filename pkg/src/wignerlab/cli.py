"""Command-line front end for verification, classification, and demos.

Exit codes are the machine contract: 0 when the property holds (or the
map classifies), 1 when a witness is found (or classification fails),
2 on usage or input errors.  All results are JSON on standard output
(or --out); diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .acceptance import run_all
from .circle import constant, fold, power
from .classify import classify
from .descriptors import map_from_json, map_to_json
from .maps import (
    StateMap,
    block_embed,
    entrywise_abs,
    proper_subspace_map,
    separable_embed,
    standard_map,
    wigner_map,
)
from .states import (
    OrthoSystem,
    basis_state,
    is_cosp,
    random_unitary,
    sample_pure_state,
)
from .verify import (
    check_isometry,
    check_noncontractive,
    check_nonexpansive,
    check_orthogonality_preserving,
)

EXIT_HOLDS = 0
EXIT_WITNESS = 1
EXIT_ERROR = 2


class CLIError(ValueError):
    """Invalid invocation or unreadable input."""


def _builtin_map(name: str, dim: int, seed: int) -> StateMap:
    if name == "phi":
        return entrywise_abs(dim)
    if name == "block-embed":
        return block_embed(dim)
    if name == "wigner-random":
        return wigner_map(random_unitary(dim, seed))
    if name == "constant":
        target = basis_state(dim, 0)
        return StateMap("constant", dim, dim, lambda s: target, {})
    if name in ("tau-fold", "tau-constant", "tau-power2"):
        if dim != 2:
            raise CLIError(f"builtin map {name!r} requires --dim 2")
        g = {"tau-fold": fold, "tau-constant": lambda: constant(1.0),
             "tau-power2": lambda: power(2)}[name]()
        return standard_map(g)
    raise CLIError(
        f"unknown builtin map {name!r}; use a name from "
        "{phi, block-embed, wigner-random, constant, tau-fold, "
        "tau-constant, tau-power2}, inline JSON, or @file"
    )


def _load_map(source: str, dim: int, seed: int) -> StateMap:
    """Resolve --map: builtin name, inline JSON object, or @file path."""
    text = source
    if source.startswith("@"):
        try:
            with open(source[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise CLIError(f"cannot read map file: {err}") from err
    text = text.strip()
    if not text.startswith("{"):
        return _builtin_map(text, dim, seed)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise CLIError(f"malformed map descriptor: {err}") from err
    try:
        return map_from_json(obj)
    except (KeyError, ValueError, TypeError) as err:
        raise CLIError(f"invalid map descriptor: {err}") from err


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True) + "\n"
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as err:
            raise CLIError(f"cannot write output: {err}") from err
    else:
        sys.stdout.write(text)


def _cmd_verify(args: argparse.Namespace) -> int:
    map_ = _load_map(args.map, args.dim, args.seed)
    if args.property == "orthogonality":
        report = check_orthogonality_preserving(
            map_, args.dim, n_samples=args.samples, seed=args.seed
        )
    else:
        checker = {
            "nonexpansive": check_nonexpansive,
            "noncontractive": check_noncontractive,
            "isometry": check_isometry,
        }[args.property]
        report = checker(
            map_,
            args.dim,
            n_samples=args.samples,
            refine_steps=args.refine_steps,
            seed=args.seed,
        )
    _emit(report.to_json(), args.out)
    return EXIT_HOLDS if report.holds else EXIT_WITNESS


def _cmd_classify(args: argparse.Namespace) -> int:
    map_ = _load_map(args.map, args.dim, args.seed)
    result = classify(map_, args.dim)
    _emit(result.to_json(), args.out)
    return EXIT_HOLDS if result.classified else EXIT_WITNESS


def _verdict(ok: bool, on_pass: str = "pass", on_fail: str = "witness") -> str:
    return on_pass if ok else on_fail


def _demo_block_embed(args) -> tuple[dict, bool]:
    map_ = block_embed(args.dim)
    non_contr = check_noncontractive(
        map_, args.dim, n_samples=args.samples,
        refine_steps=args.refine_steps, seed=args.seed,
    )
    iso = check_isometry(
        map_, args.dim, n_samples=args.samples,
        refine_steps=args.refine_steps, seed=args.seed,
    )
    ok = non_contr.holds and not iso.holds
    bundle = {
        "target": "block-embed",
        "map": map_to_json(map_),
        "checks": {"noncontractive": non_contr.to_json(), "isometry": iso.to_json()},
        "summary": {
            "noncontractive": _verdict(non_contr.holds),
            "isometry": _verdict(not iso.holds, "witness", "pass"),
        },
    }
    return bundle, ok


def _demo_separable_embed(args) -> tuple[dict, bool]:
    rng = np.random.default_rng(np.random.SeedSequence((args.seed, 9)))
    anchors = [sample_pure_state(rng, args.dim) for _ in range(args.anchors)]
    map_ = separable_embed(anchors)
    nonexp = check_nonexpansive(
        map_, args.dim, n_samples=args.samples,
        refine_steps=args.refine_steps, seed=args.seed,
    )
    states = [sample_pure_state(rng, args.dim) for _ in range(1000)]
    images = np.array([map_(s).vec for s in states])
    gram = np.abs(images.conj() @ images.T) ** 2
    np.fill_diagonal(gram, 0.0)
    max_overlap = float(gram.max())
    injective = max_overlap < 1.0 - 1e-9
    iso = check_isometry(
        map_, args.dim, n_samples=args.samples,
        refine_steps=args.refine_steps, seed=args.seed,
    )
    ok = nonexp.holds and injective and not iso.holds
    bundle = {
        "target": "separable-embed",
        "map": map_to_json(map_),
        "checks": {
            "nonexpansive": nonexp.to_json(),
            "injectivity": {
                "samples": len(states),
                "max_image_overlap": max_overlap,
                "distinct": injective,
            },
            "isometry": iso.to_json(),
        },
        "summary": {
            "nonexpansive": _verdict(nonexp.holds),
            "injectivity": _verdict(injective, "pass", "collision"),
            "isometry": _verdict(not iso.holds, "witness", "pass"),
        },
    }
    return bundle, ok


def _demo_proper_subspace(args) -> tuple[dict, bool]:
    k = args.k if args.k is not None else args.dim - 1
    map_ = proper_subspace_map(args.dim, k)
    nonexp = check_nonexpansive(
        map_, args.dim, n_samples=args.samples,
        refine_steps=args.refine_steps, seed=args.seed,
    )
    preimages = [basis_state(args.dim, a) for a in range(k)]
    try:
        images = OrthoSystem(tuple(map_(q) for q in preimages))
        complete = is_cosp(images, k) and all(
            bool(np.all(np.abs(m.vec[k:]) <= 1e-12)) for m in images
        )
    except ValueError:
        complete = False
    ok = nonexp.holds and complete
    bundle = {
        "target": "proper-subspace",
        "k": k,
        "map": map_to_json(map_),
        "checks": {"nonexpansive": nonexp.to_json()},
        "summary": {
            "nonexpansive": _verdict(nonexp.holds),
            "cosp_image": _verdict(complete, "pass", "fail"),
        },
    }
    return bundle, ok


_DEMOS = {
    "block-embed": _demo_block_embed,
    "separable-embed": _demo_separable_embed,
    "proper-subspace": _demo_proper_subspace,
}


def _cmd_demo(args: argparse.Namespace) -> int:
    bundle, ok = _DEMOS[args.target](args)
    _emit(bundle, args.out)
    return EXIT_HOLDS if ok else EXIT_WITNESS


def _cmd_selftest(args: argparse.Namespace) -> int:
    results = run_all()
    for r in results:
        line = f"[{'PASS' if r.passed else 'FAIL'}] {r.num:2d} {r.name}: {r.detail}"
        print(line, file=sys.stderr)
    passed = all(r.passed for r in results)
    _emit(
        {"criteria": [r.to_json() for r in results], "passed": passed},
        args.out,
    )
    return EXIT_HOLDS if passed else EXIT_WITNESS


def _add_common(sub: argparse.ArgumentParser, dim_default: int = 3) -> None:
    sub.add_argument("--dim", type=int, default=dim_default,
                     help=f"state-space dimension (default {dim_default})")
    sub.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    sub.add_argument("--samples", type=int, default=10000,
                     help="sample budget (default 10000)")
    sub.add_argument("--refine-steps", type=int, default=200,
                     help="local refinement steps on the worst pair (default 200)")
    sub.add_argument("--out", default=None, help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerlab",
        description="Metric geometry of pure states: witness search and "
        "classification of nonexpansive maps.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    verify = subs.add_parser("verify", help="seeded witness search for one property")
    verify.add_argument(
        "--property",
        choices=["nonexpansive", "noncontractive", "isometry", "orthogonality"],
        required=True,
    )
    verify.add_argument("--map", required=True,
                        help="builtin name, inline JSON descriptor, or @file")
    _add_common(verify)
    verify.set_defaults(handler=_cmd_verify)

    cls = subs.add_parser("classify", help="classify a black-box nonexpansive map")
    cls.add_argument("--map", required=True,
                     help="builtin name, inline JSON descriptor, or @file")
    _add_common(cls)
    cls.set_defaults(handler=_cmd_classify)

    demo = subs.add_parser("demo", help="build a counterexample and verify it")
    demo.add_argument("target", choices=sorted(_DEMOS))
    demo.add_argument("--anchors", type=int, default=32,
                      help="anchor count for separable-embed (default 32)")
    demo.add_argument("--k", type=int, default=None,
                      help="subspace dimension for proper-subspace (default dim-1)")
    _add_common(demo)
    demo.set_defaults(handler=_cmd_demo)

    selftest = subs.add_parser("selftest", help="run the acceptance suite")
    selftest.add_argument("--out", default=None,
                          help="write JSON here instead of stdout")
    selftest.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CLIError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
