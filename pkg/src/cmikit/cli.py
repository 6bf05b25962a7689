"""Command-line front end: decide, witness, check and measure CMI statements.

Exit codes follow the verdict: 0 for an affirmative answer (equivalent,
implies, valid, witness found), 1 for a negative one, 2 for any usage or
input error.  ``--json`` switches every command to a single structured
object on stdout; ``--verify`` cross-checks the symbolic verdict against
the exact distribution oracle on deterministic random samples.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from .distributions import (
    TOLERANCE,
    JointDistribution,
    cond_entropy,
    is_valid,
    j_value,
    random_distribution,
)
from .statements import Cmi, canonicalize, decompose_to_cis, equivalent, implies
from .textio import parse_cmi, parse_distribution, render_cmi, render_distribution
from .witnesses import Witness, witness_non_implication, witness_non_equivalence


def _color_enabled() -> bool:
    return sys.stdout.isatty() and os.environ.get("CMIKIT_COLOR") != "0"


def _verdict_line(verdict: str, affirmative: bool) -> str:
    if _color_enabled():
        return f"\x1b[{'32' if affirmative else '31'}m{verdict}\x1b[0m"
    return verdict


def _canonical_text(k: Cmi) -> str:
    return render_cmi(canonicalize(k).as_cmi())


def _witness_text(w: Witness) -> str:
    premise, conclusion = (render_cmi(s) for s in w.direction)
    header = [
        f"# separating distribution: satisfies {premise}, violates {conclusion}",
        f"# template {w.template}, pivots {','.join(map(str, w.pivot_indices))}",
    ]
    return "\n".join(header) + "\n" + render_distribution(w.distribution)


def _emit_witness(w: Witness, out: str | None) -> dict:
    """Write the witness file if requested; return its JSON description."""
    text = _witness_text(w)
    payload = {
        "template": w.template,
        "pivots": list(w.pivot_indices),
        "premise": render_cmi(w.direction[0]),
        "conclusion": render_cmi(w.direction[1]),
        "distribution": text,
    }
    if out is not None:
        with open(out, "w") as fh:
            fh.write(text)
        payload["file"] = out
    return payload


def _sample_stream(n: int, seed: int, samples: int):
    for i in range(samples):
        yield random_distribution(n, (2,) * n, seed + i, 16)


def _verify_agree(k: Cmi, k2: Cmi, seed: int, samples: int, relation: str) -> None:
    """Demand that the two statements hold on exactly the same sampled distributions."""
    for p in _sample_stream(k.n, seed, samples):
        if is_valid(p, k) != is_valid(p, k2):
            raise RuntimeError(
                f"verification failed: sampled distribution separates statements "
                f"declared {relation}"
            )


def _verify_entailment(k: Cmi, k2: Cmi, seed: int, samples: int) -> None:
    for p in _sample_stream(k.n, seed, samples):
        if is_valid(p, k) and not is_valid(p, k2):
            raise RuntimeError(
                "verification failed: sampled distribution satisfies the premise "
                "but violates the declared consequence"
            )


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_canon(args: argparse.Namespace) -> int:
    k = parse_cmi(args.statement, args.n)
    canonical = _canonical_text(k)
    if args.verify:
        _verify_agree(k, canonicalize(k).as_cmi(), args.seed, args.samples, "equivalent")
    if args.json:
        _print_json({"command": "canon", "canonical": [canonical]})
    else:
        print(canonical)
    return 0


def cmd_equiv(args: argparse.Namespace) -> int:
    k = parse_cmi(args.statement, args.n)
    k2 = parse_cmi(args.statement2, args.n)
    answer = equivalent(k, k2)
    verdict = "EQUIVALENT" if answer else "NOT EQUIVALENT"
    witness_payload = None
    if not answer:
        witness_payload = _emit_witness(witness_non_equivalence(k, k2), args.out)
    if args.verify and answer:
        _verify_agree(k, k2, args.seed, args.samples, "equivalent")
    if args.json:
        payload = {
            "command": "equiv",
            "verdict": verdict,
            "canonical": [_canonical_text(k), _canonical_text(k2)],
        }
        if witness_payload is not None:
            payload["witness"] = witness_payload
        _print_json(payload)
    else:
        print(_verdict_line(verdict, answer))
        if witness_payload is not None and args.out is None:
            print(witness_payload["distribution"], end="")
    return 0 if answer else 1


def cmd_implies(args: argparse.Namespace) -> int:
    k = parse_cmi(args.statement, args.n)
    k2 = parse_cmi(args.statement2, args.n)
    answer = implies(k, k2)
    verdict = "IMPLIES" if answer else "DOES NOT IMPLY"
    witness_payload = None
    if not answer:
        witness_payload = _emit_witness(witness_non_implication(k, k2), args.out)
    if args.verify and answer:
        _verify_entailment(k, k2, args.seed, args.samples)
    if args.json:
        payload = {
            "command": "implies",
            "verdict": verdict,
            "canonical": [_canonical_text(k), _canonical_text(k2)],
        }
        if witness_payload is not None:
            payload["witness"] = witness_payload
        _print_json(payload)
    else:
        print(_verdict_line(verdict, answer))
        if witness_payload is not None and args.out is None:
            print(witness_payload["distribution"], end="")
    return 0 if answer else 1


def cmd_witness(args: argparse.Namespace) -> int:
    k = parse_cmi(args.statement, args.n)
    k2 = parse_cmi(args.statement2, args.n)
    if implies(k, k2):
        verdict = "IMPLIES"
        if args.json:
            _print_json(
                {
                    "command": "witness",
                    "verdict": verdict,
                    "canonical": [_canonical_text(k), _canonical_text(k2)],
                }
            )
        else:
            print(_verdict_line("IMPLIES (no separating distribution exists)", False))
        return 1
    w = witness_non_implication(k, k2)
    witness_payload = _emit_witness(w, args.out)
    if args.json:
        _print_json(
            {
                "command": "witness",
                "verdict": "DOES NOT IMPLY",
                "canonical": [_canonical_text(k), _canonical_text(k2)],
                "witness": witness_payload,
            }
        )
    elif args.out is None:
        print(witness_payload["distribution"], end="")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    k = parse_cmi(args.statement, args.n)
    with open(args.dist) as fh:
        p = parse_distribution(fh.read())
    answer = is_valid(p, k)
    j = j_value(p, k)
    if args.verify and (abs(j) <= TOLERANCE) != answer:
        raise RuntimeError(
            f"verification failed: exact verdict {answer} disagrees with J = {j!r}"
        )
    verdict = "VALID" if answer else "INVALID"
    if args.json:
        _print_json(
            {
                "command": "check",
                "verdict": verdict,
                "canonical": [_canonical_text(k)],
                "values": {"j_value": j},
            }
        )
    else:
        print(_verdict_line(verdict, answer))
        print(f"J = {j:.12f}")
    return 0 if answer else 1


def _measure(p: JointDistribution, k: Cmi) -> tuple[str, float]:
    if len(k.blocks) <= 1:
        label = "H" + render_cmi(k)[1:]
        block = k.blocks[0] if k.blocks else frozenset()
        return label, cond_entropy(p, block, k.cond)
    return "J" + render_cmi(k)[1:], j_value(p, k)


def cmd_entropy(args: argparse.Namespace) -> int:
    with open(args.dist) as fh:
        p = parse_distribution(fh.read())
    statements = [parse_cmi(expr, args.n) for expr in args.statements]
    measures = [_measure(p, k) for k in statements]
    if args.json:
        _print_json(
            {
                "command": "entropy",
                "canonical": [_canonical_text(k) for k in statements],
                "values": {
                    "measures": [{"expr": label, "value": value} for label, value in measures]
                },
            }
        )
    else:
        for label, value in measures:
            print(f"{label} = {value:.12f}")
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    k = parse_cmi(args.statement, args.n)
    components = decompose_to_cis(k)
    if args.verify:
        for p in _sample_stream(k.n, args.seed, args.samples):
            if is_valid(p, k) != all(is_valid(p, c) for c in components):
                raise RuntimeError(
                    "verification failed: sampled distribution separates the statement "
                    "from its decomposition"
                )
    rendered = [render_cmi(c) for c in components]
    if args.json:
        _print_json(
            {
                "command": "decompose",
                "canonical": [_canonical_text(k)],
                "values": {"components": rendered},
            }
        )
    else:
        for line in rendered:
            print(line)
    return 0


def _add_common(p: argparse.ArgumentParser, statements: int) -> None:
    if statements == 1:
        p.add_argument("statement", help="CMI statement, e.g. 'I(1,2 ; 3 | 4)'")
    else:
        p.add_argument("statement", help="premise statement")
        p.add_argument("statement2", help="conclusion statement")
    p.add_argument("--n", type=int, required=True, help="ground-set size")
    p.add_argument("--json", action="store_true", help="emit one JSON object on stdout")


def _add_verify(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--verify",
        action="store_true",
        help="cross-check the verdict against the exact oracle on random distributions",
    )
    p.add_argument("--seed", type=int, default=0, help="base seed for --verify sampling")
    p.add_argument("--samples", type=int, default=200, help="sample count for --verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmikit",
        description="decision engine and exact oracle for conditional mutual independence",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="print the canonical form of a statement")
    _add_common(p, 1)
    _add_verify(p)
    p.set_defaults(handler=cmd_canon)

    p = sub.add_parser("equiv", help="decide whether two statements are equivalent")
    _add_common(p, 2)
    _add_verify(p)
    p.add_argument("--out", help="write the separating distribution to this file")
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("implies", help="decide whether the first statement implies the second")
    _add_common(p, 2)
    _add_verify(p)
    p.add_argument("--out", help="write the separating distribution to this file")
    p.set_defaults(handler=cmd_implies)

    p = sub.add_parser("witness", help="produce a distribution separating two statements")
    _add_common(p, 2)
    p.add_argument("--out", help="write the separating distribution to this file")
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser("check", help="test a statement against a distribution file")
    _add_common(p, 1)
    p.add_argument("--dist", required=True, help="distribution file to check against")
    p.add_argument(
        "--verify",
        action="store_true",
        help="cross-check the exact verdict against the entropy defect",
    )
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("entropy", help="evaluate entropy and defect measures on a distribution")
    p.add_argument("statements", nargs="+", help="statements to measure")
    p.add_argument("--n", type=int, required=True, help="ground-set size")
    p.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    p.add_argument("--dist", required=True, help="distribution file to measure")
    p.set_defaults(handler=cmd_entropy)

    p = sub.add_parser("decompose", help="split a statement into pairwise conditional independencies")
    _add_common(p, 1)
    _add_verify(p)
    p.set_defaults(handler=cmd_decompose)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
