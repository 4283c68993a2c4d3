"""Command-line client for the engine.

Thin wrapper over the service handlers: each subcommand builds the same
request model the HTTP endpoint takes and prints the response model's JSON,
so CLI output and service output are byte-identical for the same request.

Exit codes: 0 success, 1 reported invariant violation (quiver validate on an
invalid quiver), 2 usage, 3 domain error, 4 internal invariant breach (a
non-Laurent label on an allowed mutation path, which the theory forbids).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .service import handlers as H
from .service import models as M

EXIT_DOMAIN = 3
EXIT_INTERNAL = 4


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(model, pretty=False):
    if pretty:
        print(json.dumps(model.model_dump(), indent=2))
    else:
        print(model.model_dump_json())


def _quiver_model(data):
    return M.QuiverModel(**data)


def _parse_ints(text):
    return [int(v) for v in text.split(",") if v != ""]


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(
        prog="superclus",
        description="Exact engine for cluster superalgebras: quiver mutation, "
        "presymplectic form checks, superfriezes and dual-number sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quiver", help="validate/mutate extended quivers")
    qsub = q.add_subparsers(dest="action", required=True)
    for name in ("validate", "mutate", "allowed", "dot"):
        p = qsub.add_parser(name, parents=[common])
        p.add_argument("--in", dest="infile", required=True, help="quiver JSON file or -")
        if name in ("mutate", "allowed"):
            p.add_argument("--vertex", type=int, required=True)

    s = sub.add_parser("seed", help="exchange relations on seeds")
    ssub = s.add_subparsers(dest="action", required=True)
    p = ssub.add_parser("mutate", parents=[common])
    p.add_argument("--in", dest="infile", required=True,
                   help="quiver JSON or full mutate-request JSON")
    p.add_argument("--vertex", type=int)
    p.add_argument("--sequence", help="comma separated vertices, applied in order")
    p.add_argument("--force", action="store_true", help="skip the Condition C gate")
    p = ssub.add_parser("explore", parents=[common])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--depth", type=int, required=True)
    p = ssub.add_parser("cyclic", parents=[common])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--order", required=True, help="comma separated vertices")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--eval-ones", action="store_true")

    f = sub.add_parser("form", help="presymplectic 2-form")
    fsub = f.add_subparsers(dest="action", required=True)
    p = fsub.add_parser("show", parents=[common])
    p.add_argument("--in", dest="infile", required=True)
    p = fsub.add_parser("check", parents=[common])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--vertex", type=int, required=True)

    fr = sub.add_parser("frieze", help="superfriezes")
    frsub = fr.add_subparsers(dest="action", required=True)
    for name in ("build", "check"):
        p = frsub.add_parser(name, parents=[common])
        p.add_argument("--width", type=int, required=True)
        p.add_argument("--diagonals", type=int)
        p.add_argument("--west", type=int, default=1)
        p.add_argument("--rational-seed", help="comma separated rationals")
        p.add_argument("--classical", action="store_true",
                       help="set all odd entries to zero (needs --rational-seed)")
        p.add_argument("--seed", type=int, help="RNG seed for a random rational diagonal")
        if name == "build":
            p.add_argument("--format", choices=("json", "array", "csv"),
                           default="json", dest="out_format")

    sq = sub.add_parser("seq", help="dual-number integer sequences")
    sqsub = sq.add_subparsers(dest="action", required=True)
    for name in ("somos", "somos2", "fib", "kron"):
        p = sqsub.add_parser(name, parents=[common])
        p.add_argument("--count", type=int, default=15)
        p.add_argument("--bfile", action="store_true", help="emit OEIS-style b-file")
        if name == "kron":
            p.add_argument("--k", type=int)
            p.add_argument("--l", type=int)

    sv = sub.add_parser("serve", help="run the HTTP JSON service", parents=[common])
    sv.add_argument("--port", type=int, default=8000)
    sv.add_argument("--host", default="127.0.0.1")

    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except H.DomainError as exc:
        print(json.dumps({"error": "DomainError", "detail": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    except H.InternalInvariantError as exc:
        print(
            json.dumps({"error": "InternalInvariantError", "detail": str(exc)}),
            file=sys.stderr,
        )
        return EXIT_INTERNAL


def _dispatch(args) -> int:
    pretty = args.pretty
    if args.command == "quiver":
        data = _read_json(args.infile)
        qm = _quiver_model(data)
        if args.action == "validate":
            resp = H.validate(M.ValidateRequest(quiver=qm))
            _emit(resp, pretty)
            return 0 if resp.valid else 1
        elif args.action == "allowed":
            _emit(H.allowed(M.AllowedRequest(quiver=qm, vertex=args.vertex)), pretty)
        elif args.action == "mutate":
            _emit(
                H.mutate_quiver(M.QuiverMutateRequest(quiver=qm, vertex=args.vertex)),
                pretty,
            )
        elif args.action == "dot":
            from .quiver import ExtendedQuiver

            print(ExtendedQuiver.from_json(data).to_dot())
        return 0

    if args.command == "seed":
        if args.action == "mutate":
            data = _read_json(args.infile)
            if "quiver" in data:  # full request JSON
                req = M.MutateRequest(**data)
                if args.vertex is not None:
                    req.vertex = args.vertex
                _emit(H.mutate(req), pretty)
                return 0
            qm = _quiver_model(data)
            if args.sequence:
                labels = None
                resp = None
                for v in _parse_ints(args.sequence):
                    req = M.MutateRequest(
                        quiver=qm, vertex=v, labels=labels, force=args.force
                    )
                    resp = H.mutate(req)
                    qm = resp.quiver
                    labels = resp.labels
                _emit(resp, pretty)
            else:
                if args.vertex is None:
                    raise H.DomainError("seed mutate needs --vertex or --sequence")
                _emit(
                    H.mutate(
                        M.MutateRequest(quiver=qm, vertex=args.vertex, force=args.force)
                    ),
                    pretty,
                )
        elif args.action == "explore":
            qm = _quiver_model(_read_json(args.infile))
            _emit(H.explore(M.ExploreRequest(quiver=qm, depth=args.depth)), pretty)
        elif args.action == "cyclic":
            qm = _quiver_model(_read_json(args.infile))
            _emit(
                H.cyclic(
                    M.CyclicRequest(
                        quiver=qm,
                        order=_parse_ints(args.order),
                        steps=args.steps,
                        eval_at_ones=args.eval_ones,
                    )
                ),
                pretty,
            )
        return 0

    if args.command == "form":
        qm = _quiver_model(_read_json(args.infile))
        if args.action == "show":
            _emit(H.omega(M.OmegaRequest(quiver=qm)), pretty)
        else:
            _emit(H.omega(M.OmegaRequest(quiver=qm, check_vertex=args.vertex)), pretty)
        return 0

    if args.command == "frieze":
        even_seed = None
        if args.rational_seed:
            even_seed = args.rational_seed.split(",")
        elif args.seed is not None:
            import random

            rng = random.Random(args.seed)
            even_seed = [
                str(Fraction(rng.randint(1, 9), rng.randint(1, 3)))
                for _ in range(args.width)
            ]
        req = M.FriezeRequest(
            width=args.width,
            diagonals=args.diagonals,
            west=args.west,
            even_seed=even_seed,
            odd_zero=args.classical,
        )
        if args.action == "check":
            resp = H.build_frieze(req)
            summary = {
                "width": resp.width,
                "glide_ok": resp.glide_ok,
                "period": resp.period,
                "monodromy_ok": resp.monodromy_ok,
            }
            print(json.dumps(summary, indent=2 if pretty else None))
            return 0
        out_format = getattr(args, "out_format", "json")
        if out_format == "json":
            _emit(H.build_frieze(req), pretty)
        else:
            from .frieze import render_array, to_csv

            fr_obj = H.build_frieze_object(req)
            if out_format == "array":
                print(render_array(fr_obj))
            else:
                if fr_obj.m_sym != 0:
                    raise H.DomainError(
                        "csv export needs a numeric frieze "
                        "(--rational-seed with --classical)"
                    )
                print(to_csv(fr_obj), end="")
        return 0

    if args.command == "seq":
        req = M.SequenceRequest(
            name=args.action,
            count=args.count,
            k=getattr(args, "k", None),
            l=getattr(args, "l", None),
        )
        resp = H.sequence(req)
        if args.bfile:
            for idx, (a, b) in enumerate(zip(resp.a, resp.b), start=1):
                print(f"{idx} {a} {b}")
        else:
            _emit(resp, pretty)
        return 0

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
