"""Command-line entry point: index, query, evaluate, serve.

Exit codes: 0 success, 1 user error (bad arguments, missing paths, unknown
images, malformed files), 2 internal error. The HUE_RANK_LOG environment
variable (error|info|debug) controls diagnostic verbosity.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import socket
import sys
from pathlib import Path

from .errors import HueRankError
from .index import IndexStore, build_index
from .query import STANDARD_COLUMNS, QuerySpec, evaluate, execute

log = logging.getLogger(__name__)

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _configure_logging() -> str:
    name = os.environ.get("HUE_RANK_LOG", "info").lower()
    level = _LOG_LEVELS.get(name, logging.INFO)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return name if name in _LOG_LEVELS else "info"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; bad flags are user
    # errors here, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hue-rank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="extract features for an image directory")
    p_index.add_argument("directory", help="directory of JPEG/PNG/BMP files")
    p_index.add_argument("--out", required=True, help="feature CSV to write")
    p_index.add_argument("--recursive", action="store_true",
                         help="descend into subdirectories")
    p_index.add_argument("--no-group-check", action="store_true",
                         help="skip the degenerate-grouping warning")
    p_index.set_defaults(func=cmd_index)

    p_query = sub.add_parser("query", help="rank images against a query image")
    p_query.add_argument("--index", required=True, help="feature CSV to load")
    p_query.add_argument("--query", required=True,
                         help="indexed image name, or a path to an external image")
    p_query.add_argument("--method", required=True,
                         help="retrieval method: pm1..pm5")
    p_query.add_argument("--channels", required=True,
                         help="channel selection over r, g, b (e.g. r, rg, rgb)")
    p_query.add_argument("--df", required=True, type=float,
                         help="difference factor: inclusive score tolerance")
    p_query.add_argument("--scope", choices=("group", "corpus"), default="group",
                         help="candidate set: the query's threshold group or "
                              "the whole corpus (default: group)")
    p_query.add_argument("--top", type=_positive_int, default=8,
                         help="rows to print after ranking (default: 8)")
    p_query.add_argument("--format", choices=("table", "csv", "json"),
                         default="table", help="output format (default: table)")
    p_query.set_defaults(func=cmd_query)

    p_eval = sub.add_parser("evaluate", help="emit the full rank matrix for a subset")
    p_eval.add_argument("--index", required=True, help="feature CSV to load")
    p_eval.add_argument("--subset", default=None,
                        help="comma-separated image names (default: all)")
    p_eval.add_argument("--out", default=None,
                        help="write the matrix CSV here instead of stdout")
    p_eval.set_defaults(func=cmd_evaluate)

    p_serve = sub.add_parser("serve", help="run the JSON service and web UI")
    p_serve.add_argument("--index", required=True, help="feature CSV to load")
    p_serve.add_argument("--images", required=True,
                         help="directory holding the indexed source images")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--webroot", default=None,
                         help="static directory to serve at / (the browser UI)")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def cmd_index(args) -> int:
    def progress(name, fv, exc):
        if fv is not None:
            print(f"indexed {name} ({fv.width}x{fv.height}, threshold {fv.threshold})")
        else:
            print(f"skipped {name}: {exc}")

    result = build_index(
        args.directory,
        recursive=args.recursive,
        group_check=not args.no_group_check,
        progress=progress,
    )
    result.store.save(args.out)
    print(f"wrote {args.out}")
    print(f"indexed: {len(result.store)}, skipped: {len(result.skipped)}")
    return 0


def _print_ranked(rows, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(
            [{"rank": r.rank, "name": r.name, "score": r.score} for r in rows],
            indent=2,
        ))
    elif fmt == "csv":
        print("rank,name,score")
        for r in rows:
            print(f"{r.rank},{r.name},{r.score:.6f}")
    else:
        width = max([len("name")] + [len(r.name) for r in rows])
        print(f"{'rank':>4}  {'name':<{width}}  {'score':>12}")
        for r in rows:
            print(f"{r.rank:>4}  {r.name:<{width}}  {r.score:>12.6f}")


def cmd_query(args) -> int:
    spec = QuerySpec(args.method, args.channels, args.df, args.scope)
    store = IndexStore.load(args.index)
    ranked = execute(store, args.query, spec)
    _print_ranked(ranked.results[: args.top], args.format)
    return 0


def cmd_evaluate(args) -> int:
    store = IndexStore.load(args.index)
    names = (
        [n for n in args.subset.split(",") if n]
        if args.subset
        else list(store.names)
    )
    matrix = evaluate(store, names, STANDARD_COLUMNS)
    lines = ["name," + ",".join(matrix.labels)]
    for row, name in enumerate(matrix.names):
        lines.append(name + "," + ",".join(str(r) for r in matrix.ranks[row]))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def _check_port_free(port: int) -> None:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
        try:
            sock.bind(("127.0.0.1", port))
        except OSError:
            raise OSError(f"port {port} is already in use") from None


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    store = IndexStore.load(args.index)
    images = Path(args.images)
    if not images.is_dir():
        raise FileNotFoundError(f"no such images directory: {images}")
    webroot = None
    if args.webroot is not None:
        webroot = Path(args.webroot)
        if not webroot.is_dir():
            raise FileNotFoundError(f"no such webroot directory: {webroot}")
    _check_port_free(args.port)
    app = create_app(store, images, webroot=webroot,
                     thumb_cache=Path(f"{args.index}.thumbs"))
    level = os.environ.get("HUE_RANK_LOG", "info").lower()
    uvicorn.run(app, host="127.0.0.1", port=args.port,
                log_level=level if level in _LOG_LEVELS else "info")
    return 0


def main(argv=None) -> int:
    _configure_logging()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HueRankError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1
    except Exception:
        log.exception("internal error")
        return 2


if __name__ == "__main__":
    sys.exit(main())
