"""Command-line driver: ``ubtri {count,enumerate,topk,sample,gen,bench}``.

Exit status is 0 on success, 1 when the input cannot be read or processed and
2 for usage errors. The default worker count comes from ``UBTRI_THREADS`` and
is overridden by ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from contextlib import contextmanager

from . import bench, genprob
from .balance import Threshold
from .exact import count_baseline, count_improved, top_k
from .graph import EdgeListError, build_graph, load_edge_list, write_raw
from .sampling import MODES, VARIANTS, estimate

THREADS_ENV = "UBTRI_THREADS"
TIMING_FIELDS = ("elapsed_ms", "qps")


class InputError(Exception):
    pass


def _threshold(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid threshold {text!r}") from None
    if not 0.5 <= t <= 1.0:
        raise argparse.ArgumentTypeError(
            f"t must lie in [0.5, 1] (thresholds below 0.5 are not supported), got {t}"
        )
    return t


def _positive_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {k}")
    return k


def _float_list(text: str) -> list[float]:
    try:
        return [_threshold(x) for x in text.split(",") if x]
    except argparse.ArgumentTypeError:
        raise
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid list {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_positive_int(x) for x in text.split(",") if x]


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _load(path: str, format: str = "probabilistic"):
    try:
        with open(path) as fh:
            return load_edge_list(fh, format)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except EdgeListError as exc:
        raise InputError(f"{path}: {exc}") from None


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        try:
            fh = open(path, "w")
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None
        with fh:
            yield fh


def _dump_json(obj: dict, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _strip_timing(obj: dict, keep: bool) -> dict:
    return obj if keep else {k: v for k, v in obj.items() if k not in TIMING_FIELDS}


# -- commands -------------------------------------------------------------------


def cmd_count(args) -> int:
    g = build_graph(_load(args.input))
    run = count_baseline if args.algo == "baseline" else count_improved
    start = time.perf_counter()
    counts = run(g, Threshold(args.t), None, args.threads)
    elapsed = (time.perf_counter() - start) * 1e3
    result = {"t": args.t, **counts.as_dict(), "elapsed_ms": elapsed, "algorithm": args.algo}
    with _output(args.output) as out:
        _dump_json(_strip_timing(result, args.timing), out)
    return 0


def _tsv_rows(g, triangles, classes, sort):
    rows = [tri for tri in triangles if classes == "both" or tri.cls.value == classes]
    if sort:
        rows.sort(key=lambda tri: tri.nodes)
    lab = g.labels
    for tri in rows:
        yield f"{lab[tri.u]}\t{lab[tri.v]}\t{lab[tri.w]}\t{tri.p_bal:.12g}\t{tri.cls.value}\n"


def cmd_enumerate(args) -> int:
    g = build_graph(_load(args.input))
    run = count_baseline if args.algo == "baseline" else count_improved
    found = []
    run(g, Threshold(args.t), found.append, args.threads)
    with _output(args.output) as out:
        out.writelines(_tsv_rows(g, found, args.classes, args.sorted))
    return 0


def cmd_topk(args) -> int:
    g = build_graph(_load(args.input))
    best = top_k(g, args.k, args.target, args.floor)
    with _output(args.output) as out:
        out.writelines(_tsv_rows(g, best, "both", False))
    return 0


def _read_truth(path: str) -> tuple[int, int]:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return int(data["balanced"]), int(data["unbalanced"])
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except (ValueError, KeyError, TypeError):
        raise InputError(f"{path}: expected a JSON object with balanced/unbalanced counts") from None


def cmd_sample(args) -> int:
    g = build_graph(_load(args.input))
    truth = _read_truth(args.truth) if args.truth else None
    try:
        rep = estimate(g, args.t, args.samples, args.seed, args.mode, args.variant, args.threads,
                       checkpoints=args.checkpoints)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if truth:
        rep.with_truth(*truth)
    with _output(args.output) as out:
        _dump_json(_strip_timing(rep.as_dict(), args.timing), out)
    return 0


def cmd_gen(args) -> int:
    try:
        spec = genprob.DistributionSpec.parse(args.dist, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if spec.kind == "signed-beta":
        raw = _load(args.input, "signed")
    else:
        raw = _load(args.input, "plain")
    assigned = genprob.assign(raw, spec)
    with _output(args.output) as out:
        write_raw(assigned, assigned.values, out)
    summary = {"distribution": str(spec), "seed": args.seed, **genprob.summarize(assigned.values)}
    target = sys.stderr if args.output in (None, "-") else sys.stdout
    _dump_json(summary, target)
    return 0


def cmd_bench(args) -> int:
    truths = args.truth or []
    if args.mape and len(truths) != len(args.input):
        raise _UsageError("--mape needs one --truth file per --input")
    records = []
    for n, path in enumerate(args.input):
        g = build_graph(_load(path))
        name = os.path.splitext(os.path.basename(path))[0]
        if args.mode in ("exact", "all"):
            records += bench.exact_sweep(g, name, args.t_sweep, args.repeat, args.threads)
        if args.mode in ("sampling", "all"):
            truth = _read_truth(truths[n]) if args.mape else None
            records += bench.sampling_rows(
                g, args.t, name, args.samples, args.seed, truth=truth,
                checkpoints=args.checkpoints, runs=args.runs, threads=args.threads,
            )
    with _output(args.output) as out:
        bench.write_csv(records, out)
    return 0


class _UsageError(Exception):
    pass


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ubtri", description="Balanced/unbalanced triangles on uncertain signed graphs."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, t_required=True):
        p.add_argument("--input", required=True, help="probabilistic edge list (u v p per line)")
        if t_required:
            p.add_argument("--t", type=_threshold, required=True, help="probability threshold in [0.5, 1]")
        p.add_argument("--threads", type=_positive_int, default=_default_threads(),
                       help=f"worker count (default: ${THREADS_ENV} or 1)")
        p.add_argument("--output", default=None, help="output path (default: stdout)")

    p = sub.add_parser("count", help="exact balanced/unbalanced counts as JSON")
    common(p)
    p.add_argument("--algo", choices=("baseline", "improved"), default="improved")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit wall-clock fields")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list qualifying triangles as TSV")
    common(p)
    p.add_argument("--algo", choices=("baseline", "improved"), default="improved")
    p.add_argument("--classes", choices=("balanced", "unbalanced", "both"), default="both")
    p.add_argument("--sorted", action="store_true", help="order rows by node triple")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("topk", help="the k most confidently balanced or unbalanced triangles")
    common(p, t_required=False)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--target", choices=("balanced", "unbalanced"), default="balanced")
    p.add_argument("--floor", type=_threshold, default=0.5, help="minimum threshold (default 0.5)")
    p.set_defaults(func=cmd_topk)

    p = sub.add_parser("sample", help="sampling estimate as JSON")
    common(p)
    p.add_argument("--mode", choices=MODES, default="edge")
    p.add_argument("--variant", choices=VARIANTS, default="improved")
    p.add_argument("--samples", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--truth", help="exact-count JSON (from `ubtri count`) for MAPE")
    p.add_argument("--checkpoints", type=_int_list, default=None,
                   help="comma-separated sample counts at which to record running estimates")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit wall-clock fields")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("gen", help="assign sign probabilities to an edge list")
    p.add_argument("--input", required=True, help="plain (u v) or signed (u v s) edge list")
    p.add_argument("--dist", required=True,
                   help="uniform | beta:A,B | normal:MU,SIGMA | signed-beta[:A,B]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="runtime / QPS / MAPE rows as CSV")
    p.add_argument("--input", action="append", required=True, help="probabilistic edge list (repeatable)")
    p.add_argument("--mode", choices=("exact", "sampling", "all"), default="exact")
    p.add_argument("--t-sweep", type=_float_list, default=list(bench.DEFAULT_SWEEP),
                   help="comma-separated thresholds for exact rows (default 0.5..0.95 step 0.05)")
    p.add_argument("--t", type=_threshold, default=0.8, help="threshold for sampling rows")
    p.add_argument("--repeat", type=_positive_int, default=3, help="runs per exact timing (median)")
    p.add_argument("--samples", type=_positive_int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mape", action="store_true", help="add MAPE rows (needs --truth)")
    p.add_argument("--truth", action="append", help="exact-count JSON per input (repeatable)")
    p.add_argument("--checkpoints", type=_int_list, default=list(bench.DEFAULT_CHECKPOINTS))
    p.add_argument("--runs", type=_positive_int, default=100, help="runs averaged per MAPE point")
    p.add_argument("--threads", type=_positive_int, default=_default_threads())
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except InputError as exc:
        print(f"ubtri: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
