"""Command-line interface.

Subcommands: corpus, load, features, extract, pipeline, bench, redundancy,
overlap, overlap-all. Every CSV output starts with a machine-readable
provenance comment (tool version, seed, config hash); outputs are
deterministic given seed, inputs and the data values themselves (bench raw
wall-times are measurements and vary run to run).

Exit codes: 0 success, 1 domain/validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bench import BenchmarkPlan, run_benchmark
from .errors import TsfsbError
from .features import catalog, extract_set
from .interchange import read_interchange, write_interchange
from .matrix import run_pipeline
from .overlap import least_matched, overlap_S, pairwise_overlap
from .pca import components_for_threshold, cumvar_curve, pca, prop_pcs_for_threshold
from .series import gen_diverse_corpus, load_corpus, save_corpus
from . import svg


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, matching the domain/validation error class
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


_NON_SEMANTIC_ARGS = {
    # paths and execution knobs; results are bitwise independent of these,
    # so runs in different places / at different worker counts still
    # produce byte-identical outputs
    "out", "corpus", "matrix", "matrices", "test", "benchmark", "input",
    "svg", "threads", "verbose",
}


def _provenance(args: argparse.Namespace) -> str:
    payload = {
        k: v for k, v in sorted(vars(args).items())
        if k != "func" and k not in _NON_SEMANTIC_ARGS and not callable(v)
    }
    digest = hashlib.sha256(
        json.dumps(payload, sort_keys=True, default=str).encode()
    ).hexdigest()[:12]
    record = {
        "config": digest,
        "seed": getattr(args, "seed", None),
        "tool": "tsfsb",
        "version": __version__,
    }
    return "provenance: " + json.dumps(record, sort_keys=True)


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "NaN"
        return repr(v)
    return str(v)


def _write_csv(path, header: list[str], rows, provenance: str) -> None:
    lines = [f"# {provenance}", ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_matrices(spec: str):
    return [read_interchange(p) for p in spec.split(",") if p]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_corpus(args) -> int:
    corpus = gen_diverse_corpus(args.n, args.seed, args.length)
    save_corpus(corpus, args.out, header=_provenance(args))
    print(f"wrote {len(corpus)} series of length {args.length} to {args.out}")
    return 0


def _cmd_load(args) -> int:
    corpus = load_corpus(args.input, max_len=args.max_len)
    lengths = [len(ts) for ts in corpus]
    print(f"{corpus.name}: {len(corpus)} series, "
          f"lengths {min(lengths)}..{max(lengths)}")
    if args.out:
        save_corpus(corpus, args.out)
        print(f"wrote cleaned corpus to {args.out}")
    return 0


def _cmd_features(args) -> int:
    rows = [(d.set_id, d.name, d.kind) for d in catalog(args.set, args.k_max)]
    lines = [f"# {_provenance(args)}", "set_id,name,kind"]
    lines += [",".join(r) for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_extract(args) -> int:
    corpus = load_corpus(args.corpus, max_len=args.max_len)
    m = extract_set(args.set, corpus, k_max=args.k_max, threads=args.threads)
    write_interchange(m, args.out, provenance=_provenance(args))
    print(f"wrote {m.n_series}x{m.n_features} matrix for {args.set} to {args.out}")
    return 0


def _cmd_pipeline(args) -> int:
    matrices = _load_matrices(args.matrices)
    filtered, reports = run_pipeline(matrices, max_missing=args.max_missing)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = [Path(src).name for src in args.matrices.split(",") if src]
    for i, name in enumerate(names):  # disambiguate clashing basenames
        if names.index(name) != i:
            names[i] = f"{i}_{name}"
    for m, name in zip(filtered, names):
        dest = out / name
        write_interchange(m, dest, provenance=_provenance(args))
        print(f"{m.set_id}: retained {m.n_series}x{m.n_features} -> {dest}")
    report_payload = {
        "provenance": _provenance(args),
        "feature_stage": [
            {
                "set_id": m.set_id,
                "dropped_features": rep.dropped_features,
                "retained_shape": rep.retained_shape,
            }
            for m, rep in zip(filtered, reports[:-1])
        ],
        "series_stage": {
            "dropped_series": reports[-1].dropped_series,
            "offending_sets": reports[-1].series_sets,
            "retained_shape": reports[-1].retained_shape,
        },
    }
    (out / "report.json").write_text(
        json.dumps(report_payload, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return 0


def _cmd_bench(args) -> int:
    plan = BenchmarkPlan(
        set_ids=tuple(args.sets.split(",")),
        lengths=tuple(int(x) for x in args.lengths.split(",")),
        repeats=args.reps,
        generator={"gaussian": "gaussian-noise", "noisy-sine": "noisy-sine",
                   "gaussian-noise": "gaussian-noise"}[args.generator],
        seed=args.seed,
        k_max=args.k_max,
    )
    result = run_benchmark(plan)
    prov = _provenance(args)
    _write_csv(
        args.out,
        ["set_id", "length", "repeat", "wall_time_s", "n_features_ok"],
        [
            (r.set_id, r.length, r.repeat, r.wall_time_s, r.n_features_ok)
            for r in result.rows if r.ok
        ],
        prov,
    )
    summaries = result.summaries()
    summary_path = Path(args.out).with_suffix(".summary.csv")
    _write_csv(
        summary_path,
        ["set_id", "length", "median_s", "iqr_s", "per_feature_median_s"],
        [
            (s.set_id, s.length, s.median_s, s.iqr_s, s.per_feature_median_s)
            for s in summaries
        ],
        prov,
    )
    print(f"wrote raw times to {args.out}, summaries to {summary_path}")
    if args.svg:
        curves, bands = [], []
        for set_id in plan.set_ids:
            cell = [s for s in summaries if s.set_id == set_id]
            xs = [float(s.length) for s in cell]
            curves.append((set_id, xs, [s.median_s for s in cell]))
            bands.append((
                [s.median_s - s.iqr_s / 2 for s in cell],
                [s.median_s + s.iqr_s / 2 for s in cell],
            ))
        Path(args.svg).write_text(svg.line_chart(
            curves, "feature-set computation time", "series length",
            "wall time (s)", log_x=True, log_y=True, bands=bands,
        ), encoding="utf-8")
        print(f"wrote plot to {args.svg}")
    return 0


def _cmd_redundancy(args) -> int:
    m = read_interchange(args.matrix)
    result = pca(m)
    curve = cumvar_curve(result)
    prov = _provenance(args)
    _write_csv(
        args.out, ["pc_fraction", "cumvar"],
        [(float(a), float(b)) for a, b in curve], prov,
    )
    k_star = components_for_threshold(result, args.threshold)
    proportion = prop_pcs_for_threshold(result, args.threshold)
    summary_path = Path(args.out).with_suffix(".summary.csv")
    _write_csv(
        summary_path, ["set_id", "k_star", "total_components", "proportion"],
        [(result.set_id, k_star, result.total_components, proportion)], prov,
    )
    print(f"{result.set_id},{k_star},{result.total_components},{proportion!r}")
    if args.svg:
        Path(args.svg).write_text(svg.line_chart(
            [(result.set_id, [float(a) for a, _ in curve],
              [float(b) for _, b in curve])],
            "cumulative explained variance",
            "fraction of principal components", "cumulative variance",
            hline=args.threshold,
        ), encoding="utf-8")
        print(f"wrote plot to {args.svg}")
    return 0


def _cmd_overlap(args) -> int:
    tm = read_interchange(args.test)
    bm = read_interchange(args.benchmark)
    result = overlap_S(tm, bm, threads=args.threads)
    below = dict(least_matched(tm, bm, cutoff=args.cutoff, threads=args.threads))
    prov = _provenance(args)
    _write_csv(
        args.out,
        ["test_set", "benchmark_set", "feature", "rho_max", "below_cutoff"],
        [
            (result.test_set, result.benchmark_set, name, float(r),
             int(name in below))
            for name, r in zip(result.feature_names, result.rho_max)
        ],
        prov,
    )
    summary_path = Path(args.out).with_suffix(".summary.csv")
    _write_csv(
        summary_path,
        ["test_set", "benchmark_set", "S", "cutoff", "n_below_cutoff"],
        [(result.test_set, result.benchmark_set, result.S, args.cutoff,
          len(below))],
        prov,
    )
    print(f"S({result.test_set}|{result.benchmark_set}) = {result.S!r}")
    return 0


def _cmd_overlap_all(args) -> int:
    matrices = _load_matrices(args.matrices)
    om = pairwise_overlap(matrices, threads=args.threads)
    prov = _provenance(args)
    header = ["benchmark\\test"] + om.set_ids
    rows = [
        [om.set_ids[b]] + [float(v) for v in om.S_values[b]]
        for b in range(len(om.set_ids))
    ]
    _write_csv(args.out, header, rows, prov)
    print(f"wrote {len(om.set_ids)}x{len(om.set_ids)} overlap matrix to {args.out}")
    if args.svg:
        Path(args.svg).write_text(svg.heatmap(
            om.set_ids, om.set_ids, om.S_values, "directed overlap S(test|benchmark)",
        ), encoding="utf-8")
        print(f"wrote heatmap to {args.svg}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="tsfsb", description=__doc__)
    p.add_argument("--version", action="version", version=f"tsfsb {__version__}")
    p.add_argument("--verbose", action="store_true",
                   help="echo provenance and show all warnings")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("corpus", help="generate a diverse synthetic corpus")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--length", type=int, default=1000)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_corpus)

    c = sub.add_parser("load", help="validate / clean a corpus directory")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--max-len", type=int, default=1000)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_load)

    c = sub.add_parser("features", help="dump a feature-set catalog as CSV")
    c.add_argument("--set", required=True)
    c.add_argument("--k-max", type=int, default=None)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_features)

    c = sub.add_parser("extract", help="extract a feature set over a corpus")
    c.add_argument("--set", required=True)
    c.add_argument("--corpus", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--k-max", type=int, default=None)
    c.add_argument("--max-len", type=int, default=1000)
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=_cmd_extract)

    c = sub.add_parser("pipeline", help="z-score and filter feature matrices")
    c.add_argument("--matrices", required=True,
                   help="comma-separated interchange CSV paths")
    c.add_argument("--max-missing", type=float, default=0.10)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_pipeline)

    c = sub.add_parser("bench", help="time feature-set extraction")
    c.add_argument("--sets", required=True)
    c.add_argument("--lengths", default="100,250,500,750,1000")
    c.add_argument("--reps", type=int, default=10)
    c.add_argument("--generator", default="gaussian",
                   choices=["gaussian", "gaussian-noise", "noisy-sine"])
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--k-max", type=int, default=None)
    c.add_argument("--out", required=True)
    c.add_argument("--svg")
    c.set_defaults(func=_cmd_bench)

    c = sub.add_parser("redundancy", help="PCA explained-variance analysis")
    c.add_argument("--matrix", required=True)
    c.add_argument("--threshold", type=float, default=0.90)
    c.add_argument("--out", required=True)
    c.add_argument("--svg")
    c.set_defaults(func=_cmd_redundancy)

    c = sub.add_parser("overlap", help="directed overlap of test vs benchmark")
    c.add_argument("--test", required=True)
    c.add_argument("--benchmark", required=True)
    c.add_argument("--cutoff", type=float, default=0.2)
    c.add_argument("--out", required=True)
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=_cmd_overlap)

    c = sub.add_parser("overlap-all", help="all-pairs overlap matrix")
    c.add_argument("--matrices", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--svg")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=_cmd_overlap_all)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            import warnings

            warnings.simplefilter("always")
            print(_provenance(args), file=sys.stderr)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return code
    except TsfsbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
