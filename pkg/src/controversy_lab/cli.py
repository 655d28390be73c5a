"""Command-line pipeline: partition / levels / embed / energy / brw / rwc / guerra / sweep / report.

Exit codes: 0 success, 1 usage error, 2 data error. Every randomized
subcommand takes --seed and is end-to-end deterministic: the same seed (and
any --threads value) produces byte-identical output files.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys

from . import report as report_mod
from .baselines import RwcConfig, guerra_polarity, rwc
from .brw import WalkRecord
from .energy import assign_energies
from .errors import ControversyLabError, ParseError
from .experiments import AXES, noise_sweep
from .features import export_embedding_text, save_embedding
from .graph import (
    AttributedGraph,
    largest_weakly_connected_component,
    load_attribute_table,
    load_edge_list,
)
from .partition import SIDE_NAMES, detect_two_communities, load_partition, partition_to_text
from .pipeline import RunSettings, build_feature_space, run_pipeline
from .topology import all_conductances, assign_levels

logger = logging.getLogger(__name__)

THREADS_ENV = "CONTROVERSY_LAB_THREADS"

TRUTHY = {"1", "true", "yes", "on"}
FALSY = {"0", "false", "no", "off"}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2
    def error(self, message):
        raise UsageError(message)


def _add_graph_args(p: Parser) -> None:
    p.add_argument("--edges", required=True, help="edge list file (src<TAB>dst per line)")
    p.add_argument("--attributes", help="attribute CSV (node,<key1>,...)")
    p.add_argument("--reverse-edges", action="store_true", help="flip every directed edge")
    p.add_argument("--lcc", action="store_true", help="restrict to the largest weakly connected component")
    p.add_argument("--config", help="key = value config file; explicit flags win")


def _add_partition_args(p: Parser) -> None:
    p.add_argument("--partition", help="partition file (label<TAB>{0|1}); detected spectrally when absent")


def _add_feature_args(p: Parser) -> None:
    p.add_argument("--mode", default="node2vec", choices=("node2vec", "attributes", "both"))
    p.add_argument("--dims", type=int, default=20)
    p.add_argument("--n2v-walks", type=int, default=10)
    p.add_argument("--n2v-length", type=int, default=80)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--p", type=float, default=1.0, help="node2vec return parameter")
    p.add_argument("--q", type=float, default=1.0, help="node2vec in-out parameter")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--cache-dir", help="embedding cache directory (keyed by graph/params/seed)")


def _add_energy_args(p: Parser) -> None:
    p.add_argument("--energy", default="simple", choices=("simple", "full"))
    p.add_argument("--multiplier", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)


def _add_common(p: Parser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help=f"workers (default ${THREADS_ENV} or 1)")
    p.add_argument("--out", help="output file (stdout when omitted)")


def build_parser() -> Parser:
    parser = Parser(prog="controversy-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    sp = sub.add_parser("partition", help="two-way spectral split", add_help=True)
    _add_graph_args(sp)
    _add_common(sp)

    sp = sub.add_parser("levels", help="boundary levels and conductance per node")
    _add_graph_args(sp)
    _add_partition_args(sp)
    _add_common(sp)

    sp = sub.add_parser("embed", help="train/export the feature space")
    _add_graph_args(sp)
    _add_feature_args(sp)
    _add_common(sp)
    sp.add_argument("--text-out", help="also write a `label v1 ... vd` text export")

    sp = sub.add_parser("energy", help="per-node initial energy and loss")
    _add_graph_args(sp)
    _add_partition_args(sp)
    _add_feature_args(sp)
    _add_energy_args(sp)
    _add_common(sp)

    sp = sub.add_parser("brw", help="run the walk engine and report RWPR/BCRPR")
    _add_graph_args(sp)
    _add_partition_args(sp)
    _add_feature_args(sp)
    _add_energy_args(sp)
    _add_common(sp)
    sp.add_argument("--walks", type=int, default=50, help="walk repetitions per node")
    sp.add_argument("--dump-walks", help="write per-walk records CSV here")

    sp = sub.add_parser("rwc", help="absorbing-walk controversy baseline")
    _add_graph_args(sp)
    _add_partition_args(sp)
    _add_common(sp)
    sp.add_argument("--k", type=int, default=10, help="influencers per side")
    sp.add_argument("--repeats", type=int, default=100)

    sp = sub.add_parser("guerra", help="boundary polarity baseline")
    _add_graph_args(sp)
    _add_partition_args(sp)
    _add_common(sp)

    sp = sub.add_parser("sweep", help="noise-robustness sweep")
    _add_graph_args(sp)
    _add_partition_args(sp)
    _add_feature_args(sp)
    _add_energy_args(sp)
    _add_common(sp)
    sp.add_argument("--walks", type=int, default=50)
    sp.add_argument("--axis", default="structural", choices=AXES)
    sp.add_argument("--levels", default="0:1:0.1", help="comma list or start:end:step")
    sp.add_argument("--repartition", action="store_true", help="re-detect the split at every level")

    sp = sub.add_parser("report", help="summarize a stored report file")
    sp.add_argument("path")

    return parser


def parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected `key = value`")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _inject_config(command: str, rest: list[str], parser: Parser) -> list[str]:
    """Turn config-file entries into pseudo-flags ahead of the real ones."""
    path = None
    for i, tok in enumerate(rest):
        if tok == "--config" and i + 1 < len(rest):
            path = rest[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return rest
    sub = parser._subparsers._group_actions[0].choices[command]  # noqa: SLF001
    flag_actions = {a.dest: a for a in sub._actions}  # noqa: SLF001
    injected: list[str] = []
    for key, value in parse_config_file(path).items():
        action = flag_actions.get(key)
        if action is None:
            raise UsageError(f"config key {key!r} is not a flag of `{command}`")
        flag = "--" + key.replace("_", "-")
        if isinstance(action, argparse._StoreTrueAction):  # noqa: SLF001
            low = value.lower()
            if low in TRUTHY:
                injected.append(flag)
            elif low not in FALSY:
                raise UsageError(f"config key {key!r} must be boolean, got {value!r}")
        else:
            injected.extend([flag, value])
    return injected + rest


def parse_levels(spec: str) -> list[float]:
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"--levels range must be start:end:step, got {spec!r}")
        start, end, step = (float(x) for x in parts)
        if step <= 0:
            raise UsageError("--levels step must be positive")
        values = []
        v = start
        while v <= end + 1e-9:
            values.append(round(v, 10))
            v += step
        return values
    try:
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --levels {spec!r}") from None


def resolve_threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"${THREADS_ENV}={env!r} is not an integer") from None
    return 1


def load_graph(args) -> AttributedGraph:
    with open(args.edges, encoding="utf-8") as fh:
        g = load_edge_list(fh)
    if args.reverse_edges:
        g = g.reversed_edges()
    if args.lcc:
        g = largest_weakly_connected_component(g)
    if getattr(args, "attributes", None):
        with open(args.attributes, encoding="utf-8") as fh:
            table = load_attribute_table(fh, g)
        g = dataclasses.replace(g, attributes=table)
    return g


def load_or_detect_partition(g, args):
    if getattr(args, "partition", None):
        with open(args.partition, encoding="utf-8") as fh:
            return load_partition(fh, g)
    return detect_two_communities(g, args.seed)


def settings_from_args(args, threads: int) -> RunSettings:
    return RunSettings(
        mode=args.mode,
        dims=args.dims,
        n2v_walks=args.n2v_walks,
        n2v_length=args.n2v_length,
        n2v_window=args.window,
        n2v_p=args.p,
        n2v_q=args.q,
        n2v_epochs=args.epochs,
        n2v_negatives=args.negatives,
        energy=getattr(args, "energy", "simple"),
        multiplier=getattr(args, "multiplier", 1.0),
        alpha=getattr(args, "alpha", 1.0),
        beta=getattr(args, "beta", 1.0),
        gamma=getattr(args, "gamma", 1.0),
        walks=getattr(args, "walks", 50),
        seed=args.seed,
        threads=threads,
        cache_dir=args.cache_dir,
    )


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _input_echo(args) -> dict:
    echo = {"edges": args.edges}
    for key in ("attributes", "partition"):
        if getattr(args, key, None):
            echo[key] = getattr(args, key)
    if args.reverse_edges:
        echo["reverse_edges"] = True
    if args.lcc:
        echo["lcc"] = True
    return echo


def cmd_partition(args) -> None:
    g = load_graph(args)
    part = detect_two_communities(g, args.seed)
    _emit(args, partition_to_text(part, g))


def cmd_levels(args) -> None:
    g = load_graph(args)
    part = load_or_detect_partition(g, args)
    lm = assign_levels(g, part)
    conds = all_conductances(g, part)
    lines = ["node,side,level,conductance"]
    for u in range(g.n):
        lines.append(
            f"{g.labels[u]},{SIDE_NAMES[part.side[u]]},{lm.level[u]},{conds[u]!r}"
        )
    _emit(args, "\n".join(lines) + "\n")


def cmd_embed(args, threads: int) -> None:
    g = load_graph(args)
    if not args.out:
        raise UsageError("embed writes a binary cache file; --out is required")
    fs = build_feature_space(g, settings_from_args(args, threads))
    save_embedding(args.out, fs.vectors, fs.mode, args.seed)
    if args.text_out:
        export_embedding_text(args.text_out, g, fs.vectors)


def cmd_energy(args, threads: int) -> None:
    g = load_graph(args)
    part = load_or_detect_partition(g, args)
    settings = settings_from_args(args, threads)
    fs = build_feature_space(g, settings)
    lm = assign_levels(g, part)
    ea = assign_energies(
        g, fs, part, lm,
        mode=settings.energy, multiplier=settings.multiplier,
        alpha=settings.alpha, beta=settings.beta, gamma=settings.gamma,
    )
    lines = ["node,initial,loss"]
    for u in range(g.n):
        lines.append(f"{g.labels[u]},{ea.initial[u]!r},{ea.loss[u]!r}")
    _emit(args, "\n".join(lines) + "\n")


def _dump_walks(path: str, g: AttributedGraph, records: list[WalkRecord]) -> None:
    lines = ["start,crossed,deepest,steps,termination"]
    for rec in records:
        lines.append(
            f"{g.labels[rec.start]},{int(rec.crossed)},{rec.deepest_opposite_level},"
            f"{rec.steps},{rec.terminated_by}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_brw(args, threads: int) -> None:
    g = load_graph(args)
    part = load_or_detect_partition(g, args)
    settings = settings_from_args(args, threads)
    result = run_pipeline(g, settings, part)
    doc = report_mod.brw_report_document(result.report)
    doc["config"].update(_input_echo(args))
    doc["results"].update(
        {
            "boundary_nodes": result.boundary_count,
            "mean_initial": result.mean_initial,
            "mean_loss": result.mean_loss,
        }
    )
    if args.dump_walks:
        _dump_walks(args.dump_walks, g, result.records)
    _emit(args, report_mod.dumps(doc))


def cmd_rwc(args) -> None:
    g = load_graph(args)
    part = load_or_detect_partition(g, args)
    cfg = RwcConfig(k=args.k, repeats=args.repeats, seed=args.seed)
    value = rwc(g, part, cfg)
    config = {"k": cfg.k, "repeats": cfg.repeats, "seed": cfg.seed, **_input_echo(args)}
    doc = report_mod.report_document("rwc", config, results={"rwc": value})
    _emit(args, report_mod.dumps(doc))


def cmd_guerra(args) -> None:
    g = load_graph(args)
    part = load_or_detect_partition(g, args)
    value = guerra_polarity(g, part)
    config = {"seed": args.seed, **_input_echo(args)}
    doc = report_mod.report_document("guerra", config, results={"polarity": value})
    _emit(args, report_mod.dumps(doc))


def cmd_sweep(args, threads: int) -> None:
    g = load_graph(args)
    settings = settings_from_args(args, threads)
    levels = parse_levels(args.levels)
    base = None
    if args.partition:
        with open(args.partition, encoding="utf-8") as fh:
            base = load_partition(fh, g)
    doc = noise_sweep(g, settings, levels, args.axis, args.repartition, base)
    doc["config"].update(_input_echo(args))
    _emit(args, report_mod.dumps(doc))


def cmd_report(args) -> None:
    doc = report_mod.load_report(args.path)
    kind = doc["kind"]
    out = [f"kind: {kind}", f"schema_version: {doc['schema_version']}"]
    if "results" in doc:
        for key in sorted(doc["results"]):
            out.append(f"{key}: {doc['results'][key]}")
    if "rows" in doc:
        out.append(f"rows: {len(doc['rows'])}")
        for row in doc["rows"]:
            cells = " ".join(f"{k}={row[k]}" for k in sorted(row))
            out.append("  " + cells)
    out.append("config: " + " ".join(f"{k}={doc['config'][k]}" for k in sorted(doc["config"])))
    sys.stdout.write("\n".join(out) + "\n")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        if not argv:
            raise UsageError("a subcommand is required")
        command, rest = argv[0], argv[1:]
        if command in ("-h", "--help"):
            parser.print_help()
            return 0
        if command not in parser._subparsers._group_actions[0].choices:  # noqa: SLF001
            raise UsageError(f"unknown subcommand {command!r}")
        if command != "report":
            rest = _inject_config(command, rest, parser)
        args = parser.parse_args([command] + rest)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 1

    try:
        threads = resolve_threads(args) if args.command != "report" else 1
        if args.command == "partition":
            cmd_partition(args)
        elif args.command == "levels":
            cmd_levels(args)
        elif args.command == "embed":
            cmd_embed(args, threads)
        elif args.command == "energy":
            cmd_energy(args, threads)
        elif args.command == "brw":
            cmd_brw(args, threads)
        elif args.command == "rwc":
            cmd_rwc(args)
        elif args.command == "guerra":
            cmd_guerra(args)
        elif args.command == "sweep":
            cmd_sweep(args, threads)
        elif args.command == "report":
            cmd_report(args)
        return 0
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ControversyLabError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
