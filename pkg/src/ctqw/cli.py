"""Config-driven command line front end.

Subcommands: ``simulate`` (one walk), ``sweep`` (one walk per phase),
``verify`` (property certification), ``render`` (CSV to PGM heatmap).
Configs are strict JSON: unknown keys are rejected at every level.  Exit
codes: 0 success, 1 validation error, 2 property failure or rejection,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .graphs import CirculantSpec, read_edge_list
from .graphs import moebius_spec, ring_spec, build_star
from .operators import CouplingSeries, EigendecompositionError, parse_phase
from .properties import (
    TOL_CANCELLATION,
    TOL_MIRROR,
    TOL_STATIONARY,
    TOL_SUPPRESSION,
    PropertyReport,
    check_bidirected_edge_cancellation,
    check_mirror_symmetries,
    check_stationary_at_half_pi,
    check_transport_suppression,
    random_bipartite_graph,
    random_polynomial_series,
)
from .walk import (
    DEFAULT_TIME_GRID,
    NormalizationError,
    TimeGrid,
    read_walk_csv,
    run_walk,
    sweep_alpha,
    write_walk_csv,
)

LOG_FLOOR = 1e-12
LOG_SPAN = 12.0


def _check_keys(cfg: dict, allowed, context: str) -> None:
    if not isinstance(cfg, dict):
        raise ValueError(f"{context}: expected an object")
    unknown = sorted(set(cfg) - set(allowed))
    if unknown:
        raise ValueError(f"{context}: unknown keys {unknown}")


def _load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(cfg, dict):
        raise ValueError(f"{path}: top-level config must be an object")
    return cfg


def _build_graph(cfg, context: str = "graph"):
    """Build a DirectedGraph or CirculantSpec from a config object."""
    _check_keys(cfg, {"family", "size", "directed", "coefficients", "path"}, context)
    family = cfg.get("family")
    directed = cfg.get("directed", True)
    if not isinstance(directed, bool):
        raise ValueError(f"{context}: 'directed' must be a boolean")
    if family == "star":
        return build_star(int(cfg["size"]), directed)
    if family == "ring":
        return ring_spec(int(cfg["size"]), directed)
    if family == "moebius":
        return moebius_spec(int(cfg["size"]), directed)
    if family == "circulant":
        coeffs = cfg.get("coefficients")
        if not isinstance(coeffs, list):
            raise ValueError(f"{context}: circulant family needs a 'coefficients' list")
        return CirculantSpec(tuple(float(c) for c in coeffs))
    if family == "edge-list":
        if "path" not in cfg:
            raise ValueError(f"{context}: edge-list family needs a 'path'")
        return read_edge_list(cfg["path"])
    raise ValueError(
        f"{context}: unknown family {family!r}; expected star, ring, moebius, "
        "circulant, or edge-list"
    )


def _graph_label(cfg) -> str:
    family = cfg.get("family", "?")
    bits = [str(family)]
    if "size" in cfg:
        bits.append(f"n{cfg['size']}")
    if "coefficients" in cfg:
        bits.append(f"n{len(cfg['coefficients'])}")
    if not cfg.get("directed", True):
        bits.append("undirected")
    return "-".join(bits)


def _build_series(cfg) -> CouplingSeries:
    if cfg is None:
        return CouplingSeries.exp()
    _check_keys(cfg, {"kind", "coefficients"}, "coupling")
    kind = cfg.get("kind")
    if kind == "polynomial":
        coeffs = cfg.get("coefficients")
        if not isinstance(coeffs, list):
            raise ValueError("coupling: polynomial kind needs a 'coefficients' list")
        return CouplingSeries.polynomial(coeffs)
    if "coefficients" in cfg:
        raise ValueError(f"coupling: kind {kind!r} takes no coefficients")
    if kind in ("exp", "sinh", "cosh", "identity"):
        return CouplingSeries(kind)
    raise ValueError(f"coupling: unknown kind {kind!r}")


def _build_grid(cfg) -> TimeGrid:
    if cfg is None:
        return DEFAULT_TIME_GRID
    _check_keys(cfg, {"start", "end", "steps"}, "time_grid")
    return TimeGrid(
        float(cfg.get("start", DEFAULT_TIME_GRID.t_start)),
        float(cfg.get("end", DEFAULT_TIME_GRID.t_end)),
        int(cfg.get("steps", DEFAULT_TIME_GRID.steps)),
    )


def _parse_alphas(cfg) -> list[float]:
    if "alphas" not in cfg:
        raise ValueError("config: missing 'alphas'")
    raw = cfg["alphas"]
    tokens = raw if isinstance(raw, list) else [raw]
    if not tokens:
        raise ValueError("config: 'alphas' must not be empty")
    return [parse_phase(tok) for tok in tokens]


def _header_lines(cfg: dict, seed, command: str, extra=()) -> list[str]:
    lines = [
        f"generated-by: ctqw {command}",
        f"config: {json.dumps(cfg, sort_keys=True, separators=(',', ':'))}",
        f"seed: {seed if seed is not None else 'none'}",
    ]
    lines.extend(extra)
    return lines


def write_heatmap_pgm(probabilities, path, scale: str = "linear", header_lines=()) -> None:
    """Write a probability field as a P2 PGM, time down the rows, nodes across.

    ``linear`` maps the max probability to 255; ``log`` maps log10(P) over
    the fixed [-12, 0] window.
    """
    probs = np.asarray(probabilities, dtype=float)
    if probs.ndim != 2 or probs.size == 0:
        raise ValueError("heatmap needs a nonempty (steps, nodes) array")
    if scale == "linear":
        pmax = probs.max()
        values = probs / pmax if pmax > 0 else np.zeros_like(probs)
    elif scale == "log":
        values = np.clip(np.log10(np.maximum(probs, LOG_FLOOR)) / LOG_SPAN + 1.0, 0.0, 1.0)
    else:
        raise ValueError(f"unknown scale {scale!r}; expected 'linear' or 'log'")
    pixels = np.rint(255.0 * values).astype(int)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("P2\n")
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write(f"{pixels.shape[1]} {pixels.shape[0]}\n255\n")
        for row in pixels:
            fh.write(" ".join(str(v) for v in row) + "\n")


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def _out_path(out_dir: str, name: str) -> str:
    path = name if os.path.isabs(name) else os.path.join(out_dir, name)
    _ensure_parent(path)
    return path


def _write_artifacts(result, output_cfg, out_dir, header) -> None:
    _check_keys(output_cfg, {"csv", "heatmap", "scale", "amplitudes"}, "output")
    csv_name = output_cfg.get("csv", "walk.csv")
    include_amps = bool(output_cfg.get("amplitudes", False))
    write_walk_csv(result, _out_path(out_dir, csv_name), include_amps, header)
    if "heatmap" in output_cfg:
        scale = output_cfg.get("scale", "linear")
        write_heatmap_pgm(
            result.probabilities, _out_path(out_dir, output_cfg["heatmap"]), scale, header
        )


def _suffixed(name: str, index: int) -> str:
    stem, ext = os.path.splitext(name)
    return f"{stem}_{index:02d}{ext}"


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg, {"graph", "coupling", "alphas", "time_grid", "initial_node", "output"}, "config"
    )
    if "graph" not in cfg:
        raise ValueError("config: missing 'graph'")
    alphas = _parse_alphas(cfg)
    if len(alphas) != 1:
        raise ValueError(f"simulate needs exactly one alpha, got {len(alphas)}")
    graph = _build_graph(cfg["graph"])
    series = _build_series(cfg.get("coupling"))
    grid = _build_grid(cfg.get("time_grid"))
    initial = int(cfg.get("initial_node", 0))
    result = run_walk(graph, alphas[0], series, initial, grid, _graph_label(cfg["graph"]))
    header = _header_lines(cfg, args.seed, "simulate", [f"alpha: {alphas[0]:.17g}"])
    _write_artifacts(result, cfg.get("output", {}), args.out_dir, header)
    print(f"normalization defect: {result.normalization_defect:.3e}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg, {"graph", "coupling", "alphas", "time_grid", "initial_node", "output"}, "config"
    )
    if "graph" not in cfg:
        raise ValueError("config: missing 'graph'")
    alphas = _parse_alphas(cfg)
    graph = _build_graph(cfg["graph"])
    series = _build_series(cfg.get("coupling"))
    grid = _build_grid(cfg.get("time_grid"))
    initial = int(cfg.get("initial_node", 0))
    results = sweep_alpha(graph, alphas, series, initial, grid, threads=args.threads)
    output_cfg = dict(cfg.get("output", {}))
    _check_keys(output_cfg, {"csv", "heatmap", "scale", "amplitudes"}, "output")
    for index, result in enumerate(results):
        per = dict(output_cfg)
        per["csv"] = _suffixed(output_cfg.get("csv", "walk.csv"), index)
        if "heatmap" in per:
            per["heatmap"] = _suffixed(per["heatmap"], index)
        header = _header_lines(
            cfg,
            args.seed,
            "sweep",
            [f"alpha-index: {index}", f"alpha: {result.alpha:.17g}"],
        )
        _write_artifacts(result, per, args.out_dir, header)
        print(f"alpha={result.alpha:.6g}: normalization defect {result.normalization_defect:.3e}")
    return 0


_DEFAULT_SUPPRESSION_INSTANCES = (
    ("star-n5", {"family": "star", "size": 5, "directed": True}),
    ("ring-n6", {"family": "ring", "size": 6, "directed": True}),
    ("moebius-n10", {"family": "moebius", "size": 10, "directed": True}),
)

_CHECK_TOLERANCES = {
    "suppression": TOL_SUPPRESSION,
    "suppression-random": TOL_SUPPRESSION,
    "mirror": TOL_MIRROR,
    "stationary": TOL_STATIONARY,
    "cancellation": TOL_CANCELLATION,
}


def _tightened(report: PropertyReport, check_cfg) -> PropertyReport:
    if "tolerance" not in check_cfg:
        return report
    tol = float(check_cfg["tolerance"])
    if not (0.0 <= tol <= report.tolerance):
        raise ValueError(
            f"tolerance may only tighten the default {report.tolerance:g}, got {tol:g}"
        )
    return PropertyReport(report.name, report.instance, report.deviation, tol)


def _run_check(check_cfg, grid, seed) -> list[PropertyReport]:
    _check_keys(
        check_cfg,
        {
            "property",
            "graph",
            "graph_b",
            "coupling",
            "deltas",
            "initial_node",
            "partition",
            "half_pi",
            "count",
            "max_nodes",
            "max_degree",
            "tolerance",
            "time_grid",
        },
        "check",
    )
    prop = check_cfg.get("property")
    if prop not in _CHECK_TOLERANCES:
        raise ValueError(
            f"check: unknown property {prop!r}; expected one of {sorted(_CHECK_TOLERANCES)}"
        )
    series = _build_series(check_cfg.get("coupling"))
    if "time_grid" in check_cfg:
        grid = _build_grid(check_cfg["time_grid"])
    initial = int(check_cfg.get("initial_node", 0))
    reports: list[PropertyReport] = []
    if prop == "suppression":
        if "graph" in check_cfg:
            instances = [(_graph_label(check_cfg["graph"]), check_cfg["graph"])]
        else:
            instances = list(_DEFAULT_SUPPRESSION_INSTANCES)
        for label, graph_cfg in instances:
            graph = _build_graph(graph_cfg)
            partition = check_cfg.get("partition")
            reports.append(
                check_transport_suppression(graph, series, grid, partition, label)
            )
    elif prop == "suppression-random":
        count = int(check_cfg.get("count", 20))
        max_nodes = int(check_cfg.get("max_nodes", 16))
        max_degree = int(check_cfg.get("max_degree", 5))
        base = seed if seed is not None else 0
        for k in range(count):
            rng = np.random.default_rng((base, k))
            graph = random_bipartite_graph(rng, max_nodes)
            poly = random_polynomial_series(rng, max_degree)
            label = f"random-bipartite-n{graph.n}-seed{base}.{k}"
            reports.append(check_transport_suppression(graph, poly, grid, None, label))
    elif prop == "mirror":
        if "graph" not in check_cfg or "deltas" not in check_cfg:
            raise ValueError("mirror check needs 'graph' and 'deltas'")
        graph = _build_graph(check_cfg["graph"])
        deltas = [parse_phase(d) for d in check_cfg["deltas"]]
        reports.append(
            check_mirror_symmetries(
                graph,
                series,
                deltas,
                initial,
                grid,
                check_cfg.get("half_pi"),
                _graph_label(check_cfg["graph"]),
            )
        )
    elif prop == "stationary":
        if "graph" not in check_cfg:
            raise ValueError("stationary check needs 'graph'")
        graph = _build_graph(check_cfg["graph"])
        reports.append(
            check_stationary_at_half_pi(
                graph, series, initial, grid, _graph_label(check_cfg["graph"])
            )
        )
    else:
        if "graph" not in check_cfg or "graph_b" not in check_cfg:
            raise ValueError("cancellation check needs 'graph' and 'graph_b'")
        first = _build_graph(check_cfg["graph"])
        second = _build_graph(check_cfg["graph_b"], "graph_b")
        label = f"{_graph_label(check_cfg['graph'])}|{_graph_label(check_cfg['graph_b'])}"
        reports.append(
            check_bidirected_edge_cancellation(first, second, series, initial, grid, label)
        )
    return [_tightened(r, check_cfg) for r in reports]


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(cfg, {"checks", "report", "time_grid"}, "config")
    checks = cfg.get("checks")
    if not isinstance(checks, list) or not checks:
        raise ValueError("config: 'checks' must be a nonempty list")
    grid = _build_grid(cfg.get("time_grid"))
    lines = ["property,instance,deviation,tolerance,verdict"]
    all_ok = True
    for check_cfg in checks:
        prop = check_cfg.get("property", "?") if isinstance(check_cfg, dict) else "?"
        try:
            for report in _run_check(check_cfg, grid, args.seed):
                lines.append(report.line())
                all_ok = all_ok and report.passed
        except ValueError as exc:
            tol = _CHECK_TOLERANCES.get(prop, float("nan"))
            reason = str(exc).replace(",", ";")
            lines.append(f"{prop},rejected: {reason},nan,{tol:g},rejected")
            all_ok = False
    for line in lines:
        print(line)
    if "report" in cfg:
        header = _header_lines(cfg, args.seed, "verify")
        with open(_out_path(args.out_dir, cfg["report"]), "w", encoding="ascii") as fh:
            for line in header:
                fh.write(f"# {line}\n")
            fh.write("\n".join(lines) + "\n")
    return 0 if all_ok else 2


def cmd_render(args) -> int:
    times, probs = read_walk_csv(args.csv)
    header = [
        "generated-by: ctqw render",
        f"source: {os.path.basename(args.csv)}",
        f"scale: {args.scale}",
        f"t-range: {times[0]:.17g} {times[-1]:.17g}",
    ]
    _ensure_parent(args.out)
    write_heatmap_pgm(probs, args.out, args.scale, header)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctqw", description="Continuous-time quantum walks on directed graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="JSON run config")
        p.add_argument("--out-dir", default=".", help="directory for artifacts")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")

    p_sim = sub.add_parser("simulate", help="run one walk and write artifacts")
    add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run one walk per phase value")
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="certify walk properties")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_render = sub.add_parser("render", help="render a walk CSV as a PGM heatmap")
    p_render.add_argument("--csv", required=True, help="walk CSV produced by simulate/sweep")
    p_render.add_argument("--out", required=True, help="output PGM path")
    p_render.add_argument("--scale", default="linear", choices=("linear", "log"))
    p_render.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EigendecompositionError, NormalizationError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
