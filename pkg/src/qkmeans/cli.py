"""Command-line interface: dataset generation, clustering, and benchmarks."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, plotting
from .clustering import ConstellationInit, KMeansConfig, KMeansPlusPlus, run_kmeans
from .distances import Euclidean, QuantumAnalytic, QuantumSampled
from .embedding import RescaledAngle, StandardAngle
from .signals import (
    ChannelParams,
    dbm_to_watts,
    generate_dataset,
    ideal_constellation,
    ingest_dataset,
    save_dataset,
)
from .swaptest import ShotPolicy


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkmeans",
        description="Hybrid quantum-classical k-means over noisy M-QAM signals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a noisy labelled dataset as CSV")
    gen.add_argument("--order", type=int, default=16, help="constellation order M")
    gen.add_argument("--per-symbol", type=int, default=80, help="samples per symbol")
    gen.add_argument("--sigma-phi", type=float, default=0.1, help="phase noise std (rad)")
    gen.add_argument("--sigma-n", type=float, default=0.1, help="additive noise std per component")
    gen.add_argument("--phi-b", type=float, default=0.0, help="fixed rotation offset (rad)")
    gen.add_argument("--spacing", type=float, default=None,
                     help="grid spacing (default: corners at radius 1)")
    gen.add_argument("-o", "--output", required=True, help="output CSV path")
    gen.add_argument("--figure", default=None, help="also render a scatter plot here")
    _add_seed(gen)

    clu = sub.add_parser("cluster", help="cluster a dataset CSV and emit a JSON outcome")
    clu.add_argument("--data", required=True, help="dataset CSV (header i,q,label)")
    clu.add_argument("--order", type=int, required=True, help="constellation order M")
    clu.add_argument("--spacing", type=float, default=None,
                     help="alphabet spacing for constellation initialization")
    clu.add_argument("--metric", default="quantum-sampled",
                     choices=["euclidean", "quantum-analytic", "quantum-sampled"])
    clu.add_argument("--embedding", default="rescaled", choices=["rescaled", "standard"])
    clu.add_argument("--shots", type=int, default=256, help="shots for the sampled metric")
    clu.add_argument("--max-iter", type=int, default=5)
    clu.add_argument("--epsilon", type=float, default=0.0, help="convergence threshold")
    clu.add_argument("--init", default="constellation", choices=["constellation", "kmeanspp"])
    clu.add_argument("--scoring", default="init", choices=["init", "hungarian"])
    clu.add_argument("-o", "--output", default=None, help="outcome JSON path (default stdout)")
    _add_seed(clu)

    swp = sub.add_parser("sweep", help="run a sweep from a YAML spec; writes CSV and figures")
    swp.add_argument("--spec", required=True, help="YAML sweep description")
    swp.add_argument("-o", "--output", required=True, help="output directory")
    swp.add_argument("--workers", type=int, default=1, help="parallel cell workers")
    swp.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    swp.add_argument("--seed", type=int, default=None, help="override the spec's seed")

    cmp_ = sub.add_parser("compare", help="hybrid vs classical table on synthetic data")
    cmp_.add_argument("--sizes", type=int, nargs="+", default=[320, 640, 1280])
    cmp_.add_argument("--order", type=int, default=64)
    cmp_.add_argument("--shots", type=int, default=50)
    cmp_.add_argument("--max-iter", type=int, default=5)
    cmp_.add_argument("--repetitions", type=int, default=5)
    cmp_.add_argument("--preset", type=float, default=None,
                      choices=sorted(bench.LAUNCH_POWER_PRESETS),
                      help="launch power (dBm) selecting a surrogate noise preset")
    cmp_.add_argument("--sigma-phi", type=float, default=None)
    cmp_.add_argument("--sigma-n", type=float, default=None)
    cmp_.add_argument("--scoring", default="init", choices=["init", "hungarian"])
    cmp_.add_argument("-o", "--output", required=True, help="output directory")
    cmp_.add_argument("--no-figures", action="store_true")
    _add_seed(cmp_)

    qpu = sub.add_parser("estimate-qpu", help="QPU wall time for one assignment pass")
    qpu.add_argument("--centroids", type=int, default=16)
    qpu.add_argument("--points", type=int, default=5000)
    qpu.add_argument("--shots", type=int, default=50)
    qpu.add_argument("--depth", type=int, default=22)
    qpu.add_argument("--min-ns", type=float, default=305.0)
    qpu.add_argument("--avg-ns", type=float, default=443.0)
    qpu.add_argument("--max-ns", type=float, default=760.0)
    _add_seed(qpu)

    return parser


def _cmd_generate(args) -> int:
    spec = ideal_constellation(args.order, spacing=args.spacing)
    params = ChannelParams(
        sigma_phi=args.sigma_phi, sigma_n=args.sigma_n, phi_b=args.phi_b, seed=args.seed
    )
    dataset = generate_dataset(spec, args.per_symbol, params)
    save_dataset(dataset, args.output)
    print(f"wrote {len(dataset)} samples to {args.output}")
    if args.figure:
        plotting.plot_dataset(dataset.points, dataset.labels, args.figure)
        print(f"figure: {args.figure}")
    return 0


def _cmd_cluster(args) -> int:
    spec = ideal_constellation(args.order, spacing=args.spacing)
    dataset = ingest_dataset(args.data, spec)
    kind = RescaledAngle() if args.embedding == "rescaled" else StandardAngle()
    if args.metric == "euclidean":
        metric = Euclidean()
    elif args.metric == "quantum-analytic":
        metric = QuantumAnalytic(kind)
    else:
        metric = QuantumSampled(kind, ShotPolicy(shots=args.shots, seed=args.seed))
    init = ConstellationInit() if args.init == "constellation" else KMeansPlusPlus(args.seed)
    config = KMeansConfig(
        k=args.order,
        metric=metric,
        max_iterations=args.max_iter,
        init=init,
        convergence_epsilon=args.epsilon,
        scoring=args.scoring,
    )
    outcome = run_kmeans(dataset, config)
    text = outcome.to_json(indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"accuracy {outcome.accuracy:.4f} after {outcome.iterations_run} iterations "
              f"-> {args.output}")
    else:
        print(text)
    return 0


def _cmd_sweep(args) -> int:
    spec = bench.load_sweep_spec(args.spec, seed=args.seed)
    rows = bench.run_sweep(spec, workers=args.workers)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    rows_path = outdir / "rows.csv"
    summary = bench.summarize(rows)
    bench.write_sweep_csv(rows, rows_path)
    bench.write_summary_csv(summary, outdir / "summary.csv")
    for cell in summary:
        print(f"{cell['axis_value']:>16}  {cell['metric_variant']:<16} "
              f"accuracy {cell['mean_accuracy']:.4f} +- {cell['std_accuracy']:.4f} "
              f"({cell['repetitions']} reps)")
    if not args.no_figures:
        fig_path = plotting.plot_sweep(spec, rows, outdir / "sweep.png")
        print(f"figure: {fig_path}")
    print(f"rows: {rows_path}")
    return 0


def _cmd_compare(args) -> int:
    if args.preset is not None:
        sigma_phi, sigma_n = bench.LAUNCH_POWER_PRESETS[args.preset]
        label = f"{args.preset} dBm surrogate ({dbm_to_watts(args.preset) * 1e3:.3f} mW)"
    else:
        if args.sigma_phi is None or args.sigma_n is None:
            raise ValueError("either --preset or both --sigma-phi and --sigma-n are required")
        sigma_phi, sigma_n = args.sigma_phi, args.sigma_n
        label = "custom noise"
    channel = ChannelParams(sigma_phi=sigma_phi, sigma_n=sigma_n)
    rows = bench.compare_table(
        sizes=args.sizes,
        channel=channel,
        shots=args.shots,
        max_iterations=args.max_iter,
        order=args.order,
        repetitions=args.repetitions,
        seed=args.seed,
        scoring=args.scoring,
    )
    records = bench.aggregate_compare(rows)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    bench.write_compare_csv(records, outdir / "compare.csv")
    meta = {
        "noise": {"sigma_phi": sigma_phi, "sigma_n": sigma_n, "label": label,
                  "note": "surrogate noise preset, not a measured channel"},
        "order": args.order, "shots": args.shots,
        "max_iterations": args.max_iter, "repetitions": args.repetitions,
        "seed": args.seed, "scoring": args.scoring,
    }
    (outdir / "compare_meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"{label}: order {args.order}, {args.shots} shots, "
          f"max {args.max_iter} iterations")
    print(f"{'points':>8} {'quantum':>10} {'classical':>10}")
    for rec in records:
        print(f"{rec['points']:>8} {rec['accuracy_quantum_mean']:>10.4f} "
              f"{rec['accuracy_classical_mean']:>10.4f}")
    if not args.no_figures:
        fig_path = plotting.plot_compare(records, outdir / "compare.png")
        print(f"figure: {fig_path}")
    return 0


def _cmd_estimate_qpu(args) -> int:
    model = bench.GateTimeModel(
        min_gate_ns=args.min_ns, avg_gate_ns=args.avg_ns,
        max_gate_ns=args.max_ns, circuit_depth=args.depth,
    )
    min_s, avg_s, max_s = bench.estimate_qpu_time(
        args.centroids, args.points, args.shots, model
    )
    total = args.centroids * args.points * args.shots
    print(f"total shots: {total}")
    print(f"per-shot time: {model.circuit_depth * model.avg_gate_ns:.0f} ns average")
    print(f"QPU time: {min_s:.3f} s (min), {avg_s:.3f} s (avg), {max_s:.3f} s (max)")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "cluster": _cmd_cluster,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "estimate-qpu": _cmd_estimate_qpu,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
