"""Command-line surface.

Subcommands: analyze, reestimate, smooth, fit, verify, simulate, export-plot.
All data goes to stdout (or --out); diagnostics go to stderr. Exit codes:
0 success, 1 usage error, 2 data error. Output is byte-identical for
identical inputs, flags, and seed; every format carries a schema marker.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np
from scipy import stats as _sp_stats

from . import asymptote, estimation, simulation, verification
from .corpus import CorpusConfig, tokenize_and_count
from .histogram import FrequencyHistogram, build_histogram

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_SIMULATE_SCHEMA = "rankfreq.simulate.csv.v1"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this surface reserves 2 for data errors."""

    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _corpus_config(args) -> CorpusConfig:
    return CorpusConfig(tokenizer=args.tokenizer, lowercase=args.lowercase,
                        min_count=args.min_count)


def _add_corpus_args(sub):
    sub.add_argument("file", help="corpus file, or - for stdin")
    sub.add_argument("--tokenizer", choices=["whitespace", "unicode-word"],
                     default="whitespace")
    sub.add_argument("--lowercase", action="store_true")
    sub.add_argument("--min-count", type=int, default=0)


def _add_common_output(sub, formats=("csv", "json")):
    if formats:
        sub.add_argument("--format", choices=list(formats), default=formats[0])
    sub.add_argument("--out", default=None, help="write output here instead of stdout")


# ---------------------------------------------------------------- analyze

def _cmd_analyze(args) -> str:
    counts = tokenize_and_count(_read_input(args.file), _corpus_config(args))
    hist = build_histogram(counts)
    total = hist.total_population()
    top = hist.max_count
    n1 = hist.n(1)
    f_top = top / total if total > 0 else None
    series = estimation.rank_series_from_counts(counts) if counts else None

    if args.format == "json":
        payload = {
            "schema": "rankfreq.analyze.v1",
            "total_tokens": total,
            "max_count": top,
            "singleton_species": n1,
            "top_relative_frequency": f_top,
            "histogram": [[x, hist.n(x)] for x in hist.support],
            "rank_frequency": [] if series is None else
                              [[int(r), float(f)] for r, f in
                               zip(series.ranks, series.freqs)],
        }
        return json.dumps(payload, indent=2) + "\n"

    out = io.StringIO()
    out.write("# schema: rankfreq.analyze.csv.v1\n")
    out.write(f"# total_tokens: {total!r}\n")
    out.write(f"# max_count: {top}\n")
    out.write(f"# singleton_species: {n1!r}\n")
    out.write(f"# top_relative_frequency: {'' if f_top is None else repr(f_top)}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["section", "key", "value"])
    for x in hist.support:
        writer.writerow(["histogram", x, repr(hist.n(x))])
    if series is not None:
        for r, f in zip(series.ranks, series.freqs):
            writer.writerow(["rank_frequency", int(r), repr(float(f))])
    return out.getvalue()


# ------------------------------------------------------------- reestimate

def _cmd_reestimate(args) -> str:
    counts = tokenize_and_count(_read_input(args.file), _corpus_config(args))
    hist = build_histogram(counts)
    rows = [(x, hist.reestimate(x, args.theta)) for x in hist.support]
    if args.format == "json":
        payload = {
            "schema": "rankfreq.reestimate.v1",
            "theta": args.theta,
            "rows": [{"x": x, "x_star": xs} for x, xs in rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    out = io.StringIO()
    out.write("# schema: rankfreq.reestimate.csv.v1\n")
    out.write(f"# theta: {args.theta!r}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "x_star"])
    for x, xs in rows:
        writer.writerow([x, repr(xs)])
    return out.getvalue()


# ----------------------------------------------------------------- smooth

def _cmd_smooth(args) -> str:
    counts = tokenize_and_count(_read_input(args.file), _corpus_config(args))
    if args.method == "good-turing":
        smoothed = estimation.good_turing_smooth(counts)
    else:
        ranking = estimation.build_ranking(counts)
        smoothed = estimation.geometric_tail_smooth(counts, ranking, p=args.p,
                                                    head_size=args.head)
    if args.format == "json":
        payload = {
            "schema": "rankfreq.smooth.v1",
            "method": smoothed.method,
            "unseen_mass": smoothed.unseen_mass,
            "probabilities": {s: p for s, p in smoothed.probabilities.items()},
        }
        return json.dumps(payload, indent=2) + "\n"
    out = io.StringIO()
    out.write("# schema: rankfreq.smooth.csv.v1\n")
    out.write(f"# method: {smoothed.method}\n")
    out.write(f"# unseen_mass: {smoothed.unseen_mass!r}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["species", "probability"])
    for s, p in smoothed.probabilities.items():
        writer.writerow([s, repr(p)])
    return out.getvalue()


# -------------------------------------------------------------------- fit

def _histogram_from_simulate_csv(text: str) -> FrequencyHistogram:
    entries = {}
    for record in csv.reader(
            (line for line in text.splitlines() if not line.startswith("#"))):
        if not record or record[0] != "histogram":
            continue
        x, n_x = int(record[1]), float(record[2])
        if n_x != int(n_x):
            raise ValueError(f"histogram cell N_{x} = {n_x} is not integral; "
                             "cannot expand to a rank-frequency series")
        entries[x] = n_x
    if not entries:
        raise ValueError("no histogram rows found in simulate output")
    return FrequencyHistogram(entries)


def _series_from_histogram(hist: FrequencyHistogram) -> estimation.RankFrequencySeries:
    total = hist.total_population()
    freqs = []
    for x in sorted(hist.support, reverse=True):
        freqs.extend([x / total] * int(hist.n(x)))
    return estimation.RankFrequencySeries(
        np.arange(1, len(freqs) + 1), np.array(freqs))


def _cmd_fit(args) -> str:
    data = _read_input(args.file)
    text = data.decode("utf-8", errors="replace")
    first_line = text.split("\n", 1)[0].strip()
    if first_line == f"# schema: {_SIMULATE_SCHEMA}":
        series = _series_from_histogram(_histogram_from_simulate_csv(text))
    else:
        counts = tokenize_and_count(data, _corpus_config(args))
        if not counts:
            raise ValueError("empty corpus: nothing to fit")
        series = estimation.rank_series_from_counts(counts)
    fit = estimation.fit_theta(series, args.tail_start)
    payload = {
        "schema": "rankfreq.fit.v1",
        "theta_hat": fit.theta_hat,
        "beta_hat": fit.beta_hat,
        "lambda_hat": fit.lambda_hat,
        "model": fit.model,
        "goodness": fit.goodness,
        "tail_start": fit.tail_start,
        "scale": fit.scale,
    }
    return json.dumps(payload, indent=2) + "\n"


# ----------------------------------------------------------------- verify

def _parse_float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _cmd_verify(args) -> str:
    if args.check == "turing-bound":
        report = verification.turing_bound_check(args.x_min, args.x_max,
                                                 epsilon=args.epsilon)
        return report.to_csv()
    if args.check == "general-bound":
        if args.theta is None:
            raise ValueError("general-bound needs --theta")
        report = verification.general_bound_check(args.theta, args.x_min,
                                                  args.x_max, epsilon=args.epsilon)
        return report.to_csv()
    if args.check == "product":
        if args.theta is None:
            raise ValueError("product needs --theta")
        xs = [int(v) for v in _parse_float_list(args.x_values)]
        rows = verification.product_approx_check(args.theta, xs)
        out = io.StringIO()
        out.write("# schema: rankfreq.product-check.csv.v1\n")
        out.write(f"# theta: {args.theta!r}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "ratio"])
        for x, ratio in rows:
            writer.writerow([x, repr(ratio)])
        return out.getvalue()
    # integral
    if args.alpha is None:
        raise ValueError("integral needs --alpha")
    uppers = _parse_float_list(args.upper)
    rows = verification.integral_convergence_probe(args.alpha, uppers)
    out = io.StringIO()
    out.write("# schema: rankfreq.integral-probe.csv.v1\n")
    out.write(f"# alpha: {args.alpha!r}\n")
    out.write(f"# bounded: {str(verification.is_bounded_sequence([v for _, v in rows])).lower()}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["upper", "value"])
    for r, v in rows:
        writer.writerow([repr(r), repr(v)])
    return out.getvalue()


# --------------------------------------------------------------- simulate

def _law_for_theta(theta: float, species: int, n1: float | None):
    if theta == 1.0:
        return asymptote.TuringAsymptote(n1 if n1 is not None else species / 10.0)
    if theta > 1.0:
        return asymptote.PowerAsymptote(theta)
    raise ValueError(f"no samplable law for theta={theta}; need theta >= 1")


def _cmd_simulate(args) -> str:
    law = _law_for_theta(args.theta, args.species, args.n1)
    model = simulation.PopulationModel(law=law, species=args.species, seed=args.seed)
    hist = simulation.sample_histogram(model, args.tokens)
    report = None
    if args.reestimate:
        limit = max((x for x in hist.support if hist.n(x) >= simulation.SPECIES_FLOOR),
                    default=0)
        report = simulation.reestimation_rows(hist, args.theta, limit)

    if args.format == "json":
        payload = {
            "schema": "rankfreq.simulate.v1",
            "theta": args.theta,
            "species": args.species,
            "tokens": args.tokens,
            "seed": args.seed,
            "histogram": [[x, hist.n(x)] for x in hist.support],
        }
        if report is not None:
            payload["reestimation"] = [
                {"x": r.x, "n_x": r.n_x, "x_star": r.x_star, "rel_error": r.rel_error}
                for r in report]
        return json.dumps(payload, indent=2) + "\n"

    out = io.StringIO()
    out.write(f"# schema: {_SIMULATE_SCHEMA}\n")
    out.write(f"# theta: {args.theta!r}\n")
    out.write(f"# species: {args.species}\n")
    out.write(f"# tokens: {args.tokens}\n")
    out.write(f"# seed: {args.seed}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["section", "x", "n_x", "x_star", "rel_error"])
    for x in hist.support:
        writer.writerow(["histogram", x, repr(hist.n(x)), "", ""])
    if report is not None:
        for r in report:
            writer.writerow(["reestimation", r.x, repr(r.n_x),
                             "" if r.x_star is None else repr(r.x_star),
                             "" if r.rel_error is None else repr(r.rel_error)])
    return out.getvalue()


# ------------------------------------------------------------ export-plot

def _zipf_fit(series: estimation.RankFrequencySeries) -> asymptote.ZipfAsymptote:
    # 1/f is linear in r under f = a/(b+r): slope 1/a, intercept b/a
    res = _sp_stats.linregress(series.ranks.astype(np.float64), 1.0 / series.freqs)
    if res.slope <= 0.0:
        raise ValueError("inverse-frequency regression has non-positive slope; "
                         "no inverse rank law fits this series")
    a = 1.0 / float(res.slope)
    b = float(res.intercept) * a
    if b <= -1.0:
        raise ValueError(f"fitted shift b={b} is out of range (must exceed -1)")
    return asymptote.ZipfAsymptote(a=a, b=b)


def _cmd_export_plot(args) -> str:
    counts = tokenize_and_count(_read_input(args.file), _corpus_config(args))
    if not counts:
        raise ValueError("empty corpus: nothing to plot")
    series = estimation.rank_series_from_counts(counts)
    if args.law == "turing":
        hist = build_histogram(counts)
        n1 = hist.n(1)
        if n1 <= 0:
            raise ValueError("no singleton species: the exponential law needs N_1 > 0")
        law_desc, model = f"turing n1={n1!r}", asymptote.TuringAsymptote(n1)
        f_model = lambda r: model.frequency_at(r)
    elif args.law == "zipf":
        model = _zipf_fit(series)
        law_desc = f"zipf a={model.a!r} b={model.b!r}"
        f_model = lambda r: model.frequency_at(r)
    else:
        fit = estimation.fit_theta(series)
        if fit.model == "power":
            law_desc = f"fitted power beta={fit.beta_hat!r} scale={fit.scale!r}"
            f_model = lambda r: fit.scale * r ** (-fit.beta_hat)
        else:
            law_desc = f"fitted exponential lambda={fit.lambda_hat!r} scale={fit.scale!r}"
            f_model = lambda r: fit.scale * math.exp(-fit.lambda_hat * r)

    empirical = {int(r): float(f) for r, f in zip(series.ranks, series.freqs)}
    out = io.StringIO()
    out.write("# schema: rankfreq.export-plot.tsv.v1\n")
    out.write(f"# law: {law_desc}\n")
    out.write("r\tf_empirical\tf_model\n")
    for r in range(1, args.r_max + 1):
        emp = empirical.get(r)
        out.write(f"{r}\t{'' if emp is None else repr(emp)}\t{repr(float(f_model(r)))}\n")
    return out.getvalue()


# ------------------------------------------------------------------- main

def build_parser() -> _Parser:
    parser = _Parser(prog="rankfreq",
                     description="Frequency reestimation, rank-frequency laws, "
                                 "and smoothing for species-count data.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("analyze", help="frequency-of-frequencies table and "
                                          "rank-frequency series of a corpus")
    _add_corpus_args(sub)
    _add_common_output(sub)
    sub.set_defaults(func=_cmd_analyze)

    sub = subs.add_parser("reestimate", help="reestimated counts x* per observed count")
    _add_corpus_args(sub)
    sub.add_argument("--theta", type=float, required=True)
    _add_common_output(sub)
    sub.set_defaults(func=_cmd_reestimate)

    sub = subs.add_parser("smooth", help="smoothed species probabilities with unseen mass")
    _add_corpus_args(sub)
    sub.add_argument("--method", choices=["good-turing", "geometric-tail"],
                     required=True)
    sub.add_argument("--p", type=float, default=None,
                     help="geometric parameter (default 1/N_1)")
    sub.add_argument("--head", type=int, default=0,
                     help="species keeping their relative frequencies")
    _add_common_output(sub)
    sub.set_defaults(func=_cmd_smooth)

    sub = subs.add_parser("fit", help="fit the family parameter from the "
                                      "rank-frequency tail (JSON)")
    _add_corpus_args(sub)
    sub.add_argument("--tail-start", type=int, default=None, dest="tail_start")
    _add_common_output(sub, formats=())
    sub.set_defaults(func=_cmd_fit)

    sub = subs.add_parser("verify", help="bound sweeps, product ratios, integral probe")
    sub.add_argument("--check", choices=["turing-bound", "general-bound",
                                         "product", "integral"], required=True)
    sub.add_argument("--theta", type=float, default=None)
    sub.add_argument("--x-min", type=int, default=None, dest="x_min")
    sub.add_argument("--x-max", type=int, default=None, dest="x_max")
    sub.add_argument("--epsilon", type=float, nargs="?", default=None,
                     const=verification.DEFAULT_EPSILON,
                     help="absolute slack added to the bound (default exact; "
                          "bare flag uses 1e-15)")
    sub.add_argument("--x-values", default="1,2,5,10,100,1000,2000",
                     help="comma list for --check product")
    sub.add_argument("--alpha", type=float, default=None,
                     help="exponent for --check integral")
    sub.add_argument("--upper", default="1e3,1e4,1e5,1e6",
                     help="comma list of upper limits for --check integral")
    _add_common_output(sub, formats=())
    sub.set_defaults(func=_cmd_verify_defaults)

    sub = subs.add_parser("simulate", help="sample a truncated population; "
                                           "emit its histogram")
    sub.add_argument("--theta", type=float, required=True)
    sub.add_argument("--species", type=int, required=True)
    sub.add_argument("--tokens", type=int, required=True)
    sub.add_argument("--seed", type=int, required=True)
    sub.add_argument("--reestimate", action="store_true",
                     help="append the per-count reestimation section")
    sub.add_argument("--n1", type=float, default=None,
                     help="decay scale for theta=1 (default species/10)")
    _add_common_output(sub)
    sub.set_defaults(func=_cmd_simulate)

    sub = subs.add_parser("export-plot", help="empirical vs model frequencies as TSV")
    _add_corpus_args(sub)
    sub.add_argument("--law", choices=["fitted", "turing", "zipf"], required=True)
    sub.add_argument("--r-max", type=int, required=True, dest="r_max")
    _add_common_output(sub, formats=())
    sub.set_defaults(func=_cmd_export_plot)

    return parser


def _cmd_verify_defaults(args) -> str:
    # per-check x-range defaults mirror the documented sweeps
    if args.x_min is None:
        args.x_min = 2 if args.check == "turing-bound" else 10
    if args.x_max is None:
        args.x_max = 100_000 if args.check == "turing-bound" else 10_000
    return _cmd_verify(args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.func(args)
        if args.out is not None:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(output)
        else:
            sys.stdout.write(output)
            sys.stdout.flush()
    except BrokenPipeError:
        # the consumer stopped reading (e.g. `| head`); die quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (ValueError, OSError) as exc:
        print(f"rankfreq: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
