"""Command-line interface.

Exit codes: 0 success, 1 runtime failure, 2 invalid usage or input.
"""

import argparse
import csv
import datetime as _dt
import io
import json
import math
import os
import sys

import numpy as np

from compound_levy.errors import ConvergenceError, DomainError
from compound_levy.inference import (
    COPULA_VARIANTS,
    FitResult,
    fit_copula_two_step,
    fit_copula_variants,
    fit_threshold_model,
    format_report,
    loglik_report,
    rate_estimates,
    select_marginal,
)
from compound_levy.levy_copula import (
    AlphaClaytonParams,
    alpha_clayton,
    alpha_clayton_d1,
    alpha_clayton_d2,
    alpha_clayton_density,
)
from compound_levy.marginals import DEFAULT_CANDIDATES, FAMILIES, family
from compound_levy.numerics import ECDF
from compound_levy.observations import JumpPath, ObservationSet
from compound_levy.process_model import (
    CompoundModel,
    GammaDirecting,
    GammaScore,
    MomentModel,
    bivariate_tail,
    correlation,
    fractional_moment_stable,
    mean,
    variance,
)
from compound_levy.simulation import (
    TruncationSpec,
    compound_path,
    compound_poisson_sample,
    thresholded_path,
)

DANISH_THRESHOLD = 0.75


class UsageError(Exception):
    """Bad flags or input content; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _positive(name):
    def parse(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}") from None
        if not (v > 0 and math.isfinite(v)):
            raise argparse.ArgumentTypeError(f"{name} must be positive and finite, got {text!r}")
        return v
    return parse


def _positive_or_inf(name):
    def parse(text):
        if text.strip().lower() in ("inf", "infinity", "+inf"):
            return math.inf
        return _positive(name)(text)
    return parse


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _family_spec(text):
    """``tag:p1,p2`` e.g. ``gamma:2,3``."""
    try:
        tag, rest = text.split(":", 1)
        params = [float(p) for p in rest.split(",")]
        return family(tag, *params)
    except (ValueError, TypeError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"bad family spec {text!r}: {exc}") from None


class _Out:
    def __init__(self, quiet):
        self.quiet = quiet

    def __call__(self, *args):
        if not self.quiet:
            print(*args)


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_text_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    tmp = os.path.join(directory, f".{os.path.basename(path)}.tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _check_output_dir(path):
    if path in (None, "-"):
        return
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise UsageError(f"output directory does not exist: {directory}")


def _model_flags(p, with_k=True):
    p.add_argument("--sigma", type=float, required=True)
    if with_k:
        p.add_argument("--k", type=_positive("--k"), default=1.0)
    for name in ("--a1", "--b1", "--a2", "--b2"):
        p.add_argument(name, type=_positive(name), required=True)


def _compound_model(args):
    if not 0 < args.sigma < 1:
        raise UsageError("--sigma must lie in (0, 1)")
    return CompoundModel.from_params(args.sigma, args.k, args.a1, args.b1, args.a2, args.b2)


# --------------------------------------------------------------------------
# simulate
# --------------------------------------------------------------------------

def cmd_simulate(args, out):
    m = _compound_model(args)
    if (args.eps1 is None) != (args.eps2 is None):
        raise UsageError("--eps1 and --eps2 must be given together")
    _check_output_dir(args.output)
    path = compound_path(m, args.horizon, TruncationSpec(args.tau), args.seed)
    if args.eps1 is not None:
        path = thresholded_path(path, args.eps1, args.eps2)
    _emit_path(path, args.output, out)
    return 0


def cmd_simulate_cpp(args, out):
    cop = AlphaClaytonParams(args.sigma, args.a1, args.a2)
    _check_output_dir(args.output)
    path = compound_poisson_sample(args.lambda1, args.lambda2, args.m1, args.m2, cop, args.horizon, args.seed)
    _emit_path(path, args.output, out)
    return 0


def _emit_path(path, target, out):
    fh, close = _open_output(target)
    try:
        path.to_csv(fh)
    finally:
        if close:
            fh.close()
    y1, y2 = path.cumulative(path.T)
    say = out if close else (lambda *a: None if out.quiet else print(*a, file=sys.stderr))
    say(f"jumps: {len(path)}")
    say(f"horizon: {path.T!r}")
    say(f"cumulative: Y1(T)={float(y1[0])!r} Y2(T)={float(y2[0])!r}")


# --------------------------------------------------------------------------
# copula
# --------------------------------------------------------------------------

def _copula_point(cop, s1, s2):
    if math.isinf(s1) or math.isinf(s2):
        if math.isinf(s1) and math.isinf(s2):
            return {"s1": s1, "s2": s2, "c": math.inf, "d1": 1.0, "d2": 1.0, "dens": 0.0}
        c = float(alpha_clayton(cop, s1, s2))
        d1, d2 = (1.0, 0.0) if math.isinf(s2) else (0.0, 1.0)
        return {"s1": s1, "s2": s2, "c": c, "d1": d1, "d2": d2, "dens": 0.0}
    return {"s1": s1, "s2": s2, "c": float(alpha_clayton(cop, s1, s2)),
            "d1": float(alpha_clayton_d1(cop, s1, s2)), "d2": float(alpha_clayton_d2(cop, s1, s2)),
            "dens": float(alpha_clayton_density(cop, s1, s2))}


def _grid_spec(text):
    """``lo:hi:n`` log-spaced grid."""
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}") from None
    if not (0 < lo < hi and math.isfinite(hi) and n >= 2):
        raise argparse.ArgumentTypeError("grid needs 0 < lo < hi and n >= 2")
    return np.geomspace(lo, hi, n)


def cmd_copula(args, out):
    cop = AlphaClaytonParams(args.sigma, args.a1, args.a2)
    if args.grid is None:
        if args.s1 is None or args.s2 is None:
            raise UsageError("give --s1 and --s2, or --grid")
        point = _copula_point(cop, args.s1, args.s2)
        print(json.dumps(point))
        return 0
    _check_output_dir(args.output)
    g = args.grid
    s1, s2 = np.meshgrid(g, g, indexing="ij")
    s1, s2 = s1.ravel(), s2.ravel()
    cols = (s1, s2, alpha_clayton(cop, s1, s2), alpha_clayton_d1(cop, s1, s2),
            alpha_clayton_d2(cop, s1, s2), alpha_clayton_density(cop, s1, s2))
    fh, close = _open_output(args.output)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("s1", "s2", "c", "d1", "d2", "dens"))
        for row in zip(*cols):
            w.writerow([repr(float(v)) for v in row])
    finally:
        if close:
            fh.close()
    if close:
        out(f"grid points: {s1.size}")
    return 0


# --------------------------------------------------------------------------
# moments
# --------------------------------------------------------------------------

def cmd_moments(args, out):
    t = np.linspace(0.0, args.t_max, args.n_points)
    if args.directing == "stable":
        m = _compound_model(args)
        if args.p is None:
            raise UsageError("--p is required with the stable directing measure")
        if not 0 < args.p < m.sigma:
            raise UsageError(f"fractional order must satisfy 0 < p < sigma (p={args.p}, sigma={m.sigma})")
        tt = t[t > 0]
        curves = {}
        for i in (1, 2):
            vals = [fractional_moment_stable(m, i, float(x), args.p) for x in tt]
            curves[str(i)] = [0.0] * int((t <= 0).sum()) + vals
        doc = {"directing": "stable", "p": args.p, "params": m.as_dict(), "t": t.tolist(),
               "fractional_moment": curves}
    else:
        if args.a is None or args.b is None:
            raise UsageError("--a and --b are required with the gamma directing measure")
        mm = MomentModel(GammaDirecting(args.a, args.b), (GammaScore(args.a1, args.b1), GammaScore(args.a2, args.b2)))

        def curve(f, i):
            return [f(mm, i, float(x)) if x > 0 else 0.0 for x in t]
        doc = {"directing": "gamma", "t": t.tolist(),
               "mean": {str(i): curve(mean, i) for i in (1, 2)},
               "variance": {str(i): curve(variance, i) for i in (1, 2)},
               "correlation": [correlation(mm, 1, 2)] * t.size}
    text = json.dumps(doc, indent=2) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        _check_output_dir(args.output)
        _write_text_atomic(args.output, text)
        out(f"wrote {args.output}")
    return 0


# --------------------------------------------------------------------------
# Danish fire preprocessing
# --------------------------------------------------------------------------

_DATE_FORMATS = ("%Y-%m-%d", "%m/%d/%Y", "%d/%m/%Y", "%Y/%m/%d", "%d.%m.%Y")


def _parse_date(text):
    text = text.strip().strip('"')
    for fmt in _DATE_FORMATS:
        try:
            return _dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    raise ValueError(f"unrecognised date {text!r}")


def _danish_columns(header):
    names = [h.strip().strip('"').lower() for h in header]

    def find(*keys):
        for i, n in enumerate(names):
            if any(k in n for k in keys):
                return i
        return None

    idx = (find("date"), find("build"), find("content"))
    if None in idx:
        return None
    return idx


def preprocess_danish(lines, threshold=DANISH_THRESHOLD):
    """Classify (date, building, content) losses; returns (rows, errors, span_days).

    A row is kept when both losses exceed ``threshold`` (joint jump) or
    one exceeds it while the other is exactly zero (one-coordinate jump).
    Weights are ``log(loss / threshold)``.
    """
    reader = csv.reader(lines)
    rows, errors, dates = [], [], []
    try:
        header = next(reader)
    except StopIteration:
        return rows, ["input is empty"], 0
    cols = _danish_columns(header)
    if cols is None:
        # no header: treat the first line as data in column order date, building, content
        cols = (0, 1, 2)
        reader = csv.reader([",".join(header)] + [",".join(r) for r in reader])
        start = 1
    else:
        start = 2
    for lineno, rec in enumerate(reader, start=start):
        if not rec or all(not c.strip() for c in rec):
            continue
        try:
            d = _parse_date(rec[cols[0]])
            b = float(rec[cols[1]])
            c = float(rec[cols[2]])
            if not (b >= 0 and c >= 0 and math.isfinite(b) and math.isfinite(c)):
                raise ValueError("losses must be finite and non-negative")
        except (ValueError, IndexError) as exc:
            errors.append(f"line {lineno}: {exc}")
            continue
        dates.append(d)
        if b > threshold and c > threshold:
            kind = "par"
        elif b > threshold and c == 0:
            kind = "perp1"
        elif c > threshold and b == 0:
            kind = "perp2"
        else:
            continue
        w1 = math.log(b / threshold) if kind != "perp2" else 0.0
        w2 = math.log(c / threshold) if kind != "perp1" else 0.0
        rows.append((d, w1, w2, kind))
    span = (max(dates) - min(dates)).days if dates else 0
    if rows:
        origin = min(dates)
        rows = [((d - origin).days / 365.0, w1, w2, k) for d, w1, w2, k in rows]
    return rows, errors, span


def cmd_preprocess_danish(args, out):
    try:
        with open(args.input, encoding="utf-8-sig", newline="") as fh:
            rows, errors, span = preprocess_danish(fh.read().splitlines(), args.threshold)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    if errors:
        for e in errors:
            print(e, file=sys.stderr)
        raise UsageError(f"{len(errors)} malformed row(s) in {args.input}")
    if not rows:
        raise UsageError("no losses pass the threshold rule")
    T = args.horizon if args.horizon is not None else max(span / 365.0, max(r[0] for r in rows))
    if not T > 0:
        raise UsageError("observation span is zero; pass --horizon")
    path = JumpPath(T, [r[0] for r in rows], [r[1] for r in rows], [r[2] for r in rows], [r[3] for r in rows])
    _check_output_dir(args.output)
    fh, close = _open_output(args.output)
    try:
        path.to_csv(fh)
    finally:
        if close:
            fh.close()
    n1, n2, npar = ObservationSet.from_path(path).counts
    say = out if close else (lambda *a: None if out.quiet else print(*a, file=sys.stderr))
    say(f"retained: {len(path)} (par={npar}, perp1={n1}, perp2={n2})")
    say(f"horizon: {T!r}")
    return 0


# --------------------------------------------------------------------------
# fit
# --------------------------------------------------------------------------

def _ecdf_rows(sample, cdf):
    x = np.unique(np.asarray(sample, dtype=float))
    return x, ECDF(sample)(x), np.clip(np.asarray(cdf(x), dtype=float), 0.0, 1.0)


def _write_ecdf(directory, name, sample, cdf):
    if len(sample) == 0:
        return None
    x, e, f = _ecdf_rows(sample, cdf)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("x", "ecdf", "fitted"))
    for row in zip(x, e, f):
        w.writerow([repr(float(v)) for v in row])
    target = os.path.join(directory, f"{name}.csv")
    _write_text_atomic(target, buf.getvalue())
    return target


def component_cdfs(lam1, lam2, m1, m2, cop):
    """Model CDFs of one-coordinate and joint jump sizes in each coordinate."""
    c12 = float(alpha_clayton(cop, lam1, lam2))
    perp1_rate, perp2_rate = lam1 - c12, lam2 - c12

    def perp(j):
        lam, fam, rate = (lam1, m1, perp1_rate) if j == 1 else (lam2, m2, perp2_rate)

        def cdf(w):
            u = lam * fam.sf(w)
            cu = alpha_clayton(cop, u, lam2) if j == 1 else alpha_clayton(cop, lam1, u)
            return ((lam - u) - (c12 - cu)) / rate
        return cdf

    def par(j):
        lam, fam = (lam1, m1) if j == 1 else (lam2, m2)

        def cdf(w):
            u = lam * fam.sf(w)
            cu = alpha_clayton(cop, u, lam2) if j == 1 else alpha_clayton(cop, lam1, u)
            return (c12 - cu) / c12
        return cdf

    return {"perp1": perp(1), "perp2": perp(2), "par1": par(1), "par2": par(2)}


def _threshold_cdfs(m, eps1, eps2):
    total = float(bivariate_tail(m, eps1, eps2))

    def cdf1(x):
        return 1.0 - bivariate_tail(m, np.maximum(x, eps1), eps2) / total

    def cdf2(x):
        return 1.0 - bivariate_tail(m, eps1, np.maximum(x, eps2)) / total
    return cdf1, cdf2


def _read_observations(path, horizon):
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            jp = JumpPath.from_csv(fh, T=horizon)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except DomainError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return jp


def cmd_fit(args, out):
    _check_output_dir(args.output)
    if args.plot_dir is not None and not os.path.isdir(args.plot_dir):
        raise UsageError(f"--plot-dir does not exist: {args.plot_dir}")
    jp = _read_observations(args.input, args.horizon)
    obs = ObservationSet.from_path(jp)

    if args.model == "threshold":
        if args.eps1 is None or args.eps2 is None:
            raise UsageError("--eps1 and --eps2 are required for the threshold model")
        if obs.perp1.size or obs.perp2.size:
            raise UsageError("threshold model needs joint jumps only")
        w = obs.parallel
        keep = (w[:, 0] > args.eps1) & (w[:, 1] > args.eps2)
        if not keep.all():
            out(f"dropping {int((~keep).sum())} record(s) not above both thresholds")
            obs = ObservationSet(obs.T, [], [], w[keep])
        if obs.parallel.shape[0] == 0:
            raise UsageError("no observations above the thresholds")
        fit = fit_threshold_model(obs, args.eps1, args.eps2, restarts=args.restarts)
        fit.write_json(args.output)
        out(json.dumps(fit.params))
        out(f"loglik: {fit.loglik!r} converged: {fit.converged}")
        if args.plot_dir:
            c1, c2 = _threshold_cdfs(fit.model, args.eps1, args.eps2)
            _write_ecdf(args.plot_dir, "marginal1", obs.parallel[:, 0], c1)
            _write_ecdf(args.plot_dir, "marginal2", obs.parallel[:, 1], c2)
        return 0

    if obs.counts[2] < 1:
        raise UsageError("copula fit needs at least one joint jump")
    candidates = DEFAULT_CANDIDATES if args.marginals == "auto" else (args.marginals,)
    m1, fit1, ks1 = select_marginal(obs.marginal_weights(1), candidates, restarts=args.restarts)
    m2, fit2, ks2 = select_marginal(obs.marginal_weights(2), candidates, restarts=args.restarts)
    out(f"marginal 1: {m1} KS={ks1:.6f}")
    out(f"marginal 2: {m2} KS={ks2:.6f}")
    rates = rate_estimates(obs)

    if args.model == "compare":
        fits = fit_copula_variants(obs, m1, m2, rates, restarts=args.restarts)
        report = loglik_report(fits)
        doc = {v: fits[v].to_dict() for v in COPULA_VARIANTS}
        doc["nested_ok"] = report["nested_ok"]
        _write_text_atomic(args.output, json.dumps(doc, indent=2) + "\n")
        out(format_report(report))
        best = fits["full"]
    else:
        best = fit_copula_two_step(obs, m1, m2, args.model, rates, restarts=args.restarts)
        best.write_json(args.output)
        out(json.dumps(best.params))
        out(f"loglik: {best.loglik!r} converged: {best.converged}")

    if args.plot_dir:
        _write_ecdf(args.plot_dir, "marginal1", obs.marginal_weights(1), m1.cdf)
        _write_ecdf(args.plot_dir, "marginal2", obs.marginal_weights(2), m2.cdf)
        cdfs = component_cdfs(rates[0], rates[1], m1, m2, best.copula)
        _write_ecdf(args.plot_dir, "perp1", obs.perp1, cdfs["perp1"])
        _write_ecdf(args.plot_dir, "perp2", obs.perp2, cdfs["perp2"])
        _write_ecdf(args.plot_dir, "par1", obs.parallel[:, 0], cdfs["par1"])
        _write_ecdf(args.plot_dir, "par2", obs.parallel[:, 1], cdfs["par2"])
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser():
    # --quiet is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress summaries on standard output")
    parser = _Parser(prog="compound-levy", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    p = sub.add_parser("simulate", help="truncated series simulation of the compound stable model")
    _model_flags(p)
    p.add_argument("--tau", type=_positive("--tau"), default=1e-6)
    p.add_argument("--horizon", type=_positive("--horizon"), default=1.0)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--eps1", type=_positive("--eps1"))
    p.add_argument("--eps2", type=_positive("--eps2"))
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("simulate-cpp", help="bivariate compound Poisson path with an alpha-Clayton Levy copula")
    p.add_argument("--lambda1", type=_positive("--lambda1"), required=True)
    p.add_argument("--lambda2", type=_positive("--lambda2"), required=True)
    p.add_argument("--m1", type=_family_spec, required=True, help=f"family:p1,p2 with family in {sorted(FAMILIES)}")
    p.add_argument("--m2", type=_family_spec, required=True)
    p.add_argument("--sigma", type=_positive("--sigma"), required=True)
    p.add_argument("--a1", type=_positive("--a1"), default=1.0)
    p.add_argument("--a2", type=_positive("--a2"), default=1.0)
    p.add_argument("--horizon", type=_positive("--horizon"), default=1.0)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_simulate_cpp)

    p = sub.add_parser("copula", help="evaluate the alpha-Clayton Levy copula")
    p.add_argument("--sigma", type=_positive("--sigma"), required=True)
    p.add_argument("--a1", type=_positive("--a1"), default=1.0)
    p.add_argument("--a2", type=_positive("--a2"), default=1.0)
    p.add_argument("--s1", type=_positive_or_inf("--s1"))
    p.add_argument("--s2", type=_positive_or_inf("--s2"))
    p.add_argument("--grid", type=_grid_spec, help="lo:hi:n log-spaced grid in both arguments")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_copula)

    p = sub.add_parser("moments", help="moment curves over a time grid")
    p.add_argument("--directing", choices=("stable", "gamma"), default="stable")
    p.add_argument("--sigma", type=float)
    p.add_argument("--k", type=_positive("--k"), default=1.0)
    for name in ("--a1", "--b1", "--a2", "--b2"):
        p.add_argument(name, type=_positive(name), required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--a", type=_positive("--a"), help="gamma directing shape")
    p.add_argument("--b", type=_positive("--b"), help="gamma directing rate")
    p.add_argument("--t-max", type=_positive("--t-max"), default=1.0)
    p.add_argument("--n-points", type=int, default=101)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("preprocess-danish", help="threshold and classify Danish fire losses")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--threshold", type=_positive("--threshold"), default=DANISH_THRESHOLD)
    p.add_argument("--horizon", type=_positive("--horizon"))
    p.set_defaults(func=cmd_preprocess_danish)

    p = sub.add_parser("fit", help="maximum-likelihood fits")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--model", choices=COPULA_VARIANTS + ("threshold", "compare"), default="full")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--horizon", type=_positive("--horizon"))
    p.add_argument("--eps1", type=_positive("--eps1"))
    p.add_argument("--eps2", type=_positive("--eps2"))
    p.add_argument("--marginals", choices=("auto",) + DEFAULT_CANDIDATES, default="auto")
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--plot-dir")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "n_points", 2) < 2:
            raise UsageError("--n-points must be at least 2")
        if getattr(args, "restarts", 0) < 0:
            raise UsageError("--restarts must be non-negative")
        return args.func(args, _Out(getattr(args, "quiet", False)))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
