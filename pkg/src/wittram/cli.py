"""Command-line front end.

Every subcommand writes one JSON document (sorted keys, so a fixed seed
gives identical bytes) to stdout or ``--out``.  ``herbrand`` and ``autact``
can also write CSV.  Exit status: 0 success, 1 a check failed, 2 bad
parameters.
"""

from __future__ import annotations

import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import click

from . import autact, herbrand, normsys, ramification, verify
from .errors import ParameterError, PrecisionError
from .fields import _is_prime, get_field
from .magnus import MagnusElem, MagnusParams


@dataclass(frozen=True)
class RunConfig:
    p: int = 2
    N0: int = 1
    M: int = 1
    C: int = 1
    s_max: int = 1
    v: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    seed: int = 0
    format: str = "json"
    out: Optional[str] = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ParameterError(f"p = {self.p} is not prime")
        for name in ("N0", "M", "C"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be at least 1")
        if self.s_max < 0:
            raise ParameterError("smax must be non-negative")

    def params(self) -> MagnusParams:
        return MagnusParams(self.p, self.N0, self.M, self.C)


class FractionType(click.ParamType):
    name = "fraction"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)


FRAC = FractionType()


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, list):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def _emit(cfg: RunConfig, doc: dict, rows: Optional[List[list]] = None, header: Optional[List[str]] = None):
    if cfg.format == "csv":
        if rows is None:
            raise ParameterError("CSV output is only available for PL corners and coefficient tables")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_plain(x) for x in r])
        text = buf.getvalue()
    else:
        text = json.dumps(_plain(doc), sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _elem_terms(x: MagnusElem) -> List[dict]:
    out = []
    for kind, idx, c in x.terms():
        out.append({"kind": kind, "gens": [str(g) for g in idx], "coeff": list(c)})
    return out


def _run(fn):
    """Map library errors to the usage exit code."""
    try:
        return fn()
    except (ParameterError, PrecisionError) as e:
        raise click.UsageError(str(e))


# shared options; each subcommand takes only the ones it reads
def opt_p(f):
    return click.option("--p", "p", type=int, default=2, show_default=True, help="residue characteristic")(f)


def opt_N0(f):
    return click.option("--N0", "N0", type=int, default=1, show_default=True, help="k = F_(p^N0)")(f)


def opt_M(f):
    return click.option("--M", "M", type=int, default=1, show_default=True, help="Witt length")(f)


def opt_C(f):
    return click.option("--C", "C", type=int, default=1, show_default=True, help="generator cutoff a <= C")(f)


def opt_seed(f):
    return click.option("--seed", type=int, default=0, show_default=True)(f)


def opt_io(f, formats=("json",)):
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help="write here instead of stdout")(f)
    return click.option("--format", "fmt", type=click.Choice(list(formats)), default="json", show_default=True)(f)


def opt_io_csv(f):
    return opt_io(f, ("json", "csv"))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Exact computations with Witt vectors, Magnus algebras and ramification ideals."""


@main.command()
@opt_p
@opt_N0
@opt_M
@opt_C
@click.option("--gamma", type=FRAC, required=True)
@click.option("--v", type=FRAC, default=None, help="give F_gamma(v) instead of F_gamma")
@opt_io
def fgamma(p, N0, M, C, gamma, v, fmt, out):
    """Terms of F_gamma in the truncated Magnus algebra."""

    def go():
        cfg = RunConfig(p, N0, M, C, gamma=gamma, v=v, format=fmt, out=out)
        P = cfg.params()
        x = ramification.build_F(gamma, P) if v is None else ramification.build_F_v(gamma, v, P)
        doc = {"p": p, "N0": N0, "M": M, "C": C, "gamma": gamma, "v": v, "terms": _elem_terms(x)}
        _emit(cfg, doc)

    _run(go)


@main.command()
@opt_p
@opt_N0
@opt_M
@opt_C
@click.option("--v", type=FRAC, required=True)
@opt_io
def ideal(p, N0, M, C, v, fmt, out):
    """Howell basis of the ideal A(v) and the containment chain around it."""

    def go():
        cfg = RunConfig(p, N0, M, C, v=v, format=fmt, out=out)
        P = cfg.params()
        basis = ramification.build_ideal_Av(v, P)
        rep = ramification.check_chain(v, P, basis)
        doc = {
            "p": p,
            "N0": N0,
            "M": M,
            "C": C,
            "v": v,
            "basis": json.loads(basis.to_json()),
            "log_order": basis.log_order(),
            "chain": {
                "adm_contains_ideal": rep.adm_contains_ideal,
                "ideal_contains_tr": rep.ideal_contains_tr,
                "tr_contains_p_adm": rep.tr_contains_p_adm,
                "basis_ok": rep.basis_ok,
                "complete": rep.complete,
                "quotient_dim": rep.quotient_dim,
            },
        }
        _emit(cfg, doc)
        if not (rep.chain_ok and rep.basis_ok):
            sys.exit(1)

    _run(go)


@main.command("herbrand")
@click.option("--q", type=int, default=None, help="degree of the elementary extension")
@click.option("--rstar", type=FRAC, default=None)
@click.option("--eval", "at", type=FRAC, multiple=True, help="evaluate phi here (repeatable)")
@opt_p
@opt_N0
@opt_M
@opt_C
@click.option("--v", type=FRAC, default=None, help="v0; with no --q, take q and r* from param_search")
@opt_io_csv
def herbrand_cmd(q, rstar, at, p, N0, M, C, v, fmt, out):
    """The Herbrand function x -> x (x <= r*), r* + (x - r*)/q (x >= r*)."""

    def go():
        cfg = RunConfig(p, N0, M, C, v=v, format=fmt, out=out)
        doc = {}
        qq, r = q, rstar
        if qq is None or r is None:
            if v is None:
                raise ParameterError("give --q and --rstar, or --v (with --p --N0 --M --C) to search")
            pc = herbrand.param_search(p, N0, C, M, v)
            qq, r = p**pc.N_star, pc.r_star(p)
            doc.update({"N_star": pc.N_star, "m_star": pc.m_star})
        phi = herbrand.elementary_phi(qq, r)
        doc.update(
            {
                "q": qq,
                "r_star": r,
                "corners": [list(row) for row in phi.rows()],
                "slopes": list(phi.slopes),
                "values": {str(x): phi(x) for x in at},
            }
        )
        if v is not None:
            doc["threshold"] = herbrand.criterion_threshold(v, qq, r)
        _emit(cfg, doc, [list(row) for row in phi.rows()], ["x", "y", "slope_after"])

    _run(go)


@main.command()
@opt_p
@opt_N0
@opt_M
@opt_C
@click.option("--v", type=FRAC, required=True, help="v0")
@opt_io
def params(p, N0, M, C, v, fmt, out):
    """Least (N*, m*) meeting the three inequalities for v0."""

    def go():
        cfg = RunConfig(p, N0, M, C, v=v, format=fmt, out=out)
        pc = herbrand.param_search(p, N0, C, M, v)
        ok, why = herbrand.check_conditions(p, N0, C, M, v, pc.N_star, pc.m_star)
        doc = {
            "p": p,
            "N0": N0,
            "M": M,
            "C": C,
            "v0": v,
            "N_star": pc.N_star,
            "m_star": pc.m_star,
            "q": p**pc.N_star,
            "r_star": pc.r_star(p),
            "delta1": pc.delta1,
            "delta2": pc.delta2,
            "conditions": {"ok": ok, "detail": why},
        }
        _emit(cfg, doc)

    _run(go)


def _random_eta(p, N0, prec, seed):
    F = get_field(p, N0)
    return autact.AutSeries.random(F, prec, random.Random(f"{seed}:eta"))


@main.command("autact")
@opt_p
@opt_N0
@opt_C
@click.option("--v", type=FRAC, default=None, help="column bound b_max (default C p)")
@opt_seed
@opt_io_csv
def autact_cmd(p, N0, C, v, seed, fmt, out):
    """Coefficient table of a seeded random eta in Aut^0 K, with the structural checks."""

    def go():
        cfg = RunConfig(p, N0, 1, C, v=v, seed=seed, format=fmt, out=out)
        b_max = C * p if v is None else int(v)
        if b_max < 1:
            raise ParameterError("b_max must be positive")
        eta = _random_eta(p, N0, b_max + 2, seed)
        table = autact.induced_alpha(eta, C, b_max)
        diag = autact.diagonal_law_check(table)
        doc = {
            "p": p,
            "N0": N0,
            "a_max": C,
            "b_max": b_max,
            "seed": seed,
            "eta": [list(eta.field.coords(c)) for c in eta.coefficients()],
            "admissible": autact.is_admissible(table),
            "diagonal_ok": diag.ok,
            "entries": table.records(),
        }
        rows = [[r["a"], r["b"], r["m"], " ".join(map(str, r["alpha"]))] for r in table.records()]
        _emit(cfg, doc, rows, ["a", "b", "m", "alpha"])
        if not doc["admissible"]:
            sys.exit(1)

    _run(go)


@main.command()
@opt_p
@opt_N0
@opt_C
@click.option("--smax", "s_max", type=int, default=1, show_default=True)
@opt_seed
@opt_io
def tower(p, N0, C, s_max, seed, fmt, out):
    """Norm-system checks for a seeded automorphism tower and the Frobenius tower."""

    def go():
        cfg = RunConfig(p, N0, 1, C, s_max=s_max, seed=seed, format=fmt, out=out)
        b_max = C * p
        eta = _random_eta(p, N0, b_max + 2, seed)
        towers = {
            "automorphism": normsys.TowerTable.from_aut(eta, s_max, C, b_max),
            "frobenius": normsys.TowerTable.frobenius(p, N0, 1, s_max, C, b_max),
        }
        doc = {"p": p, "N0": N0, "C": C, "s_max": s_max, "seed": seed, "towers": {}}
        for name, t in towers.items():
            spec = normsys.special_admissible_check(t)
            ana = normsys.locally_analytic_check(t)
            doc["towers"][name] = {
                "special_admissible": {"ok": spec.ok, "rows": spec.to_json()},
                "locally_analytic": {"ok": ana.ok, "attained": ana.attained, "rows": [r.to_json() for r in ana.rows]},
            }
        _emit(cfg, doc)
        if not doc["towers"]["automorphism"]["special_admissible"]["ok"]:
            sys.exit(1)

    _run(go)


@main.command("verify")
@click.argument("criteria", nargs=-1)
@click.option("--p", "p", type=int, default=None, help="also run oracle checks at these parameters")
@click.option("--N0", "N0", type=int, default=None)
@click.option("--M", "M", type=int, default=None)
@click.option("--C", "C", type=int, default=None)
@opt_seed
@opt_io
def verify_cmd(criteria, p, N0, M, C, seed, fmt, out):
    """Run the acceptance suite (or the listed criteria); exit 1 on any failure."""

    def go():
        config = None
        if any(x is not None for x in (p, N0, M, C)):
            cfg = RunConfig(p or 2, N0 or 1, M or 1, C or 1, seed=seed, format=fmt, out=out)
            config = {"p": cfg.p, "N0": cfg.N0, "M": cfg.M, "C": cfg.C}
        else:
            cfg = RunConfig(seed=seed, format=fmt, out=out)
        report = verify.run_suite(seed, list(criteria) or None, config)
        _emit(cfg, report)
        if not report["ok"]:
            sys.exit(1)

    _run(go)


if __name__ == "__main__":  # pragma: no cover
    main()
