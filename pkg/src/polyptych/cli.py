"""Command-line front end: deterministic, JSON-emitting verification
commands over marked posets and the triangular families.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import json
import random
import sys

import click

from . import (acceptance as acceptance_mod, algebra, cox as cox_mod,
               degeneration, families, lattice, mco, semialgebra)
from .posets import (MarkedPoset, NoInteriorU, PosetError, SpadeViolation,
                     choose_u, classify_spade, validate as validate_poset)

VERSION = "0.1.0"

FAMILY_NAMES = {"gtA": "A", "gta": "A", "A": "A",
                "gtC": "C", "gtc": "C", "C": "C"}


def _parse_lambda(text):
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise click.UsageError(f"bad marking list {text!r}")


def _parse_chart(text):
    if not text:
        return frozenset()
    return frozenset(text.split(","))


def _parse_vector(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise click.UsageError(f"bad vector {text!r}")


def _load_family(family, n, lam):
    name = FAMILY_NAMES.get(family)
    if name is None:
        raise click.UsageError(f"unknown family {family!r}")
    if n is None:
        raise click.UsageError("--n is required with --family")
    lam = _parse_lambda(lam)
    if not lam:
        if name == "C":
            lam = tuple(2 * i for i in range(1, n + 1))
        else:
            lam = tuple(2 * i for i in range(n + 1))
    try:
        return families.GTFamily(name, n, lam)
    except (PosetError, ValueError) as exc:
        raise click.UsageError(str(exc))


def _load_poset(ctx_params):
    family = ctx_params.get("family")
    path = ctx_params.get("poset")
    if path:
        try:
            with open(path) as fh:
                return MarkedPoset.from_json(json.load(fh)), None
        except (OSError, ValueError, KeyError, PosetError) as exc:
            raise click.UsageError(f"cannot load poset {path}: {exc}")
    if family:
        fam = _load_family(family, ctx_params.get("n"),
                           ctx_params.get("lam"))
        return fam.poset, fam
    raise click.UsageError("provide --family or --poset")


def _require_family(ctx_params):
    poset, fam = _load_poset(ctx_params)
    if fam is None:
        raise click.UsageError("this command needs --family (triangular "
                               "family structure)")
    return fam


def _shift(poset):
    try:
        return choose_u(poset)
    except NoInteriorU:
        return choose_u(poset, strict=False)


def _emit(report, ok=True):
    payload = {"tool": "polyptych", "version": VERSION}
    payload.update(report)
    click.echo(json.dumps(payload, sort_keys=True, indent=2))
    sys.exit(0 if ok else 1)


def _source_options(fn):
    fn = click.option("--family", default=None,
                      help="builder family: gtA or gtC")(fn)
    fn = click.option("--n", type=int, default=None)(fn)
    fn = click.option("--lambda", "lam", default="",
                      help="comma-separated marking values")(fn)
    fn = click.option("--poset", type=click.Path(exists=True), default=None,
                      help="marked poset JSON file")(fn)
    fn = click.option("--seed", type=int, default=0)(fn)
    return fn


@click.group()
def main():
    """Exact verification tools for marked chain-order polytopes and
    polyptych lattices."""


@main.command()
@_source_options
def validate(**params):
    """Structural diagnostics for a marked poset."""
    poset, _ = _load_poset(params)
    diag = validate_poset(poset)
    report = {"command": "validate", "valid": diag.ok,
              "errors": [list(e) for e in diag.errors]}
    spade = None
    if diag.ok:
        try:
            classify_spade(poset)
            spade = True
        except SpadeViolation as exc:
            spade = False
            report["spade_error"] = str(exc)
    report["spade"] = spade
    _emit(report, ok=diag.ok and bool(spade))


@main.command()
@_source_options
def classify(**params):
    """Level-component classification of the reduced double levels."""
    poset, _ = _load_poset(params)
    try:
        cls = classify_spade(poset)
    except SpadeViolation as exc:
        _emit({"command": "classify", "ok": False, "error": str(exc)},
              ok=False)
    comps = [{"level": c.level, "shape": c.shape,
              "lower": list(c.lower), "upper": list(c.upper)}
             for c in cls.components]
    _emit({"command": "classify", "ok": True, "components": comps})


@main.command()
@_source_options
@click.option("--chart", default="", help="comma-separated chart elements")
@click.option("--k", type=int, default=1)
def polytope(chart, k, **params):
    """H-description and lattice-point count of a centered chart polytope."""
    poset, _ = _load_poset(params)
    u = _shift(poset)
    chart = _parse_chart(chart)
    hd = mco.hat_delta(poset, u, chart)
    points = mco.lattice_points_of_hat_delta(poset, u, chart, k)
    _emit({"command": "polytope", "chart": mco.chart_str(chart), "k": k,
           "u": dict(sorted(u.u.items())),
           "hrep": hd.hrep.dilate(k).to_json(),
           "lattice_points": len(points)})


@main.command()
@_source_options
@click.option("--k", type=int, default=1)
def transfer(k, **params):
    """Transfer bijection check: every chart count equals the chart-0
    count, with the map image matching the direct enumeration."""
    poset, _ = _load_poset(params)
    u = _shift(poset)
    rep = mco.verify_transfer_bijection(poset, u, k)
    _emit({"command": "transfer", "k": k, "report": rep}, ok=rep["ok"])


@main.command()
@_source_options
@click.option("--from-chart", "chart1", default="")
@click.option("--to-chart", "chart2", default="")
@click.option("--vector", required=True, help="comma-separated integers")
def mutate(chart1, chart2, vector, **params):
    """Apply the chart-to-chart mutation to an integer vector."""
    poset, _ = _load_poset(params)
    lat = lattice.PolyptychLattice(poset)
    vec = _parse_vector(vector)
    if len(vec) != lat.dim:
        raise click.UsageError(f"vector needs {lat.dim} coordinates")
    image = lat.mutate(_parse_chart(chart1), _parse_chart(chart2), vec)
    _emit({"command": "mutate", "from": chart1, "to": chart2,
           "vector": list(vec), "image": [int(c) for c in image]})


@main.command()
@_source_options
@click.option("--kmax", type=int, default=3)
def hilbert(kmax, **params):
    """Graded dimensions against chart lattice-point counts."""
    poset, _ = _load_poset(params)
    u = _shift(poset)
    rep = degeneration.hilbert_vs_ehrhart(poset, u, kmax)
    _emit({"command": "hilbert", "kmax": kmax, "report": rep},
          ok=rep["ok"])


@main.command()
@_source_options
@click.option("--pairs", type=int, default=500)
@click.option("--chart-samples", type=int, default=50)
def dualcheck(pairs, chart_samples, **params):
    """Strict dual pairing: symmetry, injectivity, chart-cone match."""
    fam = _require_family(params)
    rng = random.Random(params["seed"])
    rep = lattice.verify_strict_dual(fam, rng, pairs=pairs,
                                     chart_samples=chart_samples)
    _emit({"command": "dualcheck", "seed": params["seed"], "report": rep},
          ok=rep["ok"])


@main.command()
@_source_options
@click.option("--samples", type=int, default=100)
@click.option("--mode", type=click.Choice(["EXACT", "SAMPLED"]),
              default="EXACT")
def valcheck(samples, mode, **params):
    """Valuation multiplicativity into the semialgebra."""
    fam = _require_family(params)
    rng = random.Random(params["seed"])
    rep = algebra.verify_valuation(fam, rng, samples=samples, mode=mode)
    _emit({"command": "valcheck", "seed": params["seed"], "mode": mode,
           "report": rep}, ok=rep["ok"])


@main.command()
@_source_options
@click.option("--chart", default="")
@click.option("--kmax", type=int, default=2)
def nobody(chart, kmax, **params):
    """Chart-valuation value sets against dilated polytope points."""
    fam = _require_family(params)
    u = _shift(fam.poset)
    spec = degeneration.default_chart_valuation_spec(
        fam, _parse_chart(chart))
    rep = degeneration.no_body_sample(fam, u, spec, kmax)
    _emit({"command": "nobody", "kmax": kmax,
           "rho_certificate": spec.certificate, "report": rep},
          ok=rep["ok"])


@main.command()
@_source_options
@click.option("--emit", "what",
              type=click.Choice(["counts", "generators", "presentation"]),
              default="counts")
def cox(what, **params):
    """Cox-ring counts, semigroup generators, or the presentation."""
    poset, fam = _load_poset(params)
    if what == "counts":
        cc = cox_mod.cox_counts(poset)
        _emit({"command": "cox", "emit": what,
               "U": cc.U, "L": cc.L, "variables": cc.variables,
               "perLevel": {str(k): v
                            for k, v in sorted(cc.per_level.items())}})
    if fam is None:
        raise click.UsageError(f"--emit {what} needs --family")
    if what == "generators":
        reports = []
        ok = True
        for eps in cox_mod.all_sign_vectors(fam):
            rep = cox_mod.semigroup_generators(fam, eps)
            reports.append({"signs": {f"{i},{j}": e
                                      for (i, j), e in sorted(eps.items())},
                            "report": rep})
            ok = ok and rep["ok"]
        _emit({"command": "cox", "emit": what, "cones": reports}, ok=ok)
    pres = cox_mod.cox_presentation(fam)
    _emit({"command": "cox", "emit": what,
           "W": list(pres.w_vars), "Z": list(pres.z_vars),
           "t": list(pres.t_vars),
           "relations": [list(r) for r in pres.relations],
           "free_variables": list(pres.free_variables),
           "free_count": len(pres.free_variables)})


@main.command(name="acceptance")
@click.option("--profile", type=click.Choice(["quick", "full"]),
              default="quick")
@click.option("--seed", type=int, default=0)
def acceptance(profile, seed):
    """Run the acceptance criteria suite."""
    rep = acceptance_mod.run_suite(profile, seed)
    _emit(rep, ok=rep["ok"])


if __name__ == "__main__":
    main()
