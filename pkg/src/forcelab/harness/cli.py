"""Command line front end: machine-readable JSON lines on stdout, the
human summary on stderr.  Exit status 0 means every case passed, 1 means
at least one failure, 2 means a configuration or parse problem."""

import sys

import click

from .. import errors
from .. import names as nm
from .. import quotient as qt
from ..conditions import Cond1, ProductCond
from ..errors import ForceLabError
from . import config as hcfg
from . import registry
from . import serialization as ser


def _emit(obj):
    click.echo(ser.dumps(obj))


def _die(exc):
    click.echo(f"error [{exc.code}]: {exc}", err=True)
    sys.exit(2)


def _build_config(config, seed, cases, bound, exhaustive, width, properties):
    skeleton = hcfg.load_skeleton(config)
    cfg = hcfg.RunConfig(
        skeleton=skeleton,
        bound=bound,
        seed=seed,
        cases=cases,
        exhaustive=exhaustive,
        properties=properties,
        width=width,
    )
    return hcfg.validate_run_config(cfg, set(registry.PROPERTIES))


@click.group()
def main():
    """Property checking for the finitized forcing library."""


@main.command()
@click.argument("config", type=click.Path())
def validate(config):
    """Parse a skeleton config and echo its canonical form."""
    try:
        skeleton = hcfg.load_skeleton(config)
    except ForceLabError as exc:
        _die(exc)
    _emit(hcfg.skeleton_to_dict(skeleton))


@main.command(name="list-properties")
def list_properties():
    """List every registered property id with its description."""
    for spec in registry.PROPERTIES.values():
        _emit({"id": spec.pid, "doc": spec.doc, "invariants": list(spec.invariants)})


@main.command()
@click.argument("prop")
@click.option("--config", "config", required=True, type=click.Path())
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--cases", default=100, show_default=True, type=int)
@click.option("--bound", default=1, show_default=True, type=int)
@click.option("--width", default=None, type=int)
@click.option("--exhaustive", is_flag=True, default=False)
def check(prop, config, seed, cases, bound, width, exhaustive):
    """Run one property (or "all") and stream case reports."""
    try:
        cfg = _build_config(config, seed, cases, bound, exhaustive, width, (prop,))
    except ForceLabError as exc:
        _die(exc)
    totals = {"pass": 0, "fail": 0, "skip": 0}
    for rep in registry.run(cfg):
        totals[rep.status] += 1
        _emit(
            {
                "property": rep.property_id,
                "serial": rep.serial,
                "status": rep.status,
                "detail": rep.detail,
                "elapsed": round(rep.elapsed, 6),
                "payload": rep.payload,
            }
        )
    click.echo(
        f"{totals['pass']} passed, {totals['fail']} failed, {totals['skip']} skipped",
        err=True,
    )
    sys.exit(1 if totals["fail"] else 0)


@main.command()
@click.option("--config", "config", required=True, type=click.Path())
@click.option("--cond", "cond_file", required=True, type=click.Path())
@click.option("--beta", required=True, type=int)
def project(config, cond_file, beta):
    """Project a serialized condition through the quotient maps."""
    try:
        s = hcfg.load_skeleton(config)
        with open(cond_file, "r", encoding="utf-8") as fh:
            p = ser.cond_from_dict(ser.loads(fh.read()))
    except ForceLabError as exc:
        _die(exc)
    except OSError as exc:
        _die(ForceLabError(errors.CONFIG_ERROR, str(exc)))
    kp = s.successor_levels()[-1]
    try:
        if isinstance(p, Cond1):
            _emit(ser.cond1_to_dict(qt.rho1(s, p, kp, beta)))
        elif isinstance(p, ProductCond):
            _emit(ser.cond1_to_dict(qt.rho1(s, p.c1, kp, beta)))
        else:
            ctx = qt.SymContext(
                r_bar=registry._chain_cond(s),
                kappa_plus=kp,
                protected_tops=((s.n_levels - 1, 0),),
                beta_tilde=max(1, beta - 1),
                beta=beta,
            )
            _emit(ser.icond_to_dict(qt.rho0(s, p, ctx)))
    except ForceLabError as exc:
        click.echo(f"error [{exc.code}]: {exc}", err=True)
        sys.exit(1)


@main.command()
@click.option("--config", "config", required=True, type=click.Path())
@click.option("--name", "name_file", required=True, type=click.Path())
@click.option("--group", "group_file", required=True, type=click.Path())
@click.option("--samples", default=50, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--bound", default=2, show_default=True, type=int)
def orbit(config, name_file, group_file, samples, seed, bound):
    """Sampled fixedness of a canonical name under a subgroup spec."""
    try:
        s = hcfg.load_skeleton(config)
        with open(name_file, "r", encoding="utf-8") as fh:
            c = ser.canonical_name_from_dict(ser.loads(fh.read()))
        with open(group_file, "r", encoding="utf-8") as fh:
            spec = ser.spec_from_list(ser.loads(fh.read()))
    except ForceLabError as exc:
        _die(exc)
    except OSError as exc:
        _die(ForceLabError(errors.CONFIG_ERROR, str(exc)))
    try:
        x = nm.expand(s, c, bound)
        hit = nm.sym_check(s, x, spec, seed, samples, bound=bound)
    except ForceLabError as exc:
        click.echo(f"error [{exc.code}]: {exc}", err=True)
        sys.exit(1)
    if hit is None:
        _emit({"fixed": True, "samples": samples})
        sys.exit(0)
    pi0, _ = hit
    _emit({"fixed": False, "pi0": ser.aut0_to_dict(pi0)})
    sys.exit(1)


@main.command()
@click.argument("payload_file", type=click.Path())
def replay(payload_file):
    """Re-run the single case a report payload describes."""
    try:
        with open(payload_file, "r", encoding="utf-8") as fh:
            rep = registry.replay(fh.read())
    except ForceLabError as exc:
        _die(exc)
    except OSError as exc:
        _die(ForceLabError(errors.PARSE_ERROR, str(exc)))
    _emit(
        {
            "property": rep.property_id,
            "serial": rep.serial,
            "status": rep.status,
            "detail": rep.detail,
        }
    )
    sys.exit(1 if rep.status == "fail" else 0)


if __name__ == "__main__":
    main()
