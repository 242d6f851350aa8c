"""Command-line front end: ``analyze``, ``ring`` and ``sweep``.

Reports are JSON with sorted keys, written to ``--out`` or stdout. Exit
codes: 0 prime, 1 not-prime, 2 degenerate / refused / hypotheses not met,
3 input or cap error, 4 internal disagreement with the oracle. ``sweep``
exits 1 when any case disagrees.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, fields

import numpy as np

from .cayley import (
    DEGENERATE,
    NOT_PRIME,
    PRIME,
    WreathDecomposition,
    cayley_graph,
    find_nontrivial_homogeneous,
    subgroup_criterion,
    wreath_decompose,
)
from .errors import CapExceededError, CayleyError, HypothesisError, ValidationError
from .graph import connected_components, graph_to_dict, is_connected, load_graph
from .group import lex_key
from .oracle import oracle_is_prime, sweep_generator_sets
from .ring import character_from_json, is_even, is_primitive, kernel, units
from .ring_cayley import (
    HYPOTHESES_NOT_MET,
    paley_graph,
    paley_prime_test,
    ring_cayley,
    ring_prime_test,
    unitary_graph,
    unitary_prime_classification,
)
from .spectral import adjacency_spectrum, wreath_spectrum, zero_multiplicity_check
from .specs import parse_character, parse_group, parse_int_list, parse_ring
from .sweeps import FAMILIES, run_family

EXIT = {PRIME: 0, NOT_PRIME: 1, DEGENERATE: 2, HYPOTHESES_NOT_MET: 2, "refused": 2}
EXIT_ERROR = 3
EXIT_ORACLE = 4


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    graph: str | None = None
    s: str | None = None
    ring: str | None = None
    zmod: int | None = None
    gf: tuple[int, int] | None = None
    product: str | None = None
    units: bool = False
    character: str | None = None
    unitary: bool = False
    spectrum: bool = False
    oracle: bool = False
    family: str | None = None
    limit: int | None = None
    max_sets: int | None = None
    max_order: int | None = None
    seed: int = 0
    jobs: int = 1
    out: str | None = None

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"unknown config field {unknown[0]!r}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.jobs < 1:
            raise ValidationError("--jobs must be at least 1")
        if self.max_order is not None and not 1 <= self.max_order <= 4096:
            raise ValidationError("--max-order must lie in 1..4096")
        if self.limit is not None and self.limit < 1:
            raise ValidationError("--limit must be positive")


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


@contextmanager
def _blame(flag: str):
    """Prefix validation errors raised inside the block with the flag that caused them."""
    try:
        yield
    except ValidationError as exc:
        raise ValidationError(f"{flag}: {exc}", witness=exc.witness) from None


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_jsonable) + "\n"


# -- analyze ----------------------------------------------------------------------


def _oracle_block(g, verdict: str) -> tuple[dict, bool]:
    truth = oracle_is_prime(g)
    agrees = verdict not in (PRIME, NOT_PRIME) or (verdict == PRIME) == truth
    return {"is_prime": truth, "agrees": agrees}, agrees


def cmd_analyze(cfg: RunConfig) -> tuple[dict, int]:
    if (cfg.graph is None) == (cfg.group is None):
        raise ValidationError("analyze needs exactly one of --graph or --group")
    report: dict = {"command": "analyze"}
    group = None
    if cfg.graph is not None:
        g = load_graph(cfg.graph)
        report["input"] = {"graph": cfg.graph}
    else:
        if cfg.s is None:
            raise ValidationError("--group needs --s")
        group = parse_group(cfg.group)
        s = parse_int_list(cfg.s)
        with _blame("--s"):
            g = cayley_graph(group, s)
        report["input"] = {"group": group.name, "order": group.order, "s": sorted(s)}
    report["n"] = g.n
    report["edges"] = g.edge_count()

    if g.n >= 3 and (g.is_complete() or g.is_cocomplete()):
        verdict = DEGENERATE
        report["homogeneity"] = find_nontrivial_homogeneous(g).to_dict()
        report["decomposition"] = DEGENERATE
    else:
        try:
            hom = find_nontrivial_homogeneous(g)
        except HypothesisError as exc:
            report["homogeneity"] = {"verdict": "refused", "tag": exc.tag, "message": str(exc)}
            verdict = "refused"
        else:
            report["homogeneity"] = hom.to_dict()
            verdict = hom.verdict
            try:
                dec = wreath_decompose(g)
            except HypothesisError as exc:
                report["decomposition"] = {"refused": exc.tag, "message": str(exc)}
            else:
                report["decomposition"] = dec.to_dict() if isinstance(dec, WreathDecomposition) else dec
                if cfg.spectrum and isinstance(dec, WreathDecomposition) and dec.inner.is_regular():
                    predicted = wreath_spectrum(
                        adjacency_spectrum(dec.outer),
                        dec.outer.n,
                        adjacency_spectrum(dec.inner),
                        dec.inner.n,
                        float(dec.inner.degree(0)),
                    )
                    report["wreath_spectrum_matches"] = predicted.close_to(adjacency_spectrum(g))
    report["verdict"] = verdict

    if group is not None and verdict in (PRIME, NOT_PRIME):
        h = subgroup_criterion(group, parse_int_list(cfg.s))
        report["subgroup_witness"] = lex_key(h) if h is not None else None
    if cfg.spectrum:
        report["spectrum"] = adjacency_spectrum(g).to_dict()
    code = EXIT[verdict]
    if cfg.oracle:
        report["oracle"], agrees = _oracle_block(g, verdict)
        if not agrees:
            code = EXIT_ORACLE
    return report, code


# -- ring -------------------------------------------------------------------------


def _ring_mode(cfg: RunConfig) -> str:
    modes = [m for m, on in (("s", cfg.s is not None), ("units", cfg.units), ("character", cfg.character is not None), ("unitary", cfg.unitary)) if on]
    if len(modes) != 1:
        raise ValidationError("ring needs exactly one of --s, --units, --character, --unitary")
    return modes[0]


def _spectrum_block(report: dict, g, r, s, cert):
    report["spectrum"] = adjacency_spectrum(g).to_dict()
    if cert.verdict == NOT_PRIME and cert.witness_ideal is not None:
        ok, m, bound = zero_multiplicity_check(r, s, cert)
        report["spectrum_check"] = {"zero_multiplicity": m, "bound": bound, "holds": ok}


def cmd_ring(cfg: RunConfig) -> tuple[dict, int]:
    r = parse_ring(cfg.ring, cfg.zmod, cfg.gf, cfg.product)
    mode = _ring_mode(cfg)
    report: dict = {"command": "ring", "ring": r.name, "size": r.size}

    if mode == "unitary":
        ok, trace = unitary_prime_classification(r)
        g = unitary_graph(r)
        report.update(
            {
                "classification": ok,
                "trace": trace,
                "connected": is_connected(g),
                "components": [lex_key(c) for c in connected_components(g)],
                "graph": graph_to_dict(g),
            }
        )
        code = 0 if ok else 1
        if cfg.spectrum:
            report["spectrum"] = adjacency_spectrum(g).to_dict()
        if cfg.oracle:
            truth = oracle_is_prime(g)
            report["oracle"] = {"is_prime": truth, "agrees": truth == ok}
            if truth != ok:
                code = EXIT_ORACLE
        return report, code

    if mode == "character":
        spec = parse_character(cfg.character)
        with _blame("--character"):
            psi = character_from_json(r, spec)
        if not is_even(psi):
            raise ValidationError(f"--character: {cfg.character!r} is odd on {r.name}: psi(-1) != 1")
        prim = is_primitive(psi)
        s = kernel(psi)
        report["character"] = {
            **spec,
            "order": psi.order,
            "even": True,
            "primitive": prim.primitive,
            "kernel": lex_key(s),
        }
        g = paley_graph(psi)
        cert = paley_prime_test(psi)
    else:
        s = units(r) if mode == "units" else frozenset(parse_int_list(cfg.s))
        with _blame("--s"):
            g = ring_cayley(r, s)
        cert = ring_prime_test(r, s)
    report["s"] = lex_key(s)
    report.update(cert.to_dict())
    if cfg.spectrum:
        _spectrum_block(report, g, r, s, cert)
    code = EXIT[cert.verdict]
    if cfg.oracle:
        report["oracle"], agrees = _oracle_block(g, cert.resolved_verdict)
        if not agrees:
            code = EXIT_ORACLE
    return report, code


# -- sweep ------------------------------------------------------------------------


def cmd_sweep(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.family not in FAMILIES:
        raise ValidationError(f"unknown sweep family {cfg.family!r}; choose from {', '.join(FAMILIES)}")
    if cfg.max_sets is not None:
        if cfg.family != "groups" or cfg.group is None:
            raise ValidationError("--max-sets applies to 'sweep groups --group SPEC'")
        rep = sweep_generator_sets(parse_group(cfg.group), cfg.max_sets, cfg.seed)
        report = {"family": "groups", "sampled": True, "seed": cfg.seed, **rep.to_dict(), "ok": rep.ok}
        return report, 0 if rep.ok else 1
    groups = [cfg.group] if cfg.group else None
    report = run_family(cfg.family, cfg.limit, cfg.jobs, groups)
    return report, 0 if report["ok"] else 1


COMMANDS = {"analyze": cmd_analyze, "ring": cmd_ring, "sweep": cmd_sweep}


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayleyprime", description="Primality of Cayley graphs over groups and rings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--max-order", type=int, help="override group/ring size caps")
    common.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")
    common.add_argument("--spectrum", action="store_true", help="append the adjacency spectrum")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="homogeneous sets and wreath decomposition")
    a.add_argument("--group", help="cyclic:N, dihedral:N, AxB, JSON literal or file")
    a.add_argument("--s", help="comma-separated connection set")
    a.add_argument("--graph", help="graph JSON or edge-list file")

    r = sub.add_parser("ring", parents=[common], help="ring Cayley, Paley and unitary graphs")
    r.add_argument("--ring", help="ring JSON literal or file")
    r.add_argument("--zmod", type=int)
    r.add_argument("--gf", type=int, nargs=2, metavar=("P", "K"))
    r.add_argument("--product", help="comma-separated factors such as f2,f3,z4")
    r.add_argument("--s", help="comma-separated unit subgroup")
    r.add_argument("--units", action="store_true", help="use the full unit group")
    r.add_argument("--character", help="principal, power_residue:d, or JSON")
    r.add_argument("--unitary", action="store_true", help="apply the unitary-graph classification")

    w = sub.add_parser("sweep", parents=[common], help="oracle agreement sweeps")
    w.add_argument("family", choices=FAMILIES)
    w.add_argument("--limit", type=int, help="family size bound (n, q or product)")
    w.add_argument("--group", help="sweep a single group instead of the default list")
    w.add_argument("--max-sets", type=int, help="sample this many connection sets (groups family)")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    data = {k: v for k, v in vars(ns).items() if v is not None}
    if "gf" in data:
        data["gf"] = tuple(data["gf"])
    return RunConfig.from_mapping(data)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    saved = os.environ.get("CAYLEY_MAX_ORDER")
    try:
        cfg = config_from_args(ns)
        if cfg.max_order is not None:
            # worker processes inherit the override through the environment
            os.environ["CAYLEY_MAX_ORDER"] = str(cfg.max_order)
        report, code = COMMANDS[cfg.command](cfg)
    except (ValidationError, CapExceededError, HypothesisError, CayleyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            err["witness"] = witness
        sys.stderr.write(dumps(err))
        return EXIT_ERROR
    finally:
        if saved is None:
            os.environ.pop("CAYLEY_MAX_ORDER", None)
        else:
            os.environ["CAYLEY_MAX_ORDER"] = saved
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
