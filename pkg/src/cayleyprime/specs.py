"""Parsing of the short textual object specs used on the command line."""

from __future__ import annotations

import json
import os

from .errors import ValidationError
from .group import (
    FiniteGroup,
    build_alternating,
    build_cyclic,
    build_dihedral,
    build_product,
    build_quaternion,
    build_symmetric,
    group_from_json,
)
from .ring import FiniteCommRing, build_gf, build_ring_product, build_zmod, ring_from_json


def _json_or_file(text: str):
    if text.lstrip().startswith(("{", "[")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON spec: {exc}") from None
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return None


def parse_group(text: str) -> FiniteGroup:
    """``cyclic:N``, ``dihedral:N``, ``symmetric:K``, ``alternating:K``, ``quaternion``,
    ``AxB`` products of those, or a group JSON literal / file."""
    data = _json_or_file(text)
    if data is not None:
        return group_from_json(data)
    parts = text.split("x")
    if len(parts) > 1:
        out = parse_group(parts[0])
        for p in parts[1:]:
            out = build_product(out, parse_group(p))
        return out
    kind, _, arg = text.partition(":")
    builders = {
        "cyclic": build_cyclic,
        "dihedral": build_dihedral,
        "symmetric": build_symmetric,
        "alternating": build_alternating,
    }
    if kind == "quaternion":
        return build_quaternion()
    if kind not in builders:
        raise ValidationError(f"unknown group kind {kind!r} in --group")
    try:
        n = int(arg)
    except ValueError:
        raise ValidationError(f"--group {text!r}: expected an integer after ':'") from None
    return builders[kind](n)


def parse_ring_factor(text: str) -> FiniteCommRing:
    """``f<q>`` for the field of order ``q``, ``z<n>`` for ``Z/n``."""
    text = text.strip().lower()
    if len(text) < 2 or text[0] not in "fz" or not text[1:].isdigit():
        raise ValidationError(f"--product factor {text!r}: expected f<q> or z<n>")
    n = int(text[1:])
    if text[0] == "z":
        return build_zmod(n)
    from .ring import prime_factors

    ps = prime_factors(n) if n > 1 else []
    if not ps or len(set(ps)) != 1:
        raise ValidationError(f"--product factor {text!r}: {n} is not a prime power")
    return build_gf(ps[0], len(ps))


def parse_ring(ring: str | None = None, zmod: int | None = None, gf=None, product: str | None = None):
    given = [x is not None for x in (ring, zmod, gf, product)]
    if sum(given) != 1:
        raise ValidationError("give exactly one of --ring, --zmod, --gf, --product")
    if zmod is not None:
        return build_zmod(zmod)
    if gf is not None:
        return build_gf(int(gf[0]), int(gf[1]))
    if product is not None:
        return build_ring_product([parse_ring_factor(f) for f in product.split(",")])
    data = _json_or_file(ring)
    if data is None:
        raise ValidationError(f"--ring {ring!r} is neither JSON nor an existing file")
    return ring_from_json(data)


def parse_character(text: str) -> dict:
    """``principal``, ``power_residue:d``, or a character JSON literal / file."""
    data = _json_or_file(text)
    if data is not None:
        return data
    kind, _, arg = text.partition(":")
    if kind == "principal" and not arg:
        return {"kind": "principal"}
    if kind == "power_residue":
        try:
            return {"kind": "power_residue", "d": int(arg)}
        except ValueError:
            raise ValidationError(f"--character {text!r}: expected power_residue:<d>") from None
    raise ValidationError(f"unknown character spec {text!r}")


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"--s {text!r}: expected comma-separated integers") from None
