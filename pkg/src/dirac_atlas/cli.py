"""Command-line surface: one executable, seven subcommands.

Deterministic by contract: identical invocations produce byte-identical
output, rationals travel as "p/q" strings, and every randomized
subcommand demands an explicit --seed. Exit codes: 0 success, 2
validation error, 3 numerical-ambiguity error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import dirac, ktheory, rapid_decay, repring, rootsys, spinmod
from .errors import NumericalAmbiguityError, ValidationError
from .jsonutil import fr_str, parse_coords, parse_fr, vec_str

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

_CONFIG_KEYS = {"catalog", "format", "degree_roots", "tol", "rank_gap", "power_tol", "seed"}


@dataclass
class Config:
    catalog: Optional[str] = None
    format: str = "json"
    degree_roots: str = "positive"
    tol: float = ktheory.TAU
    rank_gap: float = ktheory.RANK_GAP
    power_tol: float = rapid_decay.POWER_TOL
    seed: Optional[int] = None


def load_config(path: Optional[str]) -> Config:
    cfg = Config()
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValidationError("config file must hold a JSON object")
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        for key, val in data.items():
            setattr(cfg, key, val)
    if cfg.format not in ("json", "table"):
        raise ValidationError("format must be json or table")
    if cfg.degree_roots not in dirac.DEGREE_ROOT_CHOICES:
        raise ValidationError(f"degree_roots must be one of {dirac.DEGREE_ROOT_CHOICES}")
    return cfg


def _parse_weight_arg(text: str):
    """Weight coordinates from the command line.

    Denominators beyond powers of 2 have no home in the (half-integral)
    weight lattices this tool works with and are rejected early.
    """
    coords = parse_coords(text)
    for c in coords:
        if c.denominator & (c.denominator - 1):
            raise ValidationError(
                f"weight coordinate {c} has denominator {c.denominator}; only powers of 2 are admitted"
            )
    return coords


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{key}:")
            cols = sorted({c for row in val for c in row})
            print("  " + " | ".join(cols))
            for row in val:
                print("  " + " | ".join(str(row.get(c, "")) for c in cols))
        else:
            print(f"{key}: {val}")


# ---------------------------------------------------------------------------
# Schemas

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_WEIGHT = {"type": "array", "items": _RATIONAL}
_PARAMETER = {
    "type": "object",
    "properties": {
        "pair": {"type": "string"},
        "lambda": _WEIGHT,
        "mu": _WEIGHT,
        "formal_degree": _RATIONAL,
        "signed_trace": _RATIONAL,
        "chamber_id": {"type": "integer"},
    },
    "required": ["pair", "lambda", "mu", "formal_degree", "signed_trace", "chamber_id"],
}

SCHEMAS = {
    "rootsys.info": {
        "type": "object",
        "properties": {
            "cartan": {"type": "string"},
            "rank": {"type": "integer"},
            "num_positive_roots": {"type": "integer"},
            "weyl_order": {"type": ["integer", "null"]},
            "rootsys": {
                "type": "object",
                "properties": {
                    "cartan": {"type": "array"},
                    "simple_roots": {"type": "array", "items": _WEIGHT},
                    "positive_roots": {"type": "array", "items": _WEIGHT},
                    "form": {"type": "array", "items": _WEIGHT},
                    "rho": _WEIGHT,
                },
                "required": ["cartan", "simple_roots", "positive_roots", "form", "rho"],
            },
        },
        "required": ["cartan", "rank", "num_positive_roots", "rootsys"],
    },
    "rep.irr": {
        "type": "object",
        "properties": {
            "type": {"type": "string"},
            "highest_weight": _WEIGHT,
            "dimension": {"type": "integer"},
            "weyl_dimension": _RATIONAL,
            "dominant_multiplicities": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {"weight": _WEIGHT, "mult": {"type": "integer"}},
                    "required": ["weight", "mult"],
                },
            },
        },
        "required": ["type", "highest_weight", "dimension", "weyl_dimension"],
    },
    "rep.tensor": {
        "type": "object",
        "properties": {
            "type": {"type": "string"},
            "hw1": _WEIGHT,
            "hw2": _WEIGHT,
            "decomposition": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {"weight": _WEIGHT, "mult": {"type": "integer"}},
                    "required": ["weight", "mult"],
                },
            },
        },
        "required": ["type", "hw1", "hw2", "decomposition"],
    },
    "spin.info": {
        "type": "object",
        "properties": {
            "pair": {"type": "string"},
            "cartan": {"type": "string"},
            "k_cartan": {"type": "string"},
            "equal_rank": {"type": "boolean"},
            "parity": {"type": "integer"},
            "n_noncompact_positive": {"type": "integer"},
            "dim_s_plus": {"type": ["integer", "null"]},
            "dim_s_minus": {"type": ["integer", "null"]},
            "lifts_on_G": {"type": ["boolean", "null"]},
            "lifts_on_double_cover": {"type": ["boolean", "null"]},
        },
        "required": ["pair", "equal_rank", "parity", "n_noncompact_positive"],
    },
    "ds.induct": {
        "type": "object",
        "properties": {
            "pair": {"type": "string"},
            "mu": _WEIGHT,
            "ok": {"type": "boolean"},
            "exclusion": {"type": ["string", "null"]},
            "parameter": {"anyOf": [_PARAMETER, {"type": "null"}]},
        },
        "required": ["pair", "mu", "ok", "exclusion", "parameter"],
    },
    "ds.enumerate": {
        "type": "object",
        "properties": {
            "pair": {"type": "string"},
            "bound": _RATIONAL,
            "degree_roots": {"type": "string"},
            "count": {"type": "integer"},
            "parameters": {"type": "array", "items": _PARAMETER},
        },
        "required": ["pair", "bound", "degree_roots", "count", "parameters"],
    },
    "k0.class": {
        "type": "object",
        "properties": {
            "blocks": {"type": "array", "items": {"type": "integer"}},
            "ranks": {"type": "array", "items": {"type": "integer"}},
            "exact": {"type": "boolean"},
        },
        "required": ["blocks", "ranks", "exact"],
    },
    "k0.index": {
        "type": "object",
        "properties": {
            "blocks": {"type": "array", "items": {"type": "integer"}},
            "index": {"type": "array", "items": {"type": "integer"}},
            "kernel_cokernel": {"type": "array", "items": {"type": "integer"}},
            "agree": {"type": "boolean"},
        },
        "required": ["blocks", "index", "kernel_cokernel", "agree"],
    },
    "group.wedderburn": {
        "type": "object",
        "properties": {
            "group": {"type": "string"},
            "order": {"type": "integer"},
            "blocks": {"type": "array", "items": {"type": "integer"}},
            "classes": {"type": "array"},
            "seed": {"type": "integer"},
        },
        "required": ["group", "order", "blocks", "classes", "seed"],
    },
    "group.idempotent": {
        "type": "object",
        "properties": {
            "group": {"type": "string"},
            "block": {"type": "integer"},
            "idempotency_error": {"type": "number"},
            "trace": {"type": "number"},
            "block_dimension": {"type": "integer"},
            "k0_class": {"type": "array", "items": {"type": "integer"}},
            "coefficients": {"type": "array"},
            "seed": {"type": "integer"},
        },
        "required": ["group", "block", "idempotency_error", "trace", "k0_class"],
    },
    "rd.norms": {
        "type": "object",
        "properties": {
            "group": {"type": "string"},
            "s": {"type": "number"},
            "radius": {"type": "number"},
            "l1": {"type": "number"},
            "hs": {"type": "number"},
            "red_lower": {"type": "number"},
            "red_upper": {"type": "number"},
        },
        "required": ["group", "s", "radius", "l1", "hs", "red_lower", "red_upper"],
    },
    "rd.probe-unconditional": {
        "type": "object",
        "properties": {
            "group": {"type": "string"},
            "norm": {"type": "object"},
            "base_value": {"type": "number"},
            "max_deviation": {"type": "number"},
            "trials": {"type": "integer"},
            "seed": {"type": "integer"},
            "witness": {"type": ["array", "null"]},
        },
        "required": ["group", "norm", "base_value", "max_deviation", "trials", "seed"],
    },
    "rd.probe-rd": {
        "type": "object",
        "properties": {
            "group": {"type": "string"},
            "s": {"type": "number"},
            "samples": {"type": "integer"},
            "seed": {"type": "integer"},
            "max_ratio": {"type": "number"},
            "ratios": {"type": "array", "items": {"type": "number"}},
            "note": {"type": "string"},
        },
        "required": ["group", "s", "samples", "seed", "max_ratio", "ratios", "note"],
    },
}


def _maybe_schema(args, key: str) -> bool:
    if getattr(args, "schema", False):
        print(json.dumps(SCHEMAS[key], indent=2, sort_keys=True))
        return True
    return False


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_rootsys_info(args, cfg: Config) -> dict:
    rs = rootsys.build_root_system(rootsys.parse_cartan(args.type))
    try:
        order = rootsys.weyl_group_order(rs)
    except ValidationError:
        order = None
    return {
        "cartan": str(rs.cartan),
        "rank": rs.rank,
        "num_positive_roots": len(rs.positive_roots),
        "weyl_order": order,
        "rootsys": rootsys.rootsys_to_json(rs),
    }


def _cmd_rep_irr(args, cfg: Config) -> dict:
    rs = rootsys.build_root_system(rootsys.parse_cartan(args.type))
    hw = _parse_weight_arg(args.hw)
    chi = repring.irr_character(hw, rs)
    dom = [
        {"weight": vec_str(w), "mult": m}
        for w, m in sorted(
            repring.dominant_multiplicities(hw, rs).items(),
            key=lambda t: rootsys.grlex_key(t[0]),
        )
    ]
    return {
        "type": str(rs.cartan),
        "highest_weight": vec_str(hw),
        "dimension": repring.dimension(chi),
        "weyl_dimension": fr_str(repring.weyl_dimension(hw, rs)),
        "dominant_multiplicities": dom,
    }


def _cmd_rep_tensor(args, cfg: Config) -> dict:
    rs = rootsys.build_root_system(rootsys.parse_cartan(args.type))
    hw1 = _parse_weight_arg(args.hw)
    hw2 = _parse_weight_arg(args.hw2)
    prod = repring.product(
        repring.irr_character(hw1, rs), repring.irr_character(hw2, rs)
    )
    decomp = repring.decompose(prod)
    return {
        "type": str(rs.cartan),
        "hw1": vec_str(hw1),
        "hw2": vec_str(hw2),
        "decomposition": [
            {"weight": vec_str(l.highest_weight), "mult": c} for l, c in decomp
        ],
    }


def _cmd_spin_info(args, cfg: Config) -> dict:
    pair = spinmod.get_pair(args.pair, cfg.catalog)
    payload = {
        "pair": args.pair,
        "cartan": str(pair.g.cartan),
        "k_cartan": str(pair.k.cartan),
        "equal_rank": pair.equal_rank,
        "parity": pair.parity,
        "n_noncompact_positive": pair.n_plus,
        "dim_s_plus": None,
        "dim_s_minus": None,
        "lifts_on_G": None,
        "lifts_on_double_cover": None,
    }
    if pair.equal_rank:
        sc = spinmod.spin_characters(pair)
        st = spinmod.check_spin_structure(pair)
        payload.update(
            dim_s_plus=repring.dimension(sc.s_plus),
            dim_s_minus=repring.dimension(sc.s_minus),
            lifts_on_G=st.lifts_on_G,
            lifts_on_double_cover=st.lifts_on_double_cover,
        )
    return payload


def _cmd_ds_induct(args, cfg: Config) -> dict:
    pair = spinmod.get_pair(args.pair, cfg.catalog)
    hw = _parse_weight_arg(args.hw)
    res = dirac.dirac_induct(hw, pair, args.degree_roots or cfg.degree_roots)
    return {
        "pair": args.pair,
        "mu": vec_str(hw),
        "ok": res.ok,
        "exclusion": res.exclusion,
        "parameter": dirac.parameter_to_json(res.parameter) if res.ok else None,
    }


def _cmd_ds_enumerate(args, cfg: Config) -> dict:
    pair = spinmod.get_pair(args.pair, cfg.catalog)
    bound = parse_fr(args.bound)
    params = dirac.enumerate_discrete_series(
        pair, bound, args.degree_roots or cfg.degree_roots
    )
    return {
        "pair": args.pair,
        "bound": fr_str(bound),
        "degree_roots": args.degree_roots or cfg.degree_roots,
        "count": len(params),
        "parameters": [dirac.parameter_to_json(p) for p in params],
    }


def _parse_matrix_entries(mat):
    """Nested JSON matrix: numbers, [re, im] pairs, or "p/q" strings."""

    def conv_exact(x):
        if isinstance(x, str):
            return parse_fr(x)
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, list) and len(x) == 2 and all(isinstance(y, (str, int)) for y in x):
            return (parse_fr(str(x[0])), parse_fr(str(x[1])))
        raise TypeError

    try:
        return [[conv_exact(x) for x in row] for row in mat]
    except TypeError:
        pass

    def conv_float(x):
        if isinstance(x, (int, float)):
            return complex(x)
        if isinstance(x, list) and len(x) == 2:
            return complex(float(x[0]), float(x[1]))
        if isinstance(x, str):
            return complex(float(parse_fr(x)))
        raise ValidationError(f"cannot parse matrix entry {x!r}")

    return np.array([[conv_float(x) for x in row] for row in mat], dtype=complex)


def _cmd_k0_class(args, cfg: Config) -> dict:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    for key in ("blocks", "matrices"):
        if key not in spec:
            raise ValidationError(f"k0 class spec needs '{key}'")
    alg = ktheory.FDAlgebra(tuple(int(b) for b in spec["blocks"]))
    mats = [_parse_matrix_entries(m) for m in spec["matrices"]]
    elem = ktheory.AlgebraElement.from_blocks(alg, mats)
    cls = ktheory.k0_class(elem, alg, tol=cfg.tol, gap=cfg.rank_gap)
    return {"blocks": list(alg.blocks), "ranks": list(cls.ranks), "exact": elem.is_exact}


def _cmd_k0_index(args, cfg: Config) -> dict:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    for key in ("blocks", "e0", "e1", "u"):
        if key not in spec:
            raise ValidationError(f"k0 index spec needs '{key}'")
    alg = ktheory.FDAlgebra(tuple(int(b) for b in spec["blocks"]))
    e0 = [int(x) for x in spec["e0"]]
    e1 = [int(x) for x in spec["e1"]]
    u = [np.array(m, dtype=complex).reshape(b, a) for m, a, b in zip(spec["u"], e0, e1)]
    mod = ktheory.FredholmModule.build(e0, e1, u)
    idx = ktheory.fredholm_index(mod, alg, gap=cfg.rank_gap)
    oracle = ktheory.index_by_kernel_cokernel(mod, alg, gap=cfg.rank_gap)
    return {
        "blocks": list(alg.blocks),
        "index": list(idx.ranks),
        "kernel_cokernel": list(oracle.ranks),
        "agree": idx == oracle,
    }


def _require_seed(args, cfg: Config) -> int:
    seed = args.seed if args.seed is not None else cfg.seed
    if seed is None:
        raise ValidationError("this subcommand is randomized: --seed is required")
    return int(seed)


def _cmd_group_wedderburn(args, cfg: Config) -> dict:
    seed = _require_seed(args, cfg)
    if args.table:
        with open(args.table, "r", encoding="utf-8") as fh:
            table = json.load(fh)
        G = ktheory.wedderburn(np.array(table, dtype=int), seed=seed)
        name = args.table
    else:
        if not args.name:
            raise ValidationError("give --name or --table")
        G = ktheory.wedderburn(args.name, seed=seed)
        name = args.name
    return {
        "group": name,
        "order": G.order,
        "blocks": list(G.algebra.blocks),
        "classes": [list(c) for c in G.classes],
        "seed": seed,
    }


def _cmd_group_idempotent(args, cfg: Config) -> dict:
    seed = _require_seed(args, cfg)
    G = ktheory.wedderburn(args.name, seed=seed)
    p = ktheory.ds_idempotent(G, args.block)
    err = float(np.max(np.abs(ktheory.convolve(p, p, G) - p)))
    cls = ktheory.group_function_class(p, G)
    return {
        "group": args.name,
        "block": args.block,
        "block_dimension": G.algebra.blocks[args.block],
        "idempotency_error": err,
        "trace": ktheory.trace_pairing(p, G),
        "k0_class": list(cls.ranks),
        "coefficients": [[float(c.real), float(c.imag)] for c in p],
        "seed": seed,
    }


def _load_group_function(args, group):
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            items = json.load(fh)
        return rapid_decay.function_from_json(items, group)
    raise ValidationError("--input FILE with the group function is required")


def _cmd_rd_norms(args, cfg: Config) -> dict:
    group = rapid_decay.parse_group(args.group)
    f = _load_group_function(args, group)
    report = rapid_decay.compute_norm_report(f, group, args.s, args.radius, tol=cfg.power_tol)
    return {
        "group": args.group,
        "s": report.s,
        "radius": report.radius,
        "l1": report.l1,
        "hs": report.hs,
        "red_lower": report.red_lower,
        "red_upper": report.red_upper,
    }


def _default_probe_function(group) -> dict:
    """Sum of deltas over the unit ball: identity plus generators."""
    return {g: 1.0 + 0j for g in group.ball(1)}


def _cmd_rd_probe_unconditional(args, cfg: Config) -> dict:
    seed = _require_seed(args, cfg)
    group = rapid_decay.parse_group(args.group)
    f = _load_group_function(args, group) if args.input else _default_probe_function(group)
    radius = args.radius
    if args.norm == "reduced_truncated" and radius is None:
        radius = float(rapid_decay.support_radius(f, group) + 8)
    spec = rapid_decay.NormSpec(name=args.norm, s=args.s, radius=radius)
    rep = rapid_decay.unconditionality_probe(spec, f, group, args.trials, seed)
    return {
        "group": args.group,
        "norm": {"name": spec.name, "s": spec.s, "radius": spec.radius},
        "base_value": rep.base_value,
        "max_deviation": rep.max_deviation,
        "trials": rep.trials,
        "seed": rep.seed,
        "witness": rapid_decay.function_to_json(rep.witness) if rep.witness else None,
    }


def _cmd_rd_probe_rd(args, cfg: Config) -> dict:
    seed = _require_seed(args, cfg)
    group = rapid_decay.parse_group(args.group)
    rep = rapid_decay.rd_inequality_probe(
        group,
        args.s,
        args.samples,
        seed,
        sphere_supported=args.spheres,
    )
    return {
        "group": args.group,
        "s": rep.s,
        "samples": rep.samples,
        "seed": rep.seed,
        "max_ratio": rep.max_ratio,
        "ratios": list(rep.ratios),
        "note": rep.note,
    }


# ---------------------------------------------------------------------------
# Parser assembly


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default=None, help="output format")
    p.add_argument("--schema", action="store_true", help="print the output JSON schema and exit")
    p.add_argument("--catalog", default=None, help="pair catalog path (or DIRAC_ATLAS_CATALOG)")
    p.add_argument("--config", default=None, help="JSON config file; unknown keys are rejected")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dirac-atlas",
        description="Exact discrete-series classification and desk-scale K-theory/norm laboratories.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rootsys", help="root system info")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("info", help="roots, form, rho, Weyl order")
    q.add_argument("type", help="Cartan type, e.g. A2 or A1xA1")
    _add_common(q)
    q.set_defaults(handler=_cmd_rootsys_info, schema_key="rootsys.info")

    p = sub.add_parser("rep", help="representation ring")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("irr", help="irreducible character data")
    q.add_argument("--type", required=True)
    q.add_argument("--hw", required=True, help="highest weight coords, e.g. 1,0")
    _add_common(q)
    q.set_defaults(handler=_cmd_rep_irr, schema_key="rep.irr")
    q = ssub.add_parser("tensor", help="decompose a tensor product")
    q.add_argument("--type", required=True)
    q.add_argument("--hw", required=True)
    q.add_argument("--hw2", required=True)
    _add_common(q)
    q.set_defaults(handler=_cmd_rep_tensor, schema_key="rep.tensor")

    p = sub.add_parser("spin", help="spin modules of catalog pairs")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("info", help="grading, spin dims, liftability")
    q.add_argument("--pair", required=True)
    _add_common(q)
    q.set_defaults(handler=_cmd_spin_info, schema_key="spin.info")

    p = sub.add_parser("ds", help="discrete series classification")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("induct", help="induce one K-type")
    q.add_argument("--pair", required=True)
    q.add_argument("--hw", required=True, help="K-type coords, e.g. 3/2")
    q.add_argument("--degree-roots", choices=dirac.DEGREE_ROOT_CHOICES, default=None)
    _add_common(q)
    q.set_defaults(handler=_cmd_ds_induct, schema_key="ds.induct")
    q = ssub.add_parser("enumerate", help="all parameters within a norm bound")
    q.add_argument("--pair", required=True)
    q.add_argument("--bound", required=True, help="bound on (lambda,lambda), e.g. 60 or 9/2")
    q.add_argument("--degree-roots", choices=dirac.DEGREE_ROOT_CHOICES, default=None)
    _add_common(q)
    q.set_defaults(handler=_cmd_ds_enumerate, schema_key="ds.enumerate")

    p = sub.add_parser("k0", help="K0 classes and Fredholm indices")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("class", help="K0 class of an idempotent (JSON spec)")
    q.add_argument("--spec", required=True, help="JSON: {blocks, matrices}")
    _add_common(q)
    q.set_defaults(handler=_cmd_k0_class, schema_key="k0.class")
    q = ssub.add_parser("index", help="stabilized Fredholm index (JSON spec)")
    q.add_argument("--spec", required=True, help="JSON: {blocks, e0, e1, u}")
    _add_common(q)
    q.set_defaults(handler=_cmd_k0_index, schema_key="k0.index")

    p = sub.add_parser("group", help="finite group convolution algebras")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("wedderburn", help="block decomposition of a group algebra")
    q.add_argument("--name", default=None, help="z<n>, s3, s4, d4, q8")
    q.add_argument("--table", default=None, help="JSON file with a multiplication table")
    q.add_argument("--seed", type=int, default=None, required=False)
    _add_common(q)
    q.set_defaults(handler=_cmd_group_wedderburn, schema_key="group.wedderburn")
    q = ssub.add_parser("idempotent", help="matrix-coefficient idempotent of one block")
    q.add_argument("--name", required=True)
    q.add_argument("--block", type=int, required=True)
    q.add_argument("--seed", type=int, default=None)
    _add_common(q)
    q.set_defaults(handler=_cmd_group_idempotent, schema_key="group.idempotent")

    p = sub.add_parser("rd", help="norms on discrete group algebras")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("norms", help="l1 / Sobolev / truncated reduced bracket")
    q.add_argument("--group", required=True, help="z, z<d>, f<k>")
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--input", required=True, help="JSON group function")
    q.add_argument("--radius", type=float, required=True)
    _add_common(q)
    q.set_defaults(handler=_cmd_rd_norms, schema_key="rd.norms")
    q = ssub.add_parser("probe-unconditional", help="phase-flip deviation of a norm")
    q.add_argument("--group", required=True)
    q.add_argument("--norm", choices=("l1", "hs", "reduced_truncated"), default="reduced_truncated")
    q.add_argument("--s", type=float, default=None)
    q.add_argument("--radius", type=float, default=None)
    q.add_argument("--input", default=None, help="JSON group function (default: unit-ball deltas)")
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=None)
    _add_common(q)
    q.set_defaults(handler=_cmd_rd_probe_unconditional, schema_key="rd.probe-unconditional")
    q = ssub.add_parser("probe-rd", help="empirical rapid-decay ratio probe")
    q.add_argument("--group", required=True)
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--samples", type=int, default=50)
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--spheres", action="store_true", help="sphere-supported samples")
    _add_common(q)
    q.set_defaults(handler=_cmd_rd_probe_rd, schema_key="rd.probe-rd")

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if _maybe_schema(args, args.schema_key):
            return EXIT_OK
        cfg = load_config(args.config)
        if args.catalog:
            cfg.catalog = args.catalog
        elif cfg.catalog is None:
            cfg.catalog = os.environ.get(spinmod.CATALOG_ENV_VAR)
        payload = args.handler(args, cfg)
        _emit(payload, args.format or cfg.format)
        return EXIT_OK
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalAmbiguityError as exc:
        print(f"numerical ambiguity: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
