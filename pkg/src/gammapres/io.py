"""JSON encodings for groups, Γ-groups, modules, varieties and covers.

Group::

    {"table": [[...]], "generators": [...]}            # multiplication table
    {"permutations": [[...], ...]}                      # permutation generators
    {"named": "cyclic", "args": [3]}                    # library constructor

Γ-group::

    {"group": <group>, "gamma": <group>,
     "action": [[perm of G for each Γ-generator], ...]}  # omit for trivial action

Module (over a group, or over G⋊Γ for a Γ-group: G's generators come first,
then Γ's)::

    {"prime": p, "matrices": [[[...]], ...]}            # one matrix per generator
    {"prime": p, "character": [c_1, ...]}               # one-dimensional shorthand

Variety::  {"members": [<Γ-group>, ...], "product_order_bound": 4096}

Cover (a Γ-surjection F -> G)::  {"source": <Γ-group>, "target": <Γ-group>, "map": [...]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from . import groups as G
from .arith import LocalData
from .errors import GammapresError
from .modules import FpModule
from .randmodel import RelationModuleDecomposition
from .varieties import VarietySpec

__all__ = [
    "SchemaError",
    "load_json",
    "group_from_json",
    "gamma_group_from_json",
    "module_from_json",
    "variety_from_json",
    "cover_from_json",
    "local_data_from_json",
    "decomposition_from_json",
    "NAMED_GROUPS",
]


class SchemaError(GammapresError, ValueError):
    """Input JSON does not match the expected shape."""


NAMED_GROUPS = {
    "trivial": G.trivial_group,
    "cyclic": G.cyclic,
    "elementary_abelian": G.elementary_abelian,
    "symmetric": G.symmetric,
    "alternating": G.alternating,
    "dihedral": G.dihedral,
    "quaternion": G.quaternion,
}


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    except OSError as e:
        raise SchemaError(f"{path}: cannot read ({e.strerror})") from None


def _need(d: Any, key: str, where: str):
    if not isinstance(d, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in d:
        raise SchemaError(f"{where}: missing key '{key}'")
    return d[key]


def group_from_json(d: Any, where: str = "group") -> G.FiniteGroup:
    if not isinstance(d, dict):
        raise SchemaError(f"{where}: expected an object")
    try:
        if "named" in d:
            fn = NAMED_GROUPS.get(d["named"])
            if fn is None:
                raise SchemaError(f"{where}: unknown named group '{d['named']}'")
            return fn(*d.get("args", []))
        if "table" in d:
            return G.FiniteGroup(d["table"], generators=d.get("generators"), name=d.get("name"))
        if "permutations" in d:
            return G.from_permutations(d["permutations"], name=d.get("name"))
    except SchemaError:
        raise
    except (GammapresError, TypeError, ValueError, IndexError) as e:
        raise SchemaError(f"{where}: {e}") from None
    raise SchemaError(f"{where}: need one of 'named', 'table', 'permutations'")


def gamma_group_from_json(d: Any, where: str = "gamma-group") -> G.GammaGroup:
    g = group_from_json(_need(d, "group", where), f"{where}.group")
    gamma = group_from_json(d["gamma"], f"{where}.gamma") if "gamma" in d else G.trivial_group()
    try:
        if "action" not in d:
            return G.GammaGroup.trivial_action(g, gamma)
        act = d["action"]
        if len(act) != len(gamma.generators):
            raise SchemaError(f"{where}.action: need one permutation per Γ-generator "
                              f"({len(gamma.generators)})")
        return G.GammaGroup.from_generator_action(g, gamma, act)
    except SchemaError:
        raise
    except (GammapresError, TypeError, ValueError, IndexError) as e:
        raise SchemaError(f"{where}: {e}") from None


def module_from_json(d: Any, group: G.FiniteGroup, where: str = "module") -> FpModule:
    p = _need(d, "prime", where)
    try:
        if "character" in d:
            vals = d["character"]
            if len(vals) != len(group.generators):
                raise SchemaError(f"{where}.character: need {len(group.generators)} values")
            return FpModule(p, group, [[[v]] for v in vals], check=True, dim=1)
        mats = _need(d, "matrices", where)
        if len(mats) != len(group.generators):
            raise SchemaError(f"{where}.matrices: need {len(group.generators)} matrices")
        return FpModule(p, group, mats, check=True, dim=d.get("dim"))
    except SchemaError:
        raise
    except (GammapresError, TypeError, ValueError, IndexError) as e:
        raise SchemaError(f"{where}: {e}") from None


def variety_from_json(d: Any, where: str = "variety") -> VarietySpec:
    members = _need(d, "members", where)
    if not isinstance(members, list) or not members:
        raise SchemaError(f"{where}.members: expected a nonempty list")
    ms = [gamma_group_from_json(m, f"{where}.members[{i}]") for i, m in enumerate(members)]
    kw = {k: d[k] for k in ("product_order_bound", "search_depth") if k in d}
    try:
        return VarietySpec(tuple(ms), **kw)
    except GammapresError as e:
        raise SchemaError(f"{where}: {e}") from None


def cover_from_json(d: Any, where: str = "cover") -> G.GammaHom:
    src = gamma_group_from_json(_need(d, "source", where), f"{where}.source")
    tgt = gamma_group_from_json(_need(d, "target", where), f"{where}.target")
    try:
        hom = G.GroupHom(src.g, tgt.g, np.asarray(_need(d, "map", where)), check=True)
        return G.GammaHom(src, tgt, hom, check=True)
    except SchemaError:
        raise
    except (GammapresError, TypeError, ValueError, IndexError) as e:
        raise SchemaError(f"{where}: {e}") from None


def local_data_from_json(d: Any, where: str = "local-data") -> LocalData:
    if not isinstance(d, dict):
        raise SchemaError(f"{where}: expected an object")
    try:
        return LocalData.from_dict(d)
    except (GammapresError, TypeError) as e:
        raise SchemaError(f"{where}: {e}") from None


def decomposition_from_json(d: Any, where: str = "decomposition") -> RelationModuleDecomposition:
    _need(d, "factors", where)
    try:
        return RelationModuleDecomposition.from_dict(d)
    except (GammapresError, TypeError, KeyError) as e:
        raise SchemaError(f"{where}: {e}") from None
