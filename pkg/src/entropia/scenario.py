"""JSON scenario files: a model, an endomorphism and optional extra data.

Schema (integers may also be given as decimal strings)::

    {
      "name": "beta over Z5",
      "model": {"kind": "shift", "F": {"cyclic": 5}, "orientation": "left"},
      "endo": {"shift": -1, "theta": {"mult": 1}},
      "U": {"chain": 1},
      "H": {"constant": {"generators": [2]}},
      "A": {...}, "alpha": {...}, "second": {"model": ..., "endo": ...},
      "m": 3,
      "options": {"budget": 64, "window": 3, "cutoff": null}
    }

``model`` may be a bare kind string with its parameters at top level, e.g.
``{"model": "padic", "p": 3, "multiplier_valuation": -2}``.

Coefficient and finite groups: ``{"cyclic": n}``, ``{"product": [n, ...]}``,
``{"table": [[...], ...]}`` or ``{"table": "file.txt"}``,
``{"symmetric": n}``, ``{"alternating": n}``, ``{"dihedral": n}``,
``{"dicyclic": n}``; a bare integer means cyclic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .entropy import Options
from .exceptions import EntropiaError, ScenarioError
from .finite import (
    FiniteGroup,
    construct_alternating,
    construct_cyclic,
    construct_dicyclic,
    construct_dihedral,
    construct_product,
    construct_symmetric,
    parse_table_text,
)
from .padic import MultEndo, PAdicGroup
from .product import ProductModel
from .shift import ShiftGroup


@dataclass
class Scenario:
    name: str
    model: object
    endo: object
    U: object = None
    H: object = None
    A: object = None
    alpha: object = None
    second: object = None
    m: int | None = None
    options: Options = field(default_factory=Options)
    raw: dict = field(default_factory=dict, repr=False)


def _int(value, path) -> int:
    if isinstance(value, bool):
        raise ScenarioError("expected an integer, got a boolean", path)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise ScenarioError(f"expected an integer, got {value!r}", path)


def _rational(value, path) -> Fraction:
    try:
        return Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (TypeError, ValueError, ZeroDivisionError):
        raise ScenarioError(f"expected a rational number, got {value!r}", path) from None


def _obj(value, path) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError(f"expected an object, got {type(value).__name__}", path)
    return value


class _Parser:
    def __init__(self, base_dir: Path):
        self.base_dir = base_dir

    # -- groups ---------------------------------------------------------

    def finite_group(self, spec, path) -> FiniteGroup:
        if isinstance(spec, (int, str)) and not isinstance(spec, bool):
            return construct_cyclic(_int(spec, path))
        spec = _obj(spec, path)
        if len(spec) != 1:
            raise ScenarioError("a group spec has exactly one key", path)
        (key, value), = spec.items()
        sub = (*path, key)
        if key == "cyclic":
            return construct_cyclic(_int(value, sub))
        if key == "product":
            if not isinstance(value, list) or not value:
                raise ScenarioError("expected a non-empty list of orders", sub)
            return construct_product([_int(v, (*sub, i)) for i, v in enumerate(value)])
        if key == "symmetric":
            return construct_symmetric(_int(value, sub))
        if key == "alternating":
            return construct_alternating(_int(value, sub))
        if key == "dihedral":
            return construct_dihedral(_int(value, sub))
        if key == "dicyclic":
            return construct_dicyclic(_int(value, sub))
        if key == "table":
            if isinstance(value, str):
                file = self.base_dir / value
                try:
                    text = file.read_text()
                except OSError as exc:
                    raise ScenarioError(f"cannot read table file: {exc}", sub) from None
                return self._wrap(lambda: parse_table_text(text, name=file.stem), sub)
            if not isinstance(value, list):
                raise ScenarioError("expected a table (list of rows) or a file name", sub)
            rows = [[_int(x, (*sub, i, j)) for j, x in enumerate(row)] for i, row in enumerate(value)]
            return self._wrap(lambda: FiniteGroup(rows, name="table"), sub)
        raise ScenarioError(f"unknown group kind {key!r}", path)

    @staticmethod
    def _wrap(build, path):
        try:
            return build()
        except ScenarioError:
            raise
        except (EntropiaError, ValueError, IndexError) as exc:
            raise ScenarioError(str(exc), path) from None

    def model(self, data, path=("model",)):
        spec = data.get("model")
        if spec is None:
            raise ScenarioError("missing model", path)
        if isinstance(spec, str):
            kind, params = spec, data
        else:
            params = _obj(spec, path)
            kind = params.get("kind")
        if kind == "finite":
            if "group" not in params:
                raise ScenarioError("finite model needs a 'group'", path)
            return self.finite_group(params["group"], (*path, "group"))
        if kind == "shift":
            if "F" not in params:
                raise ScenarioError("shift model needs a coefficient group 'F'", path)
            F = self.finite_group(params["F"], (*path, "F"))
            orientation = params.get("orientation", "left")
            if orientation not in ("left", "right"):
                raise ScenarioError("orientation must be 'left' or 'right'", (*path, "orientation"))
            return ShiftGroup(F, orientation)
        if kind == "padic":
            if "p" not in params:
                raise ScenarioError("padic model needs a prime 'p'", path)
            return self._wrap(lambda: PAdicGroup(_int(params["p"], (*path, "p"))), (*path, "p"))
        if kind == "product":
            factors = params.get("factors")
            if not isinstance(factors, list) or len(factors) != 2:
                raise ScenarioError("product model needs two 'factors'", path)
            models = [self.model({"model": f}, (*path, "factors", i)) for i, f in enumerate(factors)]
            return ProductModel(*models)
        raise ScenarioError(f"unknown model kind {kind!r}", path)

    # -- endomorphisms ------------------------------------------------------

    def finite_endo(self, G: FiniteGroup, spec, path):
        spec = _obj(spec, path)
        if spec.get("identity"):
            return G.identity_endo()
        if "map" in spec:
            images = spec["map"]
            if not isinstance(images, list):
                raise ScenarioError("expected a list of images", (*path, "map"))
            return self._wrap(lambda: G.endo([_int(x, (*path, "map", i)) for i, x in enumerate(images)]),
                              (*path, "map"))
        if "mult" in spec:
            if not G.is_abelian:
                raise ScenarioError("'mult' needs an abelian group; use 'map'", (*path, "mult"))
            return G.power_map(_int(spec["mult"], (*path, "mult")))
        if "conjugation" in spec:
            g = _int(spec["conjugation"], (*path, "conjugation"))
            if not 0 <= g < G.order:
                raise ScenarioError("element index out of range", (*path, "conjugation"))
            return G.conjugation(g)
        raise ScenarioError("endomorphism needs 'identity', 'map', 'mult' or 'conjugation'", path)

    def endo(self, model, spec, path, data=None):
        if isinstance(model, PAdicGroup):
            if spec is None and data is not None and "multiplier_valuation" in data:
                return MultEndo(model, _int(data["multiplier_valuation"], ("multiplier_valuation",)))
            spec = _obj(spec, path)
            if spec.get("identity"):
                return model.identity_endo()
            if "valuation" in spec:
                return MultEndo(model, _int(spec["valuation"], (*path, "valuation")))
            if "mult" in spec:
                return self._wrap(lambda: model.mult(_rational(spec["mult"], (*path, "mult"))),
                                  (*path, "mult"))
            raise ScenarioError("padic endomorphism needs 'valuation' or 'mult'", path)
        if spec is None:
            raise ScenarioError("missing endomorphism", path)
        spec = _obj(spec, path)
        if isinstance(model, ShiftGroup):
            if spec.get("identity"):
                return model.identity_endo()
            s = _int(spec.get("shift", 0), (*path, "shift"))
            theta = spec.get("theta")
            th = None if theta is None else self.finite_endo(model.F, theta, (*path, "theta"))
            return model.shift_endo(s, th)
        if isinstance(model, ProductModel):
            if spec.get("identity"):
                return model.identity_endo()
            factors = spec.get("factors")
            if not isinstance(factors, list) or len(factors) != 2:
                raise ScenarioError("product endomorphism needs two 'factors'", path)
            f = self.endo(model.first, factors[0], (*path, "factors", 0))
            g = self.endo(model.second, factors[1], (*path, "factors", 1))
            return model.endo(f, g)
        return self.finite_endo(model, spec, path)

    # -- subgroups ------------------------------------------------------------

    def coefficient_subgroup(self, F: FiniteGroup, spec, path) -> frozenset:
        if spec == "whole":
            return frozenset(range(F.order))
        if spec == "trivial":
            return frozenset([F.identity])
        gens = spec.get("generators") if isinstance(spec, dict) else spec
        if not isinstance(gens, list):
            raise ScenarioError("expected 'whole', 'trivial' or a generator list", path)
        idx = [_int(g, (*path, i)) for i, g in enumerate(gens)]
        if any(not 0 <= g < F.order for g in idx):
            raise ScenarioError("generator index out of range", path)
        return F.closure(idx)

    def subgroup(self, model, spec, path):
        spec = _obj(spec, path)
        if "chain" in spec:
            k = _int(spec["chain"], (*path, "chain"))
            if isinstance(model, ShiftGroup):
                return model.U(k)
            if k < 1:
                raise ScenarioError("chain members are indexed from 1", (*path, "chain"))
            return model.chain(k)
        if spec.get("whole"):
            return model.whole()
        if spec.get("trivial"):
            return model.trivial()
        if isinstance(model, FiniteGroup) and "generators" in spec:
            return model.subgroup(self.coefficient_subgroup(model, spec, path))
        if isinstance(model, PAdicGroup) and "level" in spec:
            return model.level(_int(spec["level"], (*path, "level")))
        if isinstance(model, ShiftGroup):
            F = model.F
            if "constant" in spec:
                N = self.coefficient_subgroup(F, spec["constant"], (*path, "constant"))
                return self._wrap(lambda: model.constant(N), path)
            if "window" in spec:
                start = _int(spec["window"], (*path, "window"))
                subs = spec.get("subgroups", [])
                if not isinstance(subs, list):
                    raise ScenarioError("expected a list", (*path, "subgroups"))
                values = [self.coefficient_subgroup(F, s, (*path, "subgroups", i))
                          for i, s in enumerate(subs)]
                left = right = None
                if "left" in spec:
                    left = self.coefficient_subgroup(F, spec["left"], (*path, "left"))
                if "right" in spec:
                    right = self.coefficient_subgroup(F, spec["right"], (*path, "right"))
                return self._wrap(lambda: model.window(start, values, left, right), path)
        if isinstance(model, ProductModel) and "factors" in spec:
            factors = spec["factors"]
            return model.pair(self.subgroup(model.first, factors[0], (*path, "factors", 0)),
                              self.subgroup(model.second, factors[1], (*path, "factors", 1)))
        raise ScenarioError(f"unsupported subgroup spec for the {model.kind} model", path)

    # -- whole scenario ---------------------------------------------------------

    def scenario(self, data, index=None) -> Scenario:
        root = () if index is None else (index,)
        data = _obj(data, root)
        model = self.model(data, (*root, "model"))
        endo = self.endo(model, data.get("endo"), (*root, "endo"), data)
        sc = Scenario(name=str(data.get("name", "")), model=model, endo=endo, raw=data)
        for key in ("U", "H", "A"):
            if key in data:
                setattr(sc, key, self.subgroup(model, data[key], (*root, key)))
        if "alpha" in data:
            sc.alpha = self.endo(model, data["alpha"], (*root, "alpha"))
        if "second" in data:
            sec = _obj(data["second"], (*root, "second"))
            smodel = self.model(sec, (*root, "second", "model"))
            sc.second = self.endo(smodel, sec.get("endo"), (*root, "second", "endo"), sec)
        if "m" in data:
            sc.m = _int(data["m"], (*root, "m"))
            if sc.m < 0:
                raise ScenarioError("m must be non-negative", (*root, "m"))
        opts = _obj(data.get("options", {}), (*root, "options"))
        cutoff = opts.get("cutoff")
        sc.options = Options(
            budget=_int(opts.get("budget", 64), (*root, "options", "budget")),
            window=_int(opts.get("window", 3), (*root, "options", "window")),
            cutoff=None if cutoff is None else _int(cutoff, (*root, "options", "cutoff")),
        )
        return sc


def parse_scenario(data, base_dir=".", index=None) -> Scenario:
    return _Parser(Path(base_dir)).scenario(data, index)


def load_scenarios(path) -> tuple[list[Scenario], bool]:
    """Scenarios in a file and whether the file held a batch (JSON list)."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    parser = _Parser(path.parent)
    if isinstance(data, list):
        return [parser.scenario(item, i) for i, item in enumerate(data)], True
    return [parser.scenario(data)], False
