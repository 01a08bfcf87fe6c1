"""
File:           presets.py
Created on:     13/10/26, 2:05 pm

Canonical constraints. d and s stay symbolic and are bound as parameters; eta_c is bound only at
solve time so that s_linear remains an order-changing constraint.
"""
from typing import Dict, Mapping, Optional, Tuple

from src.constraint_dsl.tokenizer import ConstraintError
from src.constraint_dsl.constraint import ConstraintExpr, UnboundParameterError, parse_constraint
from src.utils.enum import PresetName


class UnknownPresetError(ConstraintError):
    pass


# name -> (source, required parameters)
PRESET_SOURCES: Dict[PresetName, Tuple[str, Tuple[str, ...]]] = {
    PresetName.HOT_NORM: ("Eh", ()),
    PresetName.COLD_NORM: ("Ec", ()),
    PresetName.PRODUCT: ("Ec*Eh", ()),
    PresetName.NORM_SUM: ("Ec + Eh", ()),
    PresetName.INVERSE_SUM: ("1/Ec + 1/Eh", ()),
    PresetName.D_LINEAR: ("Ec - (1-d)*Eh", ("d", )),
    PresetName.S_LINEAR: ("(s/eta_c)*Ec + (1-s/eta_c)*Eh", ("s", )),
}


def _preset_name(name) -> PresetName:
    try:
        return PresetName(name)
    except ValueError:
        known = ", ".join(item.value for item in PresetName)
        raise UnknownPresetError(f"Unknown preset {name!r}, expected one of: {known}") from None


def _require(name: PresetName, params: Mapping[str, float], keys) -> None:
    missing = [key for key in keys if key not in params]
    if missing:
        raise UnboundParameterError(
            f"Preset {name.value} needs parameter(s): {', '.join(missing)}"
        )


def preset(name, params: Optional[Mapping[str, float]] = None) -> ConstraintExpr:
    """ Build one of the named constraints. alpha_linear inlines alpha as literals """
    name = _preset_name(name)
    params = {key: float(value) for key, value in (params or {}).items()}
    if name == PresetName.ALPHA_LINEAR:
        _require(name, params, ("alpha", ))
        alpha = params["alpha"]
        return parse_constraint(f"{alpha!r}*Ec + {1.0 - alpha!r}*Eh")
    source, required = PRESET_SOURCES[name]
    _require(name, params, required)
    bound = {key: params[key] for key in required}
    if "eta_c" in params and name == PresetName.S_LINEAR:
        bound["eta_c"] = params["eta_c"]
    return parse_constraint(source, params=bound)
