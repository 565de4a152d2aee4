from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

from core.suites import ParamSet

logger = logging.getLogger(__name__)

# Optional override produced by hand or by scripts; same shape as the built-ins
DATA_DIR = Path(__file__).resolve().parent / "data"
PRESETS_JSON = DATA_DIR / "presets.json"


# --- Default built-in parameter sets (desk scale) ---

_BUILTIN_PRESETS: Dict[str, Dict[str, Any]] = {
    "build-code": {
        "name": "Build bch(9,10,3,1)",
        "parameter_sets": [{"p": 3, "m": 2, "delta": 3}],
    },
    "weight-dist": {
        "name": "Weight distribution at q = 9, δ = 3",
        "parameter_sets": [{"p": 3, "m": 2, "delta": 3}],
    },
    "params": {
        "name": "Dimension, minimum distance and LCD of bch(q, q+1, δ, 1)",
        "parameter_sets": [
            {"p": 2, "m": 2, "delta": 2},
            {"p": 2, "m": 3, "delta": 2},
            {"p": 3, "m": 2, "delta": 3},
            {"p": 2, "m": 2, "delta": 4},
        ],
    },
    "dual-params": {
        "name": "Almost-MDS dual",
        "parameter_sets": [{"p": 3, "m": 2, "delta": 3}],
    },
    "min-words": {
        "name": "Explicit minimum-weight codewords",
        "parameter_sets": [
            {"p": 3, "m": 2, "delta": 3},
            {"p": 2, "m": 2, "delta": 4},
        ],
    },
    "design": {
        "name": "Steiner systems from minimum-weight supports",
        "parameter_sets": [
            {"p": 2, "m": 2, "delta": 2},
            {"p": 3, "m": 2, "delta": 3},
            {"p": 2, "m": 2, "delta": 4},
        ],
    },
    "design-iso": {
        "name": "Support design vs. PGL(2,q) orbit design",
        "parameter_sets": [
            {"p": 2, "m": 2, "delta": 2},
            {"p": 3, "m": 2, "delta": 3},
            {"p": 2, "m": 2, "delta": 4},
        ],
    },
    "p-rank": {
        "name": "p-rank of spherical geometry designs",
        "parameter_sets": [
            {"p": 2, "m": 2, "delta": 2},
            {"p": 3, "m": 2, "delta": 3},
            {"p": 2, "m": 2, "delta": 4},
            {"p": 5, "m": 2, "delta": 5},
        ],
    },
    "classification": {
        "name": "Codes invariant under the stabilizer of U_{q+1}",
        "parameter_sets": [
            {"p": 2, "m": 2, "h": 1},
            {"p": 2, "m": 2, "h": 2},
            {"p": 3, "m": 1, "h": 1},
            {"p": 3, "m": 2, "h": 1},
        ],
    },
    "automorphism": {
        "name": "Monomial automorphisms from Stab(U_10)",
        "parameter_sets": [{"p": 3, "m": 2, "delta": 3}],
    },
    "lemmas": {
        "name": "Supporting lemmas",
        "parameter_sets": [{"p": 3, "m": 2, "delta": 3}],
    },
    "example": {
        "name": "Published q = 25 enumerators",
        "parameter_sets": [{"p": 5, "m": 2, "delta": 5}],
    },
}


def _load_preset_library() -> Dict[str, Dict[str, Any]]:
    """
    Load presets from data/presets.json if present;
    otherwise fall back to the built-in library.
    """
    if PRESETS_JSON.exists():
        try:
            data = json.loads(PRESETS_JSON.read_text(encoding="utf-8"))
            # Expecting {key: {name, parameter_sets: [...]}}
            if isinstance(data, dict) and data:
                return data
        except (OSError, json.JSONDecodeError) as exc:
            logger.warning("ignoring %s: %s", PRESETS_JSON, exc)

    return _BUILTIN_PRESETS


# This is what the CLI imports
PRESET_LIBRARY: Dict[str, Dict[str, Any]] = _load_preset_library()


def get_preset_keys_and_labels() -> List[Tuple[str, str]]:
    """(key, label) pairs, sorted by label"""
    items: List[Tuple[str, str]] = []
    for key, data in PRESET_LIBRARY.items():
        items.append((key, data.get("name", key)))
    items.sort(key=lambda x: x[1].lower())
    return items


def preset_parameter_sets(key: str) -> List[ParamSet]:
    """Parameter sets for a command or verification id; [] when unknown"""
    entry = PRESET_LIBRARY.get(key, {})
    return [ParamSet(**raw) for raw in entry.get("parameter_sets", [])]
