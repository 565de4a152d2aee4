from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import cyclic_codes as codes  # noqa: E402
from core import designs  # noqa: E402
from core.errors import VerificationFailure  # noqa: E402
from core.schemas import DesignModel  # noqa: E402

logger = logging.getLogger(__name__)

# Paths
DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def export_paths(q: int, delta: int, source: str, data_dir: Path = DATA_DIR) -> tuple[Path, Path]:
    stem = f"S3_{delta + 1}_{q + 1}_{source}"
    return data_dir / f"{stem}.json", data_dir / f"{stem}.txt"


def build_design(q: int, delta: int, source: str) -> designs.IncidenceStructure:
    if source == "orbit":
        return designs.orbit_design(q, delta)
    C = codes.antiprimitive_bch(q, delta)
    return designs.support_design(C, delta + 1)


def export(q: int, delta: int, source: str = "code", data_dir: Path = DATA_DIR) -> tuple[Path, Path]:
    """
    Write the S(3, δ+1, q+1) design as JSON plus its incidence matrix,
    one block per line as 0/1 characters.
    """
    D = build_design(q, delta, source)
    certificate = designs.verify_t_design(D, 3)
    if certificate is None:
        raise VerificationFailure(f"q={q}, δ={delta}: {source} design is not a 3-design")

    model = DesignModel(**designs.design_to_json(D, certificate))
    json_path, text_path = export_paths(q, delta, source, data_dir)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_text(model.model_dump_json(by_alias=True, indent=2), encoding="utf-8")
    text_path.write_text(designs.incidence_text(D) + "\n", encoding="utf-8")
    logger.info("%s: %d blocks -> %s, %s", certificate.describe(), len(D.blocks), json_path, text_path)
    return json_path, text_path


def main(argv: Optional[List[str]] = None) -> None:
    parser = argparse.ArgumentParser(description="Export a spherical geometry design into data/.")
    parser.add_argument("--q", type=int, required=True)
    parser.add_argument("--delta", type=int, required=True)
    parser.add_argument("--source", choices=("code", "orbit"), default="code")
    args = parser.parse_args(argv)

    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    json_path, text_path = export(args.q, args.delta, args.source)
    print(f"Wrote {json_path}")
    print(f"Wrote {text_path}")


if __name__ == "__main__":
    main()
