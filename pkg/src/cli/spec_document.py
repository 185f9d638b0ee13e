"""
Spec Document Module
Reads and writes carpet specs as JSON documents:
{"n": 4, "m": 3, "digits": [{"i": 0, "j": 0, "sx": 1, "sy": 1}, ...]}
sx/sy may be omitted and default to +1.
"""

from __future__ import annotations

from dataclasses import dataclass
import json
from pathlib import Path
import sys

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.carpet.carpet_spec import CarpetSpec, validate_spec
from src.utils.errors import CarpetLabError, SpecValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SpecDocument:
    """Serialized form of a carpet spec"""

    n: int
    m: int
    digits: tuple[dict, ...]

    @classmethod
    def from_spec(cls, spec: CarpetSpec) -> "SpecDocument":
        return cls(
            n=spec.n,
            m=spec.m,
            digits=tuple({'i': d.i, 'j': d.j, 'sx': d.sx, 'sy': d.sy} for d in spec.digits),
        )

    def to_spec(self) -> CarpetSpec:
        return validate_spec({'n': self.n, 'm': self.m, 'digits': list(self.digits)})

    def dumps(self) -> str:
        return json.dumps({'n': self.n, 'm': self.m, 'digits': list(self.digits)}, indent=2) + '\n'


def parse_spec_document(text: str, source: str = '<string>') -> CarpetSpec:
    """
    Parse and validate a spec document

    Raises:
        SpecValidationError: On malformed JSON or an invalid spec
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecValidationError(f"{source}: not valid JSON ({e.msg} at line {e.lineno})")
    if not isinstance(raw, dict):
        raise SpecValidationError(f"{source}: expected a JSON object with n, m, digits")
    return validate_spec(raw)


def load_spec_document(path) -> CarpetSpec:
    """
    Load a spec document from disk

    Args:
        path (str | Path): Spec file

    Returns:
        CarpetSpec: Validated spec
    """
    filepath = Path(path)
    if not filepath.exists():
        raise CarpetLabError(f"spec file not found: {filepath}")
    spec = parse_spec_document(filepath.read_text(encoding='utf-8'), str(filepath))
    logger.info(f"✅ Loaded spec from {filepath}: {spec.describe()}")
    return spec


def write_spec_document(spec: CarpetSpec, path) -> Path:
    """Write a spec document; returns the path written"""
    filepath = Path(path)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    filepath.write_text(SpecDocument.from_spec(spec).dumps(), encoding='utf-8')
    logger.info(f"✅ Saved spec document: {filepath}")
    return filepath
