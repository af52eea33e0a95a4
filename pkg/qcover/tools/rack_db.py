import json
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from qcover.algebra.racks import FiniteRack, RackHom, check_hom, conj_of_group, validate_rack
from qcover.config import DATA_PATH
from qcover.schemas import GroupFile, HomFile, RackFile


def resolve(path: Union[str, Path], base: Optional[Path] = None) -> Path:
    """Find a file as given, next to ``base``, or in the shipped corpus."""
    p = Path(path)
    for candidate in (p, (base / p) if base else None, DATA_PATH / p.name):
        if candidate is not None and candidate.is_file():
            return candidate
    raise FileNotFoundError(f"no such rack file: {path}")


def _read(path: Path) -> dict:
    with open(path) as f:
        return json.load(f)


def rack_from_model(model: RackFile, row_acts: bool = False) -> FiniteRack:
    return validate_rack(model.table, model.elements, name=model.name,
                         row_acts=row_acts or model.row_acts)


def load_rack(path: Union[str, Path], row_acts: bool = False, base: Optional[Path] = None) -> FiniteRack:
    p = resolve(path, base)
    return rack_from_model(RackFile.model_validate(_read(p)), row_acts)


def load_group(path: Union[str, Path]) -> GroupFile:
    return GroupFile.model_validate(_read(resolve(path)))


def load_group_conj(path: Union[str, Path]) -> FiniteRack:
    model = load_group(path)
    return conj_of_group(model.cayley, model.elements, name=model.name)


def load_hom(path: Union[str, Path], row_acts: bool = False) -> RackHom:
    p = resolve(path)
    model = HomFile.model_validate(_read(p))

    def side(ref):
        if isinstance(ref, RackFile):
            return rack_from_model(ref, row_acts)
        return load_rack(ref, row_acts, base=p.parent)

    return check_hom(side(model.dom), side(model.cod), model.map)


def rack_to_model(X: FiniteRack) -> RackFile:
    return RackFile(name=X.name, elements=list(X.elements), table=X.table_pos.tolist())


@lru_cache(maxsize=16)
def builtin_rack(name: str) -> FiniteRack:
    """A rack from the shipped corpus, e.g. ``builtin_rack("qabs")``."""
    return load_rack(DATA_PATH / f"{name}.json")


@lru_cache(maxsize=16)
def builtin_hom(name: str) -> RackHom:
    return load_hom(DATA_PATH / f"{name}.json")


def builtin_names() -> list[str]:
    """Names of the shipped racks (group and hom files excluded)."""
    names = []
    for p in sorted(DATA_PATH.glob("*.json")):
        data = _read(p)
        if "table" in data:
            names.append(p.stem)
    return names
